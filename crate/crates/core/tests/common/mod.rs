//! Independent reference computations shared by the integration tests.
//!
//! Everything here uses textbook rational Gauss-Jordan elimination and
//! direct evaluation, so it shares no code path with the library beyond the
//! point type used to hand data over.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use sg_curves::ProjPoint;

pub type Q = BigRational;
pub type Rng = Xoshiro256StarStar;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Exponent triples of degree `d`, x-power descending then y-power descending.
pub fn exponents(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=(d - a)).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomials_at(p: &[BigInt; 3], d: u32) -> Vec<BigInt> {
    exponents(d)
        .iter()
        .map(|e| num_traits::pow(p[0].clone(), e[0] as usize) * num_traits::pow(p[1].clone(), e[1] as usize) * num_traits::pow(p[2].clone(), e[2] as usize))
        .collect()
}

pub fn eval(coeffs: &[BigInt], d: u32, p: &ProjPoint) -> BigInt {
    monomials_at(p.coords(), d).iter().zip(coeffs).map(|(m, c)| m * c).sum()
}

pub fn matrix(points: &[ProjPoint], d: u32) -> Vec<Vec<BigInt>> {
    points.iter().map(|p| monomials_at(p.coords(), d)).collect()
}

/// Reduced row echelon form over the rationals; returns nonzero rows and
/// pivot columns.
pub fn rref(rows: &[Vec<BigInt>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in out.iter_mut() {
            *x = &*x / &g;
        }
    }
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Kernel of `rows` in reduced echelon form, each row made primitive.
pub fn canonical_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (m, pivots) = rref(rows, ncols);
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = BigInt::one();
        let mut qv: Vec<Q> = v.iter().map(|x| Q::from_integer(x.clone())).collect();
        for (row, &p) in m.iter().zip(&pivots) {
            qv[p] = -row[free].clone();
        }
        kernel.push(primitive(&qv));
    }
    let (k, _) = rref(&kernel, ncols);
    k.iter().map(|r| primitive(r)).collect()
}

/// Projective dimension of the degree-`d` curves through `points`.
pub fn param_dim(points: &[ProjPoint], d: u32) -> i64 {
    let n = exponents(d).len();
    (n - rank(&matrix(points, d), n)) as i64 - 1
}

pub fn on_common_conic(points: &[ProjPoint]) -> bool {
    param_dim(points, 2) >= 0
}

pub fn on_common_cubic(points: &[ProjPoint]) -> bool {
    param_dim(points, 3) >= 0
}

pub fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    det3(a.coords(), b.coords(), c.coords()).is_zero()
}

/// Largest number of points on one line (brute force over pairs).
pub fn max_on_line(points: &[ProjPoint]) -> usize {
    let n = points.len();
    let mut best = n.min(2);
    for i in 0..n {
        for j in (i + 1)..n {
            let l = cross(points[i].coords(), points[j].coords());
            let k = points.iter().filter(|p| dot(&l, p.coords()).is_zero()).count();
            best = best.max(k);
        }
    }
    best
}

pub fn point(v: [i64; 3]) -> ProjPoint {
    ProjPoint::from_i64(v[0], v[1], v[2]).unwrap()
}

pub fn big_point(v: [BigInt; 3]) -> ProjPoint {
    ProjPoint::new(v).unwrap()
}

pub fn random_point(rng: &mut Rng, bound: i64) -> ProjPoint {
    loop {
        let v = [rng.random_range(-bound..=bound), rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)];
        if v != [0, 0, 0] {
            return point(v);
        }
    }
}

pub fn random_affine(rng: &mut Rng, bound: i64) -> ProjPoint {
    point([rng.random_range(-bound..=bound), rng.random_range(-bound..=bound), 1])
}

/// Pushes `p` unless already present.
pub fn push_new(set: &mut Vec<ProjPoint>, p: ProjPoint) -> bool {
    if set.contains(&p) {
        false
    } else {
        set.push(p);
        true
    }
}

/// Coprime pairs `(a, b)` with `b ≥ 0`, distinct as ratios, in random order.
pub fn random_ratios(rng: &mut Rng, k: usize, bound: i64) -> Vec<(i64, i64)> {
    let mut all = Vec::new();
    for a in -bound..=bound {
        for b in 0..=bound {
            if a.gcd(&b) == 1 && (b > 0 || a == 1) {
                all.push((a, b));
            }
        }
    }
    assert!(all.len() >= k, "not enough ratios");
    for i in 0..k {
        let j = rng.random_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(k);
    all
}

/// `k` distinct points on the line through distinct points `p` and `q`.
pub fn points_on_line(rng: &mut Rng, p: &ProjPoint, q: &ProjPoint, k: usize) -> Vec<ProjPoint> {
    random_ratios(rng, k, 6)
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let [p, q] = [p.coords(), q.coords()];
            big_point([&a * &p[0] + &b * &q[0], &a * &p[1] + &b * &q[1], &a * &p[2] + &b * &q[2]])
        })
        .collect()
}

/// A random invertible integer matrix with small entries.
pub fn random_transform(rng: &mut Rng) -> [[i64; 3]; 3] {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-3..=3)));
        let rows = m.map(|r| r.map(BigInt::from));
        if !det3(&rows[0], &rows[1], &rows[2]).is_zero() {
            return m;
        }
    }
}

pub fn transform(m: &[[i64; 3]; 3], p: &[BigInt; 3]) -> ProjPoint {
    big_point(std::array::from_fn(|i| (0..3).map(|j| BigInt::from(m[i][j]) * &p[j]).sum()))
}

/// `k` distinct points on the image of the circle `x² + y² = z²` under `m`.
pub fn points_on_conic(rng: &mut Rng, m: &[[i64; 3]; 3], k: usize) -> Vec<ProjPoint> {
    random_ratios(rng, k, 7)
        .into_iter()
        .map(|(p, q)| {
            let (p, q) = (BigInt::from(p), BigInt::from(q));
            transform(m, &[&q * &q - &p * &p, BigInt::from(2) * &p * &q, &q * &q + &p * &p])
        })
        .collect()
}

pub fn shuffle<T>(rng: &mut Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
}
