//! Homogeneous ternary forms, their evaluation, and exact conic classification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{cross, incident, join, make_primitive, ProjLine, ProjPoint, Rational};

pub const MAX_DEGREE: u32 = 6;

/// Number of monomials of degree `d` in three variables, `d(d+3)/2 + 1`.
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    d * (d + 3) / 2 + 1
}

/// Number of points a degree-`d` curve typically passes through, `d(d+3)/2`.
pub fn ordinary_count(d: u32) -> usize {
    monomial_count(d) - 1
}

/// Exponent triples of degree `d`, graded-lex descending: for `d = 2` the
/// order is x², xy, xz, y², yz, z². This order is part of the certificate
/// format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: u32,
    exponents: Vec<[u32; 3]>,
}

impl MonomialBasis {
    pub fn new(d: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&d) {
            return Err(Error::UnsupportedDegree(d));
        }
        let mut exponents = Vec::with_capacity(monomial_count(d));
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                exponents.push([a, b, d - a - b]);
            }
        }
        Ok(Self { degree: d, exponents })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[[u32; 3]] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Every monomial evaluated at `p` (one row of an evaluation matrix).
    pub fn evaluate_all(&self, p: &ProjPoint) -> Vec<BigInt> {
        let powers: Vec<Vec<BigInt>> = p
            .coords()
            .iter()
            .map(|c| {
                let mut v = Vec::with_capacity(self.degree as usize + 1);
                v.push(BigInt::one());
                for k in 1..=self.degree as usize {
                    let next = &v[k - 1] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        self.exponents
            .iter()
            .map(|&[a, b, c]| {
                &powers[0][a as usize] * &powers[1][b as usize] * &powers[2][c as usize]
            })
            .collect()
    }

    /// The `|points| × len()` evaluation matrix.
    pub fn evaluation_matrix(&self, points: &[ProjPoint]) -> Vec<Vec<BigInt>> {
        points.iter().map(|p| self.evaluate_all(p)).collect()
    }

    fn name(&self, i: usize) -> String {
        let mut s = String::new();
        for (var, e) in ["x", "y", "z"].iter().zip(self.exponents[i]) {
            match e {
                0 => {}
                1 => s.push_str(var),
                e => s.push_str(&format!("{var}^{e}")),
            }
        }
        s
    }
}

/// A homogeneous polynomial in x, y, z with integer coefficients listed in
/// [`MonomialBasis`] order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPoly {
    degree: u32,
    coeffs: Vec<BigInt>,
}

impl HomPoly {
    pub fn new(degree: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if coeffs.len() != monomial_count(degree) {
            return Err(Error::Format(format!(
                "degree {degree} needs {} coefficients, got {}",
                monomial_count(degree),
                coeffs.len()
            )));
        }
        Ok(Self { degree, coeffs })
    }

    pub fn from_i64(degree: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(degree, coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Primitive, sign-normalized representative, as used for curves.
    pub fn normalized(mut self) -> Result<Self> {
        if make_primitive(&mut self.coeffs) {
            Ok(self)
        } else {
            Err(Error::ZeroPolynomial)
        }
    }

    /// `Σ weights[i] · polys[i]`; all polys share one degree.
    pub fn combination(polys: &[HomPoly], weights: &[BigInt]) -> HomPoly {
        let degree = polys[0].degree;
        let mut coeffs = vec![BigInt::zero(); monomial_count(degree)];
        for (p, w) in polys.iter().zip(weights) {
            if w.is_zero() {
                continue;
            }
            for (c, pc) in coeffs.iter_mut().zip(&p.coeffs) {
                *c += w * pc;
            }
        }
        HomPoly { degree, coeffs }
    }

    /// Integer value at the stored representative of `p`.
    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        let basis = MonomialBasis::new(self.degree).expect("degree validated on construction");
        basis
            .evaluate_all(p)
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| m * c)
            .sum()
    }

    /// Product of linear forms, handy for building test curves.
    pub fn product_of_lines(lines: &[ProjLine]) -> Result<HomPoly> {
        let d = lines.len() as u32;
        let basis = MonomialBasis::new(d)?;
        // expand Π (a_i x + b_i y + c_i z) term by term
        let mut terms: Vec<([u32; 3], BigInt)> = vec![([0, 0, 0], BigInt::one())];
        for l in lines {
            let mut next = Vec::with_capacity(terms.len() * 3);
            for (e, c) in &terms {
                for (v, lc) in l.coords().iter().enumerate() {
                    if lc.is_zero() {
                        continue;
                    }
                    let mut e2 = *e;
                    e2[v] += 1;
                    next.push((e2, c * lc));
                }
            }
            terms = next;
        }
        let mut coeffs = vec![BigInt::zero(); basis.len()];
        for (e, c) in terms {
            let k = basis.exponents().iter().position(|x| *x == e).expect("degree d monomial");
            coeffs[k] += c;
        }
        HomPoly::new(d, coeffs)
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = MonomialBasis::new(self.degree).map_err(|_| fmt::Error)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.magnitude();
            let name = basis.name(i);
            if first {
                write!(f, "{sign}")?;
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn evaluate(f: &HomPoly, p: &ProjPoint) -> Rational {
    Rational::from_integer(f.eval(p))
}

pub fn on_curve(p: &ProjPoint, f: &HomPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.eval(p).is_zero())
}

/// The two real lines of a rank-2 conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePair {
    /// Both lines have rational coordinates.
    Rational(ProjLine, ProjLine),
    /// The lines are conjugate over `Q(√discriminant)`; only their common
    /// point is rational.
    Irrational { vertex: ProjPoint, discriminant: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicClass {
    Irreducible,
    TwoRealLines(LinePair),
    DoubleLine(ProjLine),
    DegeneratePointOrEmpty,
}

/// Symmetric matrix of the quadratic form, doubled to stay integral.
fn doubled_form_matrix(f: &HomPoly) -> [[BigInt; 3]; 3] {
    let c = f.coeffs();
    let two = BigInt::from(2);
    [
        [&two * &c[0], c[1].clone(), c[2].clone()],
        [c[1].clone(), &two * &c[3], c[4].clone()],
        [c[2].clone(), c[4].clone(), &two * &c[5]],
    ]
}

/// Exact real classification of a conic from the rank of its form matrix
/// and, at rank 2, the sign of a restricted discriminant.
pub fn classify_conic(f: &HomPoly) -> Result<ConicClass> {
    if f.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: f.degree() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = doubled_form_matrix(f);
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.to_vec()).collect();
    match linalg::rank(rows, 3) {
        3 => Ok(ConicClass::Irreducible),
        1 => {
            let row = m.iter().find(|r| r.iter().any(|x| !x.is_zero())).expect("rank 1");
            Ok(ConicClass::DoubleLine(ProjLine::new(row.clone())?))
        }
        2 => {
            let (r0, r1) = independent_rows(&m);
            let vertex = ProjPoint::new(cross(r0, r1))?;
            let restrict_to = (0..3)
                .map(|k| {
                    let mut l = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                    l[k] = BigInt::one();
                    ProjLine::new(l).expect("unit vector")
                })
                .find(|l| !incident(&vertex, l))
                .expect("a point misses one of the coordinate lines");
            let (p, q) = line_basis(&restrict_to);
            let g = restrict_with(f, &p, &q);
            let (a, b, c) = (&g[0], &g[1], &g[2]);
            let disc = b * b - BigInt::from(4) * a * c;
            if disc.is_negative() {
                return Ok(ConicClass::DegeneratePointOrEmpty);
            }
            debug_assert!(!disc.is_zero(), "rank-2 conic has a nonzero restricted discriminant");
            let root = disc.sqrt();
            if &root * &root != disc {
                return Ok(ConicClass::TwoRealLines(LinePair::Irrational {
                    vertex,
                    discriminant: disc,
                }));
            }
            // roots (s : t) of a s² + b st + c t²
            let roots: [(BigInt, BigInt); 2] = if a.is_zero() {
                [(BigInt::one(), BigInt::zero()), (-c, b.clone())]
            } else {
                let two_a = BigInt::from(2) * a;
                [(-b + &root, two_a.clone()), (-b - &root, two_a)]
            };
            let lines = roots.map(|(s, t)| {
                let pt = ProjPoint::new(std::array::from_fn(|k| {
                    &s * &p.coords()[k] + &t * &q.coords()[k]
                }))
                .expect("distinct basis points");
                join(&vertex, &pt)
            });
            let [l1, l2] = lines;
            let (l1, l2) = (l1?, l2?);
            let (l1, l2) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
            Ok(ConicClass::TwoRealLines(LinePair::Rational(l1, l2)))
        }
        _ => Err(Error::ZeroPolynomial),
    }
}

fn independent_rows(m: &[[BigInt; 3]; 3]) -> (&[BigInt; 3], &[BigInt; 3]) {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if cross(&m[i], &m[j]).iter().any(|x| !x.is_zero()) {
                return (&m[i], &m[j]);
            }
        }
    }
    unreachable!("called only at rank 2")
}

/// Two points spanning `l`: the canonical kernel basis of its equation, in
/// basis order.
pub fn line_basis(l: &ProjLine) -> (ProjPoint, ProjPoint) {
    let ker = linalg::nullspace(vec![l.coords().to_vec()], 3);
    let mut it = ker.into_iter().map(|v| {
        ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()]).expect("kernel vector")
    });
    (it.next().expect("2-dim kernel"), it.next().expect("2-dim kernel"))
}

/// Coefficients of a binary form `Σ g[i] s^(d-i) t^i`.
pub type BinaryForm = Vec<BigInt>;

fn binary_mul(a: &[BigInt], b: &[BigInt]) -> BinaryForm {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn restrict_with(f: &HomPoly, p: &ProjPoint, q: &ProjPoint) -> BinaryForm {
    let d = f.degree() as usize;
    let basis = MonomialBasis::new(f.degree()).expect("valid degree");
    // each variable becomes the linear form p_k s + q_k t
    let linear: Vec<BinaryForm> = (0..3)
        .map(|k| vec![p.coords()[k].clone(), q.coords()[k].clone()])
        .collect();
    let powers: Vec<Vec<BinaryForm>> = linear
        .iter()
        .map(|lf| {
            let mut v: Vec<BinaryForm> = vec![vec![BigInt::one()]];
            for e in 1..=d {
                let next = binary_mul(&v[e - 1], lf);
                v.push(next);
            }
            v
        })
        .collect();
    let mut g = vec![BigInt::zero(); d + 1];
    for (&[a, b, c], coeff) in basis.exponents().iter().zip(f.coeffs()) {
        if coeff.is_zero() {
            continue;
        }
        let term = binary_mul(
            &binary_mul(&powers[0][a as usize], &powers[1][b as usize]),
            &powers[2][c as usize],
        );
        for (gi, ti) in g.iter_mut().zip(term) {
            *gi += coeff * ti;
        }
    }
    g
}

/// `g(s, t) = f(sP + tQ)` where `(P, Q)` is [`line_basis`] of `l`. The result
/// is identically zero exactly when `l` is a component of `f`.
pub fn restrict_to_line(f: &HomPoly, l: &ProjLine) -> Result<BinaryForm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (p, q) = line_basis(l);
    Ok(restrict_with(f, &p, &q))
}
