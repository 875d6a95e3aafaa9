//! Exact points and lines of the real projective plane.
//!
//! Points and lines are stored as primitive integer triples whose first
//! nonzero entry is positive, so projective equality is plain triple
//! equality and the derived ordering (lexicographic on the triple) is the
//! global tie-break order used by every search in the crate.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Divides out the content of `v` and flips the sign so the first nonzero
/// entry is positive. Returns `false` when `v` is entirely zero.
pub(crate) fn make_primitive(v: &mut [BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return false;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if negate {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    true
}

pub(crate) fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn normalized_triple(mut v: [BigInt; 3]) -> Result<[BigInt; 3]> {
    if make_primitive(&mut v) {
        Ok(v)
    } else {
        Err(Error::ZeroVector)
    }
}

/// A point of the real projective plane with a primitive integer representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([BigInt; 3]);

/// A line `ax + by + cz = 0`, stored by its normalized dual coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine([BigInt; 3]);

macro_rules! triple_common {
    ($ty:ident) => {
        impl $ty {
            /// Normalizes an arbitrary nonzero integer triple.
            pub fn new(coords: [BigInt; 3]) -> Result<Self> {
                normalized_triple(coords).map(Self)
            }

            pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self> {
                Self::new([x.into(), y.into(), z.into()])
            }

            pub fn coords(&self) -> &[BigInt; 3] {
                &self.0
            }

            pub fn into_coords(self) -> [BigInt; 3] {
                self.0
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
            }
        }
    };
}

triple_common!(ProjPoint);
triple_common!(ProjLine);

impl ProjPoint {
    /// Lifts an affine point `(x, y)` to `(x, y, 1)`.
    pub fn affine(x: i64, y: i64) -> Self {
        Self::from_i64(x, y, 1).expect("z = 1 is never the zero vector")
    }
}

/// Clears denominators and reduces a rational triple to its primitive,
/// sign-normalized integer representative.
pub fn normalize_point(raw: &[Rational; 3]) -> Result<ProjPoint> {
    let lcm = raw
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let coords = raw
        .clone()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer());
    ProjPoint::new(coords)
}

pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    Ok(ProjLine(normalized_triple(cross(&p.0, &q.0))?))
}

pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    Ok(ProjPoint(normalized_triple(cross(&l1.0, &l2.0))?))
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    dot(&p.0, &l.0).is_zero()
}

/// Returns the point common to every line, if there is one.
pub fn common_point(lines: &[ProjLine]) -> Result<Option<ProjPoint>> {
    let first = lines.first().ok_or(Error::TooFewLines)?;
    let Some(other) = lines.iter().find(|l| *l != first) else {
        return Err(Error::TooFewLines);
    };
    let p = meet(first, other)?;
    Ok(lines.iter().all(|l| incident(&p, l)).then_some(p))
}

/// An ordered, duplicate-free list of projective points. Indices are stable
/// and are what certificates refer to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p, i).is_some() {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Self { points })
    }

    pub fn from_affine(pts: &[(i64, i64)]) -> Result<Self> {
        Self::new(pts.iter().map(|&(x, y)| ProjPoint::affine(x, y)).collect())
    }

    pub fn from_triples(pts: &[(i64, i64, i64)]) -> Result<Self> {
        pts.iter()
            .map(|&(x, y, z)| ProjPoint::from_i64(x, y, z))
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProjPoint> {
        self.points.iter()
    }

    /// The points at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Vec<ProjPoint> {
        indices.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a ProjPoint;
    type IntoIter = std::slice::Iter<'a, ProjPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A line spanned by at least two points, with all the indices on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannedLine {
    pub line: ProjLine,
    pub indices: Vec<usize>,
}

/// Every line through two or more of `points`, each listed once with its full
/// sorted incidence list. Lines appear in order of their smallest index pair.
pub fn lines_spanned(points: &[ProjPoint]) -> Result<Vec<SpannedLine>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    // line -> (position in `out`, smallest index on it)
    let mut slot: HashMap<ProjLine, (usize, usize)> = HashMap::new();
    let mut out: Vec<SpannedLine> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let line = join(&points[i], &points[j])?;
            match slot.get(&line) {
                // discovered from an earlier point, which already collected every index on it
                Some(&(_, first)) if first != i => {}
                Some(&(k, _)) => out[k].indices.push(j),
                None => {
                    slot.insert(line.clone(), (out.len(), i));
                    out.push(SpannedLine { line, indices: vec![i, j] });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_i64(x, y, z).unwrap()
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64(a, b, c).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        assert_eq!(pt(2, 4, 6), pt(1, 2, 3));
        assert_eq!(pt(2, 4, 6).coords(), pt(1, 2, 3).coords());
        assert_eq!(pt(-1, 0, 0).coords(), &[1.into(), 0.into(), 0.into()]);
        let p = normalize_point(&[q(1, 2), q(1, 3), q(0, 1)]).unwrap();
        assert_eq!(p, pt(3, 2, 0));
        assert!(matches!(
            normalize_point(&[q(0, 1), q(0, 5), q(0, 1)]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&pt(1, 0, 0), &pt(0, 1, 0)).unwrap(), ln(0, 0, 1));
        assert_eq!(join(&pt(0, 0, 1), &pt(1, 1, 1)).unwrap(), ln(1, -1, 0));
        assert_eq!(join(&pt(1, 0, 1), &pt(2, 0, 1)).unwrap(), ln(0, 1, 0));
        assert!(matches!(join(&pt(1, 2, 3), &pt(2, 4, 6)), Err(Error::EqualPoints)));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap(), pt(0, 0, 1));
        assert_eq!(meet(&ln(0, 0, 1), &ln(1, -1, 0)).unwrap(), pt(1, 1, 0));
        assert_eq!(meet(&ln(1, 0, -1), &ln(0, 1, -1)).unwrap(), pt(1, 1, 1));
        assert!(matches!(meet(&ln(1, 1, 1), &ln(-2, -2, -2)), Err(Error::EqualLines)));
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&pt(1, 1, 0), &ln(0, 0, 1)));
        assert!(!incident(&pt(1, 1, 1), &ln(0, 0, 1)));
        assert!(incident(&pt(3, 2, 0), &ln(2, -3, 5)));
    }

    #[test]
    fn spanned_lines() {
        let tri = [pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1)];
        let ls = lines_spanned(&tri).unwrap();
        assert_eq!(ls.len(), 3);
        assert!(ls.iter().all(|l| l.indices.len() == 2));

        let col = [pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1)];
        let ls = lines_spanned(&col).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].indices, vec![0, 1, 2]);

        let four = [pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1), pt(0, 1, 1)];
        let ls = lines_spanned(&four).unwrap();
        let mut sizes: Vec<_> = ls.iter().map(|l| l.indices.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3]);

        assert!(matches!(lines_spanned(&four[..1]), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn concurrency() {
        let through_origin = [ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0)];
        assert_eq!(common_point(&through_origin).unwrap(), Some(pt(0, 0, 1)));
        let triangle = [ln(1, 0, 0), ln(0, 1, 0), ln(0, 0, 1)];
        assert_eq!(common_point(&triangle).unwrap(), None);
        assert_eq!(common_point(&triangle[..2]).unwrap(), Some(pt(0, 0, 1)));
        assert!(matches!(common_point(&triangle[..1]), Err(Error::TooFewLines)));
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointSet::from_triples(&[(1, 0, 0), (0, 1, 0), (-3, 0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint(2)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_point() -> impl Strategy<Value = ProjPoint> {
            (-30i64..=30, -30i64..=30, -30i64..=30)
                .prop_filter("nonzero", |&(x, y, z)| (x, y, z) != (0, 0, 0))
                .prop_map(|(x, y, z)| ProjPoint::from_i64(x, y, z).unwrap())
        }

        proptest! {
            #[test]
            fn join_is_incident(p in small_point(), q in small_point()) {
                prop_assume!(p != q);
                let l = join(&p, &q).unwrap();
                prop_assert!(incident(&p, &l));
                prop_assert!(incident(&q, &l));
            }

            #[test]
            fn join_meet_duality(p in small_point(), q in small_point(), r in small_point()) {
                prop_assume!(p != q && p != r && q != r);
                let pq = join(&p, &q).unwrap();
                prop_assume!(!incident(&r, &pq));
                let pr = join(&p, &r).unwrap();
                prop_assert_eq!(meet(&pq, &pr).unwrap(), p);
            }

            #[test]
            fn normalization_is_idempotent(x in -50i64..50, y in -50i64..50, z in -50i64..50, k in 1i64..9) {
                prop_assume!((x, y, z) != (0, 0, 0));
                let p = ProjPoint::from_i64(x, y, z).unwrap();
                let again = ProjPoint::new(p.coords().clone()).unwrap();
                prop_assert_eq!(&again, &p);
                let scaled = ProjPoint::from_i64(-k * x, -k * y, -k * z).unwrap();
                prop_assert_eq!(scaled, p);
            }

            #[test]
            fn spanned_lines_ignore_order(mut pts in proptest::collection::hash_set((-4i64..4, -4i64..4), 2..9)) {
                let pts: Vec<_> = pts.drain().collect();
                let fwd: Vec<ProjPoint> = pts.iter().map(|&(x, y)| ProjPoint::affine(x, y)).collect();
                let rev: Vec<ProjPoint> = fwd.iter().rev().cloned().collect();
                let key = |pts: &[ProjPoint]| {
                    let mut v: Vec<(ProjLine, Vec<ProjPoint>)> = lines_spanned(pts)
                        .unwrap()
                        .into_iter()
                        .map(|l| {
                            let mut on: Vec<_> = l.indices.iter().map(|&i| pts[i].clone()).collect();
                            on.sort();
                            (l.line, on)
                        })
                        .collect();
                    v.sort();
                    v
                };
                prop_assert_eq!(key(&fwd), key(&rev));
            }
        }
    }
}
