//! Spaces of curves through a point set and the parameter-plane map.
//!
//! For a base set `B` whose degree-`d` curves form a projective plane, every
//! further point `x` cuts that plane in a line: the curves through `B ∪ {x}`.
//! With the canonical basis `(f₁, f₂, f₃)` of the curves through `B`, that
//! line has dual coordinates `(f₁(x), f₂(x), f₃(x))`, which is how it is
//! computed here (one evaluation per point, no per-point nullspace).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::curve::{monomial_count, HomPoly, MonomialBasis};
use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{lines_spanned, ProjLine, ProjPoint};

/// Canonical basis of the degree-`d` forms vanishing on a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSubspace {
    degree: u32,
    basis: Vec<HomPoly>,
}

impl CurveSubspace {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[HomPoly] {
        &self.basis
    }

    /// Vector-space dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension; `-1` for the zero space.
    pub fn projective_dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    /// True when every member vanishes at `p`.
    pub fn forces(&self, p: &ProjPoint) -> bool {
        self.basis.iter().all(|f| f.eval(p).is_zero())
    }
}

/// All degree-`d` forms vanishing on `points`, via the exact nullspace of the
/// evaluation matrix.
pub fn vanishing_subspace(points: &[ProjPoint], d: u32) -> Result<CurveSubspace> {
    let monomials = MonomialBasis::new(d)?;
    let ncols = monomials.len();
    let kernel = linalg::nullspace(monomials.evaluation_matrix(points), ncols);
    let basis = kernel
        .into_iter()
        .map(|v| HomPoly::new(d, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSubspace { degree: d, basis })
}

/// Projective dimension of the space of degree-`d` curves through `points`.
pub fn param_dim(points: &[ProjPoint], d: u32) -> Result<i64> {
    let monomials = MonomialBasis::new(d)?;
    let rank = linalg::rank(monomials.evaluation_matrix(points), monomials.len());
    Ok(monomials.len() as i64 - rank as i64 - 1)
}

/// Why a small point set fails to impose independent conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectReason {
    /// `d + 2` of the points are collinear.
    CollinearDPlus2,
    /// There are exactly `2d + 2` points and they lie on a conic.
    ConicFull2dPlus2,
}

impl std::fmt::Display for DefectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DefectReason::CollinearDPlus2 => "collinear-d+2",
            DefectReason::ConicFull2dPlus2 => "conic-2d+2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimDefect {
    pub param_dim: i64,
    pub expected: i64,
    pub defect: i64,
    pub explanation: Option<DefectReason>,
}

/// Compares the actual parameter dimension against `d(d+3)/2 − |A|` for sets
/// of at most `2d + 2` points, and names the configuration responsible for
/// any excess.
pub fn expected_dim_defect(points: &[ProjPoint], d: u32) -> Result<DimDefect> {
    let n = points.len();
    let max = 2 * d as usize + 2;
    if n > max {
        return Err(Error::OutOfRange { len: n, max });
    }
    let actual = param_dim(points, d)?;
    let expected = (monomial_count(d) as i64 - 1 - n as i64).max(-1);
    let defect = actual - expected;
    if defect == 0 {
        return Ok(DimDefect { param_dim: actual, expected, defect, explanation: None });
    }
    let collinear = n >= 2
        && lines_spanned(points)?
            .iter()
            .any(|l| l.indices.len() >= d as usize + 2);
    let explanation = if collinear {
        DefectReason::CollinearDPlus2
    } else if n == max && param_dim(points, 2)? >= 0 {
        DefectReason::ConicFull2dPlus2
    } else {
        return Err(Error::Anomaly(format!(
            "dimension defect {defect} in degree {d} with no collinear or co-conic explanation"
        )));
    };
    Ok(DimDefect { param_dim: actual, expected, defect, explanation: Some(explanation) })
}

/// A line of the parameter plane together with the points mapping to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiLine {
    pub dual: ProjLine,
    pub preimages: Vec<usize>,
}

/// The projective plane of degree-`d` curves through a base set.
#[derive(Clone, Debug)]
pub struct ParamPlane {
    base: Vec<ProjPoint>,
    space: CurveSubspace,
}

impl ParamPlane {
    pub fn new(base: &[ProjPoint], d: u32) -> Result<Self> {
        let space = vanishing_subspace(base, d)?;
        if space.dim() != 3 {
            return Err(Error::BadBase(space.projective_dim()));
        }
        Ok(Self { base: base.to_vec(), space })
    }

    pub fn degree(&self) -> u32 {
        self.space.degree()
    }

    pub fn base(&self) -> &[ProjPoint] {
        &self.base
    }

    pub fn basis(&self) -> &[HomPoly] {
        self.space.basis()
    }

    /// The line of curves through the base set and `x`.
    pub fn line_of(&self, x: &ProjPoint) -> Result<ProjLine> {
        if let Some(i) = self.base.iter().position(|b| b == x) {
            return Err(Error::PointInBase(i));
        }
        let [f1, f2, f3] = self.basis() else { unreachable!("dim checked in new") };
        ProjLine::new([f1.eval(x), f2.eval(x), f3.eval(x)]).map_err(|_| Error::NoCondition)
    }

    /// Images of labelled points, merged by line and sorted by dual coordinates.
    pub fn image<'a, I>(&self, labelled: I) -> Result<Vec<PhiLine>>
    where
        I: IntoParallelIterator<Item = (usize, &'a ProjPoint)>,
    {
        let lines: Vec<(usize, ProjLine)> = labelled
            .into_par_iter()
            .map(|(label, x)| self.line_of(x).map(|l| (label, l)))
            .collect::<Result<_>>()?;
        let mut grouped: BTreeMap<ProjLine, Vec<usize>> = BTreeMap::new();
        for (label, l) in lines {
            grouped.entry(l).or_default().push(label);
        }
        Ok(grouped
            .into_iter()
            .map(|(dual, mut preimages)| {
                preimages.sort_unstable();
                PhiLine { dual, preimages }
            })
            .collect())
    }

    /// The curve `a f₁ + b f₂ + c f₃` for a point `(a, b, c)` of the plane.
    pub fn curve_at(&self, z: &ProjPoint) -> Result<HomPoly> {
        HomPoly::combination(self.basis(), z.coords()).normalized()
    }
}

pub fn phi_map(base: &[ProjPoint], x: &ProjPoint, d: u32) -> Result<PhiLine> {
    let plane = ParamPlane::new(base, d)?;
    Ok(PhiLine { dual: plane.line_of(x)?, preimages: vec![0] })
}

/// Image of `rest` with preimages given as indices into `rest`.
pub fn phi_image(base: &[ProjPoint], rest: &[ProjPoint], d: u32) -> Result<Vec<PhiLine>> {
    let plane = ParamPlane::new(base, d)?;
    plane.image(rest.par_iter().enumerate())
}

/// Integer coefficient vectors of max-norm `r`, up to sign and scale, in the
/// fixed enumeration order: fewer nonzero entries first, then descending
/// lexicographic. For two generators this runs (1,0), (0,1), (1,1), (1,−1),
/// (2,1), (2,−1), (1,2), (1,−2), …
fn shell(k: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-r; k];
    loop {
        let lead = v.iter().find(|&&x| x != 0).copied();
        let primitive = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1;
        if lead.is_some_and(|x| x > 0) && v.iter().any(|x| x.abs() == r) && primitive {
            out.push(v.clone());
        }
        // odometer over [-r, r]^k
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by(|a, b| {
                    let sa = a.iter().filter(|&&x| x != 0).count();
                    let sb = b.iter().filter(|&&x| x != 0).count();
                    sa.cmp(&sb).then_with(|| b.cmp(a))
                });
                return out;
            }
            i -= 1;
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = -r;
        }
    }
}

const SHELL_LIMIT: u64 = 1 << 20;

/// A member of `space` vanishing at none of `avoid`, searched over integer
/// combinations of the canonical basis shell by shell.
///
/// Each avoid point rules out one hyperplane of coefficient vectors, so the
/// search ends. Once a shell would exceed [`SHELL_LIMIT`] vectors the search
/// continues along the moment curve `(1, t, t², …)`, where each avoid point
/// rules out at most `k − 1` values of `t`.
pub fn member_avoiding(space: &CurveSubspace, avoid: &[ProjPoint]) -> Result<HomPoly> {
    let k = space.dim();
    if k == 0 {
        return Err(Error::ZeroPolynomial);
    }
    // value of each generator at each avoid point
    let values: Vec<Vec<BigInt>> = avoid
        .iter()
        .map(|p| space.basis().iter().map(|g| g.eval(p)).collect())
        .collect();
    if let Some(i) = values.iter().position(|row| row.iter().all(Zero::is_zero)) {
        return Err(Error::ForcedPoint(i));
    }
    let works = |w: &[BigInt]| {
        values
            .iter()
            .all(|row| !row.iter().zip(w).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
    };
    let finish = |w: Vec<BigInt>| HomPoly::combination(space.basis(), &w).normalized();

    let mut r = 1i64;
    while (2 * r as u64 + 1).checked_pow(k as u32).is_some_and(|s| s <= SHELL_LIMIT) {
        for v in shell(k, r) {
            let w: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            if works(&w) {
                return finish(w);
            }
        }
        r += 1;
    }
    let mut t = BigInt::zero();
    loop {
        t += 1;
        let mut w = Vec::with_capacity(k);
        let mut power = BigInt::one();
        for _ in 0..k {
            w.push(power.clone());
            power *= &t;
        }
        if works(&w) {
            return finish(w);
        }
    }
}

/// Member of a pencil (two-dimensional space of forms) avoiding every point
/// of `avoid`.
pub fn pencil_member_avoiding(pencil: &CurveSubspace, avoid: &[ProjPoint]) -> Result<HomPoly> {
    if pencil.dim() != 2 {
        return Err(Error::BadBase(pencil.projective_dim()));
    }
    member_avoiding(pencil, avoid)
}
