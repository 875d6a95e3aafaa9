//! Brute-force search for ordinary curves, independent of base selection.
//!
//! A `k`-subset `T` (with `k = d(d+3)/2`) supports an ordinary curve exactly
//! when some member of the space `V` of curves through `T` misses every other
//! point. Each other point either lies on all of `V` or cuts out a
//! hyperplane of it, and finitely many hyperplanes never cover `V`.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::curve::{ordinary_count, HomPoly};
use crate::error::{Error, Result};
use crate::param::{member_avoiding, param_dim, vanishing_subspace};
use crate::projective::{lines_spanned, ProjLine, ProjPoint};

/// Subsets examined when no budget is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
}

/// A degree-`d` curve through the points at `subset` and no other point, if
/// one exists.
pub fn ordinary_on_subset(points: &[ProjPoint], subset: &[usize], d: u32) -> Result<Option<HomPoly>> {
    let k = ordinary_count(d);
    if subset.len() != k {
        return Err(Error::BadSubsetSize { expected: k, got: subset.len() });
    }
    let chosen: Vec<_> = subset.iter().map(|&i| points[i].clone()).collect();
    let space = vanishing_subspace(&chosen, d)?;
    if space.dim() == 0 {
        return Ok(None);
    }
    let others: Vec<_> = (0..points.len())
        .filter(|i| !subset.contains(i))
        .map(|i| points[i].clone())
        .collect();
    if others.iter().any(|p| space.forces(p)) {
        return Ok(None);
    }
    member_avoiding(&space, &others).map(Some)
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128).map(|x| x / (i as u128 + 1)))
        .unwrap_or(u128::MAX)
}

/// Subsets of size `d(d+3)/2` supporting an ordinary degree-`d` curve, in
/// lexicographic order (only the first in [`Mode::First`]).
///
/// Degree 4 is accepted only in [`Mode::First`] with an explicit budget.
/// The result does not depend on the number of worker threads.
pub fn brute_force_ordinary(
    points: &[ProjPoint],
    d: u32,
    mode: Mode,
    budget: Option<u64>,
) -> Result<Vec<(Vec<usize>, HomPoly)>> {
    match d {
        1..=3 => {}
        4 if mode == Mode::First && budget.is_some() => {}
        _ => return Err(Error::UnsupportedDegree(d)),
    }
    let n = points.len();
    let k = ordinary_count(d);
    let needed = binomial(n, k);
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if n < k {
        return Ok(Vec::new());
    }
    // one block per leading index; blocks are lexicographically ordered
    let block = |first: usize| -> Box<dyn Iterator<Item = Result<(Vec<usize>, HomPoly)>> + '_> {
        Box::new(((first + 1)..n).combinations(k - 1).filter_map(move |tail| {
            let mut subset = Vec::with_capacity(k);
            subset.push(first);
            subset.extend(tail);
            ordinary_on_subset(points, &subset, d).transpose().map(|r| r.map(|f| (subset, f)))
        }))
    };
    let leads = 0..=(n - k);
    match mode {
        Mode::First => leads
            .into_par_iter()
            .find_map_first(|first| block(first).next())
            .transpose()
            .map(|hit| hit.into_iter().collect()),
        Mode::All => {
            let blocks: Vec<Vec<_>> = leads
                .into_par_iter()
                .map(|first| block(first).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            Ok(blocks.into_iter().flatten().collect())
        }
    }
}

/// Why ten points with a one-dimensional family of cubics are special.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TenPointWitness {
    SixOnLine(ProjLine),
    NineOnConic(HomPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TenPointReport {
    /// Projective dimension of the cubics through the ten points.
    pub dim: i64,
    /// Present when `dim == 1`.
    pub witness: Option<TenPointWitness>,
}

/// Ten points lying on a pencil of cubics have six on a line or nine on a
/// conic; finds which.
pub fn check_lemma_tenpoints(points: &[ProjPoint]) -> Result<TenPointReport> {
    if points.len() != 10 {
        return Err(Error::WrongSize(points.len()));
    }
    let dim = param_dim(points, 3)?;
    if dim != 1 {
        return Ok(TenPointReport { dim, witness: None });
    }
    if let Some(l) = lines_spanned(points)?.into_iter().find(|l| l.indices.len() >= 6) {
        return Ok(TenPointReport { dim, witness: Some(TenPointWitness::SixOnLine(l.line)) });
    }
    for five in (0..10).combinations(5) {
        let pts: Vec<_> = five.iter().map(|&i| points[i].clone()).collect();
        let space = vanishing_subspace(&pts, 2)?;
        if space.dim() != 1 {
            continue;
        }
        let conic = &space.basis()[0];
        if points.iter().filter(|p| conic.eval(p).is_zero()).count() >= 9 {
            let witness = TenPointWitness::NineOnConic(conic.clone().normalized()?);
            return Ok(TenPointReport { dim, witness: Some(witness) });
        }
    }
    Err(Error::Anomaly("ten points on a pencil of cubics with no six on a line or nine on a conic".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_i64(x, y, z).unwrap()
    }

    #[test]
    fn subset_on_irreducible_conic() {
        let mut a: Vec<_> = (0..5).map(|t| pt(t * t, t, 1)).collect();
        a.push(pt(1, 5, 1));
        let f = ordinary_on_subset(&a, &[0, 1, 2, 3, 4], 2).unwrap().unwrap();
        assert_eq!(f, HomPoly::from_i64(2, &[0, 0, 1, -1, 0, 0]).unwrap());
    }

    #[test]
    fn subset_with_four_collinear_is_forced() {
        let a = vec![pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1), pt(3, 0, 1), pt(0, 1, 1), pt(4, 0, 1)];
        assert_eq!(ordinary_on_subset(&a, &[0, 1, 2, 3, 4], 2).unwrap(), None);
        assert!(matches!(ordinary_on_subset(&a, &[0, 1], 2), Err(Error::BadSubsetSize { .. })));
    }

    #[test]
    fn subset_of_grid_avoids_extra_point() {
        let mut a: Vec<_> = (0..3).flat_map(|x| (0..3).map(move |y| pt(x, y, 1))).collect();
        a.push(pt(3, 3, 1));
        let f = ordinary_on_subset(&a, &(0..9).collect::<Vec<_>>(), 3).unwrap().unwrap();
        assert!(a[..9].iter().all(|p| f.eval(p) == 0.into()));
        assert_ne!(f.eval(&a[9]), 0.into());
    }

    #[test]
    fn brute_force_small_sets() {
        let six = vec![pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1), pt(1, 1, 1), pt(2, 1, 1), pt(1, 2, 1)];
        let all = brute_force_ordinary(&six, 2, Mode::All, None).unwrap();
        assert!(!all.is_empty());
        assert!(all.windows(2).all(|w| w[0].0 < w[1].0));
        let first = brute_force_ordinary(&six, 2, Mode::First, None).unwrap();
        assert_eq!(first, all[..1]);

        let on_conic: Vec<_> = (0..7).map(|t| pt(t * t, t, 1)).collect();
        assert!(brute_force_ordinary(&on_conic, 2, Mode::All, None).unwrap().is_empty());
    }

    #[test]
    fn budget_and_degree_guards() {
        let a: Vec<_> = (0..20).map(|t| pt(t, t * t * t + 1, 1)).collect();
        assert!(matches!(
            brute_force_ordinary(&a, 3, Mode::All, Some(10)),
            Err(Error::BudgetExceeded { needed: 167_960, budget: 10 })
        ));
        assert!(matches!(brute_force_ordinary(&a, 4, Mode::First, None), Err(Error::UnsupportedDegree(4))));
        assert!(matches!(brute_force_ordinary(&a, 4, Mode::All, Some(1 << 40)), Err(Error::UnsupportedDegree(4))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(12, 9), 220);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(14, 5), 2002);
        assert_eq!(binomial(20, 9), 167_960);
    }

    #[test]
    fn ten_point_reports() {
        let mut six_line: Vec<_> = (0..6).map(|t| pt(t, 0, 1)).collect();
        six_line.extend([pt(0, 1, 1), pt(1, 3, 1), pt(-2, 5, 1), pt(4, -7, 1)]);
        let r = check_lemma_tenpoints(&six_line).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.witness, Some(TenPointWitness::SixOnLine(ProjLine::from_i64(0, 1, 0).unwrap())));

        let mut nine_conic: Vec<_> = (-4..5).map(|t| pt(t * t, t, 1)).collect();
        nine_conic.push(pt(1, 7, 1));
        let r = check_lemma_tenpoints(&nine_conic).unwrap();
        assert_eq!(r.dim, 1);
        assert!(matches!(r.witness, Some(TenPointWitness::NineOnConic(_))));

        let generic = [(0, 0), (1, 0), (0, 1), (2, 3), (5, -1), (-3, 7), (4, 4), (7, 2), (-6, -5), (3, -8)];
        let g: Vec<_> = generic.iter().map(|&(x, y)| pt(x, y, 1)).collect();
        assert_eq!(check_lemma_tenpoints(&g).unwrap(), TenPointReport { dim: -1, witness: None });
        assert!(matches!(check_lemma_tenpoints(&g[..9]), Err(Error::WrongSize(9))));
    }
}
