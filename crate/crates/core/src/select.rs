//! Choosing the base set `B` so that the image of the remaining points in the
//! parameter plane is a line arrangement the dual ordinary-point search can
//! work with.
//!
//! Conics use a three-point base built from an anchor point, with two
//! re-choice branches when the single-preimage lines turn out concurrent.
//! Cubics use a seven-point base, chosen by one of five procedures depending
//! on whether the set has a heavy line (14 or more points) or a heavy
//! irreducible conic (19 or more points).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;

use crate::curve::{classify_conic, ConicClass, HomPoly, LinePair};
use crate::error::{Error, Result, SelectionStage};
use crate::param::{param_dim, vanishing_subspace, ParamPlane, PhiLine};
use crate::projective::{common_point, incident, join, lines_spanned, ProjLine, ProjPoint};
use crate::sg::{find_anchor_point, find_ordinary_line};

/// Points on a line at which a cubic base selection switches to the
/// heavy-line cases.
pub const HEAVY_LINE: usize = 14;
/// Points on an irreducible conic at which cubic base selection switches to
/// the heavy-conic case.
pub const HEAVY_CONIC: usize = 19;
/// Size from which cubic base selection is guaranteed to succeed.
pub const CUBIC_GUARANTEE: usize = 250;

/// Which procedure produced a base set (or a certificate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Line,
    ConicMain,
    ConicReChoiceIrreducible,
    ConicReChoiceReducible,
    Cubic1,
    Cubic2,
    Cubic3a,
    Cubic3b,
    Cubic3c,
    Oracle,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Line => "Line",
            CaseTag::ConicMain => "Conic-Main",
            CaseTag::ConicReChoiceIrreducible => "Conic-ReChoiceIrreducible",
            CaseTag::ConicReChoiceReducible => "Conic-ReChoiceReducible",
            CaseTag::Cubic1 => "Cubic-1",
            CaseTag::Cubic2 => "Cubic-2",
            CaseTag::Cubic3a => "Cubic-3a",
            CaseTag::Cubic3b => "Cubic-3b",
            CaseTag::Cubic3c => "Cubic-3c",
            CaseTag::Oracle => "oracle",
        }
    }

    const ALL: [CaseTag; 10] = [
        CaseTag::Line,
        CaseTag::ConicMain,
        CaseTag::ConicReChoiceIrreducible,
        CaseTag::ConicReChoiceReducible,
        CaseTag::Cubic1,
        CaseTag::Cubic2,
        CaseTag::Cubic3a,
        CaseTag::Cubic3b,
        CaseTag::Cubic3c,
        CaseTag::Oracle,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Format(format!("unknown case tag {s:?}")))
    }
}

/// A verified base set together with its parameter plane and the image of
/// the remaining points.
#[derive(Clone, Debug)]
pub struct BSelection {
    /// Sorted indices into the input set.
    pub b_indices: Vec<usize>,
    pub case: CaseTag,
    /// Audit trail: heavy curves found, re-choices made, curves avoided.
    pub notes: Vec<String>,
    pub plane: ParamPlane,
    pub image: Vec<PhiLine>,
}

/// Largest number of points on one line, with the first line achieving it.
pub fn max_collinear(points: &[ProjPoint]) -> Result<(usize, ProjLine)> {
    lines_spanned(points)?
        .into_iter()
        .rev()
        .max_by_key(|l| l.indices.len())
        .map(|l| (l.indices.len(), l.line))
        .ok_or(Error::TooFewPoints { needed: 2, got: points.len() })
}

/// Whether the six points at `six` lie on a common (possibly reducible) conic.
pub fn coconic(points: &[ProjPoint], six: &[usize]) -> Result<bool> {
    if six.len() != 6 {
        return Err(Error::BadSubsetSize { expected: 6, got: six.len() });
    }
    let pts: Vec<_> = six.iter().map(|&i| points[i].clone()).collect();
    Ok(param_dim(&pts, 2)? >= 0)
}

fn failed(stage: impl Into<String>) -> Error {
    Error::SelectionFailed(SelectionStage(stage.into()))
}

fn complement(n: usize, b: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !b.contains(i)).collect()
}

/// Outcome of checking a candidate base against the requirements of the
/// dual ordinary-point search.
enum BaseCheck {
    Good(ParamPlane, Vec<PhiLine>),
    /// The lines that must not be concurrent meet in this point.
    Concurrent(ParamPlane, ProjPoint),
}

/// Image of `A \ B`; lines with more than `max_small` preimages are "big".
/// Requires at most one big line and the remaining lines not concurrent.
fn check_base(points: &[ProjPoint], b: &[usize], d: u32, max_small: usize) -> Result<BaseCheck> {
    let base: Vec<_> = b.iter().map(|&i| points[i].clone()).collect();
    let plane = ParamPlane::new(&base, d).map_err(|e| failed(format!("base parameter space: {e}")))?;
    let rest = complement(points.len(), b);
    let image = plane.image(rest.iter().map(|&i| (i, &points[i])).collect::<Vec<_>>())?;
    let big = image.iter().filter(|l| l.preimages.len() > max_small).count();
    if big > 1 {
        return Err(failed(format!("{big} image lines with more than {max_small} preimages")));
    }
    let small: Vec<ProjLine> = image
        .iter()
        .filter(|l| l.preimages.len() <= max_small)
        .map(|l| l.dual.clone())
        .collect();
    if small.len() < 2 {
        return Err(failed("fewer than two small image lines"));
    }
    match common_point(&small)? {
        Some(z) => Ok(BaseCheck::Concurrent(plane, z)),
        None => Ok(BaseCheck::Good(plane, image)),
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Three-point base for ordinary conics.
pub fn select_b_conic(points: &[ProjPoint]) -> Result<BSelection> {
    if points.len() < 6 {
        return Err(Error::TooFewPoints { needed: 6, got: points.len() });
    }
    let conics = vanishing_subspace(points, 2)?;
    if let Some(c) = conics.basis().first() {
        return Err(Error::ContainedInConic(c.clone()));
    }
    let anchor = find_anchor_point(points).map_err(|e| match e {
        Error::NotFound => Error::Anomaly("no anchor point on a non-collinear set".into()),
        e => e,
    })?;
    let x0 = anchor.index;
    let [x1, x2] = anchor
        .lines
        .each_ref()
        .map(|l| *l.indices.iter().find(|&&i| i != x0).expect("two points per line"));
    let b = sorted(vec![x0, x1, x2]);
    let mut notes = vec![format!("anchor {x0} with partners {x1}, {x2}")];
    let z = match check_base(points, &b, 2, 1)? {
        BaseCheck::Good(plane, image) => {
            return Ok(BSelection { b_indices: b, case: CaseTag::ConicMain, notes, plane, image });
        }
        BaseCheck::Concurrent(plane, z) => plane.curve_at(&z)?,
    };
    notes.push(format!("single-preimage lines concurrent; conic {z}"));

    // A lies on L ∪ C where L joins the two partners
    let l = join(&points[x1], &points[x2])?;
    let on_l = |i: &usize| incident(&points[*i], &l);
    let on_c = |i: &usize| z.eval(&points[*i]).is_zero();
    let n = points.len();
    let y0 = (0..n)
        .find(|i| on_l(i) && !on_c(i))
        .ok_or_else(|| failed("no point on L off the conic"))?;
    let (case, y1, y2) = match classify_conic(&z)? {
        ConicClass::Irreducible => {
            let mut it = (0..n).filter(|i| on_c(i) && !on_l(i));
            let (y1, y2) = it.next().zip(it.next()).ok_or_else(|| failed("conic has too few points off L"))?;
            (CaseTag::ConicReChoiceIrreducible, y1, y2)
        }
        ConicClass::TwoRealLines(LinePair::Rational(l1, l2)) => {
            let pick = |a: &ProjLine, b: &ProjLine| {
                (0..n).find(|&i| {
                    incident(&points[i], a) && !incident(&points[i], b) && !on_l(&i)
                })
            };
            let y1 = pick(&l1, &l2).ok_or_else(|| failed("first component has no free point"))?;
            let y2 = pick(&l2, &l1).ok_or_else(|| failed("second component has no free point"))?;
            (CaseTag::ConicReChoiceReducible, y1, y2)
        }
        other => return Err(failed(format!("concurrency conic is {other:?}"))),
    };
    let b = sorted(vec![y0, y1, y2]);
    notes.push(format!("re-chose base {y0}, {y1}, {y2}"));
    match check_base(points, &b, 2, 1)? {
        BaseCheck::Good(plane, image) => Ok(BSelection { b_indices: b, case, notes, plane, image }),
        BaseCheck::Concurrent(..) => Err(failed("re-chosen conic base still concurrent")),
    }
}

enum ConicBlock {
    Curve(HomPoly),
    /// Four of the five points are collinear: every sixth point is co-conic.
    Everything,
}

/// Greedy choice of base points avoiding every line through two chosen
/// points and every conic through five of them.
struct Chooser<'a> {
    points: &'a [ProjPoint],
    chosen: Vec<usize>,
    /// A line that may carry more than two chosen points.
    allowed_line: Option<ProjLine>,
}

impl<'a> Chooser<'a> {
    fn new(points: &'a [ProjPoint]) -> Self {
        Self { points, chosen: Vec::new(), allowed_line: None }
    }

    fn line_blockers(&self) -> Vec<ProjLine> {
        let mut out: Vec<ProjLine> = self
            .chosen
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| join(&self.points[a], &self.points[b]).expect("distinct points"))
            .filter(|l| self.allowed_line.as_ref() != Some(l))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn conic_blockers(&self) -> Result<Vec<ConicBlock>> {
        self.chosen
            .iter()
            .combinations(5)
            .map(|five| {
                let pts: Vec<_> = five.iter().map(|&&i| self.points[i].clone()).collect();
                let s = vanishing_subspace(&pts, 2)?;
                Ok(if s.dim() == 1 {
                    ConicBlock::Curve(s.basis()[0].clone())
                } else {
                    ConicBlock::Everything
                })
            })
            .collect()
    }

    /// Picks the first candidate off every blocker and not excluded by `skip`.
    fn pick(&mut self, candidates: &[usize], skip: impl Fn(usize) -> bool) -> Result<Option<usize>> {
        let lines = self.line_blockers();
        let conics = self.conic_blockers()?;
        let hit = candidates.iter().copied().find(|&c| {
            let p = &self.points[c];
            !self.chosen.contains(&c)
                && !skip(c)
                && !lines.iter().any(|l| incident(p, l))
                && !conics.iter().any(|b| match b {
                    ConicBlock::Curve(f) => f.eval(p).is_zero(),
                    ConicBlock::Everything => true,
                })
        });
        if let Some(c) = hit {
            self.chosen.push(c);
        }
        Ok(hit)
    }

    fn avoided(&self) -> Result<(usize, usize)> {
        Ok((self.line_blockers().len(), self.conic_blockers()?.len()))
    }
}

/// Points of `points` on `f`.
fn count_on(points: &[ProjPoint], f: &HomPoly) -> usize {
    points.iter().filter(|p| f.eval(p).is_zero()).count()
}

/// Seven-point base for ordinary cubics.
pub fn select_b_cubic(points: &[ProjPoint]) -> Result<BSelection> {
    let n = points.len();
    if n < 10 {
        return Err(Error::TooFewPoints { needed: 10, got: n });
    }
    let cubics = vanishing_subspace(points, 3)?;
    if let Some(c) = cubics.basis().first() {
        return Err(Error::ContainedInCubic(c.clone()));
    }
    select_cubic_inner(points).map_err(|e| match e {
        Error::SelectionFailed(stage) if n >= CUBIC_GUARANTEE => {
            Error::Anomaly(format!("cubic base selection failed on {n} points: {stage}"))
        }
        e => e,
    })
}

fn select_cubic_inner(points: &[ProjPoint]) -> Result<BSelection> {
    let (heavy, line) = max_collinear(points)?;
    if heavy >= HEAVY_LINE {
        let notes = vec![format!("heavy line {line:?} with {heavy} points")];
        return heavy_line_case(points, &line, notes);
    }
    match case1_greedy(points)? {
        Greedy::Done(b, notes) => finish_cubic(points, b, CaseTag::Cubic1, notes),
        Greedy::HeavyConic(c, mut notes) => {
            notes.push(format!("heavy conic {c} with {} points", count_on(points, &c)));
            heavy_conic_case(points, &c, notes)
        }
    }
}

fn finish_cubic(points: &[ProjPoint], b: Vec<usize>, case: CaseTag, notes: Vec<String>) -> Result<BSelection> {
    let b = sorted(b);
    check_cubic_genericity(points, &b)?;
    match check_base(points, &b, 3, 2)? {
        BaseCheck::Good(plane, image) => Ok(BSelection { b_indices: b, case, notes, plane, image }),
        BaseCheck::Concurrent(..) => Err(failed(format!("{case}: small image lines concurrent"))),
    }
}

/// At most four collinear and at most six co-conic.
fn check_cubic_genericity(points: &[ProjPoint], b: &[usize]) -> Result<()> {
    let base: Vec<_> = b.iter().map(|&i| points[i].clone()).collect();
    if max_collinear(&base)?.0 > 4 {
        return Err(failed("base has five collinear points"));
    }
    for six in (0..7).combinations(6) {
        if coconic(&base, &six)? {
            return Err(failed("base has six co-conic points"));
        }
    }
    Ok(())
}

enum Greedy {
    Done(Vec<usize>, Vec<String>),
    HeavyConic(HomPoly, Vec<String>),
}

fn case1_greedy(points: &[ProjPoint]) -> Result<Greedy> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut chooser = Chooser::new(points);
    let mut notes = Vec::new();
    for step in 1..=7 {
        // a heavy irreducible conic among the explicit blockers means the
        // set belongs to the heavy-conic case
        for block in chooser.conic_blockers()? {
            if let ConicBlock::Curve(f) = block {
                if count_on(points, &f) >= HEAVY_CONIC && classify_conic(&f)? == ConicClass::Irreducible {
                    return Ok(Greedy::HeavyConic(f, notes));
                }
            }
        }
        let (nl, nc) = chooser.avoided()?;
        if chooser.pick(&all, |_| false)?.is_none() {
            if points.len() >= CUBIC_GUARANTEE {
                return Err(Error::Anomaly(format!(
                    "case 1 blocked at y{step} with no heavy blocker ({nl} lines, {nc} conics)"
                )));
            }
            return Err(failed(format!("case 1 blocked at y{step}")));
        }
        if nl + nc > 0 {
            notes.push(format!("y{step} avoided {nl} lines and {nc} conics"));
        }
    }
    Ok(Greedy::Done(chooser.chosen, notes))
}

fn heavy_conic_case(points: &[ProjPoint], c: &HomPoly, notes: Vec<String>) -> Result<BSelection> {
    let (on, off): (Vec<usize>, Vec<usize>) = (0..points.len()).partition(|&i| c.eval(&points[i]).is_zero());
    if off.len() < 2 {
        return Err(failed("case 2: fewer than two points off the conic"));
    }
    let mut chooser = Chooser::new(points);
    chooser.chosen = vec![off[0], off[1]];
    for step in 3..=7 {
        if chooser.pick(&on, |_| false)?.is_none() {
            return Err(failed(format!("case 2 blocked at y{step}")));
        }
    }
    finish_cubic(points, chooser.chosen, CaseTag::Cubic2, notes)
}

fn heavy_line_case(points: &[ProjPoint], l: &ProjLine, mut notes: Vec<String>) -> Result<BSelection> {
    let (on, off): (Vec<usize>, Vec<usize>) = (0..points.len()).partition(|&i| incident(&points[i], l));
    if off.len() >= 10 {
        return case_3a(points, l, &on, &off, notes);
    }
    let off_pts: Vec<_> = off.iter().map(|&i| points[i].clone()).collect();
    let (k, second) = max_collinear(&off_pts)?;
    if k >= 3 {
        notes.push(format!("second line {second:?} with {k} points off the heavy line"));
        case_3b(points, &on, &off, &second, notes)
    } else {
        case_3c(points, &on, &off, notes)
    }
}

fn case_3a(
    points: &[ProjPoint],
    l: &ProjLine,
    on: &[usize],
    off: &[usize],
    mut notes: Vec<String>,
) -> Result<BSelection> {
    let off_pts: Vec<_> = off.iter().map(|&i| points[i].clone()).collect();
    let (_, [i, j]) = find_ordinary_line(&off_pts)?;
    let mut chooser = Chooser::new(points);
    chooser.chosen = vec![off[i], off[j]];
    chooser.allowed_line = Some(l.clone());
    for step in 3..=4 {
        if chooser.pick(off, |_| false)?.is_none() {
            return Err(failed(format!("case 3a blocked at y{step}")));
        }
    }
    let first_four = chooser.chosen.clone();

    let choose_on_line = |avoid: &[usize]| -> Result<Vec<usize>> {
        let mut c = Chooser { points, chosen: first_four.clone(), allowed_line: Some(l.clone()) };
        for step in 5..=7 {
            if c.pick(on, |i| avoid.contains(&i))?.is_none() {
                return Err(failed(format!("case 3a blocked at y{step}")));
            }
        }
        Ok(c.chosen)
    };

    let b = sorted(choose_on_line(&[])?);
    check_cubic_genericity(points, &b)?;
    let cubic = match check_base(points, &b, 3, 2)? {
        BaseCheck::Good(plane, image) => {
            return Ok(BSelection { b_indices: b, case: CaseTag::Cubic3a, notes, plane, image });
        }
        BaseCheck::Concurrent(plane, z) => plane.curve_at(&z)?,
    };
    // the concurrency cubic contains A \ L and at most three points of L
    let on_cubic: Vec<usize> = on.iter().copied().filter(|&i| cubic.eval(&points[i]).is_zero()).collect();
    notes.push(format!("small image lines concurrent; re-choosing y5..y7 off {on_cubic:?}"));
    let b = choose_on_line(&on_cubic)?;
    finish_cubic(points, b, CaseTag::Cubic3a, notes)
}

fn case_3b(
    points: &[ProjPoint],
    on: &[usize],
    off: &[usize],
    second: &ProjLine,
    notes: Vec<String>,
) -> Result<BSelection> {
    let (on_second, rest): (Vec<usize>, Vec<usize>) =
        off.iter().partition(|&&i| incident(&points[i], second));
    let triple = rest
        .iter()
        .copied()
        .tuple_combinations()
        .find(|&(a, b, c)| {
            let l = join(&points[a], &points[b]).expect("distinct");
            !incident(&points[c], &l)
        })
        .ok_or_else(|| failed("case 3b: points off both lines are collinear"))?;
    let rest_pts: Vec<_> = rest.iter().map(|&i| points[i].clone()).collect();
    let crowded: Option<ProjLine> = lines_spanned(&rest_pts)?
        .into_iter()
        .find(|s| s.indices.len() >= 4)
        .map(|s| s.line);
    let mut on_second_ok = on_second
        .iter()
        .copied()
        .filter(|&i| !crowded.as_ref().is_some_and(|c| incident(&points[i], c)));
    let (y4, y5) = on_second_ok
        .next()
        .zip(on_second_ok.next())
        .ok_or_else(|| failed("case 3b: second line too crowded"))?;
    let mut chooser = Chooser::new(points);
    chooser.chosen = vec![triple.0, triple.1, triple.2, y4, y5];
    for step in 6..=7 {
        if chooser.pick(on, |_| false)?.is_none() {
            return Err(failed(format!("case 3b blocked at y{step}")));
        }
    }
    finish_cubic(points, chooser.chosen, CaseTag::Cubic3b, notes)
}

fn case_3c(points: &[ProjPoint], on: &[usize], off: &[usize], notes: Vec<String>) -> Result<BSelection> {
    if off.len() < 5 {
        return Err(failed("case 3c: fewer than five points off the heavy line"));
    }
    let mut chooser = Chooser::new(points);
    chooser.chosen = off[..5].to_vec();
    for step in 6..=7 {
        if chooser.pick(on, |_| false)?.is_none() {
            return Err(failed(format!("case 3c blocked at y{step}")));
        }
    }
    finish_cubic(points, chooser.chosen, CaseTag::Cubic3c, notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(pts: &[(i64, i64)]) -> Vec<ProjPoint> {
        pts.iter().map(|&(x, y)| ProjPoint::affine(x, y)).collect()
    }

    #[test]
    fn max_collinear_examples() {
        let a = aff(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 5)]);
        let (k, l) = max_collinear(&a).unwrap();
        assert_eq!(k, 3);
        assert_eq!(l, ProjLine::from_i64(0, 1, 0).unwrap());
        let g = aff(&[(0, 0), (1, 0), (0, 1), (2, 3)]);
        assert_eq!(max_collinear(&g).unwrap().0, 2);
        assert!(max_collinear(&g[..1]).is_err());
    }

    #[test]
    fn coconic_examples() {
        let parabola: Vec<_> = (0..6).map(|t| ProjPoint::from_i64(t * t, t, 1).unwrap()).collect();
        assert!(coconic(&parabola, &[0, 1, 2, 3, 4, 5]).unwrap());
        let generic = aff(&[(0, 0), (1, 0), (0, 1), (2, 3), (5, -1), (-3, 7)]);
        assert!(!coconic(&generic, &[0, 1, 2, 3, 4, 5]).unwrap());
        let four_on_line = aff(&[(0, 0), (1, 0), (2, 0), (3, 0), (5, -1), (-3, 7)]);
        assert!(coconic(&four_on_line, &[0, 1, 2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn case_tags_round_trip() {
        for t in CaseTag::ALL {
            assert_eq!(t.as_str().parse::<CaseTag>().unwrap(), t);
        }
        assert!("Cubic-4".parse::<CaseTag>().is_err());
    }

    #[test]
    fn conic_main_on_generic_six() {
        let a = aff(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        let sel = select_b_conic(&a).unwrap();
        assert_eq!(sel.case, CaseTag::ConicMain);
        assert_eq!(sel.b_indices.len(), 3);
    }

    #[test]
    fn conic_rechoice_irreducible() {
        // the anchor base sits on y = x², the line through its partners is
        // y = 1, and every other point lies on one of the two
        let a = aff(&[(0, 0), (-1, 1), (1, 1), (2, 4), (-2, 4), (3, 9), (-3, 1), (3, 1), (5, 1)]);
        let sel = select_b_conic(&a).unwrap();
        assert_eq!(sel.case, CaseTag::ConicReChoiceIrreducible);
        // y0 on y = 1 off the parabola, then two parabola points off y = 1
        assert_eq!(sel.b_indices, vec![0, 3, 6]);
        assert!(sel.image.iter().all(|l| l.preimages.len() == 1));
    }

    #[test]
    fn conic_rechoice_reducible() {
        // points off x + 2y = 2 all lie on the line pair xy = 0
        let a = aff(&[(1, 0), (2, 0), (0, 1), (3, 0), (0, 3), (0, -2), (4, -1), (-2, 2), (6, -2)]);
        let sel = select_b_conic(&a).unwrap();
        assert_eq!(sel.case, CaseTag::ConicReChoiceReducible);
        assert_eq!(sel.b_indices, vec![0, 4, 6]);
        assert!(sel.image.iter().all(|l| l.preimages.len() == 1));
    }

    #[test]
    fn cubic_rejects_sets_on_a_cubic() {
        // ten points on y = x³
        let a: Vec<_> = (-5..5).map(|t| ProjPoint::affine(t, t * t * t)).collect();
        assert!(matches!(select_b_cubic(&a), Err(Error::ContainedInCubic(_))));
    }
}
