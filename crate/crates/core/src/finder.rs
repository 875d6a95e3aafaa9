//! Ordinary lines, conics and cubics, with certificates that can be checked
//! independently of how they were found.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::curve::{ordinary_count, HomPoly};
use crate::error::{Error, Result};
use crate::oracle::{brute_force_ordinary, Mode};
use crate::param::{pencil_member_avoiding, vanishing_subspace, PhiLine};
use crate::projective::ProjPoint;
use crate::select::{select_b_conic, select_b_cubic, BSelection, CaseTag};
use crate::sg::{find_dual_sg_point, find_ordinary_line};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Pipeline,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Pipeline => "pipeline",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A curve through exactly `d(d+3)/2` points of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub curve: HomPoly,
    /// Sorted indices of the points on the curve.
    pub incident: Vec<usize>,
    /// Sorted base set; empty when the oracle found the curve.
    pub base: Vec<usize>,
    pub case: CaseTag,
    pub method: Method,
    /// Parameter-plane point whose curve this is, when found by the dual
    /// ordinary-point search.
    pub dual_witness: Option<[BigInt; 3]>,
}

impl Certificate {
    pub fn degree(&self) -> u32 {
        self.curve.degree()
    }
}

/// Why a certificate does not check out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    ZeroCurve,
    IndexOutOfRange(usize),
    UnsortedIndices,
    WrongIncidentCount { expected: usize, got: usize },
    /// Points of the set on the curve but not listed, and listed points off it.
    IncidenceMismatch { unlisted: Vec<usize>, off_curve: Vec<usize> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::ZeroCurve => write!(f, "the curve is the zero polynomial"),
            Rejection::IndexOutOfRange(i) => write!(f, "incident index {i} is out of range"),
            Rejection::UnsortedIndices => write!(f, "incident indices are not strictly increasing"),
            Rejection::WrongIncidentCount { expected, got } => {
                write!(f, "{got} incident points listed, an ordinary curve has {expected}")
            }
            Rejection::IncidenceMismatch { unlisted, off_curve } => {
                write!(f, "incidence mismatch: unlisted {unlisted:?}, off the curve {off_curve:?}")
            }
        }
    }
}

/// Rechecks a certificate against `points` with a full incidence scan.
pub fn verify_certificate(points: &[ProjPoint], cert: &Certificate) -> std::result::Result<(), Rejection> {
    if cert.curve.is_zero() {
        return Err(Rejection::ZeroCurve);
    }
    if let Some(&i) = cert.incident.iter().find(|&&i| i >= points.len()) {
        return Err(Rejection::IndexOutOfRange(i));
    }
    if cert.incident.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Rejection::UnsortedIndices);
    }
    let on: Vec<usize> = (0..points.len()).filter(|&i| cert.curve.eval(&points[i]).is_zero()).collect();
    if on != cert.incident {
        let unlisted = on.iter().copied().filter(|i| cert.incident.binary_search(i).is_err()).collect();
        let off_curve = cert.incident.iter().copied().filter(|i| on.binary_search(i).is_err()).collect();
        return Err(Rejection::IncidenceMismatch { unlisted, off_curve });
    }
    let expected = ordinary_count(cert.degree());
    if on.len() != expected {
        return Err(Rejection::WrongIncidentCount { expected, got: on.len() });
    }
    Ok(())
}

fn incidences(points: &[ProjPoint], f: &HomPoly) -> Vec<usize> {
    (0..points.len()).filter(|&i| f.eval(&points[i]).is_zero()).collect()
}

/// Builds a pipeline certificate, rechecking the incidence count.
fn pipeline_cert(
    points: &[ProjPoint],
    curve: HomPoly,
    sel: &BSelection,
    dual_witness: Option<[BigInt; 3]>,
) -> Result<Certificate> {
    let incident = incidences(points, &curve);
    let expected = ordinary_count(curve.degree());
    if incident.len() != expected {
        return Err(Error::Anomaly(format!(
            "{} curve {curve} meets {} points, expected {expected}",
            sel.case,
            incident.len()
        )));
    }
    Ok(Certificate {
        curve,
        incident,
        base: sel.b_indices.clone(),
        case: sel.case,
        method: Method::Pipeline,
        dual_witness,
    })
}

/// Runs the dual ordinary-point search over the single-preimage lines of the
/// selection's image, with the line carrying several preimages forbidden.
fn dual_search(points: &[ProjPoint], sel: &BSelection) -> Result<Certificate> {
    let (single, multi): (Vec<&PhiLine>, Vec<&PhiLine>) = sel.image.iter().partition(|l| l.preimages.len() == 1);
    let forbidden = match multi.as_slice() {
        [] => None,
        [l] => Some(&l.dual),
        _ => return Err(Error::Anomaly(format!("{}: several multi-preimage lines", sel.case))),
    };
    let duals: Vec<_> = single.iter().map(|l| l.dual.clone()).collect();
    let (z, _) = find_dual_sg_point(&duals, forbidden).map_err(|e| match e {
        Error::AllConcurrent | Error::NoOrdinaryPoint => {
            Error::Anomaly(format!("{}: dual ordinary-point search failed: {e}", sel.case))
        }
        e => e,
    })?;
    let curve = sel.plane.curve_at(&z)?;
    pipeline_cert(points, curve, sel, Some(z.into_coords()))
}

/// An ordinary line; the certificate's coefficients are the line coordinates.
pub fn find_ordinary_line_cert(points: &[ProjPoint]) -> Result<Certificate> {
    let (line, [i, j]) = find_ordinary_line(points)?;
    let curve = HomPoly::new(1, line.into_coords().to_vec())?;
    Ok(Certificate {
        curve,
        incident: vec![i, j],
        base: Vec::new(),
        case: CaseTag::Line,
        method: Method::Pipeline,
        dual_witness: None,
    })
}

/// A conic through exactly five points of a set not contained in a conic.
pub fn find_ordinary_conic(points: &[ProjPoint]) -> Result<Certificate> {
    if points.len() < 6 {
        return Err(Error::TooFewPoints { needed: 6, got: points.len() });
    }
    let sel = select_b_conic(points)?;
    dual_search(points, &sel)
}

/// A cubic through exactly nine points of a set not contained in a cubic.
///
/// Base selection is only guaranteed for 250 or more points. Below that,
/// when `allow_fallback` is set, a failed selection hands over to the
/// brute-force oracle.
pub fn find_ordinary_cubic(points: &[ProjPoint], allow_fallback: bool) -> Result<Certificate> {
    if points.len() < 10 {
        return Err(Error::TooFewPoints { needed: 10, got: points.len() });
    }
    let sel = match select_b_cubic(points) {
        Ok(sel) => sel,
        Err(Error::SelectionFailed(_)) if allow_fallback => return oracle_cubic(points),
        Err(e) => return Err(e),
    };
    cubic_from_selection(points, &sel)
}

/// Finishes a cubic search from a verified base selection.
pub(crate) fn cubic_from_selection(points: &[ProjPoint], sel: &BSelection) -> Result<Certificate> {
    match sel.image.iter().find(|l| l.preimages.len() == 2) {
        Some(pair) => {
            // the curves through B and both preimages form a pencil; take a
            // member missing every other point
            let mut nine = sel.b_indices.clone();
            nine.extend(&pair.preimages);
            let nine_pts: Vec<_> = nine.iter().map(|&i| points[i].clone()).collect();
            let pencil = vanishing_subspace(&nine_pts, 3)?;
            let others: Vec<_> = (0..points.len())
                .filter(|i| !nine.contains(i))
                .map(|i| points[i].clone())
                .collect();
            let curve = pencil_member_avoiding(&pencil, &others).map_err(|e| {
                Error::Anomaly(format!("{}: no pencil member through exactly nine points: {e}", sel.case))
            })?;
            pipeline_cert(points, curve, sel, None)
        }
        None => dual_search(points, sel),
    }
}

fn oracle_cubic(points: &[ProjPoint]) -> Result<Certificate> {
    let found = brute_force_ordinary(points, 3, Mode::First, None)?;
    let (incident, curve) = found.into_iter().next().ok_or(Error::OracleExhausted(3))?;
    Ok(Certificate {
        curve,
        incident,
        base: Vec::new(),
        case: CaseTag::Oracle,
        method: Method::Oracle,
        dual_witness: None,
    })
}

/// Dispatches on degree 1, 2 or 3. Sets contained in a curve of the
/// requested degree are rejected with that curve.
pub fn find_ordinary(points: &[ProjPoint], degree: u32, allow_fallback: bool) -> Result<Certificate> {
    let needed = ordinary_count(degree) + 1;
    if !(1..=3).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    if points.len() < needed {
        return Err(Error::TooFewPoints { needed, got: points.len() });
    }
    let containing = vanishing_subspace(points, degree)?;
    if let Some(f) = containing.basis().first() {
        let f = f.clone().normalized()?;
        return Err(match degree {
            1 => Error::ContainedInCurve(f),
            2 => Error::ContainedInConic(f),
            _ => Error::ContainedInCubic(f),
        });
    }
    match degree {
        1 => find_ordinary_line_cert(points),
        2 => find_ordinary_conic(points),
        _ => find_ordinary_cubic(points, allow_fallback),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::ParamPlane;

    fn aff(pts: &[(i64, i64)]) -> Vec<ProjPoint> {
        pts.iter().map(|&(x, y)| ProjPoint::affine(x, y)).collect()
    }

    #[test]
    fn conic_on_six_points() {
        let a = aff(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        let c = find_ordinary_conic(&a).unwrap();
        assert_eq!(c.incident.len(), 5);
        assert_eq!(c.method, Method::Pipeline);
        assert!(verify_certificate(&a, &c).is_ok());
    }

    #[test]
    fn conic_rejects_co_conic_sets() {
        let a: Vec<_> = (0..7).map(|t| ProjPoint::affine(t, t * t)).collect();
        assert!(matches!(find_ordinary(&a, 2, false), Err(Error::ContainedInConic(_))));
    }

    #[test]
    fn line_certificate() {
        let a = aff(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
        let c = find_ordinary(&a, 1, false).unwrap();
        assert_eq!(c.case, CaseTag::Line);
        assert!(verify_certificate(&a, &c).is_ok());
        let col = aff(&[(0, 0), (1, 1), (2, 2)]);
        assert!(matches!(find_ordinary(&col, 1, false), Err(Error::ContainedInCurve(_))));
    }

    #[test]
    fn cubic_rejects_sets_on_a_cubic() {
        let a: Vec<_> = (-5..5).map(|t| ProjPoint::affine(t, t * t * t)).collect();
        assert!(matches!(find_ordinary(&a, 3, true), Err(Error::ContainedInCubic(_))));
    }

    #[test]
    fn pencil_branch_on_grid() {
        // cubics through seven points of the 3×3 grid pass through the other
        // two as well, so those two share an image line
        let mut a: Vec<_> = (0..3).flat_map(|x| (0..3).map(move |y| ProjPoint::affine(x, y))).collect();
        a.extend(aff(&[(3, 3), (5, -1), (-1, 4)]));
        let b_indices = vec![0, 1, 2, 3, 5, 6, 7];
        let base: Vec<_> = b_indices.iter().map(|&i| a[i].clone()).collect();
        let plane = ParamPlane::new(&base, 3).unwrap();
        let rest: Vec<_> = (0..a.len()).filter(|i| !b_indices.contains(i)).map(|i| (i, &a[i])).collect();
        let image = plane.image(rest).unwrap();
        assert!(image.iter().any(|l| l.preimages == [4, 8]));
        let sel = BSelection { b_indices, case: CaseTag::Cubic1, notes: vec![], plane, image };
        let c = cubic_from_selection(&a, &sel).unwrap();
        assert_eq!(c.incident, (0..9).collect::<Vec<_>>());
        assert_eq!(c.dual_witness, None);
        assert!(verify_certificate(&a, &c).is_ok());
    }

    #[test]
    fn verification_rejections() {
        let a = aff(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        let good = find_ordinary_conic(&a).unwrap();

        let mut missing = good.clone();
        missing.incident.pop();
        assert!(matches!(
            verify_certificate(&a, &missing),
            Err(Rejection::IncidenceMismatch { ref unlisted, .. }) if unlisted.len() == 1
        ));

        let mut out_of_range = good.clone();
        out_of_range.incident.push(99);
        assert_eq!(verify_certificate(&a, &out_of_range), Err(Rejection::IndexOutOfRange(99)));

        let mut zero = good.clone();
        zero.curve = HomPoly::from_i64(2, &[0; 6]).unwrap();
        assert_eq!(verify_certificate(&a, &zero), Err(Rejection::ZeroCurve));

        // a conic through all six points listed honestly is still not ordinary
        let six = aff(&[(0, 0), (1, 1), (2, 4), (3, 9), (-1, 1), (-2, 4)]);
        let parabola = HomPoly::from_i64(2, &[1, 0, 0, 0, -1, 0]).unwrap();
        let all = Certificate { curve: parabola, incident: (0..6).collect(), ..good };
        assert_eq!(
            verify_certificate(&six, &all),
            Err(Rejection::WrongIncidentCount { expected: 5, got: 6 })
        );
    }
}
