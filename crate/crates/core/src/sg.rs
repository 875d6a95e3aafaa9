//! Ordinary lines, the dual ordinary-point search, and anchor points.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::projective::{common_point, incident, lines_spanned, meet, ProjLine, ProjPoint, SpannedLine};

/// The first spanned line (in [`lines_spanned`] order) holding exactly two
/// of the points.
pub fn find_ordinary_line(points: &[ProjPoint]) -> Result<(ProjLine, [usize; 2])> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    let lines = lines_spanned(points)?;
    if lines.len() == 1 {
        return Err(Error::AllCollinear);
    }
    lines
        .into_iter()
        .find(|l| l.indices.len() == 2)
        .map(|l| (l.line, [l.indices[0], l.indices[1]]))
        .ok_or_else(|| Error::Anomaly("non-collinear set without an ordinary line".into()))
}

/// A point off `forbidden` lying on exactly two of `lines`, together with the
/// indices of those two lines. Among all such points the smallest in point
/// order is returned.
///
/// Candidates are the pairwise meets. A point on exactly `k` lines arises
/// from exactly `k(k−1)/2` pairs, so it lies on exactly two lines iff a
/// single pair produces it.
pub fn find_dual_sg_point(
    lines: &[ProjLine],
    forbidden: Option<&ProjLine>,
) -> Result<(ProjPoint, [usize; 2])> {
    if common_point(lines)?.is_some() {
        return Err(Error::AllConcurrent);
    }
    let meets: Vec<(ProjPoint, usize, usize)> = (0..lines.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            ((i + 1)..lines.len()).map(move |j| {
                meet(&lines[i], &lines[j]).map(|p| (p, i, j))
            })
        })
        .collect::<Result<_>>()?;
    let mut pairs: HashMap<&ProjPoint, (u64, usize, usize)> = HashMap::with_capacity(meets.len());
    for (p, i, j) in &meets {
        pairs
            .entry(p)
            .and_modify(|e| e.0 += 1)
            .or_insert((1, *i, *j));
    }
    let (point, i, j) = pairs
        .into_iter()
        .filter(|(p, (count, _, _))| *count == 1 && !forbidden.is_some_and(|f| incident(p, f)))
        .min_by(|a, b| a.0.cmp(b.0))
        .map(|(p, (_, i, j))| (p.clone(), i, j))
        .ok_or(Error::NoOrdinaryPoint)?;
    debug_assert_eq!(lines.iter().filter(|l| incident(&point, l)).count(), 2);
    Ok((point, [i, j]))
}

/// An anchor: a point lying on two spanned lines with two or three points each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub index: usize,
    pub lines: [SpannedLine; 2],
}

/// First point (by index) that lies on two spanned lines each carrying two or
/// three of the points.
pub fn find_anchor_point(points: &[ProjPoint]) -> Result<Anchor> {
    let spanned = lines_spanned(points)?;
    if spanned.len() == 1 {
        return Err(Error::AllCollinear);
    }
    let small: Vec<&SpannedLine> = spanned
        .iter()
        .filter(|l| (2..=3).contains(&l.indices.len()))
        .collect();
    for x0 in 0..points.len() {
        let mut through = small.iter().filter(|l| l.indices.contains(&x0));
        if let (Some(a), Some(b)) = (through.next(), through.next()) {
            return Ok(Anchor { index: x0, lines: [(*a).clone(), (*b).clone()] });
        }
    }
    Err(Error::NotFound)
}
