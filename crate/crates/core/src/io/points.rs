//! Point files: one point per line, `x y` (affine) or `x y z`
//! (homogeneous). Fields are integers or fractions `p/q`; `#` starts a
//! comment.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::projective::{normalize_point, PointSet, ProjPoint, Rational};

fn parse_field(field: &str, line: usize) -> Result<Rational> {
    let bad = |msg: String| Error::Parse { line, msg };
    match field.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad(format!("bad numerator in {field:?}")))?;
            let q: BigInt = q.parse().map_err(|_| bad(format!("bad denominator in {field:?}")))?;
            if q.is_zero() {
                return Err(bad(format!("zero denominator in {field:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => field
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad(format!("not an integer or fraction: {field:?}"))),
    }
}

/// Parses a point file. Errors carry 1-based line numbers; a repeated
/// projective point is reported at its second occurrence.
pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    let mut first_seen: HashMap<ProjPoint, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<Rational> = content
            .split_whitespace()
            .map(|f| parse_field(f, line))
            .collect::<Result<_>>()?;
        let coords: [Rational; 3] = match fields.len() {
            2 => [fields[0].clone(), fields[1].clone(), Rational::one()],
            3 => [fields[0].clone(), fields[1].clone(), fields[2].clone()],
            k => return Err(Error::Parse { line, msg: format!("expected 2 or 3 fields, got {k}") }),
        };
        let p = normalize_point(&coords).map_err(|_| Error::ZeroVectorLine(line))?;
        if first_seen.insert(p.clone(), line).is_some() {
            return Err(Error::DuplicatePointLine(line));
        }
        points.push(p);
    }
    PointSet::new(points)
}

/// One homogeneous `x y z` line per point.
pub fn write_points(points: &[ProjPoint]) -> String {
    points.iter().map(|p| format!("{p}\n")).collect()
}
