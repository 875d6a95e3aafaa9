//! Deterministic point-set generators, one per structural case of the cubic
//! search.
//!
//! Randomness comes from xoshiro256** seeded through `seed_from_u64`, so a
//! spec always yields the same points in the same order. Each kind's
//! promise is re-checked before the set is returned.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use num_traits::Zero;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::curve::{classify_conic, ConicClass, HomPoly};
use crate::error::{Error, Result};
use crate::param::param_dim;
use crate::projective::{incident, join, lines_spanned, PointSet, ProjLine, ProjPoint};
use crate::select::max_collinear;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Distinct uniform integer points.
    Random,
    /// `on_line` points on one line, the rest off it.
    HeavyLine,
    /// `on_conic` points on `x² + y² = z²` (emitted first), the rest off it.
    HeavyConic,
    /// Points on the nodal cubic `y²z = x²(x + z)`, plus `off` points off it.
    OnCubic,
    /// The first `n` points of the smallest square grid holding them.
    Grid,
    /// A heavy line and at most nine points off it, of which `on_second`
    /// lie on a second line.
    Case3b,
    /// A heavy line and at most nine points off it, no three collinear.
    Case3c,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Random => "random",
            GenKind::HeavyLine => "heavy-line",
            GenKind::HeavyConic => "heavy-conic",
            GenKind::OnCubic => "on-cubic",
            GenKind::Grid => "grid",
            GenKind::Case3b => "case3b",
            GenKind::Case3c => "case3c",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            GenKind::Random,
            GenKind::HeavyLine,
            GenKind::HeavyConic,
            GenKind::OnCubic,
            GenKind::Grid,
            GenKind::Case3b,
            GenKind::Case3c,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::SpecInvalid(format!("unknown kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    /// Total number of points.
    pub n: usize,
    pub seed: u64,
    /// Bound on the absolute value of every coordinate.
    pub bound: i64,
    /// Points on the heavy line; defaults to `n − 20` (heavy-line) or
    /// `n − 7` (case3b, case3c).
    pub on_line: Option<usize>,
    /// Points on the conic; defaults to `n − 10`.
    pub on_conic: Option<usize>,
    /// Points on the second line for case3b; defaults to 3.
    pub on_second: Option<usize>,
    /// Points off the cubic for on-cubic; defaults to 0.
    pub off: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64, bound: i64) -> Self {
        Self { kind, n, seed, bound, on_line: None, on_conic: None, on_second: None, off: None }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::SpecInvalid(msg.into())
}

struct Builder {
    rng: Xoshiro256StarStar,
    bound: i64,
    points: Vec<ProjPoint>,
    seen: HashSet<ProjPoint>,
    attempts_left: usize,
}

impl Builder {
    fn new(spec: &GeneratorSpec) -> Self {
        Self {
            rng: Xoshiro256StarStar::seed_from_u64(spec.seed),
            bound: spec.bound,
            points: Vec::with_capacity(spec.n),
            seen: HashSet::with_capacity(spec.n),
            attempts_left: 1000 * spec.n + 10_000,
        }
    }

    fn coord(&mut self, m: i64) -> i64 {
        self.rng.random_range(-m..=m)
    }

    fn random_affine(&mut self) -> ProjPoint {
        let (x, y) = (self.coord(self.bound), self.coord(self.bound));
        ProjPoint::affine(x, y)
    }

    /// Adds `count` points drawn by `draw` and accepted by `keep`.
    fn fill(
        &mut self,
        count: usize,
        what: &str,
        mut draw: impl FnMut(&mut Self) -> Option<ProjPoint>,
        keep: impl Fn(&[ProjPoint], &ProjPoint) -> bool,
    ) -> Result<()> {
        let target = self.points.len() + count;
        while self.points.len() < target {
            if self.attempts_left == 0 {
                return Err(invalid(format!("cannot place {count} {what} within bound {}", self.bound)));
            }
            self.attempts_left -= 1;
            let Some(p) = draw(self) else { continue };
            if !self.seen.contains(&p) && keep(&self.points, &p) {
                self.seen.insert(p.clone());
                self.points.push(p);
            }
        }
        Ok(())
    }

    /// A random line through a point near the origin with a short direction,
    /// and a sampler for its points inside the bound.
    fn random_line(&mut self) -> Result<(ProjLine, impl Fn(&mut Self) -> Option<ProjPoint>)> {
        let (a, b) = loop {
            let (a, b) = (self.rng.random_range(1..=3i64), self.rng.random_range(-3..=3i64));
            if num_integer::gcd(a, b) == 1 {
                break (a, b);
            }
        };
        let quarter = self.bound / 4;
        let (x0, y0) = (self.coord(quarter), self.coord(quarter));
        let reach = self.bound / 4;
        if reach < 1 {
            return Err(invalid("bound too small for a line"));
        }
        let line = join(&ProjPoint::affine(x0, y0), &ProjPoint::affine(x0 + a, y0 + b))?;
        let sample = move |s: &mut Self| {
            let t = s.coord(reach);
            Some(ProjPoint::affine(x0 + t * a, y0 + t * b))
        };
        Ok((line, sample))
    }
}

/// Points of the set lying on `f`.
fn count_on(points: &[ProjPoint], f: &HomPoly) -> usize {
    points.iter().filter(|p| f.eval(p).is_zero()).count()
}

fn no_three_collinear_with(points: &[ProjPoint], p: &ProjPoint) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[i + 1..].iter().all(|b| join(a, b).map_or(true, |l| !incident(p, &l)))
    })
}

/// `x² + y² − z²`.
pub fn circle() -> HomPoly {
    HomPoly::from_i64(2, &[1, 0, 0, 1, 0, -1]).expect("valid conic")
}

/// `y²z − x³ − x²z`.
pub fn nodal_cubic() -> HomPoly {
    // x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³
    HomPoly::from_i64(3, &[-1, 0, -1, 0, 0, 0, 0, 1, 0, 0]).expect("valid cubic")
}

fn count_or(value: Option<usize>, default: impl FnOnce() -> usize, name: &str, n: usize) -> Result<usize> {
    let v = value.unwrap_or_else(default);
    if v > n {
        return Err(invalid(format!("{name} = {v} exceeds n = {n}")));
    }
    Ok(v)
}

pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    let n = spec.n;
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if spec.bound < 1 {
        return Err(invalid("bound must be positive"));
    }
    let mut b = Builder::new(spec);
    match spec.kind {
        GenKind::Random => {
            b.fill(n, "points", |s| Some(s.random_affine()), |_, _| true)?;
        }
        GenKind::HeavyLine => {
            let k = count_or(spec.on_line, || n.saturating_sub(20), "on-line", n)?;
            if k < 3 {
                return Err(invalid("heavy-line needs at least three points on the line"));
            }
            let (line, sample) = b.random_line()?;
            b.fill(k, "points on the line", sample, |_, _| true)?;
            b.fill(n - k, "points off the line", |s| Some(s.random_affine()), |_, p| !incident(p, &line))?;
            if max_collinear(&b.points)?.0 < k {
                return Err(Error::Anomaly("heavy-line generator lost its line".into()));
            }
        }
        GenKind::HeavyConic => {
            let k = count_or(spec.on_conic, || n.saturating_sub(10), "on-conic", n)?;
            let c = circle();
            let m = (spec.bound / 2).sqrt();
            b.fill(
                k,
                "points on the conic",
                |s| {
                    let (p, q) = (s.coord(m), s.coord(m));
                    ProjPoint::from_i64(q * q - p * p, 2 * p * q, q * q + p * p).ok()
                },
                |_, _| true,
            )?;
            b.fill(n - k, "points off the conic", |s| Some(s.random_affine()), |_, p| !c.eval(p).is_zero())?;
            if count_on(&b.points, &c) != k || classify_conic(&c)? != ConicClass::Irreducible {
                return Err(Error::Anomaly("heavy-conic generator broke its promise".into()));
            }
        }
        GenKind::OnCubic => {
            let off = count_or(spec.off, || 0, "off", n)?;
            let f = nodal_cubic();
            let m = (spec.bound / 2).cbrt();
            b.fill(
                n - off,
                "points on the cubic",
                |s| {
                    let (p, q) = (s.coord(m), s.coord(m));
                    if p.abs() == q.abs() {
                        return None;
                    }
                    let w = p * p - q * q;
                    ProjPoint::from_i64(q * w, p * w, q * q * q).ok()
                },
                |_, _| true,
            )?;
            b.fill(off, "points off the cubic", |s| Some(s.random_affine()), |_, p| !f.eval(p).is_zero())?;
            if count_on(&b.points, &f) != n - off {
                return Err(Error::Anomaly("on-cubic generator broke its promise".into()));
            }
        }
        GenKind::Grid => {
            let side = (n - 1).sqrt() + 1;
            if side as i64 - 1 > spec.bound {
                return Err(invalid(format!("a {side}x{side} grid exceeds bound {}", spec.bound)));
            }
            let (side, n) = (side as i64, n as i64);
            b.points = (0..n).map(|i| ProjPoint::affine(i / side, i % side)).collect();
        }
        GenKind::Case3b | GenKind::Case3c => {
            let k = count_or(spec.on_line, || n.saturating_sub(7), "on-line", n)?;
            let off = n - k;
            if !(6..=9).contains(&off) {
                return Err(invalid(format!("{} needs 6 to 9 points off the line, got {off}", spec.kind)));
            }
            let (line, sample) = b.random_line()?;
            b.fill(k, "points on the line", sample, |_, _| true)?;
            let off_line = |p: &ProjPoint| !incident(p, &line);
            let generic_off = |pts: &[ProjPoint], p: &ProjPoint| off_line(p) && no_three_collinear_with(&pts[k..], p);
            if spec.kind == GenKind::Case3b {
                let s = count_or(spec.on_second, || 3, "on-second", off)?;
                if s < 3 || off - s < 3 {
                    return Err(invalid("case3b needs 3 or more points on the second line and 3 off both"));
                }
                let (second, sample2) = b.random_line()?;
                if second == line {
                    return Err(invalid("second line coincides with the heavy line"));
                }
                b.fill(s, "points on the second line", sample2, |_, p| off_line(p))?;
                b.fill(off - s, "points off both lines", |s| Some(s.random_affine()), |pts, p| {
                    !incident(p, &second) && generic_off(pts, p)
                })?;
            } else {
                b.fill(off, "points off the line", |s| Some(s.random_affine()), generic_off)?;
            }
            let rest = &b.points[k..];
            let widest = lines_spanned(rest)?.iter().map(|l| l.indices.len()).max().unwrap_or(0);
            let promised = if spec.kind == GenKind::Case3b { widest >= 3 } else { widest == 2 };
            if !promised || param_dim(rest, 2)? >= 0 || max_collinear(&b.points)?.0 < k {
                return Err(Error::Anomaly(format!("{} generator broke its promise", spec.kind)));
            }
        }
    }
    PointSet::new(b.points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic() {
        let spec = GeneratorSpec::new(GenKind::Random, 12, 7, 50);
        let a = generate(&spec).unwrap();
        assert_eq!(a.len(), 12);
        assert_eq!(a, generate(&spec).unwrap());
        assert_ne!(a, generate(&GeneratorSpec { seed: 8, ..spec }).unwrap());
        assert!(a.iter().all(|p| p.coords().iter().all(|c| c.magnitude() <= &50u32.into())));
    }

    #[test]
    fn heavy_line() {
        let spec = GeneratorSpec { on_line: Some(230), ..GeneratorSpec::new(GenKind::HeavyLine, 250, 1, 1000) };
        let a = generate(&spec).unwrap();
        assert_eq!(a.len(), 250);
        assert!(max_collinear(a.points()).unwrap().0 >= 230);
    }

    #[test]
    fn heavy_conic() {
        let spec = GeneratorSpec { on_conic: Some(240), ..GeneratorSpec::new(GenKind::HeavyConic, 250, 1, 1000) };
        let a = generate(&spec).unwrap();
        assert_eq!(count_on(a.points(), &circle()), 240);
        assert!(a.points()[..240].iter().all(|p| circle().eval(p).is_zero()));
        assert_eq!(classify_conic(&circle()).unwrap(), ConicClass::Irreducible);
    }

    #[test]
    fn on_cubic_and_grid() {
        let a = generate(&GeneratorSpec { off: Some(2), ..GeneratorSpec::new(GenKind::OnCubic, 12, 3, 1000) }).unwrap();
        assert_eq!(count_on(a.points(), &nodal_cubic()), 10);
        let g = generate(&GeneratorSpec::new(GenKind::Grid, 7, 0, 10)).unwrap();
        let expected: Vec<_> = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)]
            .iter()
            .map(|&(x, y)| ProjPoint::affine(x, y))
            .collect();
        assert_eq!(g.points(), &expected[..]);
    }

    #[test]
    fn case3_kinds() {
        let b = generate(&GeneratorSpec::new(GenKind::Case3b, 250, 5, 1000)).unwrap();
        assert!(max_collinear(b.points()).unwrap().0 >= 243);
        let c = generate(&GeneratorSpec::new(GenKind::Case3c, 250, 5, 1000)).unwrap();
        assert!(max_collinear(c.points()).unwrap().0 >= 243);
    }

    #[test]
    fn invalid_specs() {
        let too_many = GeneratorSpec { on_line: Some(300), ..GeneratorSpec::new(GenKind::HeavyLine, 250, 1, 1000) };
        assert!(matches!(generate(&too_many), Err(Error::SpecInvalid(_))));
        let crowded = GeneratorSpec::new(GenKind::Random, 100, 1, 2);
        assert!(matches!(generate(&crowded), Err(Error::SpecInvalid(_))));
        assert!(matches!("blob".parse::<GenKind>(), Err(Error::SpecInvalid(_))));
        let off = GeneratorSpec { on_line: Some(240), ..GeneratorSpec::new(GenKind::Case3c, 250, 1, 1000) };
        assert!(matches!(generate(&off), Err(Error::SpecInvalid(_))));
    }
}
