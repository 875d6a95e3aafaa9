//! SVG rendering of a point set and, optionally, a certificate's curve in
//! the affine chart `z = 1`.
//!
//! The curve is traced by marching squares on a raster of sign values of
//! `f(x, y, 1)`. This is the only place the crate uses floating point.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::curve::HomPoly;
use crate::error::{Error, Result};
use crate::finder::Certificate;
use crate::projective::ProjPoint;

const SIZE: f64 = 600.0;
const CELLS: usize = 240;

/// Visible rectangle `[x0, x1] × [y0, y1]` of the affine chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let finite = [x0, y0, x1, y1].iter().all(|v| v.is_finite());
        if !finite || x0 >= x1 || y0 >= y1 {
            return Err(Error::Format(format!("bad window {x0},{y0},{x1},{y1}")));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    fn to_px(self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) / (self.x1 - self.x0) * SIZE, (self.y1 - y) / (self.y1 - self.y0) * SIZE)
    }

    fn contains(self, x: f64, y: f64) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `X0,Y0,X1,Y1`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Format(format!("bad window {s:?}")))?;
        match v[..] {
            [x0, y0, x1, y1] => Window::new(x0, y0, x1, y1),
            _ => Err(Error::Format(format!("window needs four values, got {s:?}"))),
        }
    }
}

fn affine(p: &ProjPoint) -> Option<(f64, f64)> {
    let [x, y, z] = p.coords();
    let z = z.to_f64().filter(|z| *z != 0.0)?;
    Some((x.to_f64()? / z, y.to_f64()? / z))
}

/// `f(x, y, 1)` with float coefficients.
struct Dehomogenized {
    terms: Vec<(f64, i32, i32)>,
}

impl Dehomogenized {
    fn new(f: &HomPoly) -> Self {
        let d = f.degree() as i32;
        let mut terms = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=(d - a)).rev() {
                terms.push((a, b));
            }
        }
        let terms = terms
            .into_iter()
            .zip(f.coeffs())
            .filter_map(|((a, b), c)| c.to_f64().filter(|c| *c != 0.0).map(|c| (c, a, b)))
            .collect();
        Self { terms }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|&(c, a, b)| c * x.powi(a) * y.powi(b)).sum()
    }
}

/// Line segments approximating `f = 0` inside the window.
fn contour(f: &HomPoly, w: Window) -> Vec<[(f64, f64); 2]> {
    let g = Dehomogenized::new(f);
    let dx = (w.x1 - w.x0) / CELLS as f64;
    let dy = (w.y1 - w.y0) / CELLS as f64;
    let at = |i: usize, j: usize| (w.x0 + i as f64 * dx, w.y0 + j as f64 * dy);
    let values: Vec<Vec<f64>> = (0..=CELLS)
        .map(|i| (0..=CELLS).map(|j| { let (x, y) = at(i, j); g.eval(x, y) }).collect())
        .collect();
    let mut segments = Vec::new();
    for i in 0..CELLS {
        for j in 0..CELLS {
            // corners counter-clockwise from bottom-left
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v = corners.map(|(a, b)| values[a][b]);
            let crossing = |k: usize| {
                let (a, b) = (k, (k + 1) % 4);
                if (v[a] > 0.0) == (v[b] > 0.0) {
                    return None;
                }
                let t = v[a] / (v[a] - v[b]);
                let (pa, pb) = (at(corners[a].0, corners[a].1), at(corners[b].0, corners[b].1));
                Some((pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1)))
            };
            let hits: Vec<(f64, f64)> = (0..4).filter_map(crossing).collect();
            match hits[..] {
                [p, q] => segments.push([p, q]),
                [p, q, r, s] => {
                    // saddle: pair edges according to the sign at the center
                    let (cx, cy) = (at(i, j).0 + dx / 2.0, at(i, j).1 + dy / 2.0);
                    if (g.eval(cx, cy) > 0.0) == (v[0] > 0.0) {
                        segments.push([p, s]);
                        segments.push([q, r]);
                    } else {
                        segments.push([p, q]);
                        segments.push([r, s]);
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// SVG text for `points` and, if given, the certificate's curve with its
/// incident points highlighted. Points at infinity or outside the window
/// are not drawn.
pub fn emit_plot(points: &[ProjPoint], cert: Option<&Certificate>, window: Window) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    if let Some(c) = cert {
        let mut d = String::new();
        for [(ax, ay), (bx, by)] in contour(&c.curve, window) {
            let (ax, ay) = window.to_px(ax, ay);
            let (bx, by) = window.to_px(bx, by);
            let _ = write!(d, "M{ax:.2} {ay:.2}L{bx:.2} {by:.2}");
        }
        let _ = writeln!(s, r#"<path class="curve" d="{d}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#);
    }
    for (i, p) in points.iter().enumerate() {
        let Some((x, y)) = affine(p).filter(|&(x, y)| window.contains(x, y)) else { continue };
        let (px, py) = window.to_px(x, y);
        if cert.is_some_and(|c| c.incident.binary_search(&i).is_ok()) {
            let _ = writeln!(s, r#"<circle class="incident" cx="{px:.2}" cy="{py:.2}" r="4.5" fill="crimson"/>"#);
        } else {
            let _ = writeln!(s, r#"<circle class="point" cx="{px:.2}" cy="{py:.2}" r="3" fill="black"/>"#);
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finder::find_ordinary_conic;

    fn aff(pts: &[(i64, i64)]) -> Vec<ProjPoint> {
        pts.iter().map(|&(x, y)| ProjPoint::affine(x, y)).collect()
    }

    #[test]
    fn window_parsing() {
        assert_eq!("-1,-2,3,4".parse::<Window>().unwrap(), Window { x0: -1.0, y0: -2.0, x1: 3.0, y1: 4.0 });
        assert!("1,1,0,2".parse::<Window>().is_err());
        assert!("1,2,3".parse::<Window>().is_err());
        assert!("a,b,c,d".parse::<Window>().is_err());
    }

    #[test]
    fn highlights_match_incidences() {
        let a = aff(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        let c = find_ordinary_conic(&a).unwrap();
        let w = Window::new(-3.0, -3.0, 4.0, 4.0).unwrap();
        let svg = emit_plot(&a, Some(&c), w);
        assert_eq!(svg.matches(r#"class="incident""#).count(), 5);
        assert_eq!(svg.matches(r#"class="point""#).count(), 1);
        assert!(svg.contains(r#"class="curve" d="M"#));
        assert_eq!(svg, emit_plot(&a, Some(&c), w));
    }

    #[test]
    fn points_only_without_certificate() {
        let a = aff(&[(0, 0), (1, 0), (50, 50)]);
        let svg = emit_plot(&a, None, Window::new(-1.0, -1.0, 2.0, 2.0).unwrap());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn contour_of_a_line() {
        // x - y = 0 crosses the window along the diagonal
        let f = HomPoly::from_i64(1, &[1, -1, 0]).unwrap();
        let segs = contour(&f, Window::new(-1.0, -1.0, 1.0, 1.0).unwrap());
        assert!(!segs.is_empty());
        assert!(segs.iter().flatten().all(|(x, y)| (x - y).abs() < 1e-9));
    }
}
