//! Ordinary lines, conics and cubics of finite point sets in the real
//! projective plane.
//!
//! All arithmetic is exact: points and lines are primitive integer triples,
//! curves are integer coefficient vectors over the graded-lex monomial order,
//! and linear algebra is fraction-free. The [`finder`] module runs the
//! constructive searches; [`oracle`] is an independent brute-force check.

pub mod curve;
pub mod error;
pub mod finder;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod param;
pub mod projective;
pub mod select;
pub mod sg;

pub use curve::{classify_conic, ConicClass, HomPoly, LinePair, MonomialBasis};
pub use error::{Error, Result};
pub use finder::{find_ordinary, verify_certificate, Certificate, Method};
pub use param::{param_dim, vanishing_subspace, CurveSubspace, ParamPlane, PhiLine};
pub use projective::{join, meet, incident, PointSet, ProjLine, ProjPoint, Rational};
pub use select::{BSelection, CaseTag};
