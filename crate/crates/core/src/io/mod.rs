//! Text formats, seeded generators and SVG output.

pub mod cert;
pub mod generate;
pub mod plot;
pub mod points;

pub use cert::{read_certificate, write_certificate};
pub use generate::{generate, GenKind, GeneratorSpec};
pub use plot::{emit_plot, Window};
pub use points::{parse_points, write_points};
