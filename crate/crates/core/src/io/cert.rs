//! Certificate files: eight `key value` lines in a fixed order.
//!
//! ```text
//! degree 2
//! monomial-order graded-lex
//! coeffs 0 0 1 -1 0 0
//! incident 0 1 2 3 4
//! base 0 2 5
//! case Conic-Main
//! method pipeline
//! dual-witness 1 -2 0
//! ```
//!
//! `base` and `dual-witness` are `-` when absent. Writing is canonical, so
//! reading and rewriting a written certificate reproduces it byte for byte.

use num_bigint::BigInt;

use crate::curve::{monomial_count, HomPoly, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::finder::{Certificate, Method};
use crate::select::CaseTag;

const KEYS: [&str; 8] = ["degree", "monomial-order", "coeffs", "incident", "base", "case", "method", "dual-witness"];
const MONOMIAL_ORDER: &str = "graded-lex";

fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

pub fn write_certificate(cert: &Certificate) -> String {
    let values = [
        cert.degree().to_string(),
        MONOMIAL_ORDER.to_string(),
        join(cert.curve.coeffs()),
        join(&cert.incident),
        join(&cert.base),
        cert.case.to_string(),
        cert.method.to_string(),
        cert.dual_witness.as_ref().map_or_else(|| "-".to_string(), |w| join(w)),
    ];
    KEYS.iter().zip(values).map(|(k, v)| format!("{k} {v}\n")).collect()
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    if value == "-" {
        return Ok(Vec::new());
    }
    value
        .split(' ')
        .map(|f| f.parse().map_err(|_| format_err(format!("{key}: bad entry {f:?}"))))
        .collect()
}

pub fn read_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines();
    let mut values = Vec::with_capacity(KEYS.len());
    for key in KEYS {
        let line = lines.next().ok_or_else(|| format_err(format!("missing key {key:?}")))?;
        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
        if k != key {
            return Err(format_err(format!("expected key {key:?}, found {k:?}")));
        }
        values.push(v);
    }
    if let Some(extra) = lines.find(|l| !l.is_empty()) {
        return Err(format_err(format!("unexpected line {extra:?}")));
    }
    let degree: u32 = values[0].parse().map_err(|_| format_err(format!("bad degree {:?}", values[0])))?;
    if !(1..=MAX_DEGREE).contains(&degree) {
        return Err(format_err(format!("unsupported degree {degree}")));
    }
    if values[1] != MONOMIAL_ORDER {
        return Err(format_err(format!("unsupported monomial order {:?}", values[1])));
    }
    let coeffs: Vec<BigInt> = parse_list("coeffs", values[2])?;
    if coeffs.len() != monomial_count(degree) {
        return Err(format_err(format!(
            "degree {degree} needs {} coefficients, got {}",
            monomial_count(degree),
            coeffs.len()
        )));
    }
    let curve = HomPoly::new(degree, coeffs)?;
    let incident = parse_list("incident", values[3])?;
    let base = parse_list("base", values[4])?;
    let case: CaseTag = values[5].parse()?;
    let method = match values[6] {
        "pipeline" => Method::Pipeline,
        "oracle" => Method::Oracle,
        m => return Err(format_err(format!("unknown method {m:?}"))),
    };
    let dual_witness = match parse_list::<BigInt>("dual-witness", values[7])? {
        w if w.is_empty() => None,
        w => Some(<[BigInt; 3]>::try_from(w).map_err(|_| format_err("dual-witness needs three entries"))?),
    };
    Ok(Certificate { curve, incident, base, case, method, dual_witness })
}
