use serde::Serialize;

use super::Walk;
use crate::error::{Error, Result};
use crate::graph::{GraphMap, Vertex};

/// First reason a family of walks fails to be an `r`-homotopy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HomotopyViolation {
    WrongFamilySize { expected: usize, got: usize },
    NotAWalk { vertex: String, reason: String },
    WrongLength { vertex: String, expected: usize, got: usize },
    NotDirected { vertex: String },
    WrongEndpoints { vertex: String },
}

/// Checks that `family[x]` is a directed walk in the target graph from
/// `phi0(x)` to `phi1(x)` for every source vertex `x`, with exactly `r`
/// steps when `r` is finite (`None` stands for `r = ∞`).
pub fn validate_r_homotopy(
    phi0: &GraphMap,
    phi1: &GraphMap,
    r: Option<usize>,
    family: &[Walk],
) -> Result<std::result::Result<(), HomotopyViolation>> {
    if phi0.source() != phi1.source() || phi0.target() != phi1.target() {
        return Err(Error::InvalidMap("homotopic maps need a common source and target".into()));
    }
    if r == Some(0) {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let (x, y) = (phi0.source(), phi0.target());
    if family.len() != x.num_vertices() {
        return Ok(Err(HomotopyViolation::WrongFamilySize { expected: x.num_vertices(), got: family.len() }));
    }
    for (v, h) in family.iter().enumerate() {
        let vertex = x.name(v as Vertex).to_string();
        if let Err(e) = h.validate(y) {
            return Ok(Err(HomotopyViolation::NotAWalk { vertex, reason: e.to_string() }));
        }
        if let Some(r) = r {
            if h.len() != r {
                return Ok(Err(HomotopyViolation::WrongLength { vertex, expected: r, got: h.len() }));
            }
        }
        if !h.is_directed() {
            return Ok(Err(HomotopyViolation::NotDirected { vertex }));
        }
        if h.start() != phi0.apply(v) || h.end() != phi1.apply(v) {
            return Ok(Err(HomotopyViolation::WrongEndpoints { vertex }));
        }
    }
    Ok(Ok(()))
}
