//! Walks, `r`-fundamental group presentations, the Hurewicz chain map, a
//! bounded `C_r`-homotopy prover and `r`-homotopy validation.

mod homotopy;
mod hurewicz;
mod presentation;
mod prover;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Vertex};
use crate::linalg::Int;
use crate::nerve::FilteredChainComplex;

pub use homotopy::{validate_r_homotopy, HomotopyViolation};
pub use hurewicz::{hurewicz_check, hurewicz_check_in, spanning_tree, tree_path, HurewiczReport};
pub use presentation::{
    abelianization, directed_walks, groupoid_relations, pi1_infty_abelianization, pi1_presentation, GroupPresentation,
    Pi1InftyReport, RelatorPair,
};
pub use prover::{
    cr_homotopy_prover, replay, Certificate, GammaMap, GammaVertex, ProverConfig, ProverOutcome, RawMove, Refutation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// Along an edge `(w_i, w_{i+1})`.
    F,
    /// Against an edge `(w_{i+1}, w_i)`.
    B,
    /// Collapsed step, `w_i = w_{i+1}`.
    S,
}

/// A path `I_n -> X` as its vertex sequence and per-step orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub vertices: Vec<Vertex>,
    pub steps: Vec<Step>,
}

/// Signed edge traversal: `edge` in graph edge order, `forward` along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub forward: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { edge: self.edge, forward: !self.forward }
    }

    pub fn source(self, g: &DirectedGraph) -> Vertex {
        let (a, b) = g.edges()[self.edge];
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn target(self, g: &DirectedGraph) -> Vertex {
        let (a, b) = g.edges()[self.edge];
        if self.forward {
            b
        } else {
            a
        }
    }

    /// `±(edge + 1)`, the encoding used in serialized presentations.
    pub fn signed(self) -> i64 {
        let k = self.edge as i64 + 1;
        if self.forward {
            k
        } else {
            -k
        }
    }
}

/// Cancels adjacent inverse letters until none remain.
pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Walk {
    pub fn constant(v: Vertex) -> Walk {
        Walk { vertices: vec![v], steps: Vec::new() }
    }

    pub fn new(g: &DirectedGraph, vertices: Vec<Vertex>, steps: Vec<Step>) -> Result<Walk> {
        let w = Walk { vertices, steps };
        w.validate(g)?;
        Ok(w)
    }

    pub fn from_names<S: AsRef<str>>(g: &DirectedGraph, names: &[S], steps: &[Step]) -> Result<Walk> {
        let vs = names.iter().map(|n| g.require_vertex(n.as_ref())).collect::<Result<Vec<_>>>()?;
        Walk::new(g, vs, steps.to_vec())
    }

    /// Walk through the given vertices, each step forward along an edge or
    /// a stay when consecutive vertices coincide.
    pub fn directed<S: AsRef<str>>(g: &DirectedGraph, names: &[S]) -> Result<Walk> {
        let vs = names.iter().map(|n| g.require_vertex(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let steps = vs.windows(2).map(|w| if w[0] == w[1] { Step::S } else { Step::F }).collect();
        Walk::new(g, vs, steps)
    }

    pub fn validate(&self, g: &DirectedGraph) -> Result<()> {
        if self.vertices.len() != self.steps.len() + 1 {
            return Err(Error::InvalidWalk("needs exactly one more vertex than steps".into()));
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= g.num_vertices()) {
            return Err(Error::InvalidWalk(format!("vertex index {v} out of range")));
        }
        for (i, s) in self.steps.iter().enumerate() {
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            let ok = match s {
                Step::F => g.has_edge(a, b),
                Step::B => g.has_edge(b, a),
                Step::S => a == b,
            };
            if !ok {
                return Err(Error::InvalidWalk(format!(
                    "step {i} ({s:?}) from `{}` to `{}` is not in the graph",
                    g.name(a),
                    g.name(b)
                )));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().expect("walks are nonempty")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// Every step forward or a stay.
    pub fn is_directed(&self) -> bool {
        self.steps.iter().all(|s| *s != Step::B)
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch("concatenated walks must meet".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk { vertices, steps })
    }

    /// The walk traversed backwards.
    pub fn reversed(&self) -> Walk {
        let vertices = self.vertices.iter().rev().copied().collect();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::F => Step::B,
                Step::B => Step::F,
                Step::S => Step::S,
            })
            .collect();
        Walk { vertices, steps }
    }

    /// Edge letters with stays dropped (not freely reduced).
    pub fn letters(&self, g: &DirectedGraph) -> Vec<Letter> {
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                let (a, b) = (self.vertices[i], self.vertices[i + 1]);
                match s {
                    Step::F => Some(Letter { edge: g.edge_id(a, b).expect("validated"), forward: true }),
                    Step::B => Some(Letter { edge: g.edge_id(b, a).expect("validated"), forward: false }),
                    Step::S => None,
                }
            })
            .collect()
    }

    pub fn from_letters(g: &DirectedGraph, start: Vertex, letters: &[Letter]) -> Walk {
        let mut vertices = vec![start];
        let mut steps = Vec::with_capacity(letters.len());
        for l in letters {
            debug_assert_eq!(l.source(g), *vertices.last().expect("nonempty"));
            vertices.push(l.target(g));
            steps.push(if l.forward { Step::F } else { Step::B });
        }
        Walk { vertices, steps }
    }

    pub fn to_json(&self, g: &DirectedGraph) -> serde_json::Value {
        let names: Vec<&str> = self.vertices.iter().map(|&v| g.name(v)).collect();
        serde_json::json!({ "vertices": names, "steps": self.steps })
    }

    pub fn from_json(g: &DirectedGraph, value: &serde_json::Value) -> Result<Walk> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<String>,
            steps: Vec<Step>,
        }
        let raw: Raw = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse { line: 0, message: format!("walk: {e}") })?;
        Walk::from_names(g, &raw.vertices, &raw.steps)
    }
}

/// `h(f)`: `+e` for each forward step along `e`, `-e` for each backward
/// step, nothing for stays. Coordinates follow the graph's edge order.
pub fn hurewicz_chain(g: &DirectedGraph, f: &Walk) -> Vec<Int> {
    let mut out = vec![Int::ZERO; g.num_edges()];
    for l in f.letters(g) {
        let d = if l.forward { Int::ONE } else { Int::from(-1) };
        out[l.edge] += &d;
    }
    out
}

/// `h(f)` in the coordinates of `F_1 C_1` of a built complex.
pub fn hurewicz_chain_in(g: &DirectedGraph, c: &FilteredChainComplex, f: &Walk) -> Vec<Int> {
    let k = c.count_upto(1, 1);
    let mut out = vec![Int::ZERO; k];
    for l in f.letters(g) {
        let (a, b) = g.edges()[l.edge];
        let i = c.index_of(1, &[a, b]).expect("edges have weight 1");
        let d = if l.forward { Int::ONE } else { Int::from(-1) };
        out[i] += &d;
    }
    out
}
