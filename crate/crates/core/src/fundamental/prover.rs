//! Breadth-first search for `C_r`-homotopies between walks.
//!
//! The search runs on freely reduced stay-free words with a fixed start
//! vertex. A move inserts the loop word of some `h ∘ ρ_x` at a position and
//! reduces again; deleting a loop is inserting its inverse. A proof is then
//! expanded into raw moves on walks (stay insertions and deletions, insertions
//! and deletions of `h ∘ ρ_x`) that [`replay`] checks one at a time.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::presentation::directed_walks;
use super::{free_reduce, hurewicz_chain_in, Letter, Step, Walk};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Vertex};
use crate::linalg::Int;
use crate::mpss::e10_via_cycles_in;
use crate::nerve::FilteredChainComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    /// Maximum number of words expanded.
    pub budget: usize,
    /// Loop words tried at each position, shortest first.
    pub max_candidates_per_position: usize,
    /// Longest intermediate word; `None` means the longer endpoint plus `2r`.
    pub max_word_len: Option<usize>,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig { budget: 20_000, max_candidates_per_position: 256, max_word_len: None }
    }
}

/// A map `Γ_r -> X` by the images of `u_0..u_r` and `v_0..v_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GammaMap {
    pub upper: Vec<Vertex>,
    pub lower: Vec<Vertex>,
}

/// A vertex of `Γ_r`: `U(0)` and `U(r)` are the shared endpoints, `V(k)`
/// for `0 < k < r` the interior of the lower path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GammaVertex {
    U(usize),
    V(usize),
}

/// Elementary step of a `C_r`-homotopy on a walk. Positions `at` index
/// vertices for insertions and steps for deletions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RawMove {
    InsertStay { at: usize },
    DeleteStay { at: usize },
    Insert { at: usize, map: GammaMap, vertex: GammaVertex },
    Delete { at: usize, map: GammaMap, vertex: GammaVertex },
}

impl RawMove {
    fn inverse(&self) -> RawMove {
        match self.clone() {
            RawMove::InsertStay { at } => RawMove::DeleteStay { at },
            RawMove::DeleteStay { at } => RawMove::InsertStay { at },
            RawMove::Insert { at, map, vertex } => RawMove::Delete { at, map, vertex },
            RawMove::Delete { at, map, vertex } => RawMove::Insert { at, map, vertex },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub r: usize,
    #[serde(skip)]
    pub from: Walk,
    #[serde(skip)]
    pub to: Walk,
    pub moves: Vec<RawMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Refutation {
    /// Summand coordinates of `h(f) - h(g)` in `E^r_{1,0}`, not all zero.
    HurewiczClass(Vec<Int>),
    /// At `r = 1` the groupoid is free on the edges and the reduced words differ.
    FreeGroupoid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProverOutcome {
    Proven(Certificate),
    Disproven(Refutation),
    Unknown { explored: usize },
}

fn check_gamma_map(g: &DirectedGraph, r: usize, m: &GammaMap) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidWalk(format!("not a map from Γ_{r}: {why}")));
    if m.upper.len() != r + 1 || m.lower.len() != r + 1 {
        return bad("wrong number of vertices");
    }
    if m.upper.iter().chain(&m.lower).any(|&v| v >= g.num_vertices()) {
        return bad("vertex out of range");
    }
    if m.upper[0] != m.lower[0] || m.upper[r] != m.lower[r] {
        return bad("the two paths must share their endpoints");
    }
    if r == 1 && m.upper != m.lower {
        return bad("Γ_1 is a single edge");
    }
    for side in [&m.upper, &m.lower] {
        if side.windows(2).any(|w| w[0] != w[1] && !g.has_edge(w[0], w[1])) {
            return bad("an edge maps to a non-edge");
        }
    }
    Ok(())
}

type RhoPath = (Vec<(bool, usize)>, Vec<bool>);

/// Vertices of `ρ_x` in `Γ_r` as `(on upper path, index)`, with each step's
/// orientation (`true` when it runs along the edge).
fn rho_path(r: usize, x: GammaVertex) -> Result<RhoPath> {
    let mut pts = Vec::with_capacity(2 * r + 1);
    let mut fwd = Vec::with_capacity(2 * r);
    match x {
        GammaVertex::U(k) if k <= r => {
            pts.push((true, k));
            for i in k + 1..=r {
                pts.push((true, i));
                fwd.push(true);
            }
            for i in (0..r).rev() {
                pts.push((false, i));
                fwd.push(false);
            }
            for i in 1..=k {
                pts.push((true, i));
                fwd.push(true);
            }
        }
        GammaVertex::V(k) if 0 < k && k < r => {
            pts.push((false, k));
            for i in (0..k).rev() {
                pts.push((false, i));
                fwd.push(false);
            }
            for i in 1..=r {
                pts.push((true, i));
                fwd.push(true);
            }
            for i in (k..r).rev() {
                pts.push((false, i));
                fwd.push(false);
            }
        }
        _ => return Err(Error::InvalidWalk(format!("{x:?} is not a vertex of Γ_{r}"))),
    }
    Ok((pts, fwd))
}

/// The walk `h ∘ ρ_x` of length `2r`.
pub fn rho_image(g: &DirectedGraph, r: usize, map: &GammaMap, x: GammaVertex) -> Result<Walk> {
    if r == 0 {
        return Err(Error::InvalidArgument("Γ_0 moves are stay insertions".into()));
    }
    check_gamma_map(g, r, map)?;
    let (pts, fwd) = rho_path(r, x)?;
    let vertices: Vec<Vertex> = pts.iter().map(|&(up, i)| if up { map.upper[i] } else { map.lower[i] }).collect();
    let steps = fwd
        .iter()
        .enumerate()
        .map(|(i, &f)| match (vertices[i] == vertices[i + 1], f) {
            (true, _) => Step::S,
            (false, true) => Step::F,
            (false, false) => Step::B,
        })
        .collect();
    Ok(Walk { vertices, steps })
}

fn apply_move(g: &DirectedGraph, r: usize, w: &Walk, mv: &RawMove) -> Result<Walk> {
    let mut out = w.clone();
    match mv {
        RawMove::InsertStay { at } => {
            if *at >= w.vertices.len() {
                return Err(Error::InvalidWalk(format!("stay position {at} out of range")));
            }
            out.vertices.insert(*at, w.vertices[*at]);
            out.steps.insert(*at, Step::S);
        }
        RawMove::DeleteStay { at } => {
            if w.steps.get(*at) != Some(&Step::S) {
                return Err(Error::InvalidWalk(format!("step {at} is not a stay")));
            }
            out.vertices.remove(*at);
            out.steps.remove(*at);
        }
        RawMove::Insert { at, map, vertex } => {
            let rho = rho_image(g, r, map, *vertex)?;
            if w.vertices.get(*at) != Some(&rho.start()) {
                return Err(Error::InvalidWalk(format!("inserted loop does not start at position {at}")));
            }
            out.vertices.splice(*at + 1..*at + 1, rho.vertices[1..].iter().copied());
            out.steps.splice(*at..*at, rho.steps.iter().copied());
        }
        RawMove::Delete { at, map, vertex } => {
            let rho = rho_image(g, r, map, *vertex)?;
            let n = rho.steps.len();
            if *at + n > w.steps.len()
                || w.steps[*at..*at + n] != rho.steps[..]
                || w.vertices[*at..=*at + n] != rho.vertices[..]
            {
                return Err(Error::InvalidWalk(format!("no h∘ρ_x to delete at step {at}")));
            }
            out.vertices.drain(*at + 1..=*at + n);
            out.steps.drain(*at..*at + n);
        }
    }
    Ok(out)
}

/// Replays a certificate, re-validating every move.
pub fn replay(g: &DirectedGraph, cert: &Certificate) -> Result<()> {
    cert.from.validate(g)?;
    let mut w = cert.from.clone();
    for (i, mv) in cert.moves.iter().enumerate() {
        w = apply_move(g, cert.r, &w, mv).map_err(|e| Error::InvalidWalk(format!("move {i}: {e}")))?;
        w.validate(g)?;
    }
    if w != cert.to {
        return Err(Error::InvalidWalk("replay does not end at the target walk".into()));
    }
    Ok(())
}

/// Raw moves turning `w` into its freely reduced stay-free form.
fn normalize(g: &DirectedGraph, r: usize, w: &Walk, moves: &mut Vec<RawMove>) -> Walk {
    let mut w = w.clone();
    let mut push = |w: &mut Walk, mv: RawMove| {
        *w = apply_move(g, r, w, &mv).expect("normalizing moves are valid");
        moves.push(mv);
    };
    for at in (0..w.steps.len()).rev() {
        if w.steps[at] == Step::S {
            push(&mut w, RawMove::DeleteStay { at });
        }
    }
    loop {
        let letters = w.letters(g);
        let Some(j) = (0..letters.len().saturating_sub(1)).find(|&j| letters[j + 1] == letters[j].inverse()) else {
            break;
        };
        let (a, b) = g.edges()[letters[j].edge];
        let mut path = vec![b; r + 1];
        path[0] = a;
        let map = GammaMap { upper: path.clone(), lower: path };
        let pad = 2 * r - 2;
        if letters[j].forward {
            for _ in 0..pad {
                push(&mut w, RawMove::InsertStay { at: j + 1 });
            }
            push(&mut w, RawMove::Delete { at: j, map, vertex: GammaVertex::U(0) });
        } else {
            for _ in 0..pad {
                push(&mut w, RawMove::InsertStay { at: j });
            }
            push(&mut w, RawMove::Delete { at: j, map, vertex: GammaVertex::U(1) });
        }
    }
    w
}

#[derive(Clone, Debug)]
struct Candidate {
    word: Vec<Letter>,
    map: GammaMap,
    vertex: GammaVertex,
}

/// Loop words of all `h ∘ ρ_x` with stays dropped, grouped by base vertex.
fn catalog(g: &DirectedGraph, r: usize, cap: usize) -> Vec<Vec<Candidate>> {
    let walks = directed_walks(g, r);
    let mut per_vertex: Vec<HashMap<Vec<Letter>, Candidate>> = vec![HashMap::new(); g.num_vertices()];
    let pad = |s: Vertex, edges: &[usize]| -> Vec<Vertex> {
        let mut vs = vec![s];
        for &e in edges {
            vs.push(g.edges()[e].1);
        }
        vs.resize(r + 1, *vs.last().expect("nonempty"));
        vs
    };
    let mut i = 0;
    while i < walks.len() {
        let mut j = i;
        while j < walks.len() && walks[j].0 == walks[i].0 && walks[j].1 == walks[i].1 {
            j += 1;
        }
        for (s, _, up) in &walks[i..j] {
            for (_, _, down) in &walks[i..j] {
                if up == down {
                    continue;
                }
                let map = GammaMap { upper: pad(*s, up), lower: pad(*s, down) };
                let (a, b) = (up.len(), down.len());
                let mut xs: Vec<GammaVertex> = (0..=a).map(GammaVertex::U).collect();
                xs.extend((1..b).map(|k| GammaVertex::V(b - k)));
                for x in xs {
                    let w = rho_image(g, r, &map, x).expect("walk pairs give maps");
                    let word = w.letters(g);
                    if free_reduce(&word).is_empty() {
                        continue;
                    }
                    per_vertex[w.start()].entry(word.clone()).or_insert(Candidate {
                        word,
                        map: map.clone(),
                        vertex: x,
                    });
                }
            }
        }
        i = j;
    }
    per_vertex
        .into_iter()
        .map(|m| {
            let mut v: Vec<Candidate> = m.into_values().collect();
            v.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
            v.truncate(cap);
            v
        })
        .collect()
}

fn vertex_sequence(g: &DirectedGraph, start: Vertex, word: &[Letter]) -> Vec<Vertex> {
    let mut out = vec![start];
    out.extend(word.iter().map(|l| l.target(g)));
    out
}

/// Searches for a `C_r`-homotopy from `f` to `g`.
///
/// `Disproven` comes from a nonzero Hurewicz class of `f · ḡ` in
/// `E^r_{1,0}`, or at `r = 1` from differing reduced words.
pub fn cr_homotopy_prover(
    x: &DirectedGraph,
    f: &Walk,
    g: &Walk,
    r: usize,
    cfg: &ProverConfig,
) -> Result<ProverOutcome> {
    f.validate(x)?;
    g.validate(x)?;
    if f.start() != g.start() || f.end() != g.end() {
        return Err(Error::EndpointMismatch("walks must share both endpoints".into()));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if f == g {
        return Ok(ProverOutcome::Proven(Certificate { r, from: f.clone(), to: g.clone(), moves: Vec::new() }));
    }
    let (rf, rg) = (free_reduce(&f.letters(x)), free_reduce(&g.letters(x)));
    if r == 1 && rf != rg {
        return Ok(ProverOutcome::Disproven(Refutation::FreeGroupoid));
    }
    if r >= 2 {
        let c = FilteredChainComplex::build(x, 2, r as u64);
        let sq = e10_via_cycles_in(&c, r)?;
        let diff: Vec<Int> =
            hurewicz_chain_in(x, &c, f).iter().zip(hurewicz_chain_in(x, &c, g)).map(|(a, b)| a - &b).collect();
        let class = sq.class_of(&diff).expect("differences of walks with common ends are cycles");
        if class.iter().any(|v| !v.is_zero()) {
            return Ok(ProverOutcome::Disproven(Refutation::HurewiczClass(class)));
        }
    }

    let start = f.start();
    let max_len = cfg.max_word_len.unwrap_or(rf.len().max(rg.len()) + 2 * r);
    let cands = catalog(x, r, cfg.max_candidates_per_position);
    // parent word, position, candidate base vertex, candidate index
    type Origin = (Vec<Letter>, usize, Vertex, usize);
    let mut parent: HashMap<Vec<Letter>, Option<Origin>> = HashMap::new();
    parent.insert(rf.clone(), None);
    let mut queue = VecDeque::from([rf.clone()]);
    let mut explored = 0;
    let mut found = rf == rg;
    while !found {
        let Some(word) = queue.pop_front() else { break };
        if explored >= cfg.budget {
            return Ok(ProverOutcome::Unknown { explored });
        }
        explored += 1;
        let vs = vertex_sequence(x, start, &word);
        'positions: for (i, &v) in vs.iter().enumerate() {
            for (k, c) in cands[v].iter().enumerate() {
                let mut next = word[..i].to_vec();
                next.extend_from_slice(&c.word);
                next.extend_from_slice(&word[i..]);
                let next = free_reduce(&next);
                if next.len() > max_len || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((word.clone(), i, v, k)));
                if next == rg {
                    found = true;
                    break 'positions;
                }
                queue.push_back(next);
            }
        }
    }
    if !found {
        return Ok(ProverOutcome::Unknown { explored });
    }

    let mut chain = Vec::new();
    let mut at = rg.clone();
    while let Some(Some((prev, i, v, k))) = parent.get(&at) {
        chain.push((*i, *v, *k));
        at = prev.clone();
    }
    chain.reverse();

    let mut moves = Vec::new();
    let mut w = normalize(x, r, f, &mut moves);
    for (i, v, k) in chain {
        let c = &cands[v][k];
        let mv = RawMove::Insert { at: i, map: c.map.clone(), vertex: c.vertex };
        w = apply_move(x, r, &w, &mv).expect("search moves are valid");
        moves.push(mv);
        w = normalize(x, r, &w, &mut moves);
    }
    let mut back = Vec::new();
    let wg = normalize(x, r, g, &mut back);
    debug_assert_eq!(w, wg);
    moves.extend(back.iter().rev().map(RawMove::inverse));
    Ok(ProverOutcome::Proven(Certificate { r, from: f.clone(), to: g.clone(), moves }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gamma;

    #[test]
    fn rho_shapes() {
        let g = gamma(2);
        let n = |s: &str| g.vertex(s).unwrap();
        let map = GammaMap { upper: vec![n("u0"), n("u1"), n("u2")], lower: vec![n("u0"), n("v1"), n("u2")] };
        let w = rho_image(&g, 2, &map, GammaVertex::U(0)).unwrap();
        assert_eq!(w.steps, vec![Step::F, Step::F, Step::B, Step::B]);
        assert!(w.is_loop());
        for x in [GammaVertex::U(1), GammaVertex::U(2), GammaVertex::V(1)] {
            let w = rho_image(&g, 2, &map, x).unwrap();
            assert_eq!(w.len(), 4);
            assert!(w.is_loop());
            w.validate(&g).unwrap();
        }
        assert!(rho_image(&g, 2, &map, GammaVertex::V(2)).is_err());
    }

    #[test]
    fn backtracks_normalize_with_valid_moves() {
        let g = gamma(3);
        let f =
            Walk::from_names(&g, &["u0", "u1", "u1", "u0", "v1", "u0"], &[Step::F, Step::S, Step::B, Step::F, Step::B])
                .unwrap();
        for r in 1..=3 {
            let mut moves = Vec::new();
            let w = normalize(&g, r, &f, &mut moves);
            assert_eq!(w, Walk::constant(g.vertex("u0").unwrap()));
            let cert = Certificate { r, from: f.clone(), to: w, moves };
            replay(&g, &cert).unwrap();
        }
    }

    #[test]
    fn gamma_loop_contracts_at_level_r() {
        for r in 2..=3 {
            let g = gamma(r);
            let u0 = g.vertex("u0").unwrap();
            let map = GammaMap {
                upper: (0..=r).map(|i| g.vertex(&format!("u{i}")).unwrap()).collect(),
                lower: (0..=r)
                    .map(|i| match i {
                        0 => u0,
                        i if i == r => g.vertex(&format!("u{r}")).unwrap(),
                        i => g.vertex(&format!("v{i}")).unwrap(),
                    })
                    .collect(),
            };
            let rho = rho_image(&g, r, &map, GammaVertex::U(0)).unwrap();
            let out = cr_homotopy_prover(&g, &rho, &Walk::constant(u0), r, &ProverConfig::default()).unwrap();
            let ProverOutcome::Proven(cert) = out else { panic!("expected a proof, got {out:?}") };
            replay(&g, &cert).unwrap();
            let below = cr_homotopy_prover(&g, &rho, &Walk::constant(u0), r - 1, &ProverConfig::default()).unwrap();
            assert!(matches!(below, ProverOutcome::Disproven(_)));
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = gamma(2);
        let f = Walk::from_names(&g, &["u0", "u1", "u0"], &[Step::F, Step::B]).unwrap();
        let c = Walk::constant(f.start());
        let ProverOutcome::Proven(mut cert) = cr_homotopy_prover(&g, &f, &c, 2, &ProverConfig::default()).unwrap()
        else {
            panic!()
        };
        replay(&g, &cert).unwrap();
        cert.moves.pop();
        assert!(replay(&g, &cert).is_err());
    }
}
