//! `r`-cofibrations, the degenerate `Γ_r` factorization certificate and
//! Mayer-Vietoris exactness at `E^r_{1,0}` for unions and pushouts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundamental::directed_walks;
use crate::graph::{intersection, pushout_along_inclusion, reach, union, DirectedGraph, Distance, GraphMap, Vertex};
use crate::linalg::{
    image_lattice, is_surjective, kernel_lattice, AbelianGroupInvariants, AbelianPresentation, Int, IntMatrix,
};
use crate::mpss::H1Model;

/// A retraction `π: reach(A) -> V(A)` certifying an `r`-cofibration
/// (`r = None` for `∞`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofibrationWitness {
    pub r: Option<usize>,
    /// `(x, π(x))` by name for every `x` in the reach of `A`.
    pub retraction: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CofibrationRefutation {
    /// A directed path from outside `A` back into `A`.
    PathIntoSubgraph { from: String, to: String },
    /// No vertex of `A` can serve as `π(x)`.
    NoRetraction { vertex: String },
}

impl std::fmt::Display for CofibrationRefutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::PathIntoSubgraph { from, to } => write!(f, "`{from}` outside A reaches `{to}` in A"),
            Self::NoRetraction { vertex } => write!(f, "no admissible retraction image for `{vertex}`"),
        }
    }
}

/// Whether `p` may serve as `π(x)` against every `a` in `A`.
fn admissible(x: &DirectedGraph, a_set: &[Vertex], v: Vertex, p: Vertex, r: Option<usize>) -> bool {
    let q = x.quasimetric();
    a_set.iter().all(|&a| {
        let (dax, dap, dpx) = (q.get(a, v), q.get(a, p), q.get(p, v));
        match r {
            None => dax.is_finite() == dap.is_finite(),
            Some(r) => {
                let r = Distance::Finite(r as u64);
                dap <= dax && if dax <= r { dap + dpx <= r } else { dap + dpx == dax }
            }
        }
    })
}

fn subgraph_vertices(a: &DirectedGraph, x: &DirectedGraph) -> Result<Vec<Vertex>> {
    if !a.is_induced_subgraph_of(x) {
        return Err(Error::NotInducedSubgraph("A must be an induced subgraph of X".into()));
    }
    Ok(a.names().iter().map(|n| x.vertex(n).expect("subgraph")).collect())
}

/// Decides whether the inclusion `A ⊆ X` is an `r`-cofibration. The
/// retraction is searched vertex by vertex, trying `x` itself first.
pub fn is_r_cofibration(
    a: &DirectedGraph,
    x: &DirectedGraph,
    r: Option<usize>,
) -> Result<std::result::Result<CofibrationWitness, CofibrationRefutation>> {
    if r == Some(0) {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let a_set = subgraph_vertices(a, x)?;
    let mut in_a = vec![false; x.num_vertices()];
    for &v in &a_set {
        in_a[v] = true;
    }
    let q = x.quasimetric();
    for v in (0..x.num_vertices()).filter(|&v| !in_a[v]) {
        if let Some(&t) = a_set.iter().find(|&&t| q.get(v, t).is_finite()) {
            return Ok(Err(CofibrationRefutation::PathIntoSubgraph { from: x.name(v).into(), to: x.name(t).into() }));
        }
    }
    let mut retraction = Vec::new();
    for v in reach(x, &a_set) {
        let order = std::iter::once(v).filter(|&v| in_a[v]).chain(a_set.iter().copied());
        match order.into_iter().find(|&p| admissible(x, &a_set, v, p, r)) {
            Some(p) => retraction.push((x.name(v).to_string(), x.name(p).to_string())),
            None => return Ok(Err(CofibrationRefutation::NoRetraction { vertex: x.name(v).into() })),
        }
    }
    Ok(Ok(CofibrationWitness { r, retraction }))
}

impl CofibrationWitness {
    /// Re-checks both conditions from the quasimetric of `x`.
    pub fn verify(&self, a: &DirectedGraph, x: &DirectedGraph) -> bool {
        let Ok(a_set) = subgraph_vertices(a, x) else { return false };
        let q = x.quasimetric();
        let outside_ok = (0..x.num_vertices())
            .filter(|v| !a_set.contains(v))
            .all(|v| a_set.iter().all(|&t| !q.get(v, t).is_finite()));
        let domain = reach(x, &a_set);
        let mut covered = vec![false; x.num_vertices()];
        for (v, p) in &self.retraction {
            let (Some(v), Some(p)) = (x.vertex(v), x.vertex(p)) else { return false };
            if !a_set.contains(&p) || !admissible(x, &a_set, v, p, self.r) {
                return false;
            }
            covered[v] = true;
        }
        outside_ok && domain.iter().all(|&v| covered[v])
    }
}

/// A map `Γ_r -> X ∪ Y` whose image lies in neither graph, as the vertex
/// names of its upper and lower directed walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaWitness {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

impl GammaWitness {
    /// Both walks are directed in `X ∪ Y` with at most `r` edges, share
    /// endpoints, differ, and together leave both `X` and `Y`.
    pub fn verify(&self, x: &DirectedGraph, y: &DirectedGraph, r: usize) -> bool {
        let u = union(x, y);
        let edges = |w: &[String]| -> Option<Vec<(String, String)>> {
            let mut out = Vec::new();
            for p in w.windows(2) {
                if p[0] != p[1] {
                    if !u.has_named_edge(&p[0], &p[1]) {
                        return None;
                    }
                    out.push((p[0].clone(), p[1].clone()));
                }
            }
            Some(out)
        };
        let (Some(eu), Some(el)) = (edges(&self.upper), edges(&self.lower)) else { return false };
        let fits = |g: &DirectedGraph| {
            self.upper.iter().chain(&self.lower).all(|n| g.vertex(n).is_some())
                && eu.iter().chain(&el).all(|(a, b)| g.has_named_edge(a, b))
        };
        !self.upper.is_empty()
            && !self.lower.is_empty()
            && eu.len() <= r
            && el.len() <= r
            && eu != el
            && self.upper.first() == self.lower.first()
            && self.upper.last() == self.lower.last()
            && u.vertex(&self.upper[0]).is_some()
            && !fits(x)
            && !fits(y)
    }
}

/// Looks for a map `Γ_r -> X ∪ Y` with distinct upper and lower edge walks
/// whose image lies in neither `X` nor `Y`. `None` certifies that every
/// such degenerate `Γ_r` factors through one side. The budget bounds the
/// number of walk pairs examined.
pub fn degenerate_gamma_factor_check(
    x: &DirectedGraph,
    y: &DirectedGraph,
    r: usize,
    budget: usize,
) -> Result<Option<GammaWitness>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let u = union(x, y);
    let vin = |g: &DirectedGraph| -> Vec<bool> { u.names().iter().map(|n| g.vertex(n).is_some()).collect() };
    let ein = |g: &DirectedGraph| -> Vec<bool> {
        u.edges().iter().map(|&(a, b)| g.has_named_edge(u.name(a), u.name(b))).collect()
    };
    let (vx, vy, ex, ey) = (vin(x), vin(y), ein(x), ein(y));
    let walks = directed_walks(&u, r);
    let path_vertices = |s: Vertex, es: &[usize]| -> Vec<Vertex> {
        std::iter::once(s).chain(es.iter().map(|&e| u.edges()[e].1)).collect()
    };
    let mut explored = 0usize;
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
                explored += 1;
                if explored > budget {
                    return Err(Error::BudgetExceeded { explored: explored - 1 });
                }
                let pu = path_vertices(*s, up);
                let pl = path_vertices(*s, down);
                let inside = |vs: &[bool], es: &[bool]| {
                    pu.iter().chain(&pl).all(|&v| vs[v]) && up.iter().chain(down).all(|&e| es[e])
                };
                if !inside(&vx, &ex) && !inside(&vy, &ey) {
                    let names = |p: &[Vertex]| p.iter().map(|&v| u.name(v).to_string()).collect();
                    return Ok(Some(GammaWitness { upper: names(&pu), lower: names(&pl) }));
                }
            }
        }
        i = j;
    }
    Ok(None)
}

/// How the separability hypothesis of a Mayer-Vietoris check was met.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separability {
    /// Every degenerate `Γ_r` factors.
    Certified,
    /// A non-factoring `Γ_r` was found; the sequence is computed anyway.
    Refuted,
    /// Taken on the caller's word.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvReport {
    pub r: usize,
    pub exact_mid: bool,
    pub surjective_right: bool,
    /// The kernel of the difference map strictly contains the image of the
    /// first map.
    pub kernel_exceeds_image: bool,
    pub groups: BTreeMap<String, AbelianGroupInvariants>,
    pub separability: Separability,
    pub witness: Option<GammaWitness>,
}

impl MvReport {
    pub fn ok(&self) -> bool {
        self.exact_mid && self.surjective_right
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

fn stack(top: &IntMatrix, bottom: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<Int>> = (0..top.nrows()).map(|i| top.row_vec(i)).collect();
    rows.extend((0..bottom.nrows()).map(|i| bottom.row_vec(i)));
    IntMatrix::from_rows_with_width(&rows, top.ncols())
}

struct Sequence {
    exact_mid: bool,
    surjective_right: bool,
    kernel_exceeds_image: bool,
}

/// `left --(f, g)--> mid_x ⊕ mid_y --(j - k)--> right` on `H_1(F_r C)` models.
fn check_sequence(
    left: &H1Model,
    (mx, f): (&H1Model, &GraphMap),
    (my, g): (&H1Model, &GraphMap),
    right: &H1Model,
    j: &GraphMap,
    k: &GraphMap,
) -> Result<Sequence> {
    let alpha = stack(&left.induced_presentation_matrix(f, mx)?, &left.induced_presentation_matrix(g, my)?);
    let beta = mx.induced_presentation_matrix(j, right)?.hcat(&my.induced_presentation_matrix(k, right)?.neg());
    let mid: AbelianPresentation = mx.group.presentation().direct_sum(&my.group.presentation());
    let target = right.group.presentation();
    let image = image_lattice(&alpha, &mid);
    let kernel = kernel_lattice(&beta, &target);
    Ok(Sequence {
        exact_mid: image == kernel,
        surjective_right: is_surjective(&beta, &target),
        kernel_exceeds_image: kernel.contains_lattice(&image) && kernel != image,
    })
}

fn require_connected(g: &DirectedGraph, what: &str) -> Result<()> {
    if g.num_vertices() == 0 || !g.is_connected() {
        return Err(Error::HypothesisUnmet(format!("{what} must be nonempty and connected")));
    }
    Ok(())
}

/// Exactness of `E^r_{1,0}(X∩Y) -> E^r_{1,0}(X) ⊕ E^r_{1,0}(Y) -> E^r_{1,0}(X∪Y) -> 0`
/// for subgraphs identified by vertex name. With `certify_budget` the
/// factorization certificate is run first; otherwise separability is assumed.
pub fn mayer_vietoris_check(
    x: &DirectedGraph,
    y: &DirectedGraph,
    r: usize,
    certify_budget: Option<usize>,
) -> Result<MvReport> {
    if r < 2 {
        return Err(Error::InvalidArgument("the sequence is stated for r >= 2".into()));
    }
    let i = intersection(x, y);
    let u = union(x, y);
    require_connected(x, "X")?;
    require_connected(y, "Y")?;
    require_connected(&i, "X ∩ Y")?;
    let (separability, witness) = match certify_budget {
        Some(b) => match degenerate_gamma_factor_check(x, y, r, b)? {
            None => (Separability::Certified, None),
            Some(w) => (Separability::Refuted, Some(w)),
        },
        None => (Separability::Assumed, None),
    };
    let w = r as u64;
    let graphs = [&i, x, y, &u];
    let models: Vec<H1Model> =
        crate::exec::Exec::Parallel.map(&graphs, |g| H1Model::new(g, w)).into_iter().collect::<Result<_>>()?;
    let seq = check_sequence(
        &models[0],
        (&models[1], &GraphMap::inclusion(&i, x)?),
        (&models[2], &GraphMap::inclusion(&i, y)?),
        &models[3],
        &GraphMap::inclusion(x, &u)?,
        &GraphMap::inclusion(y, &u)?,
    )?;
    let groups =
        ["X∩Y", "X", "Y", "X∪Y"].iter().zip(&models).map(|(k, m)| (k.to_string(), m.invariants().clone())).collect();
    Ok(MvReport {
        r,
        exact_mid: seq.exact_mid,
        surjective_right: seq.surjective_right,
        kernel_exceeds_image: seq.kernel_exceeds_image,
        groups,
        separability,
        witness,
    })
}

/// Exactness of `E^s_{1,0}(A) -> E^s_{1,0}(X) ⊕ E^s_{1,0}(Y) -> E^s_{1,0}(X ∪_A Y) -> 0`
/// for an `r`-cofibration `A ⊆ X` and `phi_y: A -> Y`.
pub fn pushout_mv_check(x: &DirectedGraph, phi_y: &GraphMap, r: usize, s: usize) -> Result<MvReport> {
    let (a, y) = (phi_y.source(), phi_y.target());
    if s < r.max(2) {
        return Err(Error::InvalidArgument("need s >= max(r, 2)".into()));
    }
    if let Err(why) = is_r_cofibration(a, x, Some(r))? {
        return Err(Error::NotACofibration(why.to_string()));
    }
    require_connected(a, "A")?;
    require_connected(x, "X")?;
    require_connected(y, "Y")?;
    let p = pushout_along_inclusion(x, phi_y)?;
    let w = s as u64;
    let graphs = [a, x, y, &p.graph];
    let models: Vec<H1Model> =
        crate::exec::Exec::Parallel.map(&graphs, |g| H1Model::new(g, w)).into_iter().collect::<Result<_>>()?;
    let seq = check_sequence(
        &models[0],
        (&models[1], &GraphMap::inclusion(a, x)?),
        (&models[2], phi_y),
        &models[3],
        &p.from_x,
        &p.from_y,
    )?;
    let groups =
        ["A", "X", "Y", "X∪_A Y"].iter().zip(&models).map(|(k, m)| (k.to_string(), m.invariants().clone())).collect();
    Ok(MvReport {
        r: s,
        exact_mid: seq.exact_mid,
        surjective_right: seq.surjective_right,
        kernel_exceeds_image: seq.kernel_exceeds_image,
        groups,
        separability: Separability::Certified,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gamma, induced_subgraph, vec_path};

    fn g(vs: &[&str], es: &[(&str, &str)]) -> DirectedGraph {
        DirectedGraph::new(vs, es).unwrap()
    }

    #[test]
    fn cofibration_examples() {
        let x = g(&["a", "b"], &[("a", "b")]);
        let w = is_r_cofibration(&x, &x, Some(1)).unwrap().unwrap();
        assert!(w.retraction.iter().all(|(v, p)| v == p));
        let a = DirectedGraph::point("a");
        let w = is_r_cofibration(&a, &x, Some(1)).unwrap().unwrap();
        assert_eq!(w.retraction, vec![("a".into(), "a".into()), ("b".into(), "a".into())]);
        assert!(w.verify(&a, &x));
        let back = g(&["a", "b"], &[("b", "a")]);
        assert!(matches!(
            is_r_cofibration(&a, &back, Some(1)).unwrap(),
            Err(CofibrationRefutation::PathIntoSubgraph { .. })
        ));
        let not_induced = g(&["a", "b"], &[]);
        assert!(is_r_cofibration(&not_induced, &x, Some(1)).is_err());
    }

    #[test]
    fn cofibration_retractions() {
        let x = g(&["a", "c", "b"], &[("a", "c"), ("c", "b")]);
        let a = induced_subgraph(&x, &["a", "c"]).unwrap();
        for r in [Some(1), Some(2), None] {
            let w = is_r_cofibration(&a, &x, r).unwrap().unwrap();
            assert!(w.verify(&a, &x));
            assert!(w.retraction.contains(&("b".into(), "c".into())));
        }
        // b is reached from two unrelated sources, neither can absorb it
        let x = g(&["a", "c", "b"], &[("a", "b"), ("c", "b")]);
        let a = induced_subgraph(&x, &["a", "c"]).unwrap();
        for r in [Some(1), Some(3), None] {
            assert_eq!(
                is_r_cofibration(&a, &x, r).unwrap(),
                Err(CofibrationRefutation::NoRetraction { vertex: "b".into() })
            );
        }
    }

    #[test]
    fn factor_check_finds_bigon() {
        let x = gamma(2);
        let top = induced_subgraph(&x, &["u0", "u1", "u2"]).unwrap();
        let bottom = induced_subgraph(&x, &["u0", "v1", "u2"]).unwrap();
        assert_eq!(degenerate_gamma_factor_check(&x, &x, 2, 1000).unwrap(), None);
        assert_eq!(degenerate_gamma_factor_check(&top, &bottom, 1, 1000).unwrap(), None);
        let w = degenerate_gamma_factor_check(&top, &bottom, 2, 1000).unwrap().unwrap();
        assert!(w.verify(&top, &bottom, 2));
        assert!(matches!(
            degenerate_gamma_factor_check(&top, &bottom, 2, 0),
            Err(Error::BudgetExceeded { explored: 0 })
        ));
    }

    #[test]
    fn trivial_mv() {
        let x = gamma(3);
        let rep = mayer_vietoris_check(&x, &x, 2, Some(10_000)).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.separability, Separability::Certified);
        let a = DirectedGraph::point("p");
        let b = DirectedGraph::point("q");
        assert!(matches!(mayer_vietoris_check(&a, &b, 2, None), Err(Error::HypothesisUnmet(_))));
    }

    #[test]
    fn wedge_pushout() {
        let x = vec_path(2);
        let a = induced_subgraph(&x, &["0"]).unwrap();
        let y = vec_path(3);
        let phi = GraphMap::from_names(&a, &y, &[("0", "3")]).unwrap();
        let rep = pushout_mv_check(&x, &phi, 1, 2).unwrap();
        assert!(rep.ok());
        assert!(rep.groups.values().all(AbelianGroupInvariants::is_trivial));
        let x_rev = g(&["0", "1"], &[("1", "0")]);
        let a = induced_subgraph(&x_rev, &["0"]).unwrap();
        let phi = GraphMap::from_names(&a, &y, &[("0", "3")]).unwrap();
        assert!(matches!(pushout_mv_check(&x_rev, &phi, 1, 2), Err(Error::NotACofibration(_))));
    }
}
