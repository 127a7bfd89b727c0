mod common;

use common::{arb_connected, arb_graph};
use mpss_core::graph::{disjoint_union, DirectedGraph, Distance};
use mpss_core::linalg::{is_surjective, IntMatrix};
use mpss_core::mpss::{e10_via_cycles, h1_filtered, page, page_projection};
use mpss_core::nerve::{enumerate_generators, tuple_weight, FilteredChainComplex};
use proptest::prelude::*;

fn dense(c: &FilteredChainComplex, n: usize) -> IntMatrix {
    IntMatrix::from_sparse_columns(c.dim(n - 1), c.boundary(n))
}

/// Every `(n+1)`-tuple of vertices, kept when nondegenerate and light enough.
fn brute_force(g: &DirectedGraph, n: usize, p: u64) -> Vec<(Vec<usize>, u64)> {
    let nv = g.num_vertices();
    let mut out = Vec::new();
    for code in 0..nv.pow(n as u32 + 1) {
        let t: Vec<usize> = (0..=n).map(|i| code / nv.pow(i as u32) % nv).collect();
        if t.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        if let Distance::Finite(w) = tuple_weight(g, &t) {
            if w <= p {
                out.push((t, w));
            }
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero(g in arb_graph(5, 10), p in 0u64..=4) {
        let c = FilteredChainComplex::build(&g, 3, p);
        for n in 2..=3 {
            prop_assert!(dense(&c, n - 1).mul(&dense(&c, n)).is_zero());
        }
    }

    #[test]
    fn faces_never_get_heavier(g in arb_graph(5, 10), p in 0u64..=4) {
        let c = FilteredChainComplex::build(&g, 3, p);
        for n in 1..=3 {
            for (col, t) in c.boundary(n).iter().zip(c.generators(n)) {
                for (row, _) in col {
                    prop_assert!(c.weight(n - 1, *row) <= t.weight);
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force(g in arb_graph(5, 10), n in 0usize..=3, p in 0u64..=4) {
        let mut got: Vec<(Vec<usize>, u64)> =
            enumerate_generators(&g, n, p).into_iter().map(|t| (t.vertices, t.weight)).collect();
        let weights: Vec<u64> = got.iter().map(|t| t.1).collect();
        prop_assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        got.sort();
        prop_assert_eq!(got, brute_force(&g, n, p));
    }

    #[test]
    fn routes_to_e10_agree(g in arb_connected(6, 10, "x"), r in 2usize..=5) {
        let via_page = page(&g, r, 1, 0).unwrap().invariants().clone();
        prop_assert_eq!(&e10_via_cycles(&g, r).unwrap().invariants, &via_page);
        prop_assert_eq!(&h1_filtered(&g, r).unwrap(), &via_page);
    }

    #[test]
    fn projection_onto_next_page(g in arb_connected(6, 10, "x"), r in 2usize..=4) {
        let (src, tgt, m) = page_projection(&g, r).unwrap();
        prop_assert!(src.invariants().rank >= tgt.invariants().rank);
        prop_assert!(is_surjective(&m, &tgt.group.summand_presentation()));
    }

    #[test]
    fn first_page_is_additive(x in arb_graph(4, 6), y in arb_graph(4, 6), p in 0i64..=3, q in -3i64..=0) {
        let sum = disjoint_union(&x, &y);
        let lhs = page(&sum, 1, p, q).unwrap().invariants().clone();
        let rhs = page(&x, 1, p, q).unwrap().invariants().direct_sum(page(&y, 1, p, q).unwrap().invariants());
        prop_assert_eq!(lhs, rhs);
    }
}
