//! Randomized invariant checks over the library's pure data structures:
//! graph6 encoding, canonical labeling, colorings, matchings, and the dot
//! product's structural laws.

use proptest::prelude::*;

use snarkforge::coloring::{three_edge_coloring, verify_edge_coloring};
use snarkforge::factors::{complementary_two_factor, perfect_matchings};
use snarkforge::generators::{dot_product, named_graph, DotSpec};
use snarkforge::graph::{CubicGraph, Vertex};
use snarkforge::graph6::{parse_graph6, write_graph6};
use snarkforge::iso::{canonical_graph6, is_isomorphic};

/// A random simple graph on up to 24 vertices as an edge subset.
fn arb_graph() -> impl Strategy<Value = CubicGraph> {
    (1u32..=24)
        .prop_flat_map(|n| {
            let slots = (n * (n - 1) / 2) as usize;
            (Just(n), proptest::collection::vec(proptest::bool::weighted(0.3), slots))
        })
        .prop_map(|(n, picks)| {
            let mut edges = Vec::new();
            let mut slot = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if picks[slot] {
                        edges.push((u, v));
                    }
                    slot += 1;
                }
            }
            CubicGraph::from_edges(n, edges).expect("valid simple graph")
        })
}

/// A uniformly random permutation of `0..n` (Fisher-Yates with prop indices).
fn arb_permutation(n: u32) -> impl Strategy<Value = Vec<Vertex>> {
    proptest::collection::vec(any::<u32>(), n as usize).prop_map(move |keys| {
        let mut perm: Vec<Vertex> = (0..n).collect();
        for i in (1..n as usize).rev() {
            perm.swap(i, keys[i] as usize % (i + 1));
        }
        perm
    })
}

proptest! {
    /// Encoding any simple graph to graph6 and back is the identity.
    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        let line = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&line).unwrap(), g);
    }

    /// The canonical form ignores vertex labels: any relabeling of a graph
    /// canonicalizes to the same string, and the two are isomorphic.
    #[test]
    fn canonical_form_is_label_invariant(
        (g, perm) in arb_graph().prop_flat_map(|g| {
            let n = g.order();
            (Just(g), arb_permutation(n))
        })
    ) {
        let relabeled = CubicGraph::from_edges(
            g.order(),
            g.edges().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])),
        ).unwrap();
        prop_assert_eq!(canonical_graph6(&g), canonical_graph6(&relabeled));
        prop_assert!(is_isomorphic(&g, &relabeled));
    }
}

/// The named snarks and a couple of colorable cubic graphs for targeted
/// randomized checks.
fn cubic_zoo() -> Vec<CubicGraph> {
    let mut zoo: Vec<CubicGraph> =
        ["petersen", "B2", "L1", "J5"].iter().map(|n| named_graph(n).unwrap()).collect();
    // K4 and K_{3,3}: 3-edge-colorable members.
    zoo.push(CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap());
    zoo.push(
        CubicGraph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap(),
    );
    zoo
}

proptest! {
    /// Any coloring the solver returns is proper, and any perfect matching
    /// enumerated is a genuine 1-factor whose complement is a 2-factor.
    #[test]
    fn witnesses_are_valid(which in 0usize..6) {
        let g = cubic_zoo().swap_remove(which);
        if let Some(colors) = three_edge_coloring(&g) {
            prop_assert!(verify_edge_coloring(&g, &colors));
        }
        for pm in perfect_matchings(&g) {
            prop_assert_eq!(pm.len() as u32, g.order() / 2);
            let mut seen = vec![false; g.order() as usize];
            for &e in &pm {
                let (u, v) = g.endpoints(e);
                prop_assert!(!seen[u as usize] && !seen[v as usize]);
                seen[u as usize] = true;
                seen[v as usize] = true;
            }
            let cycles = complementary_two_factor(&g, &pm);
            prop_assert_eq!(cycles.iter().map(Vec::len).sum::<usize>() as u32, g.order());
            for c in &cycles {
                prop_assert!(c.len() >= 3);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
        }
    }

    /// Structural laws of the dot product for snark factors: order adds up,
    /// the result is cubic and connected, and girth stays at least 5.
    #[test]
    fn dot_product_laws(
        gi in 0usize..4,
        hi in 0usize..4,
        eseed in any::<u64>(),
        hseed in any::<u64>(),
        cross_x in any::<bool>(),
        cross_y in any::<bool>(),
    ) {
        let names = ["petersen", "B2", "L1", "J5"];
        let g = named_graph(names[gi]).unwrap();
        let h = named_graph(names[hi]).unwrap();

        // Deterministic pseudo-random pick of two independent G edges.
        let m = g.size() as u64;
        let mut ab = (eseed % m) as u32;
        let mut cd = ((eseed >> 16) % m) as u32;
        let mut tries = 0;
        loop {
            let (a, b) = g.endpoints(ab);
            let (c, d) = g.endpoints(cd);
            if ab != cd && a != c && a != d && b != c && b != d {
                break;
            }
            cd = (cd + 1) % m as u32;
            tries += 1;
            if tries > m {
                ab = (ab + 1) % m as u32;
                tries = 0;
            }
        }
        let (x, y) = h.endpoints((hseed % h.size() as u64) as u32);

        let spec = DotSpec { g_ab: ab, g_cd: cd, h_x: x, h_y: y, cross_x, cross_y };
        let prod = dot_product(&g, &h, &spec).unwrap();
        prop_assert_eq!(prod.graph.order(), g.order() + h.order() - 2);
        prop_assert!(prod.graph.is_cubic());
        prop_assert!(prod.connected);
        prop_assert!(prod.graph.girth().unwrap() >= 5);
    }
}
