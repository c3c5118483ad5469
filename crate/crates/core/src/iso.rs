//! Graph isomorphism via canonical labeling.
//!
//! Canonical labeling uses iterated color refinement with individualization
//! backtracking: refine vertex colors by neighbor-color multisets to a stable
//! partition; while some color class has several vertices, individualize each
//! member of the first such class in turn and recurse. Every discrete leaf
//! yields a relabeled edge list, and the lexicographically smallest one is the
//! canonical form. All tie-breaking uses data that is invariant under
//! relabeling, so two graphs share a canonical form iff they are isomorphic.

use crate::graph::{CubicGraph, Vertex};
use crate::graph6::write_graph6;

/// Refines `colors` to the coarsest stable partition at least as fine as the
/// input: vertices end up in the same class iff they have the same class and
/// the same multiset of neighbor classes, iterated to a fixpoint. Class ids
/// are assigned by sorted signature, so they are relabeling-invariant.
fn refine(g: &CubicGraph, colors: &mut [u32]) {
    let n = g.order() as usize;
    if n == 0 {
        return;
    }
    let mut classes = 0;
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nc: Vec<u32> =
                    g.neighbors(v as Vertex).iter().map(|&w| colors[w as usize]).collect();
                nc.sort_unstable();
                (colors[v], nc, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        let mut prev: Option<(&u32, &Vec<u32>)> = None;
        for (c, nc, v) in &sigs {
            if prev.is_some_and(|p| p != (c, nc)) {
                next += 1;
            }
            colors[*v] = next;
            prev = Some((c, nc));
        }
        if next + 1 == classes {
            return;
        }
        classes = next + 1;
        if classes as usize == n {
            return;
        }
    }
}

#[allow(clippy::type_complexity)]
fn search(g: &CubicGraph, colors: Vec<u32>, best: &mut Option<(Vec<(u32, u32)>, Vec<u32>)>) {
    let n = g.order() as usize;
    let mut colors = colors;
    refine(g, &mut colors);

    let mut cell_size = vec![0u32; n + 1];
    for &c in &colors {
        cell_size[c as usize] += 1;
    }
    let target = (0..n).map(|v| colors[v]).filter(|&c| cell_size[c as usize] > 1).min();

    let Some(cell) = target else {
        // Discrete: colors form a permutation; relabel and compare.
        let mut edges: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (colors[u as usize], colors[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| edges < *b) {
            *best = Some((edges, colors));
        }
        return;
    };

    for v in 0..n {
        if colors[v] != cell {
            continue;
        }
        // Split v off below its cell mates; doubling preserves class order.
        let child: Vec<u32> =
            (0..n).map(|w| 2 * colors[w] + u32::from(w != v)).collect();
        search(g, child, best);
    }
}

/// The canonical relabeling `old id -> new id`.
pub fn canonical_labeling(g: &CubicGraph) -> Vec<u32> {
    let mut best = None;
    search(g, vec![0; g.order() as usize], &mut best);
    match best {
        Some((_, perm)) => perm,
        None => Vec::new(),
    }
}

/// The graph relabeled into canonical form.
pub fn canonical_relabel(g: &CubicGraph) -> CubicGraph {
    let perm = canonical_labeling(g);
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u as usize], perm[v as usize]));
    CubicGraph::from_edges(g.order(), edges).expect("relabeling preserves simplicity")
}

/// The canonical form as a graph6 line: equal strings iff isomorphic graphs.
/// Suitable as a deduplication key for batches of graphs.
pub fn canonical_graph6(g: &CubicGraph) -> String {
    write_graph6(&canonical_relabel(g))
}

/// Isomorphism test via canonical forms, with cheap invariant pre-checks.
pub fn is_isomorphic(a: &CubicGraph, b: &CubicGraph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let degseq = |g: &CubicGraph| {
        let mut d: Vec<u32> = (0..g.order()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degseq(a) != degseq(b) {
        return false;
    }
    canonical_relabel(a) == canonical_relabel(b)
}

/// Checks that `perm` (as `old -> new`) is an automorphism of `g`.
pub fn is_automorphism(g: &CubicGraph, perm: &[Vertex]) -> bool {
    if perm.len() != g.order() as usize {
        return false;
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p as usize >= perm.len() || seen[p as usize] {
            return false;
        }
        seen[p as usize] = true;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| g.has_edge(perm[u as usize], perm[v as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CubicGraph;

    fn c6() -> CubicGraph {
        CubicGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap()
    }

    #[test]
    fn relabeled_cycles_are_isomorphic() {
        // C6 with scrambled labels.
        let scrambled =
            CubicGraph::from_edges(6, [(2, 4), (4, 0), (0, 5), (5, 1), (1, 3), (2, 3)]).unwrap();
        assert!(is_isomorphic(&c6(), &scrambled));
        assert_eq!(canonical_graph6(&c6()), canonical_graph6(&scrambled));
    }

    #[test]
    fn distinguishes_c6_from_two_triangles() {
        // Same order, size, and degree sequence; not isomorphic.
        let two_k3 =
            CubicGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_isomorphic(&c6(), &two_k3));
    }

    #[test]
    fn distinguishes_regular_cospectral_like_pairs() {
        // K3,3 vs the triangular prism: both cubic on 6 vertices.
        let k33 = CubicGraph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = CubicGraph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_isomorphic(&k33, &prism));
        assert!(is_isomorphic(&k33, &k33));
    }

    #[test]
    fn canonical_relabel_is_idempotent() {
        let g = c6();
        let c1 = canonical_relabel(&g);
        let c2 = canonical_relabel(&c1);
        assert_eq!(c1, c2);
    }

    #[test]
    fn automorphism_check() {
        let g = c6();
        assert!(is_automorphism(&g, &[1, 2, 3, 4, 5, 0])); // rotation
        assert!(is_automorphism(&g, &[5, 4, 3, 2, 1, 0])); // reflection
        assert!(!is_automorphism(&g, &[1, 0, 2, 3, 4, 5])); // swap breaks edges
        assert!(!is_automorphism(&g, &[0, 0, 2, 3, 4, 5])); // not a permutation
        assert!(!is_automorphism(&g, &[0, 1, 2])); // wrong length
    }

    #[test]
    fn empty_graph() {
        let g = CubicGraph::from_edges(0, []).unwrap();
        assert!(is_isomorphic(&g, &g));
        assert_eq!(canonical_labeling(&g), Vec::<u32>::new());
    }
}
