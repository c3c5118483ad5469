//! Perfect matchings, 2-factors, and the least number of edges left
//! uncovered by three perfect matchings.
//!
//! For a cubic graph the complement of a perfect matching is a 2-factor, and
//! the minimum over matching triples `(M1, M2, M3)` of
//! `|E - (M1 ∪ M2 ∪ M3)|` is 0 exactly when the graph is 3-edge-colorable.
//! For snarks the quantity is at least 3.

use std::time::Instant;

use rayon::prelude::*;

use crate::graph::{CubicGraph, EdgeId, Vertex};
use crate::hamilton::Budget;

/// Every perfect matching, as ascending edge-id lists, in a deterministic
/// order. Branching always matches the lowest unmatched vertex, so each
/// matching is produced exactly once.
pub fn perfect_matchings(g: &CubicGraph) -> Vec<Vec<EdgeId>> {
    let n = g.order();
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut matched = vec![false; n as usize];
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(n as usize / 2);

    fn rec(
        g: &CubicGraph,
        matched: &mut [bool],
        chosen: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        let Some(v) = matched.iter().position(|&m| !m) else {
            let mut pm = chosen.clone();
            pm.sort_unstable();
            out.push(pm);
            return;
        };
        let v = v as Vertex;
        matched[v as usize] = true;
        for &w in g.neighbors(v) {
            if matched[w as usize] {
                continue;
            }
            matched[w as usize] = true;
            chosen.push(g.edge_id(v, w).unwrap());
            rec(g, matched, chosen, out);
            chosen.pop();
            matched[w as usize] = false;
        }
        matched[v as usize] = false;
    }

    rec(g, &mut matched, &mut chosen, &mut out);
    out
}

/// The cycles of the 2-factor complementary to a perfect matching of a
/// cubic graph. Cycles are listed by ascending minimum vertex; each starts
/// at its minimum vertex and steps first to its smaller neighbor.
///
/// # Panics
///
/// Panics if `g` is not cubic or `pm` is not one of its perfect matchings.
pub fn complementary_two_factor(g: &CubicGraph, pm: &[EdgeId]) -> Vec<Vec<Vertex>> {
    g.require_cubic().expect("2-factor complement needs a cubic graph");
    assert_eq!(pm.len() as u32, g.order() / 2, "not a perfect matching");
    let mut in_pm = vec![false; g.size() as usize];
    for &e in pm {
        assert!(e < g.size(), "edge id out of range");
        assert!(!in_pm[e as usize], "repeated edge");
        in_pm[e as usize] = true;
    }
    let mut pm_partner = vec![Vertex::MAX; g.order() as usize];
    for &e in pm {
        let (u, v) = g.endpoints(e);
        assert!(pm_partner[u as usize] == Vertex::MAX, "vertex matched twice");
        assert!(pm_partner[v as usize] == Vertex::MAX, "vertex matched twice");
        pm_partner[u as usize] = v;
        pm_partner[v as usize] = u;
    }

    let mut seen = vec![false; g.order() as usize];
    let mut cycles = Vec::new();
    for start in 0..g.order() {
        if seen[start as usize] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start as usize] = true;
        let mut prev = Vertex::MAX;
        let mut cur = start;
        loop {
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| {
                    let e = g.edge_id(cur, w).unwrap();
                    !in_pm[e as usize] && w != prev && w != start
                });
            match next {
                Some(w) => {
                    seen[w as usize] = true;
                    cycle.push(w);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// Result of the uncovered-edge minimization over perfect matching triples.
#[derive(Clone, Debug)]
pub struct UncoveredByThree {
    /// Minimum number of uncovered edges (exact only if `exact`).
    pub value: u32,
    /// False when the search stopped on budget; `value` is then only an
    /// upper bound realized by `matchings`.
    pub exact: bool,
    /// The optimal matchings. Entries repeat when the graph has fewer than
    /// three perfect matchings.
    pub matchings: [Vec<EdgeId>; 3],
    /// The edges no matching of the triple covers, ascending.
    pub uncovered: Vec<EdgeId>,
}

fn mask_of(pm: &[EdgeId]) -> u128 {
    pm.iter().fold(0u128, |acc, &e| acc | (1u128 << e))
}

fn uncovered_edges(g: &CubicGraph, union: u128) -> Vec<EdgeId> {
    (0..g.size()).filter(|&e| union & (1u128 << e) == 0).collect()
}

/// Minimizes the number of edges left uncovered by three perfect matchings.
/// Returns `None` when the graph has no perfect matching at all.
///
/// The triple search prunes with the bound that a third matching can cover
/// at most `n/2` additional edges, and examines matching pairs in parallel;
/// exact results are deterministic. `budget.max_nodes` caps the number of
/// examined pairs and `budget.deadline` the wall-clock time; on exhaustion
/// the best triple so far is returned with `exact: false`.
pub fn min_uncovered_by_three(g: &CubicGraph, budget: Budget) -> Option<UncoveredByThree> {
    assert!(g.size() <= 128, "edge bitsets support at most 128 edges");
    let pms = perfect_matchings(g);
    if pms.is_empty() {
        return None;
    }
    let m = g.size();
    let masks: Vec<u128> = pms.iter().map(|pm| mask_of(pm)).collect();

    if pms.len() < 3 {
        // With one matching the best union is that matching; with two it is
        // their union (supersets can only help).
        let union: u128 = masks.iter().fold(0, |a, &b| a | b);
        let value = m - union.count_ones();
        let pick = |i: usize| pms[i.min(pms.len() - 1)].clone();
        return Some(UncoveredByThree {
            value,
            exact: true,
            matchings: [pick(0), pick(1), pick(2)],
            uncovered: uncovered_edges(g, union),
        });
    }

    let half = g.order() / 2;
    // Seed with the lexicographically first triple so aborted searches still
    // return a valid witness.
    let seed_union = masks[0] | masks[1] | masks[2];
    let seed = (m - seed_union.count_ones(), 0usize, 1usize, 2usize);

    let deadline_hit = std::sync::atomic::AtomicBool::new(false);
    let pairs_seen = std::sync::atomic::AtomicU64::new(0);
    let best = (0..pms.len() - 2)
        .into_par_iter()
        .map(|i| {
            let mut local = seed;
            if deadline_hit.load(std::sync::atomic::Ordering::Relaxed) {
                return local;
            }
            for j in i + 1..pms.len() - 1 {
                let seen = pairs_seen.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if budget.max_nodes.is_some_and(|cap| seen >= cap)
                    || (seen.is_multiple_of(1024)
                        && budget.deadline.is_some_and(|d| Instant::now() > d))
                {
                    deadline_hit.store(true, std::sync::atomic::Ordering::Relaxed);
                    return local;
                }
                let pair_union = masks[i] | masks[j];
                // Even a perfectly disjoint third matching leaves this many.
                let floor = (m - pair_union.count_ones()).saturating_sub(half);
                if floor >= local.0 {
                    continue;
                }
                for (k, &mask) in masks.iter().enumerate().skip(j + 1) {
                    let union = pair_union | mask;
                    let value = m - union.count_ones();
                    if (value, i, j, k) < local {
                        local = (value, i, j, k);
                    }
                }
            }
            local
        })
        .reduce(|| seed, std::cmp::min);

    let (value, i, j, k) = best;
    let union = masks[i] | masks[j] | masks[k];
    Some(UncoveredByThree {
        value,
        exact: !deadline_hit.into_inner(),
        matchings: [pms[i].clone(), pms[j].clone(), pms[k].clone()],
        uncovered: uncovered_edges(g, union),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::petersen;
    use crate::graph::CubicGraph;

    fn assert_is_pm(g: &CubicGraph, pm: &[EdgeId]) {
        assert_eq!(pm.len() as u32, g.order() / 2);
        let mut hit = vec![false; g.order() as usize];
        for &e in pm {
            let (u, v) = g.endpoints(e);
            assert!(!hit[u as usize] && !hit[v as usize], "overlapping matching edges");
            hit[u as usize] = true;
            hit[v as usize] = true;
        }
    }

    #[test]
    fn petersen_has_six_perfect_matchings() {
        let p = petersen();
        let pms = perfect_matchings(&p);
        assert_eq!(pms.len(), 6);
        for pm in &pms {
            assert_is_pm(&p, pm);
        }
        // All distinct.
        for i in 0..pms.len() {
            for j in i + 1..pms.len() {
                assert_ne!(pms[i], pms[j]);
            }
        }
    }

    #[test]
    fn petersen_two_factors_are_pentagon_pairs() {
        let p = petersen();
        for pm in perfect_matchings(&p) {
            let cycles = complementary_two_factor(&p, &pm);
            let mut lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
            lens.sort_unstable();
            assert_eq!(lens, vec![5, 5]);
            for cycle in &cycles {
                for i in 0..cycle.len() {
                    assert!(p.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
        }
    }

    #[test]
    fn petersen_needs_three_uncovered_edges() {
        let p = petersen();
        let r = min_uncovered_by_three(&p, Budget::unlimited()).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.exact);
        assert_eq!(r.uncovered.len(), 3);
        for pm in &r.matchings {
            assert_is_pm(&p, pm);
        }
        // Uncovered edges really are missed by all three.
        for &e in &r.uncovered {
            assert!(r.matchings.iter().all(|pm| !pm.contains(&e)));
        }
    }

    #[test]
    fn colorable_graphs_cover_everything() {
        let k4 =
            CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(perfect_matchings(&k4).len(), 3);
        let r = min_uncovered_by_three(&k4, Budget::unlimited()).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.uncovered.is_empty());

        let k33 = CubicGraph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(perfect_matchings(&k33).len(), 6);
        assert_eq!(min_uncovered_by_three(&k33, Budget::unlimited()).unwrap().value, 0);
    }

    #[test]
    fn degenerate_matching_counts() {
        // A path on four vertices has exactly one perfect matching and one
        // edge that no matching can cover.
        let p4 = CubicGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let pms = perfect_matchings(&p4);
        assert_eq!(pms.len(), 1);
        let r = min_uncovered_by_three(&p4, Budget::unlimited()).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.uncovered, vec![1]);

        // A six-ring has two perfect matchings which together cover it.
        let c6 =
            CubicGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert_eq!(perfect_matchings(&c6).len(), 2);
        assert_eq!(min_uncovered_by_three(&c6, Budget::unlimited()).unwrap().value, 0);

        // Odd order: no perfect matching at all.
        let p3 = CubicGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(min_uncovered_by_three(&p3, Budget::unlimited()).is_none());
    }

    #[test]
    fn budget_caps_yield_inexact_upper_bounds() {
        let p = petersen();
        let r = min_uncovered_by_three(&p, Budget::nodes(0)).unwrap();
        assert!(!r.exact);
        assert!(r.value >= 3);
        for pm in &r.matchings {
            assert_is_pm(&p, pm);
        }
    }
}
