//! Proper 3-edge-colorings, chromatic index of cubic graphs, the snark
//! predicate, and bicriticality.
//!
//! Colorability is decided by exhaustive backtracking over per-edge candidate
//! sets (bitmasks over the three colors) with unit propagation, an
//! all-different check at every vertex, naked-pair reduction among a vertex's
//! incident edges, and most-constrained-edge branching. Color permutation
//! symmetry is broken by pre-assigning the edges around one maximum-degree
//! vertex, so a "not colorable" answer is an exhaustive proof.

use rayon::prelude::*;

use crate::connectivity::cyclic_cut_within;
use crate::graph::{CubicGraph, EdgeId, Vertex};

const ALL: u8 = 0b111;
const NONE_COLOR: u8 = u8::MAX;

struct ColorSolver {
    /// incident (subgraph) edge ids per vertex, original vertex ids
    vinc: Vec<Vec<u32>>,
    cand: Vec<u8>,
    color: Vec<u8>,
    trail: Vec<(u32, u8)>,
    /// vertices whose incident candidate sets changed
    dirty: Vec<u32>,
}

enum Step {
    Ok,
    Conflict,
}

impl ColorSolver {
    fn new(n: u32, edges: &[(Vertex, Vertex)]) -> ColorSolver {
        let mut vinc = vec![Vec::new(); n as usize];
        for (e, &(u, v)) in edges.iter().enumerate() {
            vinc[u as usize].push(e as u32);
            vinc[v as usize].push(e as u32);
        }
        ColorSolver {
            vinc,
            cand: vec![ALL; edges.len()],
            color: vec![NONE_COLOR; edges.len()],
            trail: Vec::new(),
            dirty: Vec::new(),
        }
    }

    fn narrow(&mut self, e: u32, mask: u8, ends: (Vertex, Vertex)) -> Step {
        let old = self.cand[e as usize];
        let new = old & mask;
        if new == old {
            return Step::Ok;
        }
        if new == 0 {
            return Step::Conflict;
        }
        self.trail.push((e, old));
        self.cand[e as usize] = new;
        if new.count_ones() == 1 {
            self.color[e as usize] = new.trailing_zeros() as u8;
        }
        self.dirty.push(ends.0);
        self.dirty.push(ends.1);
        Step::Ok
    }

    fn propagate(&mut self, edges: &[(Vertex, Vertex)]) -> Step {
        while let Some(v) = self.dirty.pop() {
            let deg = self.vinc[v as usize].len();
            // Fixed colors are excluded from sibling edges.
            for i in 0..deg {
                let e = self.vinc[v as usize][i];
                if self.color[e as usize] == NONE_COLOR {
                    continue;
                }
                let bit = 1u8 << self.color[e as usize];
                for j in 0..deg {
                    let f = self.vinc[v as usize][j];
                    if f != e && self.color[f as usize] == NONE_COLOR {
                        if let Step::Conflict = self.narrow(f, !bit, edges[f as usize]) {
                            return Step::Conflict;
                        }
                    }
                }
            }
            // The incident edges need pairwise-distinct colors: their
            // candidate union must be large enough, and two edges confined
            // to the same two colors exclude those from the third.
            let mut union = 0u8;
            for i in 0..deg {
                union |= self.cand[self.vinc[v as usize][i] as usize];
            }
            if (union.count_ones() as usize) < deg {
                return Step::Conflict;
            }
            if deg == 3 {
                for i in 0..3 {
                    for j in i + 1..3 {
                        let a = self.vinc[v as usize][i];
                        let b = self.vinc[v as usize][j];
                        let m = self.cand[a as usize];
                        if m.count_ones() == 2 && m == self.cand[b as usize] {
                            let k = self.vinc[v as usize][3 - i - j];
                            if let Step::Conflict = self.narrow(k, !m, edges[k as usize]) {
                                return Step::Conflict;
                            }
                        }
                    }
                }
            }
        }
        Step::Ok
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, old) = self.trail.pop().unwrap();
            self.cand[e as usize] = old;
            self.color[e as usize] = NONE_COLOR;
        }
        self.dirty.clear();
    }

    fn pick(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for e in 0..self.cand.len() {
            if self.color[e] == NONE_COLOR {
                let key = (self.cand[e].count_ones(), e as u32);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, e)| e)
    }

    fn search(&mut self, edges: &[(Vertex, Vertex)]) -> bool {
        if let Step::Conflict = self.propagate(edges) {
            return false;
        }
        let Some(e) = self.pick() else {
            return true;
        };
        let mask = self.cand[e as usize];
        for c in 0..3u8 {
            if mask & (1 << c) == 0 {
                continue;
            }
            let mark = self.trail.len();
            match self.narrow(e, 1 << c, edges[e as usize]) {
                Step::Ok => {
                    if self.search(edges) {
                        return true;
                    }
                }
                Step::Conflict => {}
            }
            self.rollback(mark);
        }
        false
    }
}

/// Solves proper 3-edge-coloring on an explicit edge list over vertices
/// `0..n` of degree at most 3. Returns one color (0..3) per edge.
fn solve(n: u32, edges: &[(Vertex, Vertex)]) -> Option<Vec<u8>> {
    if edges.is_empty() {
        return Some(Vec::new());
    }
    let mut solver = ColorSolver::new(n, edges);
    // Break color symmetry: pin the edges around one maximum-degree vertex.
    let seed = (0..n as usize).max_by_key(|&v| solver.vinc[v].len()).unwrap();
    let seeded: Vec<u32> = solver.vinc[seed].clone();
    for (c, &e) in seeded.iter().enumerate() {
        match solver.narrow(e, 1 << c, edges[e as usize]) {
            Step::Ok => {}
            Step::Conflict => return None,
        }
    }
    if solver.search(edges) {
        Some(solver.color.clone())
    } else {
        None
    }
}

/// A proper 3-edge-coloring of the whole graph, as one color in `0..3` per
/// edge id, or `None` if the chromatic index exceeds 3 (exhaustively proven).
pub fn three_edge_coloring(g: &CubicGraph) -> Option<Vec<u8>> {
    solve(g.order(), g.edges())
}

pub fn is_three_edge_colorable(g: &CubicGraph) -> bool {
    three_edge_coloring(g).is_some()
}

/// 3-edge-colorability of the graph minus a set of vertices (with their
/// incident edges).
pub fn is_three_edge_colorable_minus(g: &CubicGraph, deleted: &[Vertex]) -> bool {
    let alive = |v: Vertex| !deleted.contains(&v);
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| alive(u) && alive(v))
        .collect();
    solve(g.order(), &edges).is_some()
}

/// Checks that `colors` is a proper 3-edge-coloring of `g`.
pub fn verify_edge_coloring(g: &CubicGraph, colors: &[u8]) -> bool {
    if colors.len() != g.size() as usize {
        return false;
    }
    if colors.iter().any(|&c| c > 2) {
        return false;
    }
    let mut seen = vec![0u8; g.order() as usize];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let bit = 1u8 << colors[e];
        if seen[u as usize] & bit != 0 || seen[v as usize] & bit != 0 {
            return false;
        }
        seen[u as usize] |= bit;
        seen[v as usize] |= bit;
    }
    true
}

/// Chromatic index of a cubic graph: 3 if 3-edge-colorable, else 4.
pub fn chromatic_index(g: &CubicGraph) -> Result<u8, crate::graph::GraphError> {
    g.require_cubic()?;
    Ok(if is_three_edge_colorable(g) { 3 } else { 4 })
}

/// Why a graph is, or is not, a snark. Checks run in the listed order and
/// stop at the first failure, so the verdict names the cheapest obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SnarkVerdict {
    NotCubic { vertex: Vertex, degree: u32 },
    GirthTooSmall { girth: u32 },
    NotCyclicallyFourEdgeConnected { connectivity: u32, cut: Vec<EdgeId> },
    ThreeEdgeColorable { coloring: Vec<u8> },
    Snark,
}

impl SnarkVerdict {
    pub fn is_snark(&self) -> bool {
        matches!(self, SnarkVerdict::Snark)
    }
}

/// Tests the snark property: cubic, girth at least 5, cyclically 4-edge-
/// connected, and chromatic index 4.
pub fn snark_verdict(g: &CubicGraph) -> SnarkVerdict {
    if let Err(crate::graph::GraphError::NotCubic(vertex, degree)) = g.require_cubic() {
        return SnarkVerdict::NotCubic { vertex, degree };
    }
    let girth = g.girth().expect("cubic graphs contain cycles");
    if girth < 5 {
        return SnarkVerdict::GirthTooSmall { girth };
    }
    // A hit within 3 is exactly a violation of cyclic 4-edge-connectivity.
    // Graphs for which the quantity is undefined (no two vertex-disjoint
    // cycles) cannot reach this point: they have girth below 5.
    if let Some(cut) = cyclic_cut_within(g, 3) {
        return SnarkVerdict::NotCyclicallyFourEdgeConnected {
            connectivity: cut.connectivity,
            cut: cut.cut,
        };
    }
    match three_edge_coloring(g) {
        Some(coloring) => SnarkVerdict::ThreeEdgeColorable { coloring },
        None => SnarkVerdict::Snark,
    }
}

pub fn is_snark(g: &CubicGraph) -> bool {
    snark_verdict(g).is_snark()
}

/// Outcome of a bicriticality test on a cubic graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BicriticalVerdict {
    /// Chromatic index 4, yet removing any two distinct vertices leaves a
    /// 3-edge-colorable graph.
    Bicritical,
    /// The graph itself is 3-edge-colorable.
    ThreeEdgeColorable { coloring: Vec<u8> },
    /// Removing `{u, v}` still leaves chromatic index 4.
    UncolorablePair { u: Vertex, v: Vertex },
}

/// Tests bicriticality. Vertex pairs are examined in parallel; the verdict
/// is deterministic (lexicographically smallest failing pair wins).
pub fn bicritical_verdict(g: &CubicGraph) -> BicriticalVerdict {
    if let Some(coloring) = three_edge_coloring(g) {
        return BicriticalVerdict::ThreeEdgeColorable { coloring };
    }
    let mut pairs = Vec::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            pairs.push((u, v));
        }
    }
    let bad = pairs
        .par_iter()
        .filter(|&&(u, v)| !is_three_edge_colorable_minus(g, &[u, v]))
        .min();
    match bad {
        None => BicriticalVerdict::Bicritical,
        Some(&(u, v)) => BicriticalVerdict::UncolorablePair { u, v },
    }
}

pub fn is_bicritical(g: &CubicGraph) -> bool {
    matches!(bicritical_verdict(g), BicriticalVerdict::Bicritical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{flower, petersen};
    use crate::graph::CubicGraph;

    fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> CubicGraph {
        CubicGraph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    #[test]
    fn k4_and_k33_are_class_one() {
        for g in [k4(), k33()] {
            let coloring = three_edge_coloring(&g).expect("class 1");
            assert!(verify_edge_coloring(&g, &coloring));
            assert_eq!(chromatic_index(&g).unwrap(), 3);
        }
    }

    #[test]
    fn petersen_is_class_two() {
        let p = petersen();
        assert!(three_edge_coloring(&p).is_none());
        assert_eq!(chromatic_index(&p).unwrap(), 4);
    }

    #[test]
    fn coloring_verifier_rejects_garbage() {
        let g = k4();
        let mut ok = three_edge_coloring(&g).unwrap();
        assert!(verify_edge_coloring(&g, &ok));
        ok[0] = ok[1];
        assert!(!verify_edge_coloring(&g, &ok));
        assert!(!verify_edge_coloring(&g, &[0, 1, 2]));
        assert!(!verify_edge_coloring(&g, &[3; 6]));
    }

    #[test]
    fn deleting_vertices_restores_colorability() {
        let p = petersen();
        assert!(!is_three_edge_colorable_minus(&p, &[]));
        assert!(is_three_edge_colorable_minus(&p, &[0, 5]));
    }

    #[test]
    fn petersen_is_bicritical() {
        assert_eq!(bicritical_verdict(&petersen()), BicriticalVerdict::Bicritical);
    }

    #[test]
    fn k4_bicritical_verdict_reports_coloring() {
        match bicritical_verdict(&k4()) {
            BicriticalVerdict::ThreeEdgeColorable { coloring } => {
                assert!(verify_edge_coloring(&k4(), &coloring));
            }
            other => panic!("expected colorable, got {other:?}"),
        }
    }

    #[test]
    fn snark_verdicts() {
        assert_eq!(snark_verdict(&petersen()), SnarkVerdict::Snark);
        assert!(matches!(snark_verdict(&k4()), SnarkVerdict::GirthTooSmall { girth: 3 }));
        assert!(matches!(snark_verdict(&k33()), SnarkVerdict::GirthTooSmall { girth: 4 }));
        let j5 = flower(2).unwrap();
        assert!(is_snark(&j5.graph));
    }

    #[test]
    fn subdivided_vertex_is_not_cubic() {
        // A 5-cycle has degree 2 everywhere.
        let c5 = CubicGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(matches!(
            snark_verdict(&c5),
            SnarkVerdict::NotCubic { degree: 2, .. }
        ));
    }
}
