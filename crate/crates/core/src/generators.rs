//! Named base snarks and the dot product construction.
//!
//! The dot product of cubic graphs G and H picks two independent edges
//! `ab`, `cd` of G and two adjacent vertices `x`, `y` of H, removes the two
//! edges and the two vertices, and joins the loose ends: `a` and `b` to the
//! former neighbors of `x`, and `c` and `d` to those of `y`. The result is
//! cubic on `|G| + |H| - 2` vertices; the dot product of two snarks is again
//! a snark.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CubicGraph, EdgeId, GraphError, Vertex};

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes.
pub fn petersen() -> CubicGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    CubicGraph::from_edges(10, edges).expect("fixed edge table is valid")
}

/// The second Blanusa snark on 18 vertices (reference labeling).
pub fn blanusa2() -> CubicGraph {
    const EDGES: [(Vertex, Vertex); 27] = [
        (0, 1), (0, 2), (0, 14), (1, 5), (1, 11), (2, 3), (2, 6), (3, 4), (3, 9),
        (4, 5), (4, 7), (5, 6), (6, 8), (7, 8), (7, 17), (8, 9), (9, 15), (10, 11),
        (10, 14), (10, 16), (11, 12), (12, 13), (12, 17), (13, 14), (13, 15),
        (15, 16), (16, 17),
    ];
    CubicGraph::from_edges(18, EDGES).expect("fixed edge table is valid")
}

/// The first Loupekine snark on 22 vertices (reference labeling).
pub fn loupekine1() -> CubicGraph {
    const EDGES: [(Vertex, Vertex); 33] = [
        (0, 1), (0, 2), (0, 11), (1, 5), (1, 6), (2, 3), (2, 15), (3, 4), (3, 19),
        (4, 5), (4, 18), (5, 7), (6, 8), (6, 9), (7, 9), (7, 10), (8, 10), (8, 17),
        (9, 16), (10, 12), (11, 13), (11, 14), (12, 14), (12, 15), (13, 15),
        (13, 16), (14, 20), (16, 21), (17, 19), (17, 20), (18, 20), (18, 21),
        (19, 21),
    ];
    CubicGraph::from_edges(22, EDGES).expect("fixed edge table is valid")
}

/// A flower snark with its named vertex families.
///
/// `J_m` for odd `m = 2k + 1` consists of `m` claws: spoke `b_i` adjacent to
/// `a_i`, `c_i`, `d_i`, with the `a_i` forming an `m`-cycle and the `c`/`d`
/// rims crossing (`c_i ~ d_{i+1}`, `d_i ~ c_{i+1}`, indices mod `m`).
#[derive(Clone, Debug)]
pub struct FlowerSnark {
    pub graph: CubicGraph,
    /// Cycle parameter: the snark is `J_{2k+1}` on `4(2k+1)` vertices.
    pub k: u32,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub d: Vec<Vertex>,
}

/// Errors from the named generators.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("flower snark requires k >= 2 (J_{{2k+1}} has girth < 5 below that), got {0}")]
    FlowerTooSmall(u32),
}

/// The flower snark `J_{2k+1}`, `k >= 2`, in the reference labeling
/// `b_i = 3i`, `d_i = 3i + 1`, `c_i = 3i - 1 (mod 3m)`, `a_i = 3m + i`.
pub fn flower(k: u32) -> Result<FlowerSnark, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::FlowerTooSmall(k));
    }
    let m = 2 * k + 1;
    let b = |i: u32| 3 * (i % m);
    let d = |i: u32| 3 * (i % m) + 1;
    let c = |i: u32| (3 * (i % m) + 3 * m - 1) % (3 * m);
    let a = |i: u32| 3 * m + (i % m);
    let mut edges = Vec::with_capacity(6 * m as usize);
    for i in 0..m {
        edges.push((b(i), a(i)));
        edges.push((b(i), c(i)));
        edges.push((b(i), d(i)));
        edges.push((a(i), a(i + 1)));
        edges.push((c(i), d(i + 1)));
        edges.push((d(i), c(i + 1)));
    }
    let graph = CubicGraph::from_edges(4 * m, edges).expect("flower edge table is valid");
    Ok(FlowerSnark {
        graph,
        k,
        a: (0..m).map(a).collect(),
        b: (0..m).map(b).collect(),
        c: (0..m).map(c).collect(),
        d: (0..m).map(d).collect(),
    })
}

/// Looks up a graph by the short names used in data files and on the
/// command line: `petersen`, `B2` (second Blanusa snark), `L1` (first
/// Loupekine snark), or `J<m>` for the flower snark on `4m` vertices
/// (odd `m >= 5`).
pub fn named_graph(name: &str) -> Option<CubicGraph> {
    match name {
        "petersen" | "Petersen" | "P" => Some(petersen()),
        "B2" => Some(blanusa2()),
        "L1" => Some(loupekine1()),
        _ => {
            let m: u32 = name.strip_prefix('J')?.parse().ok()?;
            if m % 2 == 1 && m >= 5 {
                Some(flower((m - 1) / 2).expect("m >= 5 means k >= 2").graph)
            } else {
                None
            }
        }
    }
}

/// One way of forming a dot product `G . H`.
///
/// The removed G edges are `g_ab` and `g_cd`; the removed H vertices are the
/// adjacent pair `h_x`, `h_y`. The endpoints of `g_ab` are joined to the two
/// neighbors of `h_x` other than `h_y`, and those of `g_cd` to the neighbors
/// of `h_y` other than `h_x`. With both `cross` flags false, the smaller
/// endpoint meets the smaller neighbor; a flag swaps that correspondence on
/// its side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DotSpec {
    pub g_ab: EdgeId,
    pub g_cd: EdgeId,
    pub h_x: Vertex,
    pub h_y: Vertex,
    pub cross_x: bool,
    pub cross_y: bool,
}

/// A constructed dot product.
///
/// Vertices `0..|G|` are G's; the remaining vertices are H's survivors in
/// ascending original order. `added_edges` lists the four bridge edges in
/// product numbering; `connected` flags whether the result is connected
/// (adversarial specs on graphs with small cuts can disconnect it).
#[derive(Clone, Debug)]
pub struct DotProduct {
    pub graph: CubicGraph,
    pub connected: bool,
    pub added_edges: [(Vertex, Vertex); 4],
}

/// Errors from [`dot_product`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DotError {
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("G edges ({0},{1}) and ({2},{3}) are not independent")]
    EdgesNotIndependent(Vertex, Vertex, Vertex, Vertex),
    #[error("H vertices {0} and {1} are not adjacent")]
    VerticesNotAdjacent(Vertex, Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Forms the dot product `g . h` described by `spec`.
///
/// Both inputs must be cubic; `spec.g_ab` and `spec.g_cd` must be independent
/// edges of `g`, and `spec.h_x`, `spec.h_y` adjacent vertices of `h`.
pub fn dot_product(g: &CubicGraph, h: &CubicGraph, spec: &DotSpec) -> Result<DotProduct, DotError> {
    g.require_cubic()?;
    h.require_cubic()?;
    let ng = g.order();
    for e in [spec.g_ab, spec.g_cd] {
        if e >= g.size() {
            return Err(DotError::EdgeOutOfRange(e));
        }
    }
    for v in [spec.h_x, spec.h_y] {
        if v >= h.order() {
            return Err(DotError::VertexOutOfRange(v));
        }
    }
    let (a, b) = g.endpoints(spec.g_ab);
    let (c, d) = g.endpoints(spec.g_cd);
    if spec.g_ab == spec.g_cd || [a, b].iter().any(|v| [c, d].contains(v)) {
        return Err(DotError::EdgesNotIndependent(a, b, c, d));
    }
    let (x, y) = (spec.h_x, spec.h_y);
    if x == y || !h.has_edge(x, y) {
        return Err(DotError::VerticesNotAdjacent(x, y));
    }

    // Survivors of H keep their relative order after G's block.
    let mut map = vec![u32::MAX; h.order() as usize];
    let mut next = ng;
    for v in 0..h.order() {
        if v != x && v != y {
            map[v as usize] = next;
            next += 1;
        }
    }
    let far = |v: Vertex, other: Vertex| -> [Vertex; 2] {
        let mut it = h.neighbors(v).iter().copied().filter(|&w| w != other);
        [it.next().expect("cubic vertex"), it.next().expect("cubic vertex")]
    };
    let [xn0, xn1] = far(x, y);
    let [yn0, yn1] = far(y, x);
    let (ap, bp) = if spec.cross_x { (xn1, xn0) } else { (xn0, xn1) };
    let (cp, dp) = if spec.cross_y { (yn1, yn0) } else { (yn0, yn1) };

    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity((g.size() + h.size() - 3) as usize);
    for (i, &e) in g.edges().iter().enumerate() {
        if i as EdgeId != spec.g_ab && i as EdgeId != spec.g_cd {
            edges.push(e);
        }
    }
    for &(u, v) in h.edges() {
        if u != x && u != y && v != x && v != y {
            edges.push((map[u as usize], map[v as usize]));
        }
    }
    let added = [
        (a, map[ap as usize]),
        (b, map[bp as usize]),
        (c, map[cp as usize]),
        (d, map[dp as usize]),
    ];
    edges.extend_from_slice(&added);

    let graph = CubicGraph::from_edges(ng + h.order() - 2, edges)?;
    let connected = graph.is_connected();
    Ok(DotProduct { graph, connected, added_edges: added })
}

/// Every dot spec for `g . h`, without deduplication: all unordered pairs of
/// independent G edges in both role orders, every H edge as `(x, y)` with
/// `x < y`, and all four correspondence flags.
pub fn all_dot_specs(g: &CubicGraph, h: &CubicGraph) -> Vec<DotSpec> {
    let mut out = Vec::new();
    let m = g.size();
    for e1 in 0..m {
        let (a, b) = g.endpoints(e1);
        for e2 in e1 + 1..m {
            let (c, d) = g.endpoints(e2);
            if a == c || a == d || b == c || b == d {
                continue;
            }
            for (x, y) in h.edges().iter().copied() {
                if h.degree(x) != 3 || h.degree(y) != 3 {
                    continue;
                }
                for (g_ab, g_cd) in [(e1, e2), (e2, e1)] {
                    for cross_x in [false, true] {
                        for cross_y in [false, true] {
                            out.push(DotSpec { g_ab, g_cd, h_x: x, h_y: y, cross_x, cross_y });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dot specs for `g . h` deduplicated up to identical resulting edge sets.
///
/// Two specs that join the same loose ends to the same neighbors (for
/// instance when a correspondence flag is absorbed by symmetry) produce the
/// same product edge list; only the first such spec is kept. Order is the
/// enumeration order of [`all_dot_specs`], so output is deterministic.
pub fn enumerate_dot_specs(g: &CubicGraph, h: &CubicGraph) -> Vec<DotSpec> {
    let mut seen: HashSet<Vec<(Vertex, Vertex)>> = HashSet::new();
    let mut out = Vec::new();
    for spec in all_dot_specs(g, h) {
        match dot_product(g, h, &spec) {
            Ok(p) => {
                if seen.insert(p.graph.edges().to_vec()) {
                    out.push(spec);
                }
            }
            Err(_) => continue,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.order(), 10);
        assert_eq!(p.size(), 15);
        assert!(p.is_cubic());
        assert_eq!(p.girth(), Some(5));
        assert!(p.is_connected());
    }

    #[test]
    fn blanusa2_shape() {
        let g = blanusa2();
        assert_eq!((g.order(), g.size()), (18, 27));
        assert!(g.is_cubic());
        assert_eq!(g.girth(), Some(5));
        assert!(g.is_connected());
    }

    #[test]
    fn loupekine1_shape() {
        let g = loupekine1();
        assert_eq!((g.order(), g.size()), (22, 33));
        assert!(g.is_cubic());
        assert_eq!(g.girth(), Some(5));
        assert!(g.is_connected());
    }

    #[test]
    fn flower_family_shape() {
        assert_eq!(flower(0).unwrap_err(), GeneratorError::FlowerTooSmall(0));
        assert_eq!(flower(1).unwrap_err(), GeneratorError::FlowerTooSmall(1));
        for k in 2..=6u32 {
            let f = flower(k).unwrap();
            let m = 2 * k + 1;
            assert_eq!(f.graph.order(), 4 * m);
            assert!(f.graph.is_cubic());
            assert!(f.graph.is_connected());
            // J5 has girth 5; all larger flowers have girth 6.
            assert_eq!(f.graph.girth(), Some(if k == 2 { 5 } else { 6 }));
            // Name maps: b_i is the spoke of its claw.
            for i in 0..m as usize {
                for fam in [&f.a, &f.c, &f.d] {
                    assert!(f.graph.has_edge(f.b[i], fam[i]));
                }
                assert!(f.graph.has_edge(f.a[i], f.a[(i + 1) % m as usize]));
                assert!(f.graph.has_edge(f.c[i], f.d[(i + 1) % m as usize]));
                assert!(f.graph.has_edge(f.d[i], f.c[(i + 1) % m as usize]));
            }
        }
    }

    #[test]
    fn dot_product_shape_and_validation() {
        let p = petersen();
        // Edges (0,1) and (2,3) are independent; (5,7) is an inner edge.
        let ab = p.edge_id(0, 1).unwrap();
        let cd = p.edge_id(2, 3).unwrap();
        let spec = DotSpec {
            g_ab: ab,
            g_cd: cd,
            h_x: 5,
            h_y: 7,
            cross_x: false,
            cross_y: false,
        };
        let prod = dot_product(&p, &p, &spec).unwrap();
        assert_eq!(prod.graph.order(), 18);
        assert!(prod.graph.is_cubic());
        assert!(prod.connected);
        assert!(prod.graph.girth().unwrap() >= 5);
        for (u, v) in prod.added_edges {
            assert!(prod.graph.has_edge(u, v));
        }

        // Overlapping G edges are rejected.
        let bad = DotSpec { g_cd: p.edge_id(1, 2).unwrap(), ..spec };
        assert!(matches!(dot_product(&p, &p, &bad).unwrap_err(), DotError::EdgesNotIndependent(..)));
        // Non-adjacent H vertices are rejected.
        let bad = DotSpec { h_x: 0, h_y: 2, ..spec };
        assert!(matches!(dot_product(&p, &p, &bad).unwrap_err(), DotError::VerticesNotAdjacent(0, 2)));
        // Non-cubic inputs are rejected.
        let c4 = CubicGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(dot_product(&c4, &p, &spec).is_err());
    }

    #[test]
    fn petersen_self_specs_count() {
        let p = petersen();
        // 75 independent edge pairs, 15 choices of (x, y), 8 orientations.
        let raw = all_dot_specs(&p, &p);
        assert_eq!(raw.len(), 75 * 15 * 8);
        let deduped = enumerate_dot_specs(&p, &p);
        assert!(deduped.len() <= raw.len());
        assert!(!deduped.is_empty());
    }
}
