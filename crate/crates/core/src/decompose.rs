//! Reversal of the dot product: find the cyclic 4-edge cuts of a graph and
//! split it back into the two smaller factors they came from.
//!
//! A dot product glues a graph `G` (minus two independent edges `ab`, `cd`)
//! to a graph `H` (minus two adjacent vertices `x`, `y`) with four crossing
//! edges. Those four edges form a cyclic 4-edge cut of the product, and the
//! reversal reconstructs candidate factors from every such cut: put the two
//! removed edges back on one side, put the two removed vertices back on the
//! other, and keep a candidate only if re-multiplying the factors really
//! gives back the input graph (up to isomorphism).

use rayon::prelude::*;

use crate::coloring::is_snark;
use crate::generators::{dot_product, DotSpec};
use crate::graph::{CubicGraph, EdgeId, GraphError, Vertex};
use crate::hamilton::{is_hypohamiltonian, Budget};
use crate::iso::is_isomorphic;

/// All cyclic 4-edge cuts: independent edge quadruples whose removal leaves
/// exactly two components, each containing a cycle, with all four edges
/// running between them. Ascending within each cut; cuts in lexicographic
/// order.
pub fn cyclic_four_cuts(g: &CubicGraph) -> Vec<[EdgeId; 4]> {
    let m = g.size();
    let mut results: Vec<Vec<[EdgeId; 4]>> = (0..m)
        .into_par_iter()
        .map(|e0| {
            let mut found = Vec::new();
            let mut chosen = [e0, 0, 0, 0];
            rec(g, 1, &mut chosen, &mut found);
            found
        })
        .collect();
    return results.drain(..).flatten().collect();

    fn independent(g: &CubicGraph, chosen: &[EdgeId], e: EdgeId) -> bool {
        let (u, v) = g.endpoints(e);
        chosen.iter().all(|&f| {
            let (a, b) = g.endpoints(f);
            u != a && u != b && v != a && v != b
        })
    }

    fn rec(g: &CubicGraph, depth: usize, chosen: &mut [EdgeId; 4], found: &mut Vec<[EdgeId; 4]>) {
        if depth == 4 {
            if is_cyclic_four_cut(g, chosen) {
                found.push(*chosen);
            }
            return;
        }
        for e in chosen[depth - 1] + 1..g.size() {
            if independent(g, &chosen[..depth], e) {
                chosen[depth] = e;
                rec(g, depth + 1, chosen, found);
            }
        }
    }
}

fn is_cyclic_four_cut(g: &CubicGraph, cut: &[EdgeId; 4]) -> bool {
    side_of_cut(g, cut).is_some()
}

/// If `cut` is a cyclic 4-cut, the component of vertex 0 after removing it.
fn side_of_cut(g: &CubicGraph, cut: &[EdgeId; 4]) -> Option<Vec<bool>> {
    let n = g.order() as usize;
    let mut in_side = vec![false; n];
    let mut stack = vec![0 as Vertex];
    in_side[0] = true;
    let mut vertices = 0u32;
    let mut half_edges = 0u32;
    while let Some(v) = stack.pop() {
        vertices += 1;
        for &w in g.neighbors(v) {
            let e = g.edge_id(v, w).unwrap();
            if cut.contains(&e) {
                continue;
            }
            half_edges += 1;
            if !in_side[w as usize] {
                in_side[w as usize] = true;
                stack.push(w);
            }
        }
    }
    if half_edges / 2 < vertices {
        return None; // side of vertex 0 is acyclic
    }
    // All four cut edges must cross, and the far side must be one cyclic
    // component.
    for &e in cut {
        let (u, v) = g.endpoints(e);
        if in_side[u as usize] == in_side[v as usize] {
            return None;
        }
    }
    let far: Vec<Vertex> = (0..g.order()).filter(|&v| !in_side[v as usize]).collect();
    if far.is_empty() {
        return None;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![far[0]];
    seen[far[0] as usize] = true;
    let mut vertices = 0u32;
    let mut half_edges = 0u32;
    while let Some(v) = stack.pop() {
        vertices += 1;
        for &w in g.neighbors(v) {
            let e = g.edge_id(v, w).unwrap();
            if cut.contains(&e) {
                continue;
            }
            half_edges += 1;
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    if vertices < far.len() as u32 || half_edges / 2 < vertices {
        return None; // far side disconnected or acyclic
    }
    Some(in_side)
}

/// One way of splitting a graph as a dot product.
///
/// The reversal is not unique: along one cut, either side can play the
/// edge-receiving role, and the four stubs admit three pairings. Every
/// variant re-multiplies to the input, so all are emitted; the property
/// flags tell them apart.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// The cyclic 4-cut the split runs along, ascending edge ids.
    pub cut: [EdgeId; 4],
    /// How the left-side stubs were paired into the two reinserted edges,
    /// as index pairs into `cut`.
    pub pairing: [(usize, usize); 2],
    /// The factor that got its two independent edges back.
    pub left: CubicGraph,
    /// Ids (in `left`) of the two reinserted independent edges.
    pub left_edges: (EdgeId, EdgeId),
    /// The factor that got its two adjacent vertices back.
    pub right: CubicGraph,
    /// The two reinserted adjacent vertices of `right`.
    pub right_vertices: (Vertex, Vertex),
    pub left_is_snark: bool,
    pub right_is_snark: bool,
    /// `None` when the search budget for the factor ran out.
    pub left_is_hypohamiltonian: Option<bool>,
    pub right_is_hypohamiltonian: Option<bool>,
}

/// Rebuilds candidate factors along one cyclic 4-cut. `in_left` flags the
/// side that receives the reinserted edges.
#[allow(clippy::type_complexity)]
fn split_along(
    g: &CubicGraph,
    cut: &[EdgeId; 4],
    in_left: &dyn Fn(Vertex) -> bool,
    pairing: [(usize, usize); 2],
) -> Result<Option<(CubicGraph, (EdgeId, EdgeId), CubicGraph, (Vertex, Vertex))>, GraphError> {
    // Endpoint of each cut edge on each side.
    let left_end: Vec<Vertex> =
        cut.iter().map(|&e| { let (u, v) = g.endpoints(e); if in_left(u) { u } else { v } }).collect();
    let right_end: Vec<Vertex> =
        cut.iter().map(|&e| { let (u, v) = g.endpoints(e); if in_left(u) { v } else { u } }).collect();

    // Left factor: its side plus one edge per pair of cut-edge stubs.
    let left_vertices: Vec<Vertex> = (0..g.order()).filter(|&v| in_left(v)).collect();
    let to_left = |v: Vertex| left_vertices.binary_search(&v).unwrap() as Vertex;
    let mut left_edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| in_left(u) && in_left(v))
        .map(|(u, v)| (to_left(u), to_left(v)))
        .collect();
    let mut inserted = Vec::new();
    for (p, q) in pairing {
        let (a, b) = (to_left(left_end[p]), to_left(left_end[q]));
        if left_edges.iter().any(|&(u, v)| (u, v) == (a.min(b), a.max(b))) {
            return Ok(None); // reinserted edge already present
        }
        inserted.push((a.min(b), a.max(b)));
        left_edges.push((a.min(b), a.max(b)));
    }
    let left = CubicGraph::from_edges(left_vertices.len() as u32, left_edges)?;
    let e1 = left.edge_id(inserted[0].0, inserted[0].1).unwrap();
    let e2 = left.edge_id(inserted[1].0, inserted[1].1).unwrap();

    // Right factor: its side plus two adjacent vertices x, y; x picks up the
    // stubs of the first pair, y those of the second.
    let right_old: Vec<Vertex> = (0..g.order()).filter(|&v| !in_left(v)).collect();
    let to_right = |v: Vertex| right_old.binary_search(&v).unwrap() as Vertex;
    let x = right_old.len() as Vertex;
    let y = x + 1;
    let mut right_edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !in_left(u) && !in_left(v))
        .map(|(u, v)| (to_right(u), to_right(v)))
        .collect();
    for (vertex, pair) in [(x, pairing[0]), (y, pairing[1])] {
        right_edges.push((to_right(right_end[pair.0]), vertex));
        right_edges.push((to_right(right_end[pair.1]), vertex));
    }
    right_edges.push((x, y));
    let right = CubicGraph::from_edges(right_old.len() as u32 + 2, right_edges)?;

    Ok(Some((left, (e1.min(e2), e1.max(e2)), right, (x, y))))
}

/// All verified dot-product decompositions of `g`: one entry per cyclic
/// 4-cut, side assignment, and stub pairing for which re-multiplying the two
/// reconstructed factors yields a graph isomorphic to `g`. Cuts are worked
/// in parallel; output order is canonical (cut, side, pairing).
pub fn decompose_dot(g: &CubicGraph) -> Vec<Decomposition> {
    let hypo_flag = |f: &CubicGraph| {
        is_hypohamiltonian(f, Budget::for_order(f.order())).ok().map(|v| v.is_hypo())
    };
    cyclic_four_cuts(g)
        .into_par_iter()
        .map(|cut| {
            let mut out = Vec::new();
            let Some(side) = side_of_cut(g, &cut) else { return out };
            for flip in [false, true] {
                let in_left = |v: Vertex| side[v as usize] != flip;
                for pairing in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]] {
                    let Ok(Some((left, left_pair, right, (x, y)))) =
                        split_along(g, &cut, &in_left, pairing)
                    else {
                        continue;
                    };
                    if !left.is_cubic() || !right.is_cubic() {
                        continue;
                    }
                    // Round trip: some re-multiplication along the reinserted
                    // pieces must reproduce the input.
                    let verified = [false, true].iter().any(|&cx| {
                        [false, true].iter().any(|&cy| {
                            let spec = DotSpec {
                                g_ab: left_pair.0,
                                g_cd: left_pair.1,
                                h_x: x,
                                h_y: y,
                                cross_x: cx,
                                cross_y: cy,
                            };
                            dot_product(&left, &right, &spec)
                                .is_ok_and(|p| is_isomorphic(&p.graph, g))
                        })
                    });
                    if !verified {
                        continue;
                    }
                    out.push(Decomposition {
                        cut,
                        pairing,
                        left_is_snark: is_snark(&left),
                        right_is_snark: is_snark(&right),
                        left_is_hypohamiltonian: hypo_flag(&left),
                        right_is_hypohamiltonian: hypo_flag(&right),
                        left,
                        left_edges: left_pair,
                        right,
                        right_vertices: (x, y),
                    });
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{blanusa2, flower, petersen};
    use crate::iso::is_isomorphic;

    #[test]
    fn petersen_has_no_cyclic_four_cut() {
        assert!(cyclic_four_cuts(&petersen()).is_empty());
        assert!(decompose_dot(&petersen()).is_empty());
    }

    #[test]
    fn flower_twenty_has_no_cyclic_four_cut() {
        let j5 = flower(2).unwrap().graph;
        assert!(cyclic_four_cuts(&j5).is_empty());
    }

    #[test]
    fn blanusa_splits_into_petersen_twice() {
        let b2 = blanusa2();
        let decomps = decompose_dot(&b2);
        assert!(!decomps.is_empty());
        let p = petersen();
        // Some variant exhibits the classical structure: both factors are
        // Petersen graphs, hence snarks.
        let classical = decomps.iter().find(|d| d.left_is_snark && d.right_is_snark);
        let d = classical.expect("a snark-snark decomposition of a Blanusa snark exists");
        assert_eq!(d.left.order(), 10);
        assert_eq!(d.right.order(), 10);
        assert!(is_isomorphic(&d.left, &p), "left snark factor is not the Petersen graph");
        assert!(is_isomorphic(&d.right, &p), "right snark factor is not the Petersen graph");
        assert_eq!(d.left_is_hypohamiltonian, Some(true));
        assert_eq!(d.right_is_hypohamiltonian, Some(true));
        // And since Petersen is the only snark on at most 16 vertices, every
        // snark-snark variant is a pair of Petersens.
        for d in decomps.iter().filter(|d| d.left_is_snark && d.right_is_snark) {
            assert!(is_isomorphic(&d.left, &p));
            assert!(is_isomorphic(&d.right, &p));
        }
    }

    #[test]
    fn product_of_petersens_decomposes_back() {
        let p = petersen();
        // ab = edges 0 and 9 of the Petersen graph, independent; x, y = ends
        // of its first edge.
        let (a, b) = p.endpoints(0);
        let (c, d) = p.endpoints(9);
        assert!(a != c && a != d && b != c && b != d);
        let (x, y) = p.endpoints(0);
        let spec =
            DotSpec { g_ab: 0, g_cd: 9, h_x: x, h_y: y, cross_x: false, cross_y: false };
        let prod = dot_product(&p, &p, &spec).unwrap();
        let decomps = decompose_dot(&prod.graph);
        assert!(!decomps.is_empty());
        // The original factor pair is recovered among the variants.
        assert!(decomps
            .iter()
            .any(|d| is_isomorphic(&d.left, &p) && is_isomorphic(&d.right, &p)));
        // Every emitted variant re-multiplies to the input by construction;
        // the wrong stub pairings are distinguished by their flags.
        for d in &decomps {
            if d.left_is_snark && d.right_is_snark {
                assert!(is_isomorphic(&d.left, &p));
                assert!(is_isomorphic(&d.right, &p));
            }
        }
    }
}
