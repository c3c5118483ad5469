//! Edge connectivity and cyclic edge connectivity.
//!
//! The cyclic edge connectivity of a graph is the smallest number of edges
//! whose removal leaves at least two components that each contain a cycle;
//! it is undefined for graphs without two vertex-disjoint cycles.
//!
//! The computation rests on two facts about graphs of maximum degree 3:
//!
//! * A minimum cyclic edge cut is an independent edge set. If a vertex met
//!   two cut edges, it would keep at most one edge into its own side, so it
//!   would lie on no cycle there, and moving it across the cut would give a
//!   strictly smaller cyclic cut.
//! * The boundary of a chordless cycle whose complement still contains a
//!   cycle is a cyclic cut, so a shortest cycle (always chordless) with a
//!   cyclic complement gives an upper bound.
//!
//! Together these make the search exact: enumerate independent edge sets of
//! size `k = 0, 1, ...` below the upper bound and test whether removing one
//! leaves two cyclic components; the first hit is a minimum cyclic cut, and
//! if none exists below the bound, the shortest-cycle boundary is minimum.

use rayon::prelude::*;

use crate::graph::{CubicGraph, EdgeId, Vertex};

/// A witness for the cyclic edge connectivity: a minimum cyclic edge cut
/// together with the vertex sets it separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCut {
    pub connectivity: u32,
    /// Edge ids of a minimum cyclic edge cut, ascending.
    pub cut: Vec<EdgeId>,
    /// `sides.0` is one cycle-containing component of the cut graph;
    /// `sides.1` is the rest of the graph. Both ascending.
    pub sides: (Vec<Vertex>, Vec<Vertex>),
}

// ---------------------------------------------------------------------------
// Plain edge connectivity
// ---------------------------------------------------------------------------

/// Number of edge-disjoint paths between `s` and `t` (unit-capacity max
/// flow), equal to the smallest edge cut separating them.
pub fn local_edge_connectivity(g: &CubicGraph, s: Vertex, t: Vertex) -> u32 {
    assert!(s < g.order() && t < g.order() && s != t);
    // cap[e] = (remaining capacity u->v, remaining v->u) for edge e = (u, v)
    let mut cap = vec![(1u8, 1u8); g.size() as usize];
    let mut flow = 0;
    let mut prev: Vec<Option<(Vertex, EdgeId)>> = vec![None; g.order() as usize];
    loop {
        prev.fill(None);
        prev[s as usize] = Some((s, EdgeId::MAX));
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                let e = g.edge_id(v, w).unwrap();
                let (a, _) = g.endpoints(e);
                let fwd = if v == a { cap[e as usize].0 } else { cap[e as usize].1 };
                if fwd > 0 && prev[w as usize].is_none() {
                    prev[w as usize] = Some((v, e));
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if prev[t as usize].is_none() {
            return flow;
        }
        let mut v = t;
        while v != s {
            let (u, e) = prev[v as usize].unwrap();
            let (a, _) = g.endpoints(e);
            if u == a {
                cap[e as usize].0 -= 1;
                cap[e as usize].1 += 1;
            } else {
                cap[e as usize].1 -= 1;
                cap[e as usize].0 += 1;
            }
            v = u;
        }
        flow += 1;
    }
}

/// Global edge connectivity; 0 for disconnected graphs and graphs on fewer
/// than two vertices.
pub fn edge_connectivity(g: &CubicGraph) -> u32 {
    if g.order() < 2 {
        return 0;
    }
    (1..g.order())
        .map(|t| local_edge_connectivity(g, 0, t))
        .min()
        .unwrap()
}

// ---------------------------------------------------------------------------
// Cyclic edge connectivity
// ---------------------------------------------------------------------------

struct CutSpace {
    /// visited-epoch per vertex
    mark: Vec<u64>,
    epoch: u64,
    stack: Vec<Vertex>,
    banned: Vec<bool>,
}

impl CutSpace {
    fn new(g: &CubicGraph) -> CutSpace {
        CutSpace {
            mark: vec![0; g.order() as usize],
            epoch: 0,
            stack: Vec::with_capacity(g.order() as usize),
            banned: vec![false; g.size() as usize],
        }
    }

    /// Does removing the banned edges leave at least two components that
    /// each contain a cycle? On success returns one cyclic component.
    fn two_cyclic_components(&mut self, g: &CubicGraph) -> Option<Vec<Vertex>> {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut first: Option<Vec<Vertex>> = None;
        for root in 0..g.order() {
            if self.mark[root as usize] == epoch {
                continue;
            }
            self.mark[root as usize] = epoch;
            self.stack.clear();
            self.stack.push(root);
            let mut vertices = Vec::new();
            let mut half_edges = 0u32;
            while let Some(v) = self.stack.pop() {
                vertices.push(v);
                for &w in g.neighbors(v) {
                    let e = g.edge_id(v, w).unwrap();
                    if self.banned[e as usize] {
                        continue;
                    }
                    half_edges += 1;
                    if self.mark[w as usize] != epoch {
                        self.mark[w as usize] = epoch;
                        self.stack.push(w);
                    }
                }
            }
            // A connected component contains a cycle iff edges >= vertices.
            if half_edges / 2 >= vertices.len() as u32 {
                match first {
                    None => first = Some(vertices),
                    Some(side) => return Some(side),
                }
            }
        }
        None
    }
}

fn make_cut(g: &CubicGraph, mut side: Vec<Vertex>) -> CyclicCut {
    side.sort_unstable();
    let inside = |v: Vertex| side.binary_search(&v).is_ok();
    let mut cut = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if inside(u) != inside(v) {
            cut.push(e as EdgeId);
        }
    }
    let rest: Vec<Vertex> = (0..g.order()).filter(|&v| !inside(v)).collect();
    CyclicCut { connectivity: cut.len() as u32, cut, sides: (side, rest) }
}

/// Depth-first enumeration of independent edge `k`-subsets extending
/// `chosen`, lexicographic, testing each completed subset.
fn extend(
    g: &CubicGraph,
    k: usize,
    from: u32,
    chosen: &mut Vec<EdgeId>,
    space: &mut CutSpace,
) -> Option<Vec<Vertex>> {
    if chosen.len() == k {
        return space.two_cyclic_components(g);
    }
    for e in from..g.size() {
        let (u, v) = g.endpoints(e);
        let independent = chosen.iter().all(|&f| {
            let (a, b) = g.endpoints(f);
            u != a && u != b && v != a && v != b
        });
        if !independent {
            continue;
        }
        chosen.push(e);
        space.banned[e as usize] = true;
        let hit = extend(g, k, e + 1, chosen, space);
        space.banned[e as usize] = false;
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// The smallest cyclic edge cut of size at most `max_k`, or `None` if every
/// edge set of that size fails (exhaustive). Because minimum cyclic cuts are
/// independent edge sets, only those are enumerated.
pub fn cyclic_cut_within(g: &CubicGraph, max_k: u32) -> Option<CyclicCut> {
    // k = 0: the graph is already disconnected with two cyclic components.
    let mut space = CutSpace::new(g);
    if let Some(side) = space.two_cyclic_components(g) {
        return Some(make_cut(g, side));
    }
    for k in 1..=max_k.min(g.size()) {
        let hit = (0..g.size()).into_par_iter().find_map_first(|e0| {
            let mut space = CutSpace::new(g);
            let mut chosen = vec![e0];
            space.banned[e0 as usize] = true;
            extend(g, k as usize, e0 + 1, &mut chosen, &mut space)
        });
        if let Some(side) = hit {
            let cut = make_cut(g, side);
            debug_assert_eq!(cut.connectivity, k);
            return Some(cut);
        }
    }
    None
}

/// Shortest cycle of the graph as a vertex sequence, via breadth-first
/// search from every root. Shortest cycles are chordless.
pub fn shortest_cycle(g: &CubicGraph) -> Option<Vec<Vertex>> {
    let n = g.order() as usize;
    let mut best: Option<Vec<Vertex>> = None;
    let mut best_len = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut on_path = vec![false; n];
    for root in 0..g.order() {
        dist.fill(u32::MAX);
        dist[root as usize] = 0;
        parent[root as usize] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v as usize] + 1 >= best_len {
                break;
            }
            for &w in g.neighbors(v) {
                if w == parent[v as usize] {
                    continue;
                }
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    parent[w as usize] = v;
                    queue.push_back(w);
                } else {
                    // Non-tree edge (v, w): walk both vertices to the root,
                    // splice at the first shared vertex.
                    let mut pv = Vec::new();
                    let mut x = v;
                    loop {
                        pv.push(x);
                        on_path[x as usize] = true;
                        if x == root {
                            break;
                        }
                        x = parent[x as usize];
                    }
                    let mut pw = Vec::new();
                    let mut y = w;
                    while !on_path[y as usize] {
                        pw.push(y);
                        y = parent[y as usize];
                    }
                    let meet = y;
                    for &x in &pv {
                        on_path[x as usize] = false;
                    }
                    let mut cycle: Vec<Vertex> =
                        pv.iter().copied().take_while(|&x| x != meet).collect();
                    cycle.push(meet);
                    cycle.extend(pw.iter().rev());
                    if (cycle.len() as u32) < best_len && cycle.len() >= 3 {
                        best_len = cycle.len() as u32;
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

/// Does `g` minus the given vertices still contain a cycle?
fn has_cycle_avoiding(g: &CubicGraph, avoid: &[Vertex]) -> bool {
    let n = g.order() as usize;
    let mut banned = vec![false; n];
    for &v in avoid {
        banned[v as usize] = true;
    }
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for root in 0..g.order() {
        if banned[root as usize] || seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        stack.push(root);
        let mut vertices = 0u32;
        let mut half_edges = 0u32;
        while let Some(v) = stack.pop() {
            vertices += 1;
            for &w in g.neighbors(v) {
                if banned[w as usize] {
                    continue;
                }
                half_edges += 1;
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if half_edges / 2 >= vertices {
            return true;
        }
    }
    false
}

/// Calls `f` with every chordless cycle of length at most `max_len`, each
/// cycle once, as a vertex sequence starting at its smallest vertex.
fn for_each_induced_cycle(g: &CubicGraph, max_len: usize, f: &mut dyn FnMut(&[Vertex])) {
    let n = g.order() as usize;
    let mut in_path = vec![false; n];
    let mut path: Vec<Vertex> = Vec::new();

    fn rec(
        g: &CubicGraph,
        max_len: usize,
        path: &mut Vec<Vertex>,
        in_path: &mut Vec<bool>,
        f: &mut dyn FnMut(&[Vertex]),
    ) {
        let root = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w <= root || in_path[w as usize] {
                continue;
            }
            // The path must stay chordless: w may touch the path only at
            // `last`, except for the closing edge back to the root.
            let closes = g.has_edge(w, root);
            let chord = path.len() >= 2
                && path[1..path.len() - 1].iter().any(|&x| g.has_edge(w, x));
            if chord {
                continue;
            }
            if closes && path.len() >= 2 {
                // Report each cycle in one orientation only.
                if path[1] < w {
                    path.push(w);
                    f(path);
                    path.pop();
                }
                continue;
            }
            if path.len() < max_len - 1 {
                path.push(w);
                in_path[w as usize] = true;
                rec(g, max_len, path, in_path, f);
                in_path[w as usize] = false;
                path.pop();
            }
        }
    }

    if max_len < 3 {
        return;
    }
    for root in 0..g.order() {
        path.clear();
        path.push(root);
        in_path[root as usize] = true;
        rec(g, max_len, &mut path, &mut in_path, f);
        in_path[root as usize] = false;
    }
}

/// Cyclic edge connectivity with a minimum-cut witness, or `None` when the
/// graph has no two vertex-disjoint cycles (the quantity is undefined).
pub fn cyclic_edge_connectivity(g: &CubicGraph) -> Option<CyclicCut> {
    let z = shortest_cycle(g)?;
    let upper_side = if has_cycle_avoiding(g, &z) {
        z
    } else {
        // The shortest cycle's complement is a forest, which only happens on
        // very small graphs: hunt for any chordless cycle whose complement
        // still contains a cycle. If there is none, no two vertex-disjoint
        // cycles exist at all (one of any such pair can be shrunk to a
        // chordless cycle whose complement keeps the other).
        let mut found: Option<Vec<Vertex>> = None;
        for_each_induced_cycle(g, g.order() as usize, &mut |cycle| {
            let better = found.as_ref().is_none_or(|b| cycle.len() < b.len());
            if better && has_cycle_avoiding(g, cycle) {
                found = Some(cycle.to_vec());
            }
        });
        found?
    };
    let upper = make_cut(g, upper_side);
    if upper.connectivity == 0 {
        return Some(upper);
    }
    match cyclic_cut_within(g, upper.connectivity - 1) {
        Some(cut) => Some(cut),
        None => Some(upper),
    }
}
