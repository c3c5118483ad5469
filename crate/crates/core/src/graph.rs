//! Immutable simple graphs with a fixed, lexicographically sorted edge list.
//!
//! The type is named for its main inhabitants: all interesting graphs in this
//! crate are cubic. Construction accepts any simple graph, and operations
//! that genuinely need 3-regularity state so via [`CubicGraph::require_cubic`].

use std::fmt;

use thiserror::Error;

/// Vertex identifier; always in `0..n`.
pub type Vertex = u32;

/// Index into the sorted edge list of a [`CubicGraph`].
pub type EdgeId = u32;

/// Errors raised when building or validating a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(Vertex, u32),
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is not cubic: vertex {0} has degree {1}")]
    NotCubic(Vertex, u32),
    #[error("graph is not connected")]
    NotConnected,
}

/// An immutable simple graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically, so an
/// [`EdgeId`] is a stable index into [`CubicGraph::edges`]. Two graphs built
/// from the same edge set always compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    n: u32,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl CubicGraph {
    /// Builds a graph from an edge list.
    ///
    /// Endpoints must lie in `0..n`; loops and duplicate edges are rejected.
    /// Edge order and orientation in the input are irrelevant.
    pub fn from_edges(
        n: u32,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut norm: Vec<(Vertex, Vertex)> = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Self { n, edges: norm, adj })
    }

    /// Number of vertices.
    pub fn order(&self) -> u32 {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> u32 {
        self.edges.len() as u32
    }

    /// The sorted edge list; `EdgeId` indexes into it.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Endpoints of an edge, as `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e as usize]
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.adj[v as usize].len() as u32
    }

    /// The id of edge `{u, v}`, if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| i as EdgeId)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|row| row.len() == 3)
    }

    /// Fails with [`GraphError::NotCubic`] naming an offending vertex.
    pub fn require_cubic(&self) -> Result<(), GraphError> {
        match self.adj.iter().position(|row| row.len() != 3) {
            None => Ok(()),
            Some(v) => Err(GraphError::NotCubic(
                v as Vertex,
                self.adj[v].len() as u32,
            )),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle, or `None` for a forest.
    ///
    /// BFS from every vertex; the first non-tree edge seen from root `r`
    /// closes a shortest cycle through `r` of length `dist[u] + dist[w] + 1`.
    pub fn girth(&self) -> Option<u32> {
        let n = self.n as usize;
        let mut best: Option<u32> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..self.n {
            for d in dist.iter_mut() {
                *d = u32::MAX;
            }
            dist[root as usize] = 0;
            parent[root as usize] = u32::MAX;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // No shorter cycle through root can be found beyond this depth.
                    if 2 * dist[u as usize] + 1 >= b {
                        break 'bfs;
                    }
                }
                for &w in self.neighbors(u) {
                    if w == parent[u as usize] {
                        continue;
                    }
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u as usize] + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else {
                        // Non-tree edge: cycle through the BFS tree.
                        let len = dist[u as usize] + dist[w as usize] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Connected components as sorted vertex lists, sorted by first vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![u32::MAX; self.n as usize];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for s in 0..self.n {
            if comp[s as usize] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            let mut members = vec![s];
            comp[s as usize] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The subgraph induced by `keep` (which may be unsorted), with vertices
    /// renumbered by rank in sorted order. Returns the graph and the map
    /// `new_id -> old_id`.
    pub fn induced(&self, keep: &[Vertex]) -> (CubicGraph, Vec<Vertex>) {
        let mut old_ids: Vec<Vertex> = keep.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        let mut new_id = vec![u32::MAX; self.n as usize];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            let (nu, nv) = (new_id[u as usize], new_id[v as usize]);
            (nu != u32::MAX && nv != u32::MAX).then_some((nu, nv))
        });
        let g = CubicGraph::from_edges(old_ids.len() as u32, edges)
            .expect("induced subgraph of a simple graph is simple");
        (g, old_ids)
    }
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicGraph(n={}, m={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_normalizes_edge_order() {
        let a = CubicGraph::from_edges(4, [(3, 2), (1, 0), (2, 0), (3, 0), (2, 1), (3, 1)]).unwrap();
        assert_eq!(a, k4());
        assert_eq!(a.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            CubicGraph::from_edges(3, [(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange(3, 3)
        );
        assert_eq!(CubicGraph::from_edges(3, [(1, 1)]).unwrap_err(), GraphError::LoopEdge(1));
        assert_eq!(
            CubicGraph::from_edges(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
    }

    #[test]
    fn edge_ids_index_sorted_list() {
        let g = k4();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(i as EdgeId));
            assert_eq!(g.edge_id(v, u), Some(i as EdgeId));
            assert_eq!(g.endpoints(i as EdgeId), (u, v));
        }
        assert_eq!(g.edge_id(0, 0), None);
    }

    #[test]
    fn cubic_checks() {
        assert!(k4().is_cubic());
        assert!(k4().require_cubic().is_ok());
        let path = CubicGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_cubic());
        assert_eq!(path.require_cubic().unwrap_err(), GraphError::NotCubic(0, 1));
    }

    #[test]
    fn girth_small_cases() {
        assert_eq!(k4().girth(), Some(3));
        let c5 = CubicGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(c5.girth(), Some(5));
        let tree = CubicGraph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.girth(), None);
        // K3,3 has girth 4.
        let k33 = CubicGraph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(k33.girth(), Some(4));
    }

    #[test]
    fn components_and_induced() {
        let g = CubicGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let (h, ids) = g.induced(&[5, 3, 4]);
        assert_eq!(ids, vec![3, 4, 5]);
        assert_eq!(h.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(k4().is_connected());
    }
}
