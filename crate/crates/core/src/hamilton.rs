//! Exact search for hamiltonian cycles, hamiltonian paths, and spanning path
//! pairs, plus the derived predicates: hypohamiltonicity and suitable edge
//! pairs.
//!
//! The engine works on edge states (unknown / in / out) over a *view* of the
//! input graph with deleted vertices and forbidden edges removed. One engine
//! covers all three query shapes through per-vertex degree targets: every
//! vertex must end at degree 2, except path endpoints which end at degree 1.
//! Unit propagation applies the degree rules (a vertex at its target excludes
//! its remaining edges; a vertex that can only just reach its target forces
//! them), path fragments are tracked end-to-end so closing a cycle early or
//! joining wrong endpoints fails immediately, and every decision node checks
//! that the surviving edges can still cover each component. Branching picks
//! the vertex with the fewest open edges (ties to the smallest id) and tries
//! its lowest-numbered open edge in, then out. With an unlimited budget,
//! `Ok(None)` is an exhaustive-search guarantee.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{CubicGraph, EdgeId, Vertex};

/// Resource limits for one search. The default is exhaustive.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Self { max_nodes: None, deadline: None }
    }

    pub const fn nodes(max: u64) -> Self {
        Self { max_nodes: Some(max), deadline: None }
    }

    /// Unlimited at desk scale (`n <= 40`), a large finite node cap above,
    /// so pathological inputs terminate with an explicit budget error.
    pub fn for_order(n: u32) -> Self {
        if n <= 40 {
            Self::unlimited()
        } else {
            Self::nodes(2_000_000_000)
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

/// Errors for hamiltonicity queries. `Ok(None)` means an exhaustive "no";
/// budget exhaustion is an error, never a "no".
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("endpoint {0} is deleted")]
    DeletedEndpoint(Vertex),
    #[error("endpoints must be distinct, got {0} twice")]
    OverlappingEndpoints(Vertex),
    #[error("search budget exhausted after {nodes} decision nodes")]
    BudgetExceeded { nodes: u64 },
}

// ---------------------------------------------------------------------------
// View construction
// ---------------------------------------------------------------------------

/// The searched graph: the input minus deleted vertices and forbidden edges,
/// with vertices renumbered contiguously.
struct View {
    /// view vertex -> original vertex
    orig: Vec<Vertex>,
    /// per view vertex: (neighbor view vertex, view edge index)
    adj: Vec<Vec<(u32, u32)>>,
    /// view edge index -> endpoints
    ends: Vec<(u32, u32)>,
}

impl View {
    fn build(
        g: &CubicGraph,
        deleted: &[Vertex],
        forbidden: &[EdgeId],
    ) -> Result<View, HamiltonError> {
        for &v in deleted {
            if v >= g.order() {
                return Err(HamiltonError::VertexOutOfRange(v));
            }
        }
        for &e in forbidden {
            if e >= g.size() {
                return Err(HamiltonError::EdgeOutOfRange(e));
            }
        }
        let mut alive = vec![true; g.order() as usize];
        for &v in deleted {
            alive[v as usize] = false;
        }
        let mut banned = vec![false; g.size() as usize];
        for &e in forbidden {
            banned[e as usize] = true;
        }
        let mut to_view = vec![u32::MAX; g.order() as usize];
        let mut orig = Vec::new();
        for v in 0..g.order() {
            if alive[v as usize] {
                to_view[v as usize] = orig.len() as u32;
                orig.push(v);
            }
        }
        let mut adj = vec![Vec::new(); orig.len()];
        let mut ends = Vec::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if banned[e] || !alive[u as usize] || !alive[v as usize] {
                continue;
            }
            let (vu, vv) = (to_view[u as usize], to_view[v as usize]);
            let idx = ends.len() as u32;
            ends.push((vu, vv));
            adj[vu as usize].push((vv, idx));
            adj[vv as usize].push((vu, idx));
        }
        Ok(View { orig, adj, ends })
    }

    /// View id of an original vertex that survived the deletions.
    fn to_view(&self, v: Vertex) -> Option<u32> {
        // orig is ascending, so binary search maps back.
        self.orig.binary_search(&v).ok().map(|i| i as u32)
    }
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

enum Step {
    Ok,
    Conflict,
    Solved,
}

#[derive(Clone, Copy)]
enum Trail {
    Edge(u32),
    Partner(u32, u32),
    PairClosed(u32),
}

struct Engine<'a> {
    view: &'a View,
    /// target degree per view vertex (1 for path endpoints, else 2)
    target: Vec<u8>,
    /// required end-pairs of the path components (empty for a cycle search)
    pairs: Vec<(u32, u32)>,
    pair_open: Vec<bool>,
    open_pairs: u32,
    estate: Vec<u8>,
    taken: Vec<u8>,
    unknown: Vec<u8>,
    /// other end of the fragment containing v; meaningful at fragment ends
    partner: Vec<u32>,
    in_count: u32,
    need_in: u32,
    trail: Vec<Trail>,
    queue: Vec<u32>,
    nodes: u64,
    budget: Budget,
}

enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

impl<'a> Engine<'a> {
    fn new(view: &'a View, endpoint_pairs: &[(u32, u32)], budget: Budget) -> Engine<'a> {
        let n = view.orig.len();
        let mut target = vec![2u8; n];
        for &(p, q) in endpoint_pairs {
            target[p as usize] = 1;
            target[q as usize] = 1;
        }
        // A spanning cycle has n edges; each path component drops one.
        let need_in = n as u32 - endpoint_pairs.len() as u32;
        let mut unknown = vec![0u8; n];
        for (v, row) in view.adj.iter().enumerate() {
            unknown[v] = row.len() as u8;
        }
        Engine {
            view,
            target,
            pairs: endpoint_pairs.to_vec(),
            pair_open: vec![true; endpoint_pairs.len()],
            open_pairs: endpoint_pairs.len() as u32,
            estate: vec![UNKNOWN; view.ends.len()],
            taken: vec![0; n],
            unknown,
            partner: (0..n as u32).collect(),
            in_count: 0,
            need_in,
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn set_in(&mut self, e: u32) -> Step {
        debug_assert_eq!(self.estate[e as usize], UNKNOWN);
        self.estate[e as usize] = IN;
        self.trail.push(Trail::Edge(e));
        self.in_count += 1;
        let (u, v) = self.view.ends[e as usize];
        let mut over = false;
        for w in [u, v] {
            let w = w as usize;
            self.unknown[w] -= 1;
            self.taken[w] += 1;
            over |= self.taken[w] > self.target[w];
            self.queue.push(w as u32);
        }
        if over {
            return Step::Conflict;
        }
        let (pu, pv) = (self.partner[u as usize], self.partner[v as usize]);
        if pu == v {
            // Closing the fragment u..v into a cycle: only a full hamiltonian
            // cycle (no endpoint pairs) may do this, and only as the last edge.
            return if self.pairs.is_empty() && self.in_count == self.need_in {
                Step::Solved
            } else {
                Step::Conflict
            };
        }
        // Merge the two fragments; their far ends become partners.
        self.trail.push(Trail::Partner(pu, self.partner[pu as usize]));
        self.trail.push(Trail::Partner(pv, self.partner[pv as usize]));
        self.partner[pu as usize] = pv;
        self.partner[pv as usize] = pu;
        if self.target[pu as usize] == 1 && self.target[pv as usize] == 1 {
            // Both fragment ends are path endpoints: the fragment is a whole
            // path component and must match one of the required end-pairs.
            let idx = self.pairs.iter().position(|&(a, b)| {
                (a, b) == (pu, pv) || (a, b) == (pv, pu)
            });
            let Some(idx) = idx else {
                return Step::Conflict;
            };
            debug_assert!(self.pair_open[idx], "endpoints of a closed pair are saturated");
            self.trail.push(Trail::PairClosed(idx as u32));
            self.pair_open[idx] = false;
            self.open_pairs -= 1;
            if self.open_pairs == 0 {
                // The last open path closed; everything must be covered.
                return if self.in_count == self.need_in { Step::Solved } else { Step::Conflict };
            }
        }
        Step::Ok
    }

    fn set_out(&mut self, e: u32) -> Step {
        debug_assert_eq!(self.estate[e as usize], UNKNOWN);
        self.estate[e as usize] = OUT;
        self.trail.push(Trail::Edge(e));
        let (u, v) = self.view.ends[e as usize];
        let mut starved = false;
        for w in [u, v] {
            let w = w as usize;
            self.unknown[w] -= 1;
            starved |= self.taken[w] + self.unknown[w] < self.target[w];
            self.queue.push(w as u32);
        }
        if starved {
            Step::Conflict
        } else {
            Step::Ok
        }
    }

    /// Applies degree forcing from the queued vertices to a fixpoint.
    fn propagate(&mut self) -> Step {
        while let Some(v) = self.queue.pop() {
            let v = v as usize;
            let need = self.target[v];
            if self.taken[v] + self.unknown[v] < need {
                return Step::Conflict;
            }
            if self.unknown[v] == 0 {
                continue;
            }
            if self.taken[v] == need {
                // Saturated: exclude the remaining edges.
                for i in 0..self.view.adj[v].len() {
                    let (_, e) = self.view.adj[v][i];
                    if self.estate[e as usize] == UNKNOWN {
                        match self.set_out(e) {
                            Step::Ok => {}
                            s => return s,
                        }
                    }
                }
            } else if self.taken[v] + self.unknown[v] == need {
                // Tight: every open edge is required.
                for i in 0..self.view.adj[v].len() {
                    let (_, e) = self.view.adj[v][i];
                    if self.estate[e as usize] == UNKNOWN {
                        match self.set_in(e) {
                            Step::Ok => {}
                            s => return s,
                        }
                    }
                }
            }
        }
        Step::Ok
    }

    /// Component feasibility over the surviving (non-excluded) edges.
    ///
    /// For a cycle search the whole view must be one component. With endpoint
    /// pairs, the final structure may legitimately be disconnected, but each
    /// component holding a vertex that still needs edges must fully contain
    /// at least one open end-pair (a path cannot cross components), and both
    /// ends of every open pair must share a component.
    fn feasible_components(&self, comp: &mut [u32], stack: &mut Vec<u32>) -> bool {
        let n = self.view.orig.len();
        comp[..n].fill(u32::MAX);
        let mut ncomp = 0u32;
        for s in 0..n as u32 {
            if comp[s as usize] != u32::MAX {
                continue;
            }
            comp[s as usize] = ncomp;
            stack.clear();
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, e) in &self.view.adj[v as usize] {
                    if self.estate[e as usize] != OUT && comp[w as usize] == u32::MAX {
                        comp[w as usize] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        if self.pairs.is_empty() {
            return ncomp <= 1;
        }
        // Open pairs must not straddle components.
        for (i, &(p, q)) in self.pairs.iter().enumerate() {
            if self.pair_open[i] && comp[p as usize] != comp[q as usize] {
                return false;
            }
        }
        // Components with unsatisfied vertices must host an open pair.
        let mut has_open_pair = vec![false; ncomp as usize];
        for (i, &(p, _)) in self.pairs.iter().enumerate() {
            if self.pair_open[i] {
                has_open_pair[comp[p as usize] as usize] = true;
            }
        }
        (0..n).all(|v| self.taken[v] == self.target[v] || has_open_pair[comp[v] as usize])
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::Edge(e) => {
                    let (u, v) = self.view.ends[e as usize];
                    if self.estate[e as usize] == IN {
                        self.in_count -= 1;
                        for w in [u, v] {
                            self.taken[w as usize] -= 1;
                            self.unknown[w as usize] += 1;
                        }
                    } else {
                        for w in [u, v] {
                            self.unknown[w as usize] += 1;
                        }
                    }
                    self.estate[e as usize] = UNKNOWN;
                }
                Trail::Partner(v, old) => self.partner[v as usize] = old,
                Trail::PairClosed(idx) => {
                    self.pair_open[idx as usize] = true;
                    self.open_pairs += 1;
                }
            }
        }
    }

    /// The branch vertex: fewest open edges among vertices below target,
    /// ties to the smallest view id. `None` when no vertex needs edges.
    fn pick_vertex(&self) -> Option<usize> {
        let mut best: Option<(u8, usize)> = None;
        for v in 0..self.view.orig.len() {
            if self.taken[v] < self.target[v] && self.unknown[v] > 0 {
                let key = (self.unknown[v], v);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, v)| v)
    }

    fn search(&mut self, comp: &mut [u32], stack: &mut Vec<u32>) -> Outcome {
        self.nodes += 1;
        if let Some(cap) = self.budget.max_nodes {
            if self.nodes > cap {
                return Outcome::Aborted;
            }
        }
        if let Some(deadline) = self.budget.deadline {
            if self.nodes.is_multiple_of(65_536) && Instant::now() > deadline {
                return Outcome::Aborted;
            }
        }
        match self.propagate() {
            Step::Conflict => return Outcome::Exhausted,
            Step::Solved => return Outcome::Found,
            Step::Ok => {}
        }
        let Some(v) = self.pick_vertex() else {
            // Every vertex at target without a Solved step only happens on
            // the empty instance.
            return if self.in_count == self.need_in { Outcome::Found } else { Outcome::Exhausted };
        };
        if !self.feasible_components(comp, stack) {
            return Outcome::Exhausted;
        }
        let e = self.view.adj[v]
            .iter()
            .filter(|&&(_, e)| self.estate[e as usize] == UNKNOWN)
            .map(|&(_, e)| e)
            .min()
            .expect("picked vertex has an open edge");

        for include in [true, false] {
            let mark = self.trail.len();
            self.queue.clear();
            let step = if include { self.set_in(e) } else { self.set_out(e) };
            match step {
                Step::Solved => return Outcome::Found,
                Step::Conflict => {}
                Step::Ok => match self.search(comp, stack) {
                    Outcome::Found => return Outcome::Found,
                    Outcome::Aborted => return Outcome::Aborted,
                    Outcome::Exhausted => {}
                },
            }
            self.rollback(mark);
        }
        self.queue.clear();
        Outcome::Exhausted
    }

    fn run(&mut self) -> Outcome {
        // Infeasible degree targets (isolated or pendant interior vertices)
        // surface during the initial propagation pass.
        for v in 0..self.view.orig.len() as u32 {
            self.queue.push(v);
        }
        let mut comp = vec![u32::MAX; self.view.orig.len()];
        let mut stack = Vec::with_capacity(self.view.orig.len());
        self.search(&mut comp, &mut stack)
    }

    /// Follows In edges from `from` to the end of its fragment (or around the
    /// cycle), returning the walk in original vertex ids.
    fn walk_from(&self, from: u32) -> Vec<Vertex> {
        let mut seq = vec![self.view.orig[from as usize]];
        let mut prev = u32::MAX;
        let mut cur = from;
        loop {
            let next = self.view.adj[cur as usize]
                .iter()
                .find(|&&(w, e)| self.estate[e as usize] == IN && w != prev && w != from);
            match next {
                Some(&(w, _)) => {
                    seq.push(self.view.orig[w as usize]);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        seq
    }
}

// ---------------------------------------------------------------------------
// Public queries
// ---------------------------------------------------------------------------

/// A hamiltonian cycle, listed once per vertex; the closing edge from the
/// last vertex back to the first is implicit.
pub fn hamiltonian_cycle(
    g: &CubicGraph,
    budget: Budget,
) -> Result<Option<Vec<Vertex>>, HamiltonError> {
    hamiltonian_cycle_avoiding(g, &[], &[], budget)
}

/// Hamiltonian cycle of `g` minus `deleted` vertices and `forbidden` edges.
pub fn hamiltonian_cycle_avoiding(
    g: &CubicGraph,
    deleted: &[Vertex],
    forbidden: &[EdgeId],
    budget: Budget,
) -> Result<Option<Vec<Vertex>>, HamiltonError> {
    let view = View::build(g, deleted, forbidden)?;
    if view.orig.len() < 3 {
        return Ok(None);
    }
    let mut engine = Engine::new(&view, &[], budget);
    match engine.run() {
        Outcome::Found => {
            let cycle = engine.walk_from(0);
            debug_assert_eq!(cycle.len(), view.orig.len());
            Ok(Some(cycle))
        }
        Outcome::Exhausted => Ok(None),
        Outcome::Aborted => Err(HamiltonError::BudgetExceeded { nodes: engine.nodes }),
    }
}

/// A hamiltonian path of `g - deleted - forbidden` from `s` to `t`.
pub fn hamiltonian_path(
    g: &CubicGraph,
    s: Vertex,
    t: Vertex,
    deleted: &[Vertex],
    forbidden: &[EdgeId],
    budget: Budget,
) -> Result<Option<Vec<Vertex>>, HamiltonError> {
    if s == t {
        return Err(HamiltonError::OverlappingEndpoints(s));
    }
    for v in [s, t] {
        if v >= g.order() {
            return Err(HamiltonError::VertexOutOfRange(v));
        }
        if deleted.contains(&v) {
            return Err(HamiltonError::DeletedEndpoint(v));
        }
    }
    let view = View::build(g, deleted, forbidden)?;
    let vs = view.to_view(s).expect("endpoint survives");
    let vt = view.to_view(t).expect("endpoint survives");
    let mut engine = Engine::new(&view, &[(vs, vt)], budget);
    match engine.run() {
        Outcome::Found => {
            let path = engine.walk_from(vs);
            debug_assert_eq!(path.len(), view.orig.len());
            debug_assert_eq!(path.first(), Some(&s));
            debug_assert_eq!(path.last(), Some(&t));
            Ok(Some(path))
        }
        Outcome::Exhausted => Ok(None),
        Outcome::Aborted => Err(HamiltonError::BudgetExceeded { nodes: engine.nodes }),
    }
}

/// Two vertex-disjoint paths, one with endpoints `ab.0, ab.1` and one with
/// endpoints `cd.0, cd.1`, that together cover every vertex of
/// `g - forbidden`. The endpoint assignment is exact: a witness pairing
/// `ab.0` with `cd.0` does not count.
#[allow(clippy::type_complexity)]
pub fn spanning_path_pair(
    g: &CubicGraph,
    ab: (Vertex, Vertex),
    cd: (Vertex, Vertex),
    forbidden: &[EdgeId],
    budget: Budget,
) -> Result<Option<(Vec<Vertex>, Vec<Vertex>)>, HamiltonError> {
    let terms = [ab.0, ab.1, cd.0, cd.1];
    for &v in &terms {
        if v >= g.order() {
            return Err(HamiltonError::VertexOutOfRange(v));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if terms[i] == terms[j] {
                return Err(HamiltonError::OverlappingEndpoints(terms[i]));
            }
        }
    }
    let view = View::build(g, &[], forbidden)?;
    let vv = |v: Vertex| view.to_view(v).expect("no deletions");
    let pairs = [(vv(ab.0), vv(ab.1)), (vv(cd.0), vv(cd.1))];
    let mut engine = Engine::new(&view, &pairs, budget);
    match engine.run() {
        Outcome::Found => {
            let walk = |want: (Vertex, Vertex)| {
                let p = engine.walk_from(vv(want.0));
                debug_assert_eq!(p.first(), Some(&want.0));
                debug_assert_eq!(p.last(), Some(&want.1));
                p
            };
            let (p1, p2) = (walk(ab), walk(cd));
            debug_assert_eq!(p1.len() + p2.len(), view.orig.len());
            Ok(Some((p1, p2)))
        }
        Outcome::Exhausted => Ok(None),
        Outcome::Aborted => Err(HamiltonError::BudgetExceeded { nodes: engine.nodes }),
    }
}

// ---------------------------------------------------------------------------
// Hypohamiltonicity
// ---------------------------------------------------------------------------

/// Outcome of a hypohamiltonicity test.
#[derive(Clone, Debug)]
pub enum HypoVerdict {
    /// Not hamiltonian, and `cycles[v]` is a hamiltonian cycle of `g - v`.
    Hypohamiltonian { cycles: Vec<Vec<Vertex>> },
    /// The graph itself has a hamiltonian cycle.
    Hamiltonian { cycle: Vec<Vertex> },
    /// `g - v` has no hamiltonian cycle for the given (smallest) `v`.
    NotHamiltonianAt { v: Vertex },
}

impl HypoVerdict {
    pub fn is_hypo(&self) -> bool {
        matches!(self, HypoVerdict::Hypohamiltonian { .. })
    }
}

/// Tests hypohamiltonicity: `g` has no hamiltonian cycle, but `g - v` has one
/// for every vertex `v`. Vertex deletions are checked in parallel; the
/// verdict is deterministic (smallest failing vertex wins).
pub fn is_hypohamiltonian(g: &CubicGraph, budget: Budget) -> Result<HypoVerdict, HamiltonError> {
    if let Some(cycle) = hamiltonian_cycle(g, budget)? {
        return Ok(HypoVerdict::Hamiltonian { cycle });
    }
    let results: Vec<Result<Option<Vec<Vertex>>, HamiltonError>> = (0..g.order())
        .into_par_iter()
        .map(|v| hamiltonian_cycle_avoiding(g, &[v], &[], budget))
        .collect();
    let mut cycles = Vec::with_capacity(g.order() as usize);
    for (v, r) in results.into_iter().enumerate() {
        match r? {
            Some(c) => cycles.push(c),
            None => return Ok(HypoVerdict::NotHamiltonianAt { v: v as Vertex }),
        }
    }
    Ok(HypoVerdict::Hypohamiltonian { cycles })
}

// ---------------------------------------------------------------------------
// Suitable edge pairs
// ---------------------------------------------------------------------------

/// Which of the two tested edges a per-vertex witness path connects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GoodSide {
    Ab,
    Cd,
}

/// Witness that one tested edge's endpoints are joined by a hamiltonian path
/// of `g - {v, ab, cd}`.
#[derive(Clone, Debug, Serialize)]
pub struct VertexWitness {
    pub v: Vertex,
    pub side: GoodSide,
    pub path: Vec<Vertex>,
}

/// A pair of independent edges satisfying both suitability conditions, with
/// full witnesses.
///
/// With `ab = (a, b)` and `cd = (c, d)`, suitability of the pair in a
/// non-hamiltonian `g` demands, writing `g' = g - {ab, cd}`:
///
/// 1. hamiltonian paths of `g'` for all four endpoint choices `(a,c)`,
///    `(a,d)`, `(b,c)`, `(b,d)`, and two disjoint paths with endpoints
///    `a,b` and `c,d` that together span `g'`;
/// 2. for every vertex `v`, a hamiltonian path of `g' - v` whose endpoints
///    are `a,b` or `c,d`.
///
/// A dot product along such a pair with any hypohamiltonian cubic graph is
/// hypohamiltonian again.
#[derive(Clone, Debug, Serialize)]
pub struct SuitablePair {
    pub ab: EdgeId,
    pub cd: EdgeId,
    /// Paths for `(a,c)`, `(a,d)`, `(b,c)`, `(b,d)` in that order.
    pub cross_paths: [Vec<Vertex>; 4],
    pub spanning_pair: (Vec<Vertex>, Vec<Vertex>),
    /// One witness per vertex of `g`, ascending.
    pub per_vertex: Vec<VertexWitness>,
}

/// Error for suitability search on a hamiltonian input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuitableError {
    #[error("graph is hamiltonian; suitable pairs are defined for non-hamiltonian graphs")]
    HamiltonianInput,
    #[error(transparent)]
    Hamilton(#[from] HamiltonError),
}

fn check_pair(
    g: &CubicGraph,
    ab: EdgeId,
    cd: EdgeId,
    budget: Budget,
) -> Result<Option<SuitablePair>, HamiltonError> {
    let (a, b) = g.endpoints(ab);
    let (c, d) = g.endpoints(cd);
    let forb = [ab, cd];

    // Condition (ii) first: its counterexample vertex is usually found
    // early, so unsuitable pairs die cheaply.
    let mut per_vertex = Vec::with_capacity(g.order() as usize);
    for v in 0..g.order() {
        let try_ab = if v != a && v != b {
            hamiltonian_path(g, a, b, &[v], &forb, budget)?
        } else {
            None
        };
        let witness = match try_ab {
            Some(path) => VertexWitness { v, side: GoodSide::Ab, path },
            None => {
                let try_cd = if v != c && v != d {
                    hamiltonian_path(g, c, d, &[v], &forb, budget)?
                } else {
                    None
                };
                match try_cd {
                    Some(path) => VertexWitness { v, side: GoodSide::Cd, path },
                    None => return Ok(None),
                }
            }
        };
        per_vertex.push(witness);
    }

    let mut cross_paths: [Vec<Vertex>; 4] = Default::default();
    for (slot, (s, t)) in [(a, c), (a, d), (b, c), (b, d)].into_iter().enumerate() {
        match hamiltonian_path(g, s, t, &[], &forb, budget)? {
            Some(p) => cross_paths[slot] = p,
            None => return Ok(None),
        }
    }
    let Some(spanning) = spanning_path_pair(g, (a, b), (c, d), &forb, budget)? else {
        return Ok(None);
    };

    Ok(Some(SuitablePair {
        ab,
        cd,
        cross_paths,
        spanning_pair: spanning,
        per_vertex,
    }))
}

/// Tests one candidate edge pair for suitability, returning the full
/// witness bundle when it qualifies.
///
/// The edges must be distinct and share no endpoint.
pub fn check_suitable_pair(
    g: &CubicGraph,
    ab: EdgeId,
    cd: EdgeId,
    budget: Budget,
) -> Result<Option<SuitablePair>, HamiltonError> {
    let m = g.size();
    if ab >= m || cd >= m {
        return Err(HamiltonError::EdgeOutOfRange(ab.max(cd)));
    }
    let (a, b) = g.endpoints(ab);
    let (c, d) = g.endpoints(cd);
    for v in [a, b] {
        if ab == cd || v == c || v == d {
            return Err(HamiltonError::OverlappingEndpoints(v));
        }
    }
    check_pair(g, ab, cd, budget)
}

/// All suitable edge pairs of a non-hamiltonian graph, sorted by edge ids.
///
/// Pairs are examined in parallel; output order and content are independent
/// of thread scheduling.
pub fn find_suitable_pairs(
    g: &CubicGraph,
    budget: Budget,
) -> Result<Vec<SuitablePair>, SuitableError> {
    if hamiltonian_cycle(g, budget)?.is_some() {
        return Err(SuitableError::HamiltonianInput);
    }
    let m = g.size();
    let mut candidates = Vec::new();
    for i in 0..m {
        let (a, b) = g.endpoints(i);
        for j in i + 1..m {
            let (c, d) = g.endpoints(j);
            if a != c && a != d && b != c && b != d {
                candidates.push((i, j));
            }
        }
    }
    let results: Vec<Result<Option<SuitablePair>, HamiltonError>> = candidates
        .par_iter()
        .map(|&(i, j)| check_pair(g, i, j, budget))
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(pair) = r? {
            out.push(pair);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::petersen;
    use crate::graph::CubicGraph;

    fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn check_cycle(g: &CubicGraph, cycle: &[Vertex]) {
        assert_eq!(cycle.len(), g.order() as usize);
        let mut seen = vec![false; g.order() as usize];
        for &v in cycle {
            assert!(!seen[v as usize], "repeated vertex {v}");
            seen[v as usize] = true;
        }
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            assert!(g.has_edge(u, v), "missing edge ({u},{v})");
        }
    }

    #[test]
    fn k4_is_hamiltonian() {
        let c = hamiltonian_cycle(&k4(), Budget::unlimited()).unwrap().unwrap();
        check_cycle(&k4(), &c);
    }

    #[test]
    fn petersen_is_hypohamiltonian() {
        let p = petersen();
        assert!(hamiltonian_cycle(&p, Budget::unlimited()).unwrap().is_none());
        let verdict = is_hypohamiltonian(&p, Budget::unlimited()).unwrap();
        match verdict {
            HypoVerdict::Hypohamiltonian { cycles } => {
                for (v, cycle) in cycles.iter().enumerate() {
                    assert_eq!(cycle.len(), 9);
                    assert!(!cycle.contains(&(v as Vertex)));
                }
            }
            other => panic!("expected hypohamiltonian, got {other:?}"),
        }
    }

    #[test]
    fn k4_fails_hypo_with_hamiltonian_witness() {
        match is_hypohamiltonian(&k4(), Budget::unlimited()).unwrap() {
            HypoVerdict::Hamiltonian { cycle } => check_cycle(&k4(), &cycle),
            other => panic!("expected hamiltonian, got {other:?}"),
        }
    }

    #[test]
    fn path_query_basics() {
        let p = petersen();
        // Petersen is maximally non-hamiltonian: every pair of non-adjacent
        // vertices is joined by a hamiltonian path...
        let path = hamiltonian_path(&p, 0, 2, &[], &[], Budget::unlimited()).unwrap().unwrap();
        assert_eq!(path.len(), 10);
        assert_eq!(path[0], 0);
        assert_eq!(path[9], 2);
        for w in path.windows(2) {
            assert!(p.has_edge(w[0], w[1]));
        }
        // ...while adjacent endpoints would close into a hamiltonian cycle,
        // so no such path can exist.
        assert!(hamiltonian_path(&p, 0, 1, &[], &[], Budget::unlimited()).unwrap().is_none());
        // Argument validation.
        assert_eq!(
            hamiltonian_path(&p, 3, 3, &[], &[], Budget::unlimited()).unwrap_err(),
            HamiltonError::OverlappingEndpoints(3)
        );
        assert_eq!(
            hamiltonian_path(&p, 0, 1, &[1], &[], Budget::unlimited()).unwrap_err(),
            HamiltonError::DeletedEndpoint(1)
        );
        assert_eq!(
            hamiltonian_path(&p, 0, 99, &[], &[], Budget::unlimited()).unwrap_err(),
            HamiltonError::VertexOutOfRange(99)
        );
        assert_eq!(
            hamiltonian_path(&p, 0, 1, &[], &[99], Budget::unlimited()).unwrap_err(),
            HamiltonError::EdgeOutOfRange(99)
        );
    }

    #[test]
    fn two_vertex_path_is_the_edge() {
        let g = CubicGraph::from_edges(2, [(0, 1)]).unwrap();
        let path = hamiltonian_path(&g, 1, 0, &[], &[], Budget::unlimited()).unwrap().unwrap();
        assert_eq!(path, vec![1, 0]);
        let g2 = CubicGraph::from_edges(2, []).unwrap();
        assert!(hamiltonian_path(&g2, 1, 0, &[], &[], Budget::unlimited()).unwrap().is_none());
    }

    #[test]
    fn budget_aborts_are_reported() {
        let p = petersen();
        let err = hamiltonian_cycle(&p, Budget::nodes(1)).unwrap_err();
        assert!(matches!(err, HamiltonError::BudgetExceeded { .. }));
    }

    #[test]
    fn spanning_pair_respects_endpoint_assignment() {
        // On the 6-ring, splitting into paths with endpoint sets {0,1},{3,4}
        // is impossible (vertices 2 and 5 would be stranded), but endpoint
        // sets {2,5},{3,4} split it as 2,1,0,5 | 3,4.
        let c6 = CubicGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let none = spanning_path_pair(&c6, (0, 1), (3, 4), &[], Budget::unlimited()).unwrap();
        assert!(none.is_none());
        let some = spanning_path_pair(&c6, (2, 5), (3, 4), &[], Budget::unlimited()).unwrap();
        let (p1, p2) = some.unwrap();
        assert_eq!((p1[0], *p1.last().unwrap()), (2, 5));
        assert_eq!((p2[0], *p2.last().unwrap()), (3, 4));
        assert_eq!(p1.len() + p2.len(), 6);
    }

    #[test]
    fn spanning_pair_rejects_shared_endpoints() {
        let p = petersen();
        assert_eq!(
            spanning_path_pair(&p, (0, 1), (1, 2), &[], Budget::unlimited()).unwrap_err(),
            HamiltonError::OverlappingEndpoints(1)
        );
    }

    #[test]
    fn petersen_has_no_suitable_pair() {
        let pairs = find_suitable_pairs(&petersen(), Budget::unlimited()).unwrap();
        assert!(pairs.is_empty());
    }

    #[test]
    fn suitable_rejects_hamiltonian_input() {
        assert_eq!(
            find_suitable_pairs(&k4(), Budget::unlimited()).unwrap_err(),
            SuitableError::HamiltonianInput
        );
    }
}
