//! Immutable graph storage: a flat twin half-edge sequence with contiguous
//! per-vertex adjacency ranges.
//!
//! Every undirected edge is stored twice, once per direction. The two copies
//! point at each other through `twin`, carry identical travel time and weight,
//! and live in the adjacency range of their respective start vertex. The
//! topology is frozen at build time; all mutable per-run data (labels,
//! statuses, remaining times) lives in the solver state.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index into the vertex sequence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct VertexId(pub u32);

/// Index into the half-edge sequence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct HalfEdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl HalfEdgeId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for HalfEdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Static part of a half-edge record: orientation, passage parameters and the
/// location of the same edge stored in the opposite direction.
#[derive(Clone, Copy, Debug)]
pub struct HalfEdgeTopo {
    pub start: VertexId,
    pub end: VertexId,
    /// Travel time over the edge (positive).
    pub travel_time: u32,
    /// Quality lost by water crossing the edge (positive).
    pub weight: u32,
    pub twin: HalfEdgeId,
}

/// Immutable undirected graph in twin half-edge layout.
#[derive(Clone, Debug)]
pub struct Graph {
    n: u32,
    halves: Vec<HalfEdgeTopo>,
    /// `n + 1` offsets; half-edges starting at `v` occupy
    /// `adj_off[v]..adj_off[v+1]`, sorted by end vertex id.
    adj_off: Vec<u32>,
    max_degree: u32,
    total_weight: u64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(u32, u32),
    #[error("self loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate undirected edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("edge ({u}, {v}) has non-positive {field}")]
    NonPositiveValue { u: u32, v: u32, field: &'static str },
}

/// Builds the twin half-edge store from an undirected edge list.
///
/// Input tuples are `(u, v, travel_time, weight)`. Half-edges are grouped by
/// start vertex, each group sorted by end vertex id, and twins paired up.
pub fn build_graph(
    n_vertices: u32,
    edges: &[(u32, u32, u32, u32)],
) -> Result<Graph, BuildError> {
    let mut seen: HashMap<(u32, u32), ()> = HashMap::with_capacity(edges.len());
    for &(u, v, f1, f2) in edges {
        if u >= n_vertices {
            return Err(BuildError::VertexOutOfRange(u, n_vertices));
        }
        if v >= n_vertices {
            return Err(BuildError::VertexOutOfRange(v, n_vertices));
        }
        if u == v {
            return Err(BuildError::SelfLoop(u));
        }
        if f1 == 0 {
            return Err(BuildError::NonPositiveValue { u, v, field: "travel time" });
        }
        if f2 == 0 {
            return Err(BuildError::NonPositiveValue { u, v, field: "weight" });
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key, ()).is_some() {
            return Err(BuildError::DuplicateEdge(key.0, key.1));
        }
    }

    // Group directed copies by start vertex, order each group by end id.
    let mut directed: Vec<(u32, u32, u32, u32)> = Vec::with_capacity(edges.len() * 2);
    for &(u, v, f1, f2) in edges {
        directed.push((u, v, f1, f2));
        directed.push((v, u, f1, f2));
    }
    directed.sort_unstable_by_key(|&(s, e, _, _)| (s, e));

    let mut adj_off = vec![0u32; n_vertices as usize + 1];
    for &(s, _, _, _) in &directed {
        adj_off[s as usize + 1] += 1;
    }
    for i in 0..n_vertices as usize {
        adj_off[i + 1] += adj_off[i];
    }

    let mut loc: HashMap<(u32, u32), u32> = HashMap::with_capacity(directed.len());
    for (i, &(s, e, _, _)) in directed.iter().enumerate() {
        loc.insert((s, e), i as u32);
    }

    let halves: Vec<HalfEdgeTopo> = directed
        .iter()
        .map(|&(s, e, f1, f2)| HalfEdgeTopo {
            start: VertexId(s),
            end: VertexId(e),
            travel_time: f1,
            weight: f2,
            twin: HalfEdgeId(loc[&(e, s)]),
        })
        .collect();

    let max_degree = (0..n_vertices as usize)
        .map(|v| adj_off[v + 1] - adj_off[v])
        .max()
        .unwrap_or(0);
    let total_weight = edges.iter().map(|&(_, _, _, f2)| f2 as u64).sum();

    Ok(Graph { n: n_vertices, halves, adj_off, max_degree, total_weight })
}

impl Graph {
    #[inline]
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn half_edge_count(&self) -> u32 {
        self.halves.len() as u32
    }

    #[inline]
    pub fn edge_count(&self) -> u32 {
        (self.halves.len() / 2) as u32
    }

    #[inline]
    pub fn half(&self, h: HalfEdgeId) -> &HalfEdgeTopo {
        &self.halves[h.idx()]
    }

    #[inline]
    pub fn twin(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.halves[h.idx()].twin
    }

    /// Half-edges starting at `v`, in ascending end-vertex order.
    #[inline]
    pub fn adjacency(&self, v: VertexId) -> impl Iterator<Item = HalfEdgeId> + '_ {
        (self.adj_off[v.idx()]..self.adj_off[v.idx() + 1]).map(HalfEdgeId)
    }

    /// Location of the first half-edge starting at `v`, if any.
    pub fn first_edge(&self, v: VertexId) -> Option<HalfEdgeId> {
        let lo = self.adj_off[v.idx()];
        let hi = self.adj_off[v.idx() + 1];
        (lo < hi).then_some(HalfEdgeId(lo))
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> u32 {
        self.adj_off[v.idx() + 1] - self.adj_off[v.idx()]
    }

    #[inline]
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Half-edge from `u` to `v`, if the vertices are adjacent.
    pub fn find_half_edge(&self, u: VertexId, v: VertexId) -> Option<HalfEdgeId> {
        self.adjacency(u).find(|&h| self.halves[h.idx()].end == v)
    }

    /// Undirected edge list `(u, v, travel_time, weight)` with `u < v`,
    /// in canonical order.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (u32, u32, u32, u32)> + '_ {
        self.halves
            .iter()
            .filter(|h| h.start < h.end)
            .map(|h| (h.start.0, h.end.0, h.travel_time, h.weight))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }
}

/// A finite budget that no simple path can reach: one more than the total
/// weight of all edges. Substitutes for an unconstrained run.
pub fn infinite_budget(g: &Graph) -> i64 {
    1 + g.total_weight as i64
}

/// A solver task: graph, source set, target set and the strict weight budget.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub graph: Graph,
    /// Source vertices, sorted and duplicate-free.
    pub sources: Vec<VertexId>,
    /// Target vertices, sorted and duplicate-free.
    pub targets: Vec<VertexId>,
    /// Strict budget: admissible paths have total weight `< budget`.
    pub budget: i64,
}

impl ProblemInstance {
    pub fn new(
        graph: Graph,
        mut sources: Vec<VertexId>,
        mut targets: Vec<VertexId>,
        budget: i64,
    ) -> Self {
        sources.sort_unstable();
        sources.dedup();
        targets.sort_unstable();
        targets.dedup();
        ProblemInstance { graph, sources, targets, budget }
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.sources.binary_search(&v).is_ok()
    }

    pub fn is_target(&self, v: VertexId) -> bool {
        self.targets.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SourcesEmpty,
    TargetsEmpty,
    SourceTargetOverlap(VertexId),
    BudgetBelowOne(i64),
    VertexOutOfRange(VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SourcesEmpty => write!(f, "source set A is empty"),
            Violation::TargetsEmpty => write!(f, "target set B is empty"),
            Violation::SourceTargetOverlap(v) => write!(f, "A\u{2229}B nonempty: vertex {v}"),
            Violation::BudgetBelowOne(m) => write!(f, "budget below 1: {m}"),
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
        }
    }
}

/// Checks the instance invariants; an empty list means the instance is valid.
pub fn validate_instance(inst: &ProblemInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.sources.is_empty() {
        out.push(Violation::SourcesEmpty);
    }
    if inst.targets.is_empty() {
        out.push(Violation::TargetsEmpty);
    }
    for &v in inst.sources.iter().chain(&inst.targets) {
        if v.0 >= inst.graph.vertex_count() {
            out.push(Violation::VertexOutOfRange(v));
        }
    }
    for &a in &inst.sources {
        if inst.targets.binary_search(&a).is_ok() {
            out.push(Violation::SourceTargetOverlap(a));
        }
    }
    if inst.budget < 1 {
        out.push(Violation::BudgetBelowOne(inst.budget));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_twins() {
        let g = build_graph(2, &[(0, 1, 3, 1)]).unwrap();
        assert_eq!(g.half_edge_count(), 2);
        assert_eq!(g.twin(HalfEdgeId(0)), HalfEdgeId(1));
        assert_eq!(g.twin(HalfEdgeId(1)), HalfEdgeId(0));
        let h = g.half(HalfEdgeId(0));
        assert_eq!((h.start, h.end), (VertexId(0), VertexId(1)));
        assert_eq!(infinite_budget(&g), 2);
    }

    #[test]
    fn path_graph_degrees() {
        let g = build_graph(3, &[(0, 1, 2, 5), (1, 2, 7, 2)]).unwrap();
        assert_eq!(g.degree(VertexId(0)), 1);
        assert_eq!(g.degree(VertexId(1)), 2);
        assert_eq!(g.degree(VertexId(2)), 1);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(infinite_budget(&g), 8);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(build_graph(2, &[(0, 0, 1, 1)]), Err(BuildError::SelfLoop(0)));
        assert_eq!(
            build_graph(2, &[(0, 1, 1, 1), (1, 0, 2, 2)]),
            Err(BuildError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            build_graph(2, &[(0, 1, 0, 1)]),
            Err(BuildError::NonPositiveValue { u: 0, v: 1, field: "travel time" })
        );
        assert_eq!(
            build_graph(2, &[(0, 1, 1, 0)]),
            Err(BuildError::NonPositiveValue { u: 0, v: 1, field: "weight" })
        );
        assert_eq!(build_graph(2, &[(0, 2, 1, 1)]), Err(BuildError::VertexOutOfRange(2, 2)));
    }

    #[test]
    fn twin_involution_and_coverage() {
        let g = build_graph(
            5,
            &[(0, 1, 1, 1), (0, 2, 2, 3), (1, 2, 4, 1), (2, 3, 1, 2), (3, 4, 5, 5)],
        )
        .unwrap();
        let mut seen = vec![false; g.half_edge_count() as usize];
        for v in g.vertex_ids() {
            for h in g.adjacency(v) {
                assert_eq!(g.half(h).start, v);
                assert!(!seen[h.idx()], "half-edge listed twice");
                seen[h.idx()] = true;
                let t = g.twin(h);
                assert_eq!(g.twin(t), h);
                assert_eq!(g.half(t).start, g.half(h).end);
                assert_eq!(g.half(t).end, g.half(h).start);
                assert_eq!(g.half(t).weight, g.half(h).weight);
                assert_eq!(g.half(t).travel_time, g.half(h).travel_time);
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(g.half_edge_count(), 2 * g.edge_count());
    }

    #[test]
    fn validate_reports_violations() {
        let g = build_graph(2, &[(0, 1, 1, 1)]).unwrap();
        let inst = ProblemInstance::new(g.clone(), vec![VertexId(0)], vec![VertexId(0)], 5);
        assert_eq!(validate_instance(&inst), vec![Violation::SourceTargetOverlap(VertexId(0))]);

        let inst = ProblemInstance::new(g.clone(), vec![VertexId(0)], vec![VertexId(1)], 0);
        assert_eq!(validate_instance(&inst), vec![Violation::BudgetBelowOne(0)]);

        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(1)], 5);
        assert!(validate_instance(&inst).is_empty());
    }
}
