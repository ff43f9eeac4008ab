//! Independent ground-truth solvers used to validate the engine.
//!
//! `dp_constrained_shortest` runs a plain Dijkstra sweep over the product
//! graph of (vertex, spent weight) states. `enumerate_paths` brute-forces
//! simple paths on tiny instances. Both optimize for obvious correctness,
//! not speed.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::engine::SolveOutcome;
use crate::graph::{ProblemInstance, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the product-graph sweep: M*|V| = {0}")]
    InstanceTooLarge(u64),
    #[error("search space too large for path enumeration")]
    SearchSpaceTooLarge,
}

/// Exact answer: minimal total time, a witness path, and the witness weight;
/// or infeasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Optimal { f1: u64, path: Vec<VertexId>, f2: i64 },
    Infeasible,
}

const PRODUCT_STATE_LIMIT: u64 = 100_000_000;

/// Shortest-path sweep over states `(vertex, spent weight)` with
/// `spent weight <= M - 1`. Transitions follow graph edges and add the edge
/// weight; cost is travel time. Ties resolve by (vertex id, weight) so the
/// witness path is deterministic.
pub fn dp_constrained_shortest(inst: &ProblemInstance) -> Result<OracleResult, OracleError> {
    let g = &inst.graph;
    let n = g.vertex_count() as u64;
    let max_w = (inst.budget - 1).max(0) as u64;
    let states = n * (max_w + 1);
    if states > PRODUCT_STATE_LIMIT {
        return Err(OracleError::InstanceTooLarge(states));
    }

    let wdim = (max_w + 1) as usize;
    let size = (n as usize) * wdim;
    let mut dist = vec![u64::MAX; size];
    let mut pred: Vec<u32> = vec![u32::MAX; size];
    let state = |v: VertexId, w: usize| v.idx() * wdim + w;

    // (time, vertex, weight): BinaryHeap on Reverse gives lexicographic
    // min-order, which fixes the tie-breaking discipline.
    let mut heap: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
    for &a in &inst.sources {
        dist[state(a, 0)] = 0;
        heap.push(Reverse((0, a.0, 0)));
    }

    while let Some(Reverse((d, v, w))) = heap.pop() {
        let s = state(VertexId(v), w as usize);
        if d > dist[s] {
            continue;
        }
        for h in g.adjacency(VertexId(v)) {
            let e = g.half(h);
            let nw = w as u64 + e.weight as u64;
            if nw > max_w {
                continue;
            }
            let nd = d + e.travel_time as u64;
            let ns = state(e.end, nw as usize);
            if nd < dist[ns] {
                dist[ns] = nd;
                pred[ns] = s as u32;
                heap.push(Reverse((nd, e.end.0, nw as u32)));
            }
        }
    }

    let mut best: Option<(u64, VertexId, usize)> = None;
    for &b in &inst.targets {
        for w in 0..wdim {
            let d = dist[state(b, w)];
            if d == u64::MAX {
                continue;
            }
            let cand = (d, b, w);
            if best.is_none_or(|cur| (cand.0, cand.1 .0, cand.2) < (cur.0, cur.1 .0, cur.2)) {
                best = Some(cand);
            }
        }
    }

    match best {
        None => Ok(OracleResult::Infeasible),
        Some((f1, b, w)) => {
            let mut path = vec![b];
            let mut s = state(b, w);
            while pred[s] != u32::MAX {
                s = pred[s] as usize;
                path.push(VertexId((s / wdim) as u32));
            }
            path.reverse();
            Ok(OracleResult::Optimal { f1, path, f2: w as i64 })
        }
    }
}

/// Exhaustive search over simple paths with at most `max_edges` edges.
pub fn enumerate_paths(
    inst: &ProblemInstance,
    max_edges: usize,
) -> Result<OracleResult, OracleError> {
    let g = &inst.graph;
    if g.vertex_count() > 12 && max_edges > 12 {
        return Err(OracleError::SearchSpaceTooLarge);
    }

    struct Search<'a> {
        inst: &'a ProblemInstance,
        best: Option<(u64, i64, Vec<VertexId>)>,
        on_path: Vec<bool>,
        path: Vec<VertexId>,
        max_edges: usize,
    }

    impl Search<'_> {
        fn visit(&mut self, v: VertexId, time: u64, weight: i64) {
            if weight >= self.inst.budget {
                return;
            }
            if self.inst.is_target(v) {
                let better = match &self.best {
                    None => true,
                    Some((bt, bw, bp)) => {
                        (time, weight, self.path.len()) < (*bt, *bw, bp.len())
                    }
                };
                if better {
                    self.best = Some((time, weight, self.path.clone()));
                }
                return;
            }
            if self.path.len() > self.max_edges {
                return;
            }
            for h in self.inst.graph.adjacency(v) {
                let e = self.inst.graph.half(h);
                if self.on_path[e.end.idx()] {
                    continue;
                }
                self.on_path[e.end.idx()] = true;
                self.path.push(e.end);
                self.visit(e.end, time + e.travel_time as u64, weight + e.weight as i64);
                self.path.pop();
                self.on_path[e.end.idx()] = false;
            }
        }
    }

    let mut search = Search {
        inst,
        best: None,
        on_path: vec![false; g.vertex_count() as usize],
        path: Vec::new(),
        max_edges,
    };
    for &a in &inst.sources {
        search.on_path = vec![false; g.vertex_count() as usize];
        search.on_path[a.idx()] = true;
        search.path = vec![a];
        search.visit(a, 0, 0);
    }

    Ok(match search.best {
        None => OracleResult::Infeasible,
        Some((f1, f2, path)) => OracleResult::Optimal { f1, path, f2 },
    })
}

/// Outcome of checking the engine against the oracle on one instance.
#[derive(Debug, Clone)]
pub struct AgreementReport {
    pub agree: bool,
    pub engine: String,
    pub oracle: String,
    /// Full instance dump, filled in on mismatch for triage.
    pub instance_dump: Option<String>,
}

/// Compares an engine outcome with the exact oracle answer on the same
/// instance: optimal times must match and infeasibility verdicts coincide.
pub fn compare(inst: &ProblemInstance, engine_outcome: &SolveOutcome) -> AgreementReport {
    let oracle = match dp_constrained_shortest(inst) {
        Ok(r) => r,
        Err(e) => {
            return AgreementReport {
                agree: false,
                engine: format!("{engine_outcome:?}"),
                oracle: format!("oracle error: {e}"),
                instance_dump: Some(crate::io::write_instance(inst)),
            }
        }
    };
    let agree = matches!(
        (&oracle, engine_outcome),
        (OracleResult::Optimal { f1, .. }, SolveOutcome::Reached { f1: ef1, .. }) if *f1 == *ef1
    ) || matches!(
        (&oracle, engine_outcome),
        (OracleResult::Infeasible, SolveOutcome::Infeasible)
    );
    AgreementReport {
        agree,
        engine: format!("{engine_outcome:?}"),
        oracle: format!("{oracle:?}"),
        instance_dump: (!agree).then(|| crate::io::write_instance(inst)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, ProblemInstance};

    fn inst(n: u32, edges: &[(u32, u32, u32, u32)], a: &[u32], b: &[u32], m: i64) -> ProblemInstance {
        ProblemInstance::new(
            build_graph(n, edges).unwrap(),
            a.iter().map(|&x| VertexId(x)).collect(),
            b.iter().map(|&x| VertexId(x)).collect(),
            m,
        )
    }

    #[test]
    fn single_edge() {
        let i = inst(2, &[(0, 1, 3, 1)], &[0], &[1], 2);
        let r = dp_constrained_shortest(&i).unwrap();
        match r {
            OracleResult::Optimal { f1, ref path, f2 } => {
                assert_eq!(f1, 3);
                assert_eq!(f2, 1);
                assert_eq!(path, &[VertexId(0), VertexId(1)]);
            }
            _ => panic!("expected optimal"),
        }
        assert_eq!(enumerate_paths(&i, 4).unwrap(), r);
    }

    #[test]
    fn single_edge_infeasible_on_strict_budget() {
        let i = inst(2, &[(0, 1, 3, 5)], &[0], &[1], 5);
        assert_eq!(dp_constrained_shortest(&i).unwrap(), OracleResult::Infeasible);
        assert_eq!(enumerate_paths(&i, 4).unwrap(), OracleResult::Infeasible);
    }

    #[test]
    fn diamond_budget_forces_slow_branch() {
        // 0 -> 1 via cheap-heavy (1,10) or slow-light (5,1); then 1 -> 2.
        let i = inst(3, &[(0, 1, 1, 10), (1, 2, 1, 1)], &[0], &[2], 5);
        assert_eq!(dp_constrained_shortest(&i).unwrap(), OracleResult::Infeasible);

        let i = inst(4, &[(0, 1, 1, 10), (0, 2, 5, 1), (1, 3, 1, 1), (2, 3, 1, 1)], &[0], &[3], 5);
        match dp_constrained_shortest(&i).unwrap() {
            OracleResult::Optimal { f1, path, f2 } => {
                assert_eq!(f1, 6);
                assert_eq!(f2, 2);
                assert_eq!(path, vec![VertexId(0), VertexId(2), VertexId(3)]);
            }
            _ => panic!("expected optimal"),
        }
    }

    #[test]
    fn dp_matches_enumeration_on_grid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // 3x4 grid, random small weights, several budgets.
        let (w, h) = (3u32, 4u32);
        let id = |x: u32, y: u32| y * w + x;
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    edges.push((id(x, y), id(x + 1, y), rng.random_range(1..=5), rng.random_range(1..=5)));
                }
                if y + 1 < h {
                    edges.push((id(x, y), id(x, y + 1), rng.random_range(1..=5), rng.random_range(1..=5)));
                }
            }
        }
        for m in [3, 6, 9, 12, 20] {
            let i = inst(w * h, &edges, &[0], &[w * h - 1], m);
            let dp = dp_constrained_shortest(&i).unwrap();
            let en = enumerate_paths(&i, 12).unwrap();
            match (&dp, &en) {
                (OracleResult::Infeasible, OracleResult::Infeasible) => {}
                (
                    OracleResult::Optimal { f1: a, f2: wa, .. },
                    OracleResult::Optimal { f1: b, f2: wb, .. },
                ) => {
                    assert_eq!(a, b, "M={m}");
                    assert_eq!(wa, wb, "M={m}");
                }
                other => panic!("verdict mismatch at M={m}: {other:?}"),
            }
        }
    }

    #[test]
    fn dp_monotone_in_budget() {
        let i0 = inst(4, &[(0, 1, 1, 10), (0, 2, 5, 1), (1, 3, 1, 1), (2, 3, 1, 1)], &[0], &[3], 1);
        let mut last = u64::MAX;
        for m in 1..=20 {
            let mut i = i0.clone();
            i.budget = m;
            match dp_constrained_shortest(&i).unwrap() {
                OracleResult::Infeasible => assert_eq!(last, u64::MAX),
                OracleResult::Optimal { f1, .. } => {
                    assert!(f1 <= last);
                    last = f1;
                }
            }
        }
        assert_eq!(last, 2);
    }
}
