//! Full minimizing-path extraction by repeated solves.
//!
//! One solve yields only the terminal vertex, the arriving edge and the path
//! weight. The full path follows by re-solving towards the arrival origin
//! with the budget shrunk to admit exactly the optimal prefix, peeling one
//! edge per round.

use std::collections::HashSet;

use thiserror::Error;

use crate::engine::{solve, Arrival, SolveOutcome, SolverConfig};
use crate::graph::{build_graph, ProblemInstance, VertexId};

#[derive(Error, Debug)]
pub enum ReconstructError {
    #[error("outcome is not Reached")]
    NotReached,
    #[error("instance rejected: {0}")]
    Engine(#[from] crate::engine::EngineError),
    #[error("reconstruction mismatch at round {round}: {detail}")]
    Mismatch { round: usize, detail: String },
}

/// An explicit source-to-target path with its two totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub vertices: Vec<VertexId>,
    pub f1: u64,
    pub f2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    NotAdjacent(VertexId, VertexId),
    WrongTotalTime { claimed: u64, actual: u64 },
    WrongTotalWeight { claimed: i64, actual: i64 },
    ConstraintViolated { weight: i64, budget: i64 },
    DoesNotStartInSources(VertexId),
    DoesNotEndInTargets(VertexId),
}

impl std::fmt::Display for PathViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathViolation::Empty => write!(f, "empty path"),
            PathViolation::NotAdjacent(u, v) => write!(f, "vertices {u} and {v} not adjacent"),
            PathViolation::WrongTotalTime { claimed, actual } => {
                write!(f, "total time {claimed} != recomputed {actual}")
            }
            PathViolation::WrongTotalWeight { claimed, actual } => {
                write!(f, "total weight {claimed} != recomputed {actual}")
            }
            PathViolation::ConstraintViolated { weight, budget } => {
                write!(f, "constraint violated: weight {weight} >= budget {budget}")
            }
            PathViolation::DoesNotStartInSources(v) => write!(f, "{v} not a source"),
            PathViolation::DoesNotEndInTargets(v) => write!(f, "{v} not a target"),
        }
    }
}

/// Terminal vertex, arriving edge (phantom arrivals resolve to their origin)
/// and path weight of a `Reached` outcome.
pub fn extract_terminal(
    outcome: &SolveOutcome,
) -> Result<(VertexId, Arrival, i64), ReconstructError> {
    match outcome {
        SolveOutcome::Reached { terminal, arrival, f2, .. } => Ok((*terminal, *arrival, *f2)),
        _ => Err(ReconstructError::NotReached),
    }
}

fn arrival_parameters(inst: &ProblemInstance, arrival: Arrival) -> (VertexId, u64, i64) {
    let h = match arrival {
        Arrival::Edge(h) => h,
        Arrival::Phantom { underlying, .. } => underlying,
    };
    let topo = inst.graph.half(h);
    (topo.start, topo.travel_time as u64, topo.weight as i64)
}

/// Recovers a full optimal admissible path. Requires the instance to be
/// feasible; every intermediate re-solve must line up with the original
/// totals or the procedure aborts with `Mismatch`.
pub fn reconstruct_path(
    inst: &ProblemInstance,
    cfg: &SolverConfig,
) -> Result<PathWitness, ReconstructError> {
    let outcome = solve(inst, cfg)?;
    let SolveOutcome::Reached { f1: total_f1, f2: total_f2, terminal, arrival, .. } = outcome
    else {
        return Err(ReconstructError::NotReached);
    };

    let mut rev_path = vec![terminal];
    // Past targets leave the graph so later rounds cannot route through them.
    let mut removed: HashSet<VertexId> = inst.targets.iter().copied().collect();

    let (mut origin, mut consumed_time, mut edge_weight) = arrival_parameters(inst, arrival);
    let mut next_budget = total_f2 - edge_weight + 1;

    for round in 1.. {
        rev_path.push(origin);
        if inst.is_source(origin) {
            break;
        }
        if round > inst.graph.vertex_count() as usize {
            return Err(ReconstructError::Mismatch {
                round,
                detail: "no progress: more rounds than vertices".into(),
            });
        }

        let sub_edges: Vec<(u32, u32, u32, u32)> = inst
            .graph
            .undirected_edges()
            .filter(|&(u, v, _, _)| {
                !removed.contains(&VertexId(u)) && !removed.contains(&VertexId(v))
            })
            .collect();
        let sub_graph = build_graph(inst.graph.vertex_count(), &sub_edges)
            .expect("filtered edge list stays simple");
        let sub_inst = ProblemInstance::new(
            sub_graph,
            inst.sources.clone(),
            vec![origin],
            next_budget,
        );

        let sub_outcome = solve(&sub_inst, cfg)?;
        let SolveOutcome::Reached { f1: sub_f1, f2: sub_f2, terminal: sub_terminal, arrival: sub_arrival, .. } =
            sub_outcome
        else {
            return Err(ReconstructError::Mismatch {
                round,
                detail: format!("sub-solve returned {sub_outcome:?}"),
            });
        };
        debug_assert_eq!(sub_terminal, origin);
        if sub_f1 + consumed_time != total_f1 {
            return Err(ReconstructError::Mismatch {
                round,
                detail: format!(
                    "sub-solve time {sub_f1} + consumed {consumed_time} != total {total_f1}"
                ),
            });
        }

        removed.insert(origin);
        let (next_origin, time, weight) = arrival_parameters(&sub_inst, sub_arrival);
        consumed_time += time;
        next_budget = sub_f2 - weight + 1;
        edge_weight = weight;
        origin = next_origin;
    }
    let _ = edge_weight;

    rev_path.reverse();
    let witness = witness_from_vertices(inst, rev_path)?;
    if witness.f1 != total_f1 {
        return Err(ReconstructError::Mismatch {
            round: 0,
            detail: format!("assembled time {} != solved {total_f1}", witness.f1),
        });
    }
    Ok(witness)
}

fn witness_from_vertices(
    inst: &ProblemInstance,
    vertices: Vec<VertexId>,
) -> Result<PathWitness, ReconstructError> {
    let mut f1: u64 = 0;
    let mut f2: i64 = 0;
    for pair in vertices.windows(2) {
        let h = inst.graph.find_half_edge(pair[0], pair[1]).ok_or_else(|| {
            ReconstructError::Mismatch {
                round: 0,
                detail: format!("assembled vertices {} and {} not adjacent", pair[0], pair[1]),
            }
        })?;
        let topo = inst.graph.half(h);
        f1 += topo.travel_time as u64;
        f2 += topo.weight as i64;
    }
    Ok(PathWitness { vertices, f1, f2 })
}

/// Recomputes adjacency and both totals of a witness; exact check.
pub fn validate_path(inst: &ProblemInstance, witness: &PathWitness) -> Result<(), PathViolation> {
    let verts = &witness.vertices;
    if verts.is_empty() {
        return Err(PathViolation::Empty);
    }
    if !inst.is_source(verts[0]) {
        return Err(PathViolation::DoesNotStartInSources(verts[0]));
    }
    let last = *verts.last().unwrap();
    if !inst.is_target(last) {
        return Err(PathViolation::DoesNotEndInTargets(last));
    }
    let mut f1: u64 = 0;
    let mut f2: i64 = 0;
    for pair in verts.windows(2) {
        match inst.graph.find_half_edge(pair[0], pair[1]) {
            None => return Err(PathViolation::NotAdjacent(pair[0], pair[1])),
            Some(h) => {
                let topo = inst.graph.half(h);
                f1 += topo.travel_time as u64;
                f2 += topo.weight as i64;
            }
        }
    }
    if f1 != witness.f1 {
        return Err(PathViolation::WrongTotalTime { claimed: witness.f1, actual: f1 });
    }
    if f2 != witness.f2 {
        return Err(PathViolation::WrongTotalWeight { claimed: witness.f2, actual: f2 });
    }
    if f2 >= inst.budget {
        return Err(PathViolation::ConstraintViolated { weight: f2, budget: inst.budget });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn path_graph_witness() {
        let g = build_graph(3, &[(0, 1, 2, 3), (1, 2, 4, 5)]).unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(2)], 9);
        let w = reconstruct_path(&inst, &cfg()).unwrap();
        assert_eq!(w.vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
        assert_eq!((w.f1, w.f2), (6, 8));
        assert!(validate_path(&inst, &w).is_ok());
    }

    #[test]
    fn single_edge_witness() {
        let g = build_graph(2, &[(0, 1, 3, 1)]).unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(1)], 2);
        let w = reconstruct_path(&inst, &cfg()).unwrap();
        assert_eq!(w.vertices, vec![VertexId(0), VertexId(1)]);
        assert_eq!((w.f1, w.f2), (3, 1));
    }

    #[test]
    fn diamond_takes_the_light_branch() {
        // Heavy-fast upper branch vs light-slow lower branch; budget forces
        // the lower one.
        let g = build_graph(
            4,
            &[(0, 1, 1, 10), (1, 3, 1, 10), (0, 2, 5, 1), (2, 3, 5, 1)],
        )
        .unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(3)], 5);
        let w = reconstruct_path(&inst, &cfg()).unwrap();
        assert_eq!(w.vertices, vec![VertexId(0), VertexId(2), VertexId(3)]);
        assert_eq!((w.f1, w.f2), (10, 2));
        assert!(validate_path(&inst, &w).is_ok());
    }

    #[test]
    fn validate_rejects_tampering() {
        let g = build_graph(3, &[(0, 1, 2, 3), (1, 2, 4, 5)]).unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(2)], 9);
        let w = reconstruct_path(&inst, &cfg()).unwrap();

        let skip = PathWitness { vertices: vec![VertexId(0), VertexId(2)], ..w.clone() };
        assert_eq!(
            validate_path(&inst, &skip),
            Err(PathViolation::NotAdjacent(VertexId(0), VertexId(2)))
        );

        let wrong = PathWitness { f2: w.f2 + 1, ..w.clone() };
        assert!(matches!(
            validate_path(&inst, &wrong),
            Err(PathViolation::WrongTotalWeight { .. })
        ));

        let mut tight = inst.clone();
        tight.budget = w.f2;
        assert!(matches!(
            validate_path(&tight, &w),
            Err(PathViolation::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn not_reached_is_an_error() {
        assert!(matches!(
            extract_terminal(&SolveOutcome::Infeasible),
            Err(ReconstructError::NotReached)
        ));
    }
}
