//! Weight-constrained shortest paths via a frontier-based label-correcting
//! solver, with exact oracles, instance generators and a benchmark harness.

pub mod analysis;
pub mod engine;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reconstruct;

pub use engine::{solve, solve_traced, SolveOutcome, Solver, SolverConfig, TimeMode};
pub use graph::{
    build_graph, infinite_budget, validate_instance, Graph, HalfEdgeId, ProblemInstance, VertexId,
};
