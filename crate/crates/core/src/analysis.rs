//! Instrumentation: per-cycle statistics, windowed active-set counts on
//! lattice instances, fractal frontier measurements and the cube benchmark
//! protocol.

use std::fmt::Write as _;
use std::time::Instant;

use crate::engine::{
    solve, solve_traced, CycleStats, EngineError, SolveOutcome, Solver, SolverConfig, TimeMode,
    Verdict, VertexStatus,
};
use crate::generators::{
    gen_fractal, gen_grid, FractalSpec, GridSpec, LatticeRect, Ratio, SourceRule, TargetRule,
    ValueRule,
};
use crate::graph::{ProblemInstance, VertexId};

/// One trace row; `n_t` is the active-vertex count inside the moving window
/// `|x| <= t`, present only for runs on a known lattice geometry.
#[derive(Clone, Copy, Debug)]
pub struct CycleRow {
    pub t: u64,
    pub delta: u64,
    pub active_vertices: usize,
    pub active_edges: usize,
    pub phantoms: usize,
    pub triggered: usize,
    pub n_t: Option<usize>,
}

impl From<CycleStats> for CycleRow {
    fn from(s: CycleStats) -> Self {
        CycleRow {
            t: s.t,
            delta: s.delta,
            active_vertices: s.active_vertices,
            active_edges: s.active_edges,
            phantoms: s.phantoms,
            triggered: s.triggered,
            n_t: None,
        }
    }
}

pub const TRACE_CSV_HEADER: &str = "t,delta,active_vertices,active_edges,phantoms,triggered";

/// Renders trace rows as CSV (version comment plus header line).
pub fn trace_to_csv(rows: &[CycleRow]) -> String {
    let windowed = rows.iter().any(|r| r.n_t.is_some());
    let mut out = String::from("# cspath trace v1\n");
    out.push_str(TRACE_CSV_HEADER);
    if windowed {
        out.push_str(",n_t");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            r.t, r.delta, r.active_vertices, r.active_edges, r.phantoms, r.triggered
        );
        if windowed {
            let _ = match r.n_t {
                Some(n) => write!(out, ",{n}"),
                None => write!(out, ","),
            };
        }
        out.push('\n');
    }
    out
}

/// Runs the solver to completion and returns one stats row per cycle.
pub fn trace_run(
    inst: &ProblemInstance,
    cfg: &SolverConfig,
) -> Result<(SolveOutcome, Vec<CycleRow>), EngineError> {
    let (outcome, stats) = solve_traced(inst, cfg)?;
    Ok((outcome, stats.into_iter().map(CycleRow::from).collect()))
}

/// Active vertices of `solver` whose x coordinate lies in `[-window, window]`.
fn windowed_active_count(solver: &Solver<'_>, rect: &LatticeRect, window: i64) -> usize {
    solver
        .state
        .active_vertices
        .iter()
        .filter(|&&v| {
            let (x, _) = rect.coords(v);
            x.abs() <= window
        })
        .count()
}

/// Like `trace_run`, additionally counting active vertices inside the moving
/// window `|x| <= t` after every cycle. Runs at most `max_clock` time units.
pub fn trace_run_windowed(
    inst: &ProblemInstance,
    cfg: &SolverConfig,
    rect: &LatticeRect,
    max_clock: Option<u64>,
) -> Result<(SolveOutcome, Vec<CycleRow>), EngineError> {
    let mut solver = Solver::new(inst, cfg.clone())?;
    let mut rows = Vec::new();
    let mut cycles: u64 = 0;
    loop {
        let (verdict, stats) = solver.run_cycle();
        cycles += 1;
        let mut row = CycleRow::from(stats);
        row.n_t = Some(windowed_active_count(&solver, rect, stats.t as i64));
        rows.push(row);
        match verdict {
            Verdict::Reached => {
                let out = solver.outcome_after_reached().expect("reached without outcome");
                return Ok((out, rows));
            }
            Verdict::Infeasible => return Ok((SolveOutcome::Infeasible, rows)),
            Verdict::Continue => {
                if max_clock.is_some_and(|m| solver.state.t >= m)
                    || cfg.cycle_budget.is_some_and(|b| cycles >= b)
                {
                    return Ok((SolveOutcome::BudgetExceeded, rows));
                }
            }
        }
    }
}

/// Runs a lattice instance in unit time to exactly clock `t` and returns the
/// set of active vertices as plane coordinates.
pub fn active_set_at_clock(
    inst: &ProblemInstance,
    rect: &LatticeRect,
    t: u64,
    workers: usize,
) -> Result<std::collections::BTreeSet<(i64, i64)>, EngineError> {
    let cfg = SolverConfig { mode: TimeMode::Unit, workers, ..SolverConfig::default() };
    let mut solver = Solver::new(inst, cfg)?;
    while solver.state.t < t {
        let (verdict, _) = solver.run_cycle();
        if verdict != Verdict::Continue {
            break;
        }
    }
    Ok(solver
        .state
        .active_vertices
        .iter()
        .map(|&v| rect.coords(v))
        .collect())
}

/// Measurement row for one fractal environment.
#[derive(Clone, Copy, Debug)]
pub struct FractalRow {
    /// Refinement depth of the measured environment.
    pub level: u32,
    /// Clock at which the count is taken (side length of the construction).
    pub t: u32,
    /// Active vertices with `|x| <= t` at clock `t`.
    pub n_t: usize,
    /// Continuum prediction `level * (4/15) * t`.
    pub expected: Ratio,
    pub ratio: f64,
}

fn measure_level(
    inst: &ProblemInstance,
    rect: &LatticeRect,
    t: u32,
    level: u32,
) -> Result<FractalRow, EngineError> {
    let cfg = SolverConfig { mode: TimeMode::Unit, ..SolverConfig::default() };
    let mut solver = Solver::new(inst, cfg)?;
    while solver.state.t < t as u64 {
        let (verdict, _) = solver.run_cycle();
        if verdict != Verdict::Continue {
            break;
        }
    }
    let n_t = windowed_active_count(&solver, rect, t as i64);
    // Prediction for this level at this clock: level * (4/15) * t.
    let expected = Ratio::new(4 * level as i64 * t as i64, 15);
    Ok(FractalRow { level, t, n_t, expected, ratio: n_t as f64 / expected.to_f64() })
}

/// Simulates the fully refined environment for each `k` in the range and
/// reports the windowed count against the continuum prediction.
pub fn measure_fractal(k_range: std::ops::RangeInclusive<u32>) -> Result<Vec<FractalRow>, String> {
    let mut rows = Vec::new();
    for k in k_range {
        if k > 7 {
            return Err(format!("k={k} too deep for the measurement harness"));
        }
        let fam = gen_fractal(&FractalSpec { k }).map_err(|e| e.to_string())?;
        let inst = fam.levels.last().expect("family has levels");
        let row = measure_level(inst, &fam.rect, fam.t, k).map_err(|e| e.to_string())?;
        rows.push(row);
    }
    Ok(rows)
}

/// Measures every refinement level of the depth-`k` family at the fixed
/// clock `t = 2^k`; row `j-1` describes the level-`j` environment.
pub fn measure_fractal_levels(k: u32) -> Result<Vec<FractalRow>, String> {
    let fam = gen_fractal(&FractalSpec { k }).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (i, inst) in fam.levels.iter().enumerate() {
        let row =
            measure_level(inst, &fam.rect, fam.t, i as u32 + 1).map_err(|e| e.to_string())?;
        rows.push(row);
    }
    Ok(rows)
}

/// One benchmark result.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub label: String,
    /// Median wall time of the timed repetitions, seconds.
    pub wall_seconds: f64,
    pub cycles: usize,
    pub outcome_f1: Option<u64>,
    pub peak_active_vertices: usize,
    pub peak_active_edges: usize,
    pub peak_phantoms: usize,
}

/// Builds the boundary-to-center cube instance used by the benchmark:
/// travel times 1 or 2 (fair coin), unit weights, unconstrained budget.
pub fn bench_cube_instance(side: u32, seed: u64) -> Result<ProblemInstance, String> {
    let center: u64 = {
        let dims = [side as u64, side as u64, side as u64];
        (dims[0] / 2) + dims[0] * ((dims[1] / 2) + dims[1] * (dims[2] / 2))
    };
    let spec = GridSpec {
        dims: vec![side, side, side],
        f1: ValueRule::Bernoulli { p: 0.5 },
        f2: ValueRule::Constant(1),
        a_rule: SourceRule::Boundary,
        b_rule: TargetRule::Set(vec![VertexId(center as u32)]),
        seed,
        budget: None,
    };
    gen_grid(&spec).map_err(|e| e.to_string())
}

/// Boundary-to-center solve timings on cubes of the given sides: one warm-up
/// (also supplying cycle counts and frontier peaks), then the median wall
/// time of three runs.
pub fn bench(sides: &[u32], cfg: &SolverConfig) -> Result<Vec<BenchRow>, String> {
    let mut out = Vec::new();
    for &side in sides {
        if side < 8 {
            return Err(format!("cube side {side} below 8"));
        }
        let inst = bench_cube_instance(side, 0xC5BA + side as u64)?;

        let (outcome, rows) = trace_run(&inst, cfg).map_err(|e| e.to_string())?;
        let f1 = match outcome {
            SolveOutcome::Reached { f1, .. } => Some(f1),
            _ => None,
        };
        let mut timings: Vec<f64> = (0..3)
            .map(|_| {
                let start = Instant::now();
                let _ = solve(&inst, cfg);
                start.elapsed().as_secs_f64()
            })
            .collect();
        timings.sort_by(|a, b| a.partial_cmp(b).unwrap());

        out.push(BenchRow {
            label: format!("{side}x{side}x{side}"),
            wall_seconds: timings[1].max(f64::MIN_POSITIVE),
            cycles: rows.len(),
            outcome_f1: f1,
            peak_active_vertices: rows.iter().map(|r| r.active_vertices).max().unwrap_or(0),
            peak_active_edges: rows.iter().map(|r| r.active_edges).max().unwrap_or(0),
            peak_phantoms: rows.iter().map(|r| r.phantoms).max().unwrap_or(0),
        });
    }
    Ok(out)
}

pub fn bench_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("# cspath bench v1\ngraph,wall_s,cycles,f1,peak_active_vertices,peak_active_edges,peak_phantoms\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.4},{},{},{},{},{}",
            r.label,
            r.wall_seconds,
            r.cycles,
            r.outcome_f1.map_or(String::from("-"), |v| v.to_string()),
            r.peak_active_vertices,
            r.peak_active_edges,
            r.peak_phantoms
        );
    }
    out
}

/// Sanity helper for tests: count status-active vertices directly.
pub fn count_active_statuses(solver: &Solver<'_>) -> usize {
    solver
        .state
        .vertices
        .iter()
        .filter(|v| v.status == VertexStatus::Active)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn trace_of_single_edge() {
        let g = build_graph(2, &[(0, 1, 3, 1)]).unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(1)], 2);
        let cfg = SolverConfig::default();
        let (outcome, rows) = trace_run(&inst, &cfg).unwrap();
        assert!(matches!(outcome, SolveOutcome::Reached { f1: 3, .. }));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].t, 3);
        assert_eq!(rows[0].active_edges, 0);
        let csv = trace_to_csv(&rows);
        assert!(csv.starts_with("# cspath trace v1\nt,delta"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn delta_sum_equals_final_clock() {
        let g = build_graph(4, &[(0, 1, 3, 1), (1, 2, 5, 1), (2, 3, 2, 1)]).unwrap();
        let inst = ProblemInstance::new(g, vec![VertexId(0)], vec![VertexId(3)], 100);
        let (_, rows) = trace_run(&inst, &SolverConfig::default()).unwrap();
        let sum: u64 = rows.iter().map(|r| r.delta).sum();
        assert_eq!(sum, rows.last().unwrap().t);
    }
}
