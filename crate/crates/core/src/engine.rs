//! Frontier-based label-correcting solver.
//!
//! Water starts at every source vertex with quality equal to the budget `M`
//! and loses the weight of every edge it crosses. A vertex label is the best
//! quality seen at that vertex; water of quality 0 stops. The first time a
//! target vertex receives water, the clock equals the minimal total travel
//! time over all source-target paths of weight strictly below `M`.
//!
//! Each cycle advances the clock and applies nine phases:
//!
//! 1. advance time over active edges (and phantom edges), collect vertices
//!    whose incoming flow just arrived ("triggered"),
//! 2. compute the best candidate label per triggered vertex,
//! 3. deliver phantom arrivals,
//! 4. decide which edges of triggered vertices must start carrying flow,
//!    cutting incoming flows that can no longer improve their destination,
//! 5. start those flows, either by (re)activating the edge or, when the
//!    source is already busy, by spawning a phantom copy,
//! 6. check termination,
//! 7. drop completed phantoms,
//! 8. commit labels, merge and compact the active-vertex sequence,
//! 9. retire used edges, merge and compact the active-edge sequence.
//!
//! Every phase writes only to the record it owns or appends to a buffer that
//! is later merged by a canonical sort, so outcomes and traces do not depend
//! on how the index ranges are partitioned across workers.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{HalfEdgeId, ProblemInstance, Violation, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TimeMode {
    /// Decrease remaining times by 1 each cycle.
    Unit,
    /// Decrease by the minimum remaining time over active edges and phantoms.
    Jump,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub mode: TimeMode,
    /// Abort with `BudgetExceeded` after this many cycles.
    pub cycle_budget: Option<u64>,
    /// Number of worker slots for bulk phases. Results are identical for
    /// every value; see module docs.
    pub workers: usize,
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { mode: TimeMode::Jump, cycle_budget: None, workers: 1, trace: false }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum VertexStatus {
    Active,
    Inactive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum EdgeStatus {
    /// Carrying a flow from `start` towards `end`.
    Active,
    /// Not carrying anything.
    Passive,
    /// Flow arrived in an earlier cycle.
    Used,
    /// Flow arrived in the current cycle; becomes `Used` in phase 9.
    JustUsed,
}

/// The five-field vertex record.
#[derive(Clone, Debug)]
pub struct VertexRecord {
    pub name: VertexId,
    /// Quality of the best water seen here; 0 until first reached.
    pub label: i64,
    pub status: VertexStatus,
    pub first_edge: Option<HalfEdgeId>,
    /// Candidate label while triggered; empty between cycles.
    pub temp_label: Option<i64>,
}

/// The eight-field half-edge record.
#[derive(Clone, Debug)]
pub struct HalfEdgeRecord {
    pub start: VertexId,
    pub end: VertexId,
    pub remaining_time: u32,
    pub weight: u32,
    pub initial_time: u32,
    /// Label of the flow source at the moment the flow started.
    pub flow_label: i64,
    pub status: EdgeStatus,
    pub twin: HalfEdgeId,
}

/// Transient flow record created when fresh water hits an already-active
/// vertex: the new flow runs on this copy while the edge keeps its old one.
#[derive(Clone, Debug)]
pub struct PhantomRecord {
    pub source: VertexId,
    pub destination: VertexId,
    /// Quality of the new flow at the source.
    pub label: i64,
    pub remaining_time: u32,
    pub underlying: HalfEdgeId,
}

/// How the terminating flow arrived at the target.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Arrival {
    Edge(HalfEdgeId),
    Phantom { source: VertexId, underlying: HalfEdgeId },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum SolveOutcome {
    Reached {
        /// Total travel time of an optimal admissible path.
        f1: u64,
        /// Weight of the arriving path; `0 < f2 < M`.
        f2: i64,
        terminal: VertexId,
        /// Second-to-last vertex: flow source of the arriving edge, or the
        /// origin vertex of the arriving phantom.
        arrival_origin: VertexId,
        arrival: Arrival,
    },
    Infeasible,
    BudgetExceeded,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Continue,
    Reached,
    Infeasible,
}

/// Per-cycle counters; one trace row.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CycleStats {
    pub t: u64,
    pub delta: u64,
    pub active_vertices: usize,
    pub active_edges: usize,
    pub phantoms: usize,
    pub triggered: usize,
}

#[derive(Error, Debug)]
pub enum EngineError {
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInstance(Vec<Violation>),
}

/// Complete mutable solver state between and during cycles.
#[derive(Clone, Debug)]
pub struct SolverState {
    pub t: u64,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<HalfEdgeRecord>,
    /// Locations of active vertices, sorted in decreasing order.
    pub active_vertices: Vec<VertexId>,
    /// Locations of active half-edges, sorted in decreasing order.
    pub active_edges: Vec<HalfEdgeId>,
    /// Within-cycle append buffer, duplicate-free.
    pub triggered_vertices: Vec<VertexId>,
    /// Within-cycle append buffer of half-edges to start flows on.
    pub triggered_edges: Vec<HalfEdgeId>,
    pub phantoms: Vec<PhantomRecord>,
    pub workers: usize,
    /// Half-edges (re)activated in phase 5, merged in phase 9.
    edge_activations: Vec<HalfEdgeId>,
    /// Running count of half-edges with status `Active`.
    live_active_edges: usize,
}

pub struct Solver<'a> {
    pub inst: &'a ProblemInstance,
    pub cfg: SolverConfig,
    pub state: SolverState,
    /// Arrival details captured in phase 6 of a terminating cycle; phases
    /// 7-9 may overwrite the records they were read from.
    pending_outcome: Option<SolveOutcome>,
}

/// Builds the initial state: sources labeled `M` and active, every half-edge
/// leaving a source carrying a fresh flow. For an edge joining two sources
/// only the copy with the smaller start id activates.
pub fn init_state(inst: &ProblemInstance, cfg: &SolverConfig) -> Result<SolverState, EngineError> {
    let violations = crate::graph::validate_instance(inst);
    if !violations.is_empty() {
        return Err(EngineError::InvalidInstance(violations));
    }
    let g = &inst.graph;
    let m = inst.budget;

    let vertices: Vec<VertexRecord> = g
        .vertex_ids()
        .map(|v| {
            let in_a = inst.is_source(v);
            VertexRecord {
                name: v,
                label: if in_a { m } else { 0 },
                status: if in_a { VertexStatus::Active } else { VertexStatus::Inactive },
                first_edge: g.first_edge(v),
                temp_label: None,
            }
        })
        .collect();

    let mut live_active_edges = 0;
    let edges: Vec<HalfEdgeRecord> = (0..g.half_edge_count())
        .map(|i| {
            let topo = g.half(HalfEdgeId(i));
            let sourced = inst.is_source(topo.start)
                && (!inst.is_source(topo.end) || topo.start < topo.end);
            if sourced {
                live_active_edges += 1;
            }
            HalfEdgeRecord {
                start: topo.start,
                end: topo.end,
                remaining_time: if sourced { topo.travel_time } else { 0 },
                weight: topo.weight,
                initial_time: topo.travel_time,
                flow_label: if sourced { m } else { 0 },
                status: if sourced { EdgeStatus::Active } else { EdgeStatus::Passive },
                twin: topo.twin,
            }
        })
        .collect();

    let mut active_vertices = inst.sources.clone();
    active_vertices.sort_unstable_by(|a, b| b.cmp(a));
    let mut active_edges: Vec<HalfEdgeId> = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.status == EdgeStatus::Active)
        .map(|(i, _)| HalfEdgeId(i as u32))
        .collect();
    active_edges.sort_unstable_by(|a, b| b.cmp(a));

    Ok(SolverState {
        t: 0,
        vertices,
        edges,
        active_vertices,
        active_edges,
        triggered_vertices: Vec::new(),
        triggered_edges: Vec::new(),
        phantoms: Vec::new(),
        workers: cfg.workers.max(1),
        edge_activations: Vec::new(),
        live_active_edges,
    })
}

impl SolverState {
    #[inline]
    fn effective_label(&self, v: VertexId) -> i64 {
        let r = &self.vertices[v.idx()];
        r.temp_label.map_or(r.label, |t| t.max(r.label))
    }

    fn demote_to_passive(&mut self, h: HalfEdgeId) {
        let rec = &mut self.edges[h.idx()];
        debug_assert_eq!(rec.status, EdgeStatus::Active);
        rec.status = EdgeStatus::Passive;
        rec.remaining_time = 0;
        rec.flow_label = 0;
        self.live_active_edges -= 1;
    }

    /// (active vertices, active edges, phantom edges) between cycles.
    pub fn active_counts(&self) -> (usize, usize, usize) {
        (self.active_vertices.len(), self.active_edges.len(), self.phantoms.len())
    }
}

impl<'a> Solver<'a> {
    pub fn new(inst: &'a ProblemInstance, cfg: SolverConfig) -> Result<Self, EngineError> {
        let state = init_state(inst, &cfg)?;
        Ok(Solver { inst, cfg, state, pending_outcome: None })
    }

    /// Phase 1: move the clock, decrement active-edge and phantom times, and
    /// collect the end vertices of flows that just arrived. Returns the
    /// applied time decrement.
    pub fn step1_advance_time(&mut self) -> u64 {
        debug_assert!(self.state.triggered_vertices.is_empty());
        debug_assert!(self.state.triggered_edges.is_empty());
        let st = &mut self.state;

        let delta: u32 = match self.cfg.mode {
            TimeMode::Unit => 1,
            TimeMode::Jump => st
                .active_edges
                .iter()
                .map(|&h| st.edges[h.idx()].remaining_time)
                .chain(st.phantoms.iter().map(|p| p.remaining_time))
                .min()
                .unwrap_or(1),
        };

        let mut hit: Vec<VertexId> = Vec::new();
        for i in 0..st.active_edges.len() {
            let h = st.active_edges[i];
            let rec = &mut st.edges[h.idx()];
            rec.remaining_time -= delta;
            if rec.remaining_time == 0 {
                rec.status = EdgeStatus::JustUsed;
                st.live_active_edges -= 1;
                hit.push(rec.end);
            }
        }
        for p in &mut st.phantoms {
            p.remaining_time -= delta;
        }
        st.t += delta as u64;

        hit.sort_unstable();
        hit.dedup();
        st.triggered_vertices = hit;
        delta as u64
    }

    /// Phase 2: per triggered vertex, store the largest label deliverable by
    /// a just-arrived flow into the temporary slot.
    pub fn step2_analyze_triggered(&mut self) {
        let g = &self.inst.graph;
        for i in 0..self.state.triggered_vertices.len() {
            let q = self.state.triggered_vertices[i];
            let mut best: Option<i64> = None;
            for h in g.adjacency(q) {
                let tw = g.twin(h);
                let rec = &self.state.edges[tw.idx()];
                if rec.status == EdgeStatus::JustUsed {
                    let cand = rec.flow_label - rec.weight as i64;
                    best = Some(best.map_or(cand, |b: i64| b.max(cand)));
                }
            }
            self.state.vertices[q.idx()].temp_label =
                Some(best.expect("triggered vertex without a just-used incoming flow"));
        }
    }

    /// Phase 3: deliver phantom flows whose time ran out. A delivery counts
    /// only if it strictly improves on both the label and any candidate
    /// already proposed this cycle; simultaneous arrivals at one destination
    /// collapse to the largest candidate.
    pub fn step3_advance_phantoms(&mut self) {
        let st = &mut self.state;
        let mut arrivals: Vec<(VertexId, i64, usize)> = st
            .phantoms
            .iter()
            .enumerate()
            .filter(|(_, p)| p.remaining_time == 0)
            .map(|(i, p)| {
                let w = st.edges[p.underlying.idx()].weight as i64;
                (p.destination, p.label - w, i)
            })
            .collect();
        arrivals.sort_unstable_by(|a, b| (a.0, std::cmp::Reverse(a.1), a.2)
            .cmp(&(b.0, std::cmp::Reverse(b.1), b.2)));
        arrivals.dedup_by_key(|&mut (dest, _, _)| dest);

        let mut appended = false;
        for (dest, cand, _) in arrivals {
            let rec = &mut st.vertices[dest.idx()];
            if cand > 0 && cand > rec.label && cand > rec.temp_label.unwrap_or(i64::MIN) {
                if rec.temp_label.is_none() {
                    st.triggered_vertices.push(dest);
                    appended = true;
                }
                rec.temp_label = Some(cand);
            }
        }
        if appended {
            st.triggered_vertices.sort_unstable();
        }
    }

    /// Phase 4: for each triggered vertex, cut incoming active flows that can
    /// no longer improve it and collect every half-edge out of it whose flow
    /// would strictly improve the far endpoint.
    pub fn step4_trigger_edges(&mut self) {
        let g = &self.inst.graph;
        let mut emitted: Vec<HalfEdgeId> = Vec::new();
        for i in 0..self.state.triggered_vertices.len() {
            let q = self.state.triggered_vertices[i];
            let l_star = self.state.effective_label(q);
            for h in g.adjacency(q) {
                let tw = g.twin(h);
                let tw_rec = &self.state.edges[tw.idx()];
                if tw_rec.status == EdgeStatus::Active
                    && tw_rec.flow_label - tw_rec.weight as i64 <= l_star
                {
                    self.state.demote_to_passive(tw);
                }
                let topo = g.half(h);
                let cand = l_star - topo.weight as i64;
                if cand > 0 && cand > self.state.effective_label(topo.end) {
                    emitted.push(h);
                }
            }
        }
        emitted.sort_unstable();
        self.state.triggered_edges = emitted;
    }

    /// Phase 5: start the flows decided in phase 4. The endpoint with the
    /// larger effective label becomes the source. An idle source takes over
    /// the edge itself (restoring its time); a busy source spawns a phantom.
    pub fn step5_process_triggered_edges(&mut self) {
        for i in 0..self.state.triggered_edges.len() {
            let j = self.state.triggered_edges[i];
            let (p, r, tw) = {
                let rec = &self.state.edges[j.idx()];
                (rec.start, rec.end, rec.twin)
            };
            let (lp, lr) = (self.state.effective_label(p), self.state.effective_label(r));
            let (source, _dest, sd) = if lp > lr || (lp == lr && p < r) {
                (p, r, j)
            } else {
                (r, p, tw)
            };
            let label = self.state.effective_label(source);

            if self.state.vertices[source.idx()].status == VertexStatus::Inactive {
                let sd_twin = self.state.edges[sd.idx()].twin;
                if self.state.edges[sd_twin.idx()].status == EdgeStatus::Active {
                    self.state.demote_to_passive(sd_twin);
                }
                let rec = &mut self.state.edges[sd.idx()];
                debug_assert_ne!(rec.status, EdgeStatus::Active);
                rec.status = EdgeStatus::Active;
                rec.remaining_time = rec.initial_time;
                rec.flow_label = label;
                self.state.live_active_edges += 1;
                self.state.edge_activations.push(sd);
            } else {
                let rec = &self.state.edges[sd.idx()];
                self.state.phantoms.push(PhantomRecord {
                    source,
                    destination: rec.end,
                    label,
                    remaining_time: rec.initial_time,
                    underlying: sd,
                });
            }
        }
    }

    /// Phase 6: report arrival at a target, exhaustion of all flows, or
    /// neither.
    pub fn step6_check_termination(&self) -> Verdict {
        let st = &self.state;
        for &b in &self.inst.targets {
            let rec = &st.vertices[b.idx()];
            let accepted = rec.status == VertexStatus::Active
                || rec.temp_label.is_some_and(|t| t > rec.label && t > 0);
            if accepted {
                return Verdict::Reached;
            }
        }
        let any_live_phantom = st.phantoms.iter().any(|p| p.remaining_time > 0);
        if st.live_active_edges == 0 && !any_live_phantom {
            return Verdict::Infeasible;
        }
        Verdict::Continue
    }

    /// Resolves the arrival details for a `Reached` verdict. Must be called
    /// between phases 6 and 7 of the terminating cycle.
    fn reached_outcome(&self) -> SolveOutcome {
        let st = &self.state;
        let g = &self.inst.graph;
        let mut best: Option<(i64, VertexId)> = None;
        for &b in &self.inst.targets {
            let rec = &st.vertices[b.idx()];
            let label = if rec.status == VertexStatus::Active {
                Some(rec.label)
            } else {
                rec.temp_label.filter(|&t| t > rec.label && t > 0)
            };
            if let Some(l) = label {
                if best.is_none_or(|(bl, _)| l > bl) {
                    best = Some((l, b));
                }
            }
        }
        let (label, terminal) = best.expect("reached verdict without an accepted target");

        // Smallest matching just-used in-edge wins; phantoms only if no edge
        // delivered this label.
        let mut edge_arrival: Option<HalfEdgeId> = None;
        for h in g.adjacency(terminal) {
            let tw = g.twin(h);
            let rec = &st.edges[tw.idx()];
            if rec.status == EdgeStatus::JustUsed && rec.flow_label - (rec.weight as i64) == label
            {
                edge_arrival = match edge_arrival {
                    Some(cur) if cur < tw => Some(cur),
                    _ => Some(tw),
                };
            }
        }
        let (arrival_origin, arrival) = if let Some(h) = edge_arrival {
            (st.edges[h.idx()].start, Arrival::Edge(h))
        } else {
            let p = st
                .phantoms
                .iter()
                .find(|p| {
                    p.destination == terminal
                        && p.remaining_time == 0
                        && p.label - st.edges[p.underlying.idx()].weight as i64 == label
                })
                .expect("accepted target label without a matching arrival");
            (p.source, Arrival::Phantom { source: p.source, underlying: p.underlying })
        };

        SolveOutcome::Reached {
            f1: st.t,
            f2: self.inst.budget - label,
            terminal,
            arrival_origin,
            arrival,
        }
    }

    /// Phase 7: drop phantoms whose flow has arrived.
    pub fn step7_finalize_phantoms(&mut self) {
        self.state.phantoms.retain(|p| p.remaining_time > 0);
    }

    /// Phase 8: commit accepted candidate labels on idle vertices, clear the
    /// temporary slots, merge triggered into active vertices and drop every
    /// vertex that no longer sources an active flow.
    pub fn step8_finalize_vertices(&mut self) {
        let st = &mut self.state;
        for i in 0..st.triggered_vertices.len() {
            let q = st.triggered_vertices[i];
            let rec = &mut st.vertices[q.idx()];
            if rec.status == VertexStatus::Inactive {
                if let Some(tmp) = rec.temp_label {
                    if tmp > rec.label && tmp > 0 {
                        rec.label = tmp;
                        rec.status = VertexStatus::Active;
                    }
                }
            }
            rec.temp_label = None;
        }

        let mut merged = std::mem::take(&mut st.active_vertices);
        merged.extend_from_slice(&st.triggered_vertices);
        merged.sort_unstable_by(|a, b| b.cmp(a));
        merged.dedup();

        let g = &self.inst.graph;
        for &q in &merged {
            if st.vertices[q.idx()].status == VertexStatus::Active {
                let sourcing = g.adjacency(q).any(|h| st.edges[h.idx()].status == EdgeStatus::Active);
                if !sourcing {
                    st.vertices[q.idx()].status = VertexStatus::Inactive;
                }
            }
        }
        merged.retain(|&q| st.vertices[q.idx()].status == VertexStatus::Active);
        st.active_vertices = merged;
        st.triggered_vertices.clear();
    }

    /// Phase 9: retire just-used edges, merge activations into the active
    /// sequence and compact it.
    pub fn step9_finalize_edges(&mut self) {
        let st = &mut self.state;
        let mut merged = std::mem::take(&mut st.active_edges);
        merged.extend_from_slice(&st.triggered_edges);
        merged.extend_from_slice(&st.edge_activations);
        merged.sort_unstable_by(|a, b| b.cmp(a));
        merged.dedup();

        let mut next = Vec::with_capacity(merged.len());
        for &h in &merged {
            let rec = &mut st.edges[h.idx()];
            match rec.status {
                EdgeStatus::JustUsed => {
                    rec.status = EdgeStatus::Used;
                    rec.flow_label = 0;
                }
                EdgeStatus::Active => next.push(h),
                EdgeStatus::Passive | EdgeStatus::Used => {}
            }
        }
        st.active_edges = next;
        st.triggered_edges.clear();
        st.edge_activations.clear();
    }

    /// Runs one full cycle; the verdict is computed in phase 6 but the state
    /// is left consistent (phases 7-9 run) even on termination.
    pub fn run_cycle(&mut self) -> (Verdict, CycleStats) {
        let delta = self.step1_advance_time();
        self.step2_analyze_triggered();
        self.step3_advance_phantoms();
        self.step4_trigger_edges();
        self.step5_process_triggered_edges();
        let verdict = self.step6_check_termination();
        let outcome_details =
            (verdict == Verdict::Reached).then(|| self.reached_outcome());
        let triggered = self.state.triggered_vertices.len();
        self.step7_finalize_phantoms();
        self.step8_finalize_vertices();
        self.step9_finalize_edges();
        let stats = CycleStats {
            t: self.state.t,
            delta,
            active_vertices: self.state.active_vertices.len(),
            active_edges: self.state.active_edges.len(),
            phantoms: self.state.phantoms.len(),
            triggered,
        };
        self.pending_outcome = outcome_details;
        (verdict, stats)
    }

    /// Loops cycles until arrival, exhaustion, or the cycle budget runs out.
    pub fn run(&mut self) -> SolveOutcome {
        let mut cycles: u64 = 0;
        loop {
            let (verdict, _) = self.run_cycle();
            cycles += 1;
            match verdict {
                Verdict::Reached => {
                    return self.pending_outcome.take().expect("reached without outcome")
                }
                Verdict::Infeasible => return SolveOutcome::Infeasible,
                Verdict::Continue => {
                    if self.cfg.cycle_budget.is_some_and(|b| cycles >= b) {
                        return SolveOutcome::BudgetExceeded;
                    }
                }
            }
        }
    }

    /// Checks every between-cycle invariant of the state; test support.
    pub fn verify_invariants(&self) -> Result<(), String> {
        let st = &self.state;
        let g = &self.inst.graph;

        let desc_dedup = |ids: &[u32]| ids.windows(2).all(|w| w[0] > w[1]);
        if !desc_dedup(&st.active_vertices.iter().map(|v| v.0).collect::<Vec<_>>()) {
            return Err("active vertices not strictly descending".into());
        }
        if !desc_dedup(&st.active_edges.iter().map(|h| h.0).collect::<Vec<_>>()) {
            return Err("active edges not strictly descending".into());
        }
        if !st.triggered_vertices.is_empty() || !st.triggered_edges.is_empty() {
            return Err("triggered buffers not empty between cycles".into());
        }
        for (i, rec) in st.vertices.iter().enumerate() {
            if rec.temp_label.is_some() {
                return Err(format!("vertex {i} has a temp label between cycles"));
            }
            if rec.label < 0 || rec.label > self.inst.budget {
                return Err(format!("vertex {i} label {} out of range", rec.label));
            }
            let listed = st.active_vertices.binary_search_by(|v| i.cmp(&v.idx())).is_ok();
            if listed != (rec.status == VertexStatus::Active) {
                return Err(format!("vertex {i} status/list mismatch"));
            }
        }
        let mut live = 0;
        for (i, rec) in st.edges.iter().enumerate() {
            let h = HalfEdgeId(i as u32);
            match rec.status {
                EdgeStatus::Active => {
                    live += 1;
                    if rec.remaining_time == 0 || rec.remaining_time > rec.initial_time {
                        return Err(format!("active edge {i} remaining time out of range"));
                    }
                    if st.edges[g.twin(h).idx()].status == EdgeStatus::Active {
                        return Err(format!("edge {i} and its twin both active"));
                    }
                }
                EdgeStatus::Used | EdgeStatus::JustUsed => {
                    if rec.remaining_time != 0 {
                        return Err(format!("used edge {i} with remaining time"));
                    }
                }
                EdgeStatus::Passive => {}
            }
            let listed = st.active_edges.binary_search_by(|x| i.cmp(&x.idx())).is_ok();
            if listed != (rec.status == EdgeStatus::Active) {
                return Err(format!("edge {i} status/list mismatch"));
            }
        }
        if live != st.live_active_edges {
            return Err(format!(
                "active edge counter drift: counted {live}, stored {}",
                st.live_active_edges
            ));
        }
        for (i, p) in st.phantoms.iter().enumerate() {
            let u = &st.edges[p.underlying.idx()];
            if p.label <= 0
                || p.remaining_time > u.initial_time
                || p.source != u.start
                || p.destination != u.end
            {
                return Err(format!("phantom {i} malformed"));
            }
        }
        Ok(())
    }
}

impl Solver<'_> {
    /// Takes the arrival details captured by the cycle that returned
    /// `Verdict::Reached`.
    pub fn outcome_after_reached(&mut self) -> Option<SolveOutcome> {
        self.pending_outcome.take()
    }
}

/// Solves the instance and returns the outcome.
pub fn solve(inst: &ProblemInstance, cfg: &SolverConfig) -> Result<SolveOutcome, EngineError> {
    let mut solver = Solver::new(inst, cfg.clone())?;
    Ok(solver.run())
}

/// Solves the instance, also returning one stats row per cycle.
pub fn solve_traced(
    inst: &ProblemInstance,
    cfg: &SolverConfig,
) -> Result<(SolveOutcome, Vec<CycleStats>), EngineError> {
    let mut solver = Solver::new(inst, cfg.clone())?;
    let mut rows = Vec::new();
    let mut cycles: u64 = 0;
    loop {
        let (verdict, stats) = solver.run_cycle();
        rows.push(stats);
        cycles += 1;
        match verdict {
            Verdict::Reached => {
                let out = solver.outcome_after_reached().expect("reached without outcome");
                return Ok((out, rows));
            }
            Verdict::Infeasible => return Ok((SolveOutcome::Infeasible, rows)),
            Verdict::Continue => {
                if cfg.cycle_budget.is_some_and(|b| cycles >= b) {
                    return Ok((SolveOutcome::BudgetExceeded, rows));
                }
            }
        }
    }
}
