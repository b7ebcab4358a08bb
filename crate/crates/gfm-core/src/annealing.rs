//! Homogenized simulated annealing on the metric graph.
//!
//! A single run alternates two mechanisms driven by one seeded rng stream:
//! Brownian motion relative to the graph structure (uniform redirection among
//! the incident edges whenever a vertex is hit), and geodesic jumps toward
//! vertices freshly drawn from the node distribution, fired by an
//! inhomogeneous Poisson clock of growing intensity. The estimate is the
//! vertex holding the largest share of nearest-vertex residence time over the
//! final window of the run.
//!
//! A discrete Metropolis–Hastings chain over the vertices, using exact
//! energies, serves as the comparison baseline.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{advance_along_geodesic, nearest_vertex, point_to_vertex_distance, QuantumPosition};
use crate::graph::WeightedGraph;
use crate::shortest::GeodesicTable;

/// Annealing schedule: inverse temperature β_t = b·log(1+t) and Poisson
/// intensity α_t = λ·(γ+1)·(t+1)^γ, simulated up to `t_max` with Brownian
/// step `dt`; occupation statistics cover the final `window` fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Schedule {
    pub b: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub t_max: f64,
    pub dt: f64,
    pub window: f64,
}

/// Default occupation window: the last 10% of the run.
pub const DEFAULT_WINDOW: f64 = 0.1;

impl Schedule {
    /// Checks positivity constraints and the Brownian step cap
    /// dt ≤ (0.1 · min edge length)².
    pub fn validate(&self, graph: &WeightedGraph) -> Result<()> {
        let fail = |reason: String| Err(Error::ScheduleInvalid { reason });
        if !(self.b > 0.0) || !self.b.is_finite() {
            return fail(format!("b must be positive, got {}", self.b));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return fail(format!("lambda must be positive, got {}", self.lambda));
        }
        if !(self.gamma >= 1.0) || !self.gamma.is_finite() {
            return fail(format!("gamma must be >= 1, got {}", self.gamma));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return fail(format!("t_max must be positive, got {}", self.t_max));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return fail(format!("dt must be positive, got {}", self.dt));
        }
        let cap = (0.1 * graph.min_edge_length()).powi(2);
        if self.dt > cap {
            return fail(format!(
                "dt = {} exceeds (0.1 * min edge length)^2 = {cap}",
                self.dt
            ));
        }
        if !(self.window > 0.0 && self.window < 1.0) {
            return fail(format!("window must lie in (0,1), got {}", self.window));
        }
        Ok(())
    }

    /// Inverse temperature β_t = b·log(1+t).
    pub fn beta_at(&self, t: f64) -> f64 {
        self.b * (1.0 + t).ln()
    }

    /// Poisson intensity α_t = λ·(γ+1)·(t+1)^γ.
    pub fn alpha_at(&self, t: f64) -> f64 {
        self.lambda * (self.gamma + 1.0) * (t + 1.0).powf(self.gamma)
    }

    /// Integrated intensity h(t) = λ·((t+1)^{γ+1} − 1).
    pub fn intensity_integral(&self, t: f64) -> f64 {
        self.lambda * ((t + 1.0).powf(self.gamma + 1.0) - 1.0)
    }

    /// Expected number of jumps in [t0, t1].
    pub fn expected_jumps(&self, t0: f64, t1: f64) -> f64 {
        self.intensity_integral(t1) - self.intensity_integral(t0)
    }

    /// Jump contraction factor min(1, β_t/α_t).
    pub fn jump_fraction(&self, t: f64) -> f64 {
        (self.beta_at(t) / self.alpha_at(t)).min(1.0)
    }

    /// Next clock time after `t_k`, by inverting the integrated intensity
    /// against a unit exponential gap. A gap of exactly zero is redrawn.
    pub fn next_jump_time<R: Rng + ?Sized>(&self, t_k: f64, rng: &mut R) -> f64 {
        let mut gap: f64 = rng.sample(rand_distr::Exp1);
        while gap == 0.0 {
            gap = rng.sample(rand_distr::Exp1);
        }
        self.jump_time_after(t_k, gap)
    }

    /// Deterministic inversion: h(T) = h(t_k) + gap.
    pub fn jump_time_after(&self, t_k: f64, gap: f64) -> f64 {
        let p = self.gamma + 1.0;
        ((t_k + 1.0).powf(p) + gap / self.lambda).powf(1.0 / p) - 1.0
    }
}

/// Progress of the inhomogeneous Poisson clock.
#[derive(Debug, Clone, Copy)]
pub struct ClockState {
    pub t: f64,
    pub k: u64,
    pub next_jump: f64,
}

impl ClockState {
    pub fn start<R: Rng + ?Sized>(schedule: &Schedule, rng: &mut R) -> Self {
        ClockState {
            t: 0.0,
            k: 0,
            next_jump: schedule.next_jump_time(0.0, rng),
        }
    }

    /// Consumes the pending jump and schedules the next one.
    pub fn fire<R: Rng + ?Sized>(&mut self, schedule: &Schedule, rng: &mut R) {
        self.k += 1;
        self.t = self.next_jump;
        self.next_jump = schedule.next_jump_time(self.t, rng);
    }
}

/// Time-weighted residence per vertex inside the occupation window.
#[derive(Debug, Clone)]
pub struct OccupationTracker {
    residence: Vec<f64>,
    total: f64,
    window_start: f64,
}

impl OccupationTracker {
    pub fn new(vertex_count: usize, window_start: f64) -> Self {
        OccupationTracker {
            residence: vec![0.0; vertex_count],
            total: 0.0,
            window_start,
        }
    }

    /// Credits the part of [t0, t1] lying inside the window to vertex `v`.
    pub fn record(&mut self, v: usize, t0: f64, t1: f64) {
        let overlap = t1 - t0.max(self.window_start);
        if overlap > 0.0 {
            self.residence[v] += overlap;
            self.total += overlap;
        }
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn frequencies(&self) -> Vec<f64> {
        if self.total == 0.0 {
            return vec![0.0; self.residence.len()];
        }
        self.residence.iter().map(|r| r / self.total).collect()
    }
}

/// Outcome of a single run.
#[derive(Debug, Clone)]
pub struct RunResult {
    /// Vertex with the largest occupation frequency (ties: smaller id).
    pub estimate: usize,
    pub frequencies: Vec<f64>,
    pub max_frequency: f64,
    pub jump_count: u64,
    /// Wall-clock seconds; measurement only, never part of seeded output.
    pub wall_time: f64,
    pub seed: u64,
}

/// Where a run starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartPosition {
    /// Uniform-random coordinate on a uniform-random edge (the default).
    RandomEdge,
    /// A fixed vertex, for targeted reproductions.
    Vertex(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub start: StartPosition,
    pub record_trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            start: StartPosition::RandomEdge,
            record_trace: false,
        }
    }
}

/// One row of the optional per-jump trace.
#[derive(Debug, Clone, Copy)]
pub struct JumpRecord {
    pub t: f64,
    pub k: u64,
    /// Position right after the jump.
    pub edge: usize,
    pub coord: f64,
    /// The vertex drawn from the node distribution.
    pub target: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub result: RunResult,
    pub trace: Vec<JumpRecord>,
}

/// One Brownian increment of variance `dt`: a Gaussian displacement consumed
/// along the graph, redirecting uniformly among incident edges (arrival edge
/// included) at every vertex hit.
pub fn brownian_step<R: Rng + ?Sized>(
    x: &QuantumPosition,
    dt: f64,
    graph: &WeightedGraph,
    rng: &mut R,
) -> QuantumPosition {
    let xi: f64 = dt.sqrt() * rng.sample::<f64, _>(StandardNormal);
    displace(graph, *x, xi, rng)
}

/// Moves a signed displacement `xi` along the graph from `x`, gluing at
/// vertices, and reports every traversed segment to `on_segment`
/// (edge id, from-coordinate, to-coordinate).
fn displace_traced<R, F>(
    graph: &WeightedGraph,
    x: QuantumPosition,
    xi: f64,
    rng: &mut R,
    mut on_segment: F,
) -> QuantumPosition
where
    R: Rng + ?Sized,
    F: FnMut(usize, f64, f64),
{
    let mut remaining = xi.abs();
    let mut forward = xi >= 0.0;
    let mut edge = x.edge;
    let mut coord = x.coord;
    loop {
        let e = graph.edge(edge);
        let to_exit = if forward { e.length - coord } else { coord };
        if remaining < to_exit {
            let landed = if forward {
                coord + remaining
            } else {
                coord - remaining
            };
            on_segment(edge, coord, landed);
            return QuantumPosition { edge, coord: landed };
        }
        let hit = if forward { e.v } else { e.u };
        on_segment(edge, coord, if forward { e.length } else { 0.0 });
        remaining -= to_exit;
        if remaining == 0.0 {
            return QuantumPosition::at_vertex(graph, hit);
        }
        let incident = graph.neighbors(hit);
        let (_, next_edge) = incident[rng.random_range(0..incident.len())];
        edge = next_edge;
        let ne = graph.edge(edge);
        if hit == ne.u {
            coord = 0.0;
            forward = true;
        } else {
            coord = ne.length;
            forward = false;
        }
    }
}

fn displace<R: Rng + ?Sized>(
    graph: &WeightedGraph,
    x: QuantumPosition,
    xi: f64,
    rng: &mut R,
) -> QuantumPosition {
    displace_traced(graph, x, xi, rng, |_, _, _| {})
}

/// Geodesic jump at time `t`: contracts the distance to `y` by the factor
/// min(1, β_t/α_t).
pub fn jump_toward(
    x: &QuantumPosition,
    y: usize,
    t: f64,
    schedule: &Schedule,
    graph: &WeightedGraph,
    table: &GeodesicTable,
) -> Result<QuantumPosition> {
    let d = point_to_vertex_distance(x, y, graph, table)?;
    if d == 0.0 {
        return Ok(*x);
    }
    let f = schedule.jump_fraction(t);
    if f <= 0.0 {
        return Ok(*x);
    }
    advance_along_geodesic(x, y, (f * d).min(d), graph, table)
}

/// Runs the annealing process with default options.
pub fn run_annealing(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    seed: u64,
) -> Result<RunResult> {
    run_annealing_with(graph, table, schedule, seed, &RunOptions::default())
        .map(|out| out.result)
}

/// Runs the annealing process. All randomness (start position, Gaussian
/// increments, gluing choices, clock gaps, node draws) comes from one stream
/// seeded by `seed`, in simulation order, so identical inputs give identical
/// results.
pub fn run_annealing_with(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    seed: u64,
    options: &RunOptions,
) -> Result<RunOutput> {
    schedule.validate(graph)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut x = match options.start {
        StartPosition::RandomEdge => {
            let edge = rng.random_range(0..graph.edge_count());
            let frac: f64 = rng.random();
            QuantumPosition {
                edge,
                coord: frac * graph.edge(edge).length,
            }
        }
        StartPosition::Vertex(v) => {
            graph.check_vertex(v)?;
            QuantumPosition::at_vertex(graph, v)
        }
    };

    let mut tracker = OccupationTracker::new(
        graph.vertex_count(),
        schedule.t_max * (1.0 - schedule.window),
    );
    let mut clock = ClockState::start(schedule, &mut rng);
    let mut trace = Vec::new();
    let mut t = 0.0;

    while t < schedule.t_max {
        let step_end = (t + schedule.dt).min(clock.next_jump).min(schedule.t_max);
        let step = step_end - t;
        if step > 0.0 {
            x = brownian_step(&x, step, graph, &mut rng);
            tracker.record(nearest_vertex(&x, graph), t, step_end);
        }
        t = step_end;
        if t >= schedule.t_max {
            break;
        }
        if t == clock.next_jump {
            let target = graph.sample_node(&mut rng);
            let fraction = schedule.jump_fraction(t);
            x = jump_toward(&x, target, t, schedule, graph, table)?;
            clock.fire(schedule, &mut rng);
            if options.record_trace {
                trace.push(JumpRecord {
                    t,
                    k: clock.k,
                    edge: x.edge,
                    coord: x.coord,
                    target,
                    fraction,
                });
            }
        }
    }

    let result = finish(tracker.frequencies(), clock.k, started, seed);
    Ok(RunOutput { result, trace })
}

/// Discrete Metropolis–Hastings baseline over the vertex set, with exact
/// energies, uniform neighbor proposals and the Hastings degree correction.
/// Step k runs at inverse temperature β(k·t_max/K) with K = ⌈t_max/dt⌉.
pub fn run_mh_baseline(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    seed: u64,
) -> Result<RunResult> {
    schedule.validate(graph)?;
    let steps = (schedule.t_max / schedule.dt).ceil() as u64;
    let per_step = schedule.t_max / steps as f64;
    let sched = *schedule;
    Ok(mh_chain(
        graph,
        table,
        move |k| sched.beta_at(k as f64 * per_step),
        steps,
        schedule.window,
        seed,
    ))
}

/// Metropolis–Hastings at a frozen inverse temperature; the chain is
/// reversible with respect to π(v) ∝ exp(−β U(v)).
pub fn mh_frozen(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    beta: f64,
    steps: u64,
    window: f64,
    seed: u64,
) -> RunResult {
    mh_chain(graph, table, move |_| beta, steps, window, seed)
}

fn mh_chain<B: Fn(u64) -> f64>(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    beta_at_step: B,
    steps: u64,
    window: f64,
    seed: u64,
) -> RunResult {
    let started = Instant::now();
    let n = graph.vertex_count();
    let energies: Vec<f64> = (0..n)
        .map(|v| crate::energy::energy_at_vertex(v, graph, table).expect("vertex in range"))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = rng.random_range(0..n);
    let mut accepted: u64 = 0;
    let mut counts = vec![0u64; n];
    let window_start = ((steps as f64) * (1.0 - window)).floor() as u64;

    for k in 0..steps {
        let neighbors = graph.neighbors(x);
        let (proposal, _) = neighbors[rng.random_range(0..neighbors.len())];
        let beta = beta_at_step(k);
        let hastings =
            neighbors.len() as f64 / graph.neighbors(proposal).len() as f64;
        let ratio = (beta * (energies[x] - energies[proposal])).exp() * hastings;
        if ratio >= 1.0 || rng.random::<f64>() < ratio {
            x = proposal;
            accepted += 1;
        }
        if k >= window_start {
            counts[x] += 1;
        }
    }

    let counted: u64 = counts.iter().sum();
    let frequencies: Vec<f64> = counts
        .iter()
        .map(|&c| {
            if counted == 0 {
                0.0
            } else {
                c as f64 / counted as f64
            }
        })
        .collect();
    finish(frequencies, accepted, started, seed)
}

fn finish(frequencies: Vec<f64>, jump_count: u64, started: Instant, seed: u64) -> RunResult {
    let (estimate, max_frequency) = argmax(&frequencies);
    RunResult {
        estimate,
        frequencies,
        max_frequency,
        jump_count,
        wall_time: started.elapsed().as_secs_f64(),
        seed,
    }
}

/// Index of the largest value; ties go to the smaller index.
fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    (best, values[best])
}
