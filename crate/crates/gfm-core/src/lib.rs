//! Fréchet mean (barycenter) estimation for weighted undirected graphs.
//!
//! A graph with edge lengths and a node probability distribution induces a
//! metric graph whose points live inside the edges. The Fréchet mean is the
//! set of minimizers of U(x) = ½ Σ_y ν(y) d(x,y)². This crate provides:
//!
//! - validated graph construction and all-pairs geodesic tables ([`graph`],
//!   [`shortest`]);
//! - geometry on the metric graph: point-to-vertex distances and movement
//!   along geodesics ([`geometry`]);
//! - the exact exhaustive barycenter oracle and numerical landscape
//!   constants ([`energy`]);
//! - the homogenized simulated-annealing estimator driven by an
//!   inhomogeneous Poisson clock and glued Brownian motion, plus a discrete
//!   Metropolis–Hastings baseline ([`annealing`]);
//! - empirical schedule tuning and sweep presets ([`tuning`]);
//! - a seeded Monte-Carlo replication harness ([`harness`]);
//! - edge-list / node-weight parsing, a binary distance cache, and a
//!   two-cluster generator ([`io`]).

pub mod annealing;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod io;
pub mod shortest;
pub mod tuning;

pub use annealing::{
    brownian_step, jump_toward, mh_frozen, run_annealing, run_annealing_with, run_mh_baseline,
    ClockState, JumpRecord, OccupationTracker, RunOptions, RunOutput, RunResult, Schedule,
    StartPosition, DEFAULT_WINDOW,
};
pub use energy::{
    energy_at_point, energy_at_vertex, estimate_cstar, estimate_cstar_with_cap, exact_barycenter,
    EnergyProfile, LandscapeEstimate, ARGMIN_TOLERANCE, DEFAULT_POINT_CAP,
};
pub use error::{Error, Result};
pub use geometry::{
    advance_along_geodesic, descent_direction, nearest_vertex, point_to_vertex_distance,
    DirectedStep, QuantumPosition, VERTEX_EPS,
};
pub use graph::{build_graph, build_graph_with_labels, summarize, Edge, GraphSummary, WeightedGraph};
pub use harness::{
    baseline_compare, bench, bench_mh, bench_with, sweep, BaselineComparison, BenchOptions,
    BenchReport, ReplicationRecord,
};
pub use io::{
    check_cache_matches, format_edge_list, generate_two_cluster, load_distance_cache, parse_graph,
    parse_graph_from_str, save_distance_cache, EdgeWeightMode, CACHE_MAGIC,
};
pub use shortest::{
    all_pairs, all_pairs_with_limit, reconstruct_path, GeodesicTable, DEFAULT_VERTEX_LIMIT,
};
pub use tuning::{
    admissibility_warning, apply_preset, auto_tune, find_preset, tuning_report, ScheduleOverrides,
    SweepPreset, TuningReport, PRESETS, S_STAR,
};
