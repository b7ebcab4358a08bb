//! Empirical schedule selection from graph size and diameter, plus the
//! named sweep presets used by the benchmark harness.
//!
//! The recipe: horizon t_max = 100 + 0.1·N; inverse-temperature coefficient
//! b = 2/diameter; clock intensity chosen so that on average s_star = 1000
//! jumps land in the final unit interval of the run.

use serde::Serialize;

use crate::annealing::{Schedule, DEFAULT_WINDOW};
use crate::energy::LandscapeEstimate;
use crate::error::{Error, Result};
use crate::graph::{GraphSummary, WeightedGraph};

/// Target mean number of jumps in [t_max − 1, t_max].
pub const S_STAR: f64 = 1000.0;

/// The tuned quantities before assembly into a [`Schedule`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TuningReport {
    pub t_max_star: f64,
    pub b_star: f64,
    pub s_star: f64,
    pub lambda_star: f64,
    pub dt: f64,
}

/// Computes the tuning recipe for a graph. Fails on a zero-diameter
/// (single-vertex) graph.
pub fn tuning_report(graph: &WeightedGraph, summary: &GraphSummary) -> Result<TuningReport> {
    if summary.diameter <= 0.0 {
        return Err(Error::ZeroDiameter);
    }
    let t_max_star = 100.0 + 0.1 * graph.vertex_count() as f64;
    Ok(TuningReport {
        t_max_star,
        b_star: 2.0 / summary.diameter,
        s_star: S_STAR,
        lambda_star: S_STAR / (2.0 * t_max_star + 1.0),
        dt: (0.1 * graph.min_edge_length()).powi(2),
    })
}

/// Per-field replacements applied after the recipe.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScheduleOverrides {
    pub b: Option<f64>,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub window: Option<f64>,
}

impl ScheduleOverrides {
    pub fn is_empty(&self) -> bool {
        self.b.is_none()
            && self.lambda.is_none()
            && self.gamma.is_none()
            && self.t_max.is_none()
            && self.dt.is_none()
            && self.window.is_none()
    }
}

/// Builds a validated schedule from the tuning recipe, then applies any
/// overrides and re-validates.
pub fn auto_tune(
    graph: &WeightedGraph,
    summary: &GraphSummary,
    overrides: &ScheduleOverrides,
) -> Result<Schedule> {
    let report = tuning_report(graph, summary)?;
    let mut schedule = Schedule {
        b: report.b_star,
        lambda: report.lambda_star,
        gamma: 1.0,
        t_max: report.t_max_star,
        dt: report.dt,
        window: DEFAULT_WINDOW,
    };
    if let Some(b) = overrides.b {
        schedule.b = b;
    }
    if let Some(lambda) = overrides.lambda {
        schedule.lambda = lambda;
    }
    if let Some(gamma) = overrides.gamma {
        schedule.gamma = gamma;
    }
    if let Some(t_max) = overrides.t_max {
        schedule.t_max = t_max;
    }
    if let Some(dt) = overrides.dt {
        schedule.dt = dt;
    }
    if let Some(window) = overrides.window {
        schedule.window = window;
    }
    schedule.validate(graph)?;
    Ok(schedule)
}

/// A named multiplier set over the tuned schedule: scales b, the jump budget
/// S, and the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPreset {
    pub name: &'static str,
    pub beta_mult: f64,
    pub s_mult: f64,
    pub tmax_mult: f64,
}

/// The sweep axes of the reference experiments: β multipliers and
/// S / t_max multipliers.
pub const PRESETS: &[SweepPreset] = &[
    SweepPreset { name: "base", beta_mult: 1.0, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "quarter-beta", beta_mult: 0.25, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "half-beta", beta_mult: 0.5, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "double-beta", beta_mult: 2.0, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "quad-beta", beta_mult: 4.0, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "oct-beta", beta_mult: 8.0, s_mult: 1.0, tmax_mult: 1.0 },
    SweepPreset { name: "half-s", beta_mult: 1.0, s_mult: 0.5, tmax_mult: 1.0 },
    SweepPreset { name: "double-s", beta_mult: 1.0, s_mult: 2.0, tmax_mult: 1.0 },
    SweepPreset { name: "double-tmax", beta_mult: 1.0, s_mult: 1.0, tmax_mult: 2.0 },
    SweepPreset { name: "quad-tmax", beta_mult: 1.0, s_mult: 1.0, tmax_mult: 4.0 },
];

pub fn find_preset(name: &str) -> Result<&'static SweepPreset> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset {
            name: name.to_string(),
        })
}

/// Applies a preset to a schedule: b is scaled directly; the implied jump
/// budget over the final unit interval is scaled and the intensity
/// recomputed against the (possibly rescaled) horizon.
pub fn apply_preset(schedule: &Schedule, preset: &SweepPreset) -> Schedule {
    let implied_s = schedule.expected_jumps(schedule.t_max - 1.0, schedule.t_max);
    let mut out = *schedule;
    out.b = schedule.b * preset.beta_mult;
    out.t_max = schedule.t_max * preset.tmax_mult;
    let p = schedule.gamma + 1.0;
    let tail = (out.t_max + 1.0).powf(p) - out.t_max.powf(p);
    out.lambda = preset.s_mult * implied_s / tail;
    out
}

/// Human-readable caution when the tuned exponent exceeds the admissibility
/// bound b·c★ ≤ 1 implied by a landscape estimate.
pub fn admissibility_warning(b: f64, estimate: &LandscapeEstimate) -> Option<String> {
    if estimate.c_star > 0.0 && b * estimate.c_star > 1.0 {
        Some(format!(
            "b = {b} exceeds the admissibility bound 1/c_star = {}; convergence is not guaranteed",
            1.0 / estimate.c_star
        ))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, summarize, GraphSummary};
    use crate::shortest::all_pairs;
    use crate::test_util::{figure_graph, figure_table, path_graph};

    #[test]
    fn recipe_for_five_hundred_nodes() {
        let g = path_graph(500);
        let t = all_pairs(&g).unwrap();
        let summary = summarize(&g, &t).unwrap();
        let report = tuning_report(&g, &summary).unwrap();
        assert!((report.t_max_star - 150.0).abs() < 1e-12);
        assert!((report.lambda_star - 1000.0 / 301.0).abs() < 1e-12);
        assert!((report.lambda_star - 3.32226).abs() < 1e-5);
    }

    #[test]
    fn recipe_for_figure_diameter() {
        let g = figure_graph();
        let t = figure_table(&g);
        let summary = summarize(&g, &t).unwrap();
        let report = tuning_report(&g, &summary).unwrap();
        // Diameter 0.2 gives b = 10.
        assert!((report.b_star - 10.0).abs() < 1e-9);
    }

    #[test]
    fn large_horizon_arithmetic() {
        let g = path_graph(4039);
        // Unit path: diameter is N - 1, no need for the full table.
        let summary = GraphSummary {
            diameter: 4038.0,
            perimeter: 4038.0,
            vertex_count: 4039,
            edge_count: 4038,
            max_edge_length: 1.0,
            min_edge_length: 1.0,
        };
        let report = tuning_report(&g, &summary).unwrap();
        assert!((report.t_max_star - 503.9).abs() < 1e-9);
    }

    #[test]
    fn tuned_schedule_hits_jump_budget() {
        let g = path_graph(500);
        let t = all_pairs(&g).unwrap();
        let summary = summarize(&g, &t).unwrap();
        let s = auto_tune(&g, &summary, &ScheduleOverrides::default()).unwrap();
        assert!((s.expected_jumps(s.t_max - 1.0, s.t_max) - S_STAR).abs() < 1e-6);
    }

    #[test]
    fn overrides_are_revalidated() {
        let g = figure_graph();
        let t = figure_table(&g);
        let summary = summarize(&g, &t).unwrap();
        let schedule = auto_tune(
            &g,
            &summary,
            &ScheduleOverrides {
                b: Some(3.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(schedule.b, 3.0);
        let err = auto_tune(
            &g,
            &summary,
            &ScheduleOverrides {
                dt: Some(1.0),
                ..Default::default()
            },
        );
        assert!(matches!(err, Err(Error::ScheduleInvalid { .. })));
    }

    #[test]
    fn zero_diameter_rejected() {
        // A two-vertex graph shrunk to one point is impossible here, so fake
        // the condition through the summary.
        let g = figure_graph();
        let t = figure_table(&g);
        let mut summary = summarize(&g, &t).unwrap();
        summary.diameter = 0.0;
        assert!(matches!(
            tuning_report(&g, &summary),
            Err(Error::ZeroDiameter)
        ));
    }

    #[test]
    fn presets_resolve_and_scale() {
        let g = path_graph(500);
        let t = all_pairs(&g).unwrap();
        let summary = summarize(&g, &t).unwrap();
        let base = auto_tune(&g, &summary, &ScheduleOverrides::default()).unwrap();

        let quarter = apply_preset(&base, find_preset("quarter-beta").unwrap());
        assert!((quarter.b - 0.25 * base.b).abs() < 1e-12);
        assert!((quarter.expected_jumps(quarter.t_max - 1.0, quarter.t_max) - S_STAR).abs() < 1e-6);

        let stretched = apply_preset(&base, find_preset("double-tmax").unwrap());
        assert!((stretched.t_max - 2.0 * base.t_max).abs() < 1e-12);
        assert!(
            (stretched.expected_jumps(stretched.t_max - 1.0, stretched.t_max) - S_STAR).abs()
                < 1e-6
        );

        let doubled = apply_preset(&base, find_preset("double-s").unwrap());
        assert!(
            (doubled.expected_jumps(doubled.t_max - 1.0, doubled.t_max) - 2.0 * S_STAR).abs()
                < 1e-6
        );

        assert!(matches!(
            find_preset("no-such-preset"),
            Err(Error::UnknownPreset { .. })
        ));
    }

    #[test]
    fn admissibility_warning_fires_only_above_bound() {
        let est = LandscapeEstimate {
            c_star: 0.5,
            max_elevation: 1.0,
            resolution: 0.01,
            points: 100,
            suggested_b: Some(1.8),
        };
        assert!(admissibility_warning(1.9, &est).is_none());
        assert!(admissibility_warning(2.5, &est).is_some());
        let single_well = LandscapeEstimate {
            c_star: 0.0,
            max_elevation: 1.0,
            resolution: 0.01,
            points: 100,
            suggested_b: None,
        };
        assert!(admissibility_warning(1e9, &single_well).is_none());
    }

    #[test]
    fn uniform_mass_normalization() {
        let g = build_graph(&[(0, 1, 2.0)], None).unwrap();
        assert_eq!(g.node_dist(), &[0.5, 0.5]);
    }
}
