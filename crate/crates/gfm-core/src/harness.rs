//! Monte-Carlo replication harness: repeated seeded runs compared against
//! the exhaustive oracle, aggregated into error rate, median top frequency
//! and average time, plus preset sweeps and the baseline comparison.

use rayon::prelude::*;

use crate::annealing::{run_annealing, run_mh_baseline, RunResult, Schedule};
use crate::energy::exact_barycenter;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::shortest::GeodesicTable;
use crate::tuning::{apply_preset, find_preset};

/// One replication, reduced to the aggregate-relevant fields.
#[derive(Debug, Clone)]
pub struct ReplicationRecord {
    pub seed: u64,
    pub estimate: usize,
    pub max_frequency: f64,
    /// Wall-clock seconds; measurement only, never part of seeded output.
    pub wall_time: f64,
}

/// Aggregated outcome of R replications against the oracle argmin set.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub replication_count: usize,
    /// Sorted by seed.
    pub records: Vec<ReplicationRecord>,
    /// Fraction of replications whose estimate is outside the argmin set.
    pub error_rate: f64,
    pub median_max_frequency: f64,
    pub average_time: f64,
    pub schedule: Schedule,
    pub ground_truth: Vec<usize>,
    /// Full per-replication frequency vectors, kept only on request.
    pub frequencies: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BenchOptions {
    /// Keep every replication's full frequency vector (for violin-style CSV).
    pub collect_frequencies: bool,
}

/// Runs the annealing estimator with seeds `base_seed..base_seed+r`,
/// replications in parallel over the ambient thread pool. Aggregation is
/// order-independent, so reports are identical at any worker count.
pub fn bench(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    r: usize,
    base_seed: u64,
) -> Result<BenchReport> {
    bench_with(graph, table, schedule, r, base_seed, &BenchOptions::default())
}

pub fn bench_with(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    r: usize,
    base_seed: u64,
    options: &BenchOptions,
) -> Result<BenchReport> {
    bench_runner(graph, table, schedule, r, base_seed, options, run_annealing)
}

/// As [`bench`], using the Metropolis–Hastings baseline per replication.
pub fn bench_mh(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    r: usize,
    base_seed: u64,
) -> Result<BenchReport> {
    bench_runner(
        graph,
        table,
        schedule,
        r,
        base_seed,
        &BenchOptions::default(),
        run_mh_baseline,
    )
}

fn bench_runner<F>(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    r: usize,
    base_seed: u64,
    options: &BenchOptions,
    run: F,
) -> Result<BenchReport>
where
    F: Fn(&WeightedGraph, &GeodesicTable, &Schedule, u64) -> Result<RunResult> + Sync,
{
    if r == 0 {
        return Err(Error::InvalidReplicationCount);
    }
    schedule.validate(graph)?;
    let ground_truth = exact_barycenter(graph, table).argmin;

    let results: Vec<RunResult> = (0..r)
        .into_par_iter()
        .map(|i| run(graph, table, schedule, base_seed + i as u64))
        .collect::<Result<_>>()?;

    let records: Vec<ReplicationRecord> = results
        .iter()
        .map(|res| ReplicationRecord {
            seed: res.seed,
            estimate: res.estimate,
            max_frequency: res.max_frequency,
            wall_time: res.wall_time,
        })
        .collect();

    let misses = records
        .iter()
        .filter(|rec| !ground_truth.contains(&rec.estimate))
        .count();
    let average_time = records.iter().map(|rec| rec.wall_time).sum::<f64>() / r as f64;
    let median_max_frequency = median(records.iter().map(|rec| rec.max_frequency).collect());

    let frequencies = options
        .collect_frequencies
        .then(|| results.into_iter().map(|res| res.frequencies).collect());

    Ok(BenchReport {
        replication_count: r,
        records,
        error_rate: misses as f64 / r as f64,
        median_max_frequency,
        average_time,
        schedule: *schedule,
        ground_truth,
        frequencies,
    })
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("frequencies are finite"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// One bench per named preset, sharing the geodesic table.
pub fn sweep(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    base_schedule: &Schedule,
    preset_names: &[String],
    r: usize,
    base_seed: u64,
) -> Result<Vec<(String, BenchReport)>> {
    let mut presets = Vec::with_capacity(preset_names.len());
    for name in preset_names {
        presets.push(find_preset(name)?);
    }
    presets
        .iter()
        .map(|preset| {
            let schedule = apply_preset(base_schedule, preset);
            bench(graph, table, &schedule, r, base_seed)
                .map(|report| (preset.name.to_string(), report))
        })
        .collect()
}

/// Runs both estimators on identical seeds.
#[derive(Debug, Clone)]
pub struct BaselineComparison {
    pub annealing: BenchReport,
    pub metropolis: BenchReport,
}

pub fn baseline_compare(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    schedule: &Schedule,
    r: usize,
    base_seed: u64,
) -> Result<BaselineComparison> {
    Ok(BaselineComparison {
        annealing: bench(graph, table, schedule, r, base_seed)?,
        metropolis: bench_mh(graph, table, schedule, r, base_seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::shortest::all_pairs;
    use crate::test_util::{figure_graph, figure_table};

    fn quick_schedule(graph: &WeightedGraph) -> Schedule {
        Schedule {
            b: 2.0,
            lambda: 5.0,
            gamma: 1.0,
            t_max: 5.0,
            dt: (0.1 * graph.min_edge_length()).powi(2),
            window: 0.1,
        }
    }

    #[test]
    fn zero_replications_rejected() {
        let g = figure_graph();
        let t = figure_table(&g);
        assert!(matches!(
            bench(&g, &t, &quick_schedule(&g), 0, 0),
            Err(Error::InvalidReplicationCount)
        ));
    }

    #[test]
    fn single_replication_echoes_run() {
        let g = build_graph(&[(0, 1, 1.0)], Some(&[1.0, 0.0])).unwrap();
        let t = all_pairs(&g).unwrap();
        let report = bench(&g, &t, &quick_schedule(&g), 1, 42).unwrap();
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].seed, 42);
        assert!(report.error_rate == 0.0 || report.error_rate == 1.0);
        assert_eq!(report.median_max_frequency, report.records[0].max_frequency);
    }

    #[test]
    fn reports_are_reproducible() {
        let g = figure_graph();
        let t = figure_table(&g);
        let s = quick_schedule(&g);
        let a = bench(&g, &t, &s, 8, 100).unwrap();
        let b = bench(&g, &t, &s, 8, 100).unwrap();
        assert_eq!(a.error_rate, b.error_rate);
        assert_eq!(a.median_max_frequency, b.median_max_frequency);
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert_eq!(ra.seed, rb.seed);
            assert_eq!(ra.estimate, rb.estimate);
            assert_eq!(ra.max_frequency, rb.max_frequency);
        }
    }

    #[test]
    fn records_sorted_by_seed_and_rates_consistent() {
        let g = figure_graph();
        let t = figure_table(&g);
        let report = bench(&g, &t, &quick_schedule(&g), 16, 7).unwrap();
        for window in report.records.windows(2) {
            assert!(window[0].seed < window[1].seed);
        }
        let recomputed = report
            .records
            .iter()
            .filter(|rec| !report.ground_truth.contains(&rec.estimate))
            .count() as f64
            / report.replication_count as f64;
        assert_eq!(recomputed, report.error_rate);
        assert!((0.0..=1.0).contains(&report.median_max_frequency));
    }

    #[test]
    fn concentrated_mass_perfect_agreement() {
        let g = build_graph(&[(0, 1, 1.0), (1, 2, 1.0)], Some(&[0.0, 1.0, 0.0])).unwrap();
        let t = all_pairs(&g).unwrap();
        // Every jump pulls to the single mass point; run long enough for the
        // occupation window to settle there on every seed.
        let s = Schedule {
            b: 4.0,
            lambda: 5.0,
            gamma: 1.0,
            t_max: 20.0,
            dt: (0.1 * g.min_edge_length()).powi(2),
            window: 0.1,
        };
        let cmp = baseline_compare(&g, &t, &s, 10, 3).unwrap();
        assert_eq!(cmp.annealing.error_rate, 0.0);
        assert_eq!(cmp.metropolis.error_rate, 0.0);
    }

    #[test]
    fn sweep_over_presets() {
        let g = figure_graph();
        let t = figure_table(&g);
        let s = quick_schedule(&g);
        let out = sweep(
            &g,
            &t,
            &s,
            &["base".to_string(), "double-beta".to_string()],
            4,
            0,
        )
        .unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].0, "base");
        assert_eq!(out[1].0, "double-beta");
        assert!((out[1].1.schedule.b - 2.0 * s.b).abs() < 1e-12);

        let empty = sweep(&g, &t, &s, &[], 4, 0).unwrap();
        assert!(empty.is_empty());

        assert!(matches!(
            sweep(&g, &t, &s, &["bogus".to_string()], 4, 0),
            Err(Error::UnknownPreset { .. })
        ));
    }

    #[test]
    fn collected_frequencies_match_replications() {
        let g = figure_graph();
        let t = figure_table(&g);
        let report = bench_with(
            &g,
            &t,
            &quick_schedule(&g),
            3,
            11,
            &BenchOptions {
                collect_frequencies: true,
            },
        )
        .unwrap();
        let freqs = report.frequencies.as_ref().unwrap();
        assert_eq!(freqs.len(), 3);
        for row in freqs {
            assert_eq!(row.len(), g.vertex_count());
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }
}
