//! The Fréchet energy, the exhaustive barycenter oracle, and numerical
//! estimation of the landscape constants that govern admissible cooling.
//!
//! The energy of a point x is U(x) = ½ Σ_y ν(y) d(x,y)². Its minimizers over
//! the metric graph form the Fréchet mean set. The critical depth c★ is the
//! deepest energy well holding a local-but-not-global minimum, computed here
//! on a discretization of the metric graph via minimax-elevation passes; the
//! maximal elevation M is the total energy range.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::QuantumPosition;
use crate::graph::WeightedGraph;
use crate::shortest::GeodesicTable;

/// Vertices within this slack of the minimum energy join the argmin set.
pub const ARGMIN_TOLERANCE: f64 = 1e-12;

/// Default cap on the number of discretization points for the c★ scan.
pub const DEFAULT_POINT_CAP: usize = 5000;

/// Safety margin applied below 1/c★ when suggesting an admissible exponent.
const SUGGESTED_B_MARGIN: f64 = 0.1;

/// Per-vertex energies and the minimizer set.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyProfile {
    pub energies: Vec<f64>,
    pub argmin: Vec<usize>,
    pub min_energy: f64,
    pub max_energy: f64,
}

/// Numerical estimate of the landscape constants on a discretized metric graph.
#[derive(Debug, Clone, Serialize)]
pub struct LandscapeEstimate {
    /// Critical depth c★: max over point pairs of H(x,y) − U(x) − U(y), plus min U.
    pub c_star: f64,
    /// Maximal elevation M = max U − min U over the discretization.
    pub max_elevation: f64,
    /// Discretization step actually requested.
    pub resolution: f64,
    /// Number of discretization points used.
    pub points: usize,
    /// (1 − margin)/c★ when c★ > 0; `None` means any exponent is admissible.
    pub suggested_b: Option<f64>,
}

/// U at a vertex: ½ Σ_y ν(y) d(v,y)².
pub fn energy_at_vertex(v: usize, graph: &WeightedGraph, table: &GeodesicTable) -> Result<f64> {
    graph.check_vertex(v)?;
    let nu = graph.node_dist();
    let mut acc = 0.0;
    for y in 0..graph.vertex_count() {
        let d = table.distance(v, y);
        acc += nu[y] * d * d;
    }
    Ok(0.5 * acc)
}

/// U at any point of the metric graph, via the two-sided edge distance.
pub fn energy_at_point(x: &QuantumPosition, graph: &WeightedGraph, table: &GeodesicTable) -> f64 {
    let e = graph.edge(x.edge);
    let nu = graph.node_dist();
    let mut acc = 0.0;
    for y in 0..graph.vertex_count() {
        let d = (x.coord + table.distance(e.u, y))
            .min((e.length - x.coord) + table.distance(e.v, y));
        acc += nu[y] * d * d;
    }
    0.5 * acc
}

/// Evaluates U at every vertex and collects the argmin set (ascending id,
/// all vertices within [`ARGMIN_TOLERANCE`] of the minimum).
pub fn exact_barycenter(graph: &WeightedGraph, table: &GeodesicTable) -> EnergyProfile {
    let n = graph.vertex_count();
    let energies: Vec<f64> = (0..n)
        .map(|v| energy_at_vertex(v, graph, table).expect("vertex in range"))
        .collect();
    let min_energy = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_energy = energies.iter().cloned().fold(0.0, f64::max);
    let argmin = (0..n)
        .filter(|&v| energies[v] - min_energy <= ARGMIN_TOLERANCE)
        .collect();
    EnergyProfile {
        energies,
        argmin,
        min_energy,
        max_energy,
    }
}

/// Estimates c★ and M on a discretization with step at most `h`.
pub fn estimate_cstar(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    h: f64,
) -> Result<LandscapeEstimate> {
    estimate_cstar_with_cap(graph, table, h, DEFAULT_POINT_CAP)
}

/// As [`estimate_cstar`] with an explicit cap on Σ_e ⌈L_e/h⌉.
pub fn estimate_cstar_with_cap(
    graph: &WeightedGraph,
    table: &GeodesicTable,
    h: f64,
    cap: usize,
) -> Result<LandscapeEstimate> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveResolution { resolution: h });
    }
    let segments: usize = graph
        .edges()
        .iter()
        .map(|e| (e.length / h).ceil() as usize)
        .sum();
    if segments > cap {
        return Err(Error::ResolutionTooFine {
            points: segments,
            cap,
        });
    }

    let disc = Discretization::build(graph, table, h);
    let min_u = disc.energy.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_u = disc.energy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    // max over pairs of H(x,y) − U(x) − U(y), one minimax pass per source.
    let best = (0..disc.energy.len())
        .into_par_iter()
        .map(|source| {
            let elevation = disc.minimax_from(source);
            let mut best = f64::NEG_INFINITY;
            for (y, &h_xy) in elevation.iter().enumerate() {
                best = best.max(h_xy - disc.energy[y]);
            }
            best - disc.energy[source]
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let c_star = best + min_u;
    let suggested_b = if c_star > 0.0 {
        Some((1.0 - SUGGESTED_B_MARGIN) / c_star)
    } else {
        None
    };
    Ok(LandscapeEstimate {
        c_star,
        max_elevation: max_u - min_u,
        resolution: h,
        points: disc.energy.len(),
        suggested_b,
    })
}

/// Points spread at most h apart along every edge, all vertices included,
/// with chain adjacency and precomputed energies.
struct Discretization {
    energy: Vec<f64>,
    adjacency: Vec<Vec<u32>>,
}

impl Discretization {
    fn build(graph: &WeightedGraph, table: &GeodesicTable, h: f64) -> Self {
        let n = graph.vertex_count();
        let mut energy: Vec<f64> = (0..n)
            .map(|v| energy_at_vertex(v, graph, table).expect("vertex in range"))
            .collect();
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];

        let link = |adjacency: &mut Vec<Vec<u32>>, a: usize, b: usize| {
            adjacency[a].push(b as u32);
            adjacency[b].push(a as u32);
        };

        for (eid, e) in graph.edges().iter().enumerate() {
            let k = (e.length / h).ceil() as usize;
            let mut prev = e.u;
            for j in 1..k {
                let coord = e.length * j as f64 / k as f64;
                let x = QuantumPosition { edge: eid, coord };
                let id = energy.len();
                energy.push(energy_at_point(&x, graph, table));
                adjacency.push(Vec::new());
                link(&mut adjacency, prev, id);
                prev = id;
            }
            link(&mut adjacency, prev, e.v);
        }
        Discretization { energy, adjacency }
    }

    /// Minimax elevation from `source` to every point: the smallest, over
    /// connecting paths, of the largest energy along the path (endpoints
    /// included). Dijkstra with max-composition instead of addition.
    fn minimax_from(&self, source: usize) -> Vec<f64> {
        let mut best = vec![f64::INFINITY; self.energy.len()];
        let mut heap = BinaryHeap::new();
        best[source] = self.energy[source];
        heap.push(Reverse((OrderedFloat(best[source]), source)));
        while let Some(Reverse((OrderedFloat(h), p))) = heap.pop() {
            if h > best[p] {
                continue;
            }
            for &q in &self.adjacency[p] {
                let q = q as usize;
                let candidate = h.max(self.energy[q]);
                if candidate < best[q] {
                    best[q] = candidate;
                    heap.push(Reverse((OrderedFloat(candidate), q)));
                }
            }
        }
        best
    }
}
