//! Discrete weighted graph with a node probability distribution.
//!
//! The graph is simple, undirected, connected, and stored sparsely as a list
//! of per-vertex neighbor lists. Each edge carries a strictly positive length
//! and a fixed orientation from its smaller to its larger vertex id; quantum
//! positions and step directions elsewhere in the crate are expressed
//! relative to that orientation.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::shortest::GeodesicTable;

/// Tolerance on the node-distribution sum after normalization.
pub const DIST_SUM_TOLERANCE: f64 = 1e-12;

/// An undirected edge, oriented from `u` (coordinate 0) to `v` (coordinate `length`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    /// Endpoint opposite to `w`. Panics if `w` is not an endpoint.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            debug_assert_eq!(w, self.v);
            self.u
        }
    }
}

/// A validated weighted graph together with its node distribution.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    node_dist: Vec<f64>,
    cumulative: Vec<f64>,
    min_edge_length: f64,
    max_edge_length: f64,
}

impl WeightedGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Neighbors of `v` as `(neighbor id, edge id)` pairs, in edge-input order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Number of incident edges of `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn node_dist(&self) -> &[f64] {
        &self.node_dist
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn min_edge_length(&self) -> f64 {
        self.min_edge_length
    }

    pub fn max_edge_length(&self) -> f64 {
        self.max_edge_length
    }

    /// Total edge length L.
    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Edge id between `u` and `v`, if one exists.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency[u]
            .iter()
            .find(|(nbr, _)| *nbr == v)
            .map(|(_, eid)| *eid)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Draw a vertex according to the node distribution, by inversion of the
    /// precomputed cumulative table.
    pub fn sample_node<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.vertex_count() - 1)
    }
}

/// Builds and validates a graph from numeric (0-based) edge endpoints.
///
/// Missing `node_weights` yields the uniform distribution; provided weights
/// are normalized to sum to one.
pub fn build_graph(
    edges: &[(usize, usize, f64)],
    node_weights: Option<&[f64]>,
) -> Result<WeightedGraph> {
    let n = vertex_span(edges, node_weights);
    let labels = (0..n).map(|v| v.to_string()).collect();
    build_graph_with_labels(edges, node_weights, labels)
}

/// As [`build_graph`], with caller-supplied vertex labels (one per vertex).
pub fn build_graph_with_labels(
    edges: &[(usize, usize, f64)],
    node_weights: Option<&[f64]>,
    labels: Vec<String>,
) -> Result<WeightedGraph> {
    let n = vertex_span(edges, node_weights).max(labels.len());
    assert_eq!(labels.len(), n, "one label per vertex");
    assert!(!edges.is_empty(), "edge list must be nonempty");

    let mut oriented = Vec::with_capacity(edges.len());
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(a, b, length) in edges {
        if a == b {
            return Err(Error::SelfLoop {
                vertex: labels[a].clone(),
                line: None,
            });
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if !seen.insert((u, v)) {
            return Err(Error::DuplicateEdge {
                u: labels[u].clone(),
                v: labels[v].clone(),
                line: None,
            });
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::NonPositiveLength {
                u: labels[u].clone(),
                v: labels[v].clone(),
                length,
                line: None,
            });
        }
        oriented.push(Edge { u, v, length });
    }

    let mut adjacency = vec![Vec::new(); n];
    for (eid, e) in oriented.iter().enumerate() {
        adjacency[e.u].push((e.v, eid));
        adjacency[e.v].push((e.u, eid));
    }

    // Connectivity from vertex 0.
    let mut reached = vec![false; n];
    let mut stack = vec![0usize];
    reached[0] = true;
    while let Some(v) = stack.pop() {
        for &(nbr, _) in &adjacency[v] {
            if !reached[nbr] {
                reached[nbr] = true;
                stack.push(nbr);
            }
        }
    }
    if let Some(v) = reached.iter().position(|r| !r) {
        return Err(Error::Disconnected {
            vertex: labels[v].clone(),
        });
    }

    let node_dist = match node_weights {
        None => vec![1.0 / n as f64; n],
        Some(weights) => {
            assert_eq!(weights.len(), n, "one weight per vertex");
            for (v, &w) in weights.iter().enumerate() {
                if w < 0.0 || !w.is_finite() {
                    return Err(Error::NegativeNodeWeight {
                        vertex: labels[v].clone(),
                        weight: w,
                        line: None,
                    });
                }
            }
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                return Err(Error::AllZeroNodeWeights);
            }
            weights.iter().map(|w| w / total).collect()
        }
    };

    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &p in &node_dist {
        acc += p;
        cumulative.push(acc);
    }
    // Pin the tail so inversion sampling can never fall off the end.
    *cumulative.last_mut().unwrap() = 1.0;

    let min_edge_length = oriented.iter().map(|e| e.length).fold(f64::INFINITY, f64::min);
    let max_edge_length = oriented.iter().map(|e| e.length).fold(0.0, f64::max);

    Ok(WeightedGraph {
        labels,
        edges: oriented,
        adjacency,
        node_dist,
        cumulative,
        min_edge_length,
        max_edge_length,
    })
}

fn vertex_span(edges: &[(usize, usize, f64)], node_weights: Option<&[f64]>) -> usize {
    let from_edges = edges
        .iter()
        .map(|&(u, v, _)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    from_edges.max(node_weights.map_or(0, <[f64]>::len))
}

/// Headline structural quantities of a graph.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GraphSummary {
    pub diameter: f64,
    pub perimeter: f64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_edge_length: f64,
    pub min_edge_length: f64,
}

/// Computes diameter (largest pairwise geodesic distance) and perimeter
/// (total edge length) from a precomputed distance table.
pub fn summarize(graph: &WeightedGraph, geodesics: &GeodesicTable) -> Result<GraphSummary> {
    let n = graph.vertex_count();
    if geodesics.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: geodesics.vertex_count(),
        });
    }
    let mut diameter = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max(geodesics.distance(i, j));
        }
    }
    Ok(GraphSummary {
        diameter,
        perimeter: graph.perimeter(),
        vertex_count: n,
        edge_count: graph.edge_count(),
        max_edge_length: graph.max_edge_length(),
        min_edge_length: graph.min_edge_length(),
    })
}
