//! All-pairs geodesic distances with next-hop routing.
//!
//! Distances are computed once, up front, as one Dijkstra run per source
//! vertex over the sparse neighbor lists, and stored densely so that every
//! later distance query is a single lookup.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Default cap on the vertex count of the dense matrix (N² doubles).
pub const DEFAULT_VERTEX_LIMIT: usize = 20_000;

/// Dense all-pairs distance matrix plus first-hop routing.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTable {
    n: usize,
    dist: Vec<f64>,
    next_hop: Vec<u32>,
}

impl GeodesicTable {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Geodesic distance d(i, j).
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// First vertex after `i` on a shortest path to `j`; `i` itself when `i == j`.
    #[inline]
    pub fn next_hop(&self, i: usize, j: usize) -> usize {
        self.next_hop[i * self.n + j] as usize
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn next_hops(&self) -> &[u32] {
        &self.next_hop
    }

    /// Reassembles a table from raw parts (used by the cache loader).
    pub fn from_parts(n: usize, dist: Vec<f64>, next_hop: Vec<u32>) -> Result<Self> {
        if dist.len() != n * n || next_hop.len() != n * n {
            return Err(Error::Cache {
                message: format!(
                    "matrix sizes {} / {} do not match vertex count {n}",
                    dist.len(),
                    next_hop.len()
                ),
            });
        }
        Ok(GeodesicTable { n, dist, next_hop })
    }
}

/// Computes the all-pairs table, one Dijkstra per source, rows in parallel.
pub fn all_pairs(graph: &WeightedGraph) -> Result<GeodesicTable> {
    all_pairs_with_limit(graph, DEFAULT_VERTEX_LIMIT)
}

/// As [`all_pairs`] with an explicit cap on the vertex count.
pub fn all_pairs_with_limit(graph: &WeightedGraph, limit: usize) -> Result<GeodesicTable> {
    let n = graph.vertex_count();
    if n > limit {
        return Err(Error::TooManyVertices {
            vertices: n,
            limit,
        });
    }
    let rows: Vec<(Vec<f64>, Vec<u32>)> = (0..n)
        .into_par_iter()
        .map(|source| dijkstra_row(graph, source))
        .collect();

    let mut dist = Vec::with_capacity(n * n);
    let mut next_hop = Vec::with_capacity(n * n);
    for (d, h) in rows {
        dist.extend_from_slice(&d);
        next_hop.extend_from_slice(&h);
    }
    Ok(GeodesicTable { n, dist, next_hop })
}

/// Single-source distances and first hops. Vertices settle in
/// (distance, vertex-id) order, so routing is deterministic even when several
/// shortest paths tie.
fn dijkstra_row(graph: &WeightedGraph, source: usize) -> (Vec<f64>, Vec<u32>) {
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut first = vec![u32::MAX; n];
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    first[source] = source as u32;
    heap.push(Reverse((OrderedFloat(0.0), source)));

    while let Some(Reverse((OrderedFloat(d), v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(nbr, eid) in graph.neighbors(v) {
            let candidate = d + graph.edge(eid).length;
            if candidate < dist[nbr] {
                dist[nbr] = candidate;
                first[nbr] = if v == source { nbr as u32 } else { first[v] };
                heap.push(Reverse((OrderedFloat(candidate), nbr)));
            }
        }
    }
    (dist, first)
}

/// Shortest path from `i` to `j` as a vertex list, following next hops.
pub fn reconstruct_path(table: &GeodesicTable, i: usize, j: usize) -> Result<Vec<usize>> {
    if i == j {
        return Err(Error::SameVertex { vertex: i });
    }
    let mut path = vec![i];
    let mut cur = i;
    while cur != j {
        cur = table.next_hop(cur, j);
        path.push(cur);
        debug_assert!(path.len() <= table.vertex_count(), "next-hop cycle");
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{figure_graph, path_graph};

    #[test]
    fn figure_distances() {
        let g = figure_graph();
        let t = all_pairs(&g).unwrap();
        // Paper ids are 1-based; internal ids shift down by one.
        assert!((t.distance(0, 3) - (0.1 + 1.0 / 30.0)).abs() < 1e-12); // 1-4 via 5
        assert!((t.distance(1, 3) - (0.1 + 0.05 + 1.0 / 30.0)).abs() < 1e-12); // 2-4 via 3,5
        assert!((t.distance(0, 2) - 0.15).abs() < 1e-12); // 1-3 via 5
        assert!((t.distance(1, 4) - 0.15).abs() < 1e-12); // 2-5 via 3
    }

    #[test]
    fn diagonal_is_zero() {
        let t = all_pairs(&figure_graph()).unwrap();
        for i in 0..5 {
            assert_eq!(t.distance(i, i), 0.0);
        }
    }

    #[test]
    fn unit_path_routing() {
        let g = path_graph(3);
        let t = all_pairs(&g).unwrap();
        assert_eq!(t.distance(0, 2), 2.0);
        assert_eq!(t.next_hop(0, 2), 1);
        assert_eq!(reconstruct_path(&t, 0, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn figure_paths() {
        let g = figure_graph();
        let t = all_pairs(&g).unwrap();
        assert_eq!(reconstruct_path(&t, 1, 3).unwrap(), vec![1, 2, 4, 3]);
        assert_eq!(reconstruct_path(&t, 0, 4).unwrap(), vec![0, 4]);
    }

    #[test]
    fn same_vertex_rejected() {
        let t = all_pairs(&figure_graph()).unwrap();
        assert!(matches!(
            reconstruct_path(&t, 2, 2),
            Err(Error::SameVertex { vertex: 2 })
        ));
    }

    #[test]
    fn vertex_limit_enforced() {
        let g = path_graph(10);
        assert!(matches!(
            all_pairs_with_limit(&g, 5),
            Err(Error::TooManyVertices { vertices: 10, limit: 5 })
        ));
    }
}
