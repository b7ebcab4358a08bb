//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the library's shortest-path and energy
//! code: distances come from Floyd–Warshall or exhaustive simple-path
//! enumeration over the raw edge list, energies from direct weighted sums.

#![allow(dead_code)]

use gfm_core::{build_graph, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The five-author example graph: paper vertex i at internal id i-1.
pub fn figure_graph() -> WeightedGraph {
    build_graph(&figure_edges(), Some(&[0.5, 0.1, 0.1, 0.2, 0.1])).expect("figure graph is valid")
}

pub fn figure_edges() -> Vec<(usize, usize, f64)> {
    vec![
        (0, 1, 0.2),
        (1, 2, 0.1),
        (0, 3, 1.0),
        (0, 4, 0.1),
        (2, 4, 0.05),
        (3, 4, 1.0 / 30.0),
    ]
}

/// Floyd–Warshall over the raw edge list.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in edges {
        if w < dist[u][v] {
            dist[u][v] = w;
            dist[v][u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

/// Exhaustive minimum over all simple paths between two vertices.
pub fn simple_path_distance(n: usize, edges: &[(usize, usize, f64)], from: usize, to: usize) -> f64 {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    let mut best = f64::INFINITY;
    let mut visited = vec![false; n];
    visited[from] = true;
    dfs(&adj, &mut visited, from, to, 0.0, &mut best);
    best
}

fn dfs(
    adj: &[Vec<(usize, f64)>],
    visited: &mut Vec<bool>,
    at: usize,
    to: usize,
    acc: f64,
    best: &mut f64,
) {
    if at == to {
        *best = best.min(acc);
        return;
    }
    for &(next, w) in &adj[at] {
        if !visited[next] {
            visited[next] = true;
            dfs(adj, visited, next, to, acc + w, best);
            visited[next] = false;
        }
    }
}

/// Vertex energies ½ Σ_y ν(y) d(v,y)² from an externally supplied distance matrix.
pub fn energies_from_matrix(dist: &[Vec<f64>], nu: &[f64]) -> Vec<f64> {
    (0..dist.len())
        .map(|v| {
            0.5 * dist[v]
                .iter()
                .zip(nu)
                .map(|(d, p)| p * d * d)
                .sum::<f64>()
        })
        .collect()
}

/// Random connected simple graph: a random attachment tree plus extra edges,
/// weights uniform in [0.1, 10]. Deterministic per seed.
pub fn random_connected_edges(seed: u64, n: usize, extra: usize) -> Vec<(usize, usize, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((j, i, rng.random_range(0.1..10.0)));
        seen.insert((j, i));
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 50 * extra + 50 {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push((key.0, key.1, rng.random_range(0.1..10.0)));
            added += 1;
        }
    }
    edges
}

pub fn random_connected_graph(seed: u64, n: usize, extra: usize) -> (WeightedGraph, Vec<(usize, usize, f64)>) {
    let edges = random_connected_edges(seed, n, extra);
    let graph = build_graph(&edges, None).expect("construction keeps the tree connected");
    (graph, edges)
}
