//! File formats and synthetic graph generation.
//!
//! Edge lists are whitespace-separated `u v [w]` lines with `#` comments and
//! arbitrary non-whitespace labels. In co-authorship mode the third column is
//! a joint-paper count k mapped to an edge length of 1/k. The distance cache
//! is a binary dump of the all-pairs table that round-trips byte-exactly.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph_with_labels, WeightedGraph};
use crate::shortest::GeodesicTable;

/// How the optional third column of an edge line is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightMode {
    /// The column is the edge length itself (default 1.0 when omitted).
    Lengths,
    /// The column is a co-authorship count k; the edge length is 1/k.
    CoauthorCounts,
}

/// Magic prefix of the distance-cache file.
pub const CACHE_MAGIC: &[u8; 8] = b"GFMDIST1";

/// Parses an edge list (and optional node-weight file) into a validated graph.
///
/// Labels are mapped to dense internal ids in order of first appearance and
/// kept on the graph. Graph nodes missing from the weight file get mass zero;
/// an absent file means the uniform distribution.
pub fn parse_graph(
    edge_path: &Path,
    node_weight_path: Option<&Path>,
    mode: EdgeWeightMode,
) -> Result<WeightedGraph> {
    let edges = fs::read_to_string(edge_path)?;
    let weights = match node_weight_path {
        Some(p) => Some(fs::read_to_string(p)?),
        None => None,
    };
    parse_graph_from_str(&edges, weights.as_deref(), mode)
}

/// In-memory variant of [`parse_graph`].
pub fn parse_graph_from_str(
    edge_text: &str,
    weight_text: Option<&str>,
    mode: EdgeWeightMode,
) -> Result<WeightedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids = std::collections::HashMap::new();
    let mut intern = |token: &str, labels: &mut Vec<String>| -> usize {
        *ids.entry(token.to_string()).or_insert_with(|| {
            labels.push(token.to_string());
            labels.len() - 1
        })
    };

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in edge_text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let mut fields = line.split_whitespace();
        let Some(a) = fields.next() else { continue };
        let Some(b) = fields.next() else {
            return Err(Error::Parse {
                line: line_no,
                message: "expected at least two fields: u v [w]".into(),
            });
        };
        let column = fields
            .next()
            .map(|w| {
                w.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("cannot parse weight '{w}'"),
                })
            })
            .transpose()?;
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing field '{extra}'"),
            });
        }
        if a == b {
            return Err(Error::SelfLoop {
                vertex: a.to_string(),
                line: Some(line_no),
            });
        }
        let length = match mode {
            EdgeWeightMode::Lengths => {
                let length = column.unwrap_or(1.0);
                if !(length > 0.0) || !length.is_finite() {
                    return Err(Error::NonPositiveLength {
                        u: a.to_string(),
                        v: b.to_string(),
                        length,
                        line: Some(line_no),
                    });
                }
                length
            }
            EdgeWeightMode::CoauthorCounts => {
                let count = column.unwrap_or(1.0);
                if !(count > 0.0) || !count.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("co-author count must be positive, got {count}"),
                    });
                }
                1.0 / count
            }
        };
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge {
                u: a.to_string(),
                v: b.to_string(),
                line: Some(line_no),
            });
        }
        edges.push((u, v, length));
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "edge list contains no edges".into(),
        });
    }

    let node_weights = match weight_text {
        None => None,
        Some(text) => {
            let mut weights = vec![0.0f64; labels.len()];
            let mut assigned = vec![false; labels.len()];
            for (idx, raw) in text.lines().enumerate() {
                let line_no = idx + 1;
                let line = strip_comment(raw);
                let mut fields = line.split_whitespace();
                let Some(label) = fields.next() else { continue };
                let Some(mass) = fields.next() else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected: label mass".into(),
                    });
                };
                let mass: f64 = mass.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("cannot parse mass '{mass}'"),
                })?;
                let Some(&v) = ids.get(label) else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("label '{label}' does not appear in the edge list"),
                    });
                };
                if assigned[v] {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("label '{label}' listed twice"),
                    });
                }
                if mass < 0.0 || !mass.is_finite() {
                    return Err(Error::NegativeNodeWeight {
                        vertex: label.to_string(),
                        weight: mass,
                        line: Some(line_no),
                    });
                }
                assigned[v] = true;
                weights[v] = mass;
            }
            Some(weights)
        }
    };

    build_graph_with_labels(&edges, node_weights.as_deref(), labels)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Serializes a graph back to edge-list lines (`label label length`). Along
/// with [`parse_graph_from_str`], round-trips modulo whitespace and ordering.
pub fn format_edge_list(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    for e in graph.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            graph.label(e.u),
            graph.label(e.v),
            e.length
        ));
    }
    out
}

/// Writes the all-pairs table: magic, vertex count, the distance matrix and
/// the next-hop matrix, all little-endian.
pub fn save_distance_cache(table: &GeodesicTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&(table.vertex_count() as u64).to_le_bytes())?;
    for &d in table.distances() {
        w.write_all(&d.to_le_bytes())?;
    }
    for &h in table.next_hops() {
        w.write_all(&h.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a table written by [`save_distance_cache`], validating magic and size.
pub fn load_distance_cache(path: &Path) -> Result<GeodesicTable> {
    let mut r = BufReader::new(fs::File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Cache {
            message: format!("bad magic {magic:?}"),
        });
    }
    let mut n_bytes = [0u8; 8];
    r.read_exact(&mut n_bytes)?;
    let n = u64::from_le_bytes(n_bytes) as usize;

    let mut dist = vec![0.0f64; n * n];
    let mut buf = [0u8; 8];
    for slot in dist.iter_mut() {
        r.read_exact(&mut buf)?;
        *slot = f64::from_le_bytes(buf);
    }
    let mut next_hop = vec![0u32; n * n];
    let mut buf4 = [0u8; 4];
    for slot in next_hop.iter_mut() {
        r.read_exact(&mut buf4)?;
        *slot = u32::from_le_bytes(buf4);
    }
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(Error::Cache {
            message: "trailing bytes after matrices".into(),
        });
    }
    GeodesicTable::from_parts(n, dist, next_hop)
}

/// Checks that a cached table belongs to `graph` (by vertex count).
pub fn check_cache_matches(graph: &WeightedGraph, table: &GeodesicTable) -> Result<()> {
    if table.vertex_count() != graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.vertex_count(),
            actual: table.vertex_count(),
        });
    }
    Ok(())
}

/// Generates a two-community test graph with unit edges and uniform node
/// distribution, deterministic per seed: a dense ego-style cluster whose hub
/// (vertex 0) neighbors every other member, fringe filled with random edges
/// up to `intra_degree`, joined by `bridge_count` random bridges to a looser
/// random cluster (ids n..2n-1) of the same edge budget but no hub. The hub
/// is decisively central, so the resulting Fréchet mean is unambiguous.
pub fn generate_two_cluster(
    n_per_cluster: usize,
    intra_degree: usize,
    bridge_count: usize,
    seed: u64,
) -> Result<WeightedGraph> {
    if n_per_cluster < 1 || intra_degree < 1 {
        return Err(Error::InfeasibleDegree {
            reason: "cluster size and degree must be >= 1".into(),
        });
    }
    let n = n_per_cluster;
    let target_edges = (n * intra_degree).div_ceil(2);
    let complete = n * (n - 1) / 2;
    if target_edges > complete {
        return Err(Error::InfeasibleDegree {
            reason: format!(
                "degree {intra_degree} needs {target_edges} edges, a simple cluster of {n} holds {complete}"
            ),
        });
    }
    if bridge_count > n * n {
        return Err(Error::InfeasibleDegree {
            reason: format!("cannot place {bridge_count} distinct bridges between clusters of {n}"),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    let mut add_random_fringe =
        |rng: &mut ChaCha8Rng,
         edges: &mut Vec<(usize, usize, f64)>,
         seen: &mut std::collections::HashSet<(usize, usize)>,
         offset: usize,
         lo: usize,
         mut extra: usize| {
            let mut attempts = 0usize;
            while extra > 0 && attempts < 100 * target_edges + 100 {
                attempts += 1;
                let a = rng.random_range(lo..n);
                let b = rng.random_range(lo..n);
                if a == b {
                    continue;
                }
                let key = (offset + a.min(b), offset + a.max(b));
                if seen.insert(key) {
                    edges.push((key.0, key.1, 1.0));
                    extra -= 1;
                }
            }
            // Dense corner case: fill deterministically instead of rejecting forever.
            if extra > 0 {
                'fill: for a in lo..n {
                    for b in (a + 1)..n {
                        if seen.insert((offset + a, offset + b)) {
                            edges.push((offset + a, offset + b, 1.0));
                            extra -= 1;
                            if extra == 0 {
                                break 'fill;
                            }
                        }
                    }
                }
            }
        };

    // Ego cluster: hub 0 adjacent to every member, random fringe on top.
    for i in 1..n {
        edges.push((0, i, 1.0));
        seen.insert((0, i));
    }
    let fringe = target_edges.saturating_sub(n - 1);
    add_random_fringe(&mut rng, &mut edges, &mut seen, 0, 1, fringe);

    // Loose cluster: random attachment tree plus random chords, no hub.
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((n + j, n + i, 1.0));
        seen.insert((n + j, n + i));
    }
    let chords = target_edges.saturating_sub(n - 1);
    add_random_fringe(&mut rng, &mut edges, &mut seen, n, 0, chords);

    let mut placed = 0usize;
    let mut attempts = 0usize;
    while placed < bridge_count && attempts < 100 * bridge_count + 100 {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = n + rng.random_range(0..n);
        if seen.insert((a, b)) {
            edges.push((a, b, 1.0));
            placed += 1;
        }
    }
    if placed < bridge_count {
        'fill: for a in 0..n {
            for b in n..2 * n {
                if seen.insert((a, b)) {
                    edges.push((a, b, 1.0));
                    placed += 1;
                    if placed == bridge_count {
                        break 'fill;
                    }
                }
            }
        }
    }

    let labels = (0..2 * n).map(|v| v.to_string()).collect();
    build_graph_with_labels(&edges, None, labels)
}
