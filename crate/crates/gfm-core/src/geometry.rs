//! Geometry of the metric (quantum) graph: positions inside edges,
//! point-to-vertex geodesics, and movement along shortest paths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::shortest::GeodesicTable;

/// Relative coordinate slack under which a position resolves to an endpoint vertex.
pub const VERTEX_EPS: f64 = 1e-12;

/// A point of the metric graph: an edge and a coordinate along its fixed
/// orientation (0 at the edge's `u` endpoint, `length` at `v`).
///
/// A vertex of degree k has k edge-representations; [`QuantumPosition::resolve_vertex`]
/// and [`QuantumPosition::same_point`] compare positions up to that ambiguity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumPosition {
    pub edge: usize,
    pub coord: f64,
}

impl QuantumPosition {
    /// Canonical representation of vertex `v`: coordinate 0 or L on its first
    /// incident edge.
    pub fn at_vertex(graph: &WeightedGraph, v: usize) -> Self {
        let (_, eid) = graph.neighbors(v)[0];
        let e = graph.edge(eid);
        if e.u == v {
            QuantumPosition { edge: eid, coord: 0.0 }
        } else {
            QuantumPosition {
                edge: eid,
                coord: e.length,
            }
        }
    }

    /// The vertex this position stands on, if the coordinate is within
    /// `VERTEX_EPS · L_e` of an endpoint.
    pub fn resolve_vertex(&self, graph: &WeightedGraph) -> Option<usize> {
        let e = graph.edge(self.edge);
        let slack = VERTEX_EPS * e.length;
        if self.coord <= slack {
            Some(e.u)
        } else if self.coord >= e.length - slack {
            Some(e.v)
        } else {
            None
        }
    }

    /// Equality up to the vertex ambiguity: interior points must match exactly,
    /// endpoint points compare by resolved vertex.
    pub fn same_point(&self, other: &QuantumPosition, graph: &WeightedGraph) -> bool {
        match (self.resolve_vertex(graph), other.resolve_vertex(graph)) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.edge == other.edge && self.coord == other.coord,
            _ => false,
        }
    }
}

/// A direction of motion along one edge: sign is relative to the edge
/// orientation, magnitude is an arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedStep {
    pub edge: usize,
    pub sign: i8,
    pub magnitude: f64,
}

/// Geodesic distance from a point `x` to a vertex `v`: the two-sided minimum
/// over exiting through either endpoint of the current edge.
pub fn point_to_vertex_distance(
    x: &QuantumPosition,
    v: usize,
    graph: &WeightedGraph,
    table: &GeodesicTable,
) -> Result<f64> {
    graph.check_vertex(v)?;
    let e = graph.edge(x.edge);
    let through_u = x.coord + table.distance(e.u, v);
    let through_v = (e.length - x.coord) + table.distance(e.v, v);
    Ok(through_u.min(through_v))
}

/// Direction of steepest approach from `x` toward vertex `y`.
///
/// Magnitude equals the geodesic distance; when the two sides of the edge tie
/// exactly, or `x` already stands on `y`, the magnitude is zero.
pub fn descent_direction(
    x: &QuantumPosition,
    y: usize,
    graph: &WeightedGraph,
    table: &GeodesicTable,
) -> DirectedStep {
    if x.resolve_vertex(graph) == Some(y) {
        return DirectedStep {
            edge: x.edge,
            sign: 1,
            magnitude: 0.0,
        };
    }
    let e = graph.edge(x.edge);
    let through_u = x.coord + table.distance(e.u, y);
    let through_v = (e.length - x.coord) + table.distance(e.v, y);
    if through_u == through_v {
        DirectedStep {
            edge: x.edge,
            sign: 1,
            magnitude: 0.0,
        }
    } else if through_u < through_v {
        DirectedStep {
            edge: x.edge,
            sign: -1,
            magnitude: through_u,
        }
    } else {
        DirectedStep {
            edge: x.edge,
            sign: 1,
            magnitude: through_v,
        }
    }
}

/// The endpoint of the current edge nearer to `x`; ties resolve to the
/// smaller vertex id (the orientation start).
pub fn nearest_vertex(x: &QuantumPosition, graph: &WeightedGraph) -> usize {
    let e = graph.edge(x.edge);
    if x.coord <= e.length - x.coord {
        e.u
    } else {
        e.v
    }
}

/// The point at arc length `s` from `x` along a shortest path to vertex `y`.
///
/// Within the starting edge the strictly shorter side is taken (exact tie:
/// the side whose exit endpoint has the smaller id); after that the next-hop
/// chain of the table is followed.
pub fn advance_along_geodesic(
    x: &QuantumPosition,
    y: usize,
    s: f64,
    graph: &WeightedGraph,
    table: &GeodesicTable,
) -> Result<QuantumPosition> {
    let total = point_to_vertex_distance(x, y, graph, table)?;
    if s > total + 1e-9 {
        return Err(Error::Overshoot {
            requested: s,
            available: total,
        });
    }
    let mut remaining = s.min(total);

    // Exit the starting edge, unless the position already stands on a vertex.
    let mut at = match x.resolve_vertex(graph) {
        Some(v) => v,
        None => {
            let e = graph.edge(x.edge);
            let through_u = x.coord + table.distance(e.u, y);
            let through_v = (e.length - x.coord) + table.distance(e.v, y);
            // Orientation guarantees e.u < e.v, so a tie keeps the u side.
            let toward_u = through_u <= through_v;
            let to_exit = if toward_u { x.coord } else { e.length - x.coord };
            if remaining < to_exit {
                return Ok(QuantumPosition {
                    edge: x.edge,
                    coord: if toward_u {
                        x.coord - remaining
                    } else {
                        x.coord + remaining
                    },
                });
            }
            remaining -= to_exit;
            if toward_u {
                e.u
            } else {
                e.v
            }
        }
    };

    // Walk the vertex-level shortest path, consuming whole edges.
    while at != y {
        let next = table.next_hop(at, y);
        let eid = graph
            .edge_between(at, next)
            .expect("next hop must be adjacent");
        let e = graph.edge(eid);
        if remaining < e.length {
            let coord = if at == e.u {
                remaining
            } else {
                e.length - remaining
            };
            return Ok(QuantumPosition { edge: eid, coord });
        }
        remaining -= e.length;
        at = next;
    }
    Ok(QuantumPosition::at_vertex(graph, y))
}
