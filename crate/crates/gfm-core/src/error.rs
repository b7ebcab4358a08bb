//! Crate-wide error type.

use std::fmt;

/// Errors produced by graph construction, geometry, simulation and I/O.
#[derive(Debug)]
pub enum Error {
    /// An edge connects a vertex to itself.
    SelfLoop { vertex: String, line: Option<usize> },
    /// The same unordered vertex pair appears twice in the edge list.
    DuplicateEdge {
        u: String,
        v: String,
        line: Option<usize>,
    },
    /// An edge length is zero, negative, or non-finite.
    NonPositiveLength {
        u: String,
        v: String,
        length: f64,
        line: Option<usize>,
    },
    /// The graph is not connected; `vertex` is unreachable from vertex 0.
    Disconnected { vertex: String },
    /// A node weight is negative.
    NegativeNodeWeight {
        vertex: String,
        weight: f64,
        line: Option<usize>,
    },
    /// Every node weight is zero, so no distribution can be formed.
    AllZeroNodeWeights,
    /// A vertex id is out of range for this graph.
    UnknownVertex { vertex: usize, vertex_count: usize },
    /// A distance table does not match the graph it is used with.
    DimensionMismatch { expected: usize, actual: usize },
    /// The graph exceeds the dense distance-matrix size limit.
    TooManyVertices { vertices: usize, limit: usize },
    /// Path reconstruction was asked for a path from a vertex to itself.
    SameVertex { vertex: usize },
    /// A geodesic advance longer than the remaining distance was requested.
    Overshoot { requested: f64, available: f64 },
    /// The discretization step must be strictly positive.
    NonPositiveResolution { resolution: f64 },
    /// The requested discretization exceeds the point cap.
    ResolutionTooFine { points: usize, cap: usize },
    /// The graph has a single vertex, so no schedule can be tuned.
    ZeroDiameter,
    /// A schedule parameter violates its constraints.
    ScheduleInvalid { reason: String },
    /// A sweep preset name is not in the registry.
    UnknownPreset { name: String },
    /// A benchmark was requested with zero replications.
    InvalidReplicationCount,
    /// Generator parameters cannot produce a simple graph.
    InfeasibleDegree { reason: String },
    /// A line of an input file could not be parsed.
    Parse { line: usize, message: String },
    /// A distance cache file is malformed.
    Cache { message: String },
    /// An underlying I/O failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn at(line: &Option<usize>) -> String {
            match line {
                Some(n) => format!(" (line {n})"),
                None => String::new(),
            }
        }
        match self {
            Error::SelfLoop { vertex, line } => {
                write!(f, "self-loop at vertex {vertex}{}", at(line))
            }
            Error::DuplicateEdge { u, v, line } => {
                write!(f, "duplicate edge between {u} and {v}{}", at(line))
            }
            Error::NonPositiveLength { u, v, length, line } => write!(
                f,
                "edge ({u}, {v}) has non-positive length {length}{}",
                at(line)
            ),
            Error::Disconnected { vertex } => {
                write!(f, "graph is disconnected: vertex {vertex} is unreachable")
            }
            Error::NegativeNodeWeight { vertex, weight, line } => write!(
                f,
                "vertex {vertex} has negative weight {weight}{}",
                at(line)
            ),
            Error::AllZeroNodeWeights => write!(f, "all node weights are zero"),
            Error::UnknownVertex { vertex, vertex_count } => {
                write!(f, "unknown vertex {vertex} (graph has {vertex_count})")
            }
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "distance table is for {actual} vertices, graph has {expected}")
            }
            Error::TooManyVertices { vertices, limit } => write!(
                f,
                "graph has {vertices} vertices, above the dense-table limit {limit}"
            ),
            Error::SameVertex { vertex } => {
                write!(f, "path endpoints coincide at vertex {vertex}")
            }
            Error::Overshoot { requested, available } => write!(
                f,
                "advance of {requested} exceeds remaining geodesic distance {available}"
            ),
            Error::NonPositiveResolution { resolution } => {
                write!(f, "resolution must be positive, got {resolution}")
            }
            Error::ResolutionTooFine { points, cap } => {
                write!(f, "discretization needs {points} points, cap is {cap}")
            }
            Error::ZeroDiameter => write!(f, "graph diameter is zero; nothing to tune"),
            Error::ScheduleInvalid { reason } => write!(f, "invalid schedule: {reason}"),
            Error::UnknownPreset { name } => write!(f, "unknown sweep preset '{name}'"),
            Error::InvalidReplicationCount => write!(f, "replication count must be >= 1"),
            Error::InfeasibleDegree { reason } => write!(f, "infeasible generator: {reason}"),
            Error::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            Error::Cache { message } => write!(f, "invalid distance cache: {message}"),
            Error::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
