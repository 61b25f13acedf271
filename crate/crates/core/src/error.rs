use thiserror::Error;

/// Errors raised by graph construction and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("not connected")]
    NotConnected,

    #[error("base undefined for acyclic graph")]
    AcyclicBase,

    #[error("unsupported cyclomatic number {0}")]
    UnsupportedCyclomatic(i64),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("graph has {0} vertices, more than the 64 supported here")]
    TooManyVertices(usize),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("graph has pendant vertex {0}")]
    HasPendant(usize),

    #[error("no branch vertices")]
    NoBranchVertices,

    #[error("not a tricyclic base: {0}")]
    NotTricyclicBase(String),

    #[error("unknown family id {0:?}")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("order {n} exceeds the enumeration guard {guard} (use force to override)")]
    GuardExceeded { n: usize, guard: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
