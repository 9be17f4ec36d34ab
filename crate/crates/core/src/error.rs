use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("edge {index} is a self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index} duplicates an existing edge between {u} and {v}")]
    DuplicateEdge { index: usize, u: usize, v: usize },
    #[error("edge {index} has negative or non-finite weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("edge {index} has negative or non-finite attribute {attribute}")]
    InvalidAttribute { index: usize, attribute: f64 },
    #[error("edge {index} references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("graph is disconnected: vertex {unreached} is unreachable from vertex 0")]
    Disconnected { unreached: usize },
    #[error("vertex {vertex} is not in the graph (n = {n})")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("invalid privacy budget: {0}")]
    InvalidBudget(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not generate a connected {family} graph with n = {n} after {attempts} attempts")]
    ConnectivityNotReached {
        family: String,
        n: usize,
        attempts: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
