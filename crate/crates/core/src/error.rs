use thiserror::Error;

use crate::solver::SolveResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty poset")]
    Empty,

    #[error("malformed realizer pair: {0}")]
    MalformedRealizer(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("relation is not a partial order, cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("malformed order: {0}")]
    MalformedOrder(String),

    #[error("not a linear extension: `{lower}` < `{upper}` but `{upper}` comes first")]
    NotLinearExtension { lower: String, upper: String },

    #[error("interleaving requires equal lengths, got {left} and {right}")]
    Arity { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("input has {size} elements, limit is {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("search aborted after {limit} nodes")]
    ResourceLimit { limit: u64 },

    #[error("node limit {limit} exceeded; best layout found uses {} queues (not proven optimal)", .incumbent.qn)]
    NodeLimit {
        limit: u64,
        incumbent: Box<SolveResult>,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("solver reported the instance unsatisfiable")]
    Unsatisfiable,

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("document field `{field}`{}: {message}", .line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Document {
        field: String,
        line: Option<usize>,
        message: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
