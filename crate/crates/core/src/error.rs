use thiserror::Error;

use crate::geometry::Violation;
use crate::tpig::TpigViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("invalid polygon: {}", format_list(.0))]
    InvalidPolygon(Vec<Violation>),

    #[error("invalid tree-path intersection graph: {}", format_list(.0))]
    InvalidTpig(Vec<TpigViolation>),

    #[error("graph has {edges} edges, oracle limit is {limit}")]
    LimitExceeded { edges: usize, limit: usize },

    /// An internal consistency check failed. Valid input never triggers this.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn format_list<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
