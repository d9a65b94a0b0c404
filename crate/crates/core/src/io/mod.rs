//! Text formats: the square cost/capacity matrix, DIMACS `min` files and the
//! dispatch trace CSV.

mod dimacs;
mod matrix;
mod trace;

use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::instance::{FlowInstance, InstanceError};
use crate::scalar::Scalar;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use matrix::{parse_matrix, write_matrix, MatrixForm};
pub use trace::{write_trace, TRACE_HEADER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input: expected {expected}")]
    UnexpectedEof { expected: &'static str },
    #[error("line {line}: invalid token `{token}`, expected {expected}")]
    InvalidToken {
        line: usize,
        token: String,
        expected: &'static str,
    },
    #[error("matrix of order {n} needs {expected} entries, found {found}")]
    DimensionMismatch {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unexpected token `{token}` after the matrix")]
    TrailingToken { line: usize, token: String },
    #[error("line {line}: negative entry at row {row}, column {col}")]
    NegativeEntry { line: usize, row: usize, col: usize },
    #[error("line {line}: nonzero diagonal entry at row {row}")]
    NonzeroDiagonal { line: usize, row: usize },
    #[error("line {line}: `inf` at row {row}, column {col} is only allowed below the diagonal")]
    MisplacedInf { line: usize, row: usize, col: usize },
    #[error("arc {tail}->{head} has capacity but its cost is `inf`")]
    MissingCost { tail: usize, head: usize },
    #[error("line {line}: unknown line type `{token}`")]
    UnknownLine { line: usize, token: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `p min` problem line")]
    MissingProblemLine,
    #[error("problem line declares {declared} arcs, found {found}")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("line {line}: node {node} outside 1..={n}")]
    NodeOutOfRange { line: usize, node: usize, n: usize },
    #[error("line {line}: nonzero lower bound is not supported")]
    NonzeroLowerBound { line: usize },
    #[error("expected exactly one source and one sink, found {sources} sources and {sinks} sinks")]
    EndpointCount { sources: usize, sinks: usize },
    #[error("source supplies {supply} but sink demands {demand}")]
    UnbalancedFlux { supply: String, demand: String },
    #[error(
        "network contains a cycle through node {node}; only acyclic networks can be tabulated"
    )]
    Cycle { node: usize },
    #[error("node {node} must come {position} in every topological order")]
    EndpointOrder { node: usize, position: &'static str },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// On-disk instance encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    Matrix,
}

impl Format {
    /// `.dimacs`, `.min` and `.dmx` are DIMACS; everything else is matrix.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "min" | "dmx") => Format::Dimacs,
            _ => Format::Matrix,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" => Ok(Format::Dimacs),
            "matrix" => Ok(Format::Matrix),
            other => Err(format!(
                "unknown format `{other}` (expected dimacs or matrix)"
            )),
        }
    }
}

pub fn parse_instance<T: Scalar>(
    text: &str,
    format: Format,
) -> Result<FlowInstance<T>, ParseError> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::Matrix => parse_matrix(text),
    }
}

pub fn write_instance<T: Scalar>(instance: &FlowInstance<T>, format: Format) -> String {
    match format {
        Format::Dimacs => write_dimacs(instance),
        Format::Matrix => write_matrix(instance),
    }
}

/// Whitespace tokenizer that remembers 1-based line numbers.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .flat_map(|(i, line)| line.split_whitespace().map(move |t| (i + 1, t)))
}

pub(crate) fn parse_token<V: FromStr>(
    line: usize,
    token: &str,
    expected: &'static str,
) -> Result<V, ParseError> {
    token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
        expected,
    })
}
