// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: expected exactly two labels, found {found}")]
    Parse { line: usize, found: usize },

    #[error("input contains no nodes")]
    EmptyGraph,

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("suspect list is empty")]
    EmptySuspects,

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    InvalidNode { index: usize, node_count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("distance from node {from} to node {to} is undefined (unreachable)")]
    UndefinedDistance { from: usize, to: usize },

    #[error("node {node} lies on no shortest path from {from} to {target}")]
    NotOnShortestPath { from: usize, node: usize, target: usize },

    #[error("graph has {found} nodes; at least {required} are required")]
    TooFewNodes { found: usize, required: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("linear system is singular")]
    Singular,

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("score maps cover different node sets ({expected} vs {found} nodes)")]
    MismatchedNodeSets { expected: usize, found: usize },

    #[error("measure `{0}` is not part of the table")]
    MissingMeasure(String),

    #[error("no seed pair is connected; extracted sub-network would be empty")]
    EmptyExtraction,

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-parsable category name.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::EmptyGraph => "empty_graph",
            Error::UnknownLabel(_) => "unknown_label",
            Error::EmptySuspects => "empty_suspects",
            Error::InvalidNode { .. } => "invalid_node",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UndefinedDistance { .. } => "undefined_distance",
            Error::NotOnShortestPath { .. } => "not_on_shortest_path",
            Error::TooFewNodes { .. } => "too_few_nodes",
            Error::Disconnected => "disconnected",
            Error::Singular => "singular",
            Error::NonConvergence { .. } => "non_convergence",
            Error::MismatchedNodeSets { .. } => "mismatched_node_sets",
            Error::MissingMeasure(_) => "missing_measure",
            Error::EmptyExtraction => "empty_extraction",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status: 2 for data errors, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Disconnected | Error::Singular | Error::NonConvergence { .. } => 3,
            Error::InvalidArgument(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
