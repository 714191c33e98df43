//! Crate error type.

use alloc::string::String;
use core::fmt;

/// Errors produced by graph construction, partition edits and generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Edge-list line whose two endpoints are the same node.
    SelfLoop { line: usize, label: String },
    /// Edge-list line that does not hold exactly two tokens.
    TokenCount { line: usize, found: usize },
    /// The input contained no edges.
    EmptyGraph,
    /// Modularity asked of a graph with no edges.
    UndefinedModularity,
    /// Merge of a community with itself.
    InvalidMerge(u32),
    /// Community id not present in the partition.
    UnknownCommunity(u32),
    /// Pair of nodes that is not an edge of the graph.
    NotAnEdge(u32, u32),
    /// Generator configuration that violates its invariants.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { line, label } => {
                write!(f, "line {line}: self-loop on node {label:?}")
            }
            Error::TokenCount { line, found } => {
                write!(f, "line {line}: expected 2 tokens, found {found}")
            }
            Error::EmptyGraph => write!(f, "input contains no edges"),
            Error::UndefinedModularity => write!(f, "modularity is undefined for an empty graph"),
            Error::InvalidMerge(c) => write!(f, "cannot merge community {c} with itself"),
            Error::UnknownCommunity(c) => write!(f, "unknown community id {c}"),
            Error::NotAnEdge(u, v) => write!(f, "({u}, {v}) is not an edge"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
