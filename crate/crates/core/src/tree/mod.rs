//! Rooted labeled trees, plane trees, permutations, and their enumeration.

mod enumerate;
mod perm;
mod plane;
mod rooted;

pub use enumerate::{
    enumerate_labeled_plane_trees, enumerate_plane_trees, enumerate_rooted_trees,
    enumerate_rooted_trees_range, prufer_decode, rooted_tree_at, rooted_tree_count,
    rooted_tree_from_prufer,
};
pub use perm::Permutation;
pub use plane::{LabeledPlaneTree, OrderedTree, PlaneTree};
pub use rooted::RootedTree;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("vertex {vertex} is a second root")]
    MultipleRoots { vertex: usize },
    #[error("no vertex is marked as the root")]
    NoRoot,
    #[error("the parent chain starting at vertex {vertex} returns to itself")]
    CycleDetected { vertex: usize },
    #[error("vertex {vertex} has parent {parent}, outside 0..={n}")]
    LabelOutOfRange {
        vertex: usize,
        parent: usize,
        n: usize,
    },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{word:?} is not a permutation")]
    InvalidPermutation { word: Vec<usize> },
    #[error("sibling order of vertex {vertex} does not match its children")]
    BadOrder { vertex: usize },
    #[error("bad plane-tree labeling: {reason}")]
    BadLabeling { reason: String },
}

/// Failure to read one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] TreeError),
}

/// Whitespace-separated non-negative integers.
pub(crate) fn parse_integers(s: &str) -> Result<Vec<usize>, ParseError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::Syntax(format!("expected an integer, found {tok:?}")))
        })
        .collect()
}
