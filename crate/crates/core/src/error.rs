use thiserror::Error;

use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while reading a Newick or canonical string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected byte {0:?}")]
    Unexpected(char),
    #[error("trailing input after ';'")]
    Trailing,
    #[error("invalid leaf label: {0}")]
    InvalidLabel(String),
    #[error("duplicate leaf label {0}")]
    DuplicateLabel(u64),
    #[error("node has {0} children; only binary trees are supported")]
    NonBinary(usize),
    #[error("{0}")]
    Arity(String),
    #[error("branch lengths and internal labels are not accepted in strict mode")]
    Annotation,
    #[error("children are not in smallest-descendant-label order")]
    CanonicalOrder,
    #[error("forest components are not ordered by smallest label")]
    ComponentOrder,
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, position: usize) -> Self {
        Self { kind, position }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("({0:?}, {1:?}) is not an edge of the tree")]
    NoSuchEdge(NodeId, NodeId),
    #[error("invalid move: {0}")]
    InvalidMove(&'static str),
    #[error("container holds {expected} trees but was given a {found} tree")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("tree {index} is {found}, earlier trees are {expected}")]
    MixedRootedness {
        index: usize,
        expected: &'static str,
        found: &'static str,
    },
    #[error("tree {index} has a different label set than tree 0")]
    LabelSetMismatch { index: usize },
    #[error("edge ({j}, {i}) must join a vertex to a later existing vertex")]
    EdgeOrder { j: usize, i: usize },
    #[error("adjacency list {list} ends with {tail}, cannot append {value}")]
    UnsortedAppend {
        list: usize,
        tail: usize,
        value: usize,
    },
    #[error("malformed snapshot: {0}")]
    Snapshot(String),
    #[error("{0}")]
    Unsupported(String),
}
