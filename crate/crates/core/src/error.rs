use std::fmt;

use crate::tree::NodeId;
use crate::Label;

/// Errors reported by tree construction, index lookups, and queries.
///
/// Every variant has a stable short code (see [`Error::code`]) used by the
/// CLI when reporting failures, e.g. `ERR DepthBelowNode`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// No node has the root sentinel (-1) as its parent.
    NoRoot,
    /// More than one node has the root sentinel as its parent.
    MultipleRoots { first: NodeId, second: NodeId },
    /// A node cannot reach the root by following parent links.
    CycleDetected { node: NodeId },
    /// A parent entry is outside {-1} ∪ [0, n).
    ParentOutOfRange { node: NodeId, parent: i64, n: usize },
    /// An edge list did not contain exactly n - 1 edges.
    EdgeCountMismatch { expected: usize, found: usize },
    /// A node appears as the child of two different edges.
    DuplicateChild { child: NodeId },
    /// A node id is outside [0, n).
    NodeOutOfRange { node: NodeId, n: usize },
    /// A pre-order label is outside [1, n].
    LabelOutOfRange { label: Label, n: usize },
    /// A depth exceeds the deepest level present in the tree.
    DepthOutOfRange { depth: u32, max_depth: u32 },
    /// The requested depth lies below the queried node.
    DepthBelowNode { depth: u32, node_depth: u32 },
    /// An ancestor hop count exceeds the node's depth.
    KTooLarge { k: u32, node_depth: u32 },
    /// A tree generator spec violates its constraints (n >= 1, k >= 2).
    InvalidGenSpec { reason: &'static str },
}

impl Error {
    /// Stable machine-readable code, equal to the variant name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NoRoot => "NoRoot",
            Error::MultipleRoots { .. } => "MultipleRoots",
            Error::CycleDetected { .. } => "CycleDetected",
            Error::ParentOutOfRange { .. } => "ParentOutOfRange",
            Error::EdgeCountMismatch { .. } => "EdgeCountMismatch",
            Error::DuplicateChild { .. } => "DuplicateChild",
            Error::NodeOutOfRange { .. } => "NodeOutOfRange",
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::DepthOutOfRange { .. } => "DepthOutOfRange",
            Error::DepthBelowNode { .. } => "DepthBelowNode",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::InvalidGenSpec { .. } => "InvalidGenSpec",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoRoot => {
                write!(f, "NoRoot: no node has the -1 root sentinel as parent")
            }
            Error::MultipleRoots { first, second } => {
                write!(f, "MultipleRoots: nodes {first} and {second} both claim the root sentinel")
            }
            Error::CycleDetected { node } => {
                write!(f, "CycleDetected: node {node} cannot reach the root by parent links")
            }
            Error::ParentOutOfRange { node, parent, n } => {
                write!(
                    f,
                    "ParentOutOfRange: parent[{node}] = {parent} is outside {{-1}} ∪ [0, {n})"
                )
            }
            Error::EdgeCountMismatch { expected, found } => {
                write!(f, "EdgeCountMismatch: expected {expected} edges, found {found}")
            }
            Error::DuplicateChild { child } => {
                write!(f, "DuplicateChild: node {child} has two parents")
            }
            Error::NodeOutOfRange { node, n } => {
                write!(f, "NodeOutOfRange: node {node} is outside [0, {n})")
            }
            Error::LabelOutOfRange { label, n } => {
                write!(f, "LabelOutOfRange: label {label} is outside [1, {n}]")
            }
            Error::DepthOutOfRange { depth, max_depth } => {
                write!(f, "DepthOutOfRange: depth {depth} exceeds max depth {max_depth}")
            }
            Error::DepthBelowNode { depth, node_depth } => {
                write!(f, "DepthBelowNode: depth {depth} is below the node's depth {node_depth}")
            }
            Error::KTooLarge { k, node_depth } => {
                write!(f, "KTooLarge: hop count {k} exceeds the node's depth {node_depth}")
            }
            Error::InvalidGenSpec { reason } => {
                write!(f, "InvalidGenSpec: {reason}")
            }
        }
    }
}

impl std::error::Error for Error {}
