//! Level ancestor queries on rooted trees.
//!
//! `LA(v, d)` asks for the ancestor of node `v` at depth `d` (root depth
//! is 0). This crate preprocesses a tree once in O(n): a pre-order
//! traversal assigns each node a label from a running counter, appends the
//! label to a per-depth array, and records the label-to-node mapping.
//! Because every ancestor of a node is visited before the node itself,
//! each depth array is strictly increasing, and the ancestor at depth `d`
//! is the predecessor of `label(v)` in that array, found by binary search
//! in O(log n).
//!
//! Alongside the index live two independent baselines used for
//! cross-validation and benchmarking: brute-force parent walking
//! ([`baselines::naive_la`]) and binary lifting ([`baselines::JumpTable`]).
//!
//! ```
//! use la_core::{LevelAncestorIndex, Tree};
//!
//! let tree = Tree::from_parent_array(&[-1, 0, 0, 1]).unwrap();
//! let index = LevelAncestorIndex::new(&tree);
//! assert_eq!(index.level_ancestor(3, 1).unwrap(), 1);
//! assert_eq!(index.level_ancestor(3, 0).unwrap(), tree.root());
//! ```

pub mod baselines;
mod error;
mod eytzinger;
pub mod index;
pub mod query;
pub mod tree;

pub use error::Error;
pub use index::{LevelAncestorIndex, SearchLayout, SnapshotError};
pub use query::{predecessor_search, predecessor_search_counted, QueryStats};
pub use tree::{generate, generate_parents, NodeId, ParseError, Tree, TreeFamily, TreeGenSpec};

/// Pre-order label, a bijection onto `1..=n`.
pub type Label = u32;
