//! Level-ancestor queries over a built [`LevelAncestorIndex`].
//!
//! `LA(v, d)` retrieves the label of `v`, finds the largest label `<=` it
//! in the depth-`d` array by predecessor search, and maps that label back
//! to its node. Equality is included deliberately: `label(v)` itself sits
//! in the array for `depth(v)`, which makes `LA(v, depth(v)) = v` hold.
//! For `d < depth(v)` the predecessor is strictly smaller and is the
//! ancestor.

use crate::error::Error;
use crate::eytzinger;
use crate::index::{LevelAncestorIndex, SearchLayout};
use crate::tree::NodeId;
use crate::Label;

/// Instrumentation for one query: how much work the search did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryStats {
    /// Label comparisons performed by the predecessor search.
    /// At most `floor(log2(array_len)) + 1` for non-empty arrays.
    pub comparisons: u32,
    /// Length of the depth array that was searched.
    pub array_len: usize,
}

/// Position of the largest element `<= l` in a strictly increasing array,
/// or `None` if every element exceeds `l` (or the array is empty).
pub fn predecessor_search(arr: &[Label], l: Label) -> Option<usize> {
    predecessor_search_counted(arr, l).0
}

/// Same search, also reporting the exact number of label comparisons.
pub fn predecessor_search_counted(arr: &[Label], l: Label) -> (Option<usize>, u32) {
    let mut lo = 0usize;
    let mut hi = arr.len();
    let mut comparisons = 0u32;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        comparisons += 1;
        if arr[mid] <= l {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    // lo is now the count of elements <= l.
    (lo.checked_sub(1), comparisons)
}

impl LevelAncestorIndex {
    /// The ancestor of `v` at depth `d`. `LA(v, depth(v))` is `v` itself
    /// and `LA(v, 0)` is the root.
    pub fn level_ancestor(&self, v: NodeId, d: u32) -> Result<NodeId, Error> {
        self.level_ancestor_with_stats(v, d).map(|(a, _)| a)
    }

    /// As [`level_ancestor`], also reporting search work.
    ///
    /// [`level_ancestor`]: LevelAncestorIndex::level_ancestor
    pub fn level_ancestor_with_stats(
        &self,
        v: NodeId,
        d: u32,
    ) -> Result<(NodeId, QueryStats), Error> {
        if v >= self.len() {
            return Err(Error::NodeOutOfRange { node: v, n: self.len() });
        }
        let node_depth = self.depth_unchecked(v);
        if d > node_depth {
            return Err(Error::DepthBelowNode { depth: d, node_depth });
        }
        let l = self.label_unchecked(v);
        let arr = self.depth_array_unchecked(d);
        let (ancestor_label, comparisons) = match self.layout() {
            SearchLayout::Sorted => {
                let (pos, comparisons) = predecessor_search_counted(arr, l);
                (pos.map(|p| arr[p]), comparisons)
            }
            SearchLayout::Eytzinger => eytzinger::predecessor_counted(self.eytzinger_array(d), l),
        };
        // d <= depth(v) guarantees an ancestor at depth d, whose label is
        // <= l; the search cannot come back empty.
        let ancestor_label = ancestor_label.expect("ancestor exists at every depth <= depth(v)");
        let stats = QueryStats { comparisons, array_len: arr.len() };
        Ok((self.node_of_unchecked(ancestor_label), stats))
    }

    /// The ancestor `k` parent hops above `v`; `k = 0` returns `v`.
    pub fn kth_ancestor(&self, v: NodeId, k: u32) -> Result<NodeId, Error> {
        if v >= self.len() {
            return Err(Error::NodeOutOfRange { node: v, n: self.len() });
        }
        let node_depth = self.depth_unchecked(v);
        if k > node_depth {
            return Err(Error::KTooLarge { k, node_depth });
        }
        self.level_ancestor(v, node_depth - k)
    }
}
