//! Independent level-ancestor implementations: a brute-force parent walk
//! and a binary-lifting jump table. Both serve as correctness oracles for
//! the label index and as benchmark comparators.

use crate::error::Error;
use crate::tree::{NodeId, Tree};

/// Brute-force level ancestor: walk parent links until depth `d`.
///
/// Works against [`Tree`] directly and recomputes the node's depth by
/// walking to the root, so it shares no state or code with the index path
/// it validates.
pub fn naive_la(tree: &Tree, v: NodeId, d: u32) -> Result<NodeId, Error> {
    if v >= tree.len() {
        return Err(Error::NodeOutOfRange { node: v, n: tree.len() });
    }
    let mut node_depth = 0u32;
    let mut u = v;
    while let Some(p) = tree.parent(u) {
        u = p;
        node_depth += 1;
    }
    if d > node_depth {
        return Err(Error::DepthBelowNode { depth: d, node_depth });
    }
    let mut u = v;
    for _ in 0..node_depth - d {
        u = tree.parent(u).expect("walk cannot pass the root");
    }
    Ok(u)
}

/// Binary-lifting table: `up[j][v]` is the `2^j`-th ancestor of `v`, or
/// [`Tree::NONE`] past the root. O(n log n) space by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpTable {
    up: Vec<Vec<NodeId>>,
}

impl JumpTable {
    /// Builds the table; row count is `floor(log2(max_depth)) + 1`, at
    /// least 1.
    pub fn new(tree: &Tree) -> JumpTable {
        let n = tree.len();
        let max_depth = tree.max_depth();
        let levels = if max_depth <= 1 {
            1
        } else {
            (u32::BITS - 1 - max_depth.leading_zeros()) as usize + 1
        };
        let mut up = Vec::with_capacity(levels);
        let row0: Vec<NodeId> = (0..n).map(|v| tree.parent(v).unwrap_or(Tree::NONE)).collect();
        up.push(row0);
        for j in 1..levels {
            let prev = &up[j - 1];
            let row = (0..n)
                .map(|v| match prev[v] {
                    Tree::NONE => Tree::NONE,
                    mid => prev[mid],
                })
                .collect();
            up.push(row);
        }
        JumpTable { up }
    }

    /// Number of rows.
    pub fn levels(&self) -> usize {
        self.up.len()
    }

    /// The `2^j`-th ancestor of `v`, or `None` past the root.
    pub fn ancestor_pow2(&self, j: usize, v: NodeId) -> Option<NodeId> {
        match self.up[j][v] {
            Tree::NONE => None,
            a => Some(a),
        }
    }

    /// Row `j` with [`Tree::NONE`] sentinels, as stored.
    pub fn row(&self, j: usize) -> &[NodeId] {
        &self.up[j]
    }
}

/// Level ancestor via jump pointers: decompose `depths[v] - d` into powers
/// of two and hop.
pub fn jump_la(jt: &JumpTable, depths: &[u32], v: NodeId, d: u32) -> Result<NodeId, Error> {
    if v >= depths.len() {
        return Err(Error::NodeOutOfRange { node: v, n: depths.len() });
    }
    let node_depth = depths[v];
    if d > node_depth {
        return Err(Error::DepthBelowNode { depth: d, node_depth });
    }
    let mut k = node_depth - d;
    let mut u = v;
    while k > 0 {
        let j = k.trailing_zeros() as usize;
        // k <= depth(u) at every step, so the hop cannot land on the
        // sentinel; guard anyway rather than index with it.
        debug_assert_ne!(u, Tree::NONE);
        u = jt.up[j][u];
        k &= k - 1;
    }
    debug_assert_ne!(u, Tree::NONE);
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{generate, TreeFamily, TreeGenSpec};

    const X: NodeId = Tree::NONE;

    #[test]
    fn naive_examples() {
        let path = generate(&TreeGenSpec::new(TreeFamily::Path, 4, 0)).unwrap();
        assert_eq!(naive_la(&path, 3, 1).unwrap(), 1);
        assert_eq!(naive_la(&path, 3, 3).unwrap(), 3);

        let t = Tree::from_parent_array(&[-1, 0, 0, 1]).unwrap();
        assert_eq!(naive_la(&t, 3, 1).unwrap(), 1);
        assert_eq!(naive_la(&t, 3, 0).unwrap(), 0);
        assert!(matches!(naive_la(&t, 3, 9), Err(Error::DepthBelowNode { .. })));
        assert!(matches!(naive_la(&t, 8, 0), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn jump_table_path4() {
        let path = generate(&TreeGenSpec::new(TreeFamily::Path, 4, 0)).unwrap();
        let jt = JumpTable::new(&path);
        assert_eq!(jt.levels(), 2);
        assert_eq!(jt.row(0), &[X, 0, 1, 2]);
        assert_eq!(jt.row(1), &[X, X, 0, 1]);
    }

    #[test]
    fn jump_table_single_node() {
        let t = Tree::from_parent_array(&[-1]).unwrap();
        let jt = JumpTable::new(&t);
        assert_eq!(jt.levels(), 1);
        assert_eq!(jt.row(0), &[X]);
        assert_eq!(jt.ancestor_pow2(0, 0), None);
    }

    #[test]
    fn row_zero_is_parent_array() {
        let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 64, 15)).unwrap();
        let jt = JumpTable::new(&t);
        for v in 0..t.len() {
            assert_eq!(jt.ancestor_pow2(0, v), t.parent(v));
        }
    }

    #[test]
    fn rows_match_repeated_parent_walks() {
        let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 90, 4)).unwrap();
        let jt = JumpTable::new(&t);
        for j in 0..jt.levels() {
            let hops = 1usize << j;
            for v in 0..t.len() {
                let mut u = Some(v);
                for _ in 0..hops {
                    u = u.and_then(|x| t.parent(x));
                }
                assert_eq!(jt.ancestor_pow2(j, v), u, "row {j}, node {v}");
            }
        }
    }

    #[test]
    fn jump_la_path8() {
        let path = generate(&TreeGenSpec::new(TreeFamily::Path, 8, 0)).unwrap();
        let jt = JumpTable::new(&path);
        assert_eq!(jt.levels(), 3);
        assert_eq!(jump_la(&jt, path.depths(), 7, 0).unwrap(), 0);
        assert_eq!(jump_la(&jt, path.depths(), 7, 7).unwrap(), 7);
        assert_eq!(jump_la(&jt, path.depths(), 6, 2).unwrap(), 2);
    }

    #[test]
    fn jump_la_errors() {
        let t = Tree::from_parent_array(&[-1, 0]).unwrap();
        let jt = JumpTable::new(&t);
        assert!(matches!(jump_la(&jt, t.depths(), 1, 2), Err(Error::DepthBelowNode { .. })));
        assert!(matches!(jump_la(&jt, t.depths(), 5, 0), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn jump_matches_naive_exhaustively() {
        for seed in 0..8 {
            let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 128, seed)).unwrap();
            let jt = JumpTable::new(&t);
            for v in 0..t.len() {
                for d in 0..=t.depth_of(v).unwrap() {
                    assert_eq!(
                        jump_la(&jt, t.depths(), v, d).unwrap(),
                        naive_la(&t, v, d).unwrap()
                    );
                }
            }
        }
    }
}
