//! The level-ancestor index: pre-order labels, per-depth label arrays, and
//! a label-to-node map.
//!
//! Construction is a single pre-order traversal. A counter starts at 0 and
//! is incremented when a node is first visited, so labels are the integers
//! `1..=n` in visit order. Each label is appended to the array for its
//! node's depth and recorded in the label-to-node map. Because a node is
//! always visited after all of its ancestors, every depth array ends up
//! strictly increasing, and the ancestor of `v` at depth `d` is exactly the
//! predecessor of `label(v)` in the depth-`d` array.

use std::io::{self, Read, Write};

use crate::error::Error;
use crate::eytzinger;
use crate::tree::{NodeId, Tree};
use crate::Label;

/// How each depth array is laid out for searching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchLayout {
    /// Plain sorted arrays searched with binary search.
    #[default]
    Sorted,
    /// Additional implicit-heap (Eytzinger) copies searched branchlessly.
    /// Answers are identical to [`SearchLayout::Sorted`]; only the memory
    /// access pattern differs.
    Eytzinger,
}

/// Preprocessed structure answering level-ancestor queries in O(log n).
///
/// Immutable after construction; shareable across threads without
/// synchronization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAncestorIndex {
    n: usize,
    /// Pre-order label of each node, a bijection onto 1..=n.
    label: Vec<Label>,
    /// Depth of each node (root is 0).
    depth: Vec<u32>,
    /// depth_arrays[d]: labels of the depth-d nodes in visit order,
    /// strictly increasing.
    depth_arrays: Vec<Vec<Label>>,
    /// Direct-address label-to-node map; slot 0 is unused since labels are
    /// 1-based.
    node_of_label: Vec<NodeId>,
    max_depth: u32,
    layout: SearchLayout,
    /// One-based Eytzinger copy of each depth array when the layout asks
    /// for it; empty otherwise.
    eytzinger_arrays: Vec<Vec<Label>>,
    /// Nodes visited during construction; always equals n.
    build_visits: usize,
}

impl LevelAncestorIndex {
    /// Builds the index with the default sorted layout.
    pub fn new(tree: &Tree) -> LevelAncestorIndex {
        LevelAncestorIndex::with_layout(tree, SearchLayout::Sorted)
    }

    /// Builds the index, choosing the search layout at construction time.
    ///
    /// The traversal is iterative with an explicit stack; children are
    /// pushed in reverse order so popping yields the same pre-order as a
    /// recursive left-to-right walk.
    pub fn with_layout(tree: &Tree, layout: SearchLayout) -> LevelAncestorIndex {
        let n = tree.len();
        let max_depth = tree.max_depth();
        let mut label = vec![0 as Label; n];
        let mut node_of_label = vec![Tree::NONE; n + 1];
        let mut depth_arrays: Vec<Vec<Label>> = vec![Vec::new(); max_depth as usize + 1];

        let mut counter: Label = 0;
        let mut visits = 0usize;
        let mut stack = Vec::with_capacity(64);
        stack.push(tree.root());
        while let Some(v) = stack.pop() {
            visits += 1;
            counter += 1;
            label[v] = counter;
            depth_arrays[tree.depths()[v] as usize].push(counter);
            node_of_label[counter as usize] = v;
            for &c in tree.children(v).iter().rev() {
                stack.push(c);
            }
        }
        debug_assert_eq!(visits, n);

        // Freeze: the arrays are append-only above; check strict increase
        // before anything can search them.
        #[cfg(debug_assertions)]
        for arr in &depth_arrays {
            for w in arr.windows(2) {
                debug_assert!(w[0] < w[1], "depth array not strictly increasing");
            }
        }

        let eytzinger_arrays = match layout {
            SearchLayout::Sorted => Vec::new(),
            SearchLayout::Eytzinger => {
                depth_arrays.iter().map(|arr| eytzinger::layout(arr)).collect()
            }
        };

        LevelAncestorIndex {
            n,
            label,
            depth: tree.depths().to_vec(),
            depth_arrays,
            node_of_label,
            max_depth,
            layout,
            eytzinger_arrays,
            build_visits: visits,
        }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest depth present in the tree.
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// The layout selected at construction.
    pub fn layout(&self) -> SearchLayout {
        self.layout
    }

    /// How many nodes the construction traversal visited. Equals `len()`;
    /// exposed so the linear-work claim is checkable from the outside.
    pub fn build_visits(&self) -> usize {
        self.build_visits
    }

    /// Pre-order label of `v`.
    pub fn label_of(&self, v: NodeId) -> Result<Label, Error> {
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(self.label[v])
    }

    /// The node carrying label `l` (the inverse of [`label_of`]).
    ///
    /// [`label_of`]: LevelAncestorIndex::label_of
    pub fn node_of(&self, l: Label) -> Result<NodeId, Error> {
        if l < 1 || l as usize > self.n {
            return Err(Error::LabelOutOfRange { label: l, n: self.n });
        }
        Ok(self.node_of_label[l as usize])
    }

    /// Depth of `v`.
    pub fn depth_of(&self, v: NodeId) -> Result<u32, Error> {
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(self.depth[v])
    }

    /// The strictly increasing label array for depth `d`.
    pub fn depth_array(&self, d: u32) -> Result<&[Label], Error> {
        if d > self.max_depth {
            return Err(Error::DepthOutOfRange { depth: d, max_depth: self.max_depth });
        }
        Ok(&self.depth_arrays[d as usize])
    }

    pub(crate) fn label_unchecked(&self, v: NodeId) -> Label {
        self.label[v]
    }

    pub(crate) fn depth_unchecked(&self, v: NodeId) -> u32 {
        self.depth[v]
    }

    pub(crate) fn node_of_unchecked(&self, l: Label) -> NodeId {
        self.node_of_label[l as usize]
    }

    pub(crate) fn depth_array_unchecked(&self, d: u32) -> &[Label] {
        &self.depth_arrays[d as usize]
    }

    pub(crate) fn eytzinger_array(&self, d: u32) -> &[Label] {
        &self.eytzinger_arrays[d as usize]
    }

    /// Writes the snapshot format: a fixed header, the label and depth
    /// arrays, and the depth-array offsets plus their concatenated
    /// contents, all little-endian. Writing is a pure function of the
    /// index contents, so write -> read -> write is byte-identical.
    pub fn write_snapshot<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(SNAPSHOT_MAGIC)?;
        w.write_all(&SNAPSHOT_VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u64).to_le_bytes())?;
        w.write_all(&self.max_depth.to_le_bytes())?;
        let layout_byte: u8 = match self.layout {
            SearchLayout::Sorted => 0,
            SearchLayout::Eytzinger => 1,
        };
        w.write_all(&[layout_byte, 0, 0, 0])?;
        for &l in &self.label {
            w.write_all(&l.to_le_bytes())?;
        }
        for &d in &self.depth {
            w.write_all(&d.to_le_bytes())?;
        }
        let mut offset = 0u64;
        for arr in &self.depth_arrays {
            w.write_all(&offset.to_le_bytes())?;
            offset += arr.len() as u64;
        }
        w.write_all(&offset.to_le_bytes())?;
        for arr in &self.depth_arrays {
            for &l in arr {
                w.write_all(&l.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads a snapshot written by [`write_snapshot`], rebuilding the
    /// label-to-node map and any layout copies.
    ///
    /// [`write_snapshot`]: LevelAncestorIndex::write_snapshot
    pub fn read_snapshot<R: Read>(r: &mut R) -> Result<LevelAncestorIndex, SnapshotError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != SNAPSHOT_MAGIC {
            return Err(SnapshotError::BadMagic);
        }
        let version = read_u32(r)?;
        if version != SNAPSHOT_VERSION {
            return Err(SnapshotError::UnsupportedVersion(version));
        }
        let n = read_u64(r)? as usize;
        if n == 0 {
            return Err(SnapshotError::Corrupt("node count is zero"));
        }
        let max_depth = read_u32(r)?;
        let mut layout_bytes = [0u8; 4];
        r.read_exact(&mut layout_bytes)?;
        let layout = match layout_bytes[0] {
            0 => SearchLayout::Sorted,
            1 => SearchLayout::Eytzinger,
            _ => return Err(SnapshotError::Corrupt("unknown search layout")),
        };

        let mut label = Vec::with_capacity(n);
        for _ in 0..n {
            label.push(read_u32(r)?);
        }
        let mut depth = Vec::with_capacity(n);
        for _ in 0..n {
            depth.push(read_u32(r)?);
        }
        let levels = max_depth as usize + 1;
        let mut offsets = Vec::with_capacity(levels + 1);
        for _ in 0..levels + 1 {
            offsets.push(read_u64(r)? as usize);
        }
        if offsets[0] != 0 || offsets[levels] != n || offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(SnapshotError::Corrupt("bad depth array offsets"));
        }
        let mut concat = Vec::with_capacity(n);
        for _ in 0..n {
            concat.push(read_u32(r)?);
        }

        let mut node_of_label = vec![Tree::NONE; n + 1];
        for (v, &l) in label.iter().enumerate() {
            if l < 1 || l as usize > n {
                return Err(SnapshotError::Corrupt("label out of range"));
            }
            if node_of_label[l as usize] != Tree::NONE {
                return Err(SnapshotError::Corrupt("duplicate label"));
            }
            node_of_label[l as usize] = v;
        }

        let mut depth_arrays = Vec::with_capacity(levels);
        for d in 0..levels {
            let arr = concat[offsets[d]..offsets[d + 1]].to_vec();
            if arr.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SnapshotError::Corrupt("depth array not strictly increasing"));
            }
            for &l in &arr {
                if depth[node_of_label[l as usize]] != d as u32 {
                    return Err(SnapshotError::Corrupt("label filed under wrong depth"));
                }
            }
            depth_arrays.push(arr);
        }

        let eytzinger_arrays = match layout {
            SearchLayout::Sorted => Vec::new(),
            SearchLayout::Eytzinger => {
                depth_arrays.iter().map(|arr| eytzinger::layout(arr)).collect()
            }
        };

        Ok(LevelAncestorIndex {
            n,
            label,
            depth,
            depth_arrays,
            node_of_label,
            max_depth,
            layout,
            eytzinger_arrays,
            build_visits: n,
        })
    }
}

const SNAPSHOT_MAGIC: &[u8; 4] = b"LAIX";
const SNAPSHOT_VERSION: u32 = 1;

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

/// Errors from reading an index snapshot.
#[derive(Debug)]
pub enum SnapshotError {
    Io(io::Error),
    BadMagic,
    UnsupportedVersion(u32),
    Corrupt(&'static str),
}

impl std::fmt::Display for SnapshotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SnapshotError::Io(e) => write!(f, "SnapshotError: {e}"),
            SnapshotError::BadMagic => write!(f, "SnapshotError: bad magic"),
            SnapshotError::UnsupportedVersion(v) => {
                write!(f, "SnapshotError: unsupported version {v}")
            }
            SnapshotError::Corrupt(what) => write!(f, "SnapshotError: corrupt snapshot ({what})"),
        }
    }
}

impl std::error::Error for SnapshotError {}

impl From<io::Error> for SnapshotError {
    fn from(e: io::Error) -> Self {
        SnapshotError::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{generate, TreeFamily, TreeGenSpec};

    /// Independent recursive pre-order labeling, used only to derive and
    /// cross-check fixtures. Deliberately shares nothing with the iterative
    /// build above.
    fn oracle_preorder_labels(tree: &Tree) -> Vec<Label> {
        fn walk(tree: &Tree, v: NodeId, counter: &mut Label, label: &mut [Label]) {
            *counter += 1;
            label[v] = *counter;
            for &c in tree.children(v) {
                walk(tree, c, counter, label);
            }
        }
        let mut label = vec![0; tree.len()];
        let mut counter = 0;
        walk(tree, tree.root(), &mut counter, &mut label);
        label
    }

    #[test]
    fn single_node_index() {
        let t = Tree::from_parent_array(&[-1]).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        assert_eq!(idx.label_of(0).unwrap(), 1);
        assert_eq!(idx.depth_array(0).unwrap(), &[1]);
        assert_eq!(idx.max_depth(), 0);
    }

    #[test]
    fn four_node_fixture() {
        // parents [-1, 0, 0, 1], children[0] = [1, 2]: pre-order visits
        // 0, 1, 3, 2, so labels by node id are [1, 2, 4, 3]. Node 2 sits at
        // depth 1 with label 4 and node 3 at depth 2 with label 3, giving
        // depth arrays d0 = [1], d1 = [2, 4], d2 = [3].
        let t = Tree::from_parent_array(&[-1, 0, 0, 1]).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        assert_eq!(oracle_preorder_labels(&t), vec![1, 2, 4, 3]);
        assert_eq!(idx.label_of(0).unwrap(), 1);
        assert_eq!(idx.label_of(1).unwrap(), 2);
        assert_eq!(idx.label_of(2).unwrap(), 4);
        assert_eq!(idx.label_of(3).unwrap(), 3);
        assert_eq!(idx.depth_array(0).unwrap(), &[1]);
        assert_eq!(idx.depth_array(1).unwrap(), &[2, 4]);
        assert_eq!(idx.depth_array(2).unwrap(), &[3]);
        assert_eq!(idx.node_of(4).unwrap(), 2);
        assert_eq!(idx.node_of(3).unwrap(), 3);
        assert_eq!(idx.node_of(1).unwrap(), t.root());
    }

    #[test]
    fn path_labels_follow_ids() {
        let t = generate(&TreeGenSpec::new(TreeFamily::Path, 4, 0)).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        for v in 0..4 {
            assert_eq!(idx.label_of(v).unwrap(), v as Label + 1);
            assert_eq!(idx.depth_array(v as u32).unwrap(), &[v as Label + 1]);
        }
        assert_eq!(idx.label_of(2).unwrap(), 3);
    }

    #[test]
    fn star_leaves_in_order() {
        let t = generate(&TreeGenSpec::new(TreeFamily::Star, 4, 0)).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        assert_eq!(idx.depth_array(1).unwrap(), &[2, 3, 4]);
    }

    #[test]
    fn children_order_controls_labels() {
        // Same shape as the four-node fixture but with root children
        // swapped; labels must follow the stored order, not node ids.
        let t = Tree::from_edge_list(4, &[(0, 2), (0, 1), (1, 3)]).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        assert_eq!(oracle_preorder_labels(&t), vec![1, 3, 2, 4]);
        assert_eq!(idx.label_of(2).unwrap(), 2);
        assert_eq!(idx.label_of(1).unwrap(), 3);
        assert_eq!(idx.depth_array(1).unwrap(), &[2, 3]);
    }

    #[test]
    fn lookup_errors() {
        let t = Tree::from_parent_array(&[-1, 0]).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        assert!(matches!(idx.label_of(2), Err(Error::NodeOutOfRange { .. })));
        assert!(matches!(idx.node_of(0), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(idx.node_of(3), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(idx.depth_array(2), Err(Error::DepthOutOfRange { .. })));
    }

    #[test]
    fn build_visits_every_node_once() {
        for n in [1usize, 2, 17, 128] {
            let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, n, 5)).unwrap();
            let idx = LevelAncestorIndex::new(&t);
            assert_eq!(idx.build_visits(), n);
        }
    }

    #[test]
    fn labels_match_recursive_oracle() {
        for seed in 0..20 {
            let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 257, seed)).unwrap();
            let idx = LevelAncestorIndex::new(&t);
            let want = oracle_preorder_labels(&t);
            for (v, &w) in want.iter().enumerate() {
                assert_eq!(idx.label_of(v).unwrap(), w);
            }
        }
    }

    fn check_invariants(t: &Tree, idx: &LevelAncestorIndex) {
        let n = t.len();
        // Bijection onto 1..=n, round-tripping through the map.
        let mut seen = vec![false; n + 1];
        for v in 0..n {
            let l = idx.label_of(v).unwrap();
            assert!((1..=n as Label).contains(&l));
            assert!(!seen[l as usize]);
            seen[l as usize] = true;
            assert_eq!(idx.node_of(l).unwrap(), v);
        }
        // Parent labels precede child labels.
        for v in 0..n {
            if let Some(p) = t.parent(v) {
                assert!(idx.label_of(p).unwrap() < idx.label_of(v).unwrap());
            }
        }
        // Strictly increasing depth arrays whose union is 1..=n.
        let mut total = 0;
        for d in 0..=idx.max_depth() {
            let arr = idx.depth_array(d).unwrap();
            assert!(arr.windows(2).all(|w| w[0] < w[1]));
            total += arr.len();
            for &l in arr {
                assert_eq!(idx.depth_of(idx.node_of(l).unwrap()).unwrap(), d);
            }
        }
        assert_eq!(total, n);
        assert!(idx
            .depth_array(idx.depth_of(0).unwrap())
            .unwrap()
            .contains(&idx.label_of(0).unwrap()));
    }

    #[test]
    fn invariants_across_families() {
        let families = [
            TreeFamily::Path,
            TreeFamily::Star,
            TreeFamily::Caterpillar,
            TreeFamily::BalancedKary(3),
            TreeFamily::RandomAttachment,
        ];
        for family in families {
            for n in [1usize, 2, 17, 100] {
                let t = generate(&TreeGenSpec::new(family, n, 11)).unwrap();
                let idx = LevelAncestorIndex::new(&t);
                check_invariants(&t, &idx);
            }
        }
    }

    #[test]
    fn subtree_labels_are_contiguous() {
        let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 200, 3)).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        // Subtree sizes by a reverse scan over ids (children have larger
        // ids in attachment order, but compute generically via parents).
        let n = t.len();
        let mut size = vec![1usize; n];
        let mut order: Vec<NodeId> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(t.depth_of(v).unwrap()));
        for &v in &order {
            if let Some(p) = t.parent(v) {
                size[p] += size[v];
            }
        }
        for (v, &subtree) in size.iter().enumerate() {
            let base = idx.label_of(v).unwrap();
            let mut labels: Vec<Label> = Vec::new();
            // Collect subtree labels by walking ancestors of every node.
            for u in 0..n {
                let mut a = u;
                loop {
                    if a == v {
                        labels.push(idx.label_of(u).unwrap());
                        break;
                    }
                    match t.parent(a) {
                        Some(p) => a = p,
                        None => break,
                    }
                }
            }
            labels.sort_unstable();
            let want: Vec<Label> = (base..base + subtree as Label).collect();
            assert_eq!(labels, want);
        }
    }

    #[test]
    fn snapshot_roundtrip_bit_exact() {
        for layout in [SearchLayout::Sorted, SearchLayout::Eytzinger] {
            let t = generate(&TreeGenSpec::new(TreeFamily::RandomAttachment, 300, 9)).unwrap();
            let idx = LevelAncestorIndex::with_layout(&t, layout);
            let mut first = Vec::new();
            idx.write_snapshot(&mut first).unwrap();
            let back = LevelAncestorIndex::read_snapshot(&mut first.as_slice()).unwrap();
            assert_eq!(back, idx);
            let mut second = Vec::new();
            back.write_snapshot(&mut second).unwrap();
            assert_eq!(first, second);
        }
    }

    #[test]
    fn snapshot_rejects_garbage() {
        let err = LevelAncestorIndex::read_snapshot(&mut &b"nope"[..]).unwrap_err();
        assert!(matches!(err, SnapshotError::BadMagic | SnapshotError::Io(_)));

        let t = Tree::from_parent_array(&[-1, 0]).unwrap();
        let idx = LevelAncestorIndex::new(&t);
        let mut bytes = Vec::new();
        idx.write_snapshot(&mut bytes).unwrap();
        // Truncated body.
        let err = LevelAncestorIndex::read_snapshot(&mut &bytes[..bytes.len() - 2]).unwrap_err();
        assert!(matches!(err, SnapshotError::Io(_)));
        // Future version.
        let mut versioned = bytes.clone();
        versioned[4] = 9;
        let err = LevelAncestorIndex::read_snapshot(&mut versioned.as_slice()).unwrap_err();
        assert!(matches!(err, SnapshotError::UnsupportedVersion(9)));
    }
}
