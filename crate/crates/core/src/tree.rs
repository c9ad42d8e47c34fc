//! Rooted-tree representation, validation, and deterministic generators.
//!
//! A [`Tree`] owns dense node ids `0..n`, parent links, ordered child
//! adjacency, and precomputed depths (root has depth 0). Construction
//! validates the full set of structural invariants: exactly one root,
//! children consistent with parents, and every node reachable from the
//! root by parent links.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

/// An immutable rooted tree over nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    /// parent[v], or [`Tree::NONE`] for the root.
    parent: Vec<NodeId>,
    /// Children in input order; this order pins down pre-order labeling.
    children: Vec<Vec<NodeId>>,
    root: NodeId,
    /// Depth of every node; root depth is 0.
    depth: Vec<u32>,
    max_depth: u32,
}

impl Tree {
    /// Sentinel for "no parent", used internally and in jump tables.
    pub const NONE: NodeId = usize::MAX;

    /// Builds a tree from a parent array: `parents[v]` is the parent of `v`,
    /// with `-1` marking the root. Children are ordered by ascending child id
    /// (one left-to-right scan of the array).
    pub fn from_parent_array(parents: &[i64]) -> Result<Tree, Error> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::NoRoot);
        }
        let mut root = Tree::NONE;
        let mut parent = vec![Tree::NONE; n];
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (v, &p) in parents.iter().enumerate() {
            if p == -1 {
                if root != Tree::NONE {
                    return Err(Error::MultipleRoots { first: root, second: v });
                }
                root = v;
            } else if p < 0 || p >= n as i64 {
                return Err(Error::ParentOutOfRange { node: v, parent: p, n });
            } else {
                parent[v] = p as NodeId;
                children[p as usize].push(v);
            }
        }
        if root == Tree::NONE {
            return Err(Error::NoRoot);
        }
        Tree::finish(n, parent, children, root)
    }

    /// Builds a tree from `(parent, child)` edges. Exactly `n - 1` edges are
    /// required; children keep edge appearance order.
    pub fn from_edge_list(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Tree, Error> {
        if n == 0 {
            return Err(Error::NoRoot);
        }
        if edges.len() != n - 1 {
            return Err(Error::EdgeCountMismatch { expected: n - 1, found: edges.len() });
        }
        let mut parent = vec![Tree::NONE; n];
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for &(p, c) in edges {
            if p >= n {
                return Err(Error::NodeOutOfRange { node: p, n });
            }
            if c >= n {
                return Err(Error::NodeOutOfRange { node: c, n });
            }
            if parent[c] != Tree::NONE {
                return Err(Error::DuplicateChild { child: c });
            }
            parent[c] = p;
            children[p].push(c);
        }
        // A self-edge (v, v) gives v itself as parent; it is caught by the
        // reachability check below, or by NoRoot if it consumed the last
        // parentless slot.
        let mut root = Tree::NONE;
        for (v, &p) in parent.iter().enumerate() {
            if p == Tree::NONE {
                if root != Tree::NONE {
                    return Err(Error::MultipleRoots { first: root, second: v });
                }
                root = v;
            }
        }
        if root == Tree::NONE {
            return Err(Error::NoRoot);
        }
        Tree::finish(n, parent, children, root)
    }

    /// Shared validation tail: breadth-first worklist from the root assigns
    /// depths and doubles as the cycle/connectivity check. Iterative on
    /// purpose so path trees of any size cannot overflow the call stack.
    fn finish(
        n: usize,
        parent: Vec<NodeId>,
        children: Vec<Vec<NodeId>>,
        root: NodeId,
    ) -> Result<Tree, Error> {
        let mut depth = vec![u32::MAX; n];
        let mut max_depth = 0u32;
        let mut queue = std::collections::VecDeque::with_capacity(n.min(1024));
        depth[root] = 0;
        queue.push_back(root);
        let mut seen = 1usize;
        while let Some(v) = queue.pop_front() {
            let d = depth[v] + 1;
            for &c in &children[v] {
                depth[c] = d;
                max_depth = max_depth.max(d);
                seen += 1;
                queue.push_back(c);
            }
        }
        if seen != n {
            // Some node never got a depth: it sits on a cycle detached from
            // the root.
            let node = depth.iter().position(|&d| d == u32::MAX).unwrap();
            return Err(Error::CycleDetected { node });
        }
        Ok(Tree { n, parent, children, root, depth, max_depth })
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // a valid tree always has at least the root
    }

    /// The root node id.
    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Parent of `v`, or `None` for the root. Panics if `v` is out of range.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v] {
            Tree::NONE => None,
            p => Some(p),
        }
    }

    /// Children of `v` in input order.
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    /// Depth of `v` (parent hops to the root; root depth is 0).
    pub fn depth_of(&self, v: NodeId) -> Result<u32, Error> {
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(self.depth[v])
    }

    /// Per-node depth array.
    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    /// Largest depth present.
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// The parent array in external form: `-1` for the root.
    pub fn parent_array(&self) -> Vec<i64> {
        self.parent.iter().map(|&p| if p == Tree::NONE { -1 } else { p as i64 }).collect()
    }

    /// Renders the parent-array text format: line 1 is `n`, line 2 the
    /// space-separated parent ids with `-1` for the root, LF endings and a
    /// trailing newline.
    pub fn to_text(&self) -> String {
        parent_array_text(&self.parent_array())
    }

    /// Parses the parent-array text format accepted by the CLI.
    pub fn from_text(text: &str) -> Result<Tree, ParseError> {
        let mut lines = text.lines();
        let count_line = lines.next().ok_or(ParseError::Empty)?;
        let n: usize = count_line
            .trim()
            .parse()
            .map_err(|_| ParseError::InvalidCount(count_line.trim().to_string()))?;
        let parents_line = lines.next().unwrap_or("");
        let mut parents = Vec::with_capacity(n);
        for tok in parents_line.split_whitespace() {
            let p: i64 = tok.parse().map_err(|_| ParseError::InvalidToken(tok.to_string()))?;
            parents.push(p);
        }
        if parents.len() != n {
            return Err(ParseError::WrongTokenCount { expected: n, found: parents.len() });
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(ParseError::TrailingContent);
        }
        Tree::from_parent_array(&parents).map_err(ParseError::Tree)
    }
}

/// Formats a parent array as the two-line text format without building a
/// tree first.
pub fn parent_array_text(parents: &[i64]) -> String {
    let mut out = String::with_capacity(parents.len() * 3 + 16);
    out.push_str(&parents.len().to_string());
    out.push('\n');
    for (i, p) in parents.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&p.to_string());
    }
    out.push('\n');
    out
}

/// Errors from the parent-array text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    InvalidCount(String),
    InvalidToken(String),
    WrongTokenCount { expected: usize, found: usize },
    TrailingContent,
    Tree(Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "ParseError: empty input"),
            ParseError::InvalidCount(s) => write!(f, "ParseError: invalid node count {s:?}"),
            ParseError::InvalidToken(s) => write!(f, "ParseError: invalid parent entry {s:?}"),
            ParseError::WrongTokenCount { expected, found } => {
                write!(f, "ParseError: expected {expected} parent entries, found {found}")
            }
            ParseError::TrailingContent => write!(f, "ParseError: unexpected content after line 2"),
            ParseError::Tree(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<Error> for ParseError {
    fn from(e: Error) -> Self {
        ParseError::Tree(e)
    }
}

/// Generator family for benchmark and test trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFamily {
    /// Single chain: parent[i] = i - 1.
    Path,
    /// All nodes attached to the root.
    Star,
    /// Spine of ceil(n/2) nodes; leaf j hangs off spine node j.
    Caterpillar,
    /// Complete k-ary heap shape: parent[i] = (i - 1) / k.
    BalancedKary(u32),
    /// Node i attaches to a uniform random node in [0, i).
    RandomAttachment,
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeFamily::Path => write!(f, "path"),
            TreeFamily::Star => write!(f, "star"),
            TreeFamily::Caterpillar => write!(f, "caterpillar"),
            TreeFamily::BalancedKary(k) => write!(f, "balanced_kary:{k}"),
            TreeFamily::RandomAttachment => write!(f, "random_attachment"),
        }
    }
}

impl std::str::FromStr for TreeFamily {
    type Err = Error;

    /// Accepts `path`, `star`, `caterpillar`, `balanced_kary` (binary),
    /// `balanced_kary:K`, and `random_attachment`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "path" => Ok(TreeFamily::Path),
            "star" => Ok(TreeFamily::Star),
            "caterpillar" => Ok(TreeFamily::Caterpillar),
            "balanced_kary" => Ok(TreeFamily::BalancedKary(2)),
            "random_attachment" => Ok(TreeFamily::RandomAttachment),
            _ => {
                if let Some(k) = s.strip_prefix("balanced_kary:") {
                    let k: u32 = k.parse().map_err(|_| Error::InvalidGenSpec {
                        reason: "bad arity in balanced_kary:K",
                    })?;
                    Ok(TreeFamily::BalancedKary(k))
                } else {
                    Err(Error::InvalidGenSpec { reason: "unknown family" })
                }
            }
        }
    }
}

/// A reproducible tree description: family, size, and seed.
///
/// The canonical families (path, star, caterpillar, balanced_kary) ignore
/// the seed; random_attachment draws every parent from a ChaCha8 stream
/// seeded with `seed`, so equal specs always produce identical trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeGenSpec {
    pub family: TreeFamily,
    pub n: usize,
    pub seed: u64,
}

impl TreeGenSpec {
    pub fn new(family: TreeFamily, n: usize, seed: u64) -> TreeGenSpec {
        TreeGenSpec { family, n, seed }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.n < 1 {
            return Err(Error::InvalidGenSpec { reason: "n must be >= 1" });
        }
        if let TreeFamily::BalancedKary(k) = self.family {
            if k < 2 {
                return Err(Error::InvalidGenSpec { reason: "balanced_kary needs k >= 2" });
            }
        }
        Ok(())
    }
}

/// Generates the parent array for a spec without building the tree.
pub fn generate_parents(spec: &TreeGenSpec) -> Result<Vec<i64>, Error> {
    spec.validate()?;
    let n = spec.n;
    let mut parents = Vec::with_capacity(n);
    parents.push(-1);
    match spec.family {
        TreeFamily::Path => {
            for i in 1..n {
                parents.push(i as i64 - 1);
            }
        }
        TreeFamily::Star => {
            parents.resize(n, 0);
        }
        TreeFamily::Caterpillar => {
            let spine = n.div_ceil(2);
            for i in 1..spine {
                parents.push(i as i64 - 1);
            }
            for j in 0..n - spine {
                parents.push(j as i64);
            }
        }
        TreeFamily::BalancedKary(k) => {
            for i in 1..n {
                parents.push((i as i64 - 1) / k as i64);
            }
        }
        TreeFamily::RandomAttachment => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            for i in 1..n {
                parents.push(rng.random_range(0..i) as i64);
            }
        }
    }
    Ok(parents)
}

/// Generates a validated tree from a spec. Deterministic per (family, n, seed).
pub fn generate(spec: &TreeGenSpec) -> Result<Tree, Error> {
    let parents = generate_parents(spec)?;
    Tree::from_parent_array(&parents)
}
