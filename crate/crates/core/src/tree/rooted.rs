use std::fmt;
use std::str::FromStr;

use super::{ParseError, TreeError};

/// A rooted tree on the vertex set `{1, ..., n}` with every edge oriented
/// towards the root.
///
/// The tree is stored as a dense parent map indexed by label. In the
/// external text form the root's parent is written as `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    parent: Vec<usize>,
    root: usize,
}

impl RootedTree {
    /// Validates a parent list (`0` marks the root) and builds the tree.
    ///
    /// Checks run in a fixed order: label range, duplicate roots, cycles,
    /// missing root. Every error names the first offending vertex.
    pub fn from_parents(parents: Vec<usize>) -> Result<Self, TreeError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeError::NoRoot);
        }
        for (i, &p) in parents.iter().enumerate() {
            if p > n {
                return Err(TreeError::LabelOutOfRange {
                    vertex: i + 1,
                    parent: p,
                    n,
                });
            }
        }
        let mut root = None;
        for (i, &p) in parents.iter().enumerate() {
            if p == 0 {
                if root.is_some() {
                    return Err(TreeError::MultipleRoots { vertex: i + 1 });
                }
                root = Some(i + 1);
            }
        }

        // 0 = unseen, 1 = on the current walk, 2 = known to reach the root
        let mut state = vec![0u8; n + 1];
        let mut walk = Vec::with_capacity(n);
        for start in 1..=n {
            let mut v = start;
            while v != 0 && state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parents[v - 1];
            }
            if v != 0 && state[v] == 1 {
                return Err(TreeError::CycleDetected { vertex: v });
            }
            for u in walk.drain(..) {
                state[u] = 2;
            }
        }

        let root = root.ok_or(TreeError::NoRoot)?;
        Ok(RootedTree {
            parent: parents,
            root,
        })
    }

    /// Builds a tree from a parent map that is already known to be valid.
    pub(crate) fn from_parents_unchecked(parents: Vec<usize>) -> Self {
        debug_assert!(RootedTree::from_parents(parents.clone()).is_ok());
        let root = parents.iter().position(|&p| p == 0).expect("root") + 1;
        RootedTree {
            parent: parents,
            root,
        }
    }

    /// The single-vertex tree.
    pub fn singleton() -> Self {
        RootedTree {
            parent: vec![0],
            root: 1,
        }
    }

    /// The path `1 -> 2 -> ... -> n` rooted at `n`, on which classical
    /// parking functions live.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one vertex");
        let parent = (1..=n).map(|v| if v == n { 0 } else { v + 1 }).collect();
        RootedTree { parent, root: n }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Always false; a rooted tree has at least one vertex.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `v`, or `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v - 1] {
            0 => None,
            p => Some(p),
        }
    }

    /// The raw parent list with `0` for the root.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Children of every vertex in increasing label order, indexed by `v - 1`.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.len()];
        for (i, &p) in self.parent.iter().enumerate() {
            if p != 0 {
                children[p - 1].push(i + 1);
            }
        }
        children
    }

    /// Vertices with no children. The root of the singleton tree is a leaf.
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.len()];
        for &p in &self.parent {
            if p != 0 {
                has_child[p - 1] = true;
            }
        }
        (1..=self.len()).filter(|&v| !has_child[v - 1]).collect()
    }

    /// A vertex order in which every vertex appears before its parent.
    pub fn bottom_up_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut depth = vec![usize::MAX; n + 1];
        depth[self.root] = 0;
        let mut stack = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while depth[v] == usize::MAX {
                stack.push(v);
                v = self.parent[v - 1];
            }
            let mut d = depth[v];
            while let Some(u) = stack.pop() {
                d += 1;
                depth[u] = d;
            }
        }
        // deepest first, ties by label
        let max = (1..=n).map(|v| depth[v]).max().unwrap_or(0);
        let mut by_depth = vec![Vec::new(); max + 1];
        for v in 1..=n {
            by_depth[depth[v]].push(v);
        }
        by_depth.into_iter().rev().flatten().collect()
    }

    /// `|T_v|` for every vertex, indexed by `v - 1`.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.len()];
        for v in self.bottom_up_order() {
            if let Some(p) = self.parent(v) {
                size[p - 1] += size[v - 1];
            }
        }
        size
    }

    /// Number of vertices `u` with a directed path from `u` to `v`, `v`
    /// included.
    pub fn subtree_size(&self, v: usize) -> Result<usize, TreeError> {
        if v == 0 || v > self.len() {
            return Err(TreeError::VertexOutOfRange {
                vertex: v,
                n: self.len(),
            });
        }
        Ok(self.subtree_sizes()[v - 1])
    }

    /// Whether `u` lies in the subtree `T_v`.
    pub fn is_descendant(&self, u: usize, v: usize) -> bool {
        let mut w = u;
        loop {
            if w == v {
                return true;
            }
            match self.parent(w) {
                Some(p) => w = p,
                None => return false,
            }
        }
    }

    /// The vertices on the walk from `v` to the root, both ends included.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut w = v;
        while let Some(p) = self.parent(w) {
            path.push(p);
            w = p;
        }
        path
    }

    /// Relabels every vertex `v` as `sigma(v)`.
    pub fn relabel(&self, sigma: &super::Permutation) -> RootedTree {
        assert_eq!(sigma.len(), self.len());
        let mut parent = vec![0; self.len()];
        for v in 1..=self.len() {
            if let Some(p) = self.parent(v) {
                parent[sigma.apply(v) - 1] = sigma.apply(p);
            }
        }
        RootedTree {
            parent,
            root: sigma.apply(self.root),
        }
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parent.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for RootedTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parents = super::parse_integers(s)?;
        Ok(RootedTree::from_parents(parents)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_tree() -> RootedTree {
        RootedTree::from_parents(vec![3, 3, 5, 5, 0]).unwrap()
    }

    #[test]
    fn validates_the_five_vertex_example() {
        let t = sample_tree();
        assert_eq!(t.root(), 5);
        assert_eq!(t.parent(1), Some(3));
        assert_eq!(t.parent(4), Some(5));
        assert_eq!(t.parent(5), None);
        assert_eq!(t.children()[2], vec![1, 2]);
        assert_eq!(t.leaves(), vec![1, 2, 4]);
    }

    #[test]
    fn singleton_and_two_vertex_trees() {
        let t = RootedTree::from_parents(vec![0]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t, RootedTree::singleton());
        assert_eq!(t.leaves(), vec![1]);
        let t = RootedTree::from_parents(vec![2, 0]).unwrap();
        assert_eq!(t.root(), 2);
    }

    #[test]
    fn rejects_bad_parent_lists() {
        assert_eq!(
            RootedTree::from_parents(vec![2, 3, 2]),
            Err(TreeError::CycleDetected { vertex: 2 })
        );
        assert_eq!(
            RootedTree::from_parents(vec![0, 0]),
            Err(TreeError::MultipleRoots { vertex: 2 })
        );
        assert_eq!(
            RootedTree::from_parents(vec![0, 3]),
            Err(TreeError::LabelOutOfRange {
                vertex: 2,
                parent: 3,
                n: 2
            })
        );
        assert_eq!(RootedTree::from_parents(vec![]), Err(TreeError::NoRoot));
        assert_eq!(
            RootedTree::from_parents(vec![1]),
            Err(TreeError::CycleDetected { vertex: 1 })
        );
        // a cycle hanging off an otherwise valid root
        assert_eq!(
            RootedTree::from_parents(vec![0, 3, 2]),
            Err(TreeError::CycleDetected { vertex: 2 })
        );
    }

    #[test]
    fn subtree_sizes_match_descendant_counts() {
        let t = sample_tree();
        assert_eq!(t.subtree_size(3), Ok(3));
        assert_eq!(t.subtree_size(5), Ok(5));
        assert_eq!(t.subtree_size(1), Ok(1));
        assert_eq!(
            t.subtree_size(6),
            Err(TreeError::VertexOutOfRange { vertex: 6, n: 5 })
        );
        for v in 1..=5 {
            let brute = (1..=5).filter(|&u| t.is_descendant(u, v)).count();
            assert_eq!(t.subtree_size(v).unwrap(), brute);
        }
    }

    #[test]
    fn path_tree_parent_lists() {
        assert_eq!(RootedTree::path(5).parents(), &[2, 3, 4, 5, 0]);
        assert_eq!(RootedTree::path(1).parents(), &[0]);
        assert_eq!(RootedTree::path(2).parents(), &[2, 0]);
    }

    #[test]
    fn bottom_up_order_puts_children_first() {
        let t = sample_tree();
        let order = t.bottom_up_order();
        let pos = |v: usize| order.iter().position(|&u| u == v).unwrap();
        for v in 1..=5 {
            if let Some(p) = t.parent(v) {
                assert!(pos(v) < pos(p));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let t: RootedTree = "3 3 5 5 0".parse().unwrap();
        assert_eq!(t, sample_tree());
        assert_eq!(t.to_string(), "3 3 5 5 0");
        assert!("3 x 5".parse::<RootedTree>().is_err());
    }
}
