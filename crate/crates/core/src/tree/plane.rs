use std::fmt;
use std::str::FromStr;

use super::{ParseError, Permutation, RootedTree, TreeError};

/// The shape of a plane (ordered) tree.
///
/// Nodes are numbered in preorder with the root at `0`, so two shapes are
/// equal exactly when the stored child lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    children: Vec<Vec<usize>>,
}

impl PlaneTree {
    pub fn singleton() -> Self {
        PlaneTree {
            children: vec![Vec::new()],
        }
    }

    /// The path with `n` nodes.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let children = (0..n)
            .map(|i| if i + 1 < n { vec![i + 1] } else { Vec::new() })
            .collect();
        PlaneTree { children }
    }

    /// A new root whose subtrees are `subtrees`, left to right.
    pub fn graft(subtrees: &[&PlaneTree]) -> Self {
        let total = 1 + subtrees.iter().map(|t| t.len()).sum::<usize>();
        let mut children = Vec::with_capacity(total);
        children.push(Vec::with_capacity(subtrees.len()));
        let mut offset = 1;
        for t in subtrees {
            children[0].push(offset);
            children.extend(
                t.children
                    .iter()
                    .map(|cs| cs.iter().map(|c| c + offset).collect()),
            );
            offset += t.len();
        }
        PlaneTree { children }
    }

    /// Renumbers an arbitrary arena (node `root`, ordered child lists) into
    /// preorder. Returns the shape and, for each new node, its arena index.
    pub fn from_arena(arena: &[Vec<usize>], root: usize) -> (PlaneTree, Vec<usize>) {
        let mut order = Vec::with_capacity(arena.len());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(arena[v].iter().rev());
        }
        let mut new_index = vec![usize::MAX; arena.len()];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
        }
        let children = order
            .iter()
            .map(|&v| arena[v].iter().map(|&c| new_index[c]).collect())
            .collect();
        (PlaneTree { children }, order)
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn child_lists(&self) -> &[Vec<usize>] {
        &self.children
    }

    /// Whether every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.children.iter().all(|cs| cs.len() <= 1)
    }

    /// Nodes in post-order: all of a node's subtree, then the node, and
    /// left siblings' subtrees before right ones.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(0usize, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < self.children[v].len() {
                let c = self.children[v][*next];
                *next += 1;
                stack.push((c, 0));
            } else {
                out.push(v);
                stack.pop();
            }
        }
        out
    }

    /// Number of nodes in the subtree of every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        // preorder: children always carry larger indices than their parent
        for v in (0..self.len()).rev() {
            for &c in &self.children[v] {
                size[v] += size[c];
            }
        }
        size
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.children, &|f, _| f.write_str("*"))
    }
}

/// Writes `node[child child ...]` with an explicit stack.
fn write_bracketed(
    f: &mut fmt::Formatter<'_>,
    children: &[Vec<usize>],
    node: &dyn Fn(&mut fmt::Formatter<'_>, usize) -> fmt::Result,
) -> fmt::Result {
    enum Step {
        Open(usize),
        Sep,
        Close,
    }
    let mut stack = vec![Step::Open(0)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Open(v) => {
                node(f, v)?;
                let cs = &children[v];
                if !cs.is_empty() {
                    f.write_str("[")?;
                    stack.push(Step::Close);
                    for (i, &c) in cs.iter().enumerate().rev() {
                        stack.push(Step::Open(c));
                        if i > 0 {
                            stack.push(Step::Sep);
                        }
                    }
                }
            }
            Step::Sep => f.write_str(" ")?,
            Step::Close => f.write_str("]")?,
        }
    }
    Ok(())
}

/// A plane tree on `n` nodes whose non-root nodes carry the labels
/// `1..n-1` bijectively. The root is unlabeled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPlaneTree {
    shape: PlaneTree,
    // labels[node]; labels[0] is unused and always 0
    labels: Vec<usize>,
}

impl LabeledPlaneTree {
    /// `labels[i]` is the label of preorder node `i + 1`.
    pub fn new(shape: PlaneTree, labels: Vec<usize>) -> Result<Self, TreeError> {
        let n = shape.len();
        let mut seen = vec![false; n];
        if labels.len() + 1 != n {
            return Err(TreeError::BadLabeling {
                reason: format!("{} labels for {} non-root nodes", labels.len(), n - 1),
            });
        }
        for &l in &labels {
            if l == 0 || l >= n || seen[l] {
                return Err(TreeError::BadLabeling {
                    reason: format!("label {l} is out of range or repeated"),
                });
            }
            seen[l] = true;
        }
        let mut all = Vec::with_capacity(n);
        all.push(0);
        all.extend(labels);
        Ok(LabeledPlaneTree { shape, labels: all })
    }

    pub(crate) fn from_parts_unchecked(shape: PlaneTree, labels: Vec<usize>) -> Self {
        debug_assert_eq!(labels[0], 0);
        debug_assert!(LabeledPlaneTree::new(shape.clone(), labels[1..].to_vec()).is_ok());
        LabeledPlaneTree { shape, labels }
    }

    pub fn singleton() -> Self {
        LabeledPlaneTree {
            shape: PlaneTree::singleton(),
            labels: vec![0],
        }
    }

    /// The path whose labels read `sigma(1), sigma(2), ...` going away from
    /// the unlabeled root.
    pub fn path(sigma: &Permutation) -> Self {
        let mut labels = vec![0];
        labels.extend_from_slice(sigma.as_slice());
        LabeledPlaneTree {
            shape: PlaneTree::path(sigma.len() + 1),
            labels,
        }
    }

    /// If this tree is a path, the labels read away from the root.
    pub fn path_word(&self) -> Option<Permutation> {
        if !self.shape.is_path() {
            return None;
        }
        // preorder of a path is top-down
        Some(Permutation::new_unchecked(self.labels[1..].to_vec()))
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shape(&self) -> &PlaneTree {
        &self.shape
    }

    /// Label of a non-root node; `0` for the root.
    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

impl fmt::Display for LabeledPlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = &self.labels;
        write_bracketed(f, self.shape.child_lists(), &|f, v| {
            if v == 0 {
                f.write_str("*")
            } else {
                write!(f, "{}", labels[v])
            }
        })
    }
}

impl FromStr for LabeledPlaneTree {
    type Err = ParseError;

    /// Parses `*[label[children...] ...]`; empty brackets may be omitted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ParseError::Syntax(format!("plane tree: {msg}"));
        let bytes = s.trim().as_bytes();
        let mut arena: Vec<Vec<usize>> = Vec::new();
        let mut labels: Vec<usize> = Vec::new();
        let mut opened: Vec<bool> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut last: Option<usize> = None;
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'*' => {
                    if !arena.is_empty() {
                        return Err(bad("'*' may only mark the root"));
                    }
                    arena.push(Vec::new());
                    labels.push(0);
                    opened.push(false);
                    last = Some(0);
                    i += 1;
                }
                b'[' => {
                    let v = last.ok_or_else(|| bad("'[' without a node"))?;
                    if opened[v] {
                        return Err(bad("a node's children must be listed once"));
                    }
                    opened[v] = true;
                    stack.push(v);
                    last = None;
                    i += 1;
                }
                b']' => {
                    let v = stack.pop().ok_or_else(|| bad("unbalanced ']'"))?;
                    last = Some(v);
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let label: usize = s.trim()[start..i]
                        .parse()
                        .map_err(|_| bad("label too large"))?;
                    let parent = *stack
                        .last()
                        .ok_or_else(|| bad("labeled node outside the root's brackets"))?;
                    let v = arena.len();
                    arena.push(Vec::new());
                    labels.push(label);
                    opened.push(false);
                    arena[parent].push(v);
                    last = Some(v);
                }
                c if c.is_ascii_whitespace() => {
                    i += 1;
                }
                _ => return Err(bad(&format!("unexpected character {:?}", c as char))),
            }
        }
        if arena.is_empty() {
            return Err(bad("missing root '*'"));
        }
        if !stack.is_empty() {
            return Err(bad("unbalanced '['"));
        }
        // nodes were created in document order, which is preorder
        let (shape, order) = PlaneTree::from_arena(&arena, 0);
        debug_assert!(order.iter().enumerate().all(|(i, &v)| i == v));
        Ok(LabeledPlaneTree::new(shape, labels[1..].to_vec())?)
    }
}

/// A plane tree whose vertices carry all labels `1..=n`, i.e. a rooted tree
/// together with a left-to-right order on every set of siblings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    tree: RootedTree,
    // order[v - 1]: children of v, left to right
    order: Vec<Vec<usize>>,
}

impl OrderedTree {
    /// Attaches a sibling order; `order[v - 1]` must list exactly the
    /// children of `v`.
    pub fn new(tree: RootedTree, order: Vec<Vec<usize>>) -> Result<Self, TreeError> {
        let children = tree.children();
        if order.len() != tree.len() {
            return Err(TreeError::BadOrder { vertex: 0 });
        }
        for (v, (given, actual)) in order.iter().zip(&children).enumerate() {
            let mut sorted = given.clone();
            sorted.sort_unstable();
            if &sorted != actual {
                return Err(TreeError::BadOrder { vertex: v + 1 });
            }
        }
        Ok(OrderedTree { tree, order })
    }

    pub(crate) fn new_unchecked(tree: RootedTree, order: Vec<Vec<usize>>) -> Self {
        debug_assert!(OrderedTree::new(tree.clone(), order.clone()).is_ok());
        OrderedTree { tree, order }
    }

    /// Gives a plane-tree shape the post-order labeling.
    pub fn post_order_labeled(shape: &PlaneTree) -> Self {
        let post = shape.post_order();
        let mut label = vec![0; shape.len()];
        for (i, &node) in post.iter().enumerate() {
            label[node] = i + 1;
        }
        Self::from_shape(shape, &label)
    }

    /// Labels `shape` by `label[node]`, a bijection onto `1..=n`.
    pub fn from_shape(shape: &PlaneTree, label: &[usize]) -> Self {
        let n = shape.len();
        let mut parent = vec![0; n];
        let mut order = vec![Vec::new(); n];
        for node in 0..n {
            for &c in shape.children(node) {
                parent[label[c] - 1] = label[node];
                order[label[node] - 1].push(label[c]);
            }
        }
        OrderedTree::new_unchecked(RootedTree::from_parents_unchecked(parent), order)
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn into_tree(self) -> RootedTree {
        self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Children of `v`, left to right.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.order[v - 1]
    }

    pub fn child_orders(&self) -> &[Vec<usize>] {
        &self.order
    }

    /// Vertex labels in post-order.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.tree.root(), 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let cs = &self.order[v - 1];
            if *next < cs.len() {
                let c = cs[*next];
                *next += 1;
                stack.push((c, 0));
            } else {
                out.push(v);
                stack.pop();
            }
        }
        out
    }

    pub fn is_post_order_labeled(&self) -> bool {
        self.post_order()
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i + 1)
    }

    /// Relabels in post-order. Returns `sigma` with `sigma(old) = new` and the
    /// relabeled tree.
    pub fn post_order_relabel(&self) -> (Permutation, OrderedTree) {
        let mut word = vec![0; self.len()];
        for (i, v) in self.post_order().into_iter().enumerate() {
            word[v - 1] = i + 1;
        }
        let sigma = Permutation::new_unchecked(word);
        let relabeled = self.relabel(&sigma);
        (sigma, relabeled)
    }

    /// Relabels every vertex `v` as `sigma(v)`, keeping sibling order.
    pub fn relabel(&self, sigma: &Permutation) -> OrderedTree {
        let tree = self.tree.relabel(sigma);
        let mut order = vec![Vec::new(); self.len()];
        for v in 1..=self.len() {
            order[sigma.apply(v) - 1] = self.order[v - 1].iter().map(|&c| sigma.apply(c)).collect();
        }
        OrderedTree { tree, order }
    }

    /// The unlabeled shape.
    pub fn shape(&self) -> PlaneTree {
        let arena: Vec<Vec<usize>> = self
            .order
            .iter()
            .map(|cs| cs.iter().map(|c| c - 1).collect())
            .collect();
        PlaneTree::from_arena(&arena, self.tree.root() - 1).0
    }
}
