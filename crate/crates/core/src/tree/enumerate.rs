//! Exhaustive generation of labeled rooted trees and plane trees.
//!
//! Rooted trees come from decoding every Prüfer word of length `n - 2` and
//! then choosing each of the `n` vertices as root, for `n^(n-1)` trees in
//! total. The stream is indexed, so callers can shard it by index range.

use std::ops::Range;

use itertools::Itertools;

use super::{LabeledPlaneTree, Permutation, PlaneTree, RootedTree};

/// `n^(n-1)`, the number of labeled rooted trees on `n` vertices. Panics
/// once that exceeds `u64` (from `n = 16`).
pub fn rooted_tree_count(n: usize) -> u64 {
    assert!(n >= 1);
    (n as u64)
        .checked_pow(n as u32 - 1)
        .expect("n^(n-1) fits in u64 only for n <= 15")
}

/// The tree with Prüfer word `word` (length `n - 2`, entries in `1..=n`)
/// rooted at `root`. Any `n >= 1`; for `n = 1` the word is empty.
pub fn rooted_tree_from_prufer(n: usize, word: &[usize], root: usize) -> RootedTree {
    assert!(n >= 1 && (1..=n).contains(&root));
    if n == 1 {
        return RootedTree::singleton();
    }
    orient(n, &prufer_decode(n, word), root)
}

/// The tree at position `index` of the canonical stream: Prüfer word number
/// `index / n` (base-`n` digits, most significant first) rooted at vertex
/// `index % n + 1`.
pub fn rooted_tree_at(n: usize, index: u64) -> RootedTree {
    assert!(n >= 1 && index < rooted_tree_count(n));
    if n == 1 {
        return RootedTree::singleton();
    }
    let root = (index % n as u64) as usize + 1;
    let mut code = index / n as u64;
    let mut word = vec![0usize; n - 2];
    for slot in word.iter_mut().rev() {
        *slot = (code % n as u64) as usize + 1;
        code /= n as u64;
    }
    let edges = prufer_decode(n, &word);
    orient(n, &edges, root)
}

/// Every labeled rooted tree on `[n]`, each exactly once.
pub fn enumerate_rooted_trees(n: usize) -> impl Iterator<Item = RootedTree> {
    enumerate_rooted_trees_range(n, 0..rooted_tree_count(n))
}

/// The slice `range` of the canonical stream.
pub fn enumerate_rooted_trees_range(
    n: usize,
    range: Range<u64>,
) -> impl Iterator<Item = RootedTree> {
    range.map(move |i| rooted_tree_at(n, i))
}

/// Edges of the labeled tree with Prüfer word `word` (entries in `1..=n`).
pub fn prufer_decode(n: usize, word: &[usize]) -> Vec<(usize, usize)> {
    assert_eq!(word.len() + 2, n);
    let mut degree = vec![1usize; n + 1];
    for &a in word {
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &a in word {
        let leaf = (1..=n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
    }
    let mut rest = (1..=n).filter(|&v| degree[v] == 1);
    let u = rest.next().expect("two vertices remain");
    let v = rest.next().expect("two vertices remain");
    edges.push((u, v));
    edges
}

fn orient(n: usize, edges: &[(usize, usize)], root: usize) -> RootedTree {
    let mut adjacent = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        adjacent[u].push(v);
        adjacent[v].push(u);
    }
    let mut parent = vec![usize::MAX; n + 1];
    parent[root] = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in &adjacent[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    RootedTree::from_parents_unchecked(parent[1..].to_vec())
}

/// All plane-tree shapes on `n` nodes, `C_{n-1}` of them.
///
/// Shapes are ordered lexicographically by the root's sequence of child
/// subtree sizes, then by the subtrees themselves in the same order.
pub fn enumerate_plane_trees(n: usize) -> Vec<PlaneTree> {
    assert!(n >= 1);
    let mut by_size: Vec<Vec<PlaneTree>> = vec![Vec::new(), vec![PlaneTree::singleton()]];
    for m in 2..=n {
        let mut shapes = Vec::new();
        for sizes in compositions(m - 1) {
            // sizes is non-empty for m >= 2; the last subtree varies fastest
            for picks in sizes
                .iter()
                .map(|&s| 0..by_size[s].len())
                .multi_cartesian_product()
            {
                let parts: Vec<&PlaneTree> = sizes
                    .iter()
                    .zip(&picks)
                    .map(|(&s, &i)| &by_size[s][i])
                    .collect();
                shapes.push(PlaneTree::graft(&parts));
            }
        }
        by_size.push(shapes);
    }
    by_size.swap_remove(n)
}

/// Compositions of `total` in lexicographic order; `[[]]` for zero.
fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every plane tree on `n` nodes with non-root nodes labeled bijectively by
/// `[n-1]`: `C_{n-1} (n-1)!` trees.
pub fn enumerate_labeled_plane_trees(n: usize) -> impl Iterator<Item = LabeledPlaneTree> {
    enumerate_plane_trees(n).into_iter().flat_map(move |shape| {
        Permutation::all(n - 1).map(move |sigma| {
            let mut labels = vec![0];
            labels.extend_from_slice(sigma.as_slice());
            LabeledPlaneTree::from_parts_unchecked(shape.clone(), labels)
        })
    })
}
