//! `alpha`: standardized restricted prime parking functions to plane trees
//! with non-root vertices labeled by `[n-1]`, and its inverse.
//!
//! Both directions run on explicit work lists, so path-shaped inputs of any
//! depth are fine.

use crate::parking::{self, PreferenceSeq};
use crate::tree::{LabeledPlaneTree, OrderedTree, PlaneTree, RootedTree};

use super::Srp;

/// One piece of an [`Srp`] after the first `n - 1` drivers have parked and
/// every edge they did not use (and the root) has been removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// The piece, relabeled to `1..=size` in post-order.
    pub srp: Srp,
    /// The drivers (among `1..n`) whose preferred vertex lies in the piece,
    /// increasing.
    pub drivers: Vec<usize>,
    /// The element of `drivers` marked to record how the piece hangs below
    /// the next one (or, for the first piece, the last driver's preference).
    pub marked: usize,
    /// Labels of the piece in the original tree, increasing; local label `k`
    /// is `vertices[k - 1]`.
    pub vertices: Vec<usize>,
}

/// Splits an [`Srp`] with at least two vertices into its pieces, ordered as
/// they appear on the last driver's path to the root.
///
/// A piece's labels need not form a contiguous block (the smallest case is
/// on six vertices), so each piece is standardized by the relative order of
/// its labels, which is its own post-order.
pub fn decompose(x: &Srp) -> Vec<Component> {
    let m = x.len();
    assert!(m >= 2, "the singleton has no pieces");
    let ordered = x.tree();
    let t = ordered.tree();
    let q = x.prefs().as_slice();
    let rank = parking::simulate(t, &q[..m - 1]).crossing_rank(m);
    let used = |v: usize| rank[v - 1].is_some();
    let piece_root = |mut v: usize| {
        while used(v) {
            v = t
                .parent(v)
                .expect("edges into the root stay unused until the last driver");
        }
        v
    };

    // (piece root, marked vertex) along the last driver's path
    let mut chain = Vec::new();
    let mut mark = q[m - 1];
    loop {
        let rho = piece_root(mark);
        chain.push((rho, mark));
        let up = t.parent(rho).expect("piece roots are never the root");
        if up == t.root() {
            break;
        }
        mark = up;
    }

    let mut piece_of = vec![usize::MAX; m + 1];
    for (i, &(rho, _)) in chain.iter().enumerate() {
        piece_of[rho] = i;
    }
    // parents before children, so each vertex inherits its piece through a used edge
    for &v in t.bottom_up_order().iter().rev() {
        if v != t.root() && used(v) {
            piece_of[v] = piece_of[t.parent(v).unwrap()];
        }
    }
    let mut members = vec![Vec::new(); chain.len()];
    let mut local = vec![0usize; m + 1];
    for v in 1..=m {
        if v != t.root() {
            let i = piece_of[v];
            assert!(i != usize::MAX, "vertex {v} is off the last driver's path");
            members[i].push(v);
            local[v] = members[i].len();
        }
    }

    let mut drivers = vec![Vec::new(); chain.len()];
    let mut prefs = vec![Vec::new(); chain.len()];
    for (j, &v) in q[..m - 1].iter().enumerate() {
        let i = piece_of[v];
        drivers[i].push(j + 1);
        prefs[i].push(local[v]);
    }

    let mut pieces = Vec::with_capacity(chain.len());
    for (i, ((&(rho, mark), vs), (ds, ps))) in chain
        .iter()
        .zip(members)
        .zip(drivers.into_iter().zip(prefs))
        .enumerate()
    {
        assert_eq!(Some(&rho), vs.last(), "a piece root is its largest label");
        assert_eq!(
            ds.len(),
            vs.len(),
            "a piece must receive as many drivers as it has vertices"
        );

        let parents: Vec<usize> = vs
            .iter()
            .map(|&v| {
                if v == rho {
                    0
                } else {
                    local[t.parent(v).unwrap()]
                }
            })
            .collect();
        let order: Vec<Vec<usize>> = vs
            .iter()
            .map(|&v| {
                ordered
                    .children(v)
                    .iter()
                    .filter(|&&c| piece_of[c] == i)
                    .map(|&c| local[c])
                    .collect()
            })
            .collect();
        let sub = OrderedTree::new_unchecked(RootedTree::from_parents_unchecked(parents), order);
        assert!(sub.is_post_order_labeled());
        let marked = ds[local[mark] - 1];
        pieces.push(Component {
            srp: Srp::new_unchecked(sub, PreferenceSeq::new_unchecked(ps)),
            drivers: ds,
            marked,
            vertices: vs,
        });
    }
    pieces
}

/// Maps an [`Srp`] on `n` vertices to a plane tree on `n` vertices whose
/// non-root vertices carry the labels `1..n-1`.
///
/// Each piece from [`decompose`] becomes a subtree of the root, left to
/// right in path order. The subtree's root takes the piece's marked driver
/// as its label and the rest of the subtree, built from the piece in the
/// same way, takes the remaining drivers in increasing order.
pub fn alpha(x: &Srp) -> LabeledPlaneTree {
    let mut arena: Vec<Vec<usize>> = vec![Vec::new()];
    let mut labels = vec![0usize];
    // (piece, final label of each local label 1..size-1, arena node)
    let mut work = vec![(x.clone(), (1..x.len()).collect::<Vec<usize>>(), 0usize)];
    while let Some((y, names, node)) = work.pop() {
        if y.len() == 1 {
            continue;
        }
        for piece in decompose(&y) {
            let child = arena.len();
            arena.push(Vec::new());
            labels.push(names[piece.marked - 1]);
            arena[node].push(child);
            let sub_names = piece
                .drivers
                .iter()
                .filter(|&&d| d != piece.marked)
                .map(|&d| names[d - 1])
                .collect();
            work.push((piece.srp, sub_names, child));
        }
    }
    let (shape, order) = PlaneTree::from_arena(&arena, 0);
    let labels = order.iter().map(|&v| labels[v]).collect();
    LabeledPlaneTree::from_parts_unchecked(shape, labels)
}

/// Inverse of [`alpha`]; total on labeled plane trees.
pub fn alpha_inverse(tree: &LabeledPlaneTree) -> Srp {
    let shape = tree.shape();
    let n = shape.len();
    // results for subtrees still waiting for their parent
    let mut built: Vec<Option<Built>> = vec![None; n];
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];

    // preorder numbering: every child has a larger index than its parent
    for x in (0..n).rev() {
        let children = shape.children(x);
        if children.is_empty() {
            built[x] = Some(Built {
                parents: vec![0],
                order: vec![Vec::new()],
                prefs: vec![1],
            });
            continue;
        }
        let mut desc: Vec<usize> = Vec::new();
        for &c in children {
            desc.push(tree.label(c));
            desc.extend_from_slice(&below[c]);
        }
        desc.sort_unstable();
        let rank_of = |label: usize| desc.binary_search(&label).expect("label below x") + 1;

        let m = desc.len() + 1;
        let mut parents = vec![0usize; m];
        let mut order = vec![Vec::new(); m];
        let mut prefs = vec![0usize; m];
        let mut offset = 0;
        let mut attach_from: Option<usize> = None;
        for &c in children.iter() {
            let piece = built[c].take().expect("children are built first");
            let size = piece.parents.len();
            let mut drivers: Vec<usize> = std::iter::once(tree.label(c))
                .chain(below[c].iter().copied())
                .map(rank_of)
                .collect();
            drivers.sort_unstable();
            let mark = rank_of(tree.label(c));
            let k = drivers.iter().position(|&d| d == mark).unwrap() + 1;

            for v in 0..size {
                parents[offset + v] = match piece.parents[v] {
                    0 => 0,
                    p => p + offset,
                };
                order[offset + v] = piece.order[v].iter().map(|&w| w + offset).collect();
            }
            for (j, &d) in drivers.iter().enumerate() {
                prefs[d - 1] = piece.prefs[j] + offset;
            }
            match attach_from {
                // the last driver prefers the k-th vertex of the first piece
                None => prefs[m - 1] = k,
                // the previous piece's root hangs, leftmost, under the k-th vertex of this one
                Some(prev_root) => {
                    let target = offset + k;
                    parents[prev_root - 1] = target;
                    order[target - 1].insert(0, prev_root);
                }
            }
            offset += size;
            attach_from = Some(offset);
        }
        let last_root = attach_from.unwrap();
        parents[last_root - 1] = m;
        order[m - 1] = vec![last_root];
        // pieces were laid out in consecutive blocks; a piece hung below a
        // vertex off the next piece's left border breaks post-order
        let glued = OrderedTree::new_unchecked(RootedTree::from_parents_unchecked(parents), order);
        built[x] = Some(if glued.is_post_order_labeled() {
            Built {
                parents: glued.tree().parents().to_vec(),
                order: glued.child_orders().to_vec(),
                prefs,
            }
        } else {
            let (sigma, relabeled) = glued.post_order_relabel();
            let prefs = prefs.iter().map(|&v| sigma.apply(v)).collect();
            Built {
                parents: relabeled.tree().parents().to_vec(),
                order: relabeled.child_orders().to_vec(),
                prefs,
            }
        });

        below[x] = desc;
        for &c in children {
            below[c] = Vec::new();
        }
    }

    let root = built[0].take().unwrap();
    let tree =
        OrderedTree::new_unchecked(RootedTree::from_parents_unchecked(root.parents), root.order);
    Srp::new_unchecked(tree, PreferenceSeq::new_unchecked(root.prefs))
}

#[derive(Clone)]
struct Built {
    parents: Vec<usize>,
    order: Vec<Vec<usize>>,
    prefs: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::tree::{enumerate_labeled_plane_trees, enumerate_plane_trees};

    fn running_example() -> Srp {
        let t = RootedTree::from_parents(vec![2, 3, 4, 5, 8, 7, 8, 9, 0]).unwrap();
        let mut order = t.children();
        order[7] = vec![5, 7];
        let tree = OrderedTree::new(t, order).unwrap();
        Srp::new(
            tree,
            PreferenceSeq::new(vec![6, 4, 1, 3, 3, 1, 6, 7, 2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn decomposition_of_the_running_example() {
        let pieces = decompose(&running_example());
        assert_eq!(pieces.len(), 3);
        let drivers: Vec<_> = pieces
            .iter()
            .map(|p| (p.drivers.clone(), p.marked))
            .collect();
        assert_eq!(
            drivers,
            vec![(vec![3, 6], 6), (vec![2, 4, 5], 2), (vec![1, 7, 8], 8)]
        );
        let prefs: Vec<_> = pieces
            .iter()
            .map(|p| p.srp.prefs().as_slice().to_vec())
            .collect();
        assert_eq!(prefs, vec![vec![1, 1], vec![2, 1, 1], vec![1, 1, 2]]);
        let vertices: Vec<_> = pieces.iter().map(|p| p.vertices.clone()).collect();
        assert_eq!(vertices, vec![vec![1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
    }

    #[test]
    fn pieces_need_not_be_contiguous() {
        // vertex 2 hangs below 3, which sits right of the leaf 1 under 4
        let t = RootedTree::from_parents(vec![4, 3, 4, 5, 6, 0]).unwrap();
        let mut order = t.children();
        order[3] = vec![1, 3];
        let x = Srp::new(
            OrderedTree::new(t, order).unwrap(),
            PreferenceSeq::new(vec![1, 2, 3, 3, 1, 2]).unwrap(),
        )
        .unwrap();
        let pieces = decompose(&x);
        let vertices: Vec<_> = pieces.iter().map(|p| p.vertices.clone()).collect();
        assert_eq!(vertices, vec![vec![2], vec![1, 3, 4, 5]]);
        let image = alpha(&x);
        assert_eq!(alpha_inverse(&image), x);
    }

    #[test]
    fn alpha_of_the_running_example() {
        let x = running_example();
        let image = alpha(&x);
        assert_eq!(image.to_string(), "*[6[3] 2[5 4] 8[7[1]]]");
        assert_eq!(alpha_inverse(&image), x);
    }

    #[test]
    fn alpha_of_the_singleton() {
        assert_eq!(alpha(&Srp::singleton()), LabeledPlaneTree::singleton());
        assert_eq!(
            alpha_inverse(&LabeledPlaneTree::singleton()),
            Srp::singleton()
        );
    }

    #[test]
    fn alpha_is_a_bijection_for_small_n() {
        for n in 1..=6 {
            let mut images = HashSet::new();
            for shape in enumerate_plane_trees(n) {
                let tree = OrderedTree::post_order_labeled(&shape);
                for p in PreferenceSeq::all(n) {
                    if let Ok(x) = Srp::new(tree.clone(), p) {
                        let image = alpha(&x);
                        assert_eq!(alpha_inverse(&image), x);
                        images.insert(image);
                    }
                }
            }
            let all: HashSet<_> = enumerate_labeled_plane_trees(n).collect();
            assert_eq!(images, all, "n = {n}");
        }
    }

    #[test]
    fn alpha_inverse_lands_in_srp() {
        for t in enumerate_labeled_plane_trees(6) {
            let x = alpha_inverse(&t);
            assert!(Srp::new(x.tree().clone(), x.prefs().clone()).is_ok());
            assert_eq!(alpha(&x), t);
        }
    }

    #[test]
    fn deep_paths_do_not_overflow() {
        // a recursive implementation would exhaust this stack long before depth 1500
        let worker = std::thread::Builder::new()
            .stack_size(128 * 1024)
            .spawn(|| {
                let n = 1_500;
                let path = LabeledPlaneTree::path(&crate::tree::Permutation::identity(n));
                let x = alpha_inverse(&path);
                assert_eq!(x.len(), n + 1);
                assert_eq!(alpha(&x), path);
                let _ = path.to_string();
            });
        worker.unwrap().join().unwrap();
    }
}
