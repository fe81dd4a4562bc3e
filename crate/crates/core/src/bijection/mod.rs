//! The bijection between prime parking functions on rooted trees and pairs
//! (permutation, labeled plane tree), and the maps on permutations that it
//! restricts to.
//!
//! `psi` factors as `phi` followed by `alpha`:
//!
//! * `phi` orders siblings by when their parent edges are first crossed
//!   (edges crossed earlier sit further right) and relabels the resulting
//!   plane tree in post-order, producing a standardized restricted prime
//!   parking function ([`Srp`]) and the relabeling permutation;
//! * `alpha` cuts an [`Srp`] into components along the edges the final
//!   driver is first to cross and recursively turns it into a plane tree
//!   whose non-root vertices are labeled by `[n-1]`.

mod alpha;
mod pattern;

pub use alpha::{alpha, alpha_inverse, decompose, Component};
pub use pattern::{
    avoiders_132, borie_map, growth_sequences, is_132_avoiding, is_132_avoiding_brute, mmp,
    path_preimage_seq,
};

use thiserror::Error;

use crate::parking::{self, ParkingError, PreferenceSeq};
use crate::tree::{LabeledPlaneTree, OrderedTree, Permutation, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("the parking function is not prime")]
    NotPrime,
    #[error("not a standardized restricted prime parking function: {reason}")]
    NotSrp { reason: String },
    #[error("{perm} contains the pattern 132")]
    Not132Avoiding { perm: Permutation },
    #[error("permutation has length {perm} but the tree has {tree} vertices")]
    SizeMismatch { perm: usize, tree: usize },
    #[error(transparent)]
    Parking(#[from] ParkingError),
}

/// A standardized restricted prime parking function: a prime parking
/// function on a plane tree labeled in post-order, whose sibling order
/// matches the parking procedure (of two siblings, the one whose parent
/// edge is first crossed earlier sits to the right).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Srp {
    tree: OrderedTree,
    prefs: PreferenceSeq,
}

impl Srp {
    pub fn new(tree: OrderedTree, prefs: PreferenceSeq) -> Result<Self, BijectionError> {
        if let Err(reason) = Srp::violation(&tree, &prefs) {
            return Err(BijectionError::NotSrp { reason });
        }
        Ok(Srp { tree, prefs })
    }

    pub(crate) fn new_unchecked(tree: OrderedTree, prefs: PreferenceSeq) -> Self {
        debug_assert_eq!(Srp::violation(&tree, &prefs), Ok(()));
        Srp { tree, prefs }
    }

    /// Whether `(tree, prefs)` is a standardized restricted prime parking
    /// function, without taking ownership.
    pub fn check(tree: &OrderedTree, prefs: &PreferenceSeq) -> Result<(), BijectionError> {
        Srp::violation(tree, prefs).map_err(|reason| BijectionError::NotSrp { reason })
    }

    pub fn singleton() -> Self {
        Srp::new_unchecked(
            OrderedTree::post_order_labeled(&crate::tree::PlaneTree::singleton()),
            PreferenceSeq::new_unchecked(vec![1]),
        )
    }

    pub fn tree(&self) -> &OrderedTree {
        &self.tree
    }

    pub fn prefs(&self) -> &PreferenceSeq {
        &self.prefs
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_parts(self) -> (OrderedTree, PreferenceSeq) {
        (self.tree, self.prefs)
    }

    /// Checks the three defining conditions; on failure says which.
    fn violation(tree: &OrderedTree, prefs: &PreferenceSeq) -> Result<(), String> {
        let t = tree.tree();
        if prefs.len() != t.len() {
            return Err(format!(
                "{} preferences for {} vertices",
                prefs.len(),
                t.len()
            ));
        }
        if !parking::is_prime(t, prefs).map_err(|e| e.to_string())? {
            return Err("not prime".into());
        }
        if !tree.is_post_order_labeled() {
            return Err("labels are not in post-order".into());
        }
        let rank = parking::simulate(t, prefs.as_slice()).crossing_rank(t.len());
        for v in 1..=t.len() {
            for pair in tree.children(v).windows(2) {
                // prime, so every edge is crossed
                let (left, right) = (rank[pair[0] - 1].unwrap(), rank[pair[1] - 1].unwrap());
                if left < right {
                    return Err(format!(
                        "sibling {} is left of {} but its edge was crossed first",
                        pair[0], pair[1]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The plane tree induced on a prime parking function: siblings are
/// ordered right to left by the first time their parent edge is crossed.
pub fn induced_order(t: &RootedTree, p: &PreferenceSeq) -> Result<OrderedTree, BijectionError> {
    if !parking::is_prime(t, p)? {
        return Err(BijectionError::NotPrime);
    }
    let rank = parking::park(t, p)?.crossing_rank(t.len());
    let order = t
        .children()
        .into_iter()
        .map(|mut cs| {
            cs.sort_by_key(|&c| {
                std::cmp::Reverse(rank[c - 1].expect("prime parking functions use every edge"))
            });
            cs
        })
        .collect();
    Ok(OrderedTree::new_unchecked(t.clone(), order))
}

/// Standardizes a prime parking function: returns `sigma` and
/// `(T_sigma, p_sigma)`, where `T_sigma` is the induced plane tree relabeled
/// in post-order and `p_sigma = (sigma(p_1), ..., sigma(p_n))`.
pub fn phi(t: &RootedTree, p: &PreferenceSeq) -> Result<(Permutation, Srp), BijectionError> {
    let ordered = induced_order(t, p)?;
    let (sigma, relabeled) = ordered.post_order_relabel();
    let prefs = p.relabeled(&sigma);
    Ok((sigma, Srp::new_unchecked(relabeled, prefs)))
}

/// Undoes [`phi`]: relabels by `sigma^{-1}` and forgets the sibling order.
pub fn phi_inverse(
    sigma: &Permutation,
    srp: &Srp,
) -> Result<(RootedTree, PreferenceSeq), BijectionError> {
    if sigma.len() != srp.len() {
        return Err(BijectionError::SizeMismatch {
            perm: sigma.len(),
            tree: srp.len(),
        });
    }
    let inv = sigma.inverse();
    Ok((srp.tree.tree().relabel(&inv), srp.prefs.relabeled(&inv)))
}

/// The bijection from prime parking functions on `n` vertices to pairs of a
/// permutation of `[n]` and a plane tree on `n` vertices with non-root
/// labels `[n-1]`.
pub fn psi(
    t: &RootedTree,
    p: &PreferenceSeq,
) -> Result<(Permutation, LabeledPlaneTree), BijectionError> {
    let (sigma, srp) = phi(t, p)?;
    Ok((sigma, alpha(&srp)))
}

pub fn psi_inverse(
    sigma: &Permutation,
    tree: &LabeledPlaneTree,
) -> Result<(RootedTree, PreferenceSeq), BijectionError> {
    if sigma.len() != tree.len() {
        return Err(BijectionError::SizeMismatch {
            perm: sigma.len(),
            tree: tree.len(),
        });
    }
    phi_inverse(sigma, &alpha_inverse(tree))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::tree::{enumerate_plane_trees, enumerate_rooted_trees, PlaneTree};

    fn tree(p: &[usize]) -> RootedTree {
        RootedTree::from_parents(p.to_vec()).unwrap()
    }

    fn seq(s: &[usize]) -> PreferenceSeq {
        PreferenceSeq::new(s.to_vec()).unwrap()
    }

    #[test]
    fn phi_of_the_standard_example() {
        // root 1; 4 -> 1; 3, 5 -> 4; 2 -> 3
        let t = tree(&[0, 3, 4, 1, 4]);
        let p = seq(&[2, 5, 3, 5, 2]);
        let ordered = induced_order(&t, &p).unwrap();
        assert_eq!(ordered.children(4), &[3, 5]);
        let (sigma, srp) = phi(&t, &p).unwrap();
        assert_eq!(sigma.as_slice(), &[5, 1, 2, 4, 3]);
        assert_eq!(srp.prefs().as_slice(), &[1, 3, 2, 3, 1]);
        assert_eq!(srp.tree().tree().parents(), &[2, 4, 4, 5, 0]);
        assert_eq!(phi_inverse(&sigma, &srp).unwrap(), (t, p));
    }

    #[test]
    fn phi_of_the_singleton() {
        let (sigma, srp) = phi(&RootedTree::singleton(), &seq(&[1])).unwrap();
        assert!(sigma.is_identity());
        assert_eq!(srp, Srp::singleton());
    }

    #[test]
    fn phi_rejects_non_prime_input() {
        assert_eq!(
            phi(&tree(&[3, 3, 5, 5, 0]), &seq(&[2, 2, 1, 4, 2])),
            Err(BijectionError::NotPrime)
        );
    }

    #[test]
    fn phi_round_trips_every_prime_pair_at_four() {
        let mut count = 0;
        let mut images = HashSet::new();
        for t in enumerate_rooted_trees(4) {
            for p in PreferenceSeq::all(4) {
                if !parking::is_prime(&t, &p).unwrap() {
                    continue;
                }
                count += 1;
                let (sigma, srp) = phi(&t, &p).unwrap();
                assert!(Srp::new(srp.tree().clone(), srp.prefs().clone()).is_ok());
                assert_eq!(phi_inverse(&sigma, &srp).unwrap(), (t.clone(), p.clone()));
                images.insert((sigma, srp));
            }
        }
        assert_eq!(count, 720);
        assert_eq!(images.len(), 720);
    }

    #[test]
    fn srp_validation() {
        // the running nine-vertex example: 8 has children 5 (left) and 7 (right)
        let t = tree(&[2, 3, 4, 5, 8, 7, 8, 9, 0]);
        let mut order = t.children();
        order[7] = vec![5, 7];
        let ordered = OrderedTree::new(t.clone(), order.clone()).unwrap();
        let p = seq(&[6, 4, 1, 3, 3, 1, 6, 7, 2]);
        assert!(Srp::new(ordered, p.clone()).is_ok());

        order[7] = vec![7, 5];
        let swapped = OrderedTree::new(t, order).unwrap();
        assert!(matches!(
            Srp::new(swapped, p),
            Err(BijectionError::NotSrp { .. })
        ));

        // prime but not labeled in post-order
        let ordered = OrderedTree::new(tree(&[0, 1]), vec![vec![2], vec![]]).unwrap();
        assert!(matches!(
            Srp::new(ordered, seq(&[2, 2])),
            Err(BijectionError::NotSrp { .. })
        ));

        // post-order but not prime
        let path = OrderedTree::post_order_labeled(&PlaneTree::path(2));
        assert!(matches!(
            Srp::new(path, seq(&[1, 2])),
            Err(BijectionError::NotSrp { .. })
        ));
    }

    #[test]
    fn srp_counts_by_direct_enumeration() {
        // (n-1)! C_{n-1}
        for (n, expected) in [(1, 1), (2, 1), (3, 4), (4, 30), (5, 336)] {
            let mut count = 0;
            for shape in enumerate_plane_trees(n) {
                let tree = OrderedTree::post_order_labeled(&shape);
                count += PreferenceSeq::all(n)
                    .filter(|p| Srp::new(tree.clone(), p.clone()).is_ok())
                    .count();
            }
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn psi_small_cases() {
        let (sigma, tree) = psi(&RootedTree::singleton(), &seq(&[1])).unwrap();
        assert!(sigma.is_identity());
        assert_eq!(tree, LabeledPlaneTree::singleton());

        let mut images = HashSet::new();
        for t in enumerate_rooted_trees(2) {
            for p in PreferenceSeq::all(2) {
                if parking::is_prime(&t, &p).unwrap() {
                    let image = psi(&t, &p).unwrap();
                    assert_eq!(image.1.to_string(), "*[1]");
                    assert_eq!(
                        psi_inverse(&image.0, &image.1).unwrap(),
                        (t.clone(), p.clone())
                    );
                    images.insert(image);
                }
            }
        }
        assert_eq!(images.len(), 2);
    }

    #[test]
    fn psi_inverse_checks_sizes() {
        let sigma = Permutation::identity(3);
        assert_eq!(
            psi_inverse(&sigma, &LabeledPlaneTree::singleton()),
            Err(BijectionError::SizeMismatch { perm: 3, tree: 1 })
        );
    }
}
