//! The parking procedure on rooted trees.
//!
//! Driver `i` tries the preferred vertex `s_i` and, if it is taken, walks
//! towards the root and parks at the first free vertex; if none is free the
//! driver leaves. A sequence is a parking function on `T` when everybody parks.
//! Whether a sequence parks, whether it is prime, and which edges it uses
//! can all be read off the subtree counts `|{i : s_i ∈ T_v}|`; this module
//! computes both the simulated and the counted answers and checks that they
//! agree.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::tree::{ParseError, Permutation, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParkingError {
    #[error("tree has {tree} vertices but the sequence has {seq} entries")]
    LengthMismatch { tree: usize, seq: usize },
    #[error("entry {index} of the sequence is {value}, outside 1..={n}")]
    EntryOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("the sequence is not a parking function on this tree")]
    NotAParkingFunction,
}

/// A sequence of preferred spots `(s_1, ..., s_n)` with entries in `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceSeq(Vec<usize>);

impl PreferenceSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self, ParkingError> {
        let n = entries.len();
        if let Some((i, &value)) = entries.iter().find_position(|&&x| x == 0 || x > n) {
            return Err(ParkingError::EntryOutOfRange {
                index: i + 1,
                value,
                n,
            });
        }
        Ok(PreferenceSeq(entries))
    }

    pub(crate) fn new_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(PreferenceSeq::new(entries.clone()).is_ok());
        PreferenceSeq(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Reorders the drivers: `(s_{σ(1)}, ..., s_{σ(n)})`.
    pub fn permuted(&self, sigma: &Permutation) -> PreferenceSeq {
        assert_eq!(sigma.len(), self.len());
        PreferenceSeq(
            (1..=self.len())
                .map(|i| self.0[sigma.apply(i) - 1])
                .collect(),
        )
    }

    /// Renames the preferred vertices: `(σ(s_1), ..., σ(s_n))`.
    pub fn relabeled(&self, sigma: &Permutation) -> PreferenceSeq {
        assert_eq!(sigma.len(), self.len());
        PreferenceSeq(self.0.iter().map(|&v| sigma.apply(v)).collect())
    }

    /// All `n^n` sequences in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = PreferenceSeq> {
        (0..n)
            .map(|_| 1..=n)
            .multi_cartesian_product()
            .map(PreferenceSeq)
    }

    /// All weakly increasing sequences, `binom(2n - 1, n)` of them.
    pub fn weakly_increasing(n: usize) -> impl Iterator<Item = PreferenceSeq> {
        (1..=n).combinations_with_replacement(n).map(PreferenceSeq)
    }

    fn check_against(&self, t: &RootedTree) -> Result<(), ParkingError> {
        if self.len() != t.len() {
            return Err(ParkingError::LengthMismatch {
                tree: t.len(),
                seq: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PreferenceSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

impl FromStr for PreferenceSeq {
    type Err = SeqParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = crate::tree::parse_integers(s)?;
        Ok(PreferenceSeq::new(entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] ParkingError),
}

/// The edge `child -> parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub child: usize,
    pub parent: usize,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.child, self.parent)
    }
}

/// The first time an edge is crossed: by `driver` (1-based) on the `step`-th
/// edge of the driver's walk. Crossings are totally ordered by `(driver, step)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: Edge,
    pub driver: usize,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParkingOutcome {
    spot_of_driver: Vec<Option<usize>>,
    first_crossings: Vec<Crossing>,
}

impl ParkingOutcome {
    /// Where each driver parked; `None` means the driver left the tree.
    pub fn spots(&self) -> &[Option<usize>] {
        &self.spot_of_driver
    }

    pub fn all_parked(&self) -> bool {
        self.spot_of_driver.iter().all(Option::is_some)
    }

    /// Edges in the order they were first crossed.
    pub fn first_crossings(&self) -> &[Crossing] {
        &self.first_crossings
    }

    pub fn used_edges(&self) -> Vec<Edge> {
        self.first_crossings.iter().map(|c| c.edge).collect()
    }

    /// For each vertex `v`, the position of its parent edge in the
    /// first-crossing order, or `None` if never crossed.
    pub fn crossing_rank(&self, n: usize) -> Vec<Option<usize>> {
        let mut rank = vec![None; n];
        for (i, c) in self.first_crossings.iter().enumerate() {
            rank[c.edge.child - 1] = Some(i);
        }
        rank
    }
}

/// Runs the parking procedure for all drivers.
pub fn park(t: &RootedTree, s: &PreferenceSeq) -> Result<ParkingOutcome, ParkingError> {
    s.check_against(t)?;
    Ok(simulate(t, s.as_slice()))
}

/// Runs the parking procedure for the first `drivers` drivers only.
pub fn park_first(
    t: &RootedTree,
    s: &PreferenceSeq,
    drivers: usize,
) -> Result<ParkingOutcome, ParkingError> {
    s.check_against(t)?;
    Ok(simulate(t, &s.as_slice()[..drivers.min(s.len())]))
}

/// Near-linear simulation: one jump table finds the nearest free vertex at
/// or above a start, another skips edges that have already been crossed.
pub(crate) fn simulate(t: &RootedTree, prefs: &[usize]) -> ParkingOutcome {
    let n = t.len();
    let parent = |v: usize| t.parent(v).unwrap_or(0);
    let mut depth = vec![0usize; n + 1];
    for &v in t.bottom_up_order().iter().rev() {
        if let Some(p) = t.parent(v) {
            depth[v] = depth[p] + 1;
        }
    }
    // index 0 stands for "off the tree"
    let mut free: Vec<usize> = (0..=n).collect();
    let mut fresh: Vec<usize> = (0..=n).collect();
    fresh[t.root()] = 0;
    let mut spot_of_driver = Vec::with_capacity(prefs.len());
    let mut first_crossings = Vec::new();
    for (i, &start) in prefs.iter().enumerate() {
        let spot = find(&mut free, start);
        if spot != 0 {
            free[spot] = parent(spot);
        }
        let mut v = find(&mut fresh, start);
        while v != 0 && (spot == 0 || depth[v] > depth[spot]) {
            let p = parent(v);
            let step = depth[start] - depth[v] + 1;
            first_crossings.push(Crossing {
                edge: Edge {
                    child: v,
                    parent: p,
                },
                driver: i + 1,
                step,
            });
            fresh[v] = p;
            v = find(&mut fresh, p);
        }
        spot_of_driver.push((spot != 0).then_some(spot));
    }
    ParkingOutcome {
        spot_of_driver,
        first_crossings,
    }
}

fn find(up: &mut [usize], mut v: usize) -> usize {
    while up[v] != v {
        up[v] = up[up[v]];
        v = up[v];
    }
    v
}

/// `|{i : s_i ∈ T_v}|` for every vertex, indexed by `v - 1`.
pub fn preference_totals(t: &RootedTree, s: &PreferenceSeq) -> Result<Vec<usize>, ParkingError> {
    s.check_against(t)?;
    let mut total = vec![0usize; t.len()];
    for &v in s.as_slice() {
        total[v - 1] += 1;
    }
    for v in t.bottom_up_order() {
        if let Some(p) = t.parent(v) {
            total[p - 1] += total[v - 1];
        }
    }
    Ok(total)
}

/// Whether every driver parks, decided by `|T_v| <= |{i : s_i ∈ T_v}|` for
/// all `v` and confirmed by simulation.
pub fn is_parking_function(t: &RootedTree, s: &PreferenceSeq) -> Result<bool, ParkingError> {
    let by_counts = parks_by_criterion(t, s)?;
    let by_simulation = simulate(t, s.as_slice()).all_parked();
    assert_eq!(
        by_counts, by_simulation,
        "subtree criterion and simulation disagree on {t} / {s}"
    );
    Ok(by_counts)
}

/// The subtree-count test alone: `|T_v| <= |{i : s_i ∈ T_v}|` for all `v`.
pub fn parks_by_criterion(t: &RootedTree, s: &PreferenceSeq) -> Result<bool, ParkingError> {
    let total = preference_totals(t, s)?;
    Ok(t.subtree_sizes()
        .iter()
        .zip(&total)
        .all(|(size, count)| size <= count))
}

/// Edges used by a parking function, in first-crossing order.
///
/// The set is checked against the count criterion: `(u, parent(u))` is used
/// exactly when `|T_u| < |{i : s_i ∈ T_u}|`.
pub fn used_edges(t: &RootedTree, s: &PreferenceSeq) -> Result<Vec<Edge>, ParkingError> {
    let outcome = park(t, s)?;
    if !outcome.all_parked() {
        return Err(ParkingError::NotAParkingFunction);
    }
    let used = outcome.used_edges();
    let mut simulated = used.clone();
    simulated.sort_unstable();
    assert_eq!(
        simulated,
        used_edges_by_criterion(t, s)?,
        "used-edge criterion and simulation disagree on {t} / {s}"
    );
    Ok(used)
}

/// The edges `(u, parent(u))` with `|T_u| < |{i : s_i ∈ T_u}|`, sorted.
/// Meaningful for parking functions only.
pub fn used_edges_by_criterion(
    t: &RootedTree,
    s: &PreferenceSeq,
) -> Result<Vec<Edge>, ParkingError> {
    let total = preference_totals(t, s)?;
    let sizes = t.subtree_sizes();
    Ok((1..=t.len())
        .filter_map(|u| {
            t.parent(u).map(|p| Edge {
                child: u,
                parent: p,
            })
        })
        .filter(|e| sizes[e.child - 1] < total[e.child - 1])
        .collect())
}

/// Whether `(T, s)` is a prime parking function: every non-root subtree
/// receives strictly more preferences than it has vertices. Also evaluated
/// as "parks and uses every edge"; the two must agree.
pub fn is_prime(t: &RootedTree, s: &PreferenceSeq) -> Result<bool, ParkingError> {
    let by_counts = prime_by_criterion(t, s)?;
    let outcome = simulate(t, s.as_slice());
    let by_edges = outcome.all_parked() && outcome.first_crossings().len() == t.len() - 1;
    assert_eq!(
        by_counts, by_edges,
        "prime criterion and used-edge test disagree on {t} / {s}"
    );
    Ok(by_counts)
}

/// The strict subtree-count test alone.
pub fn prime_by_criterion(t: &RootedTree, s: &PreferenceSeq) -> Result<bool, ParkingError> {
    let total = preference_totals(t, s)?;
    let sizes = t.subtree_sizes();
    Ok((1..=t.len()).all(|v| {
        if v == t.root() {
            sizes[v - 1] <= total[v - 1]
        } else {
            sizes[v - 1] < total[v - 1]
        }
    }))
}

/// A weakly increasing parking function.
pub fn is_parking_distribution(t: &RootedTree, s: &PreferenceSeq) -> Result<bool, ParkingError> {
    s.check_against(t)?;
    Ok(s.is_weakly_increasing() && is_parking_function(t, s)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Fails,
    Parks,
    Prime,
}

/// Per-tree data for classifying many preference multisets quickly.
///
/// Works on 0-based vertex indices and driver counts per vertex, so the
/// caller can update counts incrementally while enumerating sequences.
#[derive(Clone, Debug)]
pub struct TreeProfile {
    order: Vec<usize>,
    parent: Vec<usize>,
    size: Vec<u32>,
    root: usize,
    leaves: usize,
}

impl TreeProfile {
    pub fn new(t: &RootedTree) -> Self {
        let order: Vec<usize> = t.bottom_up_order().into_iter().map(|v| v - 1).collect();
        let parent = t.parents().iter().map(|&p| p.wrapping_sub(1)).collect();
        let size = t.subtree_sizes().into_iter().map(|s| s as u32).collect();
        TreeProfile {
            order,
            parent,
            size,
            root: t.root() - 1,
            leaves: t.leaves().len(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    /// `counts[v]` drivers prefer vertex `v`; `scratch` must have length `n`.
    pub fn classify(&self, counts: &[u32], scratch: &mut [u32]) -> Verdict {
        scratch.copy_from_slice(counts);
        let mut prime = true;
        for &v in &self.order {
            let total = scratch[v];
            let size = self.size[v];
            if total < size {
                return Verdict::Fails;
            }
            if v != self.root {
                prime &= total > size;
                scratch[self.parent[v]] += total;
            }
        }
        if prime {
            Verdict::Prime
        } else {
            Verdict::Parks
        }
    }
}
