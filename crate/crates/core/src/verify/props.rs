use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Check, SuiteReport, VerifyError, PROPS_LIMITS};
use crate::bijection::psi_inverse;
use crate::parking::{
    park, parks_by_criterion, prime_by_criterion, used_edges_by_criterion, Edge, PreferenceSeq,
};
use crate::tree::{
    rooted_tree_at, rooted_tree_count, rooted_tree_from_prufer, LabeledPlaneTree, Permutation,
    PlaneTree, RootedTree,
};

const NAMES: [&str; 5] = [
    "parking criterion agrees with simulation",
    "used-edge criterion agrees with simulation",
    "prime iff every edge is used",
    "final driver of a prime parks at the root",
    "status and used edges invariant under reordering drivers",
];

struct Checks([Check; 5]);

impl Checks {
    fn new() -> Self {
        Checks(NAMES.map(Check::new))
    }

    fn merge(&mut self, later: Checks) {
        for (a, b) in self.0.iter_mut().zip(later.0) {
            a.merge(b);
        }
    }

    fn into_report(self, suite: &'static str, n: usize, start: Instant) -> SuiteReport {
        SuiteReport {
            suite,
            n,
            checks: self.0.into(),
            elapsed: start.elapsed(),
        }
    }
}

/// Simulated parking status and the set of used edges.
fn simulated(t: &RootedTree, s: &PreferenceSeq) -> (bool, BTreeSet<Edge>) {
    let outcome = park(t, s).expect("sizes agree");
    (
        outcome.all_parked(),
        outcome.used_edges().into_iter().collect(),
    )
}

fn check_instance(
    t: &RootedTree,
    s: &PreferenceSeq,
    reorderings: impl Iterator<Item = Permutation>,
    c: &mut Checks,
) {
    let n = t.len();
    let case = || format!("tree {t} seq {s}");
    let outcome = park(t, s).expect("sizes agree");
    let parks = outcome.all_parked();
    let used = outcome.used_edges();
    c.0[0].record(parks_by_criterion(t, s).unwrap() == parks, case);

    if parks {
        let mut sorted = used.clone();
        sorted.sort_unstable();
        c.0[1].record(used_edges_by_criterion(t, s).unwrap() == sorted, case);
    }

    let prime = prime_by_criterion(t, s).unwrap();
    c.0[2].record(prime == (parks && used.len() == n - 1), case);

    if prime {
        c.0[3].record(outcome.spots()[n - 1] == Some(t.root()), case);
    }

    let base: BTreeSet<Edge> = used.into_iter().collect();
    let mut ok = true;
    let mut witness = None;
    for sigma in reorderings {
        let reordered = s.permuted(&sigma);
        let (p, e) = simulated(t, &reordered);
        if p != parks || (parks && e != base) {
            ok = false;
            witness = Some(reordered);
            break;
        }
    }
    c.0[4].record(ok, || {
        format!("tree {t} seq {s} vs reordered {}", witness.unwrap())
    });
}

/// Every property on every tree and sequence of size `n`, with every
/// reordering of the drivers.
pub fn props_exhaustive(n: usize, allow_large: bool) -> Result<SuiteReport, VerifyError> {
    PROPS_LIMITS.check("props", n, allow_large)?;
    let start = Instant::now();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let parts: Vec<Checks> = (0..rooted_tree_count(n))
        .into_par_iter()
        .map(|index| {
            let t = rooted_tree_at(n, index);
            let mut c = Checks::new();
            for s in PreferenceSeq::all(n) {
                check_instance(&t, &s, perms.iter().cloned(), &mut c);
            }
            c
        })
        .collect();
    let mut all = Checks::new();
    for c in parts {
        all.merge(c);
    }
    Ok(all.into_report("props", n, start))
}

/// A uniformly random rooted labeled tree on `n` vertices: a uniform Prüfer
/// word and a uniform root.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> RootedTree {
    let word: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(1..=n))
        .collect();
    rooted_tree_from_prufer(n, &word, rng.gen_range(1..=n))
}

/// A uniformly random permutation of `[n]`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut word: Vec<usize> = (1..=n).collect();
    word.shuffle(rng);
    Permutation::new(word).expect("a shuffle is a permutation")
}

/// A random plane tree on `n` nodes (grown by attaching each new node at a
/// random position under a random earlier node) with random labels. Not
/// uniform over shapes.
pub fn random_labeled_plane_tree<R: Rng>(n: usize, rng: &mut R) -> LabeledPlaneTree {
    let mut arena: Vec<Vec<usize>> = vec![Vec::new(); n];
    for node in 1..n {
        let parent = rng.gen_range(0..node);
        let at = rng.gen_range(0..=arena[parent].len());
        arena[parent].insert(at, node);
    }
    let (shape, _) = PlaneTree::from_arena(&arena, 0);
    LabeledPlaneTree::new(shape, random_permutation(n - 1, rng).as_slice().to_vec())
        .expect("labels are a permutation")
}

/// Settings for the random property suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomProps {
    pub n: usize,
    pub instances: usize,
    pub seed: u64,
}

impl RandomProps {
    pub fn new(n: usize, instances: usize, seed: u64) -> Self {
        RandomProps { n, instances, seed }
    }
}

/// Every property on seeded random instances. Half are a uniform tree with a
/// uniform sequence; the other half are primes built by the inverse
/// bijection from a random permutation and labeled plane tree, so the
/// prime-only properties get exercised. Each instance is also checked
/// against one random reordering of its drivers.
pub fn props_random(settings: RandomProps) -> SuiteReport {
    let RandomProps { n, instances, seed } = settings;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::new();
    for i in 0..instances {
        let (t, s) = if i % 2 == 0 {
            let t = random_tree(n, &mut rng);
            let s = PreferenceSeq::new((0..n).map(|_| rng.gen_range(1..=n)).collect())
                .expect("entries in range");
            (t, s)
        } else {
            let sigma = random_permutation(n, &mut rng);
            let tree = random_labeled_plane_tree(n, &mut rng);
            psi_inverse(&sigma, &tree).expect("sizes agree")
        };
        let sigma = random_permutation(n, &mut rng);
        check_instance(&t, &s, std::iter::once(sigma), &mut c);
    }
    c.into_report("props-random", n, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        for n in 1..=3 {
            let r = props_exhaustive(n, false).unwrap();
            assert!(r.passed(), "{}", r.lines());
        }
    }

    #[test]
    fn random_instances_hit_every_property() {
        let r = props_random(RandomProps::new(7, 400, 11));
        assert!(r.passed(), "{}", r.lines());
        assert!(r.checks.iter().all(|c| c.cases > 0));
    }

    #[test]
    fn seeded_runs_repeat() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(random_tree(8, &mut a), random_tree(8, &mut b));
        assert_eq!(
            random_labeled_plane_tree(8, &mut a),
            random_labeled_plane_tree(8, &mut b)
        );
    }
}
