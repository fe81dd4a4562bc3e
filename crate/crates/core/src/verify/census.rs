use std::fmt::Write as _;
use std::ops::{Add, Range};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::{VerifyError, CENSUS_LIMITS};
use crate::bijection::Srp;
use crate::parking::{PreferenceSeq, TreeProfile, Verdict};
use crate::series::{closed_counts, factorial};
use crate::tree::{enumerate_plane_trees, rooted_tree_at, rooted_tree_count, OrderedTree};

/// Raw counts over a set of trees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    /// Parking functions.
    pub f: u64,
    /// Prime parking functions.
    pub p: u64,
    /// Parking distributions.
    pub ftilde: u64,
    /// Prime parking distributions.
    pub ptilde: u64,
    /// Prime parking distributions with a marked leaf.
    pub pstar: u64,
    /// Parking distributions with a marked leaf.
    pub fstar: u64,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            f: self.f + o.f,
            p: self.p + o.p,
            ftilde: self.ftilde + o.ftilde,
            ptilde: self.ptilde + o.ptilde,
            pstar: self.pstar + o.pstar,
            fstar: self.fstar + o.fstar,
        }
    }
}

/// Counts over the trees with indices in `range` of the canonical stream.
pub fn census_range(n: usize, range: Range<u64>) -> Tally {
    let multisets = distribution_counts(n);
    let mut tally = Tally::default();
    let mut counts = vec![0u32; n];
    let mut scratch = vec![0u32; n];
    let mut digits = vec![0usize; n];
    for index in range {
        let profile = TreeProfile::new(&rooted_tree_at(n, index));
        let leaves = profile.leaf_count() as u64;

        // every sequence in [n]^n, as an odometer over per-vertex counts
        digits.fill(0);
        counts.fill(0);
        counts[0] = n as u32;
        'sequences: loop {
            match profile.classify(&counts, &mut scratch) {
                Verdict::Fails => {}
                Verdict::Parks => tally.f += 1,
                Verdict::Prime => {
                    tally.f += 1;
                    tally.p += 1;
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'sequences;
                }
                i -= 1;
                counts[digits[i]] -= 1;
                digits[i] += 1;
                if digits[i] < n {
                    counts[digits[i]] += 1;
                    break;
                }
                digits[i] = 0;
                counts[0] += 1;
            }
        }

        for c in &multisets {
            match profile.classify(c, &mut scratch) {
                Verdict::Fails => {}
                Verdict::Parks => {
                    tally.ftilde += 1;
                    tally.fstar += leaves;
                }
                Verdict::Prime => {
                    tally.ftilde += 1;
                    tally.fstar += leaves;
                    tally.ptilde += 1;
                    tally.pstar += leaves;
                }
            }
        }
    }
    tally
}

/// Per-vertex counts of every weakly increasing sequence in `[n]^n`.
fn distribution_counts(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .combinations_with_replacement(n)
        .map(|seq| {
            let mut c = vec![0u32; n];
            for v in seq {
                c[v] += 1;
            }
            c
        })
        .collect()
}

/// Standardized restricted prime parking functions on `n` vertices, by
/// testing every sequence on every post-order labeled plane tree.
pub fn srp_count(n: usize) -> u64 {
    enumerate_plane_trees(n)
        .par_iter()
        .map(|shape| {
            let tree = OrderedTree::post_order_labeled(shape);
            PreferenceSeq::all(n)
                .filter(|p| Srp::check(&tree, p).is_ok())
                .count() as u64
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusColumn {
    pub name: &'static str,
    pub counted: u64,
    pub expected: BigInt,
}

impl CensusColumn {
    pub fn passed(&self) -> bool {
        BigInt::from(self.counted) == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub tally: Tally,
    pub srp: u64,
    pub columns: Vec<CensusColumn>,
    pub elapsed: Duration,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.columns.iter().all(CensusColumn::passed)
    }

    pub fn lines(&self) -> String {
        let mut out = String::new();
        for c in &self.columns {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "census n={}: {tag} {} counted {} expected {}",
                self.n, c.name, c.counted, c.expected
            );
        }
        out
    }
}

/// Full census for trees on `n` vertices. `n = 6` needs `allow_large`.
/// Trees are split into shards and counted in parallel; the totals do not
/// depend on the split.
pub fn census(n: usize, allow_large: bool) -> Result<CensusReport, VerifyError> {
    CENSUS_LIMITS.check("census", n, allow_large)?;
    let start = Instant::now();
    let total = rooted_tree_count(n);
    let shard = (total / 64).max(1);
    let tally = (0..total.div_ceil(shard))
        .into_par_iter()
        .map(|k| census_range(n, k * shard..((k + 1) * shard).min(total)))
        .reduce(Tally::default, Tally::add);
    let srp = srp_count(n);

    let row = closed_counts(n).rows.pop().expect("one row per n");
    let columns = vec![
        CensusColumn {
            name: "F",
            counted: tally.f,
            expected: row.f,
        },
        CensusColumn {
            name: "P",
            counted: tally.p,
            expected: row.p,
        },
        CensusColumn {
            name: "Ftilde",
            counted: tally.ftilde,
            expected: row.ftilde,
        },
        CensusColumn {
            name: "Ptilde",
            counted: tally.ptilde,
            expected: row.ptilde,
        },
        CensusColumn {
            name: "Pstar",
            counted: tally.pstar,
            expected: row.pstar,
        },
        CensusColumn {
            name: "Fstar",
            counted: tally.fstar,
            expected: row.fstar,
        },
        CensusColumn {
            name: "SRP",
            counted: srp,
            expected: factorial(n - 1) * row.catalan,
        },
    ];
    Ok(CensusReport {
        n,
        tally,
        srp,
        columns,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::{is_parking_function, is_prime};
    use crate::tree::enumerate_rooted_trees;

    #[test]
    fn small_censuses_match_the_oracle_table() {
        let expect = [
            (1, [1, 1, 1, 1, 1, 1], 1),
            (2, [6, 2, 4, 2, 2, 4], 1),
            (3, [132, 24, 39, 12, 12, 48], 4),
            (4, [6384, 720, 628, 132, 144, 936], 30),
        ];
        for (n, [f, p, ft, pt, ps, fs], srp) in expect {
            let r = census(n, false).unwrap();
            assert_eq!(
                r.tally,
                Tally {
                    f,
                    p,
                    ftilde: ft,
                    ptilde: pt,
                    pstar: ps,
                    fstar: fs
                },
                "n = {n}"
            );
            assert_eq!(r.srp, srp);
            assert!(r.passed(), "{}", r.lines());
        }
    }

    #[test]
    fn odometer_matches_direct_classification() {
        let n = 3;
        let mut f = 0;
        let mut p = 0;
        for t in enumerate_rooted_trees(n) {
            for s in PreferenceSeq::all(n) {
                f += is_parking_function(&t, &s).unwrap() as u64;
                p += is_prime(&t, &s).unwrap() as u64;
            }
        }
        let tally = census_range(n, 0..rooted_tree_count(n));
        assert_eq!((tally.f, tally.p), (f, p));
    }

    #[test]
    fn shards_sum_to_the_whole() {
        let n = 4;
        let whole = census_range(n, 0..64);
        let parts = [0..1, 1..17, 17..40, 40..64]
            .into_iter()
            .map(|r| census_range(n, r))
            .fold(Tally::default(), Tally::add);
        assert_eq!(whole, parts);
    }

    #[test]
    fn limits() {
        assert_eq!(
            census(6, false).unwrap_err(),
            VerifyError::LimitExceeded {
                suite: "census",
                n: 6,
                min: 1,
                max: 5
            }
        );
        assert!(census(0, true).is_err());
        assert!(census(7, true).is_err());
    }
}
