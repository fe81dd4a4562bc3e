//! Exhaustive censuses and suites that check the enumerative and bijective
//! results against brute force.
//!
//! Census counts always come from enumeration; closed forms appear only as
//! the expected column. Suites report one line per check and, on failure,
//! the first counterexample found.

mod census;
mod props;
mod suites;

pub use census::{census, census_range, srp_count, CensusColumn, CensusReport, Tally};
pub use props::{
    props_exhaustive, props_random, random_labeled_plane_tree, random_permutation, random_tree,
    RandomProps,
};
pub use suites::{growth_path_suite, mmp_path_suite, roundtrip_suite};

use std::fmt::Write as _;
use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{suite} is limited to n in {min}..={max} (n = {n}); larger runs need allow_large")]
    LimitExceeded {
        suite: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },
}

/// Size bounds for a suite: the default range and the extended maximum
/// available with `allow_large`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub min: usize,
    pub max: usize,
    pub large_max: usize,
}

impl Limits {
    pub(crate) fn check(
        &self,
        suite: &'static str,
        n: usize,
        allow_large: bool,
    ) -> Result<(), VerifyError> {
        let max = if allow_large {
            self.large_max
        } else {
            self.max
        };
        if n < self.min || n > max {
            return Err(VerifyError::LimitExceeded {
                suite,
                n,
                min: self.min,
                max,
            });
        }
        Ok(())
    }
}

pub const CENSUS_LIMITS: Limits = Limits {
    min: 1,
    max: 5,
    large_max: 6,
};
pub const ROUNDTRIP_LIMITS: Limits = Limits {
    min: 1,
    max: 4,
    large_max: 5,
};
pub const MMP_PATH_LIMITS: Limits = Limits {
    min: 0,
    max: 7,
    large_max: 9,
};
pub const GROWTH_PATH_LIMITS: Limits = Limits {
    min: 0,
    max: 5,
    large_max: 7,
};
pub const PROPS_LIMITS: Limits = Limits {
    min: 1,
    max: 4,
    large_max: 5,
};

/// The outcome of one property over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    /// The first counterexample, if any.
    pub failure: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Counts a case; keeps only the first failure.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    /// Appends the cases of `later`; an earlier failure takes precedence.
    pub fn merge(&mut self, later: Check) {
        self.cases += later.cases;
        if self.failure.is_none() {
            self.failure = later.failure;
        }
    }

    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({} cases)", self.name, self.cases),
            Some(c) => format!(
                "FAIL {} ({} cases): first counterexample {c}",
                self.name, self.cases
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub n: usize,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "{} n={}: {}", self.suite, self.n, c.line());
        }
        out
    }
}
