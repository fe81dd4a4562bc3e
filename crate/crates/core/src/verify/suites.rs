use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::{
    Check, SuiteReport, VerifyError, GROWTH_PATH_LIMITS, MMP_PATH_LIMITS, ROUNDTRIP_LIMITS,
};
use crate::bijection::{
    alpha, alpha_inverse, avoiders_132, borie_map, growth_sequences, psi, psi_inverse, Srp,
};
use crate::parking::{prime_by_criterion, PreferenceSeq};
use crate::tree::{
    enumerate_labeled_plane_trees, rooted_tree_at, rooted_tree_count, LabeledPlaneTree,
    OrderedTree, Permutation, PlaneTree,
};

/// Both round trips of the prime parking function bijection on `n`
/// vertices, plus injectivity of the forward map.
pub fn roundtrip_suite(n: usize, allow_large: bool) -> Result<SuiteReport, VerifyError> {
    ROUNDTRIP_LIMITS.check("roundtrip", n, allow_large)?;
    let start = Instant::now();

    let per_tree: Vec<(Check, Vec<(Permutation, LabeledPlaneTree)>)> = (0..rooted_tree_count(n))
        .into_par_iter()
        .map(|index| {
            let t = rooted_tree_at(n, index);
            let mut check = Check::new("psi-inverse undoes psi");
            let mut images = Vec::new();
            for p in PreferenceSeq::all(n) {
                if !prime_by_criterion(&t, &p).expect("sizes agree") {
                    continue;
                }
                match psi(&t, &p) {
                    Ok((sigma, tree)) => {
                        let back = psi_inverse(&sigma, &tree);
                        check.record(back.as_ref() == Ok(&(t.clone(), p.clone())), || {
                            format!("tree {t} seq {p} -> sigma {sigma} ptree {tree} -> {back:?}")
                        });
                        images.push((sigma, tree));
                    }
                    Err(e) => check.record(false, || format!("tree {t} seq {p}: {e}")),
                }
            }
            (check, images)
        })
        .collect();

    let mut forward = Check::new("psi-inverse undoes psi");
    let mut distinct = Check::new("psi image has no duplicates");
    let mut seen = HashSet::new();
    for (check, images) in per_tree {
        forward.merge(check);
        for (sigma, tree) in images {
            let dup = format!("sigma {sigma} ptree {tree}");
            distinct.record(seen.insert((sigma, tree)), || dup);
        }
    }

    let trees: Vec<LabeledPlaneTree> = enumerate_labeled_plane_trees(n).collect();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let backward = perms
        .par_iter()
        .map(|sigma| {
            let mut check = Check::new("psi undoes psi-inverse");
            for tree in &trees {
                let ok = match psi_inverse(sigma, tree) {
                    Ok((t, p)) => psi(&t, &p).as_ref() == Ok(&(sigma.clone(), tree.clone())),
                    Err(_) => false,
                };
                check.record(ok, || format!("sigma {sigma} ptree {tree}"));
            }
            check
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Check::new("psi undoes psi-inverse"), |mut acc, c| {
            acc.merge(c);
            acc
        });

    let mut sizes = Check::new("both sides have the same size");
    let (left, right) = (forward.cases, backward.cases);
    sizes.record(left == right, || {
        format!("{left} prime pairs but {right} permutation and tree pairs")
    });

    Ok(SuiteReport {
        suite: "roundtrip",
        n,
        checks: vec![forward, backward, distinct, sizes],
        elapsed: start.elapsed(),
    })
}

/// For every 132-avoiding permutation of `[n]`, the mmp-statistic map agrees
/// with the inverse bijection applied to the labeled path, leading 1 removed.
pub fn mmp_path_suite(n: usize, allow_large: bool) -> Result<SuiteReport, VerifyError> {
    MMP_PATH_LIMITS.check("mmp-path", n, allow_large)?;
    let start = Instant::now();
    let mut check = Check::new("borie map equals path preimage tail");
    for sigma in avoiders_132(n) {
        let lhs = borie_map(&sigma).expect("avoiders avoid");
        let full = alpha_inverse(&LabeledPlaneTree::path(&sigma));
        let prefs = full.prefs().as_slice();
        let ok = prefs.first() == Some(&1) && prefs[1..] == *lhs.as_slice();
        check.record(ok, || {
            format!("sigma {sigma}: borie {lhs}, preimage {}", full.prefs())
        });
    }
    Ok(SuiteReport {
        suite: "mmp-path",
        n,
        checks: vec![check],
        elapsed: start.elapsed(),
    })
}

/// The forward bijection maps the growth-condition sequences on the path
/// with `n + 1` vertices onto the `n!` labeled paths.
pub fn growth_path_suite(n: usize, allow_large: bool) -> Result<SuiteReport, VerifyError> {
    GROWTH_PATH_LIMITS.check("growth-path", n, allow_large)?;
    let start = Instant::now();
    let path = OrderedTree::post_order_labeled(&PlaneTree::path(n + 1));
    let mut valid = Check::new("growth sequences are restricted prime on the path");
    let mut onto_paths = Check::new("image is a labeled path");
    let mut injective = Check::new("image has no duplicates");
    let mut images = HashSet::new();
    for g in growth_sequences(n) {
        let srp = match Srp::new(path.clone(), g.clone()) {
            Ok(srp) => {
                valid.record(true, String::new);
                srp
            }
            Err(e) => {
                valid.record(false, || format!("seq {g}: {e}"));
                continue;
            }
        };
        let image = alpha(&srp);
        let word = image.path_word();
        onto_paths.record(word.is_some(), || format!("seq {g} -> {image}"));
        if let Some(word) = word {
            let shown = format!("seq {g} -> path {word}");
            injective.record(images.insert(word), || shown);
        }
    }
    let mut count = Check::new("every labeled path is hit");
    let missed = Permutation::all(n).find(|sigma| !images.contains(sigma));
    count.record(missed.is_none(), || {
        format!("path {} is missed", missed.unwrap())
    });
    Ok(SuiteReport {
        suite: "growth-path",
        n,
        checks: vec![valid, onto_paths, injective, count],
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_sizes() {
        for (n, pairs) in [(1, 1), (2, 2), (3, 24), (4, 720)] {
            let r = roundtrip_suite(n, false).unwrap();
            assert!(r.passed(), "{}", r.lines());
            assert_eq!(r.checks[0].cases, pairs);
            assert_eq!(r.checks[1].cases, pairs);
        }
        assert!(roundtrip_suite(5, false).is_err());
    }

    #[test]
    fn mmp_path_small() {
        for (n, c) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (6, 132)] {
            let r = mmp_path_suite(n, false).unwrap();
            assert!(r.passed(), "{}", r.lines());
            assert_eq!(r.checks[0].cases, c);
        }
    }

    #[test]
    fn growth_path_small() {
        for (n, f) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            let r = growth_path_suite(n, false).unwrap();
            assert!(r.passed(), "{}", r.lines());
            assert_eq!(r.checks[2].cases, f);
        }
    }

    #[test]
    fn failures_name_the_counterexample() {
        let mut c = Check::new("demo");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!(c.line(), "FAIL demo (3 cases): first counterexample first");
    }
}
