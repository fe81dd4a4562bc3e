//! Permutations, paths and the Borie map on 132-avoiding permutations.

use crate::parking::PreferenceSeq;
use crate::tree::Permutation;

use super::BijectionError;

/// Whether no `i < j < k` has `s_i < s_k < s_j`. Quadratic: for each middle
/// position, compare against the smallest entry to its left.
pub fn is_132_avoiding(sigma: &Permutation) -> bool {
    let s = sigma.as_slice();
    let mut least = usize::MAX;
    for j in 0..s.len() {
        if least < s[j] && s[j + 1..].iter().any(|&c| least < c && c < s[j]) {
            return false;
        }
        least = least.min(s[j]);
    }
    true
}

/// Cubic reference scan over all triples.
pub fn is_132_avoiding_brute(sigma: &Permutation) -> bool {
    let s = sigma.as_slice();
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if s[i] < s[k] && s[k] < s[j] {
                    return false;
                }
            }
        }
    }
    true
}

/// The 132-avoiding permutations of `[n]`, lexicographically.
pub fn avoiders_132(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(is_132_avoiding).collect()
}

/// Number of positions `i` with at least `m` larger entries before them.
pub fn mmp(sigma: &Permutation, m: usize) -> usize {
    let s = sigma.as_slice();
    (0..s.len())
        .filter(|&i| s[..i].iter().filter(|&&a| a > s[i]).count() >= m)
        .count()
}

/// `(mmp(sigma, n) + 1, ..., mmp(sigma, 1) + 1)` for a 132-avoiding `sigma`.
pub fn borie_map(sigma: &Permutation) -> Result<PreferenceSeq, BijectionError> {
    if !is_132_avoiding(sigma) {
        return Err(BijectionError::Not132Avoiding {
            perm: sigma.clone(),
        });
    }
    let n = sigma.len();
    Ok(PreferenceSeq::new_unchecked(
        (1..=n).rev().map(|m| mmp(sigma, m) + 1).collect(),
    ))
}

/// The preference sequence on the path with `n + 1` vertices that the
/// inverse bijection assigns to the labeled path reading `sigma` from the
/// root down: `s_1 = 1` and, for `i >= 2`, `s_i - 1` counts the entries
/// after position `n + 2 - i` that are smaller than it.
pub fn path_preimage_seq(sigma: &Permutation) -> PreferenceSeq {
    let s = sigma.as_slice();
    let n = s.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(1);
    for i in 2..=n + 1 {
        let at = n + 2 - i - 1;
        out.push(s[at + 1..].iter().filter(|&&c| c < s[at]).count() + 1);
    }
    PreferenceSeq::new_unchecked(out)
}

/// All sequences of length `n + 1` with `s_1 = 1` and `s_i <= i - 1`
/// otherwise; `n!` of them.
pub fn growth_sequences(n: usize) -> impl Iterator<Item = PreferenceSeq> {
    use itertools::Itertools;
    std::iter::once(1..=1)
        .chain((2..=n + 1).map(|i| 1..=i - 1))
        .multi_cartesian_product()
        .map(PreferenceSeq::new_unchecked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::alpha_inverse;
    use crate::tree::LabeledPlaneTree;

    fn perm(s: &[usize]) -> Permutation {
        Permutation::new(s.to_vec()).unwrap()
    }

    #[test]
    fn avoidance_matches_the_cubic_scan() {
        for n in 0..=7 {
            for sigma in Permutation::all(n) {
                assert_eq!(
                    is_132_avoiding(&sigma),
                    is_132_avoiding_brute(&sigma),
                    "{sigma}"
                );
            }
        }
        assert!(!is_132_avoiding(&perm(&[1, 3, 2])));
        assert!(is_132_avoiding(&perm(&[2, 3, 1])));
    }

    #[test]
    fn avoiders_are_counted_by_catalan_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| avoiders_132(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn borie_small_values() {
        assert_eq!(borie_map(&perm(&[1, 2])).unwrap().as_slice(), &[1, 1]);
        assert_eq!(borie_map(&perm(&[2, 1])).unwrap().as_slice(), &[1, 2]);
        assert_eq!(borie_map(&Permutation::identity(0)).unwrap().len(), 0);
        assert_eq!(
            borie_map(&perm(&[1, 3, 2])),
            Err(BijectionError::Not132Avoiding {
                perm: perm(&[1, 3, 2])
            })
        );
    }

    #[test]
    fn path_preimage_small_values() {
        assert_eq!(path_preimage_seq(&perm(&[1, 2])).as_slice(), &[1, 1, 1]);
        assert_eq!(path_preimage_seq(&perm(&[2, 1])).as_slice(), &[1, 1, 2]);
        assert_eq!(
            path_preimage_seq(&Permutation::identity(0)).as_slice(),
            &[1]
        );
    }

    #[test]
    fn path_preimage_matches_the_inverse_bijection() {
        for n in 0..=6 {
            for sigma in Permutation::all(n) {
                let srp = alpha_inverse(&LabeledPlaneTree::path(&sigma));
                assert!(srp
                    .tree()
                    .tree()
                    .parents()
                    .iter()
                    .enumerate()
                    .all(|(v, &p)| p == if v == n { 0 } else { v + 2 }));
                assert_eq!(srp.prefs(), &path_preimage_seq(&sigma), "{sigma}");
            }
        }
    }

    #[test]
    fn borie_is_the_tail_of_the_path_preimage() {
        for n in 0..=6 {
            for sigma in avoiders_132(n) {
                let full = path_preimage_seq(&sigma);
                assert_eq!(
                    borie_map(&sigma).unwrap().as_slice(),
                    &full.as_slice()[1..],
                    "{sigma}"
                );
            }
        }
    }

    #[test]
    fn growth_sequence_counts() {
        assert_eq!(growth_sequences(0).count(), 1);
        assert_eq!(growth_sequences(4).count(), 24);
        assert!(growth_sequences(3).all(|s| s.as_slice()[0] == 1
            && s.as_slice()
                .iter()
                .enumerate()
                .skip(1)
                .all(|(i, &v)| v <= i)));
    }
}
