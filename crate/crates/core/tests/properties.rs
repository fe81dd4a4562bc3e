use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treepark::bijection::{alpha, alpha_inverse, phi, phi_inverse, psi, psi_inverse, Srp};
use treepark::parking::{is_prime, park, PreferenceSeq};
use treepark::series::Series;
use treepark::verify::{random_labeled_plane_tree, random_permutation, random_tree};
use treepark::{BigInt, BigRational, ExactSeries};

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_series(order: usize) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec((-20i64..=20, 1i64..=6), order).prop_map(move |terms| {
        let mut coeffs = vec![rational(0, 1)];
        coeffs.extend(terms.into_iter().map(|(n, d)| rational(n, d)));
        Series::new(coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_inverts_exp(f in small_series(7)) {
        prop_assert_eq!(f.exp().unwrap().ln().unwrap(), f);
    }

    #[test]
    fn derivative_inverts_integral(f in small_series(7)) {
        prop_assert_eq!(f.integral().derivative().unwrap(), f);
    }

    #[test]
    fn exp_turns_sums_into_products(f in small_series(6), g in small_series(6)) {
        let lhs = (&f + &g).exp().unwrap();
        let rhs = f.exp().unwrap() * g.exp().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alpha_inverts_on_larger_plane_trees(n in 1usize..=14, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_labeled_plane_tree(n, &mut rng);
        let x = alpha_inverse(&tree);
        prop_assert!(Srp::check(x.tree(), x.prefs()).is_ok());
        prop_assert_eq!(alpha(&x), tree);
    }

    #[test]
    fn psi_round_trips_on_larger_primes(n in 1usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_permutation(n, &mut rng);
        let tree = random_labeled_plane_tree(n, &mut rng);
        let (t, p) = psi_inverse(&sigma, &tree).unwrap();
        prop_assert!(is_prime(&t, &p).unwrap());
        let (sigma2, srp) = phi(&t, &p).unwrap();
        prop_assert_eq!(phi_inverse(&sigma2, &srp).unwrap(), (t.clone(), p.clone()));
        prop_assert_eq!(psi(&t, &p).unwrap(), (sigma, tree));
    }

    #[test]
    fn drivers_park_on_distinct_vertices(n in 1usize..=30, seed in any::<u64>(), prefs in prop::collection::vec(any::<prop::sample::Index>(), 30)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(n, &mut rng);
        let s = PreferenceSeq::new(prefs[..n].iter().map(|i| i.index(n) + 1).collect()).unwrap();
        let outcome = park(&t, &s).unwrap();
        let mut spots: Vec<usize> = outcome.spots().iter().flatten().copied().collect();
        let parked = spots.len();
        spots.sort_unstable();
        spots.dedup();
        prop_assert_eq!(spots.len(), parked);
    }
}
