use logjet::bounds::{decompose_degree, decomposition_holds, params_for, threshold, Mode};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_reconstructs_the_degree(n in 2u32..=6, offset in 0u64..1_000_000, smt in any::<bool>()) {
        let mode = if smt { Mode::Smt } else { Mode::Kobayashi };
        let m = threshold(n, mode).unwrap() + BigInt::from(offset);
        let d = decompose_degree(&m, n, mode).unwrap();
        let p = params_for(n).unwrap();
        prop_assert_eq!(&d.m, &m);
        prop_assert!(d.epsilon >= p.k && d.epsilon < p.k + p.delta);
        prop_assert_eq!(BigInt::from(d.epsilon) + (&d.r + BigInt::from(p.k)) * BigInt::from(p.delta), m);
        prop_assert!(decomposition_holds(&p, &d, mode));
    }

    #[test]
    fn parameters_follow_the_dimension(n in 2u32..=200) {
        let p = params_for(n).unwrap();
        prop_assert_eq!(p.k, n + 1);
        prop_assert_eq!(p.delta, n * n + 3 * n + 1);
        prop_assert_eq!(p.k_prime, p.k * (p.k + 1) / 2);
        prop_assert_eq!(p.big_n, p.k);
    }
}
