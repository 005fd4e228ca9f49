mod common;

use common::*;
use proptest::prelude::*;
use tightclosure_core::closure::ClosureConfig;
use tightclosure_core::lc::{a_invariant, degree_one_parameters, lc_fraction, lc_frobenius, lc_zero_test, zero_star_test};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degrees_and_expansion(p in prop::sample::select(vec![2u64, 5]), t in 1u64..=2, z in (0u32..=4).prop_flat_map(|d| homogeneous(3, d, 3, 2))) {
        let r = fermat(p);
        let xs = degree_one_parameters(&r, &[mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0])]).unwrap();
        let z = poly(r.poly_ring(), &z);
        prop_assume!(!r.reduce(&z).is_zero());
        let eta = lc_fraction(&xs, &z, t).unwrap();
        prop_assert_eq!(eta.degree(), z.degree().unwrap() as i64 - 2 * t as i64);
        let fr = lc_frobenius(&eta, 1).unwrap();
        prop_assert_eq!(fr.degree(), eta.degree() * p as i64);
        prop_assert_eq!(fr.t(), t * p);
        prop_assert_eq!(fr.numerator(), &r.reduce(&z.frobenius_power(1).unwrap()));
        let ex = eta.expand().unwrap();
        prop_assert_eq!(ex.degree(), eta.degree());
        let a = lc_zero_test(&eta, 3).unwrap();
        let b = lc_zero_test(&ex, 3).unwrap();
        prop_assert_eq!(a.status.is_zero(), b.status.is_zero());
        // Frobenius of a zero class is zero
        if a.status.is_zero() {
            prop_assert!(lc_zero_test(&fr, 3).unwrap().status.is_zero());
        }
        // nothing above the a-invariant survives
        if eta.degree() > a_invariant(&r).unwrap() {
            prop_assert!(a.status.is_zero());
        }
    }

    #[test]
    fn regular_ring_has_no_nonzero_star_classes(z in (0u32..=3).prop_flat_map(|d| homogeneous(2, d, 2, 3)), t in 1u64..=2) {
        let r = polyring(3, &["x", "y"]);
        let xs = degree_one_parameters(&r, &[mono(&r, &[1, 0]), mono(&r, &[0, 1])]).unwrap();
        let eta = lc_fraction(&xs, &poly(r.poly_ring(), &z), t).unwrap();
        let cfg = ClosureConfig { e_max: 2, ..ClosureConfig::default() };
        let star = zero_star_test(&eta, &cfg).unwrap();
        let zero = lc_zero_test(&eta, 2).unwrap();
        prop_assert_eq!(star.status.is_in(), zero.status.is_zero());
    }
}

#[test]
fn a_invariants_of_examples() {
    assert_eq!(a_invariant(&fermat(5)).unwrap(), 0);
    assert_eq!(a_invariant(&polyring(5, &["x", "y"])).unwrap(), -2);
    assert!(a_invariant(&semigroup(2)).is_err());
}
