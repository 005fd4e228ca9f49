mod common;

use common::*;
use proptest::prelude::*;
use tightclosure_core::{Error, FpScalar, PolyRing, Polynomial, PrimeChar};

fn small_poly(n: usize, p: u64) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), 1..p as i64), 0..=4)
        .prop_map(|ts| ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 3).collect())
}

type Terms = Vec<(Vec<u32>, i64)>;

fn case() -> impl Strategy<Value = (u64, Terms, Terms, u32)> {
    prop::sample::select(vec![2u64, 3, 5])
        .prop_flat_map(|p| (Just(p), small_poly(3, p), small_poly(3, p), 0u32..=2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_is_repeated_multiplication((p, f, g, e) in case()) {
        let r = PolyRing::standard(PrimeChar::new(p).unwrap(), &["x", "y", "z"]);
        let f = poly(&r, &f);
        let g = poly(&r, &g);
        let q = p.pow(e);
        let mut naive = Polynomial::one(&r);
        for _ in 0..q {
            naive = &naive * &f;
        }
        let fr = f.frobenius_power(e).unwrap();
        prop_assert_eq!(&fr, &naive);
        prop_assert!(fr.is_canonical());
        let fg = (&f * &g).frobenius_power(e).unwrap();
        prop_assert_eq!(fg, &fr * &g.frobenius_power(e).unwrap());
    }

    #[test]
    fn arithmetic_stays_canonical((p, f, g, _e) in case()) {
        let r = PolyRing::standard(PrimeChar::new(p).unwrap(), &["x", "y", "z"]);
        let f = poly(&r, &f);
        let g = poly(&r, &g);
        for h in [&f + &g, &f - &g, &f * &g, -&f, f.pow(3).unwrap()] {
            prop_assert!(h.is_canonical());
        }
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&(&f + &g) * &g, &(&f * &g) + &(&g * &g));
    }

    #[test]
    fn scalar_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 2147483647]), a in 0i64..1_000_000, b in 0i64..1_000_000) {
        let ch = PrimeChar::new(p).unwrap();
        let (x, y) = (FpScalar::new(a, ch), FpScalar::new(b, ch));
        if !x.is_zero() {
            prop_assert_eq!(x.inv().unwrap().mul(x).unwrap().residue(), 1);
        }
        prop_assert_eq!(x.add(y).unwrap().sub(y).unwrap(), x);
        prop_assert_eq!(x.pow(p), x);
    }
}

#[test]
fn scalar_examples() {
    let f7 = PrimeChar::new(7).unwrap();
    let f5 = PrimeChar::new(5).unwrap();
    assert_eq!(FpScalar::new(3, f7).inv().unwrap().residue(), 5);
    assert_eq!(FpScalar::new(2, f5).pow(4).residue(), 1);
    assert_eq!(FpScalar::new(4, f5).add(FpScalar::new(3, f5)).unwrap().residue(), 2);
    assert_eq!(FpScalar::new(0, f5).inv().unwrap_err(), Error::DivisionByZero);
    assert!(matches!(FpScalar::new(1, f5).add(FpScalar::new(1, f7)), Err(Error::CharMismatch { .. })));
    assert!(PrimeChar::new(4).is_err());
}

#[test]
fn polynomial_examples() {
    let r5 = PolyRing::standard(PrimeChar::new(5).unwrap(), &["x", "y"]);
    let x = Polynomial::var(&r5, 0);
    let y = Polynomial::var(&r5, 1);
    assert_eq!((&(&x + &y) * &(&x - &y)).to_string(), "x^2-y^2");
    assert!((&x * &Polynomial::zero(&r5)).is_zero());
    let r2 = PolyRing::standard(PrimeChar::new(2).unwrap(), &["x", "y"]);
    let s = &Polynomial::var(&r2, 0) + &Polynomial::var(&r2, 1);
    assert_eq!(s.pow(2).unwrap().to_string(), "x^2+y^2");
    assert_eq!(s.frobenius_power(1).unwrap().to_string(), "x^2+y^2");
    let r3 = PolyRing::standard(PrimeChar::new(3).unwrap(), &["x", "y"]);
    let f = poly(&r3, &[(vec![1, 0], 1), (vec![0, 1], 2)]);
    assert_eq!(f.frobenius_power(1).unwrap(), f.pow(3).unwrap());
    let z = Polynomial::var(&PolyRing::standard(PrimeChar::new(5).unwrap(), &["z"]), 0);
    assert_eq!(z.frobenius_power(2).unwrap().to_string(), "z^25");
    assert!(matches!(z.frobenius_power(40), Err(Error::ExponentOverflow { .. })));
    let other = PolyRing::standard(PrimeChar::new(5).unwrap(), &["u", "v"]);
    assert_eq!(x.checked_add(&Polynomial::var(&other, 0)).unwrap_err(), Error::RingMismatch);
}
