use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use schar_core::{Cyclotomic, Rational, Sign};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn cyc(n: u64, terms: &[(i64, i64)]) -> Cyclotomic {
    Cyclotomic::canonicalize(terms.iter().map(|&(e, c)| (e, q(c, 1))), n).unwrap()
}

/// Floating evaluation of `sum q zeta_n^e`, independent of the canonical form.
fn eval(raw: &[(i64, Rational)], n: u64) -> (f64, f64) {
    raw.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
        let c = c.to_f64().unwrap();
        let t = 2.0 * PI * (*e as f64) / n as f64;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn eval_cyc(a: &Cyclotomic) -> (f64, f64) {
    let raw: Vec<(i64, Rational)> = a.terms().iter().map(|(e, c)| (i64::from(*e), c.clone())).collect();
    eval(&raw, u64::from(a.conductor()))
}

#[test]
fn seventh_root_period_and_its_conjugate() {
    let a = cyc(7, &[(1, 1), (2, 1), (4, 1)]);
    let b = cyc(7, &[(3, 1), (5, 1), (6, 1)]);
    assert_eq!(a.conjugate(), b);
    assert_eq!(&a + &b, Cyclotomic::from_int(-1));
    let (re, im) = eval_cyc(&a);
    assert!((re + 0.5).abs() < 1e-12 && (im - 7f64.sqrt() / 2.0).abs() < 1e-12);
    let t = (&a + &b).rational_tests();
    assert!(!t.is_zero && t.is_rational && t.is_real);
    assert_eq!(t.as_rational, Some(q(-1, 1)));
}

#[test]
fn fifth_root_signs() {
    let a = cyc(5, &[(1, 1), (4, 1)]);
    let b = cyc(5, &[(0, 1), (2, 1), (3, 1)]);
    assert_eq!(a.real_sign().unwrap(), Sign::Positive);
    assert_eq!(b.real_sign().unwrap(), Sign::Negative);
    assert!((eval_cyc(&a).0 - 2.0 * (2.0 * PI / 5.0).cos()).abs() < 1e-12);
    assert!((eval_cyc(&b).0 - (1.0 + 2.0 * (4.0 * PI / 5.0).cos())).abs() < 1e-12);
    assert!(cyc(5, &[(1, 1)]).real_sign().is_err());
}

#[test]
fn tiny_differences_still_get_a_sign() {
    // (1 + sqrt 5)/2 = 1.61803398874989484...
    let phi = cyc(5, &[(0, 1), (1, 1), (4, 1)]);
    let below = Cyclotomic::from_rational(Rational::new(BigInt::from(1618033988749894i64), BigInt::from(10i64).pow(15)));
    let above = Cyclotomic::from_rational(Rational::new(BigInt::from(1618033988749895i64), BigInt::from(10i64).pow(15)));
    assert_eq!((&phi - &below).real_sign().unwrap(), Sign::Positive);
    assert_eq!((&phi - &above).real_sign().unwrap(), Sign::Negative);
}

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21])
}

fn raw_terms(n: u64) -> impl Strategy<Value = Vec<(i64, Rational)>> {
    prop::collection::vec((0..n as i64, -6i64..=6, 1i64..=4).prop_map(|(e, a, b)| (e, q(a, b))), 0..6)
}

fn arb_raw() -> impl Strategy<Value = (u64, Vec<(i64, Rational)>)> {
    conductor().prop_flat_map(|n| (Just(n), raw_terms(n)))
}

fn arb() -> impl Strategy<Value = Cyclotomic> {
    arb_raw().prop_map(|(n, raw)| Cyclotomic::canonicalize(raw, n).unwrap())
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

proptest! {
    #[test]
    fn canonical_form_keeps_the_value((n, raw) in arb_raw()) {
        let a = Cyclotomic::canonicalize(raw.clone(), n).unwrap();
        prop_assert!(close(eval_cyc(&a), eval(&raw, n)));
    }

    #[test]
    fn canonicalize_is_idempotent(a in arb()) {
        let again = Cyclotomic::canonicalize(
            a.terms().iter().map(|(e, c)| (i64::from(*e), c.clone())),
            u64::from(a.conductor()),
        ).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn representation_does_not_matter((n, raw) in arb_raw(), k in 1u64..4) {
        let a = Cyclotomic::canonicalize(raw.clone(), n).unwrap();
        let lifted = raw.iter().map(|(e, c)| (e * k as i64, c.clone()));
        prop_assert_eq!(Cyclotomic::canonicalize(lifted, n * k).unwrap(), a);
    }

    #[test]
    fn self_difference_is_zero(a in arb()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn ring_laws(a in arb(), b in arb(), c in arb()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let (ar, ai) = eval_cyc(&a);
        let (br, bi) = eval_cyc(&b);
        prop_assert!(close(eval_cyc(&(&a * &b)), (ar * br - ai * bi, ar * bi + ai * br)));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in arb(), b in arb()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        let (re, im) = eval_cyc(&a);
        prop_assert!(close(eval_cyc(&a.conjugate()), (re, -im)));
    }

    #[test]
    fn inverse(a in arb()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
    }

    #[test]
    fn sign_matches_floating_value(a in arb()) {
        let r = &a + &a.conjugate();
        let s = r.real_sign().unwrap();
        let v = eval_cyc(&r).0;
        if v.abs() > 1e-9 {
            prop_assert_eq!(s, if v > 0.0 { Sign::Positive } else { Sign::Negative });
        }
        prop_assert_eq!(s == Sign::Zero, r.is_zero());
        prop_assert_eq!((-&r).real_sign().unwrap().as_i8(), -s.as_i8());
    }

    #[test]
    fn positives_are_closed(a in arb(), b in arb()) {
        let x = &a * &a.conjugate();
        let y = &b * &b.conjugate();
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert_eq!(x.real_sign().unwrap(), Sign::Positive);
        prop_assert_eq!((&x + &y).real_sign().unwrap(), Sign::Positive);
        prop_assert_eq!((&x * &y).real_sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn rational_signs_agree_with_comparison(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
        let (x, y) = (q(a, b), q(c, d));
        let diff = &Cyclotomic::from_rational(x.clone()) - &Cyclotomic::from_rational(y.clone());
        prop_assert_eq!(diff.real_sign().unwrap(), Sign::from_ordering(x.cmp(&y)));
    }

    #[test]
    fn floor_and_ceil_bracket_the_value(a in arb()) {
        let r = &a + &a.conjugate();
        let v = eval_cyc(&r).0;
        let f = r.real_floor().unwrap().to_f64().unwrap();
        let c = r.real_ceil().unwrap().to_f64().unwrap();
        prop_assert!(f <= v + 1e-9 && v <= c + 1e-9 && c - f <= 1.0);
        if r.is_rational() {
            prop_assert_eq!(r.as_rational().unwrap().is_integer(), f == c);
        }
    }

    #[test]
    fn galois_conjugates_are_automorphisms(a in arb(), b in arb(), k in prop::sample::select(vec![1i64, -1, 11, 13, 17, 19, 23, -29])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!(a.galois(k).is_zero(), a.is_zero());
    }
}

#[test]
fn zero_has_conductor_one() {
    let z = cyc(12, &[(0, 1), (4, 1), (8, 1)]);
    assert!(z.is_zero());
    assert_eq!(z.conductor(), 1);
    assert!(z.as_rational().unwrap().is_zero());
}
