use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use mocktheta::dissect::{extract, huffing, interleave, Progression};
use mocktheta::{Dyadic, Elem, RingTag, Series};

const ORDER: usize = 24;

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..1000, ORDER)
}

fn unit_coeffs() -> impl Strategy<Value = Vec<i64>> {
    (prop::bool::ANY, prop::collection::vec(-50i64..50, ORDER - 1)).prop_map(|(neg, mut rest)| {
        rest.insert(0, if neg { -1 } else { 1 });
        rest
    })
}

fn zz(v: &[i64]) -> Series {
    Series::from_i64s(&RingTag::Integer, v).unwrap()
}

fn dyadic_series(v: &[(i64, u32)]) -> Series {
    let elems = v.iter().map(|&(n, e)| Elem::Dyadic(Dyadic::new(n, e))).collect();
    Series::make(&RingTag::Dyadic, elems).unwrap()
}

proptest! {
    #[test]
    fn integer_ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (zz(&a), zz(&b), zz(&c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Series::one(&RingTag::Integer, ORDER), a.clone());
    }

    #[test]
    fn modular_ring_axioms(a in coeffs(), b in coeffs(), c in coeffs(), m in 2u64..5000) {
        let m = BigUint::from(m);
        let r = |v: &[i64]| zz(v).reduce_mod(&m).unwrap();
        let (a, b, c) = (r(&a), r(&b), r(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn unit_inverse(a in unit_coeffs()) {
        let a = zz(&a);
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, Series::one(&RingTag::Integer, ORDER));
        prop_assert_eq!(a.pow(-3).unwrap(), inv.pow(3).unwrap());
    }

    #[test]
    fn modular_inverse_of_units(a in coeffs(), c0 in 1u64..96, m in prop::sample::select(vec![97u64, 256, 1u64 << 40])) {
        let mut a = a;
        a[0] = if m == 97 { c0 as i64 } else { 2 * c0 as i64 + 1 };
        let s = zz(&a).reduce_mod(&BigUint::from(m)).unwrap();
        let one = Series::one(&s.ring(), ORDER);
        prop_assert_eq!(&s * &s.invert().unwrap(), one);
    }

    #[test]
    fn substitution_composes(a in coeffs(), j in 1usize..5, k in 1usize..5) {
        let a = zz(&a);
        prop_assert_eq!(a.substitute_power(j).substitute_power(k), a.substitute_power(j * k));
        let b = zz(&[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4, 6, 2, 6, 4]);
        prop_assert_eq!((&a * &b).substitute_power(k), &a.substitute_power(k) * &b.substitute_power(k));
    }

    #[test]
    fn reduction_commutes(a in coeffs(), b in coeffs(), m in 2u64..100_000) {
        let m = BigUint::from(m);
        let (a, b) = (zz(&a), zz(&b));
        let r = |s: &Series| s.reduce_mod(&m).unwrap();
        prop_assert_eq!(r(&(&a + &b)), &r(&a) + &r(&b));
        prop_assert_eq!(r(&(&a * &b)), &r(&a) * &r(&b));
        prop_assert_eq!(r(&-&a), -&r(&a));
        prop_assert_eq!(r(&a.pow(3).unwrap()), r(&a).pow(3).unwrap());
    }

    #[test]
    fn reduction_through_a_multiple(a in coeffs(), m in 2u64..1000, k in 2u64..50) {
        let a = zz(&a);
        let (m, mk) = (BigUint::from(m), BigUint::from(m * k));
        prop_assert_eq!(a.reduce_mod(&mk).unwrap().reduce_mod(&m).unwrap(), a.reduce_mod(&m).unwrap());
    }

    #[test]
    fn dyadic_normal_form(n in -10_000i64..10_000, e in 0u32..12, k in 0u32..12) {
        let d = Dyadic::new(n, e);
        let scaled = Dyadic::new(BigInt::from(n) << k, e + k);
        prop_assert_eq!(&scaled, &d);
        if d.is_zero() {
            prop_assert_eq!(d.exponent(), 0);
        } else if d.exponent() > 0 {
            prop_assert!(d.numerator() % 2 != BigInt::from(0));
        }
        let back = d.scaled_by_pow2(e).unwrap();
        prop_assert_eq!(back, BigInt::from(n));
    }

    #[test]
    fn dyadic_series_arithmetic(a in prop::collection::vec((-500i64..500, 0u32..6), ORDER), b in prop::collection::vec((-500i64..500, 0u32..6), ORDER)) {
        let (a, b) = (dyadic_series(&a), dyadic_series(&b));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let mut elems = a.elems();
        elems[0] = Elem::Dyadic(Dyadic::new(-1, 3));
        let u = Series::make(&RingTag::Dyadic, elems).unwrap();
        prop_assert_eq!(&u * &u.invert().unwrap(), Series::one(&RingTag::Dyadic, ORDER));
        let mut elems = a.elems();
        elems[0] = Elem::Dyadic(Dyadic::new(3, 0));
        prop_assert!(Series::make(&RingTag::Dyadic, elems).unwrap().invert().is_err());
    }

    #[test]
    fn dissection_round_trip(a in coeffs(), p in 1usize..7) {
        let a = zz(&a);
        let parts: Vec<Series> = (0..p).map(|r| extract(&a, Progression::new(p, r).unwrap()).unwrap()).collect();
        prop_assert_eq!(interleave(&parts, ORDER).unwrap(), a);
    }

    #[test]
    fn extraction_is_linear(a in coeffs(), b in coeffs(), c in -20i64..20, p in 1usize..7, r in 0usize..7) {
        prop_assume!(r < p);
        let prog = Progression::new(p, r).unwrap();
        let (a, b) = (zz(&a), zz(&b));
        let lhs = extract(&(&a + &b.scale(c)), prog).unwrap();
        let rhs = &extract(&a, prog).unwrap() + &extract(&b, prog).unwrap().scale(c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn huffing_is_substituted_even_part(a in coeffs()) {
        let a = zz(&a);
        let even = extract(&a, Progression::new(2, 0).unwrap()).unwrap();
        let zero = Series::zero(&RingTag::Integer, ORDER / 2);
        prop_assert_eq!(huffing(&a), interleave(&[even.clone(), zero], ORDER).unwrap());
        prop_assert_eq!(huffing(&huffing(&a)), huffing(&a));
        prop_assert_eq!(even.substitute_power(2).truncate(ORDER / 2), huffing(&a).truncate(ORDER / 2));
    }
}
