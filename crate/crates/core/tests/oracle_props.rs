mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_poly;
use scrollstci::{FieldSpec, IdealHandle, Monomial, Polynomial, Ring, TermOrder};

fn ring3() -> std::sync::Arc<Ring> {
    Ring::rationals(&["x", "y", "z"])
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>) -> IdealHandle {
    let n = rand::Rng::gen_range(rng, 1..=3);
    IdealHandle::new(ring, (0..n).map(|_| random_poly(rng, ring, 2, 3))).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, 3).prop_map(Monomial::from_exponents)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring3();
        let a = random_poly(&mut rng, &r, 3, 4);
        let b = random_poly(&mut rng, &r, 3, 4);
        let c = random_poly(&mut rng, &r, 3, 4);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&r), a.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring3();
        let a = random_poly(&mut rng, &r, 3, 5);
        prop_assert_eq!(Polynomial::parse(&r, &a.to_string()).unwrap(), a.clone());
        let f = r.with_field(FieldSpec::prime(7).unwrap());
        let b = Polynomial::parse(&f, &a.to_string()).unwrap();
        prop_assert_eq!(Polynomial::parse(&f, &b.to_string()).unwrap(), b);
    }

    #[test]
    fn orders_are_total_and_multiplicative(a in monomial(), b in monomial(), c in monomial()) {
        for order in [TermOrder::Lex, TermOrder::DegLex, TermOrder::DegRevLex, TermOrder::Block(1)] {
            let ab = order.compare(&a, &b);
            prop_assert_eq!(ab.reverse(), order.compare(&b, &a));
            prop_assert_eq!(ab.is_eq(), a == b);
            prop_assert_eq!(ab, order.compare(&a.mul(&c), &b.mul(&c)));
            prop_assert!(order.compare(&a.mul(&c), &a).is_ge());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring3();
        let i = random_ideal(&mut rng, &r);
        let j = random_ideal(&mut rng, &r);
        let g = random_poly(&mut rng, &r, 2, 3);

        // Membership of combinations, and basis stability under reordering.
        let combo = i.generators().iter().fold(Polynomial::zero(&r), |acc, f| {
            &acc + &(f * &random_poly(&mut rng, &r, 1, 2))
        });
        prop_assert!(i.contains(&combo).unwrap());
        let mut rev = i.generators().to_vec();
        rev.reverse();
        let i2 = IdealHandle::new(&r, rev).unwrap();
        prop_assert_eq!(i.groebner_basis(TermOrder::DegRevLex), i2.groebner_basis(TermOrder::DegRevLex));

        // I·J ⊆ I ∩ J ⊆ I, J.
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet).unwrap());
        prop_assert!(j.contains_ideal(&meet).unwrap());
        for a in i.generators() {
            for b in j.generators() {
                prop_assert!(meet.contains(&(a * b)).unwrap());
            }
        }

        // I ⊆ I : g^∞, and g·h ∈ I implies h ∈ I : g^∞.
        if !g.is_zero() {
            let sat = i.saturate(&g).unwrap();
            prop_assert!(sat.contains_ideal(&i).unwrap());
            let h = random_poly(&mut rng, &r, 1, 2);
            let gi = IdealHandle::new(&r, i.generators().iter().cloned().chain([&g * &h])).unwrap();
            let sat2 = gi.saturate(&g).unwrap();
            prop_assert!(sat2.contains(&h).unwrap());
        }

        // p ∈ rad(I + (p²)), and membership implies radical membership.
        let p = random_poly(&mut rng, &r, 1, 3);
        let ip = IdealHandle::new(&r, i.generators().iter().cloned().chain([p.pow(2)])).unwrap();
        prop_assert!(ip.in_radical(&p).unwrap());
        prop_assert!(i.in_radical(&combo).unwrap());
        prop_assert!(i.radical_equal(&i2).unwrap());
    }
}

#[test]
fn elimination_of_a_parametrization() {
    let r = Ring::rationals(&["t", "x", "y"]);
    let i = IdealHandle::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
    let e = i.eliminate(&["t"]).unwrap();
    let expected = IdealHandle::parse(e.ring(), &["x^3 - y^2"]).unwrap();
    assert!(e.same_ideal(&expected).unwrap());
}

#[test]
fn prime_field_radical() {
    let r = Ring::new(["x", "y"], FieldSpec::prime(5).unwrap()).unwrap();
    let i = IdealHandle::parse(&r, &["x^5 - y^5"]).unwrap();
    // x^5 - y^5 = (x - y)^5 in characteristic 5.
    let cert = i.radical_member(&Polynomial::parse(&r, "x - y").unwrap()).unwrap();
    assert!(cert.member);
    assert_eq!(cert.witness_exponent, Some(5));
    assert_eq!(cert.characteristic, 5);
}
