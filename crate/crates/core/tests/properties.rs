//! Randomized invariants: field axioms, monomial-order compatibility,
//! polynomial arithmetic, quotient-ring reduction, and normal forms.

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use intermul::field::{FieldElement, FieldSpec};
use intermul::groebner;
use intermul::ring::{
    compare, parse_polynomial, MonomialOrder, Monomial, Polynomial, QuotientRing, RingSpec,
};

fn qq_spec() -> Arc<RingSpec> {
    RingSpec::new(
        FieldSpec::QQ,
        vec!["x".into(), "y".into(), "z".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap()
}

fn fp_spec() -> Arc<RingSpec> {
    RingSpec::new(
        FieldSpec::prime_field(7).unwrap(),
        vec!["x".into(), "y".into(), "z".into()],
        MonomialOrder::Lex,
    )
    .unwrap()
}

fn field_element(spec: FieldSpec) -> impl Strategy<Value = FieldElement> {
    // denominators stay coprime to every characteristic in play
    (-20i64..=20, 1i64..=6).prop_map(move |(n, d)| spec.canonicalize(n, d).unwrap())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..=4, 3).prop_map(|e| Monomial::new(e, &[1, 1, 1]))
}

fn polynomial(spec: Arc<RingSpec>) -> impl Strategy<Value = Polynomial> {
    let field = spec.field;
    proptest::collection::vec((monomial(), field_element(field)), 0..5)
        .prop_map(move |terms| Polynomial::from_terms(&spec, terms).unwrap())
}

proptest! {
    #[test]
    fn field_axioms_hold(
        a in field_element(FieldSpec::QQ),
        b in field_element(FieldSpec::QQ),
        c in field_element(FieldSpec::QQ),
    ) {
        let ab_c = a.add(&b).unwrap().add(&c).unwrap();
        let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expand = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(dist, expand);
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn prime_field_axioms_hold(
        a in field_element(FieldSpec::prime_field(7).unwrap()),
        b in field_element(FieldSpec::prime_field(7).unwrap()),
    ) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b).unwrap(), a);
        }
    }

    #[test]
    fn monomial_orders_are_multiplicative(u in monomial(), v in monomial(), w in monomial()) {
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let before = compare(&u, &v, order).unwrap();
            let after = compare(&u.mul(&w), &v.mul(&w), order).unwrap();
            prop_assert_eq!(before, after);
            // 1 is the least monomial
            let one = Monomial::one(3);
            prop_assert_ne!(compare(&u.mul(&w), &one, order).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn polynomial_ring_axioms_hold(
        f in polynomial(qq_spec()),
        g in polynomial(qq_spec()),
        h in polynomial(qq_spec()),
    ) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let assoc_l = f.mul(&g).unwrap().mul(&h).unwrap();
        let assoc_r = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let dist = f.mul(&g.add(&h).unwrap()).unwrap();
        let expand = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(dist, expand);
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn fp_polynomial_arithmetic_is_consistent(
        f in polynomial(fp_spec()),
        g in polynomial(fp_spec()),
    ) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().sub(&g).unwrap(), f);
    }

    #[test]
    fn quotient_reduction_is_idempotent_and_linear(
        f in polynomial(qq_spec()),
        g in polynomial(qq_spec()),
    ) {
        let spec = f.ring.clone();
        let rel = parse_polynomial(&spec, "x*y - z^2").unwrap();
        let ring = QuotientRing::new(&spec, vec![rel]).unwrap();
        let rf = ring.reduce(&f).unwrap();
        prop_assert_eq!(ring.reduce(&rf).unwrap(), rf.clone());
        let sum = ring.reduce(&f.add(&g).unwrap()).unwrap();
        prop_assert_eq!(sum, rf.add(&ring.reduce(&g).unwrap()).unwrap());
    }

    #[test]
    fn normal_form_is_a_canonical_remainder(f in polynomial(qq_spec())) {
        let spec = f.ring.clone();
        let gens = vec![
            parse_polynomial(&spec, "x^2 - y*z").unwrap(),
            parse_polynomial(&spec, "x*y - z^2").unwrap(),
        ];
        let gb = groebner::ideal_groebner(&spec, gens).unwrap();
        let nf = groebner::poly_normal_form(&f, &gb).unwrap();
        prop_assert_eq!(groebner::poly_normal_form(&nf, &gb).unwrap(), nf.clone());
        // f - nf(f) lies in the ideal
        let diff = f.sub(&nf).unwrap();
        prop_assert!(groebner::poly_normal_form(&diff, &gb).unwrap().is_zero());
    }
}
