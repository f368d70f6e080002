mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use mldual::ideal::Budget;
use mldual::likelihood::{ml_degree, Arithmetic, Formulation};
use mldual::poly::{Monomial, MonomialOrder, Polynomial, VariableSet};
use mldual::zoo;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn vars3() -> Arc<VariableSet> {
    VariableSet::new(&["x", "y", "z"]).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, 3).prop_map(|e| Monomial::from_exponents(e.into_iter().map(|x| x as _)))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), rational()), 0..6).prop_map(|terms| Polynomial::from_terms(&vars3(), terms))
}

fn point() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rational(), 3)
}

const ORDERS: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::DegLex, MonomialOrder::DegRevLex];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in polynomial(), b in polynomial(), x in point()) {
        let (ea, eb) = (a.evaluate(&x).unwrap(), b.evaluate(&x).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), ea + eb);
    }

    #[test]
    fn display_parses_back(a in polynomial()) {
        prop_assert_eq!(Polynomial::parse(&vars3(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn leibniz_rule(a in polynomial(), b in polynomial(), i in 0usize..3) {
        let d = |p: &Polynomial| p.partial_derivative(i).unwrap();
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
    }

    #[test]
    fn orders_are_monomial_orders(a in monomial(), b in monomial(), c in monomial()) {
        for o in ORDERS {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(o.cmp(&a.mul(&c), &a), Ordering::Less);
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
        }
    }

    #[test]
    fn groebner_self_checks(seed in any::<u64>()) {
        prop_assert_eq!(common::gb_self_check(seed), Ok(()));
    }

    #[test]
    fn saturation_is_idempotent(seed in any::<u64>()) {
        prop_assert_eq!(common::saturation_idempotence(seed), Ok(()));
    }

    #[test]
    fn zero_dim_degree_is_order_independent(seed in any::<u64>()) {
        prop_assert_eq!(common::degree_order_independence(seed), Ok(()));
    }

    #[test]
    fn multiplication_matrices_commute(seed in any::<u64>()) {
        prop_assert_eq!(common::commutation_and_trace(seed), Ok(()));
    }

    #[test]
    fn modular_bases_match_rational(seed in any::<u64>()) {
        prop_assert_eq!(common::modular_matches_rational(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn conic_count_is_seed_independent(seed in any::<u64>()) {
        let m = zoo::get("conic").unwrap().model().unwrap();
        let b = Budget::default();
        for f in [Formulation::Standard, Formulation::Conormal] {
            prop_assert_eq!(ml_degree(&m, f, seed, false, Arithmetic::Modular, &b).unwrap().degree, 1);
        }
        let d = zoo::get("conic-dual").unwrap().model().unwrap();
        for f in [Formulation::Dual, Formulation::Lagrange] {
            prop_assert_eq!(ml_degree(&d, f, seed, false, Arithmetic::Modular, &b).unwrap().degree, 1);
        }
    }
}

#[test]
fn modular_and_rational_counts_agree() {
    let b = Budget::default();
    for name in ["I2", "I5", "I10", "quartic-dual"] {
        let m = zoo::get(name).unwrap().model().unwrap();
        let modular = ml_degree(&m, Formulation::Dual, 11, false, Arithmetic::Modular, &b).unwrap();
        let rational = ml_degree(&m, Formulation::Dual, 11, false, Arithmetic::Rational, &b).unwrap();
        assert_eq!(modular.degree, rational.degree, "{name}");
        assert!(modular.draws.iter().all(|d| d.prime.is_some()));
        assert_ne!(modular.draws[0].prime, modular.draws[1].prime);
    }
}

#[test]
fn reduction_modulo_a_prime() {
    let vars = vars3();
    let i = mldual::Ideal::new(&vars, vec![common::poly(&vars, "x^2 - 1/2*y"), common::poly(&vars, "3*y*z - 7")]).unwrap();
    let r = i.reduce_mod(101).unwrap();
    assert_eq!(r.field(), mldual::Field::Prime(101));
    assert!(i.reduce_mod(100).is_err());
    let two = mldual::Ideal::new(&vars, vec![common::poly(&vars, "1/2*x - 1")]).unwrap();
    assert!(two.reduce_mod(2).is_err());
}
