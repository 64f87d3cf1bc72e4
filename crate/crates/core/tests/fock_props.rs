use num_rational::BigRational;
use proptest::prelude::*;

use quon_core::energy::{coeffs_via_product, CoefficientTable, Method};
use quon_core::fock::{
    apply_energy, apply_energy_term, brute_force_coefficients, inner_product, EnergyAssignment,
    FockState,
};
use quon_core::permutation::OrderedTuple;
use quon_core::scalar::QRational;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn t(v: &[u64]) -> OrderedTuple {
    OrderedTuple::new(v.to_vec()).unwrap()
}

/// Up to four terms over modes 1..=6, each with 1 to 3 particles.
fn state() -> impl Strategy<Value = FockState<QRational>> {
    let term = (
        Just((1..=6u64).collect::<Vec<_>>()).prop_shuffle(),
        1usize..=3,
        -5i64..=5,
        1i64..=4,
    );
    prop::collection::vec(term, 1..=4).prop_map(|terms| {
        FockState::from_terms(
            terms
                .into_iter()
                .map(|(modes, len, a, b)| (t(&modes[..len]), QRational::from_rational(r(a, b)))),
        )
    })
}

fn real_state(q0: &BigRational) -> impl Strategy<Value = FockState<BigRational>> {
    let _ = q0;
    let term = (
        Just((1..=5u64).collect::<Vec<_>>()).prop_shuffle(),
        -5i64..=5,
        1i64..=4,
    );
    (1usize..=4, prop::collection::vec(term, 1..=4)).prop_map(|(len, terms)| {
        FockState::from_terms(
            terms
                .into_iter()
                .map(|(modes, a, b)| (t(&modes[..len]), r(a, b))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// `a(k)a†(ℓ) - q a†(ℓ)a(k) = δ_{kℓ}` as an identity on states.
    #[test]
    fn commutation_relation(s in state(), k in 1u64..=8, l in 7u64..=8) {
        let q = QRational::q();
        let lhs = s.create(l).unwrap().annihilate(k, &q)
            .sub(&s.annihilate(k, &q).create(l).unwrap().scale(&q));
        let rhs = if k == l { s.clone() } else { FockState::zero() };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_is_positive_inside_unit_interval(s in real_state(&r(0, 1)), a in -9i64..=9) {
        let q0 = r(a, 10);
        prop_assume!(!s.is_zero());
        prop_assert!(inner_product(&s, &s, &q0) > r(0, 1));
    }
}

#[test]
fn brute_force_matches_product_formula() {
    for q0 in [r(1, 3), r(-1, 2), r(2, 7)] {
        let oracle = brute_force_coefficients(3, &q0).unwrap();
        for p in 1..=3 {
            assert_eq!(
                oracle.get(p).unwrap(),
                &coeffs_via_product(p, &q0).unwrap(),
                "p={p} q={q0}"
            );
        }
    }
}

#[test]
fn brute_force_n4_at_a_point() {
    let q0 = r(1, 2);
    let oracle = brute_force_coefficients(4, &q0).unwrap();
    assert_eq!(oracle.get(4).unwrap(), &coeffs_via_product(4, &q0).unwrap());
}

#[test]
fn energy_examples() {
    let q = QRational::q();
    let table = CoefficientTable::compute(3, &q, Method::Product).unwrap();
    let e = EnergyAssignment::new([(3, r(1, 1)), (7, r(2, 1))]);
    let x37 = FockState::basis(t(&[3, 7]));
    let x73 = FockState::basis(t(&[7, 3]));
    let three = QRational::from_integer(3);
    assert_eq!(apply_energy(&e, &x37, &table).unwrap(), x37.scale(&three));
    let sup = x37.add(&x73);
    assert_eq!(apply_energy(&e, &sup, &table).unwrap(), sup.scale(&three));
    assert!(apply_energy(&e, &FockState::vacuum(), &table)
        .unwrap()
        .is_zero());
    // ℰ_3 on a two-particle state vanishes
    assert!(apply_energy_term(3, table.get(3).unwrap(), &e, &x37, &q)
        .unwrap()
        .is_zero());
    // one particle: ℰ_1 x_ℓ = E(ℓ) x_ℓ
    let x3 = FockState::basis(t(&[3]));
    assert_eq!(
        apply_energy_term(1, table.get(1).unwrap(), &e, &x3, &q).unwrap(),
        x3
    );
}

#[test]
fn energy_at_half_two_particles() {
    let q0 = r(1, 2);
    let table = CoefficientTable::compute(2, &q0, Method::Product).unwrap();
    let e = EnergyAssignment::new([(3, r(1, 1)), (7, r(2, 1))]);
    let x = FockState::basis(t(&[3, 7]));
    let one = apply_energy_term(1, table.get(1).unwrap(), &e, &x, &q0).unwrap();
    let two = apply_energy_term(2, table.get(2).unwrap(), &e, &x, &q0).unwrap();
    assert_eq!(one.add(&two), x.scale(&r(3, 1)));
}

#[test]
fn missing_coefficients_reported() {
    let q = QRational::q();
    let table = CoefficientTable::compute(1, &q, Method::Product).unwrap();
    let e = EnergyAssignment::new([(1, r(1, 1)), (2, r(1, 1))]);
    let x = FockState::basis(t(&[1, 2]));
    assert_eq!(
        apply_energy(&e, &x, &table),
        Err(quon_core::Error::CoefficientsUnavailable(2))
    );
}

#[test]
fn eigen_suite_is_seeded() {
    use quon_core::fock::eigen_suite;
    let a = eigen_suite(3, &r(1, 2), 42, 5).unwrap();
    let b = eigen_suite(3, &r(1, 2), 42, 5).unwrap();
    assert!(a.holds);
    assert_eq!(a, b);
    assert_eq!(a.draws.len(), 5);
    assert!(a.draws.iter().all(|d| d.residual.is_none()));
    assert_ne!(a.draws, eigen_suite(3, &r(1, 2), 43, 5).unwrap().draws);
}
