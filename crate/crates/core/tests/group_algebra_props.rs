use num_rational::BigRational;
use proptest::prelude::*;

use quon_core::group_algebra::{alpha, alpha_inverse, GroupAlgebraElement};
use quon_core::permutation::{all_permutations, Permutation};
use quon_core::scalar::QRational;
use quon_core::zagier::ZagierMatrix;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn sparse_s4() -> impl Strategy<Value = GroupAlgebraElement<BigRational>> {
    prop::collection::vec((0usize..24, -9i64..=9, 1i64..=5), 0..6).prop_map(|terms| {
        let perms = all_permutations(4);
        GroupAlgebraElement::from_terms(
            4,
            terms
                .into_iter()
                .map(|(i, a, b)| (perms[i].clone(), r(a, b))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in sparse_s4(), b in sparse_s4(), c in sparse_s4()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn two_sided_inverse_symbolic_up_to_4() {
    let q = QRational::q();
    for n in 1..=4 {
        let a = alpha(n, &q);
        let b = alpha_inverse(n, &q).unwrap();
        let e = GroupAlgebraElement::identity(n);
        assert_eq!(a.multiply(&b).unwrap(), e, "n={n}");
        assert_eq!(b.multiply(&a).unwrap(), e, "n={n}");
    }
}

#[test]
fn two_sided_inverse_n5_specialized() {
    for q0 in [r(1, 3), r(-1, 2), r(2, 5)] {
        let a = alpha(5, &q0);
        let b = alpha_inverse(5, &q0).unwrap();
        let e = GroupAlgebraElement::identity(5);
        assert_eq!(a.multiply(&b).unwrap(), e);
        assert_eq!(b.multiply(&a).unwrap(), e);
    }
}

#[test]
fn inverse_matches_first_column_of_matrix_inverse() {
    let q = QRational::q();
    for n in 1..=4 {
        let m = ZagierMatrix::build(n).unwrap();
        let inv = m.invert(&q).unwrap();
        let ainv = alpha_inverse(n, &q).unwrap();
        let e = m.index_of(&Permutation::identity(n)).unwrap();
        for (i, rho) in m.perms().iter().enumerate() {
            assert_eq!(ainv.coeff(rho), *inv.get(i, e), "n={n} rho={rho}");
        }
    }
}

#[test]
fn alpha2_inverse_at_half() {
    let inv = alpha_inverse(2, &r(1, 2)).unwrap();
    assert_eq!(inv.coeff(&Permutation::identity(2)), r(4, 3));
    assert_eq!(inv.coeff(&Permutation::new(vec![2, 1]).unwrap()), r(-2, 3));
}

#[test]
fn json_rendering() {
    let q = QRational::q();
    let js = serde_json::to_string(&alpha(2, &q)).unwrap();
    assert_eq!(
        js,
        r#"{"n":2,"terms":[{"perm":[1,2],"coeff":"1"},{"perm":[2,1],"coeff":"q"}]}"#
    );
}
