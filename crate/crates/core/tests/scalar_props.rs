use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quon_core::scalar::{gcd_zpoly, parse_rational, QPoly, QRational, ZPoly};
use quon_core::Error;

fn rat() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=20).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rat(), 0..=9).prop_map(|cs| QPoly::from_coeffs(&cs))
}

fn nonzero_qpoly() -> impl Strategy<Value = QPoly> {
    qpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-30i64..=30, 0..=7).prop_map(|cs| ZPoly::from_i64s(&cs))
}

fn qrat() -> impl Strategy<Value = QRational> {
    (qpoly(), nonzero_qpoly()).prop_map(|(a, b)| QRational::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn polynomial_top_coefficient_is_nonzero(a in qpoly()) {
        if let Some(d) = a.degree() {
            prop_assert!(a.coeff(d) != BigRational::from_integer(0.into()));
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rational_function_field_axioms(x in qrat(), y in qrat(), z in qrat()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        if !y.is_zero() {
            prop_assert_eq!(x.div(&y).unwrap().mul(&y), x);
        }
    }

    #[test]
    fn canonical_form_is_unique(a in qpoly(), b in nonzero_qpoly(), c in nonzero_qpoly()) {
        let plain = QRational::new(a.clone(), b.clone()).unwrap();
        let scaled = QRational::new(a.mul(&c), b.mul(&c)).unwrap();
        prop_assert_eq!(plain.to_string(), scaled.to_string());
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in qrat(), y in qrat(), q0 in rat()) {
        let (Ok(ex), Ok(ey)) = (x.evaluate(&q0), y.evaluate(&q0)) else {
            return Ok(());
        };
        prop_assert_eq!(x.mul(&y).evaluate(&q0).unwrap(), &ex * &ey);
        prop_assert_eq!(x.add(&y).evaluate(&q0).unwrap(), &ex + &ey);
    }

    #[test]
    fn gcd_contains_common_factor(f in zpoly(), g in zpoly(), h in zpoly()) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let fh = f.mul(&h);
        let gh = g.mul(&h);
        let d = gcd_zpoly(&fh, &gh);
        prop_assert!(fh.div_exact(&d).is_some());
        prop_assert!(gh.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&h.primitive()).is_some());
    }

    #[test]
    fn rational_text_round_trips(c in rat()) {
        let text = quon_core::scalar::rational_text(&c);
        prop_assert_eq!(parse_rational(&text).unwrap(), c);
    }
}

#[test]
fn gcd_examples() {
    // gcd(q^2 - 1, q - 1) = q - 1 up to sign
    let g = gcd_zpoly(&ZPoly::from_i64s(&[-1, 0, 1]), &ZPoly::from_i64s(&[-1, 1]));
    assert_eq!(g.primitive(), ZPoly::from_i64s(&[-1, 1]));
    let coprime = gcd_zpoly(&ZPoly::from_i64s(&[1, 1]), &ZPoly::from_i64s(&[-1, 1]));
    assert_eq!(coprime.degree(), Some(0));
}

#[test]
fn rational_function_rendering() {
    let num = QPoly::from_zpoly(ZPoly::from_i64s(&[0, 1]));
    let den = QPoly::from_zpoly(ZPoly::from_i64s(&[1, 0, -1]));
    let x = QRational::new(num, den).unwrap();
    assert_eq!(x.to_string(), "(-q)/(-1 + q^2)");
    let half = QRational::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
    assert_eq!(half.to_string(), "1/2");
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_rational("2/0"), Err(Error::DivisionByZero)));
    assert!(matches!(parse_rational("abc"), Err(Error::Parse(_))));
}
