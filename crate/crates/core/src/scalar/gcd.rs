//! Polynomial gcd over Z[q] by the small-prime modular method with trial
//! division, plus the Euclidean gcd in F_p[q] it is built on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ZPoly;
use crate::modp::{self, Crt, Field};

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` by `b` in F_p[q] (Montgomery residues); `b` nonzero.
fn rem_mod(f: &Field, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = b.len() - 1;
    let inv_lc = f.inv(b[db]);
    while a.len() > db {
        let top = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if top != 0 {
            let factor = f.mul(top, inv_lc);
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = f.sub(a[shift + j], f.mul(factor, bc));
            }
        }
        a.pop();
        trim(&mut a);
    }
    trim(&mut a);
    a
}

/// Monic gcd in F_p[q]. Inputs are Montgomery residues without trailing zeros.
pub(crate) fn gcd_mod(f: &Field, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut x, mut y) = (a, b);
    while !y.is_empty() {
        let r = rem_mod(f, x, &y);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = f.inv(lc);
        for c in x.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    x
}

/// Greatest common divisor in Z[q]: primitive, positive leading coefficient,
/// times the gcd of the contents. `gcd(0, b)` is `b` normalized the same way.
pub fn gcd_zpoly(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return normalize_sign(b);
    }
    if b.is_zero() {
        return normalize_sign(a);
    }
    let content = a.content().gcd(&b.content());
    let pa = a.primitive();
    let pb = b.primitive();
    if pa == pb {
        return pa.scale(&content);
    }
    if pa.degree() == Some(0) || pb.degree() == Some(0) {
        return ZPoly::constant(content);
    }
    // Cheap divisibility shortcuts; common when one argument is a factor.
    if pa.degree() <= pb.degree() && pb.div_exact(&pa).is_some() {
        return pa.scale(&content);
    }
    if pb.degree() < pa.degree() && pa.div_exact(&pb).is_some() {
        return pb.scale(&content);
    }
    primitive_gcd(&pa, &pb).scale(&content)
}

fn normalize_sign(p: &ZPoly) -> ZPoly {
    match p.leading() {
        Some(lc) if lc.is_negative() => p.neg(),
        _ => p.clone(),
    }
}

/// Gcd of two primitive polynomials of positive degree.
fn primitive_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lca = a.leading().unwrap();
    let lcb = b.leading().unwrap();
    let lc_gcd = lca.gcd(lcb);
    let mut best_degree = usize::MAX;
    let mut acc: Vec<Crt> = Vec::new();
    let mut primes_used = 0usize;

    for p in modp::primes() {
        let pb = BigInt::from(p);
        if (lca % &pb).is_zero() || (lcb % &pb).is_zero() {
            continue;
        }
        let f = Field::new(p);
        let g = gcd_mod(&f, a.reduce_mod(&f), b.reduce_mod(&f));
        let d = g.len() - 1;
        if d == 0 {
            return ZPoly::one();
        }
        if d > best_degree {
            continue; // unlucky prime
        }
        if d < best_degree {
            best_degree = d;
            acc = vec![Crt::default(); d + 1];
            primes_used = 0;
        }
        let scale = f.from_bigint(&lc_gcd);
        let mut changed = false;
        for (crt, &c) in acc.iter_mut().zip(&g) {
            changed |= crt.push(f.from_mont(f.mul(c, scale)), p);
        }
        primes_used += 1;
        if !changed && primes_used > 1 {
            let candidate =
                ZPoly::from_coeffs(acc.iter().map(|c| c.value().clone()).collect()).primitive();
            if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
                return candidate;
            }
        }
    }
    unreachable!("prime supply exhausted")
}

/// `a * b / gcd(a, b)`, normalized to positive leading coefficient.
pub fn lcm_zpoly(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return ZPoly::zero();
    }
    let g = gcd_zpoly(a, b);
    let l = a.div_exact(&g).expect("gcd divides").mul(b);
    normalize_sign(&l)
}

pub(crate) fn is_unit_constant(p: &ZPoly) -> bool {
    p.degree() == Some(0) && p.leading().unwrap().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(1 - q^2, 1 - q) ~ 1 - q, normalized to q - 1
        assert_eq!(gcd_zpoly(&z(&[1, 0, -1]), &z(&[1, -1])), z(&[-1, 1]));
        assert_eq!(gcd_zpoly(&z(&[1, 1]), &z(&[1, -1])), z(&[1]));
        assert_eq!(gcd_zpoly(&z(&[2, -4]), &ZPoly::zero()), z(&[-2, 4]));
        assert_eq!(gcd_zpoly(&z(&[4, 8]), &z(&[6, 12])), z(&[2, 4]));
    }

    #[test]
    fn gcd_of_products_with_common_factor() {
        let common = z(&[3, -1, 0, 7, 2]);
        let a = common.mul(&z(&[5, 0, 1, -9])).mul(&z(&[1, 1]));
        let b = common.mul(&z(&[-2, 11, 4])).mul(&z(&[1, 1]));
        let expected = common.mul(&z(&[1, 1])).primitive();
        assert_eq!(gcd_zpoly(&a, &b), expected);
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big: BigInt = BigInt::from(1u64 << 40) * BigInt::from(1u64 << 40) + 7;
        let common = ZPoly::from_coeffs(vec![big.clone(), BigInt::from(-3), big.clone()]);
        let a = common.mul(&z(&[1, 0, 0, 1]));
        let b = common.mul(&z(&[-1, 2]));
        assert_eq!(gcd_zpoly(&a, &b), common.primitive());
    }

    #[test]
    fn lcm_of_cyclotomic_like_factors() {
        let l = lcm_zpoly(&z(&[1, 0, -1]), &z(&[1, 0, 0, -1]));
        // (1 - q^2)(1 + q + q^2) up to sign
        assert_eq!(l, z(&[1, 1, 1]).mul(&z(&[1, 0, -1])).neg());
    }
}
