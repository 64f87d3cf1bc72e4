//! The Gram matrix `A_n(q)(π,σ) = q^{I(σ^{-1}∘π)}` of the `n`-particle
//! states, its determinant and the closed product formula, `Δ_n`, exact
//! inverses, the `Δ_n·A_n^{-1}` integrality check and a positivity probe.
//!
//! Rows and columns follow lexicographic order of `S_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ExactField, Matrix, MonomialMatrix};
use crate::permutation::{all_permutations, Permutation};
use crate::scalar::{QRational, ZPoly};

/// Largest supported degree (a 720 × 720 matrix).
pub const MAX_N: usize = 6;

/// Up to this degree the symbolic determinant uses Bareiss elimination.
const BAREISS_MAX_N: usize = 4;

/// `A_n(q)` stored as its exponent matrix: every entry is a monomial `q^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZagierMatrix {
    n: usize,
    perms: Vec<Permutation>,
    exps: Vec<u32>,
}

impl ZagierMatrix {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                range: format!("1..={MAX_N}"),
            });
        }
        let perms = all_permutations(n);
        let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
        let mut exps = Vec::with_capacity(perms.len() * perms.len());
        for pi in &perms {
            for sigma_inv in &inverses {
                exps.push(sigma_inv.compose_unchecked(pi).inversions() as u32);
            }
        }
        Ok(ZagierMatrix { n, perms, exps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows, `n!`.
    pub fn size(&self) -> usize {
        self.perms.len()
    }

    /// Row/column labels in lexicographic order.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.perms.binary_search(p).ok()
    }

    /// The exponent `m` of entry `(i, j) = q^m`.
    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exps[i * self.size() + j]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn max_exponent(&self) -> u32 {
        (self.n * (self.n - 1) / 2) as u32
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (i + 1..m).all(|j| self.exponent(i, j) == self.exponent(j, i)))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.size()).all(|i| self.exponent(i, i) == 0)
    }

    /// Entries with `q` replaced by the given scalar.
    pub fn specialize<S: crate::scalar::Scalar>(&self, q: &S) -> Matrix<S> {
        let powers: Vec<S> = (0..=self.max_exponent()).map(|e| q.pow(e)).collect();
        let m = self.size();
        Matrix::from_fn(m, m, |i, j| powers[self.exponent(i, j) as usize].clone())
    }

    pub fn symbolic(&self) -> Matrix<ZPoly> {
        let m = self.size();
        Matrix::from_fn(m, m, |i, j| {
            ZPoly::monomial(BigInt::one(), self.exponent(i, j) as usize)
        })
    }

    /// Exact `det A_n(q)` in `Z[q]`.
    pub fn determinant(&self) -> ZPoly {
        if self.n <= BAREISS_MAX_N {
            self.determinant_bareiss()
        } else {
            self.determinant_multimodular()
        }
    }

    pub fn determinant_bareiss(&self) -> ZPoly {
        linalg::bareiss_det_zpoly(&self.symbolic())
    }

    pub fn determinant_multimodular(&self) -> ZPoly {
        linalg::det_multimodular(&MonomialMatrix {
            n: self.size(),
            exps: &self.exps,
            specialization: None,
            symmetric: true,
        })
    }

    /// Exact `det A_n(q0)`, computed without forming the symbolic determinant.
    pub fn determinant_at(&self, q0: &BigRational) -> BigRational {
        if q0.is_zero() {
            return BigRational::one();
        }
        let (a, b) = (q0.numer().clone(), q0.denom().clone());
        let det_scaled = linalg::det_multimodular(&MonomialMatrix {
            n: self.size(),
            exps: &self.exps,
            specialization: Some((a, b.clone())),
            symmetric: true,
        });
        // det(b^M A) = b^{M·N} det A
        let scale = num_traits::pow(b, self.max_exponent() as usize * self.size());
        BigRational::new(det_scaled.coeff(0), scale)
    }

    /// `A_n^{-1}` over the given scalar (symbolic `q` or a rational value).
    pub fn invert<S: ExactField>(&self, q: &S) -> Result<Matrix<S>> {
        S::inverse(&self.specialize(q)).map_err(|e| match e {
            Error::Singular(_) => Error::Singular(format!(" at q = {q}")),
            other => other,
        })
    }

    /// Entries as canonical text, for reports.
    pub fn entry_texts(&self) -> Vec<Vec<String>> {
        let m = self.size();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        ZPoly::monomial(BigInt::one(), self.exponent(i, j) as usize).to_string()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `(k, e_k)` with `e_k = n!(n-k)/(k²+k)`, the exponent of `(1 - q^{k²+k})`.
pub fn zagier_exponents(n: usize) -> Vec<(usize, usize)> {
    let fact: usize = (1..=n).product();
    (1..=n)
        .map(|k| {
            let num = fact * (n - k);
            let den = k * k + k;
            assert_eq!(num % den, 0, "non-integral exponent n={n} k={k}");
            (k, num / den)
        })
        .collect()
}

fn one_minus_q_pow(m: usize) -> ZPoly {
    ZPoly::one().sub(&ZPoly::monomial(BigInt::one(), m))
}

/// `Π_{k=1}^n (1 - q^{k²+k})^{n!(n-k)/(k²+k)}`, expanded.
pub fn zagier_formula(n: usize) -> ZPoly {
    zagier_exponents(n)
        .into_iter()
        .fold(ZPoly::one(), |acc, (k, e)| {
            acc.mul(&one_minus_q_pow(k * k + k).pow(e as u32))
        })
}

/// The product formula evaluated at `q0` without expanding it.
pub fn zagier_formula_at(n: usize, q0: &BigRational) -> BigRational {
    zagier_exponents(n)
        .into_iter()
        .fold(BigRational::one(), |acc, (k, e)| {
            let factor = BigRational::one() - num_traits::pow(q0.clone(), k * k + k);
            acc * num_traits::pow(factor, e)
        })
}

/// `Δ_n = (1-q²)(1-q⁶)⋯(1-q^{n²+n})`.
pub fn delta(n: usize) -> ZPoly {
    (1..=n).fold(ZPoly::one(), |acc, k| acc.mul(&one_minus_q_pow(k * k + k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityViolation {
    pub row: Permutation,
    pub col: Permutation,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub n: usize,
    pub holds: bool,
    pub entries_checked: usize,
    /// `Δ_n · A_n^{-1}` in row-major order, as canonical text.
    pub entries: Vec<Vec<String>>,
    pub violations: Vec<IntegralityViolation>,
}

/// Is every entry of `Δ_n · A_n^{-1}` an integer polynomial?
pub fn check_integrality(n: usize) -> Result<IntegralityReport> {
    let m = ZagierMatrix::build(n)?;
    let inv = m.invert(&QRational::q())?;
    let d = QRational::from_poly(crate::scalar::QPoly::from_zpoly(delta(n)));
    let mut violations = Vec::new();
    let mut entries = Vec::with_capacity(m.size());
    for i in 0..m.size() {
        let mut row = Vec::with_capacity(m.size());
        for j in 0..m.size() {
            let v = inv.get(i, j).mul(&d);
            if !v.is_integer_polynomial() {
                violations.push(IntegralityViolation {
                    row: m.perms[i].clone(),
                    col: m.perms[j].clone(),
                    value: v.to_string(),
                });
            }
            row.push(v.to_string());
        }
        entries.push(row);
    }
    Ok(IntegralityReport {
        n,
        holds: violations.is_empty(),
        entries_checked: m.size() * m.size(),
        entries,
        violations,
    })
}

/// True iff every leading principal minor of `A_n(q0)` is strictly positive.
pub fn positivity_probe(n: usize, q0: &BigRational) -> Result<bool> {
    if q0.abs() >= BigRational::one() {
        return Err(Error::Precondition(format!(
            "positivity probe needs -1 < q < 1, got {}",
            crate::scalar::rational_text(q0)
        )));
    }
    let m = ZagierMatrix::build(n)?;
    // b^M A(a/b) is an integer matrix with minors of the same sign.
    let (a, b) = (q0.numer().clone(), q0.denom().clone());
    let top = m.max_exponent() as usize;
    let weights: Vec<BigInt> = (0..=top)
        .map(|e| num_traits::pow(a.clone(), e) * num_traits::pow(b.clone(), top - e))
        .collect();
    let size = m.size();
    let scaled = Matrix::from_fn(size, size, |i, j| {
        weights[m.exponent(i, j) as usize].clone()
    });
    let minors = linalg::leading_minors_int(&scaled);
    Ok(minors.len() == size && minors.iter().all(|x| x.is_positive()))
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    n: usize,
    order: &'static str,
    entries: &'a [Vec<String>],
}

/// `{"n": n, "order": "lex", "entries": [[...]]}`.
pub fn matrix_json(n: usize, entries: &[Vec<String>]) -> serde_json::Value {
    serde_json::to_value(MatrixJson {
        n,
        order: "lex",
        entries,
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn build_examples() {
        assert_eq!(
            ZagierMatrix::build(1).unwrap().entry_texts(),
            vec![vec!["1".to_string()]]
        );
        let m2 = ZagierMatrix::build(2).unwrap();
        assert_eq!(m2.entry_texts(), vec![vec!["1", "q"], vec!["q", "1"]]);
        let m3 = ZagierMatrix::build(3).unwrap();
        let mut row: Vec<u32> = (0..6).map(|j| m3.exponent(0, j)).collect();
        row.sort();
        assert_eq!(row, vec![0, 1, 1, 2, 2, 3]);
        assert!(ZagierMatrix::build(0).is_err());
        assert!(ZagierMatrix::build(7).is_err());
    }

    #[test]
    fn structural_invariants() {
        for n in 1..=5 {
            let m = ZagierMatrix::build(n).unwrap();
            assert!(m.is_symmetric());
            assert!(m.has_unit_diagonal());
            assert!(m.exponents().iter().all(|&e| e <= m.max_exponent()));
        }
    }

    #[test]
    fn small_determinants() {
        assert_eq!(ZagierMatrix::build(1).unwrap().determinant(), ZPoly::one());
        assert_eq!(
            ZagierMatrix::build(2).unwrap().determinant(),
            ZPoly::from_i64s(&[1, 0, -1])
        );
        let expected3 = one_minus_q_pow(2).pow(6).mul(&one_minus_q_pow(6));
        let m3 = ZagierMatrix::build(3).unwrap();
        assert_eq!(m3.determinant(), expected3);
        assert_eq!(m3.determinant_multimodular(), expected3);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(zagier_formula(1), ZPoly::one());
        assert_eq!(zagier_formula(2), ZPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(zagier_exponents(4), vec![(1, 36), (2, 8), (3, 2), (4, 0)]);
        assert_eq!(zagier_formula(3).degree(), Some(18));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(1), ZPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(delta(2), one_minus_q_pow(2).mul(&one_minus_q_pow(6)));
        assert_eq!(delta(3), delta(2).mul(&one_minus_q_pow(12)));
    }

    #[test]
    fn specialized_determinant_matches_formula() {
        let m = ZagierMatrix::build(3).unwrap();
        for q0 in [r(1, 2), r(-2, 3), r(0, 1), r(5, 1)] {
            assert_eq!(m.determinant_at(&q0), zagier_formula_at(3, &q0));
        }
    }

    #[test]
    fn inverse_n2() {
        let m = ZagierMatrix::build(2).unwrap();
        let inv = m.invert(&QRational::q()).unwrap();
        assert_eq!(
            m.specialize(&QRational::q()).mul(&inv).unwrap(),
            Matrix::identity(2)
        );
        let at_half = m.invert(&r(1, 2)).unwrap();
        assert_eq!(at_half.get(0, 0), &r(4, 3));
        assert!(matches!(m.invert(&r(1, 1)), Err(Error::Singular(_))));
    }

    #[test]
    fn integrality_small() {
        let rep = check_integrality(2).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.entries[0][0], "1 - q^6");
        assert_eq!(rep.entries[0][1], "-q + q^7");
        assert!(check_integrality(1).unwrap().holds);
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_probe(2, &r(0, 1)).unwrap());
        assert!(positivity_probe(3, &r(1, 2)).unwrap());
        assert!(positivity_probe(3, &r(-9, 10)).unwrap());
        assert!(matches!(
            positivity_probe(2, &r(1, 1)),
            Err(Error::Precondition(_))
        ));
    }
}
