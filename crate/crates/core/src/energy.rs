//! Coefficients `c_i(q,π)` of the energy operator, packaged as elements of
//! `C[X][S_n]` with `c_i(q,π)` stored at `(π, X^{i-1})`.
//!
//! Two formulas are implemented independently: the product
//! `α_n^{-1}(e - qXT_{12})(e - q²XT_{13})⋯(e - q^{n-1}XT_{1n})` and the double
//! sum over `S_{n,i-1}` read off the full inverse matrix. `R_p(q,X)` comes in
//! its defining form `α_p · C` and its closed form, which needs no inversion.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    apply_energy, eigen_check, greenberg_number, random_draw, EnergyAssignment, FockState,
};
use crate::group_algebra::{alpha, alpha_inverse, GroupAlgebraElement};
use crate::linalg::ExactField;
use crate::permutation::{all_permutations, snp_with_indices, t1k, Permutation};
use crate::scalar::Scalar;
use crate::zagier::ZagierMatrix;

/// Finitely supported map `(π, X-degree) → S`, X-degrees at most `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XGroupPolynomial<S> {
    n: usize,
    terms: BTreeMap<(Permutation, usize), S>,
}

impl<S: Scalar> XGroupPolynomial<S> {
    pub fn zero(n: usize) -> Self {
        XGroupPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n);
        out.add_term(Permutation::identity(n), 0, S::one());
        out
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Permutation, usize, S)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n);
        for (p, d, c) in terms {
            if p.degree() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
            if d >= n.max(1) {
                return Err(Error::OutOfRange {
                    what: "X-degree",
                    value: d as i64,
                    range: format!("0..{}", n.max(1)),
                });
            }
            out.add_term(p, d, c);
        }
        Ok(out)
    }

    /// Degree-zero embedding of a group algebra element.
    pub fn from_group_element(a: &GroupAlgebraElement<S>) -> Self {
        let mut out = Self::zero(a.n());
        for (p, c) in a.terms() {
            out.add_term(p.clone(), 0, c.clone());
        }
        out
    }

    fn add_term(&mut self, p: Permutation, d: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((p, d)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient at `(π, X^d)`.
    pub fn coeff(&self, p: &Permutation, d: usize) -> S {
        self.terms
            .get(&(p.clone(), d))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// `c_i(q, π)`, with `i` counted from 1.
    pub fn c(&self, p: &Permutation, i: usize) -> S {
        assert!(i >= 1, "i counts from 1");
        self.coeff(p, i - 1)
    }

    /// Nonzero terms `((π, d), value)` ordered by permutation, then degree.
    pub fn terms(&self) -> impl Iterator<Item = (&(Permutation, usize), &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((p, d), c) in &other.terms {
            out.add_term(p.clone(), *d, c.clone());
        }
        Ok(out)
    }

    /// Product in `C[X][S_n]`; fails if an X-degree would exceed `n - 1`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for ((s, ds), a) in &self.terms {
            for ((t, dt), b) in &other.terms {
                out.add_term(s.compose_unchecked(t), ds + dt, a.mul(b));
            }
        }
        if let Some(((_, d), _)) = out.terms.iter().find(|((_, d), _)| *d >= self.n.max(1)) {
            return Err(Error::OutOfRange {
                what: "X-degree",
                value: *d as i64,
                range: format!("0..{}", self.n.max(1)),
            });
        }
        Ok(out)
    }

    /// Same coefficients with one entry shifted by `delta`.
    pub fn perturbed(&self, p: &Permutation, d: usize, delta: &S) -> Self {
        let mut out = self.clone();
        out.add_term(p.clone(), d, delta.clone());
        out
    }

    pub fn try_map<T: Scalar>(
        &self,
        mut f: impl FnMut(&S) -> Result<T>,
    ) -> Result<XGroupPolynomial<T>> {
        let mut out = XGroupPolynomial::zero(self.n);
        for ((p, d), c) in &self.terms {
            out.add_term(p.clone(), *d, f(c)?);
        }
        Ok(out)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl<S: Scalar> Serialize for XGroupPolynomial<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            perm: &'a Permutation,
            i: usize,
            value: String,
        }
        let coeffs: Vec<Entry> = self
            .terms
            .iter()
            .map(|((perm, d), c)| Entry {
                perm,
                i: d + 1,
                value: c.canonical_text(),
            })
            .collect();
        let mut st = s.serialize_struct("XGroupPolynomial", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `c_i(q,π)` from `α_n^{-1}(e - qXT_{12})⋯(e - q^{n-1}XT_{1n})`, factors in
/// ascending `j`.
pub fn coeffs_via_product<S: ExactField>(n: usize, q: &S) -> Result<XGroupPolynomial<S>> {
    let mut acc = XGroupPolynomial::from_group_element(&alpha_inverse(n, q)?);
    for j in 2..=n {
        let mut factor = XGroupPolynomial::identity(n);
        factor.add_term(t1k(n, j)?, 1, q.pow(j as u32 - 1).neg());
        acc = acc.multiply(&factor)?;
    }
    Ok(acc)
}

/// `c_i(q,π) = (-1)^{i-1} Σ_{τ∈S_{n,i-1}} A_n^{-1}(π^{-1}, τ^{-1}) A_n(τ, e)`,
/// using the full inverse matrix.
pub fn coeffs_via_explicit<S: ExactField>(n: usize, q: &S) -> Result<XGroupPolynomial<S>> {
    let m = ZagierMatrix::build(n)?;
    let inv = m.invert(q)?;
    let idx = |p: &Permutation| m.index_of(p).expect("same degree");
    let mut out = XGroupPolynomial::zero(n);
    for i in 1..=n {
        let taus = snp_with_indices(n, i - 1)?;
        for pi in m.perms() {
            let row = idx(&pi.inverse());
            let mut acc = S::zero();
            for (_, tau) in &taus {
                let a_tau_e = q.pow(tau.inversions() as u32);
                acc = acc.add(&inv.get(row, idx(&tau.inverse())).mul(&a_tau_e));
            }
            if i % 2 == 0 {
                acc = acc.neg();
            }
            out.add_term(pi.clone(), i - 1, acc);
        }
    }
    Ok(out)
}

/// `R_p(q,X) = α_p · Σ c_i(q,π) X^{i-1} π`.
pub fn r_p_defining<S: Scalar>(q: &S, coeffs: &XGroupPolynomial<S>) -> Result<XGroupPolynomial<S>> {
    XGroupPolynomial::from_group_element(&alpha(coeffs.n(), q)).multiply(coeffs)
}

/// `R_p(q,X) = Σ_s Σ_{1<m_1<⋯<m_s≤p} (-1)^s q^{(m_1-1)+⋯+(m_s-1)} X^s T_{1m_1}⋯T_{1m_s}`.
pub fn r_p_closed<S: Scalar>(p: usize, q: &S) -> Result<XGroupPolynomial<S>> {
    let mut out = XGroupPolynomial::zero(p);
    for s in 0..p {
        for (ms, perm) in snp_with_indices(p, s)? {
            let weight: usize = ms.iter().map(|m| m - 1).sum();
            let mut c = q.pow(weight as u32);
            if s % 2 == 1 {
                c = c.neg();
            }
            out.add_term(perm, s, c);
        }
    }
    Ok(out)
}

/// The `q = 0` pattern: `c_i(0,π) = 1` if `(i,π) = (1,e)`, else 0.
pub fn kronecker<S: Scalar>(n: usize) -> XGroupPolynomial<S> {
    XGroupPolynomial::identity(n)
}

/// Which coefficient formula to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Product,
    Explicit,
}

/// Coefficients for `ℰ_1, ..., ℰ_N` at one value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable<S> {
    q: S,
    by_degree: BTreeMap<usize, XGroupPolynomial<S>>,
}

impl<S: Scalar> CoefficientTable<S> {
    pub fn empty(q: S) -> Self {
        CoefficientTable {
            q,
            by_degree: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, c: XGroupPolynomial<S>) {
        self.by_degree.insert(c.n(), c);
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn get(&self, p: usize) -> Result<&XGroupPolynomial<S>> {
        self.by_degree
            .get(&p)
            .ok_or(Error::CoefficientsUnavailable(p))
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.keys().next_back().copied().unwrap_or(0)
    }
}

impl<S: ExactField> CoefficientTable<S> {
    pub fn compute(max_n: usize, q: &S, method: Method) -> Result<Self> {
        let mut table = Self::empty(q.clone());
        for p in 1..=max_n {
            table.insert(match method {
                Method::Product => coeffs_via_product(p, q)?,
                Method::Explicit => coeffs_via_explicit(p, q)?,
            });
        }
        Ok(table)
    }
}

/// `("symbolic", "symbolic")` or `("specialized", "<q>")`.
pub fn q_labels<S: Scalar>(q: &S) -> (String, String) {
    if S::is_symbolic() {
        ("symbolic".into(), "symbolic".into())
    } else {
        ("specialized".into(), q.canonical_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Remark1Violation {
    pub perm: Permutation,
    pub i: usize,
    pub c_i: String,
    pub c_pi_i: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Remark1Report {
    pub n: usize,
    pub holds: bool,
    pub pairs_checked: usize,
    pub violations: Vec<Remark1Violation>,
    pub mode: String,
    pub q: String,
}

/// Compare `c_i(q,π)` with `c_{π(i)}(q,π)` for every `(i, π)`.
pub fn check_remark1<S: Scalar>(coeffs: &XGroupPolynomial<S>, q: &S) -> Remark1Report {
    let n = coeffs.n();
    let mut violations = Vec::new();
    let perms = all_permutations(n);
    for pi in &perms {
        for i in 1..=n {
            let a = coeffs.c(pi, i);
            let b = coeffs.c(pi, pi.apply(i));
            if a != b {
                violations.push(Remark1Violation {
                    perm: pi.clone(),
                    i,
                    c_i: a.canonical_text(),
                    c_pi_i: b.canonical_text(),
                });
            }
        }
    }
    let (mode, q) = q_labels(q);
    Remark1Report {
        n,
        holds: violations.is_empty(),
        pairs_checked: perms.len() * n,
        violations,
        mode,
        q,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenbergReport {
    pub n: usize,
    pub holds: bool,
    /// The coefficients at `q = 0` reduce to the single term `c_1(e) = 1`.
    pub coefficients_reduce: bool,
    pub states_checked: usize,
    pub seed: u64,
    pub violations: Vec<String>,
    pub mode: String,
    pub q: String,
}

/// At `q = 0`, compare `ℰ` with `Σ_i E(i) n(i)` on random `n`-particle states.
pub fn greenberg_limit_check(n: usize, seed: u64, states: usize) -> Result<GreenbergReport> {
    let zero = BigRational::from_integer(0.into());
    let table = CoefficientTable::compute(n, &zero, Method::Product)?;
    let mut violations = Vec::new();
    let mut coefficients_reduce = true;
    for p in 1..=n {
        if table.get(p)? != &kronecker(p) {
            coefficients_reduce = false;
            violations.push(format!(
                "coefficients for p = {p} are not the q = 0 pattern"
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..states {
        let (state, energies) = random_state(&mut rng, n);
        let lhs = apply_energy(&energies, &state, &table)?;
        let mut rhs = FockState::zero();
        for i in energies.modes() {
            let e = energies.get(i)?.clone();
            rhs = rhs.add(&greenberg_number(i, &state)?.scale(&e));
        }
        if lhs != rhs {
            violations.push(format!("state #{k}: operator actions differ"));
        }
    }
    let (mode, q) = q_labels(&zero);
    Ok(GreenbergReport {
        n,
        holds: violations.is_empty(),
        coefficients_reduce,
        states_checked: states,
        seed,
        violations,
        mode,
        q,
    })
}

/// A superposition of one to three `n`-particle basis states over one set of
/// modes, with small rational amplitudes, plus energies for those modes.
fn random_state(rng: &mut ChaCha8Rng, n: usize) -> (FockState<BigRational>, EnergyAssignment) {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let (tuple, energies) = random_draw(rng, n);
    let terms = rng.gen_range(1..=3);
    let mut state = FockState::zero();
    for _ in 0..terms {
        let mut modes = tuple.entries().to_vec();
        modes.shuffle(rng);
        let amp = BigRational::new(
            rng.gen_range(1..=9i64).into(),
            rng.gen_range(1..=5i64).into(),
        );
        let t = crate::permutation::OrderedTuple::new(modes).expect("distinct");
        state = state.add(&FockState::basis(t).scale(&amp));
    }
    (state, energies)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndetectedPerturbation {
    pub perm: Permutation,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub holds: bool,
    pub perturbations: usize,
    pub detected: usize,
    pub undetected: Vec<UndetectedPerturbation>,
    pub seed: u64,
    pub mode: String,
    pub q: String,
}

/// Shift each `c_i(q,π)` of `ℰ_n` by 1 in turn and check that the eigenvalue
/// equation then fails on at least one of `draws` random basis states.
pub fn uniqueness_probe<S: ExactField>(
    n: usize,
    q: &S,
    seed: u64,
    draws: usize,
) -> Result<UniquenessReport> {
    let base = CoefficientTable::compute(n, q, Method::Product)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<_> = (0..draws).map(|_| random_draw(&mut rng, n)).collect();
    let mut undetected = Vec::new();
    let mut perturbations = 0;
    for pi in all_permutations(n) {
        for d in 0..n {
            perturbations += 1;
            let mut table = base.clone();
            table.insert(base.get(n)?.perturbed(&pi, d, &S::one()));
            let mut caught = false;
            for (t, e) in &samples {
                if !eigen_check(e, t, &table)? {
                    caught = true;
                    break;
                }
            }
            if !caught {
                undetected.push(UndetectedPerturbation {
                    perm: pi.clone(),
                    i: d + 1,
                });
            }
        }
    }
    let (mode, qt) = q_labels(q);
    Ok(UniquenessReport {
        n,
        holds: undetected.is_empty(),
        perturbations,
        detected: perturbations - undetected.len(),
        undetected,
        seed,
        mode,
        q: qt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QPoly, QRational, ZPoly};

    fn poly(cs: &[i64]) -> QRational {
        QRational::from_poly(QPoly::from_zpoly(ZPoly::from_i64s(cs)))
    }

    fn over_one_minus_q2(cs: &[i64]) -> QRational {
        poly(cs).div(&poly(&[1, 0, -1])).unwrap()
    }

    #[test]
    fn n1_is_trivial() {
        let q = QRational::q();
        let e = Permutation::identity(1);
        assert_eq!(
            coeffs_via_product(1, &q).unwrap().c(&e, 1),
            QRational::one()
        );
        assert_eq!(
            coeffs_via_explicit(1, &q).unwrap().c(&e, 1),
            QRational::one()
        );
    }

    #[test]
    fn n2_table() {
        let q = QRational::q();
        let e = Permutation::identity(2);
        let t = t1k(2, 2).unwrap();
        for c in [
            coeffs_via_product(2, &q).unwrap(),
            coeffs_via_explicit(2, &q).unwrap(),
        ] {
            assert_eq!(c.c(&e, 1), over_one_minus_q2(&[1]));
            assert_eq!(c.c(&e, 2), over_one_minus_q2(&[0, 0, 1]));
            assert_eq!(c.c(&t, 1), over_one_minus_q2(&[0, -1]));
            assert_eq!(c.c(&t, 2), over_one_minus_q2(&[0, -1]));
        }
    }

    #[test]
    fn product_equals_explicit_n3() {
        let q = QRational::q();
        assert_eq!(
            coeffs_via_product(3, &q).unwrap(),
            coeffs_via_explicit(3, &q).unwrap()
        );
    }

    #[test]
    fn q_zero_degenerates() {
        let zero = BigRational::from_integer(0.into());
        for n in 1..=4 {
            assert_eq!(coeffs_via_product(n, &zero).unwrap(), kronecker(n));
        }
    }

    #[test]
    fn r_p_examples() {
        let q = QRational::q();
        assert_eq!(r_p_closed(1, &q).unwrap(), XGroupPolynomial::identity(1));
        let expected2 = XGroupPolynomial::from_terms(
            2,
            [
                (Permutation::identity(2), 0, QRational::one()),
                (t1k(2, 2).unwrap(), 1, q.neg()),
            ],
        )
        .unwrap();
        assert_eq!(r_p_closed(2, &q).unwrap(), expected2);
        assert_eq!(
            r_p_defining(&q, &coeffs_via_product(2, &q).unwrap()).unwrap(),
            expected2
        );
        let r3 = r_p_closed(3, &q).unwrap();
        assert_eq!(r3.len(), 4);
        assert_eq!(
            r3.coeff(&Permutation::new(vec![3, 2, 1]).unwrap(), 2),
            q.pow(3)
        );
        assert_eq!(r3.coeff(&t1k(3, 3).unwrap(), 1), q.pow(2).neg());
    }

    #[test]
    fn inverse_symmetry_small() {
        let q = QRational::q();
        for n in 2..=3 {
            let rep = check_remark1(&coeffs_via_product(n, &q).unwrap(), &q);
            assert!(rep.holds, "{rep:?}");
            assert_eq!(rep.mode, "symbolic");
        }
    }

    #[test]
    fn json_shape() {
        let q = QRational::q();
        let js = serde_json::to_string(&coeffs_via_product(1, &q).unwrap()).unwrap();
        assert_eq!(js, r#"{"n":1,"coeffs":[{"perm":[1],"i":1,"value":"1"}]}"#);
    }

    #[test]
    fn degree_overflow_is_rejected() {
        let q = QRational::q();
        let x =
            XGroupPolynomial::from_terms(2, [(Permutation::identity(2), 1, q.clone())]).unwrap();
        assert!(x.multiply(&x).is_err());
    }
}
