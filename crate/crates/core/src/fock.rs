//! Rewriting engine for the q-deformed Fock space.
//!
//! A basis tuple `(k_1, ..., k_n)` stands for `a†(k_n)⋯a†(k_1)|0⟩`, so
//! creation appends on the right and `a(k)` acting on the tuple picks up
//! `q^{n-j}` when `k = k_j` (it commutes past `n - j` creators first).
//! Everything else here, inner products and the energy operator included,
//! is built from those two moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::energy::{q_labels, CoefficientTable, Method, XGroupPolynomial};
use crate::error::{Error, Result};
use crate::linalg::{ExactField, Matrix};
use crate::permutation::{all_permutations, OrderedTuple};
use crate::scalar::{rational_text, Scalar};

pub type Mode = u64;

/// Finite linear combination of basis tuples with pairwise-distinct modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState<S> {
    terms: BTreeMap<OrderedTuple, S>,
}

impl<S: Scalar> Default for FockState<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FockState<S> {
    pub fn zero() -> Self {
        FockState {
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum() -> Self {
        Self::basis(OrderedTuple::empty())
    }

    pub fn basis(t: OrderedTuple) -> Self {
        Self::from_terms([(t, S::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OrderedTuple, S)>) -> Self {
        let mut out = Self::zero();
        for (t, c) in terms {
            out.add_term(t, c);
        }
        out
    }

    fn add_term(&mut self, t: OrderedTuple, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&OrderedTuple, &S)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, t: &OrderedTuple) -> S {
        self.terms.get(t).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every mode appearing in some basis tuple.
    pub fn modes(&self) -> BTreeSet<Mode> {
        self.terms
            .keys()
            .flat_map(|t| t.entries().iter().copied())
            .collect()
    }

    /// Largest particle number in the support.
    pub fn max_particles(&self) -> usize {
        self.terms.keys().map(OrderedTuple::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(t, x)| (t.clone(), x.mul(c))))
    }

    /// `a†(k)`: appends `k` to every basis tuple.
    pub fn create(&self, k: Mode) -> Result<Self> {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            if t.contains(k) {
                return Err(Error::RepeatedMode(k));
            }
            let mut v = t.entries().to_vec();
            v.push(k);
            out.add_term(OrderedTuple::from_distinct(v), c.clone());
        }
        Ok(out)
    }

    /// `a(k)`, from `a(k)a†(ℓ) = q a†(ℓ)a(k) + δ_{kℓ}` and `a(k)|0⟩ = 0`.
    pub fn annihilate(&self, k: Mode, q: &S) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let n = t.len();
            // at most one match since modes are distinct
            if let Some(j) = t.entries().iter().position(|&m| m == k) {
                let mut v = t.entries().to_vec();
                v.remove(j);
                let factor = q.pow((n - 1 - j) as u32);
                out.add_term(OrderedTuple::from_distinct(v), c.mul(&factor));
            }
        }
        out
    }

    /// Apply `a(t_1)⋯a(t_m)` (rightmost first).
    fn annihilate_all(&self, t: &[Mode], q: &S) -> Self {
        t.iter()
            .rev()
            .fold(self.clone(), |s, &k| s.annihilate(k, q))
    }

    /// Vacuum amplitude.
    pub fn vacuum_amplitude(&self) -> S {
        self.amplitude(&OrderedTuple::empty())
    }

    /// `"coeff * |k_1,...,k_n>"` lines in basis-tuple order; `"0"` if empty.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(t, c)| format!("{} * {}", c.canonical_text(), ket(t)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn ket(t: &OrderedTuple) -> String {
    if t.is_empty() {
        return "|0>".to_string();
    }
    let inner: Vec<String> = t.entries().iter().map(u64::to_string).collect();
    format!("|{}>", inner.join(","))
}

impl<S: Scalar> fmt::Display for FockState<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Scalar> Serialize for FockState<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            modes: &'a OrderedTuple,
            amplitude: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(modes, c)| Term {
                modes,
                amplitude: c.canonical_text(),
            })
            .collect();
        let mut st = s.serialize_struct("FockState", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `⟨x, y⟩`, bilinear over the (real) scalars. Each basis pairing is
/// computed by applying the bra's annihilators to the ket and reading off
/// the vacuum amplitude.
pub fn inner_product<S: Scalar>(x: &FockState<S>, y: &FockState<S>, q: &S) -> S {
    let mut acc = S::zero();
    for (t, a) in &x.terms {
        // x_t = a†(t_n)⋯a†(t_1)|0⟩, whose adjoint is ⟨0|a(t_1)⋯a(t_n).
        let pairing = y.annihilate_all(t.entries(), q).vacuum_amplitude();
        if !pairing.is_zero() {
            acc = acc.add(&a.mul(&pairing));
        }
    }
    acc
}

/// Exact rational energy per mode.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnergyAssignment {
    table: BTreeMap<Mode, BigRational>,
}

impl EnergyAssignment {
    pub fn new(pairs: impl IntoIterator<Item = (Mode, BigRational)>) -> Self {
        EnergyAssignment {
            table: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, k: Mode) -> Result<&BigRational> {
        self.table.get(&k).ok_or(Error::MissingEnergy(k))
    }

    pub fn set(&mut self, k: Mode, e: BigRational) {
        self.table.insert(k, e);
    }

    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.table.keys().copied()
    }

    /// `Σ_i E(k_i)`.
    pub fn total(&self, t: &OrderedTuple) -> Result<BigRational> {
        t.entries().iter().map(|&k| self.get(k).cloned()).sum()
    }
}

impl Serialize for EnergyAssignment {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let m: BTreeMap<String, String> = self
            .table
            .iter()
            .map(|(k, v)| (k.to_string(), rational_text(v)))
            .collect();
        m.serialize(s)
    }
}

/// All injective `p`-tuples drawn from `modes`.
fn injective_tuples(modes: &[Mode], p: usize) -> Vec<Vec<Mode>> {
    fn go(
        modes: &[Mode],
        p: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Mode>,
        out: &mut Vec<Vec<Mode>>,
    ) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in 0..modes.len() {
            if !used[i] {
                used[i] = true;
                cur.push(modes[i]);
                go(modes, p, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        modes,
        p,
        &mut vec![false; modes.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// `ℰ_p s` by literal operator application:
/// `ℰ_p = Σ_{k_1..k_p} Σ_{π,i} c_i(π) E(k_{π(i)}) a†(k_{π(p)})⋯a†(k_{π(1)}) a(k_1)⋯a(k_p)`,
/// with the mode sum restricted to modes present in `s`.
pub fn apply_energy_term<S: Scalar>(
    p: usize,
    coeffs: &XGroupPolynomial<S>,
    energies: &EnergyAssignment,
    s: &FockState<S>,
    q: &S,
) -> Result<FockState<S>> {
    if coeffs.n() != p {
        return Err(Error::SizeMismatch {
            left: p,
            right: coeffs.n(),
        });
    }
    let modes: Vec<Mode> = s.modes().into_iter().collect();
    for &k in &modes {
        energies.get(k)?;
    }
    let mut out = FockState::zero();
    for ks in injective_tuples(&modes, p) {
        let reduced = s.annihilate_all(&ks, q);
        if reduced.is_zero() {
            continue;
        }
        for ((pi, d), c) in coeffs.terms() {
            let kp = pi.act(&ks);
            let energy = S::from_rational(energies.get(kp[*d])?);
            let mut created = reduced.clone();
            for &k in &kp {
                created = created.create(k)?;
            }
            out = out.add(&created.scale(&c.mul(&energy)));
        }
    }
    Ok(out)
}

/// `ℰ s = Σ_p ℰ_p s`, for `p` up to the largest particle number in `s`
/// (higher terms annihilate `s`).
pub fn apply_energy<S: Scalar>(
    energies: &EnergyAssignment,
    s: &FockState<S>,
    table: &CoefficientTable<S>,
) -> Result<FockState<S>> {
    let mut out = FockState::zero();
    for p in 1..=s.max_particles() {
        let term = apply_energy_term(p, table.get(p)?, energies, s, table.q())?;
        out = out.add(&term);
    }
    Ok(out)
}

/// Does `ℰ x_t = (Σ_i E(t_i)) x_t` hold exactly?
pub fn eigen_check<S: Scalar>(
    energies: &EnergyAssignment,
    t: &OrderedTuple,
    table: &CoefficientTable<S>,
) -> Result<bool> {
    let state = FockState::basis(t.clone());
    let lhs = apply_energy(energies, &state, table)?;
    let rhs = state.scale(&S::from_rational(&energies.total(t)?));
    Ok(lhs == rhs)
}

/// One seeded eigenvalue check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenDraw {
    pub modes: Vec<Mode>,
    pub energies: EnergyAssignment,
    pub eigenvalue: String,
    pub holds: bool,
    /// `ℰ x - λ x`, rendered, when nonzero.
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub n: usize,
    pub holds: bool,
    pub seed: u64,
    pub draws: Vec<EigenDraw>,
    pub mode: String,
    pub q: String,
}

/// `draws` seeded basis states of `n` particles, each checked against
/// `ℰ x = (Σ E) x` with the product-formula coefficients at `q`.
pub fn eigen_suite<S: ExactField>(n: usize, q: &S, seed: u64, draws: usize) -> Result<EigenReport> {
    let table = CoefficientTable::compute(n, q, Method::Product)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(draws);
    for _ in 0..draws {
        let (t, energies) = random_draw(&mut rng, n);
        let state = FockState::basis(t.clone());
        let total = energies.total(&t)?;
        let diff =
            apply_energy(&energies, &state, &table)?.sub(&state.scale(&S::from_rational(&total)));
        out.push(EigenDraw {
            modes: t.entries().to_vec(),
            eigenvalue: rational_text(&total),
            holds: diff.is_zero(),
            residual: (!diff.is_zero()).then(|| diff.render()),
            energies,
        });
    }
    let (mode, q) = q_labels(q);
    Ok(EigenReport {
        n,
        holds: out.iter().all(|d| d.holds),
        seed,
        draws: out,
        mode,
        q,
    })
}

/// Greenberg's number operator at `q = 0`:
/// `n(i) = Σ_s Σ_{k_1..k_s} a†(k_1)⋯a†(k_s) a†(i) a(i) a(k_s)⋯a(k_1)`,
/// with the mode sums restricted to modes present in `s`.
pub fn greenberg_number<S: Scalar>(i: Mode, s: &FockState<S>) -> Result<FockState<S>> {
    let zero = S::zero();
    let modes: Vec<Mode> = s.modes().into_iter().collect();
    let mut out = FockState::zero();
    for len in 0..=modes.len() {
        for ks in injective_tuples(&modes, len) {
            // a(k_1) acts first
            let mut cur = ks.iter().fold(s.clone(), |st, &k| st.annihilate(k, &zero));
            cur = cur.annihilate(i, &zero);
            if cur.is_zero() {
                continue;
            }
            cur = cur.create(i)?;
            for &k in ks.iter().rev() {
                cur = cur.create(k)?;
            }
            out = out.add(&cur);
        }
    }
    Ok(out)
}

/// Coefficients for `ℰ_n` at a value of `q`, found only from the eigenvalue
/// requirement on the rewriting engine: with energy indicators `E_m` for each
/// mode `m` of the reference state `x_K`, `K = (1..n)`, demand
/// `ℰ_n[E_m] x_K = x_K - Σ_{p<n} ℰ_p[E_m] x_K` and solve for the `n!·n`
/// unknowns. Lower degrees are obtained the same way, recursively.
pub fn brute_force_coefficients<S: ExactField>(n: usize, q: &S) -> Result<CoefficientTable<S>> {
    let mut table = CoefficientTable::empty(q.clone());
    for p in 1..=n {
        let c = brute_force_degree(p, &table)?;
        table.insert(c);
    }
    Ok(table)
}

fn brute_force_degree<S: ExactField>(
    n: usize,
    lower: &CoefficientTable<S>,
) -> Result<XGroupPolynomial<S>> {
    let q = lower.q();
    let perms = all_permutations(n);
    let k: Vec<Mode> = (1..=n as Mode).collect();
    let reference = FockState::<S>::basis(OrderedTuple::from_distinct(k.clone()));
    // Rearrangements of K, indexed like `perms`.
    let outputs: Vec<OrderedTuple> = perms
        .iter()
        .map(|p| OrderedTuple::from_distinct(p.act(&k)))
        .collect();
    let out_index = |t: &[Mode]| {
        outputs
            .iter()
            .position(|o| o.entries() == t)
            .expect("rearrangement of K")
    };
    let rows = perms.len() * n;
    let row = |t: usize, m: Mode| t * n + (m as usize - 1);
    let col = |pi: usize, d: usize| pi * n + d;

    let mut a = vec![S::zero(); rows * rows];
    for ks in injective_tuples(&k, n) {
        let amp = reference.annihilate_all(&ks, q).vacuum_amplitude();
        if amp.is_zero() {
            continue;
        }
        for (pi_idx, pi) in perms.iter().enumerate() {
            let kp = pi.act(&ks);
            let t = out_index(&kp);
            for (d, &m) in kp.iter().enumerate() {
                let slot = &mut a[row(t, m) * rows + col(pi_idx, d)];
                *slot = slot.add(&amp);
            }
        }
    }
    let mut b = vec![S::zero(); rows];
    for m in 1..=n as Mode {
        let energies = EnergyAssignment::new(k.iter().map(|&x| {
            let v = if x == m { 1 } else { 0 };
            (x, BigRational::from_integer(v.into()))
        }));
        let mut lower_action = FockState::zero();
        for p in 1..n {
            lower_action = lower_action.add(&apply_energy_term(
                p,
                lower.get(p)?,
                &energies,
                &reference,
                q,
            )?);
        }
        let target = reference.sub(&lower_action);
        for (t, c) in target.terms() {
            b[row(out_index(t.entries()), m)] = c.clone();
        }
    }
    let a = Matrix::from_fn(rows, rows, |i, j| a[i * rows + j].clone());
    let b = Matrix::from_fn(rows, 1, |i, _| b[i].clone());
    let x = S::solve(&a, &b).map_err(|e| match e {
        Error::Singular(_) => Error::Singular(format!(" at q = {q}")),
        other => other,
    })?;
    XGroupPolynomial::from_terms(
        n,
        perms
            .iter()
            .enumerate()
            .flat_map(|(pi_idx, pi)| (0..n).map(move |d| (pi.clone(), d, pi_idx)))
            .map(|(pi, d, pi_idx)| (pi, d, x.get(col(pi_idx, d), 0).clone())),
    )
}

/// Random basis tuple of `n` distinct modes in `1..=50` with random rational
/// energies (numerators in `-20..=20`, denominators in `1..=9`).
pub fn random_draw(rng: &mut impl Rng, n: usize) -> (OrderedTuple, EnergyAssignment) {
    let mut pool: Vec<Mode> = (1..=50).collect();
    pool.shuffle(rng);
    let modes: Vec<Mode> = pool[..n].to_vec();
    let energies = EnergyAssignment::new(modes.iter().map(|&m| {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=9);
        (m, BigRational::new(num.into(), den.into()))
    }));
    (OrderedTuple::from_distinct(modes), energies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QRational;

    fn t(v: &[u64]) -> OrderedTuple {
        OrderedTuple::new(v.to_vec()).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn create_examples() {
        let v = FockState::<QRational>::vacuum();
        assert_eq!(v.create(5).unwrap(), FockState::basis(t(&[5])));
        let x3 = FockState::<QRational>::basis(t(&[3]));
        assert_eq!(x3.create(7).unwrap(), FockState::basis(t(&[3, 7])));
        assert_eq!(x3.create(3), Err(Error::RepeatedMode(3)));
    }

    #[test]
    fn annihilate_examples() {
        let q = QRational::q();
        let x5 = FockState::<QRational>::basis(t(&[5]));
        assert_eq!(x5.annihilate(5, &q), FockState::vacuum());
        let x37 = FockState::<QRational>::basis(t(&[3, 7]));
        assert_eq!(x37.annihilate(3, &q), FockState::basis(t(&[7])).scale(&q));
        assert!(x37.annihilate(9, &q).is_zero());
        assert!(FockState::<QRational>::vacuum().annihilate(1, &q).is_zero());
    }

    #[test]
    fn inner_product_examples() {
        let q = QRational::q();
        let x37 = FockState::<QRational>::basis(t(&[3, 7]));
        let x73 = FockState::<QRational>::basis(t(&[7, 3]));
        let x3 = FockState::<QRational>::basis(t(&[3]));
        assert_eq!(inner_product(&x37, &x37, &q), QRational::one());
        assert_eq!(inner_product(&x73, &x37, &q), q);
        assert!(inner_product(&x3, &x37, &q).is_zero());
    }

    #[test]
    fn render_text() {
        let q = QRational::q();
        let s = FockState::basis(t(&[3, 7]))
            .scale(&q)
            .add(&FockState::basis(t(&[7, 3])));
        assert_eq!(s.render(), "q * |3,7>\n1 * |7,3>");
        assert_eq!(FockState::<QRational>::zero().render(), "0");
        let js = serde_json::to_string(&FockState::<QRational>::basis(t(&[2]))).unwrap();
        assert_eq!(js, r#"{"terms":[{"modes":[2],"amplitude":"1"}]}"#);
    }

    #[test]
    fn commutation_relation_on_small_states() {
        let q = QRational::q();
        let half = QRational::from_rational(r(1, 2));
        let s = FockState::basis(t(&[3, 7]))
            .add(&FockState::basis(t(&[7, 1])).scale(&half))
            .add(&FockState::basis(t(&[1, 3, 7])).scale(&q));
        for k in [1, 3, 7, 9] {
            for l in [2, 9] {
                let lhs = s
                    .create(l)
                    .unwrap()
                    .annihilate(k, &q)
                    .sub(&s.annihilate(k, &q).create(l).unwrap().scale(&q));
                let rhs = if k == l { s.clone() } else { FockState::zero() };
                assert_eq!(lhs, rhs, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn greenberg_number_counts_occupation() {
        let s = FockState::<BigRational>::basis(t(&[7, 3]));
        assert_eq!(greenberg_number(3, &s).unwrap(), s);
        assert_eq!(greenberg_number(7, &s).unwrap(), s);
        assert!(greenberg_number(5, &s).unwrap().is_zero());
    }

    #[test]
    fn brute_force_n2_at_half() {
        let table = brute_force_coefficients(2, &r(1, 2)).unwrap();
        let c = table.get(2).unwrap();
        let e = crate::permutation::Permutation::identity(2);
        let tt = crate::permutation::t1k(2, 2).unwrap();
        assert_eq!(c.c(&e, 1), r(4, 3));
        assert_eq!(c.c(&e, 2), r(1, 3));
        assert_eq!(c.c(&tt, 1), r(-2, 3));
        assert_eq!(c.c(&tt, 2), r(-2, 3));
        assert_eq!(
            table
                .get(1)
                .unwrap()
                .c(&crate::permutation::Permutation::identity(1), 1),
            r(1, 1)
        );
    }

    #[test]
    fn missing_energy_is_reported() {
        let q = QRational::q();
        let table = CoefficientTable::compute(1, &q, crate::energy::Method::Product).unwrap();
        let s = FockState::basis(t(&[4]));
        let e = EnergyAssignment::new([(5, r(1, 1))]);
        assert_eq!(apply_energy(&e, &s, &table), Err(Error::MissingEnergy(4)));
    }
}
