//! The group algebra of `S_n` with exact coefficients, the element
//! `α_n = Σ_ρ q^{I(ρ)} ρ` and its inverse.

use std::collections::BTreeMap;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactField, Matrix};
use crate::permutation::{all_permutations, Permutation};
use crate::scalar::Scalar;

/// Finitely supported map `S_n → S`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<S> {
    n: usize,
    terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The identity element `e`.
    pub fn identity(n: usize) -> Self {
        Self::basis(Permutation::identity(n), S::one())
    }

    pub fn basis(perm: Permutation, coeff: S) -> Self {
        let mut out = Self::zero(perm.degree());
        out.add_term(perm, coeff);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, S)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (perm, c) in terms {
            if perm.degree() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: perm.degree(),
                });
            }
            out.add_term(perm, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, perm: Permutation, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(perm) {
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

    pub fn coeff(&self, perm: &Permutation) -> S {
        self.terms.get(perm).cloned().unwrap_or_else(S::zero)
    }

    /// Terms in lexicographic permutation order.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &S)> {
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
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x.mul(c));
        }
        out
    }

    /// Convolution: the coefficient of `ρ` is `Σ_{σ∘τ = ρ} a(σ) b(τ)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.compose_unchecked(t), a.mul(b));
            }
        }
        Ok(out)
    }

    /// Map every coefficient through `f` (e.g. specialization of `q`).
    pub fn try_map<T: Scalar>(
        &self,
        mut f: impl FnMut(&S) -> Result<T>,
    ) -> Result<GroupAlgebraElement<T>> {
        let mut out = GroupAlgebraElement::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c)?);
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

/// `α_n = Σ_ρ q^{I(ρ)} ρ`.
pub fn alpha<S: Scalar>(n: usize, q: &S) -> GroupAlgebraElement<S> {
    let mut out = GroupAlgebraElement::zero(n);
    for p in all_permutations(n) {
        let c = q.pow(p.inversions() as u32);
        out.add_term(p, c);
    }
    out
}

/// `α_n^{-1}`, from one solve against the matrix of left multiplication by
/// `α_n`: `L[ρ][τ] = q^{I(ρ∘τ^{-1})}`, right-hand side `e`.
pub fn alpha_inverse<S: ExactField>(n: usize, q: &S) -> Result<GroupAlgebraElement<S>> {
    let perms = all_permutations(n);
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let max = n * n.saturating_sub(1) / 2;
    let powers: Vec<S> = (0..=max as u32).map(|e| q.pow(e)).collect();
    let m = perms.len();
    let lhs = Matrix::from_fn(m, m, |i, j| {
        powers[perms[i].compose_unchecked(&inverses[j]).inversions()].clone()
    });
    // identity is first in lexicographic order
    let rhs = Matrix::from_fn(m, 1, |i, _| if i == 0 { S::one() } else { S::zero() });
    let x = S::solve(&lhs, &rhs).map_err(|e| match e {
        Error::Singular(_) => Error::Singular(format!(" at q = {q}")),
        other => other,
    })?;
    GroupAlgebraElement::from_terms(
        n,
        perms
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, x.get(i, 0).clone())),
    )
}

impl<S: Scalar> Serialize for GroupAlgebraElement<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            perm: &'a Permutation,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(perm, c)| Term {
                perm,
                coeff: c.canonical_text(),
            })
            .collect();
        let mut st = s.serialize_struct("GroupAlgebraElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
