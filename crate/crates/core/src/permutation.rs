//! Permutations of `{1..n}` in one-line notation, inversion statistics, the
//! cycles `T_{1k}` and the product sets `S_{n,p}`, plus the ordered-tuple
//! operations (concatenation, reversal, relative inversion count) used to
//! describe Fock-space rearrangements.
//!
//! Composition is fixed crate-wide as `(a ∘ b)(i) = a(b(i))`. A permutation
//! acts on a tuple by `(π·k)_i = k_{π(i)}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Bijection of `{1..n}`; `images[i-1] = π(i)`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-line notation.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `π(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// Number of pairs `i < j` with `π(i) > π(j)`.
    pub fn inversions(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { images }
    }

    /// Rearranged tuple `(k_{π(1)}, ..., k_{π(n)})`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.degree());
        self.images
            .iter()
            .map(|&j| items[j as usize - 1].clone())
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![Permutation {
        images: current.clone(),
    }];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(Permutation {
            images: current.clone(),
        });
    }
    out
}

/// The cycle sending `[1..n]` to `[k, 1, ..., k-1, k+1, ..., n]`.
pub fn t1k(n: usize, k: usize) -> Result<Permutation> {
    if k < 2 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            range: format!("2..={n}"),
        });
    }
    let images = (1..=n)
        .map(|i| match i {
            1 => k,
            i if i <= k => i - 1,
            i => i,
        } as u8)
        .collect();
    Ok(Permutation { images })
}

/// `S_{n,p}`: products `T_{1k_1} ∘ ... ∘ T_{1k_p}` over `1 < k_1 < ... < k_p ≤ n`,
/// in the order the index sets are enumerated (lexicographic in `k`).
pub fn enumerate_snp(n: usize, p: usize) -> Result<Vec<Permutation>> {
    Ok(snp_with_indices(n, p)?
        .into_iter()
        .map(|(_, perm)| perm)
        .collect())
}

/// Like [`enumerate_snp`] but also returns the index sets `k_1 < ... < k_p`.
pub fn snp_with_indices(n: usize, p: usize) -> Result<Vec<(Vec<usize>, Permutation)>> {
    if n == 0 || p >= n {
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            range: format!("0..{n}"),
        });
    }
    let mut out = Vec::new();
    for ks in combinations(&(2..=n).collect::<Vec<_>>(), p) {
        let mut perm = Permutation::identity(n);
        for &k in &ks {
            perm = perm.compose_unchecked(&t1k(n, k)?);
        }
        out.push((ks, perm));
    }
    Ok(out)
}

pub(crate) fn combinations<T: Clone>(items: &[T], p: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], p: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < p - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, p, 0, &mut Vec::new(), &mut out);
    out
}

/// Ordered tuple of pairwise-distinct mode labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedTuple(Vec<u64>);

impl OrderedTuple {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        for (i, a) in entries.iter().enumerate() {
            if entries[..i].contains(a) {
                return Err(Error::RepeatedEntry(*a));
            }
        }
        Ok(OrderedTuple(entries))
    }

    pub fn empty() -> Self {
        OrderedTuple(Vec::new())
    }

    pub(crate) fn from_distinct(entries: Vec<u64>) -> Self {
        debug_assert!(OrderedTuple::new(entries.clone()).is_ok());
        OrderedTuple(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, mode: u64) -> bool {
        self.0.contains(&mode)
    }

    /// Order-reversed tuple (the bar operation).
    pub fn reversed(&self) -> Self {
        OrderedTuple(self.0.iter().rev().copied().collect())
    }

    /// `self ⊔ other`: all of `self` ordered before all of `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OrderedTuple::new(v)
    }

    /// `self - sub`: entries not in `sub`, inherited order.
    pub fn minus(&self, sub: &Self) -> Self {
        OrderedTuple(
            self.0
                .iter()
                .copied()
                .filter(|x| !sub.contains(*x))
                .collect(),
        )
    }

    /// Is `sub` a subsequence of `self` (same relative order)?
    pub fn has_subsequence(&self, sub: &Self) -> bool {
        let mut it = self.0.iter();
        sub.0.iter().all(|x| it.any(|y| y == x))
    }

    pub fn smallest(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn largest(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// All order-preserving sub-tuples of size `p`.
    pub fn subsets(&self, p: usize) -> Vec<OrderedTuple> {
        combinations(&self.0, p)
            .into_iter()
            .map(OrderedTuple)
            .collect()
    }
}

impl fmt::Debug for OrderedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for OrderedTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The permutation `σ` with `σ·reference = rearranged`.
pub fn rearrangement(reference: &OrderedTuple, rearranged: &OrderedTuple) -> Result<Permutation> {
    let not = || Error::NotARearrangement(rearranged.0.clone(), reference.0.clone());
    if reference.len() != rearranged.len() {
        return Err(not());
    }
    let images = rearranged
        .0
        .iter()
        .map(|x| {
            reference
                .0
                .iter()
                .position(|y| y == x)
                .map(|p| (p + 1) as u8)
                .ok_or_else(not)
        })
        .collect::<Result<Vec<u8>>>()?;
    Permutation::new(images).map_err(|_| not())
}

/// `I_A(σA) = I(σ)`.
pub fn relative_inversions(reference: &OrderedTuple, rearranged: &OrderedTuple) -> Result<usize> {
    Ok(rearrangement(reference, rearranged)?.inversions())
}

/// `(K - J) ⊔ J` and its inversion count relative to `K`.
pub fn split_concat(k: &OrderedTuple, j: &OrderedTuple) -> Result<(OrderedTuple, usize)> {
    if !k.has_subsequence(j) {
        return Err(Error::NotASubset(j.0.clone(), k.0.clone()));
    }
    let joined = k.minus(j).concat(j)?;
    let inv = relative_inversions(k, &joined)?;
    Ok((joined, inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u8]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn t(v: &[u64]) -> OrderedTuple {
        OrderedTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Permutation::identity(5).inversions(), 0);
        assert_eq!(p(&[3, 1, 2]).inversions(), 2);
        for n in 2..=7 {
            for k in 2..=n {
                assert_eq!(t1k(n, k).unwrap().inversions(), k - 1);
            }
        }
    }

    #[test]
    fn composition_examples() {
        let a = p(&[2, 3, 1]);
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let t = t1k(2, 2).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        assert!(matches!(
            a.compose(&Permutation::identity(2)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        assert_eq!(p(&[3, 1, 2]).inverse().inversions(), 2);
        assert!(Permutation::identity(4).inverse().is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn t1k_examples() {
        assert_eq!(t1k(3, 2).unwrap(), p(&[2, 1, 3]));
        assert_eq!(t1k(4, 4).unwrap(), p(&[4, 1, 2, 3]));
        assert!(t1k(4, 1).is_err());
        assert!(t1k(4, 5).is_err());
    }

    #[test]
    fn snp_examples() {
        assert_eq!(enumerate_snp(4, 0).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(enumerate_snp(2, 1).unwrap(), vec![p(&[2, 1])]);
        assert_eq!(enumerate_snp(5, 2).unwrap().len(), 6);
        assert!(enumerate_snp(3, 3).is_err());
        // T12 ∘ T13 reverses the tuple (inversions add up to 1 + 2)
        assert_eq!(enumerate_snp(3, 2).unwrap(), vec![p(&[3, 2, 1])]);
    }

    #[test]
    fn lexicographic_enumeration() {
        let s3 = all_permutations(3);
        let expected: Vec<Permutation> = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(s3, expected);
        assert_eq!(all_permutations(1), vec![Permutation::identity(1)]);
        assert_eq!(all_permutations(5).len(), 120);
    }

    #[test]
    fn relative_inversion_examples() {
        let a = t(&[4, 8, 15, 16]);
        assert_eq!(relative_inversions(&a, &a).unwrap(), 0);
        assert_eq!(relative_inversions(&t(&[5, 9]), &t(&[9, 5])).unwrap(), 1);
        assert_eq!(relative_inversions(&a, &a.reversed()).unwrap(), 6);
        assert!(relative_inversions(&a, &t(&[4, 8, 15, 23])).is_err());
    }

    #[test]
    fn split_concat_examples() {
        let k = t(&[1, 2, 3]);
        assert_eq!(split_concat(&k, &k).unwrap(), (k.clone(), 0));
        assert_eq!(
            split_concat(&t(&[1, 2]), &t(&[1])).unwrap(),
            (t(&[2, 1]), 1)
        );
        assert_eq!(split_concat(&k, &t(&[2])).unwrap(), (t(&[1, 3, 2]), 1));
        assert!(split_concat(&k, &t(&[3, 1])).is_err());
        assert!(split_concat(&k, &t(&[4])).is_err());
    }

    #[test]
    fn tuples_reject_repeats() {
        assert_eq!(OrderedTuple::new(vec![3, 3]), Err(Error::RepeatedEntry(3)));
    }
}
