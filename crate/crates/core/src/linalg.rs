//! Exact linear algebra.
//!
//! Two independent routes are provided:
//!
//! * fraction-free (Bareiss) elimination over `Z` and `Z[q]`, which keeps every
//!   intermediate an exact minor and defers all division to the end;
//! * a multimodular engine: reduce modulo word-sized primes, evaluate at
//!   enough points in `q`, eliminate in `F_p`, interpolate, and lift with the
//!   Chinese remainder theorem. The number of primes is fixed in advance by a
//!   Hadamard bound, so the lifted result is exact, not probabilistic.
//!
//! The second route is what makes `n = 5` symbolic and `n = 6` specialized
//! determinants feasible; the first is used for small `n` and as a cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modp::{self, Field};
use crate::scalar::{lcm_zpoly, QPoly, QRational, Scalar, ZPoly};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Clone> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }
}

/// Scalars with exact determinant and linear solve.
pub trait ExactField: Scalar {
    fn determinant(m: &Matrix<Self>) -> Result<Self>;

    /// `X` with `m · X = rhs`; `Error::Singular` if `m` is not invertible.
    fn solve(m: &Matrix<Self>, rhs: &Matrix<Self>) -> Result<Matrix<Self>>;

    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        Self::solve(m, &Matrix::identity(m.rows()))
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

fn bareiss_generic<T: Clone>(
    mut a: Vec<T>,
    n: usize,
    is_zero: impl Fn(&T) -> bool,
    one: T,
    neg: impl Fn(&T) -> T,
    // (pivot * x - l * r) / prev
    step: impl Fn(&T, &T, &T, &T, &T) -> T,
) -> T {
    if n == 0 {
        return one;
    }
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n - 1 {
        if is_zero(&a[k * n + k]) {
            let Some(r) = (k + 1..n).find(|&r| !is_zero(&a[r * n + k])) else {
                return a[k * n + k].clone(); // zero column: singular
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let l = a[i * n + k].clone();
            for j in k + 1..n {
                let x = &a[i * n + j];
                let r = &a[k * n + j];
                a[i * n + j] = step(&pivot, x, &l, r, &prev);
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if negate {
        neg(&det)
    } else {
        det
    }
}

/// Determinant over `Z[q]` by Bareiss elimination.
pub fn bareiss_det_zpoly(m: &Matrix<ZPoly>) -> ZPoly {
    assert_eq!(m.rows, m.cols);
    bareiss_generic(
        m.data.clone(),
        m.rows,
        ZPoly::is_zero,
        ZPoly::one(),
        ZPoly::neg,
        |p, x, l, r, prev| {
            let num = p.mul(x).sub(&l.mul(r));
            if prev.is_one() {
                num
            } else {
                num.div_exact(prev).expect("Bareiss division is exact")
            }
        },
    )
}

/// Determinant over `Z` by Bareiss elimination.
pub fn bareiss_det_int(m: &Matrix<BigInt>) -> BigInt {
    assert_eq!(m.rows, m.cols);
    bareiss_generic(
        m.data.clone(),
        m.rows,
        BigInt::is_zero,
        BigInt::one(),
        |x| -x,
        |p, x, l, r, prev| {
            let num = p * x - l * r;
            debug_assert!((&num % prev).is_zero());
            num / prev
        },
    )
}

/// Leading principal minors `det(m[..k, ..k])`, `k = 1..=n`, via Bareiss
/// without pivoting. Stops after the first zero minor.
pub fn leading_minors_int(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut a = m.data.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k * n + k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            let l = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&pivot * &a[i * n + j] - &l * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

// ---------------------------------------------------------------------------
// Elimination modulo a prime (Montgomery residues, row-major)

/// Determinant with row pivoting.
pub(crate) fn det_mod(f: &Field, a: &mut [u64], n: usize) -> u64 {
    let mut det = f.one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if r != k {
            for j in k..n {
                a.swap(k * n + j, r * n + j);
            }
            det = f.neg(det);
        }
        let pivot = a[k * n + k];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot);
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let prow = &head[k * n..];
        for i in 0..n - k - 1 {
            let row = &mut tail[i * n..(i + 1) * n];
            let factor = f.mul(row[k], inv);
            if factor == 0 {
                continue;
            }
            for j in k + 1..n {
                row[j] = f.sub(row[j], f.mul(factor, prow[j]));
            }
        }
    }
    det
}

/// Determinant of a symmetric matrix touching only the upper triangle.
/// Returns `None` if a zero pivot appears (caller falls back to [`det_mod`]).
pub(crate) fn det_mod_symmetric(f: &Field, a: &mut [u64], n: usize) -> Option<u64> {
    let mut det = f.one();
    for k in 0..n {
        let pivot = a[k * n + k];
        if pivot == 0 {
            return None;
        }
        det = f.mul(det, pivot);
        let inv = f.inv(pivot);
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let prow = &head[k * n..];
        for i in k + 1..n {
            let factor = f.mul(prow[i], inv);
            if factor == 0 {
                continue;
            }
            let row = &mut tail[(i - k - 1) * n..(i - k) * n];
            for j in i..n {
                row[j] = f.sub(row[j], f.mul(factor, prow[j]));
            }
        }
    }
    Some(det)
}

/// Gauss-Jordan on `[a | b]`; returns `det(a)` and `a^{-1} b` (row-major
/// `n × m`), or `None` if `a` is singular modulo the prime.
pub(crate) fn solve_mod(
    f: &Field,
    a: &mut [u64],
    b: &mut [u64],
    n: usize,
    m: usize,
) -> Option<(u64, Vec<u64>)> {
    let mut det = f.one();
    for k in 0..n {
        let r = (k..n).find(|&r| a[r * n + k] != 0)?;
        if r != k {
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            for j in 0..m {
                b.swap(k * m + j, r * m + j);
            }
            det = f.neg(det);
        }
        let pivot = a[k * n + k];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot);
        for j in k..n {
            a[k * n + j] = f.mul(a[k * n + j], inv);
        }
        for j in 0..m {
            b[k * m + j] = f.mul(b[k * m + j], inv);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = a[i * n + k];
            if factor == 0 {
                continue;
            }
            for j in k..n {
                a[i * n + j] = f.sub(a[i * n + j], f.mul(factor, a[k * n + j]));
            }
            for j in 0..m {
                b[i * m + j] = f.sub(b[i * m + j], f.mul(factor, b[k * m + j]));
            }
        }
    }
    Some((det, b.to_vec()))
}

/// Coefficients (Montgomery) of the polynomial of degree `< xs.len()` through
/// `(xs[i], ys[i])`. `xs` are small distinct integers, `inv_table[d]` is the
/// Montgomery inverse of `d`.
fn interpolate(f: &Field, xs: &[u64], ys: &[u64], inv_table: &[u64]) -> Vec<u64> {
    let k = xs.len();
    let mut c = ys.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            let diff = xs[i] - xs[i - j];
            c[i] = f.mul(f.sub(c[i], c[i - 1]), inv_table[diff as usize]);
        }
    }
    // Expand the Newton form.
    let mut poly = vec![0u64; k];
    poly[0] = c[k - 1];
    let mut len = 1;
    for i in (0..k - 1).rev() {
        let xi = f.to_mont(xs[i]);
        // poly = poly * (x - xi) + c[i]
        poly[len] = 0;
        for d in (1..=len).rev() {
            poly[d] = f.sub(poly[d - 1], f.mul(poly[d], xi));
        }
        poly[0] = f.sub(c[i], f.mul(poly[0], xi));
        len += 1;
    }
    poly
}

fn inverse_table(f: &Field, max: usize) -> Vec<u64> {
    let mut t = vec![0u64; max + 1];
    for (d, slot) in t.iter_mut().enumerate().skip(1) {
        *slot = f.inv(f.to_mont(d as u64));
    }
    t
}

/// A square integer-polynomial matrix (and optional right-hand side) that can
/// be reduced modulo primes and evaluated at points.
pub(crate) trait ModularSource {
    type Image;
    fn dim(&self) -> usize;
    fn rhs_cols(&self) -> usize;
    /// Degree bound in `q` for the determinant and for `adj(A)·B`.
    fn degree_bound(&self) -> usize;
    /// Bound `b` with every coefficient of `det A` and `adj(A)·B` below `2^b`.
    fn coeff_bits(&self) -> u64;
    fn symmetric(&self) -> bool {
        false
    }
    /// Reduce modulo the prime; `None` if the prime must be skipped.
    fn image(&self, f: &Field) -> Option<Self::Image>;
    /// Fill `a` (and `b`) with the values at `q = t` (t in Montgomery form).
    fn load(&self, f: &Field, image: &Self::Image, t: u64, a: &mut [u64], b: &mut [u64]);
}

fn det_at<S: ModularSource>(src: &S, f: &Field, image: &S::Image, t: u64, a: &mut [u64]) -> u64 {
    let n = src.dim();
    src.load(f, image, t, a, &mut []);
    if src.symmetric() {
        let backup = a.to_vec();
        if let Some(d) = det_mod_symmetric(f, a, n) {
            return d;
        }
        a.copy_from_slice(&backup);
    }
    det_mod(f, a, n)
}

/// Exact determinant as an integer polynomial.
pub(crate) fn det_multimodular<S: ModularSource>(src: &S) -> ZPoly {
    let n = src.dim();
    if n == 0 {
        return ZPoly::one();
    }
    let deg = src.degree_bound();
    let bits = src.coeff_bits() + 2;
    let mut primes = Vec::new();
    let mut residues: Vec<Vec<u64>> = Vec::new();
    let mut acc_bits = 0;
    let mut a = vec![0u64; n * n];
    for p in modp::primes() {
        if acc_bits > bits {
            break;
        }
        let f = Field::new(p);
        let Some(image) = src.image(&f) else { continue };
        let xs: Vec<u64> = (0..=deg as u64).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| det_at(src, &f, &image, f.to_mont(x), &mut a))
            .collect();
        let coeffs = if deg == 0 {
            ys
        } else {
            interpolate(&f, &xs, &ys, &inverse_table(&f, deg))
        };
        residues.push(coeffs.into_iter().map(|c| f.from_mont(c)).collect());
        primes.push(p);
        acc_bits += 61;
    }
    ZPoly::from_coeffs(modp::crt_many(&primes, &residues))
}

/// `adj(A) · B` given the exact nonzero determinant of `A`.
pub(crate) fn adj_solve_multimodular<S: ModularSource>(src: &S, det: &ZPoly) -> Matrix<ZPoly> {
    assert!(!det.is_zero());
    let n = src.dim();
    let m = src.rhs_cols();
    let deg = src.degree_bound();
    let bits = src.coeff_bits() + 2;
    let mut primes = Vec::new();
    let mut residues: Vec<Vec<u64>> = Vec::new(); // per prime: (entry-major) coefficients
    let mut acc_bits = 0;
    let mut a = vec![0u64; n * n];
    let mut b = vec![0u64; n * m];
    for p in modp::primes() {
        if acc_bits > bits {
            break;
        }
        let f = Field::new(p);
        let det_p = det.reduce_mod(&f);
        if det_p.iter().all(|&c| c == 0) {
            continue;
        }
        let Some(image) = src.image(&f) else { continue };
        let mut xs = Vec::with_capacity(deg + 1);
        let mut values: Vec<Vec<u64>> = Vec::with_capacity(deg + 1);
        let mut x = 0u64;
        let mut ok = true;
        while xs.len() <= deg {
            let t = f.to_mont(x);
            let d_t = det_p
                .iter()
                .rev()
                .fold(0, |acc, &c| f.add(f.mul(acc, t), c));
            if d_t != 0 {
                src.load(&f, &image, t, &mut a, &mut b);
                match solve_mod(&f, &mut a, &mut b, n, m) {
                    Some((_, sol)) => {
                        xs.push(x);
                        values.push(sol.into_iter().map(|v| f.mul(v, d_t)).collect());
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            x += 1;
        }
        if !ok {
            continue;
        }
        let table = inverse_table(&f, *xs.last().unwrap() as usize);
        let mut flat = Vec::with_capacity(n * m * (deg + 1));
        for e in 0..n * m {
            let ys: Vec<u64> = values.iter().map(|v| v[e]).collect();
            let coeffs = if deg == 0 {
                ys
            } else {
                interpolate(&f, &xs, &ys, &table)
            };
            flat.extend(coeffs.into_iter().map(|c| f.from_mont(c)));
        }
        residues.push(flat);
        primes.push(p);
        acc_bits += 61;
    }
    let lifted = modp::crt_many(&primes, &residues);
    let mut entries = lifted
        .chunks(deg + 1)
        .map(|c| ZPoly::from_coeffs(c.to_vec()));
    Matrix::from_fn(n, m, |_, _| entries.next().unwrap())
}

/// Integer-polynomial matrix with a right-hand side, reduced entry by entry.
pub(crate) struct ZPolySystem<'a> {
    pub a: &'a Matrix<ZPoly>,
    pub b: Option<&'a Matrix<ZPoly>>,
}

impl ZPolySystem<'_> {
    fn row_bits(&self) -> u64 {
        let mut total = 0u64;
        for i in 0..self.a.rows {
            let mut s: BigInt = self.a.row(i).iter().map(|e| e.norm1().pow(2)).sum();
            if let Some(b) = self.b {
                s += b
                    .row(i)
                    .iter()
                    .map(|e| e.norm1().pow(2))
                    .max()
                    .unwrap_or_default();
            }
            total += s.bits();
        }
        total.div_ceil(2)
    }
}

impl ModularSource for ZPolySystem<'_> {
    type Image = (Vec<Vec<u64>>, Vec<Vec<u64>>);

    fn dim(&self) -> usize {
        self.a.rows
    }

    fn rhs_cols(&self) -> usize {
        self.b.map_or(0, |b| b.cols)
    }

    fn degree_bound(&self) -> usize {
        (0..self.a.rows)
            .map(|i| {
                let ra = self
                    .a
                    .row(i)
                    .iter()
                    .filter_map(ZPoly::degree)
                    .max()
                    .unwrap_or(0);
                let rb = self
                    .b
                    .map(|b| b.row(i).iter().filter_map(ZPoly::degree).max().unwrap_or(0))
                    .unwrap_or(0);
                ra.max(rb)
            })
            .sum()
    }

    fn coeff_bits(&self) -> u64 {
        self.row_bits()
    }

    fn image(&self, f: &Field) -> Option<Self::Image> {
        let a = self.a.data.iter().map(|e| e.reduce_mod(f)).collect();
        let b = self
            .b
            .map(|b| b.data.iter().map(|e| e.reduce_mod(f)).collect())
            .unwrap_or_default();
        Some((a, b))
    }

    fn load(&self, f: &Field, image: &Self::Image, t: u64, a: &mut [u64], b: &mut [u64]) {
        let eval = |c: &Vec<u64>| c.iter().rev().fold(0, |acc, &x| f.add(f.mul(acc, t), x));
        for (dst, src) in a.iter_mut().zip(&image.0) {
            *dst = eval(src);
        }
        for (dst, src) in b.iter_mut().zip(&image.1) {
            *dst = eval(src);
        }
    }
}

/// Square matrix whose entries are monomials `q^{e_ij}`, optionally
/// specialized at `q = num/den` and scaled by `den^{max e}` to be integral.
pub(crate) struct MonomialMatrix<'a> {
    pub n: usize,
    pub exps: &'a [u32],
    pub specialization: Option<(BigInt, BigInt)>,
    pub symmetric: bool,
}

impl MonomialMatrix<'_> {
    fn max_exp(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }
}

impl ModularSource for MonomialMatrix<'_> {
    /// Residues of the entry values for each exponent (specialized) or empty.
    type Image = Vec<u64>;

    fn dim(&self) -> usize {
        self.n
    }

    fn rhs_cols(&self) -> usize {
        0
    }

    fn degree_bound(&self) -> usize {
        if self.specialization.is_some() {
            return 0;
        }
        (0..self.n)
            .map(|i| {
                self.exps[i * self.n..(i + 1) * self.n]
                    .iter()
                    .max()
                    .copied()
                    .unwrap_or(0) as usize
            })
            .sum()
    }

    fn coeff_bits(&self) -> u64 {
        let n = self.n;
        match &self.specialization {
            None => (n as u64 * (n as u64).max(1).ilog2() as u64 + n as u64).div_ceil(2),
            Some((a, b)) => {
                let m = self.max_exp();
                let weights: Vec<BigInt> = (0..=m)
                    .map(|e| {
                        (num_traits::pow(a.clone(), e as usize)
                            * num_traits::pow(b.clone(), (m - e) as usize))
                        .pow(2)
                    })
                    .collect();
                let mut total = 0u64;
                for i in 0..n {
                    let mut hist = vec![0u64; m as usize + 1];
                    for &e in &self.exps[i * n..(i + 1) * n] {
                        hist[e as usize] += 1;
                    }
                    let s: BigInt = hist
                        .iter()
                        .zip(&weights)
                        .map(|(&c, w)| w * BigInt::from(c))
                        .sum();
                    total += s.bits();
                }
                total.div_ceil(2)
            }
        }
    }

    fn symmetric(&self) -> bool {
        self.symmetric
    }

    fn image(&self, f: &Field) -> Option<Vec<u64>> {
        match &self.specialization {
            None => Some(Vec::new()),
            Some((a, b)) => {
                let bm = f.from_bigint(b);
                if bm == 0 {
                    return None;
                }
                let am = f.from_bigint(a);
                let m = self.max_exp();
                Some(
                    (0..=m)
                        .map(|e| f.mul(f.pow(am, e as u64), f.pow(bm, (m - e) as u64)))
                        .collect(),
                )
            }
        }
    }

    fn load(&self, f: &Field, image: &Vec<u64>, t: u64, a: &mut [u64], _b: &mut [u64]) {
        let table: Vec<u64> = if self.specialization.is_some() {
            image.clone()
        } else {
            let m = self.max_exp();
            let mut pw = Vec::with_capacity(m as usize + 1);
            let mut acc = f.one();
            for _ in 0..=m {
                pw.push(acc);
                acc = f.mul(acc, t);
            }
            pw
        };
        for (dst, &e) in a.iter_mut().zip(self.exps) {
            *dst = table[e as usize];
        }
    }
}

// ---------------------------------------------------------------------------
// ExactField implementations

fn clear_rows_rational(
    m: &Matrix<BigRational>,
    rhs: Option<&Matrix<BigRational>>,
) -> (Matrix<ZPoly>, Option<Matrix<ZPoly>>, BigInt) {
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut l = BigInt::one();
        for x in m.row(i).iter().chain(rhs.map(|r| r.row(i)).unwrap_or(&[])) {
            l = l.lcm(x.denom());
        }
        scales.push(l);
    }
    let conv = |x: &BigRational, s: &BigInt| ZPoly::constant(x.numer() * (s / x.denom()));
    let a = Matrix::from_fn(m.rows, m.cols, |i, j| conv(m.get(i, j), &scales[i]));
    let b = rhs.map(|r| Matrix::from_fn(r.rows, r.cols, |i, j| conv(r.get(i, j), &scales[i])));
    let total = scales.iter().product();
    (a, b, total)
}

impl ExactField for BigRational {
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::SizeMismatch {
                left: m.rows,
                right: m.cols,
            });
        }
        let (a, _, scale) = clear_rows_rational(m, None);
        let det = det_multimodular(&ZPolySystem { a: &a, b: None });
        Ok(BigRational::new(det.coeff(0), scale))
    }

    fn solve(m: &Matrix<Self>, rhs: &Matrix<Self>) -> Result<Matrix<Self>> {
        if m.rows != m.cols || rhs.rows != m.rows {
            return Err(Error::SizeMismatch {
                left: m.rows,
                right: rhs.rows,
            });
        }
        let (a, b, _) = clear_rows_rational(m, Some(rhs));
        let b = b.unwrap();
        let sys = ZPolySystem { a: &a, b: Some(&b) };
        let det = det_multimodular(&sys);
        if det.is_zero() {
            return Err(Error::Singular(String::new()));
        }
        let adj = adj_solve_multimodular(&sys, &det);
        let d = det.coeff(0);
        Ok(adj.map(|e| BigRational::new(e.coeff(0), d.clone())))
    }
}

fn clear_rows_symbolic(
    m: &Matrix<QRational>,
    rhs: Option<&Matrix<QRational>>,
) -> (Matrix<ZPoly>, Option<Matrix<ZPoly>>, QPoly) {
    let mut int_scales = Vec::with_capacity(m.rows);
    let mut poly_scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut l = BigInt::one();
        let mut pl = ZPoly::one();
        for x in m.row(i).iter().chain(rhs.map(|r| r.row(i)).unwrap_or(&[])) {
            if x.is_zero() {
                continue;
            }
            l = l.lcm(x.numerator().denominator());
            if !x.denominator().is_one() {
                pl = lcm_zpoly(&pl, x.denominator());
            }
        }
        int_scales.push(l);
        poly_scales.push(pl);
    }
    let conv = |x: &QRational, i: usize| {
        if x.is_zero() {
            return ZPoly::zero();
        }
        let num = x.numerator();
        let k = &int_scales[i] / num.denominator();
        let cofactor = poly_scales[i]
            .div_exact(x.denominator())
            .expect("lcm is a multiple");
        num.numerator().mul(&cofactor).scale(&k)
    };
    let a = Matrix::from_fn(m.rows, m.cols, |i, j| conv(m.get(i, j), i));
    let b = rhs.map(|r| Matrix::from_fn(r.rows, r.cols, |i, j| conv(r.get(i, j), i)));
    let mut total = QPoly::one();
    for (l, p) in int_scales.iter().zip(&poly_scales) {
        total = total.mul(&QPoly::from_zpoly(p.scale(l)));
    }
    (a, b, total)
}

impl ExactField for QRational {
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::SizeMismatch {
                left: m.rows,
                right: m.cols,
            });
        }
        let (a, _, scale) = clear_rows_symbolic(m, None);
        let det = det_multimodular(&ZPolySystem { a: &a, b: None });
        QRational::new(QPoly::from_zpoly(det), scale)
    }

    fn solve(m: &Matrix<Self>, rhs: &Matrix<Self>) -> Result<Matrix<Self>> {
        if m.rows != m.cols || rhs.rows != m.rows {
            return Err(Error::SizeMismatch {
                left: m.rows,
                right: rhs.rows,
            });
        }
        let (a, b, _) = clear_rows_symbolic(m, Some(rhs));
        let b = b.unwrap();
        let sys = ZPolySystem { a: &a, b: Some(&b) };
        let det = det_multimodular(&sys);
        if det.is_zero() {
            return Err(Error::Singular(String::new()));
        }
        let adj = adj_solve_multimodular(&sys, &det);
        Ok(adj.map(|e| QRational::from_integer_parts(e.clone(), det.clone())))
    }
}
