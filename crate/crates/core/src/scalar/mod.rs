//! Exact scalars: integers, rationals, polynomials in `q` and reduced
//! rational functions in `q`.
//!
//! Everything downstream is generic over [`Scalar`], implemented by
//! [`BigRational`] (a specialized numeric `q`) and [`QRational`] (symbolic
//! `q`). Canonical text renderings live here because CLI and JSON output use
//! them verbatim.

mod gcd;
mod qpoly;
mod ratfunc;
mod zpoly;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use gcd::{gcd_zpoly, lcm_zpoly};
pub use qpoly::QPoly;
pub use ratfunc::QRational;
pub use zpoly::ZPoly;

use crate::error::{Error, Result};

/// Exact field element usable as a coefficient.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(c: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;

    fn from_integer(c: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(c.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True for the symbolic-`q` scalar type.
    fn is_symbolic() -> bool {
        false
    }

    /// Text used in reports; identical to `Display`.
    fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(c: &BigRational) -> Self {
        c.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
    fn canonical_text(&self) -> String {
        rational_text(self)
    }
}

impl Scalar for QRational {
    fn zero() -> Self {
        QRational::zero()
    }
    fn one() -> Self {
        QRational::one()
    }
    fn from_rational(c: &BigRational) -> Self {
        QRational::from_rational(c.clone())
    }
    fn is_zero(&self) -> bool {
        QRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        QRational::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QRational::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QRational::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QRational::neg(self)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        QRational::div(self, rhs)
    }
    fn is_one(&self) -> bool {
        QRational::is_one(self)
    }
    fn pow(&self, e: u32) -> Self {
        QRational::pow(self, e)
    }
    fn is_symbolic() -> bool {
        true
    }
}

/// `a` or `a/b` with the sign on the numerator.
pub fn rational_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parse `a`, `-a`, or `a/b` exactly. No decimal or floating forms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        if t.is_empty()
            || !t
                .trim_start_matches(['-', '+'])
                .chars()
                .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((a, b)) => {
            let b = int(b)?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(int(a)?, b))
        }
    }
}

/// Ascending-degree rendering, e.g. `1 - q^2 + 3/2*q^5`.
pub(crate) fn render_coeffs(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let var = match deg {
            0 => String::new(),
            1 => "q".to_string(),
            d => format!("q^{d}"),
        };
        if deg == 0 {
            out.push_str(&rational_text(&mag));
        } else if One::is_one(&mag) {
            out.push_str(&var);
        } else {
            out.push_str(&rational_text(&mag));
            out.push('*');
            out.push_str(&var);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
