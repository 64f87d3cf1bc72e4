use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd_zpoly, is_unit_constant};
use super::{QPoly, ZPoly};
use crate::error::{Error, Result};

/// Reduced rational function in `q` over the rationals.
///
/// Canonical form: the denominator is a primitive integer polynomial with
/// positive leading coefficient, coprime to the numerator. Two equal
/// functions therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRational {
    num: QPoly,
    den: ZPoly,
}

impl Default for QRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl QRational {
    pub fn zero() -> Self {
        QRational {
            num: QPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    pub fn from_poly(num: QPoly) -> Self {
        QRational {
            num,
            den: ZPoly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_integer(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    /// `num / den` reduced to canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (n/a) / (d/b) = (n b) / (a d)
        let scaled = num.numerator().scale(den.denominator());
        Ok(Self::reduce(
            scaled,
            num.denominator().clone(),
            den.numerator().clone(),
        ))
    }

    /// `(num_int / num_den) / den`, all integer data.
    pub(crate) fn reduce(num_int: ZPoly, num_den: BigInt, den: ZPoly) -> Self {
        assert!(!den.is_zero());
        if num_int.is_zero() {
            return Self::zero();
        }
        let (num_int, den) = if den.degree() == Some(0) {
            (num_int, den)
        } else {
            let g = gcd_zpoly(&num_int, &den).primitive();
            if g.degree() == Some(0) {
                (num_int, den)
            } else {
                (
                    num_int.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let mut c = den.content();
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        let den = den.div_scalar_exact(&c);
        QRational {
            num: QPoly::from_parts(num_int, num_den * c),
            den,
        }
    }

    pub(crate) fn from_integer_parts(num: ZPoly, den: ZPoly) -> Self {
        Self::reduce(num, BigInt::one(), den)
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    /// Primitive integer denominator with positive leading coefficient.
    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn denominator_poly(&self) -> QPoly {
        QPoly::from_zpoly(self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&QPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn neg(&self) -> Self {
        QRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.num, &other.num);
        if self.den == other.den {
            let (n, d) = common_num(a, b, None, None);
            return Self::reduce(n, d, self.den.clone());
        }
        let (n, d) = common_num(a, b, Some(&other.den), Some(&self.den));
        Self::reduce(n, d, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let n = self.num.numerator().mul(other.num.numerator());
        let d = self.num.denominator() * other.num.denominator();
        Self::reduce(n, d, self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // den / (num_int / num_den) = den * num_den / num_int
        Ok(Self::reduce(
            self.den.scale(self.num.denominator()),
            BigInt::one(),
            self.num.numerator().clone(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at `q = q0`; a pole when the denominator vanishes there.
    pub fn evaluate(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q0);
        if d.is_zero() {
            return Err(Error::Pole(super::rational_text(q0)));
        }
        Ok(self.num.evaluate(q0) / d)
    }

    /// True if the denominator is a unit and all coefficients are integers.
    pub fn is_integer_polynomial(&self) -> bool {
        is_unit_constant(&self.den) && self.num.is_integral()
    }
}

/// Numerator data of `a*x + b*y` over the common coefficient denominator.
fn common_num(a: &QPoly, b: &QPoly, x: Option<&ZPoly>, y: Option<&ZPoly>) -> (ZPoly, BigInt) {
    let da = a.denominator();
    let db = b.denominator();
    let mut na = a.numerator().clone();
    let mut nb = b.numerator().clone();
    if let Some(x) = x {
        na = na.mul(x);
    }
    if let Some(y) = y {
        nb = nb.mul(y);
    }
    if da == db {
        (na.add(&nb), da.clone())
    } else {
        (na.scale(db).add(&nb.scale(da)), da * db)
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRational({self})")
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
