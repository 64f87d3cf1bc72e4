use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ZPoly;

/// Polynomial in `q` with exact rational coefficients.
///
/// Stored as an integer polynomial over a positive common denominator with
/// `gcd(content(num), den) = 1`, which makes equality structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: ZPoly,
    den: BigInt,
}

impl Default for QPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            num: ZPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_zpoly(ZPoly::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let (n, d) = (c.numer().clone(), c.denom().clone());
        Self::from_parts(ZPoly::monomial(n, deg), d)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_zpoly(num: ZPoly) -> Self {
        QPoly {
            num,
            den: BigInt::one(),
        }
    }

    /// `num / den`, normalized.
    pub fn from_parts(num: ZPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return QPoly { num, den };
        }
        QPoly {
            num: num.div_scalar_exact(&g),
            den: den / g,
        }
    }

    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(ZPoly::from_coeffs(num), den)
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num.coeff(i), self.den.clone())
    }

    /// Integer numerator polynomial (coefficients scaled by [`Self::denominator`]).
    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    /// Positive common denominator of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn neg(&self) -> Self {
        QPoly {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::from_parts(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.scale(&other.den).add(&other.num.scale(&self.den));
        Self::from_parts(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_parts(self.num.mul(&other.num), &self.den * &other.den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_parts(self.num.scale(c.numer()), &self.den * c.denom())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_parts(
            self.num.pow(e),
            num_traits::pow(self.den.clone(), e as usize),
        )
    }

    pub fn evaluate(&self, q0: &BigRational) -> BigRational {
        self.num.eval_rational(q0) / BigRational::from_integer(self.den.clone())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_coeffs(&self.coeffs()))
    }
}
