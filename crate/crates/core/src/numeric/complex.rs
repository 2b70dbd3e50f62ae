use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::Float;

use super::to_decimal;

/// A complex value whose parts share one working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    /// Real value with a (positive) zero imaginary part.
    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Modulus `|z|`.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn scale(&self, k: &Float) -> Self {
        Self::new(self.re.clone() * k, self.im.clone() * k)
    }

    pub fn recip(&self) -> Self {
        let norm = self.re.clone().square() + self.im.clone().square();
        Self::new(self.re.clone() / &norm, -(self.im.clone() / norm))
    }

    /// Principal square root: for `arg z ∈ (-π, π]` the result has
    /// `arg ∈ (-π/2, π/2]`. A negative real axis point with `im = -0` is
    /// treated as lying on the upper edge of the cut.
    pub fn sqrt(&self) -> Self {
        if self.im.is_zero() {
            return if self.re.is_sign_negative() {
                Self::new(Float::new(self.prec()), (-self.re.clone()).sqrt())
            } else {
                Self::from_real(self.re.clone().sqrt())
            };
        }
        let r = self.abs();
        if !self.re.is_sign_negative() {
            let s = ((r + &self.re) / 2u32).sqrt();
            let t = self.im.clone() / (s.clone() * 2u32);
            Self::new(s, t)
        } else {
            let t = ((r - &self.re) / 2u32).sqrt();
            let s = self.im.clone().abs() / (t.clone() * 2u32);
            Self::new(s, t.copysign(&self.im))
        }
    }

    /// `z^(-3/2)` on the principal branch.
    pub fn pow_neg_three_halves(&self) -> Self {
        let root = self.sqrt();
        (self * &root).recip()
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        if self.is_real() {
            write!(f, "{}", to_decimal(&self.re, digits))
        } else {
            let sign = if self.im.is_sign_negative() { '-' } else { '+' };
            write!(
                f,
                "{}{}{}i",
                to_decimal(&self.re, digits),
                sign,
                to_decimal(&self.im.clone().abs(), digits)
            )
        }
    }
}

impl From<Float> for BigComplex {
    fn from(re: Float) -> Self {
        Self::from_real(re)
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(self.re.clone() + &rhs.re, self.im.clone() + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(self.re.clone() - &rhs.re, self.im.clone() - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        BigComplex::new(re, im)
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        self * &rhs.recip()
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: BigComplex) -> BigComplex {
        &self + &rhs
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: BigComplex) -> BigComplex {
        &self - &rhs
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: BigComplex) -> BigComplex {
        &self * &rhs
    }
}

impl Div for BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: BigComplex) -> BigComplex {
        &self / &rhs
    }
}
