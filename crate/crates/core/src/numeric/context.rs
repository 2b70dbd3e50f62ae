use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Real values carried at a [`PrecisionContext`]'s working precision.
pub type BigReal = Float;

/// Working precision and the tolerances derived from it.
///
/// `quad_target = 10^-(digits-10)` and `pass_tol = 10^-(digits-15)` unless the
/// identity tolerance is overridden. Arithmetic runs with a fixed number of
/// guard bits on top of the requested decimal digits.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
    quad_target: Float,
    pass_tol: Float,
    level_cap: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 30;
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const DEFAULT_LEVEL_CAP: u32 = 12;
    /// Extra binary digits carried beyond `digits`.
    pub const GUARD_BITS: u32 = 64;
    const MAX_DIGITS: u32 = 10_000;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "digits = {digits} is below the minimum of {}",
                Self::MIN_DIGITS
            )));
        }
        if digits > Self::MAX_DIGITS {
            return Err(Error::Precision(format!("digits = {digits} is unreasonably large")));
        }
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + Self::GUARD_BITS;
        let pow10 = |e: i32| Float::with_val(bits, 10).pow(e);
        Ok(Self {
            digits,
            bits,
            quad_target: pow10(-(digits as i32 - 10)),
            pass_tol: pow10(-(digits as i32 - 15)),
            level_cap: Self::DEFAULT_LEVEL_CAP,
        })
    }

    /// Replaces the identity pass tolerance. It must stay above the
    /// quadrature target, otherwise quadrature noise alone could fail a check.
    pub fn with_pass_tol(mut self, tol: Float) -> Result<Self> {
        if !(tol > self.quad_target) {
            return Err(Error::Precision(format!(
                "pass tolerance {} must exceed the quadrature target {}",
                tol.to_f64(),
                self.quad_target.to_f64()
            )));
        }
        self.pass_tol = Float::with_val(self.bits, tol);
        Ok(self)
    }

    pub fn with_level_cap(mut self, cap: u32) -> Result<Self> {
        if !(1..=20).contains(&cap) {
            return Err(Error::Precision(format!("level cap {cap} outside 1..=20")));
        }
        self.level_cap = cap;
        Ok(self)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision of every value created through this context.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn quad_target(&self) -> &Float {
        &self.quad_target
    }

    pub fn pass_tol(&self) -> &Float {
        &self.pass_tol
    }

    /// Maximum number of step halvings in double-exponential quadrature.
    pub fn level_cap(&self) -> u32 {
        self.level_cap
    }

    pub fn real<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    /// `num / den` rounded once to working precision.
    pub fn ratio(&self, num: i64, den: i64) -> Float {
        Float::with_val(self.bits, num) / den
    }

    /// `10^exp`.
    pub fn pow10(&self, exp: i32) -> Float {
        Float::with_val(self.bits, 10).pow(exp)
    }

    /// Unit roundoff `2^-bits`.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32)))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    /// Parses a decimal literal such as `0.25`, `1e-3` or a simple fraction
    /// `1/7` at working precision.
    pub fn parse(&self, text: &str) -> Result<Float> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num = self.parse(num)?;
            let den = self.parse(den)?;
            if den.is_zero() {
                return Err(Error::Domain(format!("zero denominator in `{text}`")));
            }
            return Ok(num / den);
        }
        Float::parse(text)
            .map(|p| Float::with_val(self.bits, p))
            .map_err(|e| Error::Domain(format!("cannot parse `{text}` as a number: {e}")))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DIGITS).expect("default digits are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_tolerances_at_default_digits() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.digits(), 50);
        assert_eq!(ctx.quad_target().to_f64(), 1e-40);
        assert_eq!(ctx.pass_tol().to_f64(), 1e-35);
        assert!(ctx.pass_tol() > ctx.quad_target());
        assert!(ctx.bits() >= 167 + PrecisionContext::GUARD_BITS);
    }

    #[test]
    fn rejects_low_precision() {
        assert!(matches!(PrecisionContext::new(29), Err(Error::Precision(_))));
        assert!(PrecisionContext::new(30).is_ok());
    }

    #[test]
    fn pass_tol_must_exceed_quad_target() {
        let ctx = PrecisionContext::default();
        let too_small = ctx.pow10(-45);
        assert!(ctx.clone().with_pass_tol(too_small).is_err());
        let ok = ctx.pow10(-20);
        assert_eq!(ctx.with_pass_tol(ok).unwrap().pass_tol().to_f64(), 1e-20);
    }

    #[test]
    fn parses_decimals_and_fractions() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.parse("0.25").unwrap(), 0.25);
        assert_eq!(ctx.parse("1/4").unwrap(), 0.25);
        let seventh = ctx.parse("1/7").unwrap() * 7u32;
        assert!((seventh - 1u32).abs() < ctx.pow10(-60));
        assert!(ctx.parse("abc").is_err());
        assert!(ctx.parse("1/0").is_err());
    }
}
