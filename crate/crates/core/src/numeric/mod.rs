//! Arbitrary-precision foundation: the precision context, the real and
//! complex value types, and the few special constants/functions the rest of
//! the crate needs.
//!
//! All values are MPFR floats at the context's working precision. There is
//! no ambient precision; every constructor goes through a
//! [`PrecisionContext`].

mod complex;
mod context;
mod gamma;

pub use complex::BigComplex;
pub use context::{BigReal, PrecisionContext};
pub use gamma::{gamma, pochhammer};

use rug::float::Constant;
use rug::Float;

/// π at the working precision of `ctx`.
pub fn const_pi(ctx: &PrecisionContext) -> BigReal {
    Float::with_val(ctx.bits(), Constant::Pi)
}

/// Formats `x` with `digits` significant decimal digits, e.g.
/// `2.4674011002723396547` or `1.0000000000e-40`.
pub fn to_decimal(x: &BigReal, digits: usize) -> String {
    if x.is_zero() {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    x.to_string_radix(10, Some(digits))
}
