//! Singular moduli `λ*(r)`, `K′/K = √r`, for `r ∈ {3, 4, 7}`, and the
//! gamma-function constants they produce.

use rug::ops::Pow;
use rug::Float;

use crate::elliptic::{ellip_k_from_kprime, ellip_k_real};
use crate::error::{Error, Result};
use crate::harness::IdentityId;
use crate::numeric::gamma;
use crate::numeric::{const_pi, PrecisionContext};

pub const TABULATED: [u32; 3] = [3, 4, 7];

#[derive(Debug, Clone, PartialEq)]
pub struct SingularValue {
    pub r: u32,
    /// The modulus `k`; the elliptic parameter is `k²`.
    pub lambda: Float,
    pub rhs_constant_id: IdentityId,
}

impl SingularValue {
    pub fn new(r: u32, ctx: &PrecisionContext) -> Result<Self> {
        let rhs_constant_id = match r {
            3 => IdentityId::I4,
            4 => IdentityId::I3,
            7 => IdentityId::I5,
            _ => return Err(Error::UnsupportedSingularValue(r)),
        };
        Ok(Self { r, lambda: lambda_star(r, ctx)?, rhs_constant_id })
    }
}

/// The closed form of `λ*(r)`.
pub fn lambda_star(r: u32, ctx: &PrecisionContext) -> Result<Float> {
    let root2 = ctx.real(2).sqrt();
    match r {
        3 => Ok(root2 * (ctx.real(3).sqrt() - 1u32) / 4u32),
        4 => Ok(ctx.real(3) - root2 * 2u32),
        7 => Ok(root2 * (ctx.real(3) - ctx.real(7).sqrt()) / 8u32),
        _ => Err(Error::UnsupportedSingularValue(r)),
    }
}

/// `√(1 − λ²)` without cancellation.
fn complementary_modulus(lambda: &Float) -> Float {
    ((Float::with_val(lambda.prec(), 1) - lambda) * (Float::with_val(lambda.prec(), 1) + lambda)).sqrt()
}

/// `|K′(λ)/K(λ) − √r|` at `λ = λ*(r)`.
pub fn verify_singular_value(r: u32, ctx: &PrecisionContext) -> Result<Float> {
    let lambda = lambda_star(r, ctx)?;
    let k = ellip_k_from_kprime(&complementary_modulus(&lambda), ctx)?;
    let k_comp = ellip_k_from_kprime(&lambda, ctx)?;
    Ok((k_comp / k - ctx.real(r).sqrt()).abs())
}

/// The gamma closed form on the right of the three singular-value examples.
pub fn rhs_constant(id: IdentityId, ctx: &PrecisionContext) -> Result<Float> {
    let pi = const_pi(ctx);
    let g = |num: i64, den: i64| gamma(&ctx.ratio(num, den), ctx);
    match id {
        IdentityId::I3 => {
            let q = g(1, 4)?.square().square();
            Ok(q / (ctx.real(2).sqrt() * 16u32 * pi))
        }
        IdentityId::I4 => {
            let t = g(1, 3)?.square();
            let sixth = t.clone().square() * t;
            let two_pow = ctx.real(2).pow(&ctx.ratio(17, 3));
            Ok(ctx.real(3).sqrt() * sixth / (two_pow * pi.square()))
        }
        IdentityId::I5 => {
            let p = g(1, 7)? * g(2, 7)? * g(4, 7)?;
            Ok(p.square() / (ctx.real(7).sqrt() * 128u32 * pi.square()))
        }
        other => Err(Error::UnknownIdentity(format!("{other} has no gamma closed form"))),
    }
}

/// The same constant through `K(λ*(r)²)`: the example's elliptic parameter
/// is `λ*²` itself for `r = 3, 7` and maps to `λ*(4)²` under
/// `m ↦ m/(m−1)` for `r = 4`.
pub fn rhs_constant_via_modulus(id: IdentityId, ctx: &PrecisionContext) -> Result<Float> {
    let k_sq = |r: u32| -> Result<Float> {
        let lambda = lambda_star(r, ctx)?;
        Ok(ellip_k_real(&lambda.square(), ctx)?.square())
    };
    match id {
        IdentityId::I3 => {
            // 1 − m with m = (1 − √(9/8))/2
            let one_minus_m = (ctx.real(1) + (ctx.ratio(9, 8)).sqrt()) / 2u32;
            Ok(k_sq(4)? / one_minus_m)
        }
        IdentityId::I4 => Ok(k_sq(3)? / 2u32),
        IdentityId::I5 => Ok(k_sq(7)? / 8u32),
        other => Err(Error::UnknownIdentity(format!("{other} has no singular-modulus form"))),
    }
}
