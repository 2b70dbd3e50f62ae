//! The complete elliptic integral of the first kind,
//! `K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)`, in the parameter convention
//! `m = k²`.
//!
//! * `m < 1` (including negative `m`): `K = π / (2·agm(1, √(1−m)))`.
//! * `m > 1`: `K(m) = (K(1/m) − i·K(1 − 1/m)) / √m`, the value reached from
//!   `Im m < 0`, so `Im K ≤ 0`. It coincides with the principal-branch
//!   integrand `1/√(1 − m sin²θ)` taken with `+0` imaginary part.
//! * `m = 1` is a logarithmic singularity.

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{const_pi, BigComplex, PrecisionContext};

const AGM_MAX_ITERATIONS: u32 = 200;

/// Which formula a parameter value is evaluated by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Negative,
    UnitInterval,
    SuperUnit,
}

/// The parameter `m = k²` of a complete elliptic integral.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticParameter {
    m: Float,
}

impl EllipticParameter {
    pub fn new(m: Float) -> Self {
        Self { m }
    }

    /// From a (real) modulus `k`.
    pub fn from_modulus(k: &Float) -> Self {
        Self { m: k.clone().square() }
    }

    pub fn m(&self) -> &Float {
        &self.m
    }

    /// `None` at the singular point `m = 1`.
    pub fn regime(&self) -> Option<Regime> {
        if self.m < 0 {
            Some(Regime::Negative)
        } else if self.m < 1 {
            Some(Regime::UnitInterval)
        } else if self.m > 1 {
            Some(Regime::SuperUnit)
        } else {
            None
        }
    }
}

/// Arithmetic–geometric mean together with the number of iterations used.
pub fn agm_with_iterations(a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<(Float, u32)> {
    if !(*a > 0 && *b > 0) {
        return Err(Error::Domain(format!(
            "agm needs positive arguments (got {}, {})",
            a.to_f64(),
            b.to_f64()
        )));
    }
    let mut a = ctx.real(a);
    let mut b = ctx.real(b);
    let tol_exp = -(ctx.bits() as i32) + 4;
    for iteration in 0..AGM_MAX_ITERATIONS {
        let gap = (a.clone() - &b).abs();
        if gap.is_zero() || gap.get_exp().unwrap_or(i32::MIN) - a.get_exp().unwrap_or(0) < tol_exp {
            return Ok((a, iteration));
        }
        let next_b = (a.clone() * &b).sqrt();
        a = (a + &b) / 2u32;
        b = next_b;
    }
    Err(Error::Domain("agm iteration failed to converge".into()))
}

/// Common limit of `aₙ₊₁ = (aₙ+bₙ)/2`, `bₙ₊₁ = √(aₙbₙ)`.
pub fn agm(a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<Float> {
    agm_with_iterations(a, b, ctx).map(|(v, _)| v)
}

/// `K` expressed through the complementary modulus `k' = √(1−m) > 0`.
///
/// Integrands whose parameter approaches 1 compute `k'` directly to avoid
/// the cancellation in `1 − m`.
pub fn ellip_k_from_kprime(kprime: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if kprime.is_zero() {
        return Err(Error::Singularity("K(m) diverges at m = 1".into()));
    }
    let mean = agm(&ctx.real(1), kprime, ctx)?;
    Ok(const_pi(ctx) / (mean * 2u32))
}

/// Real `K(m)` for `m < 1`.
pub fn ellip_k_real(m: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *m >= 1 {
        return Err(Error::Domain(format!("real K needs m < 1 (got {})", m.to_f64())));
    }
    let kprime = (ctx.real(1) - m).sqrt();
    ellip_k_from_kprime(&kprime, ctx)
}

/// `K(m)` on the whole real line except `m = 1`.
pub fn ellip_k(p: &EllipticParameter, ctx: &PrecisionContext) -> Result<BigComplex> {
    match p.regime() {
        None => Err(Error::Singularity("K(m) diverges at m = 1".into())),
        Some(Regime::Negative | Regime::UnitInterval) => ellip_k_real(p.m(), ctx).map(BigComplex::from_real),
        Some(Regime::SuperUnit) => {
            let m = ctx.real(p.m());
            let inv = ctx.real(1) / &m;
            let scale = m.sqrt();
            let re = ellip_k_real(&inv, ctx)? / &scale;
            let im = ellip_k_real(&(ctx.real(1) - &inv), ctx)? / &scale;
            Ok(BigComplex::new(re, -im))
        }
    }
}

/// `Re K(m)`, the only part of the `m > 1` branch used downstream.
pub fn ellip_k_re(m: &Float, ctx: &PrecisionContext) -> Result<Float> {
    ellip_k(&EllipticParameter::new(ctx.real(m)), ctx).map(|k| k.re)
}

/// The `n`-th Maclaurin term `(π/2)((1/2)ₙ/(1)ₙ)² mⁿ`.
pub fn maclaurin_term(m: &Float, n: u32, ctx: &PrecisionContext) -> Float {
    let mut term = const_pi(ctx) / 2u32;
    for j in 1..=n {
        let ratio = (ctx.real(j) - 0.5f64) / j;
        term *= ratio.square() * m;
    }
    term
}

/// Partial sum through `n = terms` of
/// `K(m) = (π/2) Σ ((1/2)ₙ/(1)ₙ)² mⁿ`, valid for `|m| < 1`.
pub fn ellip_k_series(p: &EllipticParameter, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    let m = p.m();
    if !(m.clone().abs() < 1) {
        return Err(Error::Domain(format!(
            "Maclaurin series of K needs |m| < 1 (got {})",
            m.to_f64()
        )));
    }
    let mut term = const_pi(ctx) / 2u32;
    let mut sum = term.clone();
    for n in 1..=terms {
        let ratio = (ctx.real(n) - 0.5f64) / n;
        term *= ratio.square() * m;
        sum += &term;
    }
    Ok(sum)
}

/// `K'(m) = K(1 − m)`.
pub fn ellip_k_complementary(p: &EllipticParameter, ctx: &PrecisionContext) -> Result<BigComplex> {
    if p.m().is_zero() {
        return Err(Error::Singularity("K'(m) diverges at m = 0".into()));
    }
    ellip_k(&EllipticParameter::new(ctx.real(1) - p.m()), ctx)
}

/// `(1 − √(1+s))/2` computed as `−s / (2(1 + √(1+s)))`, free of cancellation
/// for small `s`.
fn negative_parameter(s: &Float, ctx: &PrecisionContext) -> Float {
    let root = (ctx.real(1) + s).sqrt();
    -(s.clone() / ((root + 1u32) * 2u32))
}

/// Right-hand side of the one-parameter identity:
/// `[K((1−√(1+a²))/2)]²` for `0 ≤ a ≤ 1`, and
/// `(1/a)·[K((1−√(1+a⁻²))/2)]²` for `a ≥ 1`. Both agree at `a = 1`.
pub fn rhs_ode_closed_form(a: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if a.is_sign_negative() && !a.is_zero() {
        return Err(Error::Domain(format!("closed form needs a ≥ 0 (got {})", a.to_f64())));
    }
    if *a <= 1 {
        let m = negative_parameter(&ctx.real(a).square(), ctx);
        Ok(ellip_k_real(&m, ctx)?.square())
    } else {
        let inv_sq = (ctx.real(1) / a).square();
        let m = negative_parameter(&inv_sq, ctx);
        Ok(ellip_k_real(&m, ctx)?.square() / a)
    }
}

/// `|k′·K(k²) − K(−k²/k′²)|`, the residual of the imaginary-modulus
/// transformation `K(ik/k′) = k′·K(k)` for `0 ≤ k < 1`.
pub fn imaginary_modulus_residual(k: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if k.is_sign_negative() && !k.is_zero() || *k >= 1 {
        return Err(Error::Domain(format!("modulus must lie in [0, 1) (got {})", k.to_f64())));
    }
    let m = ctx.real(k).square();
    let kprime_sq = (ctx.real(1) - k) * (ctx.real(1) + k);
    let lhs = kprime_sq.clone().sqrt() * ellip_k_real(&m, ctx)?;
    let rhs = ellip_k_real(&(-(m / kprime_sq)), ctx)?;
    Ok((lhs - rhs).abs())
}
