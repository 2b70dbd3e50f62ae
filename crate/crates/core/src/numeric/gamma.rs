//! Euler's gamma function for positive real arguments (Spouge's
//! approximation) and the rising factorial.

use rug::ops::Pow;
use rug::Float;

use super::PrecisionContext;
use crate::error::{Error, Result};

/// Spouge parameter `a` such that the relative truncation bound
/// `a^(-1/2) (2π)^-(a+1/2)` is below `10^-(digits+8)`.
fn spouge_order(digits: u32) -> u32 {
    let log10_two_pi = (2.0 * std::f64::consts::PI).log10();
    ((f64::from(digits) + 8.0) / log10_two_pi).ceil() as u32 + 1
}

/// Γ(x) for x > 0.
///
/// Uses Γ(z+1) = (z+a)^(z+1/2) e^-(z+a) [c0 + Σ c_k/(z+k)] evaluated at a
/// raised precision, since the coefficients alternate and grow like e^a.
pub fn gamma(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(*x > 0) {
        return Err(Error::Domain(format!(
            "gamma is only defined here for x > 0 (got {})",
            x.to_f64()
        )));
    }
    let order = spouge_order(ctx.digits());
    let prec = ctx.bits() + 2 * order + 32;
    let hp = |v: &Float| Float::with_val(prec, v);

    // Γ(x) = Γ(x+1)/x keeps z = x - 1 + shift away from the left half-plane
    // where the series converges slowly.
    let (z, divisor) = if *x < 1 {
        (hp(x), Some(hp(x)))
    } else {
        (hp(x) - 1u32, None)
    };

    let a = Float::with_val(prec, order);
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;

    let mut sum = two_pi.sqrt();
    let mut factorial = Float::with_val(prec, 1);
    for k in 1..order {
        if k > 1 {
            factorial *= k - 1;
        }
        // c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
        let base = a.clone() - k;
        let expo = Float::with_val(prec, k) - 0.5f64;
        let mut coeff = base.clone().pow(&expo) * (base).exp() / &factorial;
        if k % 2 == 0 {
            coeff = -coeff;
        }
        sum += coeff / (z.clone() + k);
    }
    let shifted = z.clone() + &a;
    let power = shifted.clone().pow(z.clone() + 0.5f64);
    let mut value = power * (-shifted).exp() * sum;
    if let Some(d) = divisor {
        value /= d;
    }
    Ok(Float::with_val(ctx.bits(), value))
}

/// Rising factorial (x)_n = x(x+1)…(x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: &Float, n: u32) -> Float {
    let mut acc = Float::with_val(x.prec(), 1);
    for k in 0..n {
        acc *= x.clone() + k;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::const_pi;

    fn rel_err(got: &Float, want: &Float) -> Float {
        (got.clone() - want).abs() / want.clone().abs()
    }

    #[test]
    fn gamma_one_and_half() {
        let ctx = PrecisionContext::default();
        let tol = ctx.pow10(-(ctx.digits() as i32) + 5);
        let g1 = gamma(&ctx.real(1), &ctx).unwrap();
        assert!(rel_err(&g1, &ctx.real(1)) < tol);
        let g_half = gamma(&ctx.ratio(1, 2), &ctx).unwrap();
        assert!(rel_err(&g_half, &const_pi(&ctx).sqrt()) < tol);
    }

    #[test]
    fn gamma_quarter_reflection_product() {
        // Γ(1/4) Γ(3/4) = π / sin(π/4) = π√2
        let ctx = PrecisionContext::default();
        let product = gamma(&ctx.ratio(1, 4), &ctx).unwrap() * gamma(&ctx.ratio(3, 4), &ctx).unwrap();
        let want = const_pi(&ctx) * ctx.real(2).sqrt();
        assert!(rel_err(&product, &want) < ctx.pow10(-45));
    }

    #[test]
    fn gamma_matches_mpfr_reference() {
        for digits in [30, 50, 80] {
            let ctx = PrecisionContext::new(digits).unwrap();
            let tol = ctx.pow10(-(digits as i32) + 5);
            for (p, q) in [(1, 7), (2, 7), (4, 7), (1, 3), (1, 4), (5, 2), (17, 3), (40, 1)] {
                let x = ctx.ratio(p, q);
                let ours = gamma(&x, &ctx).unwrap();
                let reference = x.clone().gamma();
                assert!(rel_err(&ours, &reference) < tol, "Γ({p}/{q}) at {digits} digits");
            }
        }
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let ctx = PrecisionContext::default();
        let tol = ctx.pow10(-(ctx.digits() as i32) + 6);
        // x ∈ {0.1, 0.25, 0.4, …, 5}
        let mut grid = vec![ctx.ratio(1, 10)];
        let mut x = ctx.ratio(1, 4);
        while x <= 5 {
            grid.push(x.clone());
            x += ctx.ratio(3, 20);
        }
        for x in grid {
            let lhs = gamma(&(x.clone() + 1u32), &ctx).unwrap();
            let rhs = x.clone() * gamma(&x, &ctx).unwrap();
            assert!(rel_err(&lhs, &rhs) < tol, "x = {}", x.to_f64());
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        let ctx = PrecisionContext::default();
        assert!(matches!(gamma(&ctx.real(0), &ctx), Err(Error::Domain(_))));
        assert!(gamma(&ctx.real(-1.5), &ctx).is_err());
    }

    #[test]
    fn pochhammer_values() {
        let ctx = PrecisionContext::default();
        assert_eq!(pochhammer(&ctx.real(0.3), 0), 1);
        assert_eq!(pochhammer(&ctx.ratio(1, 2), 2), 0.75);
        let mut factorial = ctx.real(1);
        for n in 1..=20u32 {
            factorial *= n;
            assert_eq!(pochhammer(&ctx.real(1), n), factorial);
        }
    }

    #[test]
    fn pochhammer_step_recurrence() {
        let ctx = PrecisionContext::default();
        for x in [ctx.ratio(1, 3), ctx.real(2.75), ctx.ratio(22, 7)] {
            for n in 1..15u32 {
                let step = pochhammer(&x, n - 1) * (x.clone() + (n - 1));
                assert_eq!(pochhammer(&x, n), step);
            }
        }
    }
}
