//! The integrands of the identity catalog, one variant per printed formula.
//!
//! Every integrand is written out in full rather than derived from a shared
//! normalized kernel. The only rewrites are algebraically exact ones that
//! move cancellation-prone differences onto [`Abscissa::offset_from`], so
//! the factor that vanishes at a singular abscissa is computed from the
//! node's distance to it.

use rug::Float;

use super::Abscissa;
use crate::elliptic::{ellip_k_from_kprime, ellip_k_real};
use crate::error::Result;
use crate::numeric::{BigComplex, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Integrand {
    /// `1` on `[0, 1]`.
    Unit,
    /// `K(2√(x(1−x)))` on `[0, 1]`.
    Kernel,
    /// `K(2√(x(1−x))) / √(1 − 2(2x−1)a + a²)`; parameter `a`.
    KernelOverGenerating,
    /// `K(2√(x(1−x)))(4x + 3√2 − 2) / (4√2 + 9 − 8√2 x)^{3/2}`.
    KernelBridgeRoot2,
    /// `K(2√(x(1−x))) / √(9/8 + (1−2x)/√2)`.
    KernelSingularQuarter,
    /// `K(2√(x(1−x))) / √(3 + 4i(1−2x))`.
    KernelComplexThird,
    /// `K(2√(x(1−x))) / √(63 + 16i(1−2x))`.
    KernelComplexSeventh,
    /// `K(2√(x(1−x))) / √(α + (β_re + iβ_im)(1−2x))`; parameters
    /// `α, β_re, β_im`.
    KernelAffineRoot,
    /// `K(2√((1−x)x))[24 − 18√3 + √2(6√3 − 11)(2x−1)]
    ///  / [42 − 15√3 − 4√2(3√3 − 5)(2x−1)]^{3/2}`.
    KernelBridgeRoot3,
    /// `K(2√(x(1−x))) x(1−x) / [1 − 2x(1−x)]^{3/2}`.
    KernelAxisSpecial,
    /// `K(√(4c tanθ / (b² + (c+tanθ)²))) sinθ / √(b² + (c+tanθ)²)` on
    /// `[0, π/2]`; parameters `b, c`.
    Cylinder,
    /// The `b = 0` face: `K(√(4c tanθ/(c+tanθ)²)) sinθ / (c + tanθ)`;
    /// parameter `c`.
    CylinderAxis,
    /// After `θ = arctan(cx)`:
    /// `K(2√x/(1+x)) c x / ((1+x)(1+c²x²)^{3/2})` on `[0, ∞)`; parameter `c`.
    CylinderAxisRational,
    /// `Re[K(x)] c x / (1 + c²x²)^{3/2}` on `[0, ∞)` (modulus `x`);
    /// parameter `c`.
    SemiInfiniteRealPart,
}

impl Integrand {
    pub const ALL: [Integrand; 14] = [
        Integrand::Unit,
        Integrand::Kernel,
        Integrand::KernelOverGenerating,
        Integrand::KernelBridgeRoot2,
        Integrand::KernelSingularQuarter,
        Integrand::KernelComplexThird,
        Integrand::KernelComplexSeventh,
        Integrand::KernelAffineRoot,
        Integrand::KernelBridgeRoot3,
        Integrand::KernelAxisSpecial,
        Integrand::Cylinder,
        Integrand::CylinderAxis,
        Integrand::CylinderAxisRational,
        Integrand::SemiInfiniteRealPart,
    ];

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Integrand::KernelOverGenerating => &["a"],
            Integrand::KernelAffineRoot => &["alpha", "beta_re", "beta_im"],
            Integrand::Cylinder => &["b", "c"],
            Integrand::CylinderAxis | Integrand::CylinderAxisRational | Integrand::SemiInfiniteRealPart => &["c"],
            _ => &[],
        }
    }

    pub fn arity(self) -> usize {
        self.param_names().len()
    }

    pub fn is_complex(self) -> bool {
        matches!(
            self,
            Integrand::KernelComplexThird | Integrand::KernelComplexSeventh | Integrand::KernelAffineRoot
        )
    }

    /// Interval and interior singular abscissas.
    pub fn natural_interval(self, params: &[Float], ctx: &PrecisionContext) -> (Float, Option<Float>, Vec<Float>) {
        let zero = ctx.real(0);
        match self {
            Integrand::Unit => (zero, Some(ctx.real(1)), vec![]),
            Integrand::Cylinder | Integrand::CylinderAxis => {
                let (b, c) = cylinder_params(self, params);
                let singular = if b.is_zero() && *c > 0 { vec![ctx.real(c).atan()] } else { vec![] };
                (zero, Some(ctx.pi() / 2u32), singular)
            }
            Integrand::CylinderAxisRational | Integrand::SemiInfiniteRealPart => (zero, None, vec![ctx.real(1)]),
            // K(2√(x(1−x))) has its logarithmic singularity at x = 1/2
            _ => (zero, Some(ctx.real(1)), vec![ctx.ratio(1, 2)]),
        }
    }

    pub fn eval(self, params: &[Float], node: &Abscissa, ctx: &PrecisionContext) -> Result<BigComplex> {
        let x = node.x();
        let real = |v: Float| Ok(BigComplex::from_real(v));
        match self {
            Integrand::Unit => real(ctx.real(1)),
            Integrand::Kernel => real(kernel(node, ctx)?),
            Integrand::KernelOverGenerating => {
                let a = &params[0];
                // 1 − 2(2x−1)a + a² = (1−a)² + 4a(1−x)
                let one_minus_x = -node.offset_from(&ctx.real(1));
                let denom = (ctx.real(1) - a).square() + ctx.real(a) * 4u32 * one_minus_x;
                real(kernel(node, ctx)? / denom.sqrt())
            }
            Integrand::KernelBridgeRoot2 => {
                let r2 = ctx.real(2).sqrt();
                let num = ctx.real(x) * 4u32 + r2.clone() * 3u32 - 2u32;
                let den = r2.clone() * 4u32 + 9u32 - r2 * 8u32 * x;
                real(kernel(node, ctx)? * num / three_halves(&den))
            }
            Integrand::KernelSingularQuarter => {
                let r2 = ctx.real(2).sqrt();
                let den = ctx.ratio(9, 8) + one_minus_two_x(node, ctx) / r2;
                real(kernel(node, ctx)? / den.sqrt())
            }
            Integrand::KernelComplexThird => {
                let den = BigComplex::new(ctx.real(3), one_minus_two_x(node, ctx) * 4u32);
                Ok(den.sqrt().recip().scale(&kernel(node, ctx)?))
            }
            Integrand::KernelComplexSeventh => {
                let den = BigComplex::new(ctx.real(63), one_minus_two_x(node, ctx) * 16u32);
                Ok(den.sqrt().recip().scale(&kernel(node, ctx)?))
            }
            Integrand::KernelAffineRoot => {
                let u = one_minus_two_x(node, ctx);
                let den = BigComplex::new(ctx.real(&params[0]) + u.clone() * &params[1], u * &params[2]);
                Ok(den.sqrt().recip().scale(&kernel(node, ctx)?))
            }
            Integrand::KernelBridgeRoot3 => {
                let r2 = ctx.real(2).sqrt();
                let r3 = ctx.real(3).sqrt();
                let v = -one_minus_two_x(node, ctx); // 2x − 1
                let num = ctx.real(24) - r3.clone() * 18u32
                    + r2.clone() * (r3.clone() * 6u32 - 11u32) * &v;
                let den = ctx.real(42) - r3.clone() * 15u32 - r2 * 4u32 * (r3 * 3u32 - 5u32) * v;
                real(kernel(node, ctx)? * num / three_halves(&den))
            }
            Integrand::KernelAxisSpecial => {
                let p = ctx.real(x) * (ctx.real(1) - x);
                let den = ctx.real(1) - p.clone() * 2u32;
                real(kernel(node, ctx)? * p / three_halves(&den))
            }
            Integrand::Cylinder | Integrand::CylinderAxis => {
                let (b, c) = cylinder_params(self, params);
                real(cylinder(b, c, node, ctx)?)
            }
            Integrand::CylinderAxisRational => {
                let c = &params[0];
                // k = 2√x/(1+x), so k' = |1−x|/(1+x)
                let one_plus_x = ctx.real(x) + 1u32;
                let kprime = node.offset_from(&ctx.real(1)).abs() / &one_plus_x;
                let k = ellip_k_from_kprime(&kprime, ctx)?;
                let cx = ctx.real(c) * x;
                let den = one_plus_x * three_halves(&(cx.clone().square() + 1u32));
                real(k * cx / den)
            }
            Integrand::SemiInfiniteRealPart => {
                let c = &params[0];
                let re_k = re_k_of_modulus(node, ctx)?;
                let cx = ctx.real(c) * x;
                let den = three_halves(&(cx.clone().square() + 1u32));
                real(re_k * cx / den)
            }
        }
    }
}

fn cylinder_params<'a>(which: Integrand, params: &'a [Float]) -> (Float, &'a Float) {
    match which {
        Integrand::Cylinder => (params[0].clone(), &params[1]),
        _ => (Float::new(params[0].prec()), &params[0]),
    }
}

/// `1 − 2x`, exact near `x = 1/2` when 1/2 is a panel end.
fn one_minus_two_x(node: &Abscissa, ctx: &PrecisionContext) -> Float {
    -(node.offset_from(&ctx.ratio(1, 2)) * 2u32)
}

/// `K(2√(x(1−x)))`; the complementary modulus is `|1 − 2x|`.
pub fn kernel(node: &Abscissa, ctx: &PrecisionContext) -> Result<Float> {
    ellip_k_from_kprime(&one_minus_two_x(node, ctx).abs(), ctx)
}

fn three_halves(v: &Float) -> Float {
    v.clone().sqrt() * v
}

/// `Re K` at modulus `x ≥ 0`: `K(x²)` below 1, `K(1/x²)/x` above.
fn re_k_of_modulus(node: &Abscissa, ctx: &PrecisionContext) -> Result<Float> {
    let x = node.x();
    let d = node.offset_from(&ctx.real(1)); // x − 1
    let plus = ctx.real(x) + 1u32;
    if d.is_sign_negative() {
        // k' = √((1−x)(1+x))
        ellip_k_from_kprime(&(-d * plus).sqrt(), ctx)
    } else {
        // K(1/x²)/x with k' = √((x−1)(x+1))/x
        let kprime = (d * plus).sqrt() / x;
        Ok(ellip_k_from_kprime(&kprime, ctx)? / x)
    }
}

/// The axisymmetric integrand at `(θ, b, c)`.
///
/// Multiplying numerator and denominator by `cos θ` turns
/// `b² + (c ± tan θ)²` into `[b² cos²θ + (c cos θ ± sin θ)²] / cos²θ`, and
/// `c cos θ − sin θ = sin(θ₀ − θ)/cos θ₀` with `θ₀ = arctan c`, which keeps the
/// `b = 0` singularity at `θ₀` and the end `θ = π/2` free of cancellation.
fn cylinder(b: Float, c: &Float, node: &Abscissa, ctx: &PrecisionContext) -> Result<Float> {
    let theta = node.x();
    let to_right_angle = -node.offset_from(&(ctx.pi() / 2u32)); // π/2 − θ
    let cos = to_right_angle.clone().sin();
    let sin = to_right_angle.cos();
    let theta0 = ctx.real(c).atan();
    let cos0 = theta0.clone().cos();
    let minus = (-node.offset_from(&theta0)).sin() / cos0; // c cosθ − sinθ
    let plus = ctx.real(c) * &cos + &sin;
    let bc = b.square() * cos.clone().square();
    let n_plus = bc.clone() + plus.square();
    let n_minus = bc + minus.square();
    let k = if n_minus.is_zero() {
        return Err(crate::error::Error::Singularity(format!(
            "modulus reaches 1 at θ = {}",
            theta.to_f64()
        )));
    } else if c.is_zero() {
        // m = 0 identically
        ellip_k_real(&ctx.real(0), ctx)?
    } else {
        ellip_k_from_kprime(&(n_minus / &n_plus).sqrt(), ctx)?
    };
    Ok(k * sin * cos / n_plus.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::const_pi;

    /// The printed θ-form evaluated naively, far from any singularity.
    fn cylinder_naive(theta: f64, b: f64, c: f64, ctx: &PrecisionContext) -> Float {
        let t = ctx.real(theta).tan();
        let q = ctx.real(b).square() + (t.clone() + c).square();
        let m = t.clone() * c * 4u32 / &q;
        ellip_k_real(&m, ctx).unwrap() * ctx.real(theta).sin() / q.sqrt()
    }

    #[test]
    fn cylinder_rearrangement_matches_printed_form() {
        let ctx = PrecisionContext::default();
        for (theta, b, c) in [(0.3, 0.5, 1.0), (1.2, 2.0, 0.5), (0.7, 0.0, 2.0), (1.5, 1.0, 1.0)] {
            let node = Abscissa::at(ctx.real(theta));
            let params = [ctx.real(b), ctx.real(c)];
            let v = Integrand::Cylinder.eval(&params, &node, &ctx).unwrap().re;
            let naive = cylinder_naive(theta, b, c, &ctx);
            assert!((v - naive).abs() < ctx.pow10(-55), "θ={theta} b={b} c={c}");
        }
    }

    #[test]
    fn generating_kernel_rearrangement() {
        let ctx = PrecisionContext::default();
        for (x, a) in [(0.2, 0.3), (0.9, 0.75), (0.05, 1.0)] {
            let node = Abscissa::at(ctx.real(x));
            let v = Integrand::KernelOverGenerating.eval(&[ctx.real(a)], &node, &ctx).unwrap().re;
            let xa = ctx.real(x);
            let m = xa.clone() * (ctx.real(1) - &xa) * 4u32;
            let d = ctx.real(1) - (xa * 2u32 - 1u32) * ctx.real(a) * 2u32 + ctx.real(a).square();
            let naive = ellip_k_real(&m, &ctx).unwrap() / d.sqrt();
            assert!((v - naive).abs() < ctx.pow10(-55));
        }
    }

    #[test]
    fn semi_infinite_real_part_branches() {
        let ctx = PrecisionContext::default();
        let c = [ctx.real(1)];
        // x = 2: Re K(modulus 2) = K(1/4)/2, times 2/(1+4)^{3/2}
        let v = Integrand::SemiInfiniteRealPart.eval(&c, &Abscissa::at(ctx.real(2)), &ctx).unwrap().re;
        let want = ellip_k_real(&ctx.ratio(1, 4), &ctx).unwrap() / 2u32 * 2u32
            / (ctx.real(5).sqrt() * 5u32);
        assert!((v - want).abs() < ctx.pow10(-55));
        let v0 = Integrand::SemiInfiniteRealPart.eval(&c, &Abscissa::at(ctx.real(0)), &ctx).unwrap().re;
        assert_eq!(v0, 0);
    }

    #[test]
    fn kernel_at_zero_is_half_pi() {
        let ctx = PrecisionContext::default();
        let v = Integrand::Kernel.eval(&[], &Abscissa::at(ctx.real(0)), &ctx).unwrap().re;
        assert!((v - const_pi(&ctx) / 2u32).abs() < ctx.pow10(-60));
    }

    #[test]
    fn complex_kernels_are_conjugate_symmetric() {
        let ctx = PrecisionContext::default();
        for which in [Integrand::KernelComplexThird, Integrand::KernelComplexSeventh] {
            let left = which.eval(&[], &Abscissa::at(ctx.ratio(1, 5)), &ctx).unwrap();
            let right = which.eval(&[], &Abscissa::at(ctx.ratio(4, 5)), &ctx).unwrap();
            assert!((&left - &right.conj()).abs() < ctx.pow10(-55));
            assert!(!left.is_real());
        }
    }

    #[test]
    fn arity_and_names_agree() {
        for i in Integrand::ALL {
            assert_eq!(i.arity(), i.param_names().len());
        }
        assert_eq!(Integrand::Cylinder.arity(), 2);
        assert!(Integrand::KernelComplexThird.is_complex());
        assert!(!Integrand::KernelSingularQuarter.is_complex());
    }
}
