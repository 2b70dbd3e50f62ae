//! Numerical checks that two differential operators annihilate their
//! functions:
//!
//! * the third-order operator
//!   `a²(1+a²) ∂³ + 3a(1+2a²) ∂² + (1+7a²) ∂ + a` on the one-parameter
//!   integral `I(a) = ∫₀¹ K(2√(x(1−x))) / √(1 − 2(2x−1)a + a²) dx`;
//! * the axisymmetric Laplacian `∂²_b + ∂²_c + (1/c) ∂_c`, with `b` the axial
//!   and `c` the radial coordinate, on the cylinder integrand.
//!
//! The integral route differentiates the algebraic kernel analytically and
//! integrates each derivative. Everything else uses five-point central
//! differences at two step sizes combined by Richardson extrapolation.

use rayon::prelude::*;
use rug::Float;

use crate::elliptic::rhs_ode_closed_form;
use crate::error::{Error, Result};
use crate::numeric::{BigComplex, PrecisionContext};
use crate::quadrature::{integrate_fn, kernel, Abscissa, Integrand, QuadOptions};

/// Which zeroth-order coefficient the third-order operator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeOperator {
    /// `… + a`.
    Exact,
    /// `… + 2a`, a negative control.
    CorruptedZeroth,
}

/// Which operator acts on functions of `(b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceOperator {
    /// `∂²_b + ∂²_c + (1/c) ∂_c`.
    Cylindrical,
    /// `∂²_b + ∂²_c`, a negative control.
    MissingRadialFirstOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeResidual {
    pub a: Float,
    pub residual: Float,
    /// Largest of the four term magnitudes.
    pub scale: Float,
    /// Terms from the third-order one down to the zeroth-order one.
    pub terms: [Float; 4],
    /// Residual bound relative to `scale`.
    pub threshold: Float,
}

impl OdeResidual {
    pub fn passed(&self) -> bool {
        self.residual <= self.threshold.clone() * &self.scale
    }

    pub fn relative(&self) -> Float {
        self.residual.clone() / &self.scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceResidual {
    pub theta: Float,
    pub b: Float,
    pub c: Float,
    pub residual: Float,
    /// Largest of the operator's term magnitudes.
    pub scale: Float,
    pub threshold: Float,
}

impl LaplaceResidual {
    pub fn passed(&self) -> bool {
        self.residual <= self.threshold.clone() * &self.scale
    }

    pub fn relative(&self) -> Float {
        self.residual.clone() / &self.scale
    }
}

/// Finite-difference step `10^{−digits/5}`.
pub fn fd_step(ctx: &PrecisionContext) -> Float {
    ctx.pow10(-(ctx.digits() as i32) / 5)
}

/// Bound relative to scale for finite-difference residuals, `10^{−digits/3}`.
pub fn fd_threshold(ctx: &PrecisionContext) -> Float {
    ctx.pow10(-(ctx.digits() as i32) / 3)
}

/// Bound relative to scale for the analytic-derivative residual,
/// `10^{−digits/2}`.
pub fn analytic_threshold(ctx: &PrecisionContext) -> Float {
    ctx.pow10(-(ctx.digits() as i32) / 2)
}

fn check_open_unit(a: &Float) -> Result<()> {
    if *a > 0 && *a < 1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("a must lie in (0, 1) (got {})", a.to_f64())))
    }
}

/// `∂ᵏ/∂aᵏ (1 + a² − 2au)^{−1/2}` with `u = 2x − 1`, for `k ≤ 3`.
///
/// With `w = a − u` and `D = 1 + a² − 2au`:
/// `g′ = −w D^{−3/2}`, `g″ = −D^{−3/2} + 3w² D^{−5/2}`,
/// `g‴ = 9w D^{−5/2} − 15w³ D^{−7/2}`.
pub fn generating_kernel_derivative(order: u32, a: &Float, node: &Abscissa, ctx: &PrecisionContext) -> Float {
    let one_minus_x = -node.offset_from(&ctx.real(1));
    // D = (1−a)² + 4a(1−x), w = (a − 1) + 2(1−x)
    let d = (ctx.real(1) - a).square() + ctx.real(a) * 4u32 * &one_minus_x;
    let w = (ctx.real(a) - 1u32) + one_minus_x * 2u32;
    let inv_sqrt = d.clone().sqrt().recip();
    let inv_d = d.recip();
    match order {
        0 => inv_sqrt,
        1 => -(w * inv_d * inv_sqrt),
        2 => {
            let p3 = inv_sqrt * &inv_d;
            let p5 = p3.clone() * &inv_d;
            p5 * w.square() * 3u32 - p3
        }
        3 => {
            let p5 = inv_sqrt * inv_d.clone().square();
            let p7 = p5.clone() * &inv_d;
            p5 * &w * 9u32 - p7 * w.clone().square() * w * 15u32
        }
        _ => panic!("kernel derivatives are tabulated up to third order"),
    }
}

/// `dᵏI/daᵏ` for `k = 0..=3`, each by quadrature of the differentiated
/// kernel.
pub fn integral_derivatives(a: &Float, ctx: &PrecisionContext) -> Result<[Float; 4]> {
    let opts = QuadOptions::from_context(ctx);
    let lo = ctx.real(0);
    let hi = ctx.real(1);
    let mid = [ctx.ratio(1, 2)];
    let values: Vec<Float> = (0..4u32)
        .into_par_iter()
        .map(|order| {
            let f = |node: &Abscissa| -> Result<BigComplex> {
                let k = kernel(node, ctx)?;
                Ok(BigComplex::from_real(k * generating_kernel_derivative(order, a, node, ctx)))
            };
            integrate_fn(&f, &lo, Some(&hi), &mid, ctx, &opts).map(|r| r.value.re)
        })
        .collect::<Result<_>>()?;
    Ok(values.try_into().expect("four orders"))
}

/// Combines `[f, f′, f″, f‴]` at `a` into the operator's residual.
pub fn apply_ode_operator(
    operator: OdeOperator,
    a: &Float,
    derivatives: &[Float; 4],
    threshold: Float,
    ctx: &PrecisionContext,
) -> OdeResidual {
    let a2 = ctx.real(a).square();
    let zeroth = match operator {
        OdeOperator::Exact => ctx.real(a),
        OdeOperator::CorruptedZeroth => ctx.real(a) * 2u32,
    };
    let [f0, f1, f2, f3] = derivatives;
    let terms = [
        a2.clone() * (a2.clone() + 1u32) * f3,
        ctx.real(a) * 3u32 * (a2.clone() * 2u32 + 1u32) * f2,
        (a2 * 7u32 + 1u32) * f1,
        zeroth * f0,
    ];
    let residual = terms.iter().fold(ctx.real(0), |acc, t| acc + t).abs();
    let scale = terms.iter().map(|t| t.clone().abs()).fold(ctx.real(0), |m, t| m.max(&t));
    OdeResidual { a: ctx.real(a), residual, scale, terms, threshold }
}

/// The third-order operator applied to `I(a)` through analytic kernel
/// derivatives.
pub fn ode_annihilator_residual(a: &Float, ctx: &PrecisionContext) -> Result<OdeResidual> {
    ode_annihilator_residual_with(OdeOperator::Exact, a, ctx)
}

pub fn ode_annihilator_residual_with(operator: OdeOperator, a: &Float, ctx: &PrecisionContext) -> Result<OdeResidual> {
    check_open_unit(a)?;
    let derivatives = integral_derivatives(a, ctx)?;
    Ok(apply_ode_operator(operator, a, &derivatives, analytic_threshold(ctx), ctx))
}

/// Residuals at several `a`, evaluated concurrently, in input order.
pub fn ode_residual_grid(points: &[Float], ctx: &PrecisionContext) -> Result<Vec<OdeResidual>> {
    points.par_iter().map(|a| ode_annihilator_residual(a, ctx)).collect()
}

/// Five-point central differences of order 1, 2, 3 at step `h`.
fn stencil_derivatives(v: &[Float; 5], h: &Float) -> [Float; 3] {
    let [m2, m1, z, p1, p2] = v;
    let d1 = (m2.clone() - m1.clone() * 8u32 + p1.clone() * 8u32 - p2) / (h.clone() * 12u32);
    let d2 = (p1.clone() + m1) * 16u32 - z.clone() * 30u32 - m2 - p2;
    let d2 = d2 / (h.clone().square() * 12u32);
    let d3 = (p2.clone() - m2 + (m1.clone() - p1) * 2u32) / (h.clone().square() * h * 2u32);
    [d1, d2, d3]
}

fn stencil_at<F>(f: &F, x: &Float, h: &Float) -> Result<[Float; 5]>
where
    F: Fn(&Float) -> Result<Float>,
{
    let at = |k: i32| f(&(x.clone() + h.clone() * k));
    Ok([at(-2)?, at(-1)?, at(0)?, at(1)?, at(2)?])
}

/// `[f, f′, f″, f‴]` at `x` by central differences at `h` and `h/2`,
/// Richardson-combined: fourth-order stencils become sixth order, the
/// second-order third-derivative stencil becomes fourth order.
pub fn central_derivatives<F>(f: &F, x: &Float, h: &Float) -> Result<[Float; 4]>
where
    F: Fn(&Float) -> Result<Float>,
{
    let coarse_values = stencil_at(f, x, h)?;
    let half = h.clone() / 2u32;
    let fine_values = stencil_at(f, x, &half)?;
    let coarse = stencil_derivatives(&coarse_values, h);
    let fine = stencil_derivatives(&fine_values, &half);
    let extrapolate = |k: usize, factor: u32| (fine[k].clone() * factor - &coarse[k]) / (factor - 1);
    Ok([fine_values[2].clone(), extrapolate(0, 16), extrapolate(1, 16), extrapolate(2, 4)])
}

/// The third-order operator applied to an arbitrary function of `a` by
/// finite differences.
pub fn ode_operator_on<F>(operator: OdeOperator, f: &F, a: &Float, ctx: &PrecisionContext) -> Result<OdeResidual>
where
    F: Fn(&Float) -> Result<Float>,
{
    let derivatives = central_derivatives(f, a, &fd_step(ctx))?;
    Ok(apply_ode_operator(operator, a, &derivatives, fd_threshold(ctx), ctx))
}

/// The third-order operator applied to `[K((1−√(1+a²))/2)]²` by finite
/// differences.
pub fn ode_annihilator_residual_closed_form(a: &Float, ctx: &PrecisionContext) -> Result<OdeResidual> {
    check_open_unit(a)?;
    let f = |x: &Float| rhs_ode_closed_form(x, ctx);
    ode_operator_on(OdeOperator::Exact, &f, a, ctx)
}

/// The cylinder integrand at a fixed angle as a function of `(b, c)`.
pub fn cylinder_integrand(theta: &Float, b: &Float, c: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let node = Abscissa::at(ctx.real(theta));
    Ok(Integrand::Cylinder.eval(&[ctx.real(b), ctx.real(c)], &node, ctx)?.re)
}

/// `∂²_b f + ∂²_c f (+ (1/c) ∂_c f)` by finite differences.
pub fn laplace_operator_on<F>(
    operator: LaplaceOperator,
    f: &F,
    b: &Float,
    c: &Float,
    ctx: &PrecisionContext,
) -> Result<(Float, Float)>
where
    F: Fn(&Float, &Float) -> Result<Float>,
{
    let h = fd_step(ctx);
    if !(c.clone() - h.clone() * 2u32 > 0) {
        return Err(Error::Stencil(format!("radial stencil crosses the axis at c = {}", c.to_f64())));
    }
    let along_b = |x: &Float| f(x, c);
    let along_c = |x: &Float| f(b, x);
    let db = central_derivatives(&along_b, b, &h)?;
    let dc = central_derivatives(&along_c, c, &h)?;
    let mut terms = vec![db[2].clone(), dc[2].clone()];
    if operator == LaplaceOperator::Cylindrical {
        terms.push(dc[1].clone() / c);
    }
    let residual = terms.iter().fold(ctx.real(0), |acc, t| acc + t).abs();
    let scale = terms.iter().map(|t| t.clone().abs()).fold(ctx.real(0), |m, t| m.max(&t));
    Ok((residual, scale))
}

/// The axisymmetric Laplacian applied to the cylinder integrand at `θ`.
pub fn laplace_residual(theta: &Float, b: &Float, c: &Float, ctx: &PrecisionContext) -> Result<LaplaceResidual> {
    laplace_residual_with(LaplaceOperator::Cylindrical, theta, b, c, ctx)
}

pub fn laplace_residual_with(
    operator: LaplaceOperator,
    theta: &Float,
    b: &Float,
    c: &Float,
    ctx: &PrecisionContext,
) -> Result<LaplaceResidual> {
    let half_pi = ctx.pi() / 2u32;
    if !(*b > 0 && *c > 0 && *theta > 0 && *theta < half_pi) {
        return Err(Error::Domain("needs b > 0, c > 0 and θ in (0, π/2)".into()));
    }
    let f = |bb: &Float, cc: &Float| {
        cylinder_integrand(theta, bb, cc, ctx).map_err(|e| Error::Stencil(format!("at b = {}, c = {}: {e}", bb.to_f64(), cc.to_f64())))
    };
    let (residual, scale) = laplace_operator_on(operator, &f, b, c, ctx)?;
    Ok(LaplaceResidual {
        theta: ctx.real(theta),
        b: ctx.real(b),
        c: ctx.real(c),
        residual,
        scale,
        threshold: fd_threshold(ctx),
    })
}

/// Residuals at `(θ, b, c)` points, evaluated concurrently, in input order.
pub fn laplace_residual_grid(points: &[(Float, Float, Float)], ctx: &PrecisionContext) -> Result<Vec<LaplaceResidual>> {
    points.par_iter().map(|(t, b, c)| laplace_residual(t, b, c, ctx)).collect()
}

/// `1/√(c² + (b − z₀)²)`, the potential of a point source on the axis.
pub fn axial_point_source(b: &Float, c: &Float, z0: &Float) -> Float {
    let dz = b.clone() - z0;
    (c.clone().square() + dz.square()).sqrt().recip()
}

/// The `θ, b, c` grid over `{π/6, π/4, π/3} × {1/2, 1, 2} × {1/2, 1, 2}`.
pub fn standard_laplace_grid(ctx: &PrecisionContext) -> Vec<(Float, Float, Float)> {
    let pi = ctx.pi();
    let angles = [pi.clone() / 6u32, pi.clone() / 4u32, pi / 3u32];
    let coords = [ctx.ratio(1, 2), ctx.real(1), ctx.real(2)];
    let mut out = Vec::with_capacity(27);
    for t in &angles {
        for b in &coords {
            for c in &coords {
                out.push((t.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}
