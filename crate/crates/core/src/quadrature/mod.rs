//! Double-exponential quadrature at arbitrary precision.
//!
//! Finite panels use the tanh-sinh map `x = c + h·tanh((π/2) sinh t)`;
//! a final panel `[lo, ∞)` uses exp-sinh, `x = lo + exp((π/2) sinh t)`.
//! The interval is split at every declared singular point so that each
//! integrable singularity sits at a panel end, where the transformed
//! integrand decays double-exponentially.
//!
//! Each panel halves its step until successive trapezoid sums differ by at
//! most its share of the target. Nodes of one level are evaluated in
//! parallel but summed in index order, so results are bit-reproducible.

mod integrands;

pub use integrands::{kernel, Integrand};

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{to_decimal, BigComplex, PrecisionContext};

/// Lowest level accepted as converged; guards against two coarse sums
/// agreeing by accident.
pub const DEFAULT_MIN_LEVEL: u32 = 4;

/// A quadrature node, carrying its distances to the ends of the panel so
/// integrands can resolve behaviour at an endpoint below the spacing of
/// representable `x`.
#[derive(Debug, Clone)]
pub struct Abscissa {
    x: Float,
    lo: Float,
    hi: Option<Float>,
    lo_gap: Float,
    hi_gap: Option<Float>,
}

impl Abscissa {
    pub fn x(&self) -> &Float {
        &self.x
    }

    /// `x − p`, computed from the nearer panel endpoint. Exact up to one
    /// rounding whenever `p` is that endpoint.
    pub fn offset_from(&self, p: &Float) -> Float {
        match (&self.hi, &self.hi_gap) {
            (Some(hi), Some(hi_gap)) if *hi_gap < self.lo_gap => (hi.clone() - p) - hi_gap,
            _ => (self.lo.clone() - p) + &self.lo_gap,
        }
    }

    /// A standalone node at `x`, for evaluating integrands outside a
    /// quadrature rule.
    pub fn at(x: Float) -> Self {
        let lo = x.clone();
        let lo_gap = Float::new(x.prec());
        Self { x, lo, hi: None, lo_gap, hi_gap: None }
    }
}

/// An integral to evaluate: integrand family, its parameters, the interval
/// (`hi = None` for `+∞`) and interior abscissas with integrable singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSpec {
    pub integrand: Integrand,
    pub params: Vec<Float>,
    pub lo: Float,
    pub hi: Option<Float>,
    pub singular_points: Vec<Float>,
}

impl IntegralSpec {
    pub fn new(
        integrand: Integrand,
        params: Vec<Float>,
        lo: Float,
        hi: Option<Float>,
        mut singular_points: Vec<Float>,
    ) -> Result<Self> {
        if params.len() != integrand.arity() {
            return Err(Error::InvalidSpec(format!(
                "{integrand:?} takes {} parameter(s), got {}",
                integrand.arity(),
                params.len()
            )));
        }
        if let Some(hi) = &hi {
            if !(lo < *hi) {
                return Err(Error::InvalidSpec(format!(
                    "empty interval ({}, {})",
                    lo.to_f64(),
                    hi.to_f64()
                )));
            }
        }
        singular_points.sort_by(|a, b| a.partial_cmp(b).expect("singular points are not NaN"));
        for p in &singular_points {
            let inside = *p > lo && hi.as_ref().map_or(true, |hi| *p < *hi);
            if !inside {
                return Err(Error::InvalidSpec(format!(
                    "singular point {} is not interior to the interval",
                    p.to_f64()
                )));
            }
        }
        if singular_points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpec("duplicate singular point".into()));
        }
        Ok(Self { integrand, params, lo, hi, singular_points })
    }

    /// The integrand over its natural interval with its own singular points.
    pub fn natural(integrand: Integrand, params: Vec<Float>, ctx: &PrecisionContext) -> Result<Self> {
        if params.len() != integrand.arity() {
            return Err(Error::InvalidSpec(format!(
                "{integrand:?} takes {} parameter(s), got {}",
                integrand.arity(),
                params.len()
            )));
        }
        let (lo, hi, singular) = integrand.natural_interval(&params, ctx);
        Self::new(integrand, params, lo, hi, singular)
    }
}

/// Outcome of one integration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub value: BigComplex,
    /// Sum over panels of `|S_L − S_{L−1}|`, floored at the accumulated
    /// rounding error of the final sum.
    pub err_estimate: Float,
    pub panels: usize,
    /// Highest level reached on any panel.
    pub levels: u32,
}

/// Level limits and the absolute error target.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadOptions {
    pub min_level: u32,
    pub level_cap: u32,
    pub target: Float,
}

impl QuadOptions {
    pub fn from_context(ctx: &PrecisionContext) -> Self {
        Self {
            min_level: DEFAULT_MIN_LEVEL,
            level_cap: ctx.level_cap(),
            target: ctx.quad_target().clone(),
        }
    }
}

/// Integrates a catalog integrand.
pub fn integrate(spec: &IntegralSpec, ctx: &PrecisionContext) -> Result<QuadResult> {
    integrate_with(spec, ctx, &QuadOptions::from_context(ctx))
}

pub fn integrate_with(spec: &IntegralSpec, ctx: &PrecisionContext, opts: &QuadOptions) -> Result<QuadResult> {
    let integrand = spec.integrand;
    let params = &spec.params;
    let f = |node: &Abscissa| integrand.eval(params, node, ctx);
    integrate_fn(&f, &spec.lo, spec.hi.as_ref(), &spec.singular_points, ctx, opts)
}

/// Integrates a complex-valued catalog integrand (principal-branch square
/// roots in the denominator).
pub fn integrate_complex_kernel(spec: &IntegralSpec, ctx: &PrecisionContext) -> Result<QuadResult> {
    if !spec.integrand.is_complex() {
        return Err(Error::InvalidSpec(format!("{:?} is real-valued", spec.integrand)));
    }
    integrate(spec, ctx)
}

/// Integrates an arbitrary closure over `[lo, hi]` (or `[lo, ∞)`), split at
/// `singular_points`, which must be sorted and interior.
pub fn integrate_fn<F>(
    f: &F,
    lo: &Float,
    hi: Option<&Float>,
    singular_points: &[Float],
    ctx: &PrecisionContext,
    opts: &QuadOptions,
) -> Result<QuadResult>
where
    F: Fn(&Abscissa) -> Result<BigComplex> + Sync,
{
    let mut breaks: Vec<Float> = Vec::with_capacity(singular_points.len() + 2);
    breaks.push(ctx.real(lo));
    breaks.extend(singular_points.iter().map(|p| ctx.real(p)));
    let mut panels: Vec<(Float, Option<Float>)> =
        breaks.windows(2).map(|w| (w[0].clone(), Some(w[1].clone()))).collect();
    panels.push((breaks.last().expect("nonempty").clone(), hi.map(|h| ctx.real(h))));

    let share = opts.target.clone() / panels.len() as u32;
    let mut value = BigComplex::zero(ctx.bits());
    let mut err = ctx.real(0);
    let mut levels = 0;
    for (a, b) in &panels {
        let panel = match b {
            Some(b) => integrate_panel(f, Panel::Finite { lo: a, hi: b }, ctx, opts, &share)?,
            None => integrate_panel(f, Panel::HalfLine { lo: a }, ctx, opts, &share)?,
        };
        value = &value + &panel.value;
        err += &panel.err_estimate;
        levels = levels.max(panel.levels);
    }
    Ok(QuadResult { value, err_estimate: err, panels: panels.len(), levels })
}

#[derive(Clone, Copy)]
enum Panel<'a> {
    Finite { lo: &'a Float, hi: &'a Float },
    HalfLine { lo: &'a Float },
}

/// Largest |t| needed: nodes closer to an endpoint than `10^-cutoff` (finite
/// panels) or outside `[10^-cutoff, 10^cutoff]` (half line) are dropped.
fn t_max(panel: Panel<'_>, ctx: &PrecisionContext) -> f64 {
    // Twice the working digits so that even x^(-1/2) endpoint behaviour
    // leaves a truncation error far below the target.
    let cutoff = 2.0 * (f64::from(ctx.digits()) + 10.0) * std::f64::consts::LN_10;
    let s_max = match panel {
        Panel::Finite { .. } => cutoff / 2.0,
        Panel::HalfLine { .. } => cutoff,
    };
    (2.0 * s_max / std::f64::consts::PI).asinh()
}

fn node(panel: Panel<'_>, t: &Float, ctx: &PrecisionContext) -> (Abscissa, Float) {
    let half_pi = ctx.pi() / 2u32;
    let s = half_pi.clone() * t.clone().sinh();
    let dt = half_pi * t.clone().cosh();
    match panel {
        Panel::Finite { lo, hi } => {
            let half = (hi.clone() - lo) / 2u32;
            let s_abs = s.clone().abs();
            // 1 − tanh|s| = 2 / (e^{2|s|} + 1)
            let e2 = (s_abs.clone() * 2u32).exp();
            let gap = half.clone() * 2u32 / (e2 + 1u32);
            let cosh_s = s_abs.cosh();
            let weight = half.clone() * dt / cosh_s.square();
            let width = half * 2u32;
            let (lo_gap, hi_gap) = if s.is_sign_negative() {
                (gap.clone(), width - &gap)
            } else {
                (width - &gap, gap.clone())
            };
            let x = if s.is_sign_negative() { lo.clone() + &lo_gap } else { hi.clone() - &hi_gap };
            let abscissa = Abscissa {
                x,
                lo: lo.clone(),
                hi: Some(hi.clone()),
                lo_gap,
                hi_gap: Some(hi_gap),
            };
            (abscissa, weight)
        }
        Panel::HalfLine { lo } => {
            let gap = s.exp();
            let weight = dt * &gap;
            let abscissa = Abscissa {
                x: lo.clone() + &gap,
                lo: lo.clone(),
                hi: None,
                lo_gap: gap,
                hi_gap: None,
            };
            (abscissa, weight)
        }
    }
}

struct PanelResult {
    value: BigComplex,
    err_estimate: Float,
    levels: u32,
}

fn integrate_panel<F>(
    f: &F,
    panel: Panel<'_>,
    ctx: &PrecisionContext,
    opts: &QuadOptions,
    target: &Float,
) -> Result<PanelResult>
where
    F: Fn(&Abscissa) -> Result<BigComplex> + Sync,
{
    let t_max = t_max(panel, ctx);
    let mut raw = BigComplex::zero(ctx.bits());
    let mut magnitude = ctx.real(0);
    let mut previous: Option<BigComplex> = None;
    let mut last_diff = ctx.real(0);
    for level in 0..=opts.level_cap {
        let step = ctx.real(Float::i_exp(1, -(level as i32)));
        let count = (t_max * f64::from(1u32 << level)).floor() as i64;
        let indices: Vec<i64> = if level == 0 {
            (-count..=count).collect()
        } else {
            (-count..=count).filter(|j| j % 2 != 0).collect()
        };
        let terms: Vec<Result<(BigComplex, Float)>> = indices
            .par_iter()
            .map(|&j| {
                let t = step.clone() * j;
                let (abscissa, weight) = node(panel, &t, ctx);
                if weight.is_zero() {
                    return Ok((BigComplex::zero(ctx.bits()), ctx.real(0)));
                }
                let value = f(&abscissa).map_err(|e| Error::IntegrandFailure {
                    at: to_decimal(abscissa.x(), 25),
                    reason: e.to_string(),
                })?;
                if !(value.re.is_finite() && value.im.is_finite()) {
                    return Err(Error::IntegrandFailure {
                        at: to_decimal(abscissa.x(), 25),
                        reason: "non-finite value".into(),
                    });
                }
                let term = value.scale(&weight);
                let size = term.abs();
                Ok((term, size))
            })
            .collect();
        for term in terms {
            let (term, size) = term?;
            raw = &raw + &term;
            magnitude += size;
        }
        let estimate = raw.scale(&step);
        // rounding accumulated across all the terms summed so far
        let roundoff = magnitude.clone() * &step * ctx.epsilon() * 64u32;
        if let Some(prev) = &previous {
            last_diff = (&estimate - prev).abs();
            let err = last_diff.clone().max(&roundoff);
            if level >= opts.min_level && err <= *target {
                return Ok(PanelResult { value: estimate, err_estimate: err, levels: level });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence {
        levels: opts.level_cap,
        estimate: to_decimal(&last_diff, 6),
    })
}
