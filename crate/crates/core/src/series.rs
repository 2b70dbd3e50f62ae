//! Hypergeometric series with coefficients `cₙ = (1/2)ₙ³/(1)ₙ³`.
//!
//! * Clausen form: `Σ cₙ (−a²)ⁿ = (4/π²)[K((1−√(1+a²))/2)]²`.
//! * Its term-by-term `a`-derivative.
//! * Ramanujan-type series `Σ cₙ (A n + B) zⁿ` evaluating to multiples of
//!   `1/π`, and the linear combination `α·S(a*) + β·S′(a*)` of the Clausen
//!   series that reproduces them term by term.
//!
//! Terms are generated by the ratio `c_{n+1}/cₙ = ((n+1/2)/(n+1))³`.

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{const_pi, PrecisionContext};

/// Upper limit on the number of terms chosen automatically.
const MAX_AUTO_TERMS: u32 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesId {
    Clausen,
    ClausenDa,
    LegendreSum,
    /// `Σ cₙ (6n+1)(−1/8)ⁿ = 2√2/π`.
    EighthRatio,
    /// `Σ cₙ [(30−6√3)n + 7−3√3] (−(26−15√3)/16)ⁿ = 4√2/π`.
    SqrtThreeRatio,
}

impl SeriesId {
    pub fn needs_parameter(self) -> bool {
        matches!(self, SeriesId::Clausen | SeriesId::ClausenDa | SeriesId::LegendreSum)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub id: SeriesId,
    pub param_a: Option<Float>,
    pub terms: u32,
}

impl SeriesSpec {
    pub fn new(id: SeriesId, param_a: Option<Float>, terms: u32) -> Result<Self> {
        if terms < 1 {
            return Err(Error::Domain("a series needs at least one term".into()));
        }
        match (&param_a, id.needs_parameter()) {
            (None, true) => return Err(Error::Domain(format!("{id:?} needs a parameter a"))),
            (Some(_), false) => return Err(Error::Domain(format!("{id:?} takes no parameter"))),
            (Some(a), true) if !(a.clone().abs() < 1) => {
                return Err(Error::Domain(format!("{id:?} needs |a| < 1 (got {})", a.to_f64())))
            }
            _ => {}
        }
        Ok(Self { id, param_a, terms })
    }

    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<Float> {
        let a = self.param_a.as_ref();
        match self.id {
            SeriesId::Clausen => clausen_sum(a.expect("validated"), self.terms, ctx),
            SeriesId::ClausenDa => clausen_sum_da(a.expect("validated"), self.terms, ctx),
            SeriesId::LegendreSum => legendre_sum(a.expect("validated"), self.terms, ctx),
            id => ramanujan_sum(id, self.terms, ctx),
        }
    }
}

fn check_unit(a: &Float) -> Result<()> {
    if a.clone().abs() < 1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("series needs |a| < 1 (got {})", a.to_f64())))
    }
}

/// `cₙ zⁿ` for `n = 0..=terms`.
fn weighted_terms(z: &Float, terms: u32, ctx: &PrecisionContext) -> Vec<Float> {
    let mut out = Vec::with_capacity(terms as usize + 1);
    let mut term = ctx.real(1);
    out.push(term.clone());
    for n in 0..terms {
        let r = (ctx.real(n) + 0.5f64) / (n + 1);
        term *= r.clone().square() * r * z;
        out.push(term.clone());
    }
    out
}

/// `1 + Σ_{n=1}^{N} cₙ (−a²)ⁿ`.
pub fn clausen_sum(a: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_unit(a)?;
    let z = -ctx.real(a).square();
    Ok(sum_in_order(weighted_terms(&z, terms, ctx), ctx))
}

/// `Σ_{n=1}^{N} cₙ · n · (−1)ⁿ · 2a^{2n−1}`, the derivative of
/// [`clausen_sum`] in `a`. Zero at `a = 0`.
pub fn clausen_sum_da(a: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_unit(a)?;
    if a.is_zero() {
        return Ok(ctx.real(0));
    }
    let z = -ctx.real(a).square();
    let scaled = weighted_terms(&z, terms, ctx)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, t)| t * (2 * n as u32) / a);
    Ok(sum_in_order(scaled, ctx))
}

/// `(π²/4)[1 + Σ (−1)ⁿ cₙ a^{2n}]`, the Legendre-projection form of the
/// one-parameter integral.
pub fn legendre_sum(a: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    let scale = const_pi(ctx).square() / 4u32;
    Ok(clausen_sum(a, terms, ctx)? * scale)
}

fn sum_in_order(terms: impl IntoIterator<Item = Float>, ctx: &PrecisionContext) -> Float {
    terms.into_iter().fold(ctx.real(0), |acc, t| acc + t)
}

/// Number of terms after which `|a|^{2N}` is below `tol`.
pub fn terms_for_tolerance(a: &Float, tol: &Float) -> u32 {
    let a = a.to_f64().abs();
    if a == 0.0 {
        return 1;
    }
    let needed = tol.to_f64().ln() / (2.0 * a.ln());
    if !needed.is_finite() {
        return MAX_AUTO_TERMS;
    }
    (needed.ceil() as u32).saturating_add(10).min(MAX_AUTO_TERMS)
}

/// `Σ cₙ (slope·n + intercept) ratioⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RamanujanSeries {
    pub slope: Float,
    pub intercept: Float,
    pub ratio: Float,
}

impl RamanujanSeries {
    pub fn for_id(id: SeriesId, ctx: &PrecisionContext) -> Result<Self> {
        match id {
            SeriesId::EighthRatio => Ok(Self {
                slope: ctx.real(6),
                intercept: ctx.real(1),
                ratio: ctx.ratio(-1, 8),
            }),
            SeriesId::SqrtThreeRatio => {
                let r3 = ctx.real(3).sqrt();
                Ok(Self {
                    slope: ctx.real(30) - r3.clone() * 6u32,
                    intercept: ctx.real(7) - r3.clone() * 3u32,
                    ratio: -(ctx.real(26) - r3 * 15u32) / 16u32,
                })
            }
            other => Err(Error::Domain(format!("{other:?} is not a Ramanujan-type series"))),
        }
    }

    /// The constant the series sums to: `2√2/π` and `4√2/π` respectively.
    pub fn closed_form(id: SeriesId, ctx: &PrecisionContext) -> Result<Float> {
        let root2_over_pi = ctx.real(2).sqrt() / const_pi(ctx);
        match id {
            SeriesId::EighthRatio => Ok(root2_over_pi * 2u32),
            SeriesId::SqrtThreeRatio => Ok(root2_over_pi * 4u32),
            other => Err(Error::Domain(format!("{other:?} is not a Ramanujan-type series"))),
        }
    }

    /// The `n`-th term `cₙ (slope·n + intercept) ratioⁿ`, for `n ≤ terms`.
    pub fn terms(&self, terms: u32, ctx: &PrecisionContext) -> Vec<Float> {
        weighted_terms(&self.ratio, terms, ctx)
            .into_iter()
            .enumerate()
            .map(|(n, t)| t * (self.slope.clone() * n as u32 + &self.intercept))
            .collect()
    }

    pub fn partial_sum(&self, terms: u32, ctx: &PrecisionContext) -> Float {
        sum_in_order(self.terms(terms, ctx), ctx)
    }
}

/// Partial sum through `n = terms` of a Ramanujan-type series.
pub fn ramanujan_sum(id: SeriesId, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    Ok(RamanujanSeries::for_id(id, ctx)?.partial_sum(terms, ctx))
}

/// Coefficients with `α·clausen_sum(a*) + β·clausen_sum_da(a*)` equal to a
/// Ramanujan-type series term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct Bridge {
    pub alpha: Float,
    pub beta: Float,
    pub a_star: Float,
}

/// Highest term index checked after solving for the bridge coefficients.
pub const BRIDGE_CHECK_TERMS: u32 = 5;

impl Bridge {
    /// `α·cₙ(−a*²)ⁿ + β·cₙ·2n(−1)ⁿa*^{2n−1}` for `n ≤ terms`.
    pub fn terms(&self, terms: u32, ctx: &PrecisionContext) -> Vec<Float> {
        let z = -self.a_star.clone().square();
        weighted_terms(&z, terms, ctx)
            .into_iter()
            .enumerate()
            .map(|(n, t)| {
                let derivative = t.clone() * (2 * n as u32) / &self.a_star;
                t * &self.alpha + derivative * &self.beta
            })
            .collect()
    }

    /// `α·S(a*) + β·S′(a*)` through `n = terms`.
    pub fn value(&self, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
        let s = clausen_sum(&self.a_star, terms, ctx)?;
        let ds = clausen_sum_da(&self.a_star, terms, ctx)?;
        Ok(s * &self.alpha + ds * &self.beta)
    }
}

/// Solves for `(α, β, a*)` from a Ramanujan-type series.
///
/// The evaluation point comes from matching the geometric ratio,
/// `−a*² = ratio`. Each Clausen-side term is then `cₙ ratioⁿ (α + 2nβ/a*)`,
/// linear in `n`, so the `n = 0` and `n = 1` terms give a 2×2 system; the
/// solution is checked against terms `2..=5`.
pub fn bridge_for(series: &RamanujanSeries, ctx: &PrecisionContext) -> Result<Bridge> {
    fit_bridge(&series.ratio, &series.terms(BRIDGE_CHECK_TERMS, ctx), ctx)
}

/// Fits `(α, β)` at `a* = √(−ratio)` to the given terms `t₀, t₁, …` and
/// checks every remaining term. Needs at least two terms.
pub fn fit_bridge(ratio: &Float, target: &[Float], ctx: &PrecisionContext) -> Result<Bridge> {
    if !(*ratio < 0) {
        return Err(Error::Domain("the Clausen form needs a negative ratio −a²".into()));
    }
    if target.len() < 2 {
        return Err(Error::Domain("a bridge fit needs at least two terms".into()));
    }
    let a_star = (-ratio.clone()).sqrt();
    let last = target.len() as u32 - 1;
    let clausen = weighted_terms(ratio, last, ctx);
    // rows: [cₙ zⁿ, cₙ zⁿ·2n/a*] · (α, β) = targetₙ
    let row = |n: usize| {
        let f = clausen[n].clone();
        let d = clausen[n].clone() * (2 * n as u32) / &a_star;
        (f, d)
    };
    let (f0, d0) = row(0);
    let (f1, d1) = row(1);
    let det = f0.clone() * &d1 - d0.clone() * &f1;
    if det.is_zero() {
        return Err(Error::Inconsistency { n: 1, residual: "singular system".into() });
    }
    let alpha = (target[0].clone() * &d1 - d0 * &target[1]) / &det;
    let beta = (f0 * &target[1] - f1 * &target[0]) / &det;
    let bridge = Bridge { alpha, beta, a_star };

    let produced = bridge.terms(last, ctx);
    for (n, (got, want)) in produced.iter().zip(target).enumerate() {
        let scale = want.clone().abs().max(&ctx.real(1));
        let residual = (got.clone() - want).abs() / scale;
        if residual > *ctx.pass_tol() {
            return Err(Error::Inconsistency {
                n: n as u32,
                residual: crate::numeric::to_decimal(&residual, 6),
            });
        }
    }
    Ok(bridge)
}

/// Bridge coefficients for one of the two tabulated series.
pub fn linear_bridge(id: SeriesId, ctx: &PrecisionContext) -> Result<Bridge> {
    bridge_for(&RamanujanSeries::for_id(id, ctx)?, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::rhs_ode_closed_form;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn clausen_at_zero() {
        let ctx = ctx();
        assert_eq!(clausen_sum(&ctx.real(0), 50, &ctx).unwrap(), 1);
        assert_eq!(clausen_sum_da(&ctx.real(0), 50, &ctx).unwrap(), 0);
    }

    #[test]
    fn clausen_matches_squared_k() {
        let ctx = ctx();
        let a = ctx.real(8).sqrt().recip();
        let series = clausen_sum(&a, 300, &ctx).unwrap();
        let closed = rhs_ode_closed_form(&a, &ctx).unwrap() * 4u32 / const_pi(&ctx).square();
        assert!((series - closed).abs() <= *ctx.pass_tol());
    }

    #[test]
    fn derivative_small_a_limit() {
        let ctx = ctx();
        let d = clausen_sum_da(&ctx.pow10(-20), 50, &ctx).unwrap();
        // leading term −2·(1/8)·a
        assert!((d + ctx.pow10(-20) / 4u32).abs() < ctx.pow10(-55));
    }

    #[test]
    fn derivative_against_central_difference() {
        let ctx = ctx();
        let a = ctx.ratio(3, 10);
        let h = ctx.pow10(-10);
        let up = clausen_sum(&(a.clone() + &h), 400, &ctx).unwrap();
        let down = clausen_sum(&(a.clone() - &h), 400, &ctx).unwrap();
        let fd = (up - down) / (h * 2u32);
        let exact = clausen_sum_da(&a, 400, &ctx).unwrap();
        assert!((fd - exact).abs() < ctx.pow10(-18));
    }

    #[test]
    fn derivative_consistency_grid() {
        let ctx = ctx();
        let digits = ctx.digits() as i32;
        let h = ctx.pow10(-digits / 3);
        let tol = ctx.pow10(-digits / 2);
        for a in [ctx.ratio(1, 10), ctx.ratio(3, 10), ctx.ratio(35, 100)] {
            let up = clausen_sum(&(a.clone() + &h), 600, &ctx).unwrap();
            let down = clausen_sum(&(a.clone() - &h), 600, &ctx).unwrap();
            let fd = (up - down) / (h.clone() * 2u32);
            let exact = clausen_sum_da(&a, 600, &ctx).unwrap();
            assert!((fd - exact).abs() < tol, "a = {}", a.to_f64());
        }
    }

    #[test]
    fn geometric_tail() {
        let ctx = ctx();
        for a in [0.3, 0.7, 0.95] {
            let a = ctx.real(a);
            for n in [20u32, 40, 80] {
                let d = (clausen_sum(&a, n, &ctx).unwrap() - clausen_sum(&a, 2 * n, &ctx).unwrap()).abs();
                let bound = a.clone().abs().square().pow_u(n);
                assert!(d <= bound, "a = {}, N = {n}", a.to_f64());
            }
        }
    }

    #[test]
    fn domain_errors() {
        let ctx = ctx();
        assert!(clausen_sum(&ctx.real(1), 5, &ctx).is_err());
        assert!(clausen_sum_da(&ctx.real(-1.2), 5, &ctx).is_err());
        assert!(SeriesSpec::new(SeriesId::Clausen, None, 5).is_err());
        assert!(SeriesSpec::new(SeriesId::EighthRatio, Some(ctx.real(0.1)), 5).is_err());
        assert!(SeriesSpec::new(SeriesId::Clausen, Some(ctx.real(0.1)), 0).is_err());
        assert!(ramanujan_sum(SeriesId::Clausen, 5, &ctx).is_err());
    }

    #[test]
    fn ramanujan_series_values() {
        let ctx = ctx();
        let g = ramanujan_sum(SeriesId::EighthRatio, 200, &ctx).unwrap();
        let want = RamanujanSeries::closed_form(SeriesId::EighthRatio, &ctx).unwrap();
        assert!((g - want).abs() <= ctx.pow10(-(ctx.digits() as i32) + 10));
        let b = ramanujan_sum(SeriesId::SqrtThreeRatio, 400, &ctx).unwrap();
        let want = RamanujanSeries::closed_form(SeriesId::SqrtThreeRatio, &ctx).unwrap();
        assert!((b - want).abs() <= *ctx.pass_tol());
        assert_eq!(ramanujan_sum(SeriesId::EighthRatio, 0, &ctx).unwrap(), 1);
    }

    #[test]
    fn spec_evaluation_dispatch() {
        let ctx = ctx();
        let a = ctx.real(0.4);
        let spec = SeriesSpec::new(SeriesId::LegendreSum, Some(a.clone()), 100).unwrap();
        let want = clausen_sum(&a, 100, &ctx).unwrap() * const_pi(&ctx).square() / 4u32;
        assert_eq!(spec.evaluate(&ctx).unwrap(), want);
    }

    #[test]
    fn eighth_ratio_bridge_coefficients() {
        let ctx = ctx();
        let bridge = linear_bridge(SeriesId::EighthRatio, &ctx).unwrap();
        let a_star = ctx.real(8).sqrt().recip();
        let tol = ctx.pow10(-60);
        assert!((bridge.a_star.clone() - &a_star).abs() < tol);
        assert!((bridge.alpha.clone() - 1u32).abs() < tol);
        // 2β/a* = 6
        assert!((bridge.beta.clone() - a_star * 3u32).abs() < tol);
    }

    #[test]
    fn sqrt3_bridge_point() {
        let ctx = ctx();
        let bridge = linear_bridge(SeriesId::SqrtThreeRatio, &ctx).unwrap();
        let r3 = ctx.real(3).sqrt();
        let want = (ctx.real(26) - r3 * 15u32).sqrt() / 4u32;
        assert!((bridge.a_star - want).abs() < ctx.pow10(-60));
    }

    #[test]
    fn bridged_series_equals_ramanujan_sum() {
        let ctx = ctx();
        for id in [SeriesId::EighthRatio, SeriesId::SqrtThreeRatio] {
            let bridge = linear_bridge(id, &ctx).unwrap();
            let bridged = bridge.value(400, &ctx).unwrap();
            let direct = ramanujan_sum(id, 400, &ctx).unwrap();
            assert!((bridged - direct).abs() <= *ctx.pass_tol(), "{id:?}");
        }
    }

    #[test]
    fn degenerate_bridge_is_pure_clausen() {
        let ctx = ctx();
        let series = RamanujanSeries { slope: ctx.real(0), intercept: ctx.real(1), ratio: ctx.ratio(-1, 5) };
        let bridge = bridge_for(&series, &ctx).unwrap();
        assert!(bridge.beta.clone().abs() < ctx.pow10(-60));
        assert!((bridge.alpha.clone() - 1u32).abs() < ctx.pow10(-60));
        let a = bridge.a_star.clone();
        let diff = bridge.value(300, &ctx).unwrap() - clausen_sum(&a, 300, &ctx).unwrap();
        assert!(diff.abs() < ctx.pow10(-60));
    }

    #[test]
    fn inconsistent_series_is_rejected() {
        let ctx = ctx();
        let ratio = ctx.ratio(-1, 8);
        // cₙ (n² + 1) zⁿ is quadratic in n
        let target: Vec<Float> = weighted_terms(&ratio, 5, &ctx)
            .into_iter()
            .enumerate()
            .map(|(n, t)| t * ((n * n + 1) as u32))
            .collect();
        match fit_bridge(&ratio, &target, &ctx) {
            Err(Error::Inconsistency { n, .. }) => assert_eq!(n, 2),
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(fit_bridge(&ratio, &target[..2], &ctx).is_ok());
        assert!(fit_bridge(&ratio, &target[..1], &ctx).is_err());
        let bad = RamanujanSeries { slope: ctx.real(1), intercept: ctx.real(1), ratio: ctx.real(0.5) };
        assert!(bridge_for(&bad, &ctx).is_err());
    }

    #[test]
    fn auto_terms() {
        let ctx = ctx();
        let n = terms_for_tolerance(&ctx.real(0.5), ctx.quad_target());
        assert!(ctx.real(0.25).pow_u(n) < *ctx.quad_target());
        assert_eq!(terms_for_tolerance(&ctx.real(0), ctx.quad_target()), 1);
    }

    trait PowU {
        fn pow_u(self, e: u32) -> Float;
    }
    impl PowU for Float {
        fn pow_u(self, e: u32) -> Float {
            use rug::ops::Pow;
            self.pow(e)
        }
    }
}
