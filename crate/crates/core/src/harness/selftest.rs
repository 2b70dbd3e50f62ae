//! The built-in property suite behind `mellint selftest`.

use std::time::{Duration, Instant};

use rug::Float;

use crate::diffop::{
    axial_point_source, laplace_operator_on, laplace_residual_grid, laplace_residual_with,
    ode_annihilator_residual_closed_form, ode_annihilator_residual_with, ode_residual_grid, standard_laplace_grid,
    LaplaceOperator, OdeOperator,
};
use crate::elliptic::imaginary_modulus_residual;
use crate::error::Result;
use crate::legendre::{generating_function_check, orthogonality_gram};
use crate::numeric::PrecisionContext;
use crate::quadrature::{integrate, IntegralSpec, Integrand};
use crate::series::{legendre_sum, linear_bridge, ramanujan_sum, RamanujanSeries, SeriesId};
use crate::singular::{rhs_constant, rhs_constant_via_modulus, verify_singular_value, SingularValue, TABULATED};

use super::{params, verify, IdentityId, Params};

/// Digits for the quick suite.
pub const QUICK_DIGITS: u32 = 30;
/// Largest Legendre degree in the orthogonality check.
pub const GRAM_ORDER: u32 = 12;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub digits: u32,
    pub checks: Vec<CheckOutcome>,
    pub wall_time: Duration,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Tenths `1/10 … 9/10`.
pub fn tenths(ctx: &PrecisionContext) -> Vec<Float> {
    (1..=9).map(|k| ctx.ratio(k, 10)).collect()
}

/// Every catalog row at its standard parameter points.
pub fn catalog_cases(ctx: &PrecisionContext) -> Vec<(IdentityId, Params)> {
    let mut cases = Vec::new();
    for a in tenths(ctx) {
        cases.push((IdentityId::I1, vec![("a".to_string(), a)]));
    }
    for a in [1.5, 2.0, 4.0] {
        cases.push((IdentityId::I1Ext, params(ctx, &[("a", a)])));
    }
    for id in [IdentityId::I2, IdentityId::I3, IdentityId::I4, IdentityId::I5] {
        cases.push((id, vec![]));
    }
    let grid = [0.5, 1.0, 2.0];
    for b in grid {
        for c in grid {
            cases.push((IdentityId::I6, params(ctx, &[("b", b), ("c", c)])));
        }
    }
    cases.push((IdentityId::I7, vec![]));
    cases.push((IdentityId::I8, vec![]));
    for c in grid {
        cases.push((IdentityId::I9, params(ctx, &[("c", c)])));
    }
    cases.push((IdentityId::I10, vec![]));
    for a in [0.1, 0.5, 0.9] {
        cases.push((IdentityId::I11, params(ctx, &[("a", a)])));
    }
    for s in [1, 2] {
        cases.push((IdentityId::I12, params(ctx, &[("series", s)])));
    }
    for a in [0.1, 0.5, 0.9] {
        cases.push((IdentityId::I13, params(ctx, &[("a", a)])));
    }
    cases
}

type Check = fn(&PrecisionContext) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 11] = [
    ("catalog identities", check_catalog),
    ("legendre orthogonality", check_orthogonality),
    ("legendre generating function", check_generating_function),
    ("imaginary-modulus transform", check_imaginary_modulus),
    ("singular moduli", check_singular_values),
    ("ramanujan series and bridges", check_series),
    ("cross-route legendre sum", check_cross_route),
    ("ode annihilator", check_ode),
    ("ode negative control", check_ode_control),
    ("laplacian annihilator", check_laplace),
    ("laplacian negative control", check_laplace_control),
];

/// Runs the suite at 50 digits, or at 30 when `quick`.
pub fn selftest(quick: bool) -> Result<SelftestReport> {
    let digits = if quick { QUICK_DIGITS } else { PrecisionContext::DEFAULT_DIGITS };
    Ok(selftest_with(&PrecisionContext::new(digits)?, |_| {}))
}

/// Runs the suite at `ctx`, calling `progress` after each check.
pub fn selftest_with(ctx: &PrecisionContext, mut progress: impl FnMut(&CheckOutcome)) -> SelftestReport {
    let start = Instant::now();
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (name, check) in CHECKS {
        let t = Instant::now();
        let (passed, detail) = check(ctx).unwrap_or_else(|e| (false, format!("error: {e}")));
        let outcome = CheckOutcome { name, passed, detail, wall_time: t.elapsed() };
        progress(&outcome);
        checks.push(outcome);
    }
    SelftestReport { digits: ctx.digits(), checks, wall_time: start.elapsed() }
}

fn sci(x: &Float) -> String {
    format!("{:.2e}", x.to_f64())
}

fn max_of(values: impl IntoIterator<Item = Float>, ctx: &PrecisionContext) -> Float {
    values.into_iter().fold(ctx.real(0), |m, v| m.max(&v))
}

fn check_catalog(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let cases = catalog_cases(ctx);
    let mut failed = Vec::new();
    let mut worst = ctx.real(0);
    for (id, p) in &cases {
        let r = verify(*id, p, ctx)?;
        worst.max_mut(&r.rel_err);
        if !r.passed {
            failed.push(id.to_string());
        }
    }
    let detail = format!("{}/{} passed, worst rel_err {}", cases.len() - failed.len(), cases.len(), sci(&worst));
    if failed.is_empty() {
        Ok((true, detail))
    } else {
        Ok((false, format!("{detail}; failing: {}", failed.join(", "))))
    }
}

/// Largest `|G[n][m] − δₙₘ/(2n+1)|` for `n, m ≤ order`.
pub fn gram_deviation(order: u32, ctx: &PrecisionContext) -> Result<Float> {
    let gram = orthogonality_gram(order, ctx)?;
    let mut worst = ctx.real(0);
    for (n, row) in gram.iter().enumerate() {
        for (m, g) in row.iter().enumerate() {
            let want = if n == m { ctx.ratio(1, 2 * n as i64 + 1) } else { ctx.real(0) };
            worst.max_mut(&(g.clone() - want).abs());
        }
    }
    Ok(worst)
}

fn check_orthogonality(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let worst = gram_deviation(GRAM_ORDER, ctx)?;
    let bound = ctx.quad_target().clone() * 10u32;
    Ok((worst <= bound, format!("max deviation {} (bound {})", sci(&worst), sci(&bound))))
}

fn check_generating_function(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let terms = 120;
    let mut ok = true;
    let mut worst_ratio = 0.0f64;
    for a in [0.2, 0.5, 0.7] {
        let a = ctx.real(a);
        // |Pₙ| ≤ 1 bounds the tail by a^{N+1}/(1−a); roundoff adds a floor
        let bound = rug::ops::Pow::pow(a.clone(), terms + 1) / (ctx.real(1) - &a) + ctx.epsilon() * 64u32;
        for x in [0.0, 0.3, 0.75, 1.0] {
            let err = generating_function_check(&a, &ctx.real(x), terms, ctx)?;
            ok &= err <= bound;
            worst_ratio = worst_ratio.max((err / &bound).to_f64());
        }
    }
    Ok((ok, format!("{terms}-term tail within bound, worst error/bound {worst_ratio:.2}")))
}

fn check_imaginary_modulus(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let residuals = tenths(ctx).iter().map(|k| imaginary_modulus_residual(k, ctx)).collect::<Result<Vec<_>>>()?;
    let worst = max_of(residuals, ctx);
    Ok((worst <= *ctx.pass_tol(), format!("max residual {} over k = 0.1…0.9", sci(&worst))))
}

fn check_singular_values(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = ctx.real(0);
    for r in TABULATED {
        let residual = verify_singular_value(r, ctx)?;
        ok &= residual <= *ctx.pass_tol();
        worst.max_mut(&residual);
        let id = SingularValue::new(r, ctx)?.rhs_constant_id;
        let gap = (rhs_constant(id, ctx)? - rhs_constant_via_modulus(id, ctx)?).abs();
        ok &= gap <= *ctx.pass_tol();
        worst.max_mut(&gap);
    }
    Ok((ok, format!("K′/K residuals and gamma forms within {}", sci(&worst))))
}

fn check_series(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = ctx.real(0);
    for (id, terms) in [(SeriesId::EighthRatio, 200), (SeriesId::SqrtThreeRatio, 400)] {
        let sum = ramanujan_sum(id, terms, ctx)?;
        let err = (sum.clone() - RamanujanSeries::closed_form(id, ctx)?).abs();
        ok &= err <= *ctx.pass_tol();
        worst.max_mut(&err);
        let bridged = linear_bridge(id, ctx)?.value(terms, ctx)?;
        let gap = (bridged - sum).abs();
        ok &= gap <= *ctx.pass_tol();
        worst.max_mut(&gap);
    }
    Ok((ok, format!("sums and bridged sums within {}", sci(&worst))))
}

/// `|quadrature of the one-parameter integral − Legendre sum|` at `a`.
pub fn legendre_cross_route(a: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    let spec = IntegralSpec::natural(Integrand::KernelOverGenerating, vec![ctx.real(a)], ctx)?;
    let quad = integrate(&spec, ctx)?.value.re;
    Ok((quad - legendre_sum(a, terms, ctx)?).abs())
}

fn check_cross_route(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut worst = ctx.real(0);
    for a in [0.1, 0.3, 0.5] {
        worst.max_mut(&legendre_cross_route(&ctx.real(a), 300, ctx)?);
    }
    Ok((worst <= *ctx.pass_tol(), format!("max |quadrature − sum| {}", sci(&worst))))
}

fn check_ode(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let grid = ode_residual_grid(&tenths(ctx), ctx)?;
    let mut ok = grid.iter().all(|r| r.passed());
    let mut worst = max_of(grid.iter().map(|r| r.relative()), ctx);
    for a in [0.3, 0.7] {
        let r = ode_annihilator_residual_closed_form(&ctx.real(a), ctx)?;
        ok &= r.passed();
        worst.max_mut(&r.relative());
    }
    Ok((ok, format!("worst residual/scale {} (integral and closed form)", sci(&worst))))
}

fn check_ode_control(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let a = ctx.ratio(1, 2);
    let good = ode_annihilator_residual_with(OdeOperator::Exact, &a, ctx)?;
    let bad = ode_annihilator_residual_with(OdeOperator::CorruptedZeroth, &a, ctx)?;
    let ratio = bad.residual.clone() / good.residual.clone().max(&ctx.epsilon());
    Ok((!bad.passed() && ratio > 1e6, format!("corrupted/exact residual ratio {}", sci(&ratio))))
}

fn check_laplace(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let grid = laplace_residual_grid(&standard_laplace_grid(ctx), ctx)?;
    let mut ok = grid.iter().all(|r| r.passed());
    let mut worst = max_of(grid.iter().map(|r| r.relative()), ctx);
    let z0 = ctx.ratio(1, 3);
    let source = |b: &Float, c: &Float| Ok(axial_point_source(b, c, &z0));
    let (residual, scale) = laplace_operator_on(LaplaceOperator::Cylindrical, &source, &ctx.real(1), &ctx.real(1), ctx)?;
    let reference = residual / scale;
    ok &= reference <= crate::diffop::fd_threshold(ctx);
    worst.max_mut(&reference);
    Ok((ok, format!("27 grid points and point-source reference, worst residual/scale {}", sci(&worst))))
}

fn check_laplace_control(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut ok = true;
    let mut weakest: Option<Float> = None;
    for (t, b, c) in standard_laplace_grid(ctx) {
        let good = laplace_residual_with(LaplaceOperator::Cylindrical, &t, &b, &c, ctx)?;
        let bad = laplace_residual_with(LaplaceOperator::MissingRadialFirstOrder, &t, &b, &c, ctx)?;
        let ratio = bad.residual.clone() / good.residual.clone().max(&ctx.epsilon());
        ok &= !bad.passed() && ratio > 1e6;
        weakest = Some(match weakest {
            Some(w) => w.min(&ratio),
            None => ratio,
        });
    }
    let weakest = weakest.expect("nonempty grid");
    Ok((ok, format!("smallest corrupted/exact residual ratio {}", sci(&weakest))))
}
