//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mellint::diffop::{
    laplace_residual_with, ode_annihilator_residual_with, standard_laplace_grid, LaplaceOperator, OdeOperator,
};
use mellint::elliptic::imaginary_modulus_residual;
use mellint::harness::selftest::{gram_deviation, legendre_cross_route, selftest, tenths};
use mellint::harness::{params, verify, IdentityId, Params, VerificationReport};
use mellint::numeric::const_pi;
use mellint::series::{linear_bridge, ramanujan_sum, RamanujanSeries, SeriesId};
use mellint::singular::{rhs_constant, verify_singular_value, TABULATED};
use mellint::{BigReal, PrecisionContext, Result};

type Outcome = std::result::Result<String, String>;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(50).expect("50 digits")
}

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(id: IdentityId, p: Params, ctx: &PrecisionContext) -> std::result::Result<VerificationReport, String> {
    verify(id, &p, ctx).map_err(|e| format!("{id}: {e}"))
}

fn e(x: &BigReal) -> String {
    format!("{:.2e}", x.to_f64())
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn kernel_integral() -> Outcome {
    let ctx = ctx();
    let t = Instant::now();
    let r = run(IdentityId::I8, vec![], &ctx)?;
    let elapsed = t.elapsed();
    let want = const_pi(&ctx).square() / 4u32;
    ensure(r.rhs_value.re == want, "rhs is not π²/4")?;
    ensure(r.abs_err <= ctx.pow10(-35), format!("abs_err {}", e(&r.abs_err)))?;
    ensure(r.passed, "report not passed")?;
    ensure(elapsed <= Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("abs_err {} in {:.3} s", e(&r.abs_err), elapsed.as_secs_f64()))
}

fn one_parameter_family() -> Outcome {
    let ctx = ctx();
    let mut slowest = Duration::ZERO;
    let mut worst = ctx.real(0);
    let mut cases: Vec<(IdentityId, BigReal)> = tenths(&ctx).into_iter().map(|a| (IdentityId::I1, a)).collect();
    cases.extend([1.5, 2.0, 4.0].map(|a| (IdentityId::I1Ext, ctx.real(a))));
    for (id, a) in cases {
        let t = Instant::now();
        let r = run(id, vec![("a".into(), a.clone())], &ctx)?;
        let elapsed = t.elapsed();
        ensure(r.passed, format!("{id} a = {} failed, abs_err {}", a.to_f64(), e(&r.abs_err)))?;
        ensure(elapsed <= Duration::from_secs(30), format!("{id} a = {} took {elapsed:?}", a.to_f64()))?;
        slowest = slowest.max(elapsed);
        worst.max_mut(&r.rel_err);
    }
    Ok(format!("12 points, worst rel_err {}, slowest {:.3} s", e(&worst), slowest.as_secs_f64()))
}

fn derivative_combinations() -> Outcome {
    let ctx = ctx();
    let pi = const_pi(&ctx);
    let root2 = ctx.real(2).sqrt();
    let i2 = run(IdentityId::I2, vec![], &ctx)?;
    let i10 = run(IdentityId::I10, vec![], &ctx)?;
    let want2 = pi.clone() / (root2.clone() * 4u32);
    let want10 = -(pi / (root2 * 8u32));
    let err2 = (i2.lhs_value.re.clone() - want2).abs();
    let err10 = (i10.lhs_value.re.clone() - want10).abs();
    ensure(i2.passed && err2 <= *ctx.pass_tol(), format!("I2 error {}", e(&err2)))?;
    ensure(i10.passed && err10 <= *ctx.pass_tol(), format!("I10 error {}", e(&err10)))?;
    Ok(format!("I2 error {}, I10 error {}", e(&err2), e(&err10)))
}

fn singular_examples() -> Outcome {
    let ctx = ctx();
    let mut parts = Vec::new();
    for id in [IdentityId::I3, IdentityId::I4, IdentityId::I5] {
        let r = run(id, vec![], &ctx)?;
        let want = lift(rhs_constant(id, &ctx))?;
        let err = (r.lhs_value.re.clone() - want).abs();
        ensure(r.passed && err <= *ctx.pass_tol(), format!("{id} error {}", e(&err)))?;
        if id == IdentityId::I3 {
            parts.push(format!("{id} {}", e(&err)));
        } else {
            let bound = r.err_estimate.clone().expect("quadrature row") * 10u32;
            let im = r.lhs_value.im.clone().abs();
            ensure(im <= bound, format!("{id} imaginary part {}", e(&im)))?;
            parts.push(format!("{id} {} (|im| {})", e(&err), e(&im)));
        }
    }
    Ok(parts.join(", "))
}

fn axisymmetric_family() -> Outcome {
    let ctx = ctx();
    let grid = [0.5, 1.0, 2.0];
    let mut worst = ctx.real(0);
    for b in grid {
        for c in grid {
            let r = run(IdentityId::I6, params(&ctx, &[("b", b), ("c", c)]), &ctx)?;
            ensure(r.passed, format!("I6 b = {b}, c = {c}: abs_err {}", e(&r.abs_err)))?;
            worst.max_mut(&r.rel_err);
        }
    }
    let i7 = run(IdentityId::I7, vec![], &ctx)?;
    ensure(i7.passed, format!("I7 abs_err {}", e(&i7.abs_err)))?;
    worst.max_mut(&i7.rel_err);
    for c in grid {
        let r = run(IdentityId::I9, params(&ctx, &[("c", c)]), &ctx)?;
        ensure(r.passed, format!("I9 c = {c}: abs_err {}", e(&r.abs_err)))?;
        worst.max_mut(&r.rel_err);
    }
    Ok(format!("I6 3×3, I7, I9 ×3 passed, worst rel_err {}", e(&worst)))
}

fn ramanujan_series() -> Outcome {
    let ctx = ctx();
    let mut parts = Vec::new();
    for (id, terms) in [(SeriesId::EighthRatio, 200), (SeriesId::SqrtThreeRatio, 400)] {
        let sum = lift(ramanujan_sum(id, terms, &ctx))?;
        let want = lift(RamanujanSeries::closed_form(id, &ctx))?;
        let err = (sum - want).abs();
        ensure(err <= *ctx.pass_tol(), format!("{id:?} error {}", e(&err)))?;
        lift(linear_bridge(id, &ctx))?;
        parts.push(format!("{terms} terms {}", e(&err)));
    }
    Ok(format!("{}; bridges match through n = 5", parts.join(", ")))
}

fn orthogonality() -> Outcome {
    let ctx = ctx();
    let worst = lift(gram_deviation(12, &ctx))?;
    let bound = ctx.quad_target().clone() * 10u32;
    ensure(worst <= bound, format!("max deviation {}", e(&worst)))?;
    Ok(format!("13×13 Gram, max deviation {} (bound {})", e(&worst), e(&bound)))
}

fn min_ratio(current: Option<BigReal>, ratio: BigReal) -> Option<BigReal> {
    Some(match current {
        Some(w) => w.min(&ratio),
        None => ratio,
    })
}

fn annihilators() -> Outcome {
    let ctx = ctx();
    let mut weakest_ode = None;
    for a in tenths(&ctx) {
        let good = lift(ode_annihilator_residual_with(OdeOperator::Exact, &a, &ctx))?;
        let bad = lift(ode_annihilator_residual_with(OdeOperator::CorruptedZeroth, &a, &ctx))?;
        ensure(good.passed(), format!("ODE a = {}: residual/scale {}", a.to_f64(), e(&good.relative())))?;
        let ratio = bad.residual.clone() / good.residual.clone().max(&ctx.epsilon());
        ensure(!bad.passed() && ratio >= 1e6, format!("ODE control at a = {}: ratio {}", a.to_f64(), e(&ratio)))?;
        weakest_ode = min_ratio(weakest_ode, ratio);
    }
    let mut weakest_pde = None;
    for (t, b, c) in standard_laplace_grid(&ctx) {
        let good = lift(laplace_residual_with(LaplaceOperator::Cylindrical, &t, &b, &c, &ctx))?;
        let bad = lift(laplace_residual_with(LaplaceOperator::MissingRadialFirstOrder, &t, &b, &c, &ctx))?;
        let at = format!("({:.4}, {}, {})", t.to_f64(), b.to_f64(), c.to_f64());
        ensure(good.passed(), format!("Laplacian at {at}: residual/scale {}", e(&good.relative())))?;
        let ratio = bad.residual.clone() / good.residual.clone().max(&ctx.epsilon());
        ensure(!bad.passed() && ratio >= 1e6, format!("Laplacian control at {at}: ratio {}", e(&ratio)))?;
        weakest_pde = min_ratio(weakest_pde, ratio);
    }
    Ok(format!(
        "ODE 9/9, Laplacian 27/27; control ratios ≥ {} and {}",
        e(&weakest_ode.expect("grid")),
        e(&weakest_pde.expect("grid"))
    ))
}

fn transforms_and_singular_moduli() -> Outcome {
    let ctx = ctx();
    let mut worst = ctx.real(0);
    for k in tenths(&ctx) {
        let r = lift(imaginary_modulus_residual(&k, &ctx))?;
        ensure(r <= *ctx.pass_tol(), format!("k = {}: {}", k.to_f64(), e(&r)))?;
        worst.max_mut(&r);
    }
    for r in TABULATED {
        let res = lift(verify_singular_value(r, &ctx))?;
        ensure(res <= *ctx.pass_tol(), format!("λ*({r}): {}", e(&res)))?;
        worst.max_mut(&res);
    }
    Ok(format!("max residual {}", e(&worst)))
}

fn cross_route() -> Outcome {
    let ctx = ctx();
    let mut worst = ctx.real(0);
    for a in [0.1, 0.3, 0.5] {
        let d = lift(legendre_cross_route(&ctx.real(a), 300, &ctx))?;
        ensure(d <= *ctx.pass_tol(), format!("a = {a}: {}", e(&d)))?;
        worst.max_mut(&d);
    }
    Ok(format!("max |quadrature − 300-term sum| {}", e(&worst)))
}

fn selftest_timing() -> Outcome {
    let t = Instant::now();
    let full = lift(selftest(false))?;
    let full_time = t.elapsed();
    let t = Instant::now();
    let quick = lift(selftest(true))?;
    let quick_time = t.elapsed();
    for c in full.checks.iter().chain(&quick.checks) {
        ensure(c.passed, format!("{}: {}", c.name, c.detail))?;
    }
    ensure(full.digits == 50 && quick.digits == 30, "wrong selftest digits")?;
    ensure(full_time <= Duration::from_secs(15 * 60), format!("full took {full_time:?}"))?;
    ensure(quick_time <= Duration::from_secs(2 * 60), format!("quick took {quick_time:?}"))?;
    Ok(format!("full {:.2} s, quick {:.2} s", full_time.as_secs_f64(), quick_time.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("kernel integral equals π²/4", kernel_integral),
        ("one-parameter family and its a > 1 form", one_parameter_family),
        ("derivative-combination integrals", derivative_combinations),
        ("singular-modulus gamma evaluations", singular_examples),
        ("axisymmetric family, axis case, semi-infinite form", axisymmetric_family),
        ("Ramanujan-type series and bridges", ramanujan_series),
        ("Legendre orthogonality", orthogonality),
        ("annihilating operators and negative controls", annihilators),
        ("imaginary-modulus transform and λ*", transforms_and_singular_moduli),
        ("quadrature against Legendre sum", cross_route),
        ("selftest runtime", selftest_timing),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2} s): {detail}", n + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
