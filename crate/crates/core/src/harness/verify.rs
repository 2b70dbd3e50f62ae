use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::Float;

use crate::elliptic::rhs_ode_closed_form;
use crate::error::{Error, Result};
use crate::numeric::{const_pi, BigComplex, PrecisionContext};
use crate::quadrature::{integrate, IntegralSpec, Integrand};
use crate::series::{clausen_sum, legendre_sum, terms_for_tolerance, RamanujanSeries, SeriesId};
use crate::singular::rhs_constant;

use super::catalog::{record, IdentityRecord, LhsKind};
use super::IdentityId;

/// Named parameter values, in catalog order once validated.
pub type Params = Vec<(String, Float)>;

/// Builds a parameter list from `(name, value)` pairs at the working
/// precision.
pub fn params<T>(ctx: &PrecisionContext, values: &[(&str, T)]) -> Params
where
    T: Copy,
    Float: rug::Assign<T>,
{
    values.iter().map(|&(n, v)| (n.to_string(), ctx.real(v))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub id: IdentityId,
    pub params: Params,
    pub lhs_value: BigComplex,
    pub rhs_value: BigComplex,
    pub abs_err: Float,
    pub rel_err: Float,
    pub passed: bool,
    pub digits_used: u32,
    pub wall_time: Duration,
    /// Quadrature error estimate of whichever side was integrated.
    pub err_estimate: Option<Float>,
}

impl VerificationReport {
    /// Equality of everything except the wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self { wall_time: Duration::ZERO, ..self.clone() } == Self { wall_time: Duration::ZERO, ..other.clone() }
    }

    pub fn param(&self, name: &str) -> Option<&Float> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// Checks names and ranges and returns the values in catalog order.
fn validate(rec: &IdentityRecord, given: &[(String, Float)]) -> Result<Params> {
    for (name, _) in given {
        if !rec.params.iter().any(|d| d.name == name) {
            return Err(Error::OutOfDomain(format!("{} has no parameter `{name}`", rec.id)));
        }
    }
    rec.params
        .iter()
        .map(|domain| {
            let mut matches = given.iter().filter(|(n, _)| n == domain.name);
            let (_, value) = matches
                .next()
                .ok_or_else(|| Error::OutOfDomain(format!("{} needs parameter `{}`", rec.id, domain.name)))?;
            if matches.next().is_some() {
                return Err(Error::OutOfDomain(format!("parameter `{}` given twice", domain.name)));
            }
            if !domain.contains(value) {
                return Err(Error::OutOfDomain(format!("{}: {} violates {domain}", rec.id, value.to_f64())));
            }
            Ok((domain.name.to_string(), value.clone()))
        })
        .collect()
}

struct Sides {
    lhs: BigComplex,
    rhs: BigComplex,
    err_estimate: Option<Float>,
}

fn quadrature(integrand: Integrand, values: Vec<Float>, ctx: &PrecisionContext) -> Result<(BigComplex, Float)> {
    let spec = IntegralSpec::natural(integrand, values, ctx)?;
    let result = integrate(&spec, ctx)?;
    Ok((result.value, result.err_estimate))
}

fn real(v: Float) -> BigComplex {
    BigComplex::from_real(v)
}

fn closed_form(id: IdentityId, values: &[Float], ctx: &PrecisionContext) -> Result<Float> {
    let pi = const_pi(ctx);
    let root2 = ctx.real(2).sqrt();
    Ok(match id {
        IdentityId::I1 | IdentityId::I1Ext => rhs_ode_closed_form(&values[0], ctx)?,
        IdentityId::I2 => pi / (root2 * 4u32),
        IdentityId::I3 | IdentityId::I4 | IdentityId::I5 => rhs_constant(id, ctx)?,
        IdentityId::I6 => {
            let (b, c) = (&values[0], &values[1]);
            let r = ((ctx.real(b) + 1u32).square() + ctx.real(c).square()).sqrt();
            pi / (r * 2u32)
        }
        IdentityId::I7 => pi / (root2 * 2u32),
        IdentityId::I8 => pi.square() / 4u32,
        IdentityId::I9 => pi / ((ctx.real(&values[0]).square() + 1u32).sqrt() * 2u32),
        IdentityId::I10 => -(pi / (root2 * 8u32)),
        IdentityId::I11 => rhs_ode_closed_form(&values[0], ctx)? * 4u32 / pi.square(),
        IdentityId::I12 | IdentityId::I13 => unreachable!("not a closed-form row"),
    })
}

fn ramanujan_id(values: &[Float]) -> SeriesId {
    if values[0] == 1 {
        SeriesId::EighthRatio
    } else {
        SeriesId::SqrtThreeRatio
    }
}

fn evaluate(rec: &IdentityRecord, values: &[Float], ctx: &PrecisionContext) -> Result<Sides> {
    match rec.lhs {
        LhsKind::Quadrature(integrand) => {
            let (lhs, err) = quadrature(integrand, values.to_vec(), ctx)?;
            let rhs = real(closed_form(rec.id, values, ctx)?);
            Ok(Sides { lhs, rhs, err_estimate: Some(err) })
        }
        LhsKind::ClausenSeries => {
            let a = &values[0];
            let terms = terms_for_tolerance(a, ctx.quad_target());
            let lhs = real(clausen_sum(a, terms, ctx)?);
            Ok(Sides { lhs, rhs: real(closed_form(rec.id, values, ctx)?), err_estimate: None })
        }
        LhsKind::RamanujanSeries => {
            let id = ramanujan_id(values);
            let series = RamanujanSeries::for_id(id, ctx)?;
            let terms = terms_for_tolerance(&series.ratio.clone().abs().sqrt(), ctx.quad_target());
            let lhs = real(series.partial_sum(terms, ctx));
            let rhs = real(RamanujanSeries::closed_form(id, ctx)?);
            Ok(Sides { lhs, rhs, err_estimate: None })
        }
        LhsKind::LegendreSum => {
            let a = &values[0];
            let terms = terms_for_tolerance(a, ctx.quad_target());
            let lhs = real(legendre_sum(a, terms, ctx)?);
            let (rhs, err) = quadrature(Integrand::KernelOverGenerating, values.to_vec(), ctx)?;
            Ok(Sides { lhs, rhs, err_estimate: Some(err) })
        }
    }
}

/// Evaluates both sides of a catalog identity and compares them.
///
/// Passes when `|lhs − rhs| ≤ pass_tol·max(1, |rhs|)`. For complex-kernel
/// rows the imaginary part must also be within ten quadrature error
/// estimates of zero.
pub fn verify(id: IdentityId, given: &[(String, Float)], ctx: &PrecisionContext) -> Result<VerificationReport> {
    let start = Instant::now();
    let rec = record(id);
    let params = validate(&rec, given)?;
    let values: Vec<Float> = params.iter().map(|(_, v)| v.clone()).collect();
    let sides = evaluate(&rec, &values, ctx)?;
    let abs_err = (sides.lhs.clone() - sides.rhs.clone()).abs();
    let rhs_abs = sides.rhs.abs();
    let rel_err = if rhs_abs.is_zero() { abs_err.clone() } else { abs_err.clone() / &rhs_abs };
    let mut passed = abs_err <= ctx.pass_tol().clone() * rhs_abs.max(&ctx.real(1));
    if let (LhsKind::Quadrature(integrand), Some(err)) = (rec.lhs, &sides.err_estimate) {
        if integrand.is_complex() {
            passed &= sides.lhs.im.clone().abs() <= err.clone() * 10u32;
        }
    }
    Ok(VerificationReport {
        id,
        params,
        lhs_value: sides.lhs,
        rhs_value: sides.rhs,
        abs_err,
        rel_err,
        passed,
        digits_used: ctx.digits(),
        wall_time: start.elapsed(),
        err_estimate: sides.err_estimate,
    })
}

/// Verifies `id` on `steps` evenly spaced values of `param` from `lo` to
/// `hi` inclusive, other parameters held at `fixed`. Points run
/// concurrently; reports come back in grid order.
pub fn sweep(
    id: IdentityId,
    param: &str,
    lo: &Float,
    hi: &Float,
    steps: u32,
    fixed: &[(String, Float)],
    ctx: &PrecisionContext,
) -> Result<Vec<VerificationReport>> {
    if steps < 2 {
        return Err(Error::InvalidSpec(format!("a sweep needs at least 2 steps (got {steps})")));
    }
    if !(lo < hi) {
        return Err(Error::InvalidSpec(format!("degenerate sweep range [{}, {}]", lo.to_f64(), hi.to_f64())));
    }
    let rec = record(id);
    if !rec.params.iter().any(|d| d.name == param) {
        return Err(Error::OutOfDomain(format!("{id} has no parameter `{param}`")));
    }
    if fixed.iter().any(|(n, _)| n == param) {
        return Err(Error::InvalidSpec(format!("`{param}` is both swept and fixed")));
    }
    let span = ctx.real(hi) - lo;
    let grid: Vec<Params> = (0..steps)
        .map(|k| {
            let v = if k + 1 == steps { ctx.real(hi) } else { ctx.real(lo) + span.clone() * k / (steps - 1) };
            let mut p = fixed.to_vec();
            p.push((param.to_string(), v));
            p
        })
        .collect();
    for p in &grid {
        validate(&rec, p)?;
    }
    grid.par_iter().map(|p| verify(id, p, ctx)).collect()
}
