//! Legendre polynomials on `[−1, 1]`, their generating function, the
//! shifted orthogonality relations on `[0, 1]`, and the even-index
//! expansion of `K(2√(x(1−x)))`:
//!
//! `Σₙ (−1)ⁿ ((1/2)ₙ³/(1)ₙ³)(4n+1) P₂ₙ(2x−1) = 4K(2√(x(1−x)))/π²`.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{const_pi, BigComplex, PrecisionContext};
use crate::quadrature::{integrate_fn, QuadOptions};

/// Largest Gram matrix order accepted by [`orthogonality_gram`].
pub const MAX_GRAM_ORDER: u32 = 20;

/// One evaluated polynomial value.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreEval {
    pub n: u32,
    pub x: Float,
    pub value: Float,
}

/// `P₀(x), …, P_n(x)` by Bonnet's recurrence
/// `(k+1)P_{k+1} = (2k+1)x P_k − k P_{k−1}`.
pub fn legendre_table(n: u32, x: &Float, ctx: &PrecisionContext) -> Vec<Float> {
    let mut values = Vec::with_capacity(n as usize + 1);
    values.push(ctx.real(1));
    if n == 0 {
        return values;
    }
    values.push(ctx.real(x));
    for k in 1..n {
        let k_f = k as usize;
        let next = (ctx.real(x) * &values[k_f] * (2 * k + 1) - values[k_f - 1].clone() * k) / (k + 1);
        values.push(next);
    }
    values
}

/// `P_n(x)` by the three-term recurrence.
pub fn legendre_p(n: u32, x: &Float, ctx: &PrecisionContext) -> Float {
    legendre_table(n, x, ctx).pop().expect("table holds n + 1 values")
}

pub fn legendre_eval(n: u32, x: &Float, ctx: &PrecisionContext) -> Result<LegendreEval> {
    if !(*x >= -1 && *x <= 1) {
        return Err(Error::Domain(format!("x = {} outside [−1, 1]", x.to_f64())));
    }
    Ok(LegendreEval { n, x: ctx.real(x), value: legendre_p(n, x, ctx) })
}

/// `P_n(x)` from the explicit sum `2⁻ⁿ Σ C(n,k)² (x−1)^{n−k} (x+1)^k`.
pub fn legendre_p_explicit(n: u32, x: &Float, ctx: &PrecisionContext) -> Float {
    let below = ctx.real(x) - 1u32;
    let above = ctx.real(x) + 1u32;
    let mut sum = ctx.real(0);
    let mut binom = ctx.real(1);
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) / k;
        }
        let term = binom.clone().square()
            * pow_u(&below, n - k, ctx)
            * pow_u(&above, k, ctx);
        sum += term;
    }
    sum / pow_u(&ctx.real(2), n, ctx)
}

fn pow_u(base: &Float, e: u32, ctx: &PrecisionContext) -> Float {
    use rug::ops::Pow;
    ctx.real(base).pow(e)
}

/// `|1/√(1 − 2(2x−1)a + a²) − Σ_{n≤N} P_n(2x−1) aⁿ|`.
pub fn generating_function_check(a: &Float, x: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    if !(a.clone().abs() < 1) {
        return Err(Error::Domain(format!("generating function needs |a| < 1 (got {})", a.to_f64())));
    }
    if !(*x >= 0 && *x <= 1) {
        return Err(Error::Domain(format!("x = {} outside [0, 1]", x.to_f64())));
    }
    let u = ctx.real(x) * 2u32 - 1u32;
    let closed = (ctx.real(1) - u.clone() * a * 2u32 + ctx.real(a).square()).sqrt().recip();
    let table = legendre_table(terms, &u, ctx);
    let mut power = ctx.real(1);
    let mut partial = ctx.real(0);
    for p in &table {
        partial += p.clone() * &power;
        power *= a;
    }
    Ok((closed - partial).abs())
}

/// `G[n][m] = ∫₀¹ P_n(2x−1) P_m(2x−1) dx` for `n, m ≤ order`, by the same
/// double-exponential rule used everywhere else.
pub fn orthogonality_gram(order: u32, ctx: &PrecisionContext) -> Result<Vec<Vec<Float>>> {
    if order > MAX_GRAM_ORDER {
        return Err(Error::Domain(format!("Gram order {order} exceeds {MAX_GRAM_ORDER}")));
    }
    let size = order as usize + 1;
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|n| (n..size).map(move |m| (n, m))).collect();
    let opts = QuadOptions::from_context(ctx);
    let zero = ctx.real(0);
    let one = ctx.real(1);
    let entries: Vec<Result<Float>> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let f = |node: &crate::quadrature::Abscissa| {
                let u = ctx.real(node.x()) * 2u32 - 1u32;
                let table = legendre_table(m as u32, &u, ctx);
                Ok(BigComplex::from_real(table[n].clone() * &table[m]))
            };
            integrate_fn(&f, &zero, Some(&one), &[], ctx, &opts).map(|q| q.value.re)
        })
        .collect();
    let mut gram = vec![vec![ctx.real(0); size]; size];
    for (&(n, m), entry) in pairs.iter().zip(entries) {
        let v = entry?;
        gram[m][n] = v.clone();
        gram[n][m] = v;
    }
    Ok(gram)
}

/// Coefficient `(−1)ⁿ ((1/2)ₙ/(1)ₙ)³ (4n+1)` of `P₂ₙ(2x−1)` in the expansion
/// of `4K(2√(x(1−x)))/π²`.
pub fn kernel_expansion_coefficients(terms: u32, ctx: &PrecisionContext) -> Vec<Float> {
    let mut ratio_cubed = ctx.real(1);
    let mut out = Vec::with_capacity(terms as usize + 1);
    for n in 0..=terms {
        if n > 0 {
            let r = (ctx.real(n) - 0.5f64) / n;
            ratio_cubed *= r.clone().square() * r;
        }
        let signed = if n % 2 == 0 { ratio_cubed.clone() } else { -ratio_cubed.clone() };
        out.push(signed * (4 * n + 1));
    }
    out
}

/// Partial sum through `n = terms` of the even Legendre expansion at `x`.
pub fn kernel_expansion_partial_sum(x: &Float, terms: u32, ctx: &PrecisionContext) -> Result<Float> {
    if !(*x >= 0 && *x <= 1) {
        return Err(Error::Domain(format!("x = {} outside [0, 1]", x.to_f64())));
    }
    let u = ctx.real(x) * 2u32 - 1u32;
    let table = legendre_table(2 * terms, &u, ctx);
    let coeffs = kernel_expansion_coefficients(terms, ctx);
    let mut sum = ctx.real(0);
    for (n, c) in coeffs.iter().enumerate() {
        sum += c.clone() * &table[2 * n];
    }
    Ok(sum)
}

/// The one-parameter integral obtained by pairing the even Legendre
/// expansion of the kernel (scaled by `π²/4`) with the generating function
/// `Σ P_k(2x−1) aᵏ`, using `∫₀¹ P₂ₙ² = 1/(4n+1)` and the vanishing of every
/// cross term.
pub fn projection_sum(a: &Float, terms: u32, ctx: &PrecisionContext) -> Float {
    let pi = const_pi(ctx);
    let scale = pi.square() / 4u32;
    let coeffs = kernel_expansion_coefficients(terms, ctx);
    let a_sq = ctx.real(a).square();
    let mut power = ctx.real(1); // a^{2n}, the generating-function coefficient of P₂ₙ
    let mut sum = ctx.real(0);
    for (n, c) in coeffs.iter().enumerate() {
        let norm = ctx.real(1) / (4 * n as u32 + 1);
        sum += c.clone() * &power * norm;
        power *= &a_sq;
    }
    sum * scale
}
