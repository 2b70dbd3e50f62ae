use std::fmt;

use rug::Float;

use crate::quadrature::Integrand;

use super::IdentityId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Closed(f64),
    Open(f64),
    Unbounded,
}

/// A named parameter and the range it may take.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDomain {
    pub name: &'static str,
    pub lo: Bound,
    pub hi: Bound,
    /// Only integer values are accepted.
    pub integer: bool,
}

impl ParamDomain {
    const fn new(name: &'static str, lo: Bound, hi: Bound) -> Self {
        Self { name, lo, hi, integer: false }
    }

    pub fn contains(&self, v: &Float) -> bool {
        if !v.is_finite() || (self.integer && !v.is_integer()) {
            return false;
        }
        let above = match self.lo {
            Bound::Closed(lo) => *v >= lo,
            Bound::Open(lo) => *v > lo,
            Bound::Unbounded => true,
        };
        let below = match self.hi {
            Bound::Closed(hi) => *v <= hi,
            Bound::Open(hi) => *v < hi,
            Bound::Unbounded => true,
        };
        above && below
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name;
        if self.integer {
            if let (Bound::Closed(lo), Bound::Closed(hi)) = (self.lo, self.hi) {
                let values: Vec<String> = (lo as i64..=hi as i64).map(|v| v.to_string()).collect();
                return write!(f, "{name} ∈ {{{}}}", values.join(", "));
            }
        }
        match (self.lo, self.hi) {
            (Bound::Closed(lo), Bound::Unbounded) => write!(f, "{name} ≥ {lo}"),
            (Bound::Open(lo), Bound::Unbounded) => write!(f, "{name} > {lo}"),
            (lo, hi) => {
                let (open, lo) = match lo {
                    Bound::Closed(v) => ('[', v.to_string()),
                    Bound::Open(v) => ('(', v.to_string()),
                    Bound::Unbounded => ('(', "−∞".into()),
                };
                let (close, hi) = match hi {
                    Bound::Closed(v) => (']', v.to_string()),
                    Bound::Open(v) => (')', v.to_string()),
                    Bound::Unbounded => (')', "∞".into()),
                };
                write!(f, "{name} ∈ {open}{lo}, {hi}{close}")
            }
        }
    }
}

/// How the left-hand side is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhsKind {
    Quadrature(Integrand),
    /// The Clausen series at `a`.
    ClausenSeries,
    /// One of the two Ramanujan-type series, chosen by `series`.
    RamanujanSeries,
    /// The Legendre-projection sum at `a`, compared against quadrature of
    /// the one-parameter integral.
    LegendreSum,
}

/// One catalog row.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRecord {
    pub id: IdentityId,
    pub title: &'static str,
    pub lhs_text: &'static str,
    pub rhs_text: &'static str,
    pub lhs: LhsKind,
    pub params: Vec<ParamDomain>,
    pub singular_notes: &'static str,
}


/// The catalog, in identifier order.
pub fn list_identities() -> Vec<IdentityRecord> {
    IdentityId::ALL.into_iter().map(record).collect()
}

pub fn record(id: IdentityId) -> IdentityRecord {
    use Bound::*;
    let a_unit = ParamDomain::new("a", Closed(0.0), Closed(1.0));
    let a_half_open = ParamDomain::new("a", Closed(0.0), Open(1.0));
    let quad = LhsKind::Quadrature;
    let kernel_log = "log singularity of the kernel at x = 1/2";
    let (title, lhs_text, rhs_text, lhs, params, singular_notes) = match id {
        IdentityId::I1 => (
            "one-parameter family",
            "∫₀¹ K(2√(x(1−x))) / √(1 − 2(2x−1)a + a²) dx",
            "[K((1 − √(1+a²))/2)]²",
            quad(Integrand::KernelOverGenerating),
            vec![a_unit],
            "log singularity at x = 1/2; at a = 1 also x^{-1/2}-type at x = 1",
        ),
        IdentityId::I1Ext => (
            "one-parameter family beyond a = 1",
            "∫₀¹ K(2√(x(1−x))) / √(1 − 2(2x−1)a + a²) dx",
            "(1/a)[K((1 − √(1+a⁻²))/2)]²",
            quad(Integrand::KernelOverGenerating),
            vec![ParamDomain::new("a", Open(1.0), Unbounded)],
            "a = 1 excluded: the closed form has no smooth continuation across it",
        ),
        IdentityId::I2 => (
            "derivative combination at a = 1/√8",
            "∫₀¹ K(2√(x(1−x)))(4x + 3√2 − 2) / (4√2 + 9 − 8√2x)^{3/2} dx",
            "π/(4√2)",
            quad(Integrand::KernelBridgeRoot2),
            vec![],
            kernel_log,
        ),
        IdentityId::I3 => (
            "singular modulus λ*(4)",
            "∫₀¹ K(2√(x(1−x))) / √(9/8 + (1−2x)/√2) dx",
            "Γ(1/4)⁴/(16√2π)",
            quad(Integrand::KernelSingularQuarter),
            vec![],
            kernel_log,
        ),
        IdentityId::I4 => (
            "singular modulus λ*(3), complex kernel",
            "∫₀¹ K(2√(x(1−x))) / √(3 + 4i(1−2x)) dx",
            "√3Γ(1/3)⁶/(2^{17/3}π²)",
            quad(Integrand::KernelComplexThird),
            vec![],
            "log singularity at x = 1/2; imaginary part cancels by x ↦ 1−x",
        ),
        IdentityId::I5 => (
            "singular modulus λ*(7), complex kernel",
            "∫₀¹ K(2√(x(1−x))) / √(63 + 16i(1−2x)) dx",
            "(Γ(1/7)Γ(2/7)Γ(4/7))²/(128√7π²)",
            quad(Integrand::KernelComplexSeventh),
            vec![],
            "log singularity at x = 1/2; imaginary part cancels by x ↦ 1−x",
        ),
        IdentityId::I6 => (
            "axisymmetric potential",
            "∫₀^{π/2} K(√(4c tanθ/(b² + (c+tanθ)²))) sinθ / √(b² + (c+tanθ)²) dθ",
            "π/(2√((b+1)² + c²))",
            quad(Integrand::Cylinder),
            vec![ParamDomain::new("b", Closed(0.0), Unbounded), ParamDomain::new("c", Closed(0.0), Unbounded)],
            "at b = 0 the modulus reaches 1 at θ = arctan c (log singularity)",
        ),
        IdentityId::I7 => (
            "axis case b = 0, c = 1 after θ = arctan(x/(1−x))",
            "∫₀¹ K(2√(x(1−x))) x(1−x) / (1 − 2x(1−x))^{3/2} dx",
            "π/(2√2)",
            quad(Integrand::KernelAxisSpecial),
            vec![],
            kernel_log,
        ),
        IdentityId::I8 => (
            "Legendre-kernel integral",
            "∫₀¹ K(2√(x(1−x))) dx",
            "π²/4",
            quad(Integrand::Kernel),
            vec![],
            kernel_log,
        ),
        IdentityId::I9 => (
            "semi-infinite real-part form",
            "∫₀^∞ Re K(x) c x / (1 + c²x²)^{3/2} dx",
            "π/(2√(1 + c²))",
            quad(Integrand::SemiInfiniteRealPart),
            vec![ParamDomain::new("c", Open(0.0), Unbounded)],
            "log singularity at x = 1, where the modulus crosses 1",
        ),
        IdentityId::I10 => (
            "derivative combination at a = (3√3−5)/(4√2)",
            "∫₀¹ K(2√((1−x)x))[24 − 18√3 + √2(6√3−11)(2x−1)] / [42 − 15√3 − 4√2(3√3−5)(2x−1)]^{3/2} dx",
            "−π/(8√2)",
            quad(Integrand::KernelBridgeRoot3),
            vec![],
            kernel_log,
        ),
        IdentityId::I11 => (
            "Clausen series",
            "Σ ((1/2)ₙ/n!)³ (−a²)ⁿ",
            "(4/π²)[K((1 − √(1+a²))/2)]²",
            LhsKind::ClausenSeries,
            vec![a_half_open],
            "geometric convergence with ratio a²",
        ),
        IdentityId::I12 => (
            "Ramanujan-type series for 1/π",
            "series=1: Σ ((1/2)ₙ/n!)³ (6n+1)(−1/8)ⁿ; series=2: Σ ((1/2)ₙ/n!)³ ((30−6√3)n + 7−3√3)(−(26−15√3)/16)ⁿ",
            "series=1: 2√2/π; series=2: 4√2/π",
            LhsKind::RamanujanSeries,
            vec![ParamDomain { integer: true, ..ParamDomain::new("series", Closed(1.0), Closed(2.0)) }],
            "none",
        ),
        IdentityId::I13 => (
            "Legendre expansion against quadrature",
            "(π²/4)[1 + Σ (−1)ⁿ ((1/2)ₙ/n!)³ a²ⁿ]",
            "∫₀¹ K(2√(x(1−x))) / √(1 − 2(2x−1)a + a²) dx",
            LhsKind::LegendreSum,
            vec![a_half_open],
            "terms chosen from the geometric ratio a²",
        ),
    };
    IdentityRecord { id, title, lhs_text, rhs_text, lhs, params, singular_notes }
}
