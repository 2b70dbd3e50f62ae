//! High-precision evaluation and numerical verification of multiple elliptic
//! integral identities.
//!
//! The crate is layered bottom-up:
//!
//! * [`numeric`]: precision context, MPFR-backed real/complex values, π, Γ.
//! * [`elliptic`]: the complete elliptic integral K over every real
//!   parameter regime, its Maclaurin series and the closed form
//!   `[K((1-√(1+a²))/2)]²`.
//! * [`quadrature`]: tanh-sinh / exp-sinh integration with panel splitting
//!   at declared singular points, plus the integrand catalog.
//! * [`legendre`], [`series`], [`singular`]: Legendre expansions,
//!   Clausen/Ramanujan-type series and tabulated singular moduli.
//! * [`diffop`]: residual checks of the third-order ODE operator and the
//!   axisymmetric Laplacian.
//! * [`harness`]: the identity catalog, verification driver, sweeps,
//!   report export and the self-test suite.

pub mod diffop;
pub mod elliptic;
pub mod error;
pub mod harness;
pub mod legendre;
pub mod numeric;
pub mod quadrature;
pub mod series;
pub mod singular;

pub use error::{Error, Result};
pub use numeric::{BigComplex, BigReal, PrecisionContext};
