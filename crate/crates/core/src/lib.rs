//! Lerch zeta-functions, their Hadamard-type auxiliary variants, and the
//! Laplace-Mellin / Riemann-Liouville transforms of `(φ*)^{(m)}` together with
//! complete asymptotic expansions of those transforms as `z → 0` and `z → ∞`.
//!
//! The crate is layered bottom-up:
//!
//! * [`numeric`]: complex helpers, double-exponential and Gauss-Kronrod
//!   quadrature, log-gamma, rising factorials, Stirling polynomials and the
//!   gamma-quotient contour integrator.
//! * [`special`]: Bessel `K`, Kummer `M`/`U` and Gauss `₂F₁`.
//! * [`lerch`]: `φ`, `ψ`, `φ*`, derivatives and primitives in `s`, the Hadamard
//!   operator and the auxiliary zeta `φ*_r`.
//! * [`transforms`]: quadrature evaluation of the five transforms.
//! * [`mellin_barnes`]: vertical-line representations and remainder integrals.
//! * [`asymptotics`]: truncated expansions for ten theorems and four
//!   vertical-line corollaries.
//! * [`verify`]: batch verification runs and CSV/JSON reports.

pub mod asymptotics;
pub mod error;
pub mod lerch;
pub mod mellin_barnes;
pub mod numeric;
pub mod special;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
