//! The Lerch zeta-function `φ(s, a, λ) = Σ e(λl)(a+l)^{−s}`, its modified
//! form `φ* = φ − δ_ℤ(λ)ψ`, derivatives and primitives in `s`, the Hadamard
//! operator `I_s^r` and the auxiliary zeta-function `φ*_r = I_s^r φ*`.
//!
//! # Sign of the singular part
//!
//! For `σ > 1` the auxiliary zeta-function splits as
//! `φ*_r(s, a, λ) = φ_r(s, a, λ) − δ_ℤ(λ) ψ_r(s, a)` with
//! `φ_r = Σ e(λl)(a+l)^{−s} log^{−r}(a+l)` and
//! `ψ_r = ∫_a^∞ ξ^{−s} log^{−r}ξ dξ`: `I_s^r` is linear, so the minus sign of
//! `φ* = φ − δ_ℤ(λ)ψ` carries over. The printed display of this split has a
//! plus sign. The minus sign is confirmed numerically: applying the loop
//! contour of [`hadamard_apply`] to `ζ*(·, a)` reproduces the minus-sign
//! series, and differs from the plus-sign series by `2ψ_r` (see the
//! `singular_part_sign` test).
//!
//! # Euler-Stieltjes constants
//!
//! [`stieltjes_gamma`] evaluates
//! `γ_m(a, λ) = ((−1)^m/m!){φ*_{−m}(1, a, λ) + log^m a}` literally. For
//! `λ ∈ ℤ, m = 0` this is `ζ*(1, a) + 1 = −ψ₀(a) + log a + 1`, which is not
//! the classical `γ₀(a) = −ψ₀(a)`; the two are not claimed to coincide.

mod engine;
mod hadamard;
mod recurrence;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{c64, check_finite, check_finite_real, integrate_interval, QuadratureConfig};

pub use hadamard::{hadamard_apply, HadamardRoute};
pub use recurrence::phi_star_aux_recurrence;

/// Integer-λ detection threshold (a hard contract).
pub const LAMBDA_INTEGER_TOL: f64 = 1e-12;

/// The parameter pair `(a, λ)`. Deserialization goes through
/// [`LerchParams::new`], so the integer flag is always recomputed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LerchParams {
    pub a: f64,
    pub lambda: f64,
    pub lambda_is_integer: bool,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    lambda: f64,
}

impl TryFrom<RawParams> for LerchParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        LerchParams::new(raw.a, raw.lambda)
    }
}

impl LerchParams {
    pub fn new(a: f64, lambda: f64) -> Result<Self> {
        check_finite_real(a, "a")?;
        check_finite_real(lambda, "λ")?;
        if !(a > 0.0) {
            return Err(Error::DomainError(format!("a must be positive, got {a}")));
        }
        Ok(Self {
            a,
            lambda,
            lambda_is_integer: (lambda - lambda.round()).abs() < LAMBDA_INTEGER_TOL,
        })
    }

    /// `λ mod 1` in `[0, 1)`; exactly 0 for integer `λ`.
    pub fn lambda_frac(&self) -> f64 {
        if self.lambda_is_integer {
            0.0
        } else {
            self.lambda - self.lambda.floor()
        }
    }

    /// Distance from `λ` to the nearest integer.
    pub fn lambda_distance(&self) -> f64 {
        let f = self.lambda - self.lambda.floor();
        f.min(1.0 - f)
    }

    /// `δ_ℤ(λ)`.
    pub fn delta(&self) -> f64 {
        if self.lambda_is_integer {
            1.0
        } else {
            0.0
        }
    }

    pub(crate) fn require_a_above_one(&self, what: &str) -> Result<()> {
        if self.a > 1.0 {
            Ok(())
        } else {
            Err(Error::DomainError(format!("a must exceed 1 for {what}, got a = {}", self.a)))
        }
    }
}

/// `ψ(s, z) = z^{1−s}/(s−1)` on the principal branch.
pub fn psi_term(s: Complex64, z: Complex64) -> Result<Complex64> {
    check_finite(s, "s")?;
    check_finite(z, "z")?;
    if s == c64(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if z.re <= 0.0 && z.im == 0.0 {
        return Err(Error::BranchViolation(format!("z = {z} is on the cut of z^(1-s)")));
    }
    Ok(((c64(1.0, 0.0) - s) * z.ln()).exp() / (s - 1.0))
}

/// `φ(s, a, λ)`.
pub fn lerch_phi(s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    if s.re <= 1.0 {
        if prm.a <= 1.0 {
            return Err(Error::DomainError(format!(
                "a must exceed 1 for sigma<=1 (got a = {}, sigma = {})",
                prm.a, s.re
            )));
        }
        if prm.lambda_is_integer && s == c64(1.0, 0.0) {
            return Err(Error::PoleAtOne);
        }
    }
    let star = engine::aux_zeta(c64(0.0, 0.0), s, prm)?;
    if prm.lambda_is_integer {
        Ok(star + psi_term(s, c64(prm.a, 0.0))?)
    } else {
        Ok(star)
    }
}

/// `φ*(s, a, λ)`, regular at `s = 1`.
pub fn lerch_phi_star(s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    if s.re <= 1.0 {
        prm.require_a_above_one("sigma<=1")?;
    }
    engine::aux_zeta(c64(0.0, 0.0), s, prm)
}

/// `φ*_r(s, a, λ) = I_s^r φ*(s, a, λ)`, `a > 1`.
pub fn phi_star_aux(r: Complex64, s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    prm.require_a_above_one("the auxiliary zeta-function")?;
    engine::aux_zeta(r, s, prm)
}

/// `(φ*)^{(m)}(s, a, λ)`: the `m`-th derivative for `m ≥ 0`, the `|m|`-th
/// primitive along the horizontal ray for `m < 0`.
///
/// Derivatives use `(φ*)^{(m)} = (−1)^m φ*_{−m}`. Primitives integrate along
/// the ray, `((−1)^n/Γ(n)) ∫₀^U φ*(s+u) u^{n−1} du`, cut at
/// `U = ⌈log(1/abs_tol)/log a⌉ + 5` where the integrand has decayed like
/// `a^{−U}`.
pub fn phi_star_deriv(m: i64, s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    phi_star_deriv_with(m, s, prm, &QuadratureConfig::default())
}

pub fn phi_star_deriv_with(m: i64, s: Complex64, prm: &LerchParams, cfg: &QuadratureConfig) -> Result<Complex64> {
    prm.require_a_above_one("derivatives and primitives of phi*")?;
    if m >= 0 {
        let v = engine::aux_zeta(c64(-(m as f64), 0.0), s, prm)?;
        return Ok(if m % 2 == 0 { v } else { -v });
    }
    let n = (-m) as i32;
    let upper = ((1.0 / cfg.abs_tol).ln() / prm.a.ln()).ceil() + 5.0;
    let fact: f64 = (1..n).map(f64::from).product();
    let inner_cfg = QuadratureConfig {
        rel_tol: cfg.rel_tol.min(1e-12),
        ..*cfg
    };
    let v = integrate_interval(
        |u| Ok(engine::aux_zeta(c64(0.0, 0.0), s + u, prm)? * u.powi(n - 1)),
        0.0,
        upper,
        &inner_cfg,
    )?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(v * (sign / fact))
}

/// Generalized Euler-Stieltjes constant
/// `γ_m(a, λ) = ((−1)^m/m!){φ*_{−m}(1, a, λ) + log^m a}`.
pub fn stieltjes_gamma(m: u32, prm: &LerchParams) -> Result<Complex64> {
    let aux = phi_star_aux(c64(-f64::from(m), 0.0), c64(1.0, 0.0), prm)?;
    let fact: f64 = (1..=m).map(f64::from).product();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((aux + prm.a.ln().powi(m as i32)) * (sign / fact))
}

#[cfg(test)]
mod tests;
