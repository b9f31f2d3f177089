//! Continuation of `φ*_r` by Taylor expansion of the shift relation in `a`.
//!
//! With `c_{n,m} = 𝔰_m^n(s)(r)_m`, so that
//! `∂_a^n (a^{−s}log^{−r}a) = (−1)^n a^{−s−n} Σ_m c_{n,m} log^{−r−m}a`:
//!
//! * `λ ∉ ℤ`:
//!   `(1−e(λ))φ*_r(s,a,λ) = a^{−s}log^{−r}a + e(λ){Σ_{n=1}^{N−1} ((−1)^n/n!) Σ_{m≤n} c_{n,m} φ*_{r+m}(s+n,a,λ)
//!   + ((−1)^N/(N−1)!) Σ_{m≤N} c_{N,m} ∫₀¹ φ*_{r+m}(s+N,a+u,λ)(1−u)^{N−1}du}`.
//! * `λ ∈ ℤ`:
//!   `ζ*_r(s,a) = ∫₀¹ (a+u)^{−s}log^{−r}(a+u)(1−u)du + Σ_{n=1}^{N−1} ((−1)^{n+1}/(n+1)!) Σ_{m≤n} c_{n,m} ζ*_{r+m}(s+n,a)
//!   + ((−1)^{N+1}/N!) Σ_{m≤N} c_{N,m} ∫₀¹ ζ*_{r+m}(s+N,a+u)(1−u)^N du`.
//!
//! The inner values come from the direct evaluator, so the result must not
//! depend on `N`; that is what this route is for.

use num_complex::Complex64;

use super::{engine, LerchParams};
use crate::error::{Error, Result};
use crate::numeric::{c64, check_finite, integrate_interval, rising_factorial, stirling_row, unit_phase, QuadratureConfig};

/// Largest truncation depth accepted.
pub const MAX_DEPTH: usize = 12;

fn coefficients(n: usize, s: Complex64, r: Complex64) -> Result<Vec<Complex64>> {
    stirling_row(n)
        .iter()
        .enumerate()
        .map(|(m, p)| Ok(p.eval(s) * rising_factorial(r, m as i64)?))
        .collect()
}

/// `φ*_r(s, a, λ)` through the depth-`depth` recurrence.
pub fn phi_star_aux_recurrence(r: Complex64, s: Complex64, prm: &LerchParams, depth: usize) -> Result<Complex64> {
    prm.require_a_above_one("the recurrence")?;
    check_finite(r, "r")?;
    check_finite(s, "s")?;
    if depth == 0 {
        return Err(Error::DomainError("recurrence depth must be at least 1".into()));
    }
    if depth > MAX_DEPTH {
        return Err(Error::RecursionDepthExceeded(depth));
    }
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13).with_abs_tol(1e-300);
    let a = prm.a;
    let integer = prm.lambda_is_integer;
    let at = |rr: Complex64, ss: Complex64, aa: f64| -> Result<Complex64> {
        let p = LerchParams { a: aa, ..*prm };
        engine::aux_zeta(rr, ss, &p)
    };
    let leading = |x: f64| (-s * x.ln() - r * x.ln().ln()).exp();

    let mut factorial = 1.0;
    let mut middle = c64(0.0, 0.0);
    for n in 1..depth {
        factorial *= n as f64;
        let c = coefficients(n, s, r)?;
        let mut inner = c64(0.0, 0.0);
        for (m, cm) in c.iter().enumerate() {
            inner += cm * at(r + m as f64, s + n as f64, a)?;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        middle += if integer {
            inner * (-sign / (factorial * (n + 1) as f64))
        } else {
            inner * (sign / factorial)
        };
    }

    let big_n = depth;
    let c = coefficients(big_n, s, r)?;
    // (1−u)^{N−1} for λ ∉ ℤ, (1−u)^N for λ ∈ ℤ
    let weight_power = if integer { big_n } else { big_n - 1 } as i32;
    let mut remainder = c64(0.0, 0.0);
    for (m, cm) in c.iter().enumerate() {
        let rr = r + m as f64;
        let ss = s + big_n as f64;
        let v = integrate_interval(|u| Ok(at(rr, ss, a + u)? * (1.0 - u).powi(weight_power)), 0.0, 1.0, &cfg)?;
        remainder += cm * v;
    }
    // (N−1)! and N!
    let fact_nm1: f64 = (1..big_n).map(|k| k as f64).product();
    let sign_n = if big_n % 2 == 0 { 1.0 } else { -1.0 };

    let value = if integer {
        let head = integrate_interval(|u| Ok(leading(a + u) * (1.0 - u)), 0.0, 1.0, &cfg)?;
        head + middle - remainder * (sign_n / (fact_nm1 * big_n as f64))
    } else {
        let q = unit_phase(prm.lambda_frac());
        let bracket = middle + remainder * (sign_n / fact_nm1);
        (leading(a) + q * bracket) / (c64(1.0, 0.0) - q)
    };
    check_finite(value, "aux zeta recurrence")
}
