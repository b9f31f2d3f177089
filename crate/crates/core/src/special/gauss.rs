use std::f64::consts::PI;

use num_complex::Complex64;

use super::SERIES_RADIUS;
use crate::error::{Error, Result};
use crate::numeric::contour::{choose_abscissa, integrate_contour, ContourSpec, GammaFactor, GammaQuotient};
use crate::numeric::{
    c64, check_finite, gamma_ratio, integrate_finite_try, nonpositive_integer, EndpointBehavior,
    QuadratureConfig,
};

fn reject_pole(nu: Complex64) -> Result<()> {
    if nonpositive_integer(nu).is_some() {
        return Err(Error::PoleInParameter(format!("ν = {nu} is a nonpositive integer")));
    }
    Ok(())
}

fn on_cut(z: Complex64, omz: Complex64) -> bool {
    z.im == 0.0 && omz.re <= 0.0
}

/// `₂F₁(κ, μ; ν; Z)` by its power series, `|Z| < 1`.
pub fn gauss_2f1_series(kappa: Complex64, mu: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    reject_pole(nu)?;
    if z.norm() >= 1.0 {
        return Err(Error::DomainError(format!("series needs |Z| < 1, got {z}")));
    }
    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..20000 {
        let kf = k as f64;
        term *= (kappa + kf) * (mu + kf) / ((nu + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 3 {
                return check_finite(sum, "gauss_2f1 series");
            }
        } else {
            small = 0;
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "gauss_2f1 series",
        estimate: term.norm(),
    })
}

/// Euler integral `Γ[ν; μ, ν−μ] ∫₀¹ ξ^{μ−1}(1−ξ)^{ν−μ−1}(1−Zξ)^{−κ} dξ`,
/// `ℜν > ℜμ > 0`. `omz` is `1 − Z`, passed separately so that `Z` close to 1
/// loses nothing: `1 − Zξ = (1−ξ) + (1−Z)ξ`.
fn euler_with_complement(
    kappa: Complex64,
    mu: Complex64,
    nu: Complex64,
    z: Complex64,
    omz: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    reject_pole(nu)?;
    if !(nu.re > mu.re && mu.re > 0.0) {
        return Err(Error::DomainError("Euler integral needs re ν > re μ > 0".into()));
    }
    if on_cut(z, omz) {
        return Err(Error::BranchViolation(format!("Z = {z} lies on [1, ∞)")));
    }
    let b = EndpointBehavior::finite(mu.re - 1.0, nu.re - mu.re - 1.0);
    let (a1, a2) = (mu - 1.0, nu - mu - 1.0);
    let near_one = omz.norm() < 0.5;
    let v = integrate_finite_try(
        |t, tc| {
            let base = if near_one { omz * t + tc } else { c64(1.0, 0.0) - z * t };
            Ok((a1 * t.ln() + a2 * tc.ln() - kappa * base.ln()).exp())
        },
        &b,
        cfg,
    )?;
    Ok(v * gamma_ratio(&[nu], &[mu, nu - mu])?)
}

/// Euler integral route; swaps `κ ↔ μ` if only that order qualifies.
pub fn gauss_2f1_euler(kappa: Complex64, mu: Complex64, nu: Complex64, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let omz = c64(1.0, 0.0) - z;
    if nu.re > mu.re && mu.re > 0.0 {
        euler_with_complement(kappa, mu, nu, z, omz, cfg)
    } else {
        euler_with_complement(mu, kappa, nu, z, omz, cfg)
    }
}

/// Mellin-Barnes route
/// `(1/2πi)∫ Γ[κ+w, μ+w, ν, −w; κ, μ, ν+w] (−Z)^w dw`, `|arg(−Z)| < π`.
pub fn gauss_2f1_mb(kappa: Complex64, mu: Complex64, nu: Complex64, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    reject_pole(nu)?;
    for p in [kappa, mu] {
        if nonpositive_integer(p).is_some() {
            return Err(Error::PoleInParameter(format!("numerator parameter {p} is a nonpositive integer")));
        }
    }
    let log_mz = (-z).ln();
    let decay = PI - log_mz.im.abs();
    if decay < 0.05 {
        return Err(Error::SectorViolation {
            arg: log_mz.im,
            bound: PI,
            rel: "<",
            context: "gauss_2f1 Mellin-Barnes route, arg(-Z)".into(),
        });
    }
    let q = GammaQuotient::new(
        vec![
            GammaFactor::plus(kappa),
            GammaFactor::plus(mu),
            GammaFactor::constant(nu),
            GammaFactor::minus(c64(0.0, 0.0)),
        ],
        vec![
            GammaFactor::constant(kappa),
            GammaFactor::constant(mu),
            GammaFactor::plus(nu),
        ],
    );
    let lo = (-kappa.re).max(-mu.re);
    let u = if lo < 0.0 {
        choose_abscissa(lo, 0.0, &[], "2F1 contour")?
    } else {
        // every left pole family starts right of 0; put the line at −1/2
        // and indent
        -0.5
    };
    let spec = ContourSpec::separating(&q, u, decay, q.poly_degree(u))?;
    integrate_contour(&|w: Complex64| q.eval_power(w, w * log_mz), &spec, cfg)
}

/// Connection to `1 − Z` for `Z` near 1, `ν − κ − μ ∉ ℤ`:
/// `Γ[ν, ν−κ−μ; ν−κ, ν−μ] F(κ, μ; κ+μ−ν+1; 1−Z)
///  + (1−Z)^{ν−κ−μ} Γ[ν, κ+μ−ν; κ, μ] F(ν−κ, ν−μ; ν−κ−μ+1; 1−Z)`.
fn near_one(kappa: Complex64, mu: Complex64, nu: Complex64, omz: Complex64) -> Result<Complex64> {
    let e = nu - kappa - mu;
    let first = gamma_ratio(&[nu, e], &[nu - kappa, nu - mu])? * gauss_2f1_series(kappa, mu, 1.0 - e, omz)?;
    let second = gamma_ratio(&[nu, -e], &[kappa, mu])?
        * (e * omz.ln()).exp()
        * gauss_2f1_series(nu - kappa, nu - mu, e + 1.0, omz)?;
    check_finite(first + second, "gauss_2f1 near 1")
}

/// Connection to `1/Z` for large `|Z|`, `κ − μ ∉ ℤ`:
/// `Γ[ν, μ−κ; μ, ν−κ] (−Z)^{−κ} F(κ, 1−ν+κ; 1−μ+κ; 1/Z)
///  + Γ[ν, κ−μ; κ, ν−μ] (−Z)^{−μ} F(μ, 1−ν+μ; 1−κ+μ; 1/Z)`.
fn far_field(kappa: Complex64, mu: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    let one = c64(1.0, 0.0);
    let log_mz = (-z).ln();
    let inv = one / z;
    let first = gamma_ratio(&[nu, mu - kappa], &[mu, nu - kappa])?
        * (-kappa * log_mz).exp()
        * gauss_2f1_series(kappa, one - nu + kappa, one - mu + kappa, inv)?;
    let second = gamma_ratio(&[nu, kappa - mu], &[kappa, nu - mu])?
        * (-mu * log_mz).exp()
        * gauss_2f1_series(mu, one - nu + mu, one - kappa + mu, inv)?;
    check_finite(first + second, "gauss_2f1 near infinity")
}

/// `₂F₁(κ, μ; ν; Z)` on `ℂ ∖ [1, ∞)`.
///
/// Routes, in order: power series for `|Z| ≤ 0.7`; the connection to
/// `1 − Z` when `|1 − Z| ≤ 0.3` and `ν − κ − μ` is not within 0.05 of an
/// integer; the connection to `1/Z` when `|Z| ≥ 1/0.7` and `κ − μ` is not
/// within 0.05 of an integer; Euler integral when
/// `ℜν > ℜμ > 0` (or with `κ, μ` swapped); Pfaff's transformation
/// `(1−Z)^{−κ} ₂F₁(κ, ν−μ; ν; Z/(Z−1))` when that lands inside the series
/// disc; Mellin-Barnes when `|arg(−Z)| < π`; the power series for whatever
/// is left inside the unit disc.
pub fn gauss_2f1(kappa: Complex64, mu: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    gauss_2f1_at_complement(kappa, mu, nu, z, c64(1.0, 0.0) - z)
}

/// [`gauss_2f1`] with `1 − Z` supplied by the caller, for arguments so close
/// to 1 that forming `1 − Z` would cancel.
pub fn gauss_2f1_at_complement(
    kappa: Complex64,
    mu: Complex64,
    nu: Complex64,
    z: Complex64,
    omz: Complex64,
) -> Result<Complex64> {
    for (v, what) in [(kappa, "κ"), (mu, "μ"), (nu, "ν"), (z, "Z")] {
        check_finite(v, what)?;
    }
    reject_pole(nu)?;
    if on_cut(z, omz) {
        return Err(Error::BranchViolation(format!("Z = {z} lies on [1, ∞)")));
    }
    if z.norm() <= SERIES_RADIUS {
        return gauss_2f1_series(kappa, mu, nu, z);
    }
    let excess = nu - kappa - mu;
    if omz.norm() <= 1.0 - SERIES_RADIUS && excess.im.abs() + (excess.re - excess.re.round()).abs() > 0.05 {
        return near_one(kappa, mu, nu, omz);
    }
    let split = kappa - mu;
    if z.norm() * SERIES_RADIUS >= 1.0 && split.im.abs() + (split.re - split.re.round()).abs() > 0.05 {
        return far_field(kappa, mu, nu, z);
    }
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13).with_abs_tol(1e-300);
    if (nu.re > mu.re && mu.re > 0.0) || (nu.re > kappa.re && kappa.re > 0.0) {
        let (k, m) = if nu.re > mu.re && mu.re > 0.0 { (kappa, mu) } else { (mu, kappa) };
        return euler_with_complement(k, m, nu, z, omz, &cfg);
    }
    let pz = z / (z - 1.0);
    if pz.norm() <= SERIES_RADIUS {
        return Ok((-kappa * omz.ln()).exp() * gauss_2f1_series(kappa, nu - mu, nu, pz)?);
    }
    match gauss_2f1_mb(kappa, mu, nu, z, &cfg) {
        Ok(v) => Ok(v),
        Err(e) if z.norm() < 1.0 => gauss_2f1_series(kappa, mu, nu, z).map_err(|_| e),
        Err(e) => Err(e),
    }
}
