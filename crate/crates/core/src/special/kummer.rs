use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::contour::{integrate_contour, ContourSpec, GammaFactor, GammaQuotient};
use crate::numeric::{
    c64, check_finite, gamma_ratio, integrate_finite_try, integrate_semiinfinite_try,
    nonpositive_integer, EndpointBehavior, QuadratureConfig,
};

fn reject_pole(nu: Complex64, what: &str) -> Result<()> {
    if nonpositive_integer(nu).is_some() {
        return Err(Error::PoleInParameter(format!("{what} = {nu} is a nonpositive integer")));
    }
    Ok(())
}

/// `₁F₁(κ; ν; Z)` by its power series.
pub fn kummer_m_series(kappa: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    reject_pole(nu, "ν")?;
    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    for k in 0..4000 {
        let kf = k as f64;
        term *= (kappa + kf) / ((nu + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && kf > z.norm() {
            return check_finite(sum, "kummer_m series");
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "kummer_m series",
        estimate: term.norm(),
    })
}

/// `₁F₁(κ; ν; Z)`. The series is summed directly when `ℜZ ≥ 0` and after
/// Kummer's transformation `e^Z ₁F₁(ν−κ; ν; −Z)` otherwise, so the terms
/// never cancel against an exponentially small sum.
pub fn kummer_m(kappa: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    check_finite(kappa, "κ")?;
    check_finite(nu, "ν")?;
    check_finite(z, "Z")?;
    if z.re >= 0.0 {
        kummer_m_series(kappa, nu, z)
    } else {
        Ok(z.exp() * kummer_m_series(nu - kappa, nu, -z)?)
    }
}

/// Euler integral `Γ[ν; κ, ν−κ] ∫₀¹ e^{Zξ} ξ^{κ−1}(1−ξ)^{ν−κ−1} dξ`,
/// `ℜν > ℜκ > 0`.
pub fn kummer_m_euler(kappa: Complex64, nu: Complex64, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    reject_pole(nu, "ν")?;
    if !(nu.re > kappa.re && kappa.re > 0.0) {
        return Err(Error::DomainError("Euler integral needs re ν > re κ > 0".into()));
    }
    let b = EndpointBehavior::finite(kappa.re - 1.0, nu.re - kappa.re - 1.0);
    let a1 = kappa - 1.0;
    let a2 = nu - kappa - 1.0;
    let v = integrate_finite_try(
        |t, tc| Ok((z * t + a1 * t.ln() + a2 * tc.ln()).exp()),
        &b,
        cfg,
    )?;
    Ok(v * gamma_ratio(&[nu], &[kappa, nu - kappa])?)
}

/// Mellin-Barnes route `(1/2πi)∫ Γ[κ+w, ν, −w; κ, ν+w] (−Z)^w dw` on
/// `ℜw = u`, `−ℜκ < u < 0`, `|arg(−Z)| < π/2`.
pub fn kummer_m_mb(kappa: Complex64, nu: Complex64, z: Complex64, u: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    reject_pole(nu, "ν")?;
    let log_mz = (-z).ln();
    let decay = PI / 2.0 - log_mz.im.abs();
    if decay < 0.05 {
        return Err(Error::SectorViolation {
            arg: log_mz.im,
            bound: PI / 2.0,
            rel: "<",
            context: "kummer_m Mellin-Barnes route, arg(-Z)".into(),
        });
    }
    let q = GammaQuotient::new(
        vec![
            GammaFactor::plus(kappa),
            GammaFactor::constant(nu),
            GammaFactor::minus(c64(0.0, 0.0)),
        ],
        vec![GammaFactor::constant(kappa), GammaFactor::plus(nu)],
    );
    let spec = ContourSpec::separating(&q, u, decay, q.poly_degree(u))?;
    integrate_contour(&|w: Complex64| q.eval_power(w, w * log_mz), &spec, cfg)
}

/// `U(κ; ν; Z)` on the principal sheet, `|arg Z| < π`.
pub fn kummer_u(kappa: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    kummer_u_polar(kappa, nu, z.norm(), z.arg())
}

/// `U(κ; ν; ρe^{iθ})` for `|θ| < 3π/2`, continuing across the negative axis.
///
/// `ℜκ > 0` uses the rotated ray of the Laplace-type integral; otherwise the
/// indented Mellin-Barnes contour.
pub fn kummer_u_polar(kappa: Complex64, nu: Complex64, modulus: f64, theta: f64) -> Result<Complex64> {
    check_finite(kappa, "κ")?;
    check_finite(nu, "ν")?;
    if !(modulus > 0.0) || !modulus.is_finite() || !theta.is_finite() {
        return Err(Error::DomainError(format!("U needs a finite nonzero argument, got |Z| = {modulus}")));
    }
    if theta.abs() >= 1.5 * PI - 1e-3 {
        return Err(Error::SectorViolation {
            arg: theta,
            bound: 1.5 * PI,
            rel: "<",
            context: "kummer_u".into(),
        });
    }
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13).with_abs_tol(1e-300);
    if kappa.re > 0.05 && modulus < SMALL_MODULUS {
        kummer_u_log_trapezoid(kappa, nu, modulus, theta)
    } else if kappa.re > 0.05 {
        kummer_u_integral(kappa, nu, modulus, theta, &cfg)
    } else {
        kummer_u_mb(kappa, nu, modulus, theta, &cfg)
    }
}

/// `(1/Γ(κ)) e^{iκφ} ∫₀^∞ e^{−Zξe^{iφ}} ξ^{κ−1}(1+ξe^{iφ})^{ν−κ−1} dξ`
/// with the ray angle `φ` chosen so that `arg Z + φ` is as small as
/// possible while `|φ| < π`.
pub fn kummer_u_integral(
    kappa: Complex64,
    nu: Complex64,
    modulus: f64,
    theta: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !(kappa.re > 0.0) {
        return Err(Error::DomainError("U integral route needs re κ > 0".into()));
    }
    let phi = if theta.abs() <= PI / 2.0 { -theta } else { -2.0 * theta / 3.0 };
    let rot = Complex64::from_polar(1.0, phi);
    let z = Complex64::from_polar(modulus, theta);
    let zr = z * rot;
    let b = EndpointBehavior::semi_infinite(kappa.re - 1.0, zr.re);
    let (k1, e) = (kappa - 1.0, nu - kappa - 1.0);
    // rescale so the exponential decays at unit rate in the quadrature
    // variable; keeps the node layout sensible for tiny or huge |Z|
    let scale = 1.0 / zr.re;
    let b = EndpointBehavior::semi_infinite(b.left_exponent, 1.0);
    let v = integrate_semiinfinite_try(
        |t| {
            let xi = t * scale;
            let x = rot * xi;
            Ok((-zr * xi + k1 * xi.ln() + e * (x + 1.0).ln()).exp())
        },
        &b,
        cfg,
    )?;
    let pre = (kappa * c64(0.0, phi)).exp() * scale / crate::numeric::gamma(kappa)?;
    check_finite(v * pre, "kummer_u integral")
}

/// Below this `|Z|` the ray integral spans too many decades in `ξ` for the
/// double-exponential rule.
const SMALL_MODULUS: f64 = 1e-2;

/// The ray integral of [`kummer_u_integral`] in `x = log ξ`, by the
/// trapezoid rule on the whole line. The integrand is analytic in the strip
/// `|ℑx| < π/2` or so, and decays like `e^{ℜκ x}` on the left and doubly
/// exponentially on the right, so the rule converges geometrically
/// whatever the size of `|Z|`.
fn kummer_u_log_trapezoid(kappa: Complex64, nu: Complex64, modulus: f64, theta: f64) -> Result<Complex64> {
    let phi = if theta.abs() <= PI / 2.0 { -theta } else { -2.0 * theta / 3.0 };
    let rot = Complex64::from_polar(1.0, phi);
    let zr = Complex64::from_polar(modulus, theta) * rot;
    let e = nu - kappa - 1.0;
    let g = |x: f64| -> Complex64 {
        let xi = x.exp();
        (-zr * xi + kappa * x + e * (rot * xi + 1.0).ln()).exp()
    };
    // left: e^{ℜκ x} against the bulk near ξ ~ 1/|Z|, which is at least of
    // size min(1, |Z|^{1−ℜν}); right: ℜ(zr)ξ past 60 plus algebraic growth
    let bulk = (1.0 - nu.re).min(0.0) * modulus.ln();
    let lo = -(45.0 - bulk.min(0.0)) / kappa.re;
    let hi = ((60.0 + (nu.re.abs() + kappa.re.abs() + 2.0) * 10.0) / zr.re).ln();
    let mut h = 0.5;
    let count = |h: f64| ((hi - lo) / h).ceil() as usize;
    let mut sum: Complex64 = (0..=count(h)).map(|j| g(lo + j as f64 * h)).sum();
    let mut est = sum * h;
    for _ in 0..8 {
        h *= 0.5;
        let n = count(h);
        let mut j = 1;
        while j <= n {
            sum += g(lo + j as f64 * h);
            j += 2;
        }
        let next = sum * h;
        let diff = (next - est).norm();
        est = next;
        if diff <= 1e-14 * est.norm() {
            let pre = (kappa * c64(0.0, phi)).exp() / crate::numeric::gamma(kappa)?;
            return check_finite(est * pre, "kummer_u log trapezoid");
        }
    }
    Err(Error::NonConvergence {
        what: "kummer_u log trapezoid",
        estimate: est.norm(),
    })
}

/// `(1/2πi)∫_C Γ[κ+w, −w, 1−ν−w; κ, κ−ν+1] Z^w dw` on an indented line.
pub fn kummer_u_mb(kappa: Complex64, nu: Complex64, modulus: f64, theta: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let den_pole = kappa - nu + 1.0;
    reject_pole(kappa, "κ")?;
    if nonpositive_integer(den_pole).is_some() {
        return Err(Error::PoleInParameter(format!("κ−ν+1 = {den_pole} is a nonpositive integer")));
    }
    let decay = 1.5 * PI - theta.abs();
    if decay < 0.05 {
        return Err(Error::SectorViolation {
            arg: theta,
            bound: 1.5 * PI,
            rel: "<",
            context: "kummer_u Mellin-Barnes route".into(),
        });
    }
    let q = GammaQuotient::new(
        vec![
            GammaFactor::plus(kappa),
            GammaFactor::minus(c64(0.0, 0.0)),
            GammaFactor::minus(c64(1.0, 0.0) - nu),
        ],
        vec![GammaFactor::constant(kappa), GammaFactor::constant(den_pole)],
    );
    // line between the left family and the nearer right family when
    // possible; otherwise the contour indents
    let right_start = 0.0_f64.min(1.0 - nu.re);
    let lo = -kappa.re;
    let u = if lo < right_start {
        crate::numeric::contour::choose_abscissa(lo, right_start, &[], "U contour")?
    } else {
        right_start - 0.5
    };
    let spec = ContourSpec::separating(&q, u, decay, q.poly_degree(u))?;
    let log_z = c64(modulus.ln(), theta);
    integrate_contour(&|w: Complex64| q.eval_power(w, w * log_z), &spec, cfg)
}
