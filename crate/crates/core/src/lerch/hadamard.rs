use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{
    c64, check_finite, gamma, integrate_interval, integrate_semiinfinite_try, rgamma, EndpointBehavior,
    QuadratureConfig,
};

/// Radius of the loop about the initial point.
pub const LOOP_RADIUS: f64 = 0.5;

const INTEGER_TOL: f64 = 1e-12;

/// Which evaluation `hadamard_apply` uses for a given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HadamardRoute {
    /// Generic order: loop contour.
    Contour,
    /// `r = −m ≤ 0`: `(−1)^m f^{(m)}` by a Cauchy integral.
    Derivative(u32),
    /// `r = n > 0`: `(1/Γ(n)) ∫₀^∞ f(s+x) x^{n−1} dx`.
    RayIntegral(u32),
}

impl HadamardRoute {
    pub fn for_order(r: Complex64) -> Self {
        let k = r.re.round();
        if r.im.abs() < INTEGER_TOL && (r.re - k).abs() < INTEGER_TOL {
            if k <= 0.0 {
                HadamardRoute::Derivative((-k) as u32)
            } else {
                HadamardRoute::RayIntegral(k as u32)
            }
        } else {
            HadamardRoute::Contour
        }
    }
}

/// `I_s^r f(s)` with initial point `+∞`.
///
/// `decay_rate` is a caller-declared `c > 0` with `|f(s+x)| ≲ e^{−cx}`, and
/// `f` must be holomorphic on the disc of radius [`LOOP_RADIUS`] about `s`.
/// The loop runs in along `arg z = 0`, around `|z| = η`, and out along
/// `arg z = 2π`:
/// `I^r f = {(e(r)−1)∫_η^∞ f(s+x)x^{r−1}dx + iη^r ∫₀^{2π} f(s+ηe^{iθ})e^{irθ}dθ} / (Γ(r)(e(r)−1))`.
pub fn hadamard_apply<F>(r: Complex64, f: F, s: Complex64, decay_rate: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    hadamard_apply_with(r, f, s, decay_rate, &QuadratureConfig::default())
}

pub fn hadamard_apply_with<F>(r: Complex64, f: F, s: Complex64, decay_rate: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check_finite(r, "r")?;
    check_finite(s, "s")?;
    match HadamardRoute::for_order(r) {
        HadamardRoute::Derivative(0) => f(s),
        HadamardRoute::Derivative(m) => {
            let d = cauchy_derivative(&f, s, m)?;
            Ok(if m % 2 == 0 { d } else { -d })
        }
        HadamardRoute::RayIntegral(n) => {
            let b = EndpointBehavior::semi_infinite(f64::from(n) - 1.0, decay_rate);
            let v = integrate_semiinfinite_try(|x| Ok(f(s + x)? * x.powi(n as i32 - 1)), &b, cfg)?;
            Ok(v * rgamma(c64(f64::from(n), 0.0))?)
        }
        HadamardRoute::Contour => {
            let eta = LOOP_RADIUS;
            let b = EndpointBehavior::semi_infinite(0.0, decay_rate);
            let rm1 = r - 1.0;
            let ray = integrate_semiinfinite_try(
                |x| {
                    let z = eta + x;
                    Ok(f(s + z)? * (rm1 * z.ln()).exp())
                },
                &b,
                cfg,
            )?;
            let circle = integrate_interval(
                |th| {
                    let z = Complex64::from_polar(eta, th);
                    Ok(f(s + z)? * (c64(0.0, th) * r).exp())
                },
                0.0,
                2.0 * PI,
                cfg,
            )?;
            let er1 = (c64(0.0, 2.0 * PI) * r).exp() - 1.0;
            let eta_r = (r * eta.ln()).exp();
            let total = er1 * ray + c64(0.0, 1.0) * eta_r * circle;
            check_finite(total / (gamma(r)? * er1), "hadamard_apply")
        }
    }
}

/// `f^{(m)}(s)` by the trapezoid rule on `|z − s| = η`, doubling the node
/// count until two estimates agree.
fn cauchy_derivative<F>(f: &F, s: Complex64, m: u32) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let eta = LOOP_RADIUS;
    let fact: f64 = (1..=m).map(f64::from).product();
    let estimate = |n: usize| -> Result<Complex64> {
        let mut acc = c64(0.0, 0.0);
        for k in 0..n {
            let th = 2.0 * PI * k as f64 / n as f64;
            acc += f(s + Complex64::from_polar(eta, th))? * Complex64::from_polar(1.0, -(m as f64) * th);
        }
        Ok(acc * (fact / (n as f64 * eta.powi(m as i32))))
    };
    let mut n = 32;
    let mut prev = estimate(n)?;
    while n < 4096 {
        n *= 2;
        let next = estimate(n)?;
        if (next - prev).norm() <= 1e-14 * next.norm().max(1e-300) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "Cauchy derivative",
        estimate: prev.norm(),
    })
}
