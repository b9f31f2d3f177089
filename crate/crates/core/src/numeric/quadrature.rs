//! Quadrature engines.
//!
//! * finite intervals with algebraic endpoint singularities: tanh-sinh,
//! * `(0, ∞)` with exponential decay: exp-sinh,
//! * smooth finite intervals and vertical lines: globally adaptive
//!   Gauss-Kronrod (7, 15).
//!
//! The double-exponential rules hand the integrand both `τ` and `1 − τ`, each
//! computed without cancellation, so weights such as `(1 − τ)^{β−1}` stay
//! accurate right up to the endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_refinement_depth: usize,
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_refinement_depth: 12,
            max_nodes: 400_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x < 1.0;
        if !ok(self.rel_tol) || !ok(self.abs_tol) {
            return Err(Error::DomainError(format!(
                "tolerances must lie in (0, 1): rel_tol={}, abs_tol={}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_refinement_depth < 1 || self.max_nodes < 16 {
            return Err(Error::DomainError(
                "max_refinement_depth must be >= 1 and max_nodes >= 16".into(),
            ));
        }
        Ok(())
    }

    fn tol(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// Declared endpoint behaviour of an integrand.
///
/// The exponents describe `τ^{left}` near `0` and `(1 − τ)^{right}` near `1`;
/// for semi-infinite ranges `decay_rate` is the coefficient `c` of the
/// envelope `e^{−cτ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointBehavior {
    pub left_exponent: f64,
    pub right_exponent: f64,
    pub right_is_infinite: bool,
    pub decay_rate: f64,
}

impl EndpointBehavior {
    pub fn finite(left_exponent: f64, right_exponent: f64) -> Self {
        Self {
            left_exponent,
            right_exponent,
            right_is_infinite: false,
            decay_rate: 0.0,
        }
    }

    pub fn regular() -> Self {
        Self::finite(0.0, 0.0)
    }

    pub fn semi_infinite(left_exponent: f64, decay_rate: f64) -> Self {
        Self {
            left_exponent,
            right_exponent: 0.0,
            right_is_infinite: true,
            decay_rate,
        }
    }

    fn validate(&self) -> Result<()> {
        for e in [self.left_exponent, self.right_exponent] {
            if !(e > -1.0) || !e.is_finite() {
                return Err(Error::InvalidExponent(e));
            }
        }
        if self.right_is_infinite && !(self.decay_rate > 0.0) {
            return Err(Error::InvalidDecay(self.decay_rate));
        }
        Ok(())
    }
}

fn finite_or_err(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite("integrand value"))
    }
}

/// Smallest `t` with `(p π/2) e^t ≥ 45 + t`: past it the double-exponential
/// node weights times `τ^p` fall below `e^{-40}`.
fn de_cutoff(p: f64, scale: f64) -> f64 {
    let mut t: f64 = 1.0;
    for _ in 0..30 {
        t = ((45.0 + t) / (p * scale)).ln().max(0.5);
    }
    t
}

/// `∫₀¹ f(τ) dτ` by tanh-sinh. The closure receives `(τ, 1 − τ)`.
pub fn integrate_finite<F>(f: F, behavior: &EndpointBehavior, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    integrate_finite_try(|t, tc| Ok(f(t, tc)), behavior, cfg)
}

/// Fallible variant of [`integrate_finite`].
pub fn integrate_finite_try<F>(
    f: F,
    behavior: &EndpointBehavior,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    behavior.validate()?;
    cfg.validate()?;
    if behavior.right_is_infinite {
        return Err(Error::DomainError(
            "integrate_finite called with an infinite endpoint".into(),
        ));
    }
    let p = 1.0 + behavior.left_exponent.min(behavior.right_exponent);
    // τ ≈ e^{-2u}, u = (π/2) sinh t; keep e^{-2u} representable
    let t_max = de_cutoff(p, FRAC_PI_2).min(6.08);

    let node = |t: f64| -> Result<Complex64> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let (lo, hi) = (e / (1.0 + e), 1.0 / (1.0 + e));
        let (tau, comp) = if t >= 0.0 { (hi, lo) } else { (lo, hi) };
        if tau <= 0.0 || comp <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w = PI * t.cosh() * tau * comp;
        finite_or_err(f(tau, comp)? * w)
    };
    double_exponential_sum(node, -t_max, t_max, cfg, "tanh-sinh quadrature")
}

/// `∫₀^∞ f(τ) dτ` by exp-sinh.
pub fn integrate_semiinfinite<F>(f: F, behavior: &EndpointBehavior, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    integrate_semiinfinite_try(|t| Ok(f(t)), behavior, cfg)
}

/// Fallible variant of [`integrate_semiinfinite`].
pub fn integrate_semiinfinite_try<F>(
    f: F,
    behavior: &EndpointBehavior,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !behavior.right_is_infinite {
        return Err(Error::InvalidDecay(behavior.decay_rate));
    }
    behavior.validate()?;
    cfg.validate()?;
    let p = 1.0 + behavior.left_exponent;
    let t_min = -de_cutoff(p, FRAC_PI_2 / 2.0).min(6.7);
    // right end: envelope e^{-cτ} below e^{-50}, with room for algebraic growth
    let tau_max = (60.0 / behavior.decay_rate).max(1e-3);
    let t_max = (tau_max.ln() / FRAC_PI_2).asinh().max(t_min + 1.0);

    let node = |t: f64| -> Result<Complex64> {
        let tau = (FRAC_PI_2 * t.sinh()).exp();
        if tau <= 0.0 || !tau.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w = tau * FRAC_PI_2 * t.cosh();
        finite_or_err(f(tau)? * w)
    };
    double_exponential_sum(node, t_min, t_max, cfg, "exp-sinh quadrature")
}

/// Trapezoidal sums on `[t_lo, t_hi]` with step halving.
fn double_exponential_sum<F>(
    node: F,
    t_lo: f64,
    t_hi: f64,
    cfg: &QuadratureConfig,
    what: &'static str,
) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut h = 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    let j_lo = (t_lo / h).ceil() as i64;
    let j_hi = (t_hi / h).floor() as i64;
    for j in j_lo..=j_hi {
        sum += node(j as f64 * h)?;
    }
    let mut nodes = (j_hi - j_lo + 1).max(0) as usize;
    let mut estimate = sum * h;
    let mut last_diff = f64::INFINITY;
    for level in 1..=cfg.max_refinement_depth {
        h *= 0.5;
        let j_lo = (t_lo / h).ceil() as i64;
        let j_hi = (t_hi / h).floor() as i64;
        let mut fresh = Complex64::new(0.0, 0.0);
        let mut j = if j_lo.rem_euclid(2) == 1 { j_lo } else { j_lo + 1 };
        while j <= j_hi {
            fresh += node(j as f64 * h)?;
            j += 2;
            nodes += 1;
        }
        sum += fresh;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        last_diff = diff;
        // the error of the refined sum is roughly the square of the relative
        // change, so a small change already certifies the new value
        if level >= 3 && diff <= cfg.tol(estimate.norm()) {
            return Ok(estimate);
        }
        if nodes > cfg.max_nodes {
            break;
        }
    }
    if last_diff <= 1e3 * cfg.tol(estimate.norm()) && last_diff.is_finite() {
        // converging but short of the target; the quadratic convergence of
        // the rule makes the latest sum far better than `last_diff` suggests
        if last_diff <= 1e-6 * estimate.norm().max(cfg.abs_tol) {
            return Ok(estimate);
        }
    }
    Err(Error::NonConvergence {
        what,
        estimate: last_diff,
    })
}

// Gauss-Kronrod (7, 15) abscissae and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = finite_or_err(f(c)?)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut vals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for (i, x) in XGK.iter().take(7).enumerate() {
        let f1 = finite_or_err(f(c - h * x)?)?;
        let f2 = finite_or_err(f(c + h * x)?)?;
        vals[i] = (f1, f2);
        k += (f1 + f2) * WGK[i];
        if i % 2 == 1 {
            g += (f1 + f2) * WG[i / 2];
        }
    }
    // QUADPACK-style scaling of |K − G|
    let mean = k * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for (i, (f1, f2)) in vals.iter().enumerate() {
        resasc += WGK[i] * ((f1 - mean).norm() + (f2 - mean).norm());
    }
    resasc *= h.abs();
    let raw = ((k - g) * h).norm();
    let error = if resasc > 0.0 && raw > 0.0 {
        resasc * (200.0 * raw / resasc).powf(1.5).min(1.0)
    } else {
        raw
    };
    Ok(Panel {
        a,
        b,
        value: k * h,
        error: error.max(50.0 * f64::EPSILON * (k * h).norm()),
    })
}

/// Globally adaptive Gauss-Kronrod on `[a, b]` starting from `panels` equal
/// pieces. Returns the integral and its error estimate.
pub fn adaptive_gauss_kronrod<F>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let n0 = panels.max(1);
    let mut heap = BinaryHeap::new();
    let width = (b - a) / n0 as f64;
    for i in 0..n0 {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n0 { b } else { lo + width };
        heap.push(gk15(&mut f, lo, hi)?);
    }
    let mut evals = 15 * n0;
    loop {
        let (total, err) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0), |(s, e), p| (s + p.value, e + p.error));
        if err <= cfg.tol(total.norm()) {
            return Ok((sum_in_order(&heap), err));
        }
        if evals + 30 > cfg.max_nodes {
            return Err(Error::NonConvergence {
                what: "adaptive Gauss-Kronrod",
                estimate: err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::NonConvergence {
                what: "adaptive Gauss-Kronrod (interval collapse)",
                estimate: err,
            });
        }
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
        evals += 30;
    }
}

/// Deterministic total: panels summed by increasing left endpoint.
fn sum_in_order(heap: &BinaryHeap<Panel>) -> Complex64 {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels.iter().map(|p| p.value).sum()
}

/// `∫_a^b f(x) dx` for a smooth integrand.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let panels = ((b - a).abs().ceil() as usize).clamp(1, 64);
    adaptive_gauss_kronrod(f, a, b, panels, cfg).map(|r| r.0)
}

/// `(1/2πi) ∫_{(u)} g(w) dw` along the upward vertical line `ℜw = u`.
///
/// The caller declares the envelope `|g(u+iv)| ≲ C e^{-decay_rate |v|} (|v|+1)^{poly_degree}`;
/// the line is cut at the height where that envelope drops below the
/// tolerance, then integrated adaptively.
pub fn integrate_vertical_line<G>(
    g: G,
    u: f64,
    decay_rate: f64,
    poly_degree: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    if !(decay_rate > 0.0) || !decay_rate.is_finite() {
        return Err(Error::DecayTooWeak(decay_rate));
    }
    cfg.validate()?;
    let height = truncation_height(&g, u, decay_rate, poly_degree, cfg)?;
    let panels = ((2.0 * height) / 1.5).ceil().clamp(2.0, 400.0) as usize;
    let (value, _) = adaptive_gauss_kronrod(
        |v| g(Complex64::new(u, v)),
        -height,
        height,
        panels,
        cfg,
    )?;
    Ok(value / (2.0 * PI))
}

/// Height `V` with `env · e^{-dV} (V+1)^p` below the target, confirmed by
/// sampling the integrand itself.
pub(crate) fn truncation_height<G>(
    g: &G,
    u: f64,
    decay_rate: f64,
    poly_degree: f64,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let env = [0.0, 0.5, -0.5, 1.0, -1.0]
        .iter()
        .map(|&v| g(Complex64::new(u, v)).map(|x| x.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let target = 1e-3 * cfg.abs_tol.max(cfg.rel_tol * env) * decay_rate;
    let p = poly_degree.max(0.0);
    let mut height = 2.0_f64;
    for _ in 0..50 {
        height = ((env / target).ln() + p * (height + 1.0).ln()) / decay_rate;
        height = height.max(2.0);
    }
    let edge = |v: f64| -> Result<f64> {
        Ok(g(Complex64::new(u, v))?
            .norm()
            .max(g(Complex64::new(u, -v))?.norm()))
    };
    let mut tries = 0;
    while edge(height)? * (1.0 + height) / decay_rate > target && tries < 12 {
        height *= 1.3;
        tries += 1;
    }
    Ok(height.min(2000.0))
}
