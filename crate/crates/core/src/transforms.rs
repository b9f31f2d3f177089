//! Laplace-Mellin and Riemann-Liouville transforms by direct quadrature.
//!
//! With `f` holomorphic in `|arg τ| < π`:
//!
//! * `LM^α_{z;τ} f(τ) = (1/Γ(α)) ∫₀^∞ f(zτ) τ^{α−1} e^{−τ} dτ`
//! * `RL^{α,β}_{z;τ} f(τ) = Γ[α+β; α, β] ∫₀¹ f(zτ) τ^{α−1} (1−τ)^{β−1} dτ`
//!
//! and the iterates `LM^β LM^α`, `RL^{β,γ} LM^α`, `RL^{γ,δ} RL^{α,β}`, either
//! as nested integrals or as a single integral against a kernel built from
//! `K_ν`, `U` or `₂F₁`.
//!
//! The `*_apply` functions act on any caller-supplied `f` (harness mode); the
//! `*_transform` functions take `f(w) = (φ*)^{(m)}(s + w, a, λ)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lerch::{phi_star_aux, LerchParams};
use crate::numeric::{
    c64, check_finite, gamma_ratio, integrate_finite_try, integrate_semiinfinite_try, rgamma,
    EndpointBehavior, QuadratureConfig,
};
use crate::special::{bessel_k, gauss_2f1_at_complement, kummer_u};

/// Default distance kept from every hard sector boundary.
pub const SECTOR_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TransformKind {
    Lm,
    Rl,
    Lmlm,
    Rllm,
    Rlrl,
}

impl TransformKind {
    /// Number of orders the kind uses.
    pub fn order_count(self) -> usize {
        match self {
            TransformKind::Lm => 1,
            TransformKind::Rl | TransformKind::Lmlm => 2,
            TransformKind::Rllm => 3,
            TransformKind::Rlrl => 4,
        }
    }
}

impl std::str::FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LM" => Ok(TransformKind::Lm),
            "RL" => Ok(TransformKind::Rl),
            "LMLM" => Ok(TransformKind::Lmlm),
            "RLLM" => Ok(TransformKind::Rllm),
            "RLRL" => Ok(TransformKind::Rlrl),
            other => Err(Error::DomainError(format!("unknown transform kind {other}"))),
        }
    }
}

/// Transform kind, its orders and the derivative order `m`.
///
/// Orders are named as in the compositions: `LM^α`, `RL^{α,β}`,
/// `LM^β LM^α`, `RL^{β,γ} LM^α`, `RL^{γ,δ} RL^{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub alpha: Complex64,
    pub beta: Option<Complex64>,
    pub gamma: Option<Complex64>,
    pub delta: Option<Complex64>,
    pub m: i64,
}

impl TransformSpec {
    pub fn lm(alpha: Complex64, m: i64) -> Self {
        Self { kind: TransformKind::Lm, alpha, beta: None, gamma: None, delta: None, m }
    }

    pub fn rl(alpha: Complex64, beta: Complex64, m: i64) -> Self {
        Self { kind: TransformKind::Rl, alpha, beta: Some(beta), gamma: None, delta: None, m }
    }

    pub fn lmlm(alpha: Complex64, beta: Complex64, m: i64) -> Self {
        Self { kind: TransformKind::Lmlm, alpha, beta: Some(beta), gamma: None, delta: None, m }
    }

    pub fn rllm(alpha: Complex64, beta: Complex64, gamma: Complex64, m: i64) -> Self {
        Self { kind: TransformKind::Rllm, alpha, beta: Some(beta), gamma: Some(gamma), delta: None, m }
    }

    pub fn rlrl(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64, m: i64) -> Self {
        Self {
            kind: TransformKind::Rlrl,
            alpha,
            beta: Some(beta),
            gamma: Some(gamma),
            delta: Some(delta),
            m,
        }
    }

    /// Builds a spec from the first `kind.order_count()` entries of `orders`.
    pub fn from_orders(kind: TransformKind, orders: &[Complex64], m: i64) -> Result<Self> {
        let n = kind.order_count();
        if orders.len() != n {
            return Err(Error::DomainError(format!("{kind:?} takes {n} orders, got {}", orders.len())));
        }
        let spec = match kind {
            TransformKind::Lm => Self::lm(orders[0], m),
            TransformKind::Rl => Self::rl(orders[0], orders[1], m),
            TransformKind::Lmlm => Self::lmlm(orders[0], orders[1], m),
            TransformKind::Rllm => Self::rllm(orders[0], orders[1], orders[2], m),
            TransformKind::Rlrl => Self::rlrl(orders[0], orders[1], orders[2], orders[3], m),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn orders(&self) -> Vec<Complex64> {
        [Some(self.alpha), self.beta, self.gamma, self.delta].into_iter().flatten().collect()
    }

    /// Every used order present with positive real part, unused ones absent.
    pub fn validate(&self) -> Result<()> {
        let used = self.kind.order_count();
        let slots = [Some(self.alpha), self.beta, self.gamma, self.delta];
        for (i, slot) in slots.iter().enumerate() {
            match (i < used, slot) {
                (true, None) => return Err(Error::DomainError(format!("{:?} needs order #{}", self.kind, i + 1))),
                (false, Some(_)) => {
                    return Err(Error::DomainError(format!("{:?} does not use order #{}", self.kind, i + 1)))
                }
                (true, Some(v)) => {
                    check_finite(*v, "transform order")?;
                    if v.re <= 0.0 {
                        return Err(Error::DomainError(format!("order {v} must have positive real part")));
                    }
                }
                (false, None) => {}
            }
        }
        Ok(())
    }

    pub(crate) fn b(&self) -> Complex64 {
        self.beta.expect("validated spec")
    }
    pub(crate) fn g(&self) -> Complex64 {
        self.gamma.expect("validated spec")
    }
    pub(crate) fn d(&self) -> Complex64 {
        self.delta.expect("validated spec")
    }
}

/// A sector `|arg z| ≤ max_abs_arg − margin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub max_abs_arg: f64,
    pub margin: f64,
}

impl SectorSpec {
    pub fn new(max_abs_arg: f64) -> Self {
        Self { max_abs_arg, margin: SECTOR_MARGIN }
    }

    /// `z = 0` is accepted by every sector.
    pub fn check(&self, z: Complex64, context: &str) -> Result<()> {
        check_finite(z, "z")?;
        if z == c64(0.0, 0.0) {
            return Ok(());
        }
        let arg = z.arg();
        if arg.abs() > self.max_abs_arg - self.margin {
            return Err(Error::SectorViolation {
                arg: arg.abs(),
                bound: self.max_abs_arg - self.margin,
                rel: "<=",
                context: context.to_string(),
            });
        }
        Ok(())
    }
}

/// How an iterated transform is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IteratedMode {
    /// One integral against the Proposition kernel.
    Kernel,
    /// The composition taken literally as two nested integrals.
    DoubleIntegral,
}

fn inner_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: (cfg.rel_tol * 0.1).max(1e-14),
        ..*cfg
    }
}

/// `LM^α_{z;τ} f(τ)`.
pub fn lm_apply<F>(alpha: Complex64, f: F, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check_finite(alpha, "α")?;
    if z == c64(0.0, 0.0) {
        return f(z);
    }
    let am1 = alpha - 1.0;
    let b = EndpointBehavior::semi_infinite(alpha.re - 1.0, 1.0);
    let v = integrate_semiinfinite_try(|t| Ok(f(z * t)? * (am1 * t.ln() - t).exp()), &b, cfg)?;
    Ok(v * rgamma(alpha)?)
}

/// `RL^{α,β}_{z;τ} f(τ)`.
pub fn rl_apply<F>(alpha: Complex64, beta: Complex64, f: F, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check_finite(alpha, "α")?;
    check_finite(beta, "β")?;
    if z == c64(0.0, 0.0) {
        return f(z);
    }
    let (am1, bm1) = (alpha - 1.0, beta - 1.0);
    let b = EndpointBehavior::finite(alpha.re - 1.0, beta.re - 1.0);
    let v = integrate_finite_try(|t, tc| Ok(f(z * t)? * (am1 * t.ln() + bm1 * tc.ln()).exp()), &b, cfg)?;
    Ok(v * gamma_ratio(&[alpha + beta], &[alpha, beta])?)
}

/// Kernel of the single-integral form of an iterated transform at `τ > 0`.
///
/// `RLRL` is supported on `τ < 1` only; [`Error::SupportViolation`] is
/// returned for `τ ≥ 1`, where the kernel vanishes.
pub fn iterated_kernel(spec: &TransformSpec, tau: f64) -> Result<Complex64> {
    iterated_kernel_with_complement(spec, tau, 1.0 - tau)
}

/// [`iterated_kernel`] with `1 − τ` supplied exactly.
pub fn iterated_kernel_with_complement(spec: &TransformSpec, tau: f64, tau_c: f64) -> Result<Complex64> {
    spec.validate()?;
    if !(tau > 0.0) {
        return Err(Error::DomainError(format!("kernel needs τ > 0, got {tau}")));
    }
    let a = spec.alpha;
    let lt = tau.ln();
    match spec.kind {
        TransformKind::Lmlm => {
            let b = spec.b();
            let k = bessel_k(a - b, c64(2.0 * tau.sqrt(), 0.0))?;
            Ok(k * ((0.5 * (a + b) - 1.0) * lt).exp() * 2.0 * rgamma(a)? * rgamma(b)?)
        }
        TransformKind::Rllm => {
            let (b, g) = (spec.b(), spec.g());
            let u = kummer_u(g, a - b + 1.0, c64(tau, 0.0))?;
            Ok(u * ((a - 1.0) * lt - tau).exp() * gamma_ratio(&[b + g], &[a, b])?)
        }
        TransformKind::Rlrl => {
            if !(tau_c > 0.0) {
                return Err(Error::SupportViolation);
            }
            let (b, g, d) = (spec.b(), spec.g(), spec.d());
            let f = gauss_2f1_at_complement(a + b - g, d, b + d, c64(tau_c, 0.0), c64(tau, 0.0))?;
            let w = ((a - 1.0) * lt + (b + d - 1.0) * tau_c.ln()).exp();
            Ok(f * w * gamma_ratio(&[a + b, g + d], &[a, g, b + d])?)
        }
        TransformKind::Lm | TransformKind::Rl => {
            Err(Error::DomainError("kernels exist for iterated kinds only".into()))
        }
    }
}

/// Iterated transform of a caller-supplied `f`.
pub fn iterated_apply<F>(spec: &TransformSpec, f: F, z: Complex64, cfg: &QuadratureConfig, mode: IteratedMode) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    spec.validate()?;
    if z == c64(0.0, 0.0) {
        return f(z);
    }
    let a = spec.alpha;
    match mode {
        IteratedMode::DoubleIntegral => {
            let inner = inner_config(cfg);
            match spec.kind {
                TransformKind::Lmlm => lm_apply(spec.b(), |w| lm_apply(a, &f, w, &inner), z, cfg),
                TransformKind::Rllm => rl_apply(spec.b(), spec.g(), |w| lm_apply(a, &f, w, &inner), z, cfg),
                TransformKind::Rlrl => rl_apply(spec.g(), spec.d(), |w| rl_apply(a, spec.b(), &f, w, &inner), z, cfg),
                _ => Err(Error::DomainError("iterated_apply needs an iterated kind".into())),
            }
        }
        IteratedMode::Kernel => match spec.kind {
            TransformKind::Lmlm => {
                let b = spec.b();
                let left = a.re.min(b.re) - 1.0 - if (a - b).norm() < 1e-12 { 0.05 } else { 0.0 };
                // e^{−2√τ} reaches e^{−60} near τ = 900
                let beh = EndpointBehavior::semi_infinite(left, 60.0 / 900.0);
                integrate_semiinfinite_try(|t| Ok(f(z * t)? * iterated_kernel(spec, t)?), &beh, cfg)
            }
            TransformKind::Rllm => {
                let left = a.re.min(spec.b().re) - 1.0;
                let beh = EndpointBehavior::semi_infinite(left.max(-0.95), 1.0);
                integrate_semiinfinite_try(|t| Ok(f(z * t)? * iterated_kernel(spec, t)?), &beh, cfg)
            }
            TransformKind::Rlrl => {
                let left = a.re.min(spec.g().re) - 1.0;
                let right = (spec.b() + spec.d()).re - 1.0;
                let beh = EndpointBehavior::finite(left.max(-0.95), right.max(-0.95));
                integrate_finite_try(
                    |t, tc| Ok(f(z * t)? * iterated_kernel_with_complement(spec, t, tc)?),
                    &beh,
                    cfg,
                )
            }
            _ => Err(Error::DomainError("iterated_apply needs an iterated kind".into())),
        },
    }
}

/// `(φ*)^{(m)}(s, a, λ) = (−1)^m φ*_{−m}(s, a, λ)` for every integer `m`.
pub(crate) fn zeta_derivative(m: i64, s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    let v = phi_star_aux(c64(-(m as f64), 0.0), s, prm)?;
    Ok(if m.rem_euclid(2) == 0 { v } else { -v })
}

fn zeta_integrand<'a>(spec: &'a TransformSpec, s: Complex64, prm: &'a LerchParams) -> impl Fn(Complex64) -> Result<Complex64> + 'a {
    move |w| zeta_derivative(spec.m, s + w, prm)
}

fn require_kind(spec: &TransformSpec, kinds: &[TransformKind], what: &str) -> Result<()> {
    spec.validate()?;
    if kinds.contains(&spec.kind) {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{what} does not accept {:?}", spec.kind)))
    }
}

/// `LM^α_{z;τ}(φ*)^{(m)}(s+τ, a, λ)` by quadrature, `|arg z| ≤ π/2 − margin`.
pub fn lm_transform(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    require_kind(spec, &[TransformKind::Lm], "lm_transform")?;
    prm.require_a_above_one("transforms")?;
    SectorSpec::new(FRAC_PI_2).check(z, "LM quadrature")?;
    lm_apply(spec.alpha, zeta_integrand(spec, s, prm), z, cfg)
}

/// `RL^{α,β}_{z;τ}(φ*)^{(m)}(s+τ, a, λ)` by quadrature, `|arg z| ≤ π/2 − margin`.
pub fn rl_transform(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    require_kind(spec, &[TransformKind::Rl], "rl_transform")?;
    prm.require_a_above_one("transforms")?;
    SectorSpec::new(FRAC_PI_2).check(z, "RL quadrature")?;
    rl_apply(spec.alpha, spec.b(), zeta_integrand(spec, s, prm), z, cfg)
}

/// The RL transform over `[0, 1]` without the sector check. The integral is
/// finite, so it already gives the continuation to every `z`.
pub fn rl_transform_continued(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    require_kind(spec, &[TransformKind::Rl], "rl_transform_continued")?;
    prm.require_a_above_one("transforms")?;
    rl_apply(spec.alpha, spec.b(), zeta_integrand(spec, s, prm), z, cfg)
}

/// Iterated transform of `(φ*)^{(m)}(s+τ, a, λ)` by quadrature,
/// `|arg z| ≤ π/2 − margin` in either mode.
pub fn iterated_transform(
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    cfg: &QuadratureConfig,
    mode: IteratedMode,
) -> Result<Complex64> {
    require_kind(
        spec,
        &[TransformKind::Lmlm, TransformKind::Rllm, TransformKind::Rlrl],
        "iterated_transform",
    )?;
    prm.require_a_above_one("transforms")?;
    SectorSpec::new(FRAC_PI_2).check(z, "iterated transform quadrature")?;
    iterated_apply(spec, zeta_integrand(spec, s, prm), z, cfg, mode)
}

/// Any of the five transforms by quadrature (kernel mode for iterates).
pub fn quadrature_transform(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    match spec.kind {
        TransformKind::Lm => lm_transform(spec, s, prm, z, cfg),
        TransformKind::Rl => rl_transform(spec, s, prm, z, cfg),
        _ => iterated_transform(spec, s, prm, z, cfg, IteratedMode::Kernel),
    }
}
