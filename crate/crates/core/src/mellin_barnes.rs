//! Mellin-Barnes representations of the five transforms of `(φ*)^{(m)}`.
//!
//! Every transform of `(φ*)^{(m)}(s+τ)` is obtained from the transform of
//! `e^{−cτ}`: if `T e^{−cτ} = (1/2πi)∫ Q(w)(cz)^w dw` then
//!
//! `T(φ*)^{(m)}(s+τ) = ((−1)^m/2πi) ∫_{(u₀)} Q(w) φ*_{−w−m}(s, a, λ) z^w dw`
//!
//! with
//!
//! | kind | `Q(w)` | `|arg z| <` |
//! |------|--------|-------------|
//! | LM   | `Γ[α+w, −w; α]` | `π` |
//! | RL   | `Γ[α+w, α+β, −w; α, α+β+w]` | `π/2` |
//! | LMLM | `Γ[α+w, β+w, −w; α, β]` | `3π/2` |
//! | RLLM | `Γ[α+w, β+w, β+γ, −w; α, β, β+γ+w]` | `π` |
//! | RLRL | `Γ[α+w, γ+w, α+β, γ+δ, −w; α, γ, α+β+w, γ+δ+w]` | `π/2` |
//!
//! RL and RLLM also have split forms built on the connection formulas for
//! `₁F₁` and `₂F₁`; the RL one reaches `0 < |arg z| < π`.
//!
//! Remainders are the same integrals on lines shifted across the poles
//! whose residues make up the asymptotic series. The shifted line is always
//! straight: its abscissa is picked inside the window cut out by the pole
//! families, and an empty window is reported instead of indenting.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{secondary_count, Theorem, TruncationSpec};
use crate::error::{Error, Result};
use crate::lerch::{phi_star_aux, LerchParams};
use crate::numeric::{
    arg_sign, c64, check_finite, choose_abscissa, gamma_ratio, integrate_contour, ContourSpec, GammaFactor,
    GammaQuotient, QuadratureConfig,
};
use crate::transforms::{zeta_derivative, TransformKind, TransformSpec};

/// Smallest accepted exponential decay rate of an integrand along its line.
pub const MIN_DECAY: f64 = 0.05;

/// Which remainder integral of a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Single,
    First,
    Second,
}

/// `prefactor · Q(w) · φ*_{r₀+r₁w}(s) · exp((p₀+p₁w) log_base)`, or without
/// the `φ*` factor when `aux` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct MbIntegrand {
    pub quotient: GammaQuotient,
    pub prefactor: Complex64,
    pub aux: Option<AuxFactor>,
    pub log_base: Complex64,
    pub power: (Complex64, f64),
}

/// `φ*_{order.0 + order.1·w}(s, a, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxFactor {
    pub order: (Complex64, f64),
    pub s: Complex64,
}

impl MbIntegrand {
    pub fn eval(&self, w: Complex64, prm: &LerchParams) -> Result<Complex64> {
        let qp = self.quotient.eval_power(w, (self.power.0 + w * self.power.1) * self.log_base)?;
        let aux = match &self.aux {
            Some(f) => phi_star_aux(f.order.0 + w * f.order.1, f.s, prm)?,
            None => c64(1.0, 0.0),
        };
        Ok(self.prefactor * qp * aux)
    }

    /// Rate `d` in the envelope `e^{−d|v|}` along `ℜw = u`.
    pub fn decay_rate(&self) -> f64 {
        self.quotient.decay_rate() - self.power.1.abs() * self.log_base.im.abs()
    }

    /// Exponent of the algebraic factor of the envelope; the `φ*_r` factor
    /// contributes `max(0, ⌊2 − σ⌋)`.
    pub fn poly_degree(&self, u: f64) -> f64 {
        let aux = self.aux.map_or(0.0, |f| (2.0 - f.s.re).floor().max(0.0));
        self.quotient.poly_degree(u) + aux
    }

    /// Open window of abscissae for which exactly `crossed[i]` poles of the
    /// `i`-th `w`-dependent numerator factor have been passed over. A left
    /// family `Γ(b+w)` with `k` poles passed needs `−ℜb−k < u < −ℜb−k+1`
    /// (`u > −ℜb` when `k = 0`); right families `Γ(b−w)` mirror this.
    pub fn window(&self, crossed: &[usize]) -> (f64, f64) {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let families = self.quotient.numerator.iter().filter(|f| f.sign != 0);
        for (i, f) in families.enumerate() {
            let k = crossed.get(i).copied().unwrap_or(0) as f64;
            if f.sign > 0 {
                let first = -f.offset.re;
                if k == 0.0 {
                    lo = lo.max(first);
                } else {
                    lo = lo.max(first - k);
                    hi = hi.min(first - k + 1.0);
                }
            } else {
                let first = f.offset.re;
                if k == 0.0 {
                    hi = hi.min(first);
                } else {
                    lo = lo.max(first + k - 1.0);
                    hi = hi.min(first + k);
                }
            }
        }
        (lo, hi)
    }

    fn pole_real_parts(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.quotient.poles_between(lo, hi).into_iter().map(|(p, _)| p.re).collect()
    }

    fn check_decay(&self, z: Complex64, sector: f64, context: &str) -> Result<f64> {
        let d = self.decay_rate();
        if d < MIN_DECAY {
            return Err(Error::SectorViolation {
                arg: z.arg().abs(),
                bound: sector - MIN_DECAY,
                rel: "<",
                context: context.to_string(),
            });
        }
        Ok(d)
    }

    /// Straight line at `u`, which must lie in `window`.
    pub fn integrate_line(&self, u: f64, prm: &LerchParams, cfg: &QuadratureConfig) -> Result<Complex64> {
        let d = self.decay_rate();
        if d < MIN_DECAY {
            return Err(Error::DecayTooWeak(d));
        }
        let spec = ContourSpec::line(u, d, self.poly_degree(u));
        let g = |w: Complex64| self.eval(w, prm);
        check_finite(integrate_contour(&g, &spec, cfg)?, "Mellin-Barnes integral")
    }

    /// Line inside the window for `crossed`, or `EmptyWindow`.
    pub fn integrate_shifted(&self, crossed: &[usize], prm: &LerchParams, cfg: &QuadratureConfig, what: &str) -> Result<Complex64> {
        let (lo, hi) = self.window(crossed);
        let u = choose_abscissa(lo, hi, &[], what)?;
        self.integrate_line(u, prm, cfg)
    }

    /// The contour that keeps every left family on the left and every right
    /// family on the right: a straight line when such a line exists,
    /// otherwise one indented around the offending poles.
    pub fn integrate_separating(&self, prm: &LerchParams, cfg: &QuadratureConfig) -> Result<Complex64> {
        let (lo, hi) = self.window(&[]);
        if hi - lo > 1e-3 {
            return self.integrate_line(choose_abscissa(lo, hi, &[], "separating line")?, prm, cfg);
        }
        let d = self.decay_rate();
        if d < MIN_DECAY {
            return Err(Error::DecayTooWeak(d));
        }
        // the straight part sits midway between the extreme family heads,
        // as far as possible from any pole
        let mid = 0.5 * (lo + hi);
        let poles = self.pole_real_parts(mid - 2.0, mid + 2.0);
        let u = choose_abscissa(mid - 0.5, mid + 0.5, &poles, "indented contour")?;
        let spec = ContourSpec::separating(&self.quotient, u, d, self.poly_degree(u))?;
        let g = |w: Complex64| self.eval(w, prm);
        check_finite(integrate_contour(&g, &spec, cfg)?, "Mellin-Barnes integral")
    }
}

fn one() -> Complex64 {
    c64(1.0, 0.0)
}

fn sign_m(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Q(w)` of the table in the module docs.
pub fn base_quotient(spec: &TransformSpec) -> Result<GammaQuotient> {
    spec.validate()?;
    let (a, zero) = (spec.alpha, c64(0.0, 0.0));
    use GammaFactor as F;
    Ok(match spec.kind {
        TransformKind::Lm => GammaQuotient::new(vec![F::plus(a), F::minus(zero)], vec![F::constant(a)]),
        TransformKind::Rl => {
            let b = spec.b();
            GammaQuotient::new(
                vec![F::plus(a), F::constant(a + b), F::minus(zero)],
                vec![F::constant(a), F::plus(a + b)],
            )
        }
        TransformKind::Lmlm => {
            let b = spec.b();
            GammaQuotient::new(
                vec![F::plus(a), F::plus(b), F::minus(zero)],
                vec![F::constant(a), F::constant(b)],
            )
        }
        TransformKind::Rllm => {
            let (b, g) = (spec.b(), spec.g());
            GammaQuotient::new(
                vec![F::plus(a), F::plus(b), F::constant(b + g), F::minus(zero)],
                vec![F::constant(a), F::constant(b), F::plus(b + g)],
            )
        }
        TransformKind::Rlrl => {
            let (b, g, d) = (spec.b(), spec.g(), spec.d());
            GammaQuotient::new(
                vec![F::plus(a), F::plus(g), F::constant(a + b), F::constant(g + d), F::minus(zero)],
                vec![F::constant(a), F::constant(g), F::plus(a + b), F::plus(g + d)],
            )
        }
    })
}

/// Sector half-width of the single-integral representation.
pub fn base_sector(kind: TransformKind) -> f64 {
    match kind {
        TransformKind::Lm | TransformKind::Rllm => PI,
        TransformKind::Rl | TransformKind::Rlrl => PI / 2.0,
        TransformKind::Lmlm => 1.5 * PI,
    }
}

/// `(−1)^m Q(w) φ*_{−w−m}(s) z^w`.
pub fn base_integrand(spec: &TransformSpec, s: Complex64, z: Complex64) -> Result<MbIntegrand> {
    Ok(MbIntegrand {
        quotient: base_quotient(spec)?,
        prefactor: c64(sign_m(spec.m), 0.0),
        aux: Some(AuxFactor {
            order: (c64(-(spec.m as f64), 0.0), -1.0),
            s,
        }),
        log_base: z.ln(),
        power: (c64(0.0, 0.0), 1.0),
    })
}

fn require_split_sector(z: Complex64, context: &str) -> Result<f64> {
    check_finite(z, "z")?;
    let eps = arg_sign(z);
    if eps == 0.0 || z.arg().abs() >= PI {
        return Err(Error::SectorViolation {
            arg: z.arg().abs(),
            bound: 0.0,
            rel: "0 < |arg z| < pi, got",
            context: context.to_string(),
        });
    }
    Ok(eps)
}

/// The pair `(I₁, I₂)` of the RL split form, without prefactors:
///
/// * `I₁ = (1/2πi)∫ Γ[α+w, −w, 1−α−β−w; α, 1−β] φ*_{−w−m}(s) (e^{−ε(z)πi}z)^w dw`
/// * `I₂ = (1/2πi)∫ Γ[β+w, −w, 1−α−β−w; β, 1−α] φ*_{−w−m}(s+z) z^w dw`
pub fn rl_split_integrands(spec: &TransformSpec, s: Complex64, z: Complex64) -> Result<[MbIntegrand; 2]> {
    require_kind(spec, TransformKind::Rl)?;
    let eps = require_split_sector(z, "RL split form")?;
    let (a, b) = (spec.alpha, spec.b());
    let zero = c64(0.0, 0.0);
    let order = (c64(-(spec.m as f64), 0.0), -1.0);
    use GammaFactor as F;
    let rotated = c64(z.norm().ln(), z.arg() - eps * PI);
    let first = MbIntegrand {
        quotient: GammaQuotient::new(
            vec![F::plus(a), F::minus(zero), F::minus(one() - a - b)],
            vec![F::constant(a), F::constant(one() - b)],
        ),
        prefactor: one(),
        aux: Some(AuxFactor { order, s }),
        log_base: rotated,
        power: (zero, 1.0),
    };
    let second = MbIntegrand {
        quotient: GammaQuotient::new(
            vec![F::plus(b), F::minus(zero), F::minus(one() - a - b)],
            vec![F::constant(b), F::constant(one() - a)],
        ),
        prefactor: one(),
        aux: Some(AuxFactor { order, s: s + z }),
        log_base: z.ln(),
        power: (zero, 1.0),
    };
    Ok([first, second])
}

/// `(−1)^mΓ[α+β; β]e^{−ε(z)πiα}` and `(−1)^mΓ[α+β; α]e^{ε(z)πiβ}`.
pub fn rl_split_prefactors(spec: &TransformSpec, z: Complex64) -> Result<[Complex64; 2]> {
    let eps = require_split_sector(z, "RL split form")?;
    let (a, b) = (spec.alpha, spec.b());
    let sm = sign_m(spec.m);
    let i_pi = c64(0.0, PI);
    Ok([
        gamma_ratio(&[a + b], &[b])? * (-i_pi * eps * a).exp() * sm,
        gamma_ratio(&[a + b], &[a])? * (i_pi * eps * b).exp() * sm,
    ])
}

fn require_noninteger_difference(x: Complex64, what: &str) -> Result<()> {
    if (x.re - x.re.round()).abs() < 1e-9 && x.im.abs() < 1e-9 {
        return Err(Error::ExcludedParameterCase(format!("{what} is an integer")));
    }
    Ok(())
}

/// The pair `(J₁, J₂)` of the RLLM split form, without prefactors:
///
/// * `J₁ = (1/2πi)∫ Γ[α+w, 1−β−γ+α+w, 1−β+α, −w; α, 1−β−γ+α, 1−β+α+w] φ*_{α+w−m}(s) z^{−α−w} dw`
/// * `J₂ = (1/2πi)∫ Γ[β+w, 1−γ+w, 1−α+β, −w; β, 1−γ, 1−α+β+w] φ*_{β+w−m}(s) z^{−β−w} dw`
pub fn rllm_split_integrands(spec: &TransformSpec, s: Complex64, z: Complex64) -> Result<[MbIntegrand; 2]> {
    require_kind(spec, TransformKind::Rllm)?;
    check_finite(z, "z")?;
    if z == c64(0.0, 0.0) {
        return Err(Error::DomainError("the RLLM split form needs z != 0".into()));
    }
    let (a, b, g) = (spec.alpha, spec.b(), spec.g());
    require_noninteger_difference(a - b, "alpha - beta")?;
    let mf = c64(spec.m as f64, 0.0);
    let zero = c64(0.0, 0.0);
    use GammaFactor as F;
    let build = |lead: Complex64, second: Complex64, shift: Complex64, dens: [Complex64; 2]| MbIntegrand {
        quotient: GammaQuotient::new(
            vec![F::plus(lead), F::plus(second), F::constant(shift), F::minus(zero)],
            vec![F::constant(dens[0]), F::constant(dens[1]), F::plus(shift)],
        ),
        prefactor: one(),
        aux: Some(AuxFactor { order: (lead - mf, 1.0), s }),
        log_base: z.ln(),
        power: (-lead, -1.0),
    };
    Ok([
        build(a, one() - b - g + a, one() - b + a, [a, one() - b - g + a]),
        build(b, one() - g, one() - a + b, [b, one() - g]),
    ])
}

/// `(−1)^mΓ[β+γ, β−α; β, β+γ−α]` and `(−1)^mΓ[β+γ, α−β; α, γ]`.
pub fn rllm_split_prefactors(spec: &TransformSpec) -> Result<[Complex64; 2]> {
    let (a, b, g) = (spec.alpha, spec.b(), spec.g());
    require_noninteger_difference(a - b, "alpha - beta")?;
    let sm = sign_m(spec.m);
    Ok([
        gamma_ratio(&[b + g, b - a], &[b, b + g - a])? * sm,
        gamma_ratio(&[b + g, a - b], &[a, g])? * sm,
    ])
}

fn require_kind(spec: &TransformSpec, kind: TransformKind) -> Result<()> {
    spec.validate()?;
    if spec.kind != kind {
        return Err(Error::DomainError(format!("expected a {kind:?} spec, got {:?}", spec.kind)));
    }
    Ok(())
}

/// A point of the window where `|z|^u` is small: right of centre for
/// `|z| < 1`, left of centre for `|z| > 1`. The integral is `O(|z|^u)` on
/// the line but its value can be much smaller, so this limits cancellation.
fn conditioned_abscissa(window: (f64, f64), z: Complex64) -> Result<f64> {
    let mid = choose_abscissa(window.0, window.1, &[], "Mellin-Barnes line")?;
    let quarter = 0.25 * (window.1 - window.0);
    Ok(if z.norm() < 1.0 {
        mid + quarter
    } else if z.norm() > 1.0 {
        mid - quarter
    } else {
        mid
    })
}

fn check_abscissa(u: f64, window: (f64, f64)) -> Result<()> {
    if !(u > window.0 && u < window.1) {
        return Err(Error::DomainError(format!(
            "abscissa {u} outside the window ({}, {})",
            window.0, window.1
        )));
    }
    Ok(())
}

/// Single-integral representation of any transform of `(φ*)^{(m)}(s+τ)`.
///
/// `u = None` picks the middle of the window `max(−ℜ orders) < u < 0`.
pub fn mb_transform(
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    u: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    prm.require_a_above_one("Mellin-Barnes integrals")?;
    check_finite(s, "s")?;
    check_finite(z, "z")?;
    if z == c64(0.0, 0.0) {
        return zeta_derivative(spec.m, s, prm);
    }
    let g = base_integrand(spec, s, z)?;
    g.check_decay(z, base_sector(spec.kind), &format!("{:?} Mellin-Barnes", spec.kind))?;
    let window = g.window(&[]);
    let u = match u {
        Some(u) => {
            check_abscissa(u, window)?;
            u
        }
        None => conditioned_abscissa(window, z)?,
    };
    g.integrate_line(u, prm, cfg)
}

/// RL transform through the split form, `0 < |arg z| < π`.
pub fn mb_rl_split(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    prm.require_a_above_one("Mellin-Barnes integrals")?;
    let parts = rl_split_integrands(spec, s, z)?;
    let pf = rl_split_prefactors(spec, z)?;
    for p in &parts {
        p.check_decay(z, PI, "RL split form")?;
    }
    Ok(pf[0] * parts[0].integrate_separating(prm, cfg)? + pf[1] * parts[1].integrate_separating(prm, cfg)?)
}

/// RLLM transform through the split form, `|arg z| < π`, `α − β ∉ ℤ`.
pub fn mb_rllm_split(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    prm.require_a_above_one("Mellin-Barnes integrals")?;
    let parts = rllm_split_integrands(spec, s, z)?;
    let pf = rllm_split_prefactors(spec)?;
    for p in &parts {
        p.check_decay(z, PI, "RLLM split form")?;
    }
    Ok(pf[0] * parts[0].integrate_separating(prm, cfg)? + pf[1] * parts[1].integrate_separating(prm, cfg)?)
}

/// Best available Mellin-Barnes route: the single integral where its sector
/// admits `z`, otherwise the RL split form.
pub fn mb_transform_auto(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if spec.kind == TransformKind::Rl && z != c64(0.0, 0.0) && z.arg().abs() > PI / 2.0 - 0.3 {
        return mb_rl_split(spec, s, prm, z, cfg);
    }
    mb_transform(spec, s, prm, z, None, cfg)
}

/// Integrand and crossing counts of a theorem's remainder integral.
pub fn remainder_integrand(
    theorem: Theorem,
    branch: Branch,
    trunc: &TruncationSpec,
    spec: &TransformSpec,
    s: Complex64,
    z: Complex64,
) -> Result<(MbIntegrand, Vec<usize>)> {
    if spec.kind != theorem.kind() {
        return Err(Error::DomainError(format!(
            "{theorem:?} is about {:?}, got a {:?} spec",
            theorem.kind(),
            spec.kind
        )));
    }
    let split = theorem.is_split();
    match (split, branch) {
        (false, Branch::Single) | (true, Branch::First) | (true, Branch::Second) => {}
        _ => {
            return Err(Error::DomainError(format!("{theorem:?} has no {branch:?} remainder")));
        }
    }
    let n = trunc.n;
    Ok(match theorem {
        // poles of Γ(−w) at 0..N−1 passed to the right; Γ(−w) is the last family
        Theorem::T1 | Theorem::T3 | Theorem::T5 | Theorem::T7 | Theorem::T9 => {
            let g = base_integrand(spec, s, z)?;
            let families = g.quotient.numerator.iter().filter(|f| f.sign != 0).count();
            let mut crossed = vec![0; families];
            crossed[families - 1] = n;
            (g, crossed)
        }
        Theorem::T2 => (base_integrand(spec, s, z)?, vec![n, 0]),
        Theorem::T6 | Theorem::T10 => {
            let second = secondary_count(theorem, spec, n)?;
            (base_integrand(spec, s, z)?, vec![n, second, 0])
        }
        Theorem::T4 => {
            let [first, second] = rl_split_integrands(spec, s, z)?;
            match branch {
                Branch::First => (first, vec![trunc.n1, 0, 0]),
                _ => (second, vec![trunc.n2, 0, 0]),
            }
        }
        Theorem::T8 => {
            let [first, second] = rllm_split_integrands(spec, s, z)?;
            match branch {
                Branch::First => (first, vec![0, 0, trunc.n1]),
                _ => (second, vec![0, 0, trunc.n2]),
            }
        }
    })
}

/// The remainder `R` of a theorem on its shifted line, as defined next to
/// the theorem: for T4 and T8 the branch integrals carry no prefactor.
pub fn mb_remainder(
    theorem: Theorem,
    branch: Branch,
    trunc: &TruncationSpec,
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    prm.require_a_above_one("Mellin-Barnes integrals")?;
    check_finite(s, "s")?;
    check_finite(z, "z")?;
    if z == c64(0.0, 0.0) {
        return Err(Error::DomainError("remainder integrals need z != 0".into()));
    }
    let (g, crossed) = remainder_integrand(theorem, branch, trunc, spec, s, z)?;
    let sector = match theorem {
        Theorem::T4 | Theorem::T8 => PI,
        _ => base_sector(spec.kind),
    };
    g.check_decay(z, sector, &format!("{theorem:?} remainder"))?;
    g.integrate_shifted(&crossed, prm, cfg, &format!("{theorem:?} {branch:?} window"))
}

/// Everything the truncated expansion leaves out: the remainder itself, or
/// for T4 and T8 the prefactor-weighted sum of both branch remainders.
pub fn remainder_total(
    theorem: Theorem,
    trunc: &TruncationSpec,
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let pf = match theorem {
        Theorem::T4 => rl_split_prefactors(spec, z)?,
        Theorem::T8 => rllm_split_prefactors(spec)?,
        _ => return mb_remainder(theorem, Branch::Single, trunc, spec, s, prm, z, cfg),
    };
    let r1 = mb_remainder(theorem, Branch::First, trunc, spec, s, prm, z, cfg)?;
    let r2 = mb_remainder(theorem, Branch::Second, trunc, spec, s, prm, z, cfg)?;
    Ok(pf[0] * r1 + pf[1] * r2)
}

/// `(1/2πi)∫ Q(w)(cz)^w dw`: the iterated transform of `e^{−cτ}`.
pub fn mb_exponential_kernel(spec: &TransformSpec, c: f64, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !matches!(spec.kind, TransformKind::Lmlm | TransformKind::Rllm | TransformKind::Rlrl) {
        return Err(Error::DomainError("exponential kernels exist for the iterated kinds".into()));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::DomainError("c must be positive".into()));
    }
    check_finite(z, "z")?;
    if z == c64(0.0, 0.0) {
        return Ok(one());
    }
    let g = MbIntegrand {
        quotient: base_quotient(spec)?,
        prefactor: one(),
        aux: None,
        log_base: (z * c).ln(),
        power: (c64(0.0, 0.0), 1.0),
    };
    g.check_decay(z, base_sector(spec.kind), &format!("{:?} exponential kernel", spec.kind))?;
    // no φ* factor here, so the parameters are never read
    let prm = LerchParams::new(2.0, 0.0)?;
    let u = conditioned_abscissa(g.window(&[]), z * c)?;
    g.integrate_line(u, &prm, cfg)
}
