//! Truncated asymptotic expansions of the transforms of `(φ*)^{(m)}(s+τ)`.
//!
//! Small `z` (T1, T3, T5, T7, T9): with `c_n` the kind-specific coefficient,
//!
//! `(−1)^m Σ_{n<N} c_n φ*_{−n−m}(s, a, λ) zⁿ`,
//!
//! `c_n = (−1)ⁿ(α)_n/n!` times `1` (LM), `1/(α+β)_n` (RL), `(β)_n` (LMLM),
//! `(β)_n/(β+γ)_n` (RLLM) or `(γ)_n/((α+β)_n(γ+δ)_n)` (RLRL).
//!
//! Large `z` (T2, T4, T6, T8, T10): series in `z^{−α−n}` and, except for LM,
//! a second family in `z^{−β−n}` (`z^{−γ−n}` for RLRL). Each coefficient is
//! the residue of the Mellin-Barnes integrand at the corresponding pole.
//!
//! The RLRL second family is the residue series at `w = −γ−n`:
//! `(−1)^mΓ[α+β, α−γ, γ+δ; α, α+β−γ, δ] Σ_{n<N′} (γ)_n(1−α−β+γ)_n(1−δ)_n/((1−α+γ)_n n!) φ*_{γ+n−m} z^{−γ−n}`
//! with `N′ = N − ⌊ℜ(γ−α)⌋`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lerch::{phi_star_aux, LerchParams};
use crate::mellin_barnes::{rl_split_prefactors, rllm_split_prefactors};
use crate::numeric::{c64, check_finite, gamma_ratio, guarded_floor, rising_factorial};
use crate::transforms::{SectorSpec, TransformKind, TransformSpec};

/// Threshold for the excluded integer-difference cases.
pub const INTEGER_DIFFERENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::T5,
        Theorem::T6,
        Theorem::T7,
        Theorem::T8,
        Theorem::T9,
        Theorem::T10,
    ];

    pub fn kind(self) -> TransformKind {
        match self {
            Theorem::T1 | Theorem::T2 => TransformKind::Lm,
            Theorem::T3 | Theorem::T4 => TransformKind::Rl,
            Theorem::T5 | Theorem::T6 => TransformKind::Lmlm,
            Theorem::T7 | Theorem::T8 => TransformKind::Rllm,
            Theorem::T9 | Theorem::T10 => TransformKind::Rlrl,
        }
    }

    pub fn is_small_z(self) -> bool {
        matches!(self, Theorem::T1 | Theorem::T3 | Theorem::T5 | Theorem::T7 | Theorem::T9)
    }

    /// T4 and T8 come in two branches with separate truncations.
    pub fn is_split(self) -> bool {
        matches!(self, Theorem::T4 | Theorem::T8)
    }

    pub fn small_z(kind: TransformKind) -> Theorem {
        match kind {
            TransformKind::Lm => Theorem::T1,
            TransformKind::Rl => Theorem::T3,
            TransformKind::Lmlm => Theorem::T5,
            TransformKind::Rllm => Theorem::T7,
            TransformKind::Rlrl => Theorem::T9,
        }
    }

    pub fn large_z(kind: TransformKind) -> Theorem {
        match kind {
            TransformKind::Lm => Theorem::T2,
            TransformKind::Rl => Theorem::T4,
            TransformKind::Lmlm => Theorem::T6,
            TransformKind::Rllm => Theorem::T8,
            TransformKind::Rlrl => Theorem::T10,
        }
    }

    /// `|arg z|` bound of the certified estimate.
    pub fn sector(self) -> f64 {
        match self {
            Theorem::T3 | Theorem::T9 | Theorem::T10 => PI / 2.0,
            Theorem::T5 => 1.5 * PI,
            _ => PI,
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::DomainError(format!("unknown theorem {s}")))
    }
}

/// Vertical-line corollaries of T2, T4, T6 and T8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Corollary {
    C21,
    C41,
    C61,
    C81,
}

impl Corollary {
    pub const ALL: [Corollary; 4] = [Corollary::C21, Corollary::C41, Corollary::C61, Corollary::C81];

    pub fn kind(self) -> TransformKind {
        match self {
            Corollary::C21 => TransformKind::Lm,
            Corollary::C41 => TransformKind::Rl,
            Corollary::C61 => TransformKind::Lmlm,
            Corollary::C81 => TransformKind::Rllm,
        }
    }

    pub fn for_kind(kind: TransformKind) -> Result<Corollary> {
        match kind {
            TransformKind::Lm => Ok(Corollary::C21),
            TransformKind::Rl => Ok(Corollary::C41),
            TransformKind::Lmlm => Ok(Corollary::C61),
            TransformKind::Rllm => Ok(Corollary::C81),
            TransformKind::Rlrl => Err(Error::DomainError(
                "RLRL has no vertical-line expansion: vertical lines leave its sector".into(),
            )),
        }
    }
}

/// Truncation orders: `n` for single-series theorems (T6/T10 derive the
/// second length from it), `n1`, `n2` for the branches of T4 and T8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
}

impl TruncationSpec {
    pub fn single(n: usize) -> Self {
        Self { n, n1: 0, n2: 0 }
    }

    pub fn split(n1: usize, n2: usize) -> Self {
        Self { n: 0, n1, n2 }
    }
}

/// `N′ = max(0, N − ⌊ℜ(β−α)⌋)` for T6 and `max(0, N − ⌊ℜ(γ−α)⌋)` for T10.
pub fn secondary_count(theorem: Theorem, spec: &TransformSpec, n: usize) -> Result<usize> {
    let other = match theorem {
        Theorem::T6 => spec.b(),
        Theorem::T10 => spec.g(),
        _ => return Err(Error::DomainError(format!("{theorem} has no secondary series"))),
    };
    let shift = guarded_floor((other - spec.alpha).re);
    Ok((n as i64 - shift).max(0) as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    /// 1 or 2; small-z expansions only use 1.
    pub branch: u8,
    pub index: usize,
    pub coefficient: Complex64,
    pub aux_order: Complex64,
    pub aux_value: Complex64,
    pub z_power: Complex64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub theorem: Theorem,
    pub partial_sum: Complex64,
    pub terms: Vec<ExpansionTerm>,
    /// Exponent of `|z|` in the remainder bound (dominant branch).
    pub predicted_remainder_order: f64,
    /// `max(0, ⌊2−σ⌋)`, never folded into the order.
    pub t_growth_exponent: f64,
    /// T4/T8 second-branch exponent of `|z|`.
    pub second_branch_order: Option<f64>,
    /// T4 second-branch growth exponent, `max(0, ⌊2−σ−x⌋)`.
    pub second_t_growth_exponent: Option<f64>,
}

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn t_growth(sigma: f64) -> f64 {
    (2.0 - sigma).floor().max(0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn poch(x: Complex64, n: usize) -> Result<Complex64> {
    rising_factorial(x, n as i64)
}

/// One series `pref · Σ_{n<len} coef(n) φ*_{lead+n−m}(s′) B^{−lead−n}`, where
/// `B = exp(log_base)`.
struct Series<'a> {
    branch: u8,
    len: usize,
    prefactor: Complex64,
    lead: Complex64,
    s: Complex64,
    log_base: Complex64,
    coef: &'a dyn Fn(usize) -> Result<Complex64>,
}

fn push_series(out: &mut Vec<ExpansionTerm>, ser: Series<'_>, m: i64, prm: &LerchParams) -> Result<()> {
    for n in 0..ser.len {
        let coefficient = ser.prefactor * (ser.coef)(n)?;
        let order = ser.lead + n as f64 - m as f64;
        let aux_value = phi_star_aux(order, ser.s, prm)?;
        let z_power = ((-ser.lead - n as f64) * ser.log_base).exp();
        out.push(ExpansionTerm {
            branch: ser.branch,
            index: n,
            coefficient,
            aux_order: order,
            aux_value,
            z_power,
            value: check_finite(coefficient * aux_value * z_power, "expansion term")?,
        });
    }
    Ok(())
}

fn finish(
    theorem: Theorem,
    terms: Vec<ExpansionTerm>,
    order: f64,
    s: Complex64,
    second: Option<(f64, Option<f64>)>,
) -> ExpansionResult {
    // ascending n within branch 1, then branch 2
    let partial_sum = terms.iter().fold(c64(0.0, 0.0), |acc, t| acc + t.value);
    ExpansionResult {
        theorem,
        partial_sum,
        terms,
        predicted_remainder_order: order,
        t_growth_exponent: t_growth(s.re),
        second_branch_order: second.map(|p| p.0),
        second_t_growth_exponent: second.and_then(|p| p.1),
    }
}

fn check_inputs(spec: &TransformSpec, s: Complex64, prm: &LerchParams, z: Complex64) -> Result<()> {
    spec.validate()?;
    prm.require_a_above_one("asymptotic expansions")?;
    check_finite(s, "s")?;
    check_finite(z, "z")?;
    Ok(())
}

/// Expansion as `z → 0`.
pub fn expand_small_z(
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    trunc: &TruncationSpec,
) -> Result<ExpansionResult> {
    check_inputs(spec, s, prm, z)?;
    let theorem = Theorem::small_z(spec.kind);
    SectorSpec::new(theorem.sector()).check(z, &format!("{theorem} expansion"))?;
    let a = spec.alpha;
    let extra = |n: usize| -> Result<Complex64> {
        Ok(match spec.kind {
            TransformKind::Lm => c64(1.0, 0.0),
            TransformKind::Rl => poch(a + spec.b(), n)?.inv(),
            TransformKind::Lmlm => poch(spec.b(), n)?,
            TransformKind::Rllm => poch(spec.b(), n)? / poch(spec.b() + spec.g(), n)?,
            TransformKind::Rlrl => {
                poch(spec.g(), n)? / (poch(a + spec.b(), n)? * poch(spec.g() + spec.d(), n)?)
            }
        })
    };
    let mut terms = Vec::with_capacity(trunc.n);
    let sm = sign(spec.m);
    for n in 0..trunc.n {
        let coefficient = sm * sign(n as i64) * poch(a, n)? / factorial(n) * extra(n)?;
        let order = c64(-(n as f64) - spec.m as f64, 0.0);
        let aux_value = phi_star_aux(order, s, prm)?;
        let z_power = if n == 0 { c64(1.0, 0.0) } else { z.powi(n as i32) };
        terms.push(ExpansionTerm {
            branch: 1,
            index: n,
            coefficient,
            aux_order: order,
            aux_value,
            z_power,
            value: check_finite(coefficient * aux_value * z_power, "expansion term")?,
        });
    }
    Ok(finish(theorem, terms, trunc.n as f64, s, None))
}

fn require_noninteger(x: Complex64, what: &str) -> Result<()> {
    if (x.re - x.re.round()).abs() < INTEGER_DIFFERENCE_TOL && x.im.abs() < INTEGER_DIFFERENCE_TOL {
        return Err(Error::ExcludedParameterCase(format!("{what} is an integer")));
    }
    Ok(())
}

fn require_at_least(n: usize, bound: f64, what: &str) -> Result<()> {
    let floor = guarded_floor(bound);
    if (n as i64) < floor {
        return Err(Error::DomainError(format!("{what} must be at least {floor}")));
    }
    Ok(())
}

/// Expansion as `z → ∞`.
pub fn expand_large_z(
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    trunc: &TruncationSpec,
) -> Result<ExpansionResult> {
    check_inputs(spec, s, prm, z)?;
    let theorem = Theorem::large_z(spec.kind);
    if z == c64(0.0, 0.0) {
        return Err(Error::DomainError("large-z expansions need z != 0".into()));
    }
    SectorSpec::new(theorem.sector()).check(z, &format!("{theorem} expansion"))?;
    let (a, m) = (spec.alpha, spec.m);
    let sm = c64(sign(m), 0.0);
    let log_z = z.ln();
    let mut terms = Vec::new();
    let order_a = -a.re - trunc.n as f64;
    match spec.kind {
        TransformKind::Lm => {
            let coef = |n: usize| Ok(sign(n as i64) * poch(a, n)? / factorial(n));
            push_series(
                &mut terms,
                Series { branch: 1, len: trunc.n, prefactor: sm, lead: a, s, log_base: log_z, coef: &coef },
                m,
                prm,
            )?;
            Ok(finish(theorem, terms, order_a, s, None))
        }
        TransformKind::Rl => {
            if z.arg().abs() < crate::transforms::SECTOR_MARGIN {
                return Err(Error::SectorViolation {
                    arg: z.arg().abs(),
                    bound: crate::transforms::SECTOR_MARGIN,
                    rel: ">=",
                    context: "T4 expansion".into(),
                });
            }
            let b = spec.b();
            require_at_least(trunc.n1, b.re, "N1")?;
            require_at_least(trunc.n2, a.re, "N2")?;
            let pf = rl_split_prefactors(spec, z)?;
            let eps = crate::numeric::arg_sign(z);
            let rotated = c64(z.norm().ln(), z.arg() - eps * PI);
            let c1 = |n: usize| Ok(sign(n as i64) * poch(a, n)? * poch(1.0 - b, n)? / factorial(n));
            let c2 = |n: usize| Ok(sign(n as i64) * poch(b, n)? * poch(1.0 - a, n)? / factorial(n));
            push_series(
                &mut terms,
                Series { branch: 1, len: trunc.n1, prefactor: pf[0], lead: a, s, log_base: rotated, coef: &c1 },
                m,
                prm,
            )?;
            push_series(
                &mut terms,
                Series { branch: 2, len: trunc.n2, prefactor: pf[1], lead: b, s: s + z, log_base: log_z, coef: &c2 },
                m,
                prm,
            )?;
            let second = (-b.re - trunc.n2 as f64, Some(t_growth(s.re + z.re)));
            Ok(finish(theorem, terms, -a.re - trunc.n1 as f64, s, Some(second)))
        }
        TransformKind::Lmlm => {
            let b = spec.b();
            require_noninteger(a - b, "alpha - beta")?;
            let n2 = secondary_count(theorem, spec, trunc.n)?;
            let p1 = sm * gamma_ratio(&[b - a], &[b])?;
            let p2 = sm * gamma_ratio(&[a - b], &[a])?;
            let c1 = |n: usize| Ok(poch(a, n)? / (poch(1.0 + a - b, n)? * factorial(n)));
            let c2 = |n: usize| Ok(poch(b, n)? / (poch(1.0 - a + b, n)? * factorial(n)));
            push_series(
                &mut terms,
                Series { branch: 1, len: trunc.n, prefactor: p1, lead: a, s, log_base: log_z, coef: &c1 },
                m,
                prm,
            )?;
            push_series(
                &mut terms,
                Series { branch: 2, len: n2, prefactor: p2, lead: b, s, log_base: log_z, coef: &c2 },
                m,
                prm,
            )?;
            Ok(finish(theorem, terms, order_a, s, None))
        }
        TransformKind::Rllm => {
            let (b, g) = (spec.b(), spec.g());
            require_at_least(trunc.n1, (b + g - a).re, "N1")?;
            require_at_least(trunc.n2, g.re, "N2")?;
            let pf = rllm_split_prefactors(spec)?;
            let c1 = |n: usize| {
                Ok(sign(n as i64) * poch(a, n)? * poch(1.0 - b - g + a, n)? / (poch(1.0 - b + a, n)? * factorial(n)))
            };
            let c2 = |n: usize| Ok(sign(n as i64) * poch(b, n)? * poch(1.0 - g, n)? / (poch(1.0 - a + b, n)? * factorial(n)));
            push_series(
                &mut terms,
                Series { branch: 1, len: trunc.n1, prefactor: pf[0], lead: a, s, log_base: log_z, coef: &c1 },
                m,
                prm,
            )?;
            push_series(
                &mut terms,
                Series { branch: 2, len: trunc.n2, prefactor: pf[1], lead: b, s, log_base: log_z, coef: &c2 },
                m,
                prm,
            )?;
            let first = -a.re - trunc.n1 as f64;
            let second = -b.re - trunc.n2 as f64;
            Ok(finish(theorem, terms, first.max(second), s, Some((second, None))))
        }
        TransformKind::Rlrl => {
            let (b, g, d) = (spec.b(), spec.g(), spec.d());
            require_noninteger(a - g, "alpha - gamma")?;
            let n2 = secondary_count(theorem, spec, trunc.n)?;
            let p1 = sm * gamma_ratio(&[a + b, g - a, g + d], &[b, g, g + d - a])?;
            let p2 = sm * gamma_ratio(&[a + b, a - g, g + d], &[a, a + b - g, d])?;
            let c1 = |n: usize| {
                Ok(poch(a, n)? * poch(1.0 - b, n)? * poch(1.0 + a - g - d, n)? / (poch(1.0 + a - g, n)? * factorial(n)))
            };
            let c2 = |n: usize| {
                Ok(poch(g, n)? * poch(1.0 - a - b + g, n)? * poch(1.0 - d, n)? / (poch(1.0 - a + g, n)? * factorial(n)))
            };
            push_series(
                &mut terms,
                Series { branch: 1, len: trunc.n, prefactor: p1, lead: a, s, log_base: log_z, coef: &c1 },
                m,
                prm,
            )?;
            push_series(
                &mut terms,
                Series { branch: 2, len: n2, prefactor: p2, lead: g, s, log_base: log_z, coef: &c2 },
                m,
                prm,
            )?;
            Ok(finish(theorem, terms, order_a, s, None))
        }
    }
}

/// Dispatch on the theorem.
pub fn expand(
    theorem: Theorem,
    spec: &TransformSpec,
    s: Complex64,
    prm: &LerchParams,
    z: Complex64,
    trunc: &TruncationSpec,
) -> Result<ExpansionResult> {
    if spec.kind != theorem.kind() {
        return Err(Error::DomainError(format!("{theorem} is about {:?}", theorem.kind())));
    }
    if theorem.is_small_z() {
        expand_small_z(spec, s, prm, z, trunc)
    } else {
        expand_large_z(spec, s, prm, z, trunc)
    }
}

/// Expansion along the vertical line `(s, z) = (σ, it)`.
pub fn expand_vertical(
    spec: &TransformSpec,
    sigma: f64,
    prm: &LerchParams,
    t: f64,
    trunc: &TruncationSpec,
) -> Result<ExpansionResult> {
    Corollary::for_kind(spec.kind)?;
    if t == 0.0 || !t.is_finite() {
        return Err(Error::DomainError("t must be finite and nonzero".into()));
    }
    expand_large_z(spec, c64(sigma, 0.0), prm, c64(0.0, t), trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prm() -> LerchParams {
        LerchParams::new(2.0, 0.3).unwrap()
    }

    #[test]
    fn empty_truncation() {
        let spec = TransformSpec::lm(c64(1.5, 0.0), 0);
        let r = expand_small_z(&spec, c64(2.0, 0.0), &prm(), c64(0.1, 0.0), &TruncationSpec::single(0)).unwrap();
        assert_eq!(r.partial_sum, c64(0.0, 0.0));
        assert!(r.terms.is_empty());
    }

    #[test]
    fn first_term_is_the_derivative() {
        let s = c64(2.0, 1.0);
        let specs = [
            TransformSpec::lm(c64(1.5, 0.0), 1),
            TransformSpec::rl(c64(1.5, 0.0), c64(0.7, 0.0), 1),
            TransformSpec::lmlm(c64(1.5, 0.0), c64(0.7, 0.0), 1),
            TransformSpec::rllm(c64(1.5, 0.0), c64(0.7, 0.0), c64(1.1, 0.0), 1),
            TransformSpec::rlrl(c64(1.5, 0.0), c64(0.7, 0.0), c64(1.1, 0.0), c64(0.4, 0.0), 1),
        ];
        let expect = -phi_star_aux(c64(-1.0, 0.0), s, &prm()).unwrap();
        for spec in specs {
            let r = expand_small_z(&spec, s, &prm(), c64(0.1, 0.1), &TruncationSpec::single(1)).unwrap();
            assert!((r.partial_sum - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn t2_leading_term() {
        let spec = TransformSpec::lm(c64(1.5, 0.2), 2);
        let (s, z) = (c64(2.0, 3.0), c64(10.0, 5.0));
        let r = expand_large_z(&spec, s, &prm(), z, &TruncationSpec::single(1)).unwrap();
        let expect = phi_star_aux(spec.alpha - 2.0, s, &prm()).unwrap() * (-spec.alpha * z.ln()).exp();
        assert!((r.partial_sum - expect).norm() < 1e-14 * expect.norm());
        assert!((r.predicted_remainder_order + 2.5).abs() < 1e-15);
    }

    #[test]
    fn t4_prefactor() {
        let (a, b) = (c64(1.2, 0.0), c64(0.8, 0.0));
        let spec = TransformSpec::rl(a, b, 0);
        let s = c64(2.0, 0.0);
        let z = Complex64::from_polar(30.0, 2.0 * PI / 3.0);
        let r = expand_large_z(&spec, s, &prm(), z, &TruncationSpec::split(1, 1)).unwrap();
        let first = r.terms.iter().find(|t| t.branch == 1).unwrap();
        let rotated = Complex64::from_polar(30.0, 2.0 * PI / 3.0 - PI);
        let expect = gamma_ratio(&[a + b], &[b]).unwrap()
            * (c64(0.0, -PI) * a).exp()
            * phi_star_aux(a, s, &prm()).unwrap()
            * (-a * rotated.ln()).exp();
        assert!((first.value - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn secondary_lengths() {
        let spec = TransformSpec::lmlm(c64(1.2, 0.0), c64(0.9, 0.0), 0);
        assert_eq!(secondary_count(Theorem::T6, &spec, 3).unwrap(), 4);
        let spec = TransformSpec::lmlm(c64(0.9, 0.0), c64(2.2, 0.0), 0);
        assert_eq!(secondary_count(Theorem::T6, &spec, 3).unwrap(), 2);
        let spec = TransformSpec::lmlm(c64(1.2, 0.0), c64(1.2, 0.0), 0);
        assert!(matches!(
            expand_large_z(&spec, c64(2.0, 0.0), &prm(), c64(40.0, 0.0), &TruncationSpec::single(1)),
            Err(Error::ExcludedParameterCase(_))
        ));
    }

    #[test]
    fn theorem_names() {
        assert_eq!("t10".parse::<Theorem>().unwrap(), Theorem::T10);
        assert_eq!(Theorem::T7.kind(), TransformKind::Rllm);
        assert!(Corollary::for_kind(TransformKind::Rlrl).is_err());
    }
}
