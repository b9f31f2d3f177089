//! Batch verification: evaluate a transform by several routes over a grid of
//! `z` (or `t` on a vertical line), compare the routes pairwise, fit the decay
//! order of the truncation error and write CSV/JSON reports.
//!
//! Reports are deterministic: grid points are evaluated in parallel but
//! assembled by index, and wall-clock timings live in a separate metadata
//! block that is not part of the data sections.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{expand, expand_vertical, Corollary, ExpansionResult, Theorem, TruncationSpec};
use crate::error::{Error, Result};
use crate::lerch::LerchParams;
use crate::mellin_barnes::{mb_transform_auto, remainder_total};
use crate::numeric::{c64, QuadratureConfig};
use crate::transforms::{quadrature_transform, rl_transform_continued, SectorSpec, TransformKind, TransformSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Quadrature tolerance used when a plan does not set one.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Relative errors at or below this are treated as rounding noise by the fit.
pub const ROUNDING_FLOOR: f64 = 1e-14;

/// Points whose arguments differ by less than this share a ray.
const RAY_TOL: f64 = 1e-9;

/// What a plan verifies: one of the ten theorems or a vertical-line corollary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Target {
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
    C21,
    C41,
    C61,
    C81,
}

impl Target {
    pub const ALL: [Target; 14] = [
        Target::T1,
        Target::T2,
        Target::T3,
        Target::T4,
        Target::T5,
        Target::T6,
        Target::T7,
        Target::T8,
        Target::T9,
        Target::T10,
        Target::C21,
        Target::C41,
        Target::C61,
        Target::C81,
    ];

    pub fn theorem(self) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.to_string() == self.to_string())
    }

    pub fn corollary(self) -> Option<Corollary> {
        match self {
            Target::C21 => Some(Corollary::C21),
            Target::C41 => Some(Corollary::C41),
            Target::C61 => Some(Corollary::C61),
            Target::C81 => Some(Corollary::C81),
            _ => None,
        }
    }

    pub fn is_vertical(self) -> bool {
        self.corollary().is_some()
    }

    pub fn kind(self) -> TransformKind {
        match (self.theorem(), self.corollary()) {
            (Some(t), _) => t.kind(),
            (_, Some(c)) => c.kind(),
            _ => unreachable!(),
        }
    }

    /// The theorem whose expansion and remainder the target uses.
    pub fn underlying(self) -> Theorem {
        self.theorem().unwrap_or_else(|| Theorem::large_z(self.kind()))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::PlanInvalid(format!("unknown theorem or corollary {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Direct quadrature (kernel mode for the iterated kinds).
    Quadrature,
    MellinBarnes,
    /// Truncated expansion alone.
    Expansion,
    /// Truncated expansion plus the Mellin-Barnes remainder integral.
    ExpansionPlusRemainder,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Route::Quadrature => "quadrature",
            Route::MellinBarnes => "mellin_barnes",
            Route::Expansion => "expansion",
            Route::ExpansionPlusRemainder => "expansion_plus_remainder",
        };
        f.write_str(name)
    }
}

/// Relative-error threshold for one pair of routes, checked at every point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub a: Route,
    pub b: Route,
    pub rel_tol: f64,
}

/// How the fitted error is scaled before taking logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    Absolute,
    /// Divide by the largest leading term over the expansion's branches.
    LeadingTerm,
}

/// Least-squares slope of `log error` against `log |z|` must land in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeCheck {
    pub a: Route,
    pub b: Route,
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub normalization: Normalization,
}

/// Vertical-line bound `rel_err ≤ factor · |t|^{next} / |leading term|`,
/// optionally with the error decreasing in `|t|` on each half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerticalCheck {
    pub a: Route,
    pub b: Route,
    pub factor: f64,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default)]
    pub pairs: Vec<PairCheck>,
    #[serde(default)]
    pub slope: Option<SlopeCheck>,
    #[serde(default)]
    pub vertical: Option<VerticalCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationPlan {
    pub theorem: Target,
    pub spec: TransformSpec,
    /// `s`, or `σ + 0i` for the vertical corollaries.
    pub s: Complex64,
    pub prm: LerchParams,
    #[serde(default)]
    pub z_grid: Vec<Complex64>,
    #[serde(default)]
    pub t_grid: Vec<f64>,
    pub trunc: TruncationSpec,
    pub routes: Vec<Route>,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

impl VerificationPlan {
    /// Grid points as `(z, t)`, with `z = it` on vertical lines.
    pub fn points(&self) -> Vec<(Complex64, Option<f64>)> {
        if self.theorem.is_vertical() {
            self.t_grid.iter().map(|&t| (c64(0.0, t), Some(t))).collect()
        } else {
            self.z_grid.iter().map(|&z| (z, None)).collect()
        }
    }

    /// Purely relative tolerance: some presets have values near `2^{-80}`.
    pub fn quadrature_config(&self) -> QuadratureConfig {
        QuadratureConfig::default()
            .with_rel_tol(self.rel_tol.unwrap_or(DEFAULT_REL_TOL))
            .with_abs_tol(1e-300)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::PlanInvalid(msg));
        self.spec.validate().map_err(|e| Error::PlanInvalid(e.to_string()))?;
        if self.spec.kind != self.theorem.kind() {
            return bad(format!("{} is about {:?}, spec is {:?}", self.theorem, self.theorem.kind(), self.spec.kind));
        }
        if self.routes.len() < 2 {
            return bad("at least two routes are required".into());
        }
        for (i, r) in self.routes.iter().enumerate() {
            if self.routes[..i].contains(r) {
                return bad(format!("route {r} listed twice"));
            }
        }
        let selected = |r: Route| self.routes.contains(&r);
        let mut used = self.tolerances.pairs.iter().map(|p| (p.a, p.b)).collect::<Vec<_>>();
        used.extend(self.tolerances.slope.iter().map(|c| (c.a, c.b)));
        used.extend(self.tolerances.vertical.iter().map(|c| (c.a, c.b)));
        for (a, b) in used {
            if !selected(a) || !selected(b) || a == b {
                return bad(format!("check on {a}/{b} needs two distinct selected routes"));
            }
        }
        if let Some(rt) = self.rel_tol {
            if !(rt > 0.0 && rt.is_finite()) {
                return bad(format!("rel_tol {rt} must be positive"));
            }
        }
        if self.theorem.is_vertical() {
            if self.t_grid.is_empty() {
                return bad("t_grid is empty".into());
            }
            if !self.z_grid.is_empty() {
                return bad("vertical corollaries take t_grid, not z_grid".into());
            }
            if self.s.im != 0.0 {
                return bad("vertical corollaries take a real sigma".into());
            }
            if self.t_grid.iter().any(|t| *t == 0.0 || !t.is_finite()) {
                return bad("t must be finite and nonzero".into());
            }
        } else {
            if self.z_grid.is_empty() {
                return bad("z_grid is empty".into());
            }
            if !self.t_grid.is_empty() {
                return bad("theorems take z_grid, not t_grid".into());
            }
            let th = self.theorem.underlying();
            let sector = SectorSpec::new(th.sector());
            for z in &self.z_grid {
                sector
                    .check(*z, &format!("{th} certified sector"))
                    .map_err(|e| Error::PlanInvalid(e.to_string()))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: Route,
    pub value: Option<Complex64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairError {
    pub a: Route,
    pub b: Route,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub index: usize,
    pub z: Complex64,
    pub t: Option<f64>,
    pub values: Vec<RouteValue>,
    /// Every pair of selected routes that both produced a value, in plan order.
    pub pairs: Vec<PairError>,
    pub term_magnitudes: Vec<f64>,
    pub predicted_order: Option<f64>,
    /// Error fed to the slope fit, after normalization.
    pub fit_error: Option<f64>,
    /// Vertical-line bound on the relative error.
    pub bound: Option<f64>,
    pub pass: bool,
}

impl VerificationRecord {
    /// A bare record carrying only an error, as used by the slope fit.
    pub fn from_error(index: usize, z: Complex64, abs_err: f64, rel_err: f64) -> Self {
        Self {
            index,
            z,
            t: None,
            values: Vec::new(),
            pairs: vec![PairError {
                a: Route::Quadrature,
                b: Route::Expansion,
                abs_err,
                rel_err,
            }],
            term_magnitudes: Vec::new(),
            predicted_order: None,
            fit_error: Some(abs_err),
            bound: None,
            pass: true,
        }
    }

    pub fn pair(&self, a: Route, b: Route) -> Option<&PairError> {
        self.pairs.iter().find(|p| (p.a, p.b) == (a, b) || (p.a, p.b) == (b, a))
    }

    fn abscissa(&self) -> f64 {
        self.t.map_or(self.z.norm(), f64::abs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteTiming {
    pub route: Route,
    pub seconds: f64,
}

/// Wall-clock data, kept apart from the deterministic sections.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunMetadata {
    pub route_seconds: Vec<RouteTiming>,
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub plan: VerificationPlan,
    pub records: Vec<VerificationRecord>,
    pub fit: Option<SlopeFit>,
    pub fit_error: Option<String>,
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
    #[serde(default)]
    pub metadata: RunMetadata,
}

impl VerificationReport {
    /// The report without its metadata block.
    pub fn data(&self) -> VerificationReport {
        VerificationReport {
            metadata: RunMetadata::default(),
            ..self.clone()
        }
    }

    /// Route pair shown in the CSV: the slope pair, else the vertical pair,
    /// else the first pair check, else the first two routes.
    pub fn primary_pair(&self) -> (Route, Route) {
        let t = &self.plan.tolerances;
        t.slope
            .map(|c| (c.a, c.b))
            .or(t.vertical.map(|c| (c.a, c.b)))
            .or(t.pairs.first().map(|c| (c.a, c.b)))
            .unwrap_or((self.plan.routes[0], self.plan.routes[1]))
    }
}

fn route_value(
    plan: &VerificationPlan,
    route: Route,
    z: Complex64,
    expansion: &Result<ExpansionResult>,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let (spec, s, prm) = (&plan.spec, plan.s, &plan.prm);
    match route {
        Route::Quadrature if spec.kind == TransformKind::Rl => rl_transform_continued(spec, s, prm, z, cfg),
        Route::Quadrature => quadrature_transform(spec, s, prm, z, cfg),
        Route::MellinBarnes => mb_transform_auto(spec, s, prm, z, cfg),
        Route::Expansion => expansion.clone().map(|e| e.partial_sum),
        Route::ExpansionPlusRemainder => {
            let e = expansion.clone()?;
            let r = remainder_total(plan.theorem.underlying(), &plan.trunc, spec, s, prm, z, cfg)?;
            Ok(e.partial_sum + r)
        }
    }
}

fn pair_error(a: Complex64, b: Complex64) -> (f64, f64) {
    let abs = (a - b).norm();
    (abs, abs / a.norm().max(b.norm()).max(1e-300))
}

fn leading_magnitude(e: &ExpansionResult) -> f64 {
    e.terms
        .iter()
        .filter(|t| t.index == 0)
        .map(|t| t.value.norm())
        .fold(0.0, f64::max)
}

fn next_order(e: &ExpansionResult) -> f64 {
    e.second_branch_order
        .map_or(e.predicted_remainder_order, |o| o.max(e.predicted_remainder_order))
}

fn evaluate_point(plan: &VerificationPlan, index: usize, z: Complex64, t: Option<f64>) -> (VerificationRecord, Vec<f64>) {
    let cfg = plan.quadrature_config();
    let expansion = match t {
        Some(t) => expand_vertical(&plan.spec, plan.s.re, &plan.prm, t, &plan.trunc),
        None => expand(plan.underlying_theorem(), &plan.spec, plan.s, &plan.prm, z, &plan.trunc),
    };
    let mut timings = Vec::with_capacity(plan.routes.len());
    let values: Vec<RouteValue> = plan
        .routes
        .iter()
        .map(|&route| {
            let start = Instant::now();
            let v = route_value(plan, route, z, &expansion, &cfg);
            timings.push(start.elapsed().as_secs_f64());
            match v {
                Ok(v) if v.re.is_finite() && v.im.is_finite() => RouteValue { route, value: Some(v), error: None },
                Ok(_) => RouteValue { route, value: None, error: Some("non-finite value".into()) },
                Err(e) => RouteValue { route, value: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            if let (Some(va), Some(vb)) = (a.value, b.value) {
                let (abs_err, rel_err) = pair_error(va, vb);
                pairs.push(PairError { a: a.route, b: b.route, abs_err, rel_err });
            }
        }
    }
    let mut record = VerificationRecord {
        index,
        z,
        t,
        values,
        pairs,
        term_magnitudes: Vec::new(),
        predicted_order: None,
        fit_error: None,
        bound: None,
        pass: true,
    };
    if let Ok(e) = &expansion {
        record.term_magnitudes = e.terms.iter().map(|t| t.value.norm()).collect();
        record.predicted_order = Some(next_order(e));
        let lead = leading_magnitude(e);
        if let (Some(c), Some(t)) = (plan.tolerances.vertical, t) {
            if lead > 0.0 {
                record.bound = Some(c.factor * t.abs().powf(next_order(e)) / lead);
            }
        }
        if let Some(c) = plan.tolerances.slope {
            record.fit_error = record.pair(c.a, c.b).map(|p| match c.normalization {
                Normalization::Absolute => p.abs_err,
                Normalization::LeadingTerm => p.abs_err / lead.max(1e-300),
            });
        }
    }
    record.pass = record_passes(plan, &record);
    (record, timings)
}

fn record_passes(plan: &VerificationPlan, r: &VerificationRecord) -> bool {
    if r.values.iter().any(|v| v.value.is_none()) {
        return false;
    }
    let pairs_ok = plan
        .tolerances
        .pairs
        .iter()
        .all(|c| r.pair(c.a, c.b).is_some_and(|p| p.rel_err <= c.rel_tol));
    let vertical_ok = plan.tolerances.vertical.map_or(true, |c| {
        match (r.pair(c.a, c.b), r.bound) {
            (Some(p), Some(bound)) => p.rel_err <= bound,
            _ => false,
        }
    });
    pairs_ok && vertical_ok
}

impl VerificationPlan {
    fn underlying_theorem(&self) -> Theorem {
        self.theorem.underlying()
    }
}

/// Least-squares slope of `log(fit_error)` against `log|z|` (or `log|t|`),
/// with half-width twice the standard error of the slope.
pub fn fit_remainder_order(records: &[VerificationRecord]) -> Result<SlopeFit> {
    let usable: Vec<&VerificationRecord> = records.iter().filter(|r| r.fit_error.is_some()).collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData);
    }
    let args: Vec<f64> = usable
        .iter()
        .map(|r| r.t.map_or(r.z.arg(), |t| if t > 0.0 { PI / 2.0 } else { -PI / 2.0 }))
        .collect();
    if args.iter().any(|a| (a - args[0]).abs() > RAY_TOL) {
        return Err(Error::PlanInvalid("slope fit needs points on one ray".into()));
    }
    let at_floor = |r: &VerificationRecord| {
        r.fit_error == Some(0.0) || r.pairs.first().is_some_and(|p| p.rel_err <= ROUNDING_FLOOR)
    };
    if usable.iter().all(|r| at_floor(r)) {
        return Err(Error::DegenerateFit);
    }
    let pts: Vec<(f64, f64)> = usable
        .iter()
        .filter(|r| !at_floor(r))
        .map(|r| (r.abscissa().ln(), r.fit_error.unwrap_or(0.0).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData);
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    if sxx == 0.0 {
        return Err(Error::InsufficientData);
    }
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let ssr = pts
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum::<f64>();
    let half_width = 2.0 * (ssr / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, half_width })
}

fn monotone_detail(plan: &VerificationPlan, c: &VerticalCheck, records: &[VerificationRecord]) -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for sign in [1.0, -1.0] {
        let mut pts: Vec<(f64, f64)> = records
            .iter()
            .filter_map(|r| {
                let t = r.t?;
                let p = r.pair(c.a, c.b)?;
                (t * sign > 0.0).then_some((t.abs(), p.abs_err))
            })
            .collect();
        pts.sort_by(|x, y| x.0.total_cmp(&y.0));
        let expected = plan.t_grid.iter().filter(|t| **t * sign > 0.0).count();
        let dec = pts.len() == expected && pts.windows(2).all(|w| w[1].1 < w[0].1);
        ok &= dec;
        if expected > 0 {
            detail.push(format!("t{}: {}", if sign > 0.0 { ">0" } else { "<0" }, if dec { "decreasing" } else { "not decreasing" }));
        }
    }
    (ok, detail.join(", "))
}

/// Evaluate every grid point, compare routes and apply the plan's checks.
pub fn run_verification(plan: &VerificationPlan) -> Result<VerificationReport> {
    plan.validate()?;
    let start = Instant::now();
    let points = plan.points();
    let results: Vec<(VerificationRecord, Vec<f64>)> = points
        .par_iter()
        .enumerate()
        .map(|(i, &(z, t))| evaluate_point(plan, i, z, t))
        .collect();
    let mut route_seconds: Vec<RouteTiming> = plan.routes.iter().map(|&route| RouteTiming { route, seconds: 0.0 }).collect();
    let mut records = Vec::with_capacity(results.len());
    for (rec, times) in results {
        for (slot, dt) in route_seconds.iter_mut().zip(times) {
            slot.seconds += dt;
        }
        records.push(rec);
    }

    let mut criteria = Vec::new();
    let failures: Vec<String> = records
        .iter()
        .flat_map(|r| r.values.iter().filter_map(move |v| v.error.as_ref().map(|e| format!("point {}: {}: {e}", r.index, v.route))))
        .collect();
    criteria.push(CriterionResult {
        name: "all routes evaluated".into(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() { "ok".into() } else { failures.join("; ") },
    });
    for c in &plan.tolerances.pairs {
        let worst = records
            .iter()
            .filter_map(|r| r.pair(c.a, c.b).map(|p| p.rel_err))
            .fold(0.0, f64::max);
        let complete = records.iter().all(|r| r.pair(c.a, c.b).is_some());
        criteria.push(CriterionResult {
            name: format!("{}~{} rel_err <= {:e}", c.a, c.b, c.rel_tol),
            pass: complete && worst <= c.rel_tol,
            detail: format!("max rel_err {worst:.3e}"),
        });
    }
    let (fit, fit_error) = match plan.tolerances.slope {
        Some(c) => {
            let fit = fit_remainder_order(&records);
            let (pass, detail) = match &fit {
                Ok(f) => (
                    c.lo <= f.slope && f.slope <= c.hi,
                    format!("slope {:.4} +/- {:.4}", f.slope, f.half_width),
                ),
                Err(e) => (false, e.to_string()),
            };
            criteria.push(CriterionResult {
                name: format!("{}~{} slope in [{:.2}, {:.2}]", c.a, c.b, c.lo, c.hi),
                pass,
                detail,
            });
            match fit {
                Ok(f) => (Some(f), None),
                Err(e) => (None, Some(e.to_string())),
            }
        }
        None => (None, None),
    };
    if let Some(c) = plan.tolerances.vertical {
        let bad: Vec<String> = records
            .iter()
            .filter(|r| match (r.pair(c.a, c.b), r.bound) {
                (Some(p), Some(b)) => p.rel_err > b,
                _ => true,
            })
            .map(|r| format!("t={}", r.t.unwrap_or(f64::NAN)))
            .collect();
        criteria.push(CriterionResult {
            name: format!("{}~{} rel_err <= {} |t|^next / |leading|", c.a, c.b, c.factor),
            pass: bad.is_empty(),
            detail: if bad.is_empty() { "ok".into() } else { format!("exceeded at {}", bad.join(", ")) },
        });
        if c.monotone {
            let (pass, detail) = monotone_detail(plan, &c, &records);
            criteria.push(CriterionResult {
                name: format!("{}~{} error decreasing in |t|", c.a, c.b),
                pass,
                detail,
            });
        }
    }
    let pass = criteria.iter().all(|c| c.pass) && records.iter().all(|r| r.pass);
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        plan: plan.clone(),
        records,
        fit,
        fit_error,
        criteria,
        pass,
        metadata: RunMetadata {
            route_seconds,
            total_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::DomainError(format!("unknown report format {s}"))),
        }
    }
}

/// Writes every float with 17 significant digits.
struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{v:.16e}")
        } else {
            w.write_all(b"null")
        }
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub const CSV_HEADER: &str = "theorem,z_re,z_im,routes,abs_err,rel_err,fitted_slope,pass";

fn csv_rows(report: &VerificationReport, out: &mut String) {
    if report.records.is_empty() {
        return;
    }
    let (a, b) = report.primary_pair();
    let routes = format!("{a}|{b}");
    let slope = report.fit.map(|f| fmt17(f.slope)).unwrap_or_default();
    let mut max_abs: Option<f64> = None;
    let mut max_rel: Option<f64> = None;
    for r in &report.records {
        let (abs, rel) = match r.pair(a, b) {
            Some(p) => {
                max_abs = Some(max_abs.map_or(p.abs_err, |m| m.max(p.abs_err)));
                max_rel = Some(max_rel.map_or(p.rel_err, |m| m.max(p.rel_err)));
                (fmt17(p.abs_err), fmt17(p.rel_err))
            }
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{routes},{abs},{rel},{slope},{}\n",
            report.plan.theorem,
            fmt17(r.z.re),
            fmt17(r.z.im),
            r.pass
        ));
    }
    // summary row: blank coordinates, worst errors
    out.push_str(&format!(
        "{},,,{routes},{},{},{slope},{}\n",
        report.plan.theorem,
        max_abs.map(fmt17).unwrap_or_default(),
        max_rel.map(fmt17).unwrap_or_default(),
        report.pass
    ));
}

/// CSV text for one or more reports under a single header.
pub fn reports_to_csv(reports: &[VerificationReport]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in reports {
        csv_rows(r, &mut out);
    }
    out
}

/// JSON text of one report, floats with 17 significant digits.
pub fn report_to_json(report: &VerificationReport) -> Result<String> {
    String::from_utf8(to_json_bytes(report)?).map_err(|e| Error::Io(e.to_string()))
}

/// JSON array of reports.
pub fn reports_to_json(reports: &[VerificationReport]) -> Result<String> {
    String::from_utf8(to_json_bytes(&reports)?).map_err(|e| Error::Io(e.to_string()))
}

pub fn export_report(report: &VerificationReport, format: ReportFormat, destination: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => reports_to_csv(std::slice::from_ref(report)),
        ReportFormat::Json => report_to_json(report)?,
    };
    std::fs::write(destination, text)?;
    Ok(())
}

pub fn export_reports(reports: &[VerificationReport], format: ReportFormat, destination: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => reports_to_csv(reports),
        ReportFormat::Json => reports_to_json(reports)?,
    };
    std::fs::write(destination, text)?;
    Ok(())
}

pub fn import_report(source: &Path) -> Result<VerificationReport> {
    let text = std::fs::read_to_string(source)?;
    serde_json::from_str(&text).map_err(|e| Error::Io(e.to_string()))
}

pub fn plan_from_json(text: &str) -> Result<VerificationPlan> {
    let plan: VerificationPlan = serde_json::from_str(text).map_err(|e| Error::PlanInvalid(e.to_string()))?;
    plan.validate()?;
    Ok(plan)
}

pub fn plan_to_json(plan: &VerificationPlan) -> Result<String> {
    String::from_utf8(to_json_bytes(plan)?).map_err(|e| Error::Io(e.to_string()))
}

// ---------------------------------------------------------------------------
// Built-in plans

pub const SMALL_RADII: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
pub const LARGE_RADII: [f64; 4] = [20.0, 40.0, 80.0, 160.0];
pub const VERTICAL_T: [f64; 6] = [50.0, 100.0, 200.0, -50.0, -100.0, -200.0];

const IDENTITY_TOL: f64 = 1e-8;
const VERTICAL_FACTOR: f64 = 10.0;

/// Parameter point shared by the presets of one transform kind.
pub fn preset_spec(kind: TransformKind) -> TransformSpec {
    match kind {
        TransformKind::Lm => TransformSpec::lm(c64(1.5, 0.0), 0),
        TransformKind::Rl => TransformSpec::rl(c64(1.2, 0.0), c64(0.8, 0.0), 0),
        TransformKind::Lmlm => TransformSpec::lmlm(c64(1.2, 0.0), c64(0.9, 0.0), 0),
        TransformKind::Rllm => TransformSpec::rllm(c64(0.7, 0.0), c64(1.2, 0.0), c64(1.3, 0.0), 0),
        TransformKind::Rlrl => TransformSpec::rlrl(c64(1.2, 0.0), c64(0.7, 0.0), c64(1.5, 0.0), c64(0.9, 0.0), 0),
    }
}

/// Default truncation order of each preset.
pub fn preset_order(target: Target) -> usize {
    match target {
        t if t.is_vertical() => 2,
        t if t.underlying().is_small_z() => 3,
        _ => 2,
    }
}

fn truncation(theorem: Theorem, n: usize) -> TruncationSpec {
    match theorem {
        Theorem::T4 | Theorem::T8 => TruncationSpec::split(n, n),
        _ => TruncationSpec::single(n),
    }
}

/// The built-in plan for `target` at its default order.
pub fn preset(target: Target) -> VerificationPlan {
    preset_with_order(target, preset_order(target))
}

/// The built-in plan for `target` truncated at `n` (`N₁ = N₂ = n` for T4/T8).
///
/// Small-z rays run at `arg z = π/6`, large-z rays at `π/4` (T4 at `2π/3`,
/// with `ℜs` large enough that `ℜ(s+z) ≥ 10` on the whole ray, and the error
/// measured relative to the leading term because the second branch carries
/// `φ*(s+z)`). Vertical lines use `σ = 2`.
pub fn preset_with_order(target: Target, n: usize) -> VerificationPlan {
    let kind = target.kind();
    let spec = preset_spec(kind);
    let prm = LerchParams::new(2.0, 0.3).expect("preset parameters");
    let theorem = target.underlying();
    let trunc = truncation(theorem, n);
    let nf = n as f64;
    let alpha = spec.alpha.re;
    if target.is_vertical() {
        return VerificationPlan {
            theorem: target,
            spec,
            s: c64(2.0, 0.0),
            prm,
            z_grid: Vec::new(),
            t_grid: VERTICAL_T.to_vec(),
            trunc,
            routes: vec![Route::MellinBarnes, Route::Expansion],
            tolerances: Tolerances {
                pairs: Vec::new(),
                slope: None,
                vertical: Some(VerticalCheck {
                    a: Route::MellinBarnes,
                    b: Route::Expansion,
                    factor: VERTICAL_FACTOR,
                    monotone: true,
                }),
            },
            rel_tol: None,
        };
    }
    let identity = |oracle: Route| PairCheck {
        a: oracle,
        b: Route::ExpansionPlusRemainder,
        rel_tol: IDENTITY_TOL,
    };
    if theorem.is_small_z() {
        let z_grid = SMALL_RADII.iter().map(|&r| Complex64::from_polar(r, PI / 6.0)).collect();
        return VerificationPlan {
            theorem: target,
            spec,
            s: c64(2.0, 3.0),
            prm,
            z_grid,
            t_grid: Vec::new(),
            trunc,
            routes: vec![Route::Quadrature, Route::Expansion, Route::ExpansionPlusRemainder],
            tolerances: Tolerances {
                pairs: vec![identity(Route::Quadrature)],
                slope: Some(SlopeCheck {
                    a: Route::Quadrature,
                    b: Route::Expansion,
                    lo: nf - 0.3,
                    hi: nf + 0.7,
                    normalization: Normalization::Absolute,
                }),
                vertical: None,
            },
            rel_tol: None,
        };
    }
    // the LMLM kernel decays only like e^{−2√τ}, so kernel quadrature at
    // |z| = 160 needs φ* far beyond |ℑs| = 10⁴; the contour integral does not
    let oracle = if theorem == Theorem::T6 { Route::MellinBarnes } else { Route::Quadrature };
    let (arg, s, lo, hi, normalization) = if theorem == Theorem::T4 {
        (
            2.0 * PI / 3.0,
            c64(90.0, 3.0),
            -nf - 0.7,
            -nf + 0.3,
            Normalization::LeadingTerm,
        )
    } else {
        (
            PI / 4.0,
            c64(2.0, 3.0),
            -alpha - nf - 0.7,
            -alpha - nf + 0.3,
            Normalization::Absolute,
        )
    };
    let z_grid = LARGE_RADII.iter().map(|&r| Complex64::from_polar(r, arg)).collect();
    VerificationPlan {
        theorem: target,
        spec,
        s,
        prm,
        z_grid,
        t_grid: Vec::new(),
        trunc,
        routes: vec![oracle, Route::Expansion, Route::ExpansionPlusRemainder],
        tolerances: Tolerances {
            pairs: vec![identity(oracle)],
            slope: Some(SlopeCheck {
                a: oracle,
                b: Route::Expansion,
                lo,
                hi,
                normalization,
            }),
            vertical: None,
        },
        rel_tol: None,
    }
}

/// Resolve a preset name: a target name (`t1`..`t10`, `c21`..`c81`) or `all`.
pub fn preset_plans(name: &str) -> Result<Vec<VerificationPlan>> {
    if name.eq_ignore_ascii_case("all") {
        return Ok(Target::ALL.into_iter().map(preset).collect());
    }
    let target: Target = name
        .parse()
        .map_err(|_| Error::PlanInvalid(format!("unknown preset {name}; expected t1..t10, c21, c41, c61, c81 or all")))?;
    Ok(vec![preset(target)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names() {
        assert_eq!("c41".parse::<Target>().unwrap(), Target::C41);
        assert_eq!(Target::T10.theorem(), Some(Theorem::T10));
        assert_eq!(Target::C61.underlying(), Theorem::T6);
        assert!(Target::C21.is_vertical() && !Target::T2.is_vertical());
    }

    #[test]
    fn presets_are_valid() {
        for t in Target::ALL {
            preset(t).validate().unwrap();
        }
        assert_eq!(preset_plans("all").unwrap().len(), 14);
        assert!(preset_plans("t11").is_err());
    }

    #[test]
    fn power_law_fit() {
        let recs: Vec<_> = SMALL_RADII
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let e = 0.7 * r.powi(3);
                VerificationRecord::from_error(i, Complex64::from_polar(r, 0.3), e, e)
            })
            .collect();
        let f = fit_remainder_order(&recs).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-9 && f.half_width < 1e-9);
    }

    #[test]
    fn fit_errors() {
        let floor: Vec<_> = (0..4)
            .map(|i| VerificationRecord::from_error(i, c64(1.0 + i as f64, 0.0), 1e-16, 1e-16))
            .collect();
        assert_eq!(fit_remainder_order(&floor), Err(Error::DegenerateFit));
        assert_eq!(fit_remainder_order(&floor[..2]), Err(Error::InsufficientData));
    }

    #[test]
    fn invalid_plans() {
        let mut p = preset(Target::T1);
        p.z_grid.clear();
        assert!(matches!(run_verification(&p), Err(Error::PlanInvalid(_))));
        let mut p = preset(Target::T1);
        p.routes.truncate(1);
        p.tolerances = Tolerances::default();
        assert!(matches!(p.validate(), Err(Error::PlanInvalid(_))));
        let mut p = preset(Target::T9);
        p.z_grid = vec![Complex64::from_polar(0.1, 2.0)];
        assert!(matches!(p.validate(), Err(Error::PlanInvalid(_))));
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        let bytes = to_json_bytes(&vec![1.0f64 / 3.0]).unwrap();
        let back: Vec<f64> = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back[0].to_bits(), (1.0f64 / 3.0).to_bits());
    }
}
