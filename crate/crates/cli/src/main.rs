//! `lerch`: evaluate Lerch zeta-functions and their transforms, and run
//! verification plans.
//!
//! Exit codes: 0 success, 1 a verification criterion failed, 2 bad input or
//! a domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use lerchzeta::lerch::{lerch_phi, lerch_phi_star, phi_star_aux, phi_star_deriv_with, psi_term, stieltjes_gamma, LerchParams};
use lerchzeta::mellin_barnes::{base_sector, mb_transform_auto};
use lerchzeta::numeric::QuadratureConfig;
use lerchzeta::transforms::{
    iterated_transform, lm_transform, rl_transform, IteratedMode, TransformKind, TransformSpec,
};
use lerchzeta::verify::{
    export_reports, plan_from_json, preset_plans, reports_to_csv, reports_to_json, run_verification, ReportFormat,
    VerificationPlan, VerificationReport,
};
use lerchzeta::Error;

#[derive(Parser)]
#[command(name = "lerch", version, about = "Lerch zeta-functions, their transforms and asymptotic expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate phi, phi*, phi*_r, psi or a Stieltjes constant.
    Eval(EvalArgs),
    /// Evaluate an LM, RL or iterated transform of (phi*)^(m)(s + tau).
    Transform(TransformArgs),
    /// Run a verification plan or a built-in preset.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Phi,
    PhiStar,
    PhiStarAux,
    Psi,
    Stieltjes,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    object: Object,
    /// RE,IM
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    lambda: f64,
    /// Order of the Hadamard operator, RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Derivative order (phi-star) or Stieltjes index.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    m: i64,
    /// Argument of psi, RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Lm,
    Rl,
    Lmlm,
    Rllm,
    Rlrl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Quad,
    Mb,
    Kernel,
    Double,
}

impl RouteArg {
    fn name(self) -> &'static str {
        match self {
            RouteArg::Quad => "quad",
            RouteArg::Mb => "mb",
            RouteArg::Kernel => "kernel",
            RouteArg::Double => "double",
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    m: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, value_enum, default_value = "quad")]
    route: RouteArg,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON file holding one plan or an array of plans.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    plan: Option<PathBuf>,
    /// t1..t10, c21, c41, c61, c81 or all.
    #[arg(long)]
    preset: Option<String>,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the extension of --out, else csv.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

/// Input errors map to exit code 2, failed criteria to 1.
enum Failure {
    Input(anyhow::Error),
    Criteria,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn parse_complex(text: &str, what: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| -> anyhow::Result<f64> {
        p.parse::<f64>()
            .with_context(|| format!("--{what}: cannot parse {p:?} as a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => bail!("--{what} must be RE,IM, got {text:?}"),
    }
}

fn required(v: &Option<String>, what: &str) -> anyhow::Result<Complex64> {
    match v {
        Some(t) => parse_complex(t, what),
        None => bail!("--{what} is required"),
    }
}

fn pair(v: &Option<String>, what: &str) -> anyhow::Result<Option<[f64; 2]>> {
    v.as_deref()
        .map(|t| parse_complex(t, what).map(|c| [c.re, c.im]))
        .transpose()
}

/// `--tol`, else `LERCH_TOL`, else the library default.
fn rel_tol(flag: Option<f64>) -> anyhow::Result<Option<f64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("LERCH_TOL") {
        Ok(v) => {
            let t: f64 = v
                .trim()
                .parse()
                .with_context(|| format!("LERCH_TOL={v:?} is not a number"))?;
            Ok(Some(t))
        }
        Err(_) => Ok(None),
    }
}

fn config(flag: Option<f64>) -> anyhow::Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = rel_tol(flag)? {
        cfg = cfg.with_rel_tol(t);
        cfg.validate()?;
    }
    Ok(cfg)
}

/// Fixed notation with 15 decimals for moderate magnitudes, otherwise
/// scientific with 15 digits after the point.
fn fmt_real(x: f64) -> String {
    let ax = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&ax) {
        format!("{x:.15}")
    } else {
        format!("{x:.15e}")
    }
}

fn print_value(v: Complex64, json: bool, mut echo: serde_json::Value) {
    if json {
        echo["value"] = json!([v.re, v.im]);
        println!("{echo}");
    } else {
        println!("{} {}", fmt_real(v.re), fmt_real(v.im));
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let cfg = config(args.tol)?;
    let params = || -> anyhow::Result<LerchParams> {
        let a = args.a.ok_or_else(|| anyhow!("--a is required"))?;
        Ok(LerchParams::new(a, args.lambda)?)
    };
    let (name, value) = match args.object {
        Object::Phi => ("phi", lerch_phi(required(&args.s, "s")?, &params()?)?),
        Object::PhiStar => {
            let s = required(&args.s, "s")?;
            let prm = params()?;
            let v = if args.m == 0 {
                lerch_phi_star(s, &prm)?
            } else {
                phi_star_deriv_with(args.m, s, &prm, &cfg)?
            };
            ("phi-star", v)
        }
        Object::PhiStarAux => {
            let r = match &args.r {
                Some(r) => parse_complex(r, "r")?,
                None => Complex64::new(0.0, 0.0),
            };
            ("phi-star-aux", phi_star_aux(r, required(&args.s, "s")?, &params()?)?)
        }
        Object::Psi => ("psi", psi_term(required(&args.s, "s")?, required(&args.z, "z")?)?),
        Object::Stieltjes => {
            let m = u32::try_from(args.m).map_err(|_| anyhow!("--m must be a nonnegative integer for stieltjes"))?;
            ("stieltjes", stieltjes_gamma(m, &params()?)?)
        }
    };
    let echo = json!({
        "command": "eval",
        "object": name,
        "s": pair(&args.s, "s")?,
        "a": args.a,
        "lambda": args.lambda,
        "r": pair(&args.r, "r")?,
        "m": args.m,
        "z": pair(&args.z, "z")?,
    });
    print_value(value, args.json, echo);
    Ok(())
}

fn transform_spec(args: &TransformArgs) -> anyhow::Result<TransformSpec> {
    let kind = match args.kind {
        Kind::Lm => TransformKind::Lm,
        Kind::Rl => TransformKind::Rl,
        Kind::Lmlm => TransformKind::Lmlm,
        Kind::Rllm => TransformKind::Rllm,
        Kind::Rlrl => TransformKind::Rlrl,
    };
    let mut orders = vec![parse_complex(&args.alpha, "alpha")?];
    let extra = [("beta", &args.beta), ("gamma", &args.gamma), ("delta", &args.delta)];
    for (name, v) in extra.iter().take(kind.order_count() - 1) {
        orders.push(required(v, name)?);
    }
    for (name, v) in extra.iter().skip(kind.order_count() - 1) {
        if v.is_some() {
            bail!("--{name} does not apply to --kind {:?}", args.kind.to_possible_value().unwrap().get_name());
        }
    }
    let spec = TransformSpec::from_orders(kind, &orders, args.m)?;
    spec.validate()?;
    Ok(spec)
}

fn sector_name(bound: f64) -> &'static str {
    let q = bound / std::f64::consts::FRAC_PI_2;
    if (q - 1.0).abs() < 1e-9 {
        "pi/2"
    } else if (q - 2.0).abs() < 1e-9 {
        "pi"
    } else {
        "3pi/2"
    }
}

fn cmd_transform(args: &TransformArgs) -> Result<(), Failure> {
    let cfg = config(args.tol)?;
    let spec = transform_spec(args)?;
    let s = parse_complex(&args.s, "s")?;
    let z = parse_complex(&args.z, "z")?;
    let prm = LerchParams::new(args.a, args.lambda)?;
    let iterated = !matches!(spec.kind, TransformKind::Lm | TransformKind::Rl);
    let result = match args.route {
        RouteArg::Quad => match spec.kind {
            TransformKind::Lm => lm_transform(&spec, s, &prm, z, &cfg),
            TransformKind::Rl => rl_transform(&spec, s, &prm, z, &cfg),
            _ => iterated_transform(&spec, s, &prm, z, &cfg, IteratedMode::Kernel),
        },
        RouteArg::Mb => mb_transform_auto(&spec, s, &prm, z, &cfg),
        RouteArg::Kernel | RouteArg::Double if !iterated => {
            return Err(Failure::Input(anyhow!(
                "route={} applies to lmlm, rllm and rlrl only",
                args.route.name()
            )))
        }
        RouteArg::Kernel => iterated_transform(&spec, s, &prm, z, &cfg, IteratedMode::Kernel),
        RouteArg::Double => iterated_transform(&spec, s, &prm, z, &cfg, IteratedMode::DoubleIntegral),
    };
    let value = match result {
        Ok(v) => v,
        Err(e @ Error::SectorViolation { .. }) => {
            let bound = match (args.route, spec.kind) {
                (RouteArg::Mb, TransformKind::Rl) => std::f64::consts::PI,
                (RouteArg::Mb, k) => base_sector(k),
                _ => std::f64::consts::FRAC_PI_2,
            };
            return Err(Failure::Input(anyhow!(
                "|arg z| must be < {} for route={}: {e}",
                sector_name(bound),
                args.route.name()
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let echo = json!({
        "command": "transform",
        "kind": format!("{:?}", spec.kind).to_lowercase(),
        "orders": spec.orders().iter().map(|o| [o.re, o.im]).collect::<Vec<_>>(),
        "m": args.m,
        "s": [s.re, s.im],
        "a": args.a,
        "lambda": args.lambda,
        "z": [z.re, z.im],
        "route": args.route.name(),
    });
    print_value(value, args.json, echo);
    Ok(())
}

fn load_plans(path: &PathBuf) -> anyhow::Result<Vec<VerificationPlan>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read plan {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("plan {} is not valid JSON", path.display()))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    if items.is_empty() {
        bail!("plan file {} holds no plans", path.display());
    }
    items
        .into_iter()
        .map(|v| Ok(plan_from_json(&v.to_string())?))
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let mut plans = match (&args.plan, &args.preset) {
        (Some(path), _) => load_plans(path)?,
        (None, Some(name)) => preset_plans(name)?,
        (None, None) => return Err(Failure::Input(anyhow!("one of --plan or --preset is required"))),
    };
    if let Some(t) = rel_tol(None)? {
        for p in plans.iter_mut().filter(|p| p.rel_tol.is_none()) {
            p.rel_tol = Some(t);
        }
    }
    let format = match (&args.format, &args.out) {
        (Some(f), _) => f.parse::<ReportFormat>()?,
        (None, Some(out)) if out.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => ReportFormat::Json,
        _ => ReportFormat::Csv,
    };
    let reports: Vec<VerificationReport> = plans.iter().map(run_verification).collect::<Result<_, _>>()?;
    for r in &reports {
        eprintln!(
            "{} {} ({:.1}s)",
            r.plan.theorem,
            if r.pass { "pass" } else { "FAIL" },
            r.metadata.total_seconds
        );
        for c in r.criteria.iter().filter(|c| !c.pass) {
            eprintln!("  {}: {}", c.name, c.detail);
        }
    }
    match &args.out {
        Some(path) => export_reports(&reports, format, path)?,
        None => match format {
            ReportFormat::Csv => print!("{}", reports_to_csv(&reports)),
            ReportFormat::Json => print!("{}", reports_to_json(&reports)?),
        },
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Criteria)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Criteria) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
