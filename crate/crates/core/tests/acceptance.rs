//! One test per acceptance criterion. Each prints a single
//! `criterion N ... PASS|FAIL` line (run with `--nocapture`) before asserting.

use std::f64::consts::PI;

use lerchzeta::lerch::{
    lerch_phi, lerch_phi_star, phi_star_aux, phi_star_aux_recurrence, phi_star_deriv, LerchParams,
};
use lerchzeta::mellin_barnes::{base_quotient, mb_exponential_kernel};
use lerchzeta::numeric::{
    c64, gamma, gamma_ratio, integrate_contour, integrate_finite, rel_err, stirling_poly, ContourSpec,
    EndpointBehavior, QuadratureConfig,
};
use lerchzeta::special::{gauss_2f1, gauss_2f1_mb, kummer_m_mb, kummer_m_series, kummer_u_mb, kummer_u_polar};
use lerchzeta::transforms::{iterated_apply, iterated_transform, lm_apply, IteratedMode, TransformKind, TransformSpec};
use lerchzeta::verify::{
    preset, preset_plans, preset_with_order, reports_to_csv, run_verification, Route, Target, VerificationReport,
};
use lerchzeta::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, what: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {what}: {verdict} ({detail})");
    assert!(pass, "criterion {n} failed: {detail}");
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default().with_rel_tol(1e-12).with_abs_tol(1e-300)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(42)
}

fn pochhammer(x: Complex64, n: usize) -> Complex64 {
    (0..n).fold(c64(1.0, 0.0), |acc, k| acc * (x + k as f64))
}

/// ₁F₁ by plain summation.
fn m_series(a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        let k = k as f64;
        term *= (a + k) / ((b + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && k > 5.0 {
            break;
        }
    }
    sum
}

/// ₂F₁ by plain summation, |Z| < 1.
fn f_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Complex64 {
    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    for k in 0..5000 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && k > 5.0 {
            break;
        }
    }
    sum
}

fn g(z: Complex64) -> Complex64 {
    gamma(z).unwrap()
}

fn cpow(z: Complex64, w: Complex64) -> Complex64 {
    (w * z.ln()).exp()
}

fn run(target: Target, n: Option<usize>) -> VerificationReport {
    let plan = match n {
        Some(n) => preset_with_order(target, n),
        None => preset(target),
    };
    run_verification(&plan).unwrap()
}

fn oracle(report: &VerificationReport) -> Route {
    if report.plan.routes.contains(&Route::Quadrature) {
        Route::Quadrature
    } else {
        Route::MellinBarnes
    }
}

#[test]
fn criterion_01_decomposition_identities() {
    let mut worst = 0.0_f64;
    let mut detail = Vec::new();
    for t in &Target::ALL[..10] {
        let r = run(*t, None);
        let o = oracle(&r);
        let e = r
            .records
            .iter()
            .map(|rec| rec.pair(o, Route::ExpansionPlusRemainder).map_or(f64::INFINITY, |p| p.rel_err))
            .fold(0.0, f64::max);
        worst = worst.max(e);
        detail.push(format!("{t} {e:.1e}"));
    }
    report(1, "expansion + remainder = transform", worst <= 1e-8, &detail.join(", "));
}

#[test]
fn criterion_02_small_z_orders() {
    let mut ok = true;
    let mut detail = Vec::new();
    for t in [Target::T1, Target::T3, Target::T5, Target::T7, Target::T9] {
        for n in [1, 3] {
            let r = run(t, Some(n));
            let slope = r.fit.map_or(f64::NAN, |f| f.slope);
            let n = n as f64;
            ok &= slope >= n - 0.3 && slope <= n + 0.7;
            detail.push(format!("{t}/N={n} {slope:.2}"));
        }
    }
    report(2, "small-z remainder orders", ok, &detail.join(", "));
}

#[test]
fn criterion_03_large_z_orders() {
    let mut ok = true;
    let mut detail = Vec::new();
    for t in [Target::T2, Target::T6, Target::T8, Target::T10] {
        for n in [1, 2] {
            let r = run(t, Some(n));
            let slope = r.fit.map_or(f64::NAN, |f| f.slope);
            let centre = -r.plan.spec.alpha.re - n as f64;
            ok &= slope >= centre - 0.7 && slope <= centre + 0.3;
            detail.push(format!("{t}/N={n} {slope:.2}"));
        }
    }
    // both branches summed on arg z = 2π/3; the slope is taken on the error
    // relative to the leading term, so the window is centred on −N
    for n in [1, 2] {
        let r = run(Target::T4, Some(n));
        let arg = r.records[0].z.arg();
        let slope = r.fit.map_or(f64::NAN, |f| f.slope);
        let centre = -(n as f64);
        ok &= (arg - 2.0 * PI / 3.0).abs() < 1e-12 && slope >= centre - 0.7 && slope <= centre + 0.3;
        detail.push(format!("T4/N={n} {slope:.2}"));
    }
    report(3, "large-z remainder orders", ok, &detail.join(", "));
}

#[test]
fn criterion_04_vertical_lines() {
    let mut ok = true;
    let mut detail = Vec::new();
    for t in [Target::C21, Target::C41, Target::C61, Target::C81] {
        let r = run(t, None);
        let ts: Vec<f64> = r.records.iter().filter_map(|rec| rec.t).collect();
        ok &= ts == [50.0, 100.0, 200.0, -50.0, -100.0, -200.0];
        let bounded = r.records.iter().all(|rec| {
            let e = rec.pair(Route::MellinBarnes, Route::Expansion).map_or(f64::INFINITY, |p| p.rel_err);
            rec.bound.is_some_and(|b| e <= b)
        });
        let errs: Vec<f64> = r
            .records
            .iter()
            .map(|rec| rec.pair(Route::MellinBarnes, Route::Expansion).map_or(f64::INFINITY, |p| p.abs_err))
            .collect();
        let monotone = errs[0] > errs[1] && errs[1] > errs[2] && errs[3] > errs[4] && errs[4] > errs[5];
        ok &= bounded && monotone;
        let shown: Vec<String> = errs.iter().map(|e| format!("{e:.1e}")).collect();
        detail.push(format!("{t} abs err {}", shown.join("/")));
    }
    report(4, "vertical-line expansions", ok, &detail.join(", "));
}

#[test]
fn criterion_05_kernel_vs_double_integral() {
    let mut rng = rng();
    let prm = LerchParams::new(2.0, 0.3).unwrap();
    let cfg = QuadratureConfig::default().with_rel_tol(1e-10);
    let mut worst = 0.0_f64;
    for kind in [TransformKind::Lmlm, TransformKind::Rllm, TransformKind::Rlrl] {
        for _ in 0..5 {
            let orders: Vec<Complex64> =
                (0..kind.order_count()).map(|_| c64(rng.gen_range(0.6..2.0), rng.gen_range(-0.3..0.3))).collect();
            let spec = TransformSpec::from_orders(kind, &orders, 0).unwrap();
            let s = c64(rng.gen_range(1.5..3.0), rng.gen_range(-3.0..3.0));
            let z = Complex64::from_polar(rng.gen_range(0.2..1.5), rng.gen_range(-1.2..1.2));
            let k = iterated_transform(&spec, s, &prm, z, &cfg, IteratedMode::Kernel).unwrap();
            let d = iterated_transform(&spec, s, &prm, z, &cfg, IteratedMode::DoubleIntegral).unwrap();
            worst = worst.max(rel_err(k, d));
        }
    }
    report(5, "kernel = double integral", worst <= 1e-7, &format!("15 draws, max {worst:.1e}"));
}

#[test]
fn criterion_06_closed_form_kernels() {
    let mut rng = rng();
    let mut worst = 0.0_f64;
    let mut worst_of = |e: f64| worst = worst.max(e);
    for _ in 0..5 {
        let alpha = c64(rng.gen_range(0.5..2.5), rng.gen_range(-0.5..0.5));
        let c = rng.gen_range(0.5..3.0);
        let z = Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(-1.4..1.4));
        let v = lm_apply(alpha, |w| Ok((-c * w).exp()), z, &cfg()).unwrap();
        worst_of(rel_err(v, cpow(1.0 + c * z, -alpha)));
    }
    for _ in 0..5 {
        let (a, b, gm) = (c64(rng.gen_range(0.5..2.0), 0.0), c64(rng.gen_range(0.5..2.0), 0.0), c64(rng.gen_range(0.5..2.0), 0.0));
        let c = rng.gen_range(0.5..1.5);
        let z = Complex64::from_polar(rng.gen_range(0.1..0.6), rng.gen_range(-1.2..1.2));
        let spec = TransformSpec::rllm(a, b, gm, 0);
        let f = |w: Complex64| -> Result<Complex64> { Ok((-c * w).exp()) };
        let v = iterated_apply(&spec, f, z, &cfg(), IteratedMode::Kernel).unwrap();
        worst_of(rel_err(v, f_series(a, b, b + gm, -c * z)));
    }
    let specs = [
        TransformSpec::lmlm(c64(1.1, 0.0), c64(1.4, 0.0), 0),
        TransformSpec::rllm(c64(1.2, 0.0), c64(0.9, 0.0), c64(1.7, 0.0), 0),
        TransformSpec::rlrl(c64(1.2, 0.0), c64(0.7, 0.0), c64(1.5, 0.0), c64(0.9, 0.0), 0),
    ];
    for spec in specs {
        for _ in 0..3 {
            let c = rng.gen_range(0.5..2.0);
            let z = Complex64::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(-1.0..1.0));
            let v = mb_exponential_kernel(&spec, c, z, &cfg()).unwrap();
            let f = |w: Complex64| -> Result<Complex64> { Ok((-c * w).exp()) };
            let h = iterated_apply(&spec, f, z, &cfg(), IteratedMode::DoubleIntegral).unwrap();
            worst_of(rel_err(v, h));
        }
    }
    report(6, "closed-form kernels", worst <= 1e-8, &format!("max {worst:.1e}"));
}

/// `(1/2πi)∫ Γ(a+w)Γ(b+w)Γ(c−w)Γ(d−w) dw` on `ℜw = u` by the trapezoid rule.
fn barnes_line(a: Complex64, b: Complex64, c: Complex64, d: Complex64, u: f64) -> Complex64 {
    let h = 0.02;
    let mut sum = c64(0.0, 0.0);
    for k in -3000..=3000 {
        let w = c64(u, k as f64 * h);
        sum += g(a + w) * g(b + w) * g(c - w) * g(d - w);
    }
    sum * h / (2.0 * PI)
}

#[test]
fn criterion_07_special_function_identities() {
    let mut rng = rng();
    let mut worst: Vec<(&str, f64)> = Vec::new();
    let mut note = |what: &'static str, e: f64| match worst.iter_mut().find(|(w, _)| *w == what) {
        Some((_, m)) => *m = m.max(e),
        None => worst.push((what, e)),
    };
    let one = c64(1.0, 0.0);
    for _ in 0..12 {
        let kappa = c64(rng.gen_range(0.3..2.0), rng.gen_range(-0.5..0.5));
        let nu = c64(rng.gen_range(0.6..2.6), rng.gen_range(-0.5..0.5));
        let rho = rng.gen_range(0.5..4.0);
        let theta = rng.gen_range(0.2..2.9) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let zz = Complex64::from_polar(rho, theta);
        let eps = theta.signum();

        // M through U on both sides of the real axis
        let u1 = kummer_u_polar(kappa, nu, rho, theta).unwrap();
        let u2 = kummer_u_polar(nu - kappa, nu, rho, theta - eps * PI).unwrap();
        let rhs = g(nu) / g(nu - kappa) * (c64(0.0, eps * PI) * kappa).exp() * u1
            + g(nu) / g(kappa) * (c64(0.0, eps * PI) * (kappa - nu)).exp() * zz.exp() * u2;
        note("M via U", rel_err(rhs, m_series(kappa, nu, zz)));

        // U via M, ν off the integers
        let u_m = g(one - nu) / g(kappa - nu + 1.0) * m_series(kappa, nu, zz)
            + g(nu - 1.0) / g(kappa) * cpow(zz, one - nu) * m_series(kappa - nu + 1.0, 2.0 - nu, zz);
        note("U via M", rel_err(u1, u_m));

        // Kummer's transformation
        note(
            "Kummer transformation",
            rel_err(kummer_m_series(kappa, nu, zz).unwrap(), zz.exp() * m_series(nu - kappa, nu, -zz)),
        );

        // Mellin-Barnes for M, |arg(−Z)| < π/2
        let zm = Complex64::from_polar(rho, PI + rng.gen_range(-1.3..1.3));
        let v = kummer_m_mb(kappa, nu, zm, -0.5 * kappa.re.min(1.0), &cfg()).unwrap();
        note("M Mellin-Barnes", rel_err(v, m_series(kappa, nu, zm)));

        // Mellin-Barnes for U, |arg Z| < 3π/2
        let th = rng.gen_range(-4.5..4.5);
        let v = kummer_u_mb(kappa, nu, rho, th, &cfg()).unwrap();
        let zt = Complex64::from_polar(rho, th);
        let lz = c64(rho.ln(), th);
        let u_m = g(one - nu) / g(kappa - nu + 1.0) * m_series(kappa, nu, zt)
            + g(nu - 1.0) / g(kappa) * ((one - nu) * lz).exp() * m_series(kappa - nu + 1.0, 2.0 - nu, zt);
        note("U Mellin-Barnes", rel_err(v, u_m));
    }
    for _ in 0..12 {
        let ka = c64(rng.gen_range(0.3..2.0), rng.gen_range(-0.3..0.3));
        let mu = ka + c64(rng.gen_range(0.2..0.8), rng.gen_range(-0.3..0.3));
        let nu = c64(rng.gen_range(1.0..3.0), rng.gen_range(-0.3..0.3));

        // ₂F₁ at 1/Z
        let zz = Complex64::from_polar(rng.gen_range(1.6..4.0), rng.gen_range(-2.8..2.8));
        let mz = -zz;
        let rhs = g(nu) * g(mu - ka) / (g(mu) * g(nu - ka)) * cpow(mz, -ka) * f_series(ka, one - nu + ka, one - mu + ka, one / zz)
            + g(nu) * g(ka - mu) / (g(ka) * g(nu - mu)) * cpow(mz, -mu) * f_series(mu, one - nu + mu, one - ka + mu, one / zz);
        let lhs = gauss_2f1_mb(ka, mu, nu, zz, &cfg().with_rel_tol(1e-11)).unwrap();
        note("2F1 at 1/Z", rel_err(lhs, rhs));
        note("2F1 at 1/Z", rel_err(gauss_2f1(ka, mu, nu, zz).unwrap(), lhs));

        // Mellin-Barnes for ₂F₁
        let zs = Complex64::from_polar(rng.gen_range(0.1..0.8), rng.gen_range(0.3..6.0));
        let v = gauss_2f1_mb(ka, mu, nu, zs, &cfg()).unwrap();
        note("2F1 Mellin-Barnes", rel_err(v, f_series(ka, mu, nu, zs)));

        // binomial Mellin-Barnes
        let alpha = c64(rng.gen_range(0.3..2.5), rng.gen_range(-0.5..0.5));
        let zb = Complex64::from_polar(rng.gen_range(0.1..3.0), rng.gen_range(-2.5..2.5));
        let q = base_quotient(&TransformSpec::lm(alpha, 0)).unwrap();
        let u = -0.5 * alpha.re;
        let line = ContourSpec::line(u, q.decay_rate(), q.poly_degree(u));
        let lz = zb.ln();
        let v = integrate_contour(&|w: Complex64| Ok(q.eval(w)? * (w * lz).exp()), &line, &cfg()).unwrap();
        note("binomial Mellin-Barnes", rel_err(v, cpow(1.0 + zb, -alpha)));
    }
    // Barnes' first lemma
    let (a, b, c, d) = (c64(0.7, 0.2), c64(1.1, -0.3), c64(0.9, 0.1), c64(0.4, 0.5));
    let lhs = barnes_line(a, b, c, d, 0.1);
    let rhs = g(a + c) * g(a + d) * g(b + c) * g(b + d) / g(a + b + c + d);
    note("Barnes' first lemma", rel_err(lhs, rhs));

    let pass = worst.iter().all(|(_, e)| *e <= 1e-8);
    let detail: Vec<String> = worst.iter().map(|(w, e)| format!("{w} {e:.1e}")).collect();
    report(7, "special-function identities", pass, &detail.join(", "));
}

#[test]
fn criterion_08_stirling_and_gamma() {
    let mut rng = rng();
    let mut stirling = 0.0_f64;
    for n in 0..=8 {
        for _ in 0..5 {
            let x = c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let y = c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let sum = (0..=n).fold(c64(0.0, 0.0), |acc, m| acc + stirling_poly(m, n).eval(x) * y.powu(m as u32));
            stirling = stirling.max(rel_err(sum, pochhammer(x + y, n)));
        }
    }
    let mut recurrence = 0.0_f64;
    for _ in 0..20 {
        let z = c64(rng.gen_range(-8.0..15.0), rng.gen_range(-20.0..20.0));
        recurrence = recurrence.max(rel_err(g(z + 1.0), z * g(z)));
    }
    let mut beta = 0.0_f64;
    for _ in 0..10 {
        let a = c64(rng.gen_range(0.3..3.0), rng.gen_range(-1.0..1.0));
        let b = c64(rng.gen_range(0.3..3.0), rng.gen_range(-1.0..1.0));
        let v = integrate_finite(
            |t, tc| ((a - 1.0) * t.ln() + (b - 1.0) * tc.ln()).exp(),
            &EndpointBehavior::finite(a.re - 1.0, b.re - 1.0),
            &cfg(),
        )
        .unwrap();
        beta = beta.max((v * gamma_ratio(&[a + b], &[a, b]).unwrap() - 1.0).norm());
    }
    let pass = stirling <= 1e-12 && recurrence <= 1e-12 && beta <= 1e-10;
    let detail = format!("Stirling {stirling:.1e}, recurrence {recurrence:.1e}, Beta {beta:.1e}");
    report(8, "Stirling and gamma identities", pass, &detail);
}

#[test]
fn criterion_09_lerch_core() {
    let mut rng = rng();
    let mut shift = 0.0_f64;
    for _ in 0..10 {
        let a = rng.gen_range(1.2..4.0);
        let lambda = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.05..0.95) };
        let s = c64(rng.gen_range(-2.0..4.0), rng.gen_range(-15.0..15.0));
        let p = LerchParams::new(a, lambda).unwrap();
        let q = LerchParams::new(a + 1.0, lambda).unwrap();
        let rhs = cpow(c64(a, 0.0), -s) + c64(0.0, 2.0 * PI * lambda).exp() * lerch_phi(s, &q).unwrap();
        shift = shift.max(rel_err(lerch_phi(s, &p).unwrap(), rhs));
    }

    let mut depth = 0.0_f64;
    for (a, lambda) in [(2.0, 0.3), (1.7, 0.0)] {
        let p = LerchParams::new(a, lambda).unwrap();
        for (r, s) in [(c64(0.0, 0.0), c64(0.5, 3.0)), (c64(0.5, 0.2), c64(-1.2, 1.0)), (c64(-1.0, 0.0), c64(2.5, -4.0))] {
            let direct = phi_star_aux(r, s, &p).unwrap();
            for n in 1..=5 {
                depth = depth.max(rel_err(phi_star_aux_recurrence(r, s, &p, n).unwrap(), direct));
            }
        }
    }

    let p = LerchParams::new(2.0, 0.3).unwrap();
    let mut deriv = 0.0_f64;
    let mut primitive = 0.0_f64;
    for s in [c64(0.5, 2.0), c64(2.5, -1.0), c64(-0.5, 6.0)] {
        let h = 1e-4;
        let fd = (lerch_phi_star(s + h, &p).unwrap() - lerch_phi_star(s - h, &p).unwrap()) / (2.0 * h);
        deriv = deriv.max(rel_err(phi_star_deriv(1, s, &p).unwrap(), fd));
        // (φ*)^{(−n)} = (−1)^n φ*_n
        primitive = primitive.max(rel_err(phi_star_deriv(-1, s, &p).unwrap(), -phi_star_aux(c64(1.0, 0.0), s, &p).unwrap()));
        primitive = primitive.max(rel_err(phi_star_deriv(-2, s, &p).unwrap(), phi_star_aux(c64(2.0, 0.0), s, &p).unwrap()));
    }

    let mut continuity = 0.0_f64;
    for a in [1.5, 2.0, 3.0] {
        let p = LerchParams::new(a, 0.0).unwrap();
        let at_one = lerch_phi_star(c64(1.0, 0.0), &p).unwrap();
        for h in [c64(1e-5, 0.0), c64(-1e-5, 0.0), c64(0.0, 1e-5)] {
            continuity = continuity.max((lerch_phi_star(c64(1.0, 0.0) + h, &p).unwrap() - at_one).norm() / h.norm());
        }
    }

    let mut conj = 0.0_f64;
    for _ in 0..10 {
        let a = rng.gen_range(1.2..4.0);
        let lambda = rng.gen_range(0.05..0.95);
        let s = c64(rng.gen_range(-2.0..4.0), rng.gen_range(-15.0..15.0));
        let v = lerch_phi_star(s, &LerchParams::new(a, lambda).unwrap()).unwrap();
        let w = lerch_phi_star(s.conj(), &LerchParams::new(a, 1.0 - lambda).unwrap()).unwrap();
        conj = conj.max(rel_err(v.conj(), w));
    }

    // a difference quotient bounded by a modest constant is continuity with
    // a finite derivative across s = 1
    let pass = shift <= 1e-12 && depth <= 1e-9 && deriv <= 1e-6 && primitive <= 1e-8 && continuity <= 10.0 && conj <= 1e-13;
    let detail = format!(
        "shift {shift:.1e}, depth {depth:.1e}, derivative {deriv:.1e}, primitive {primitive:.1e}, \
         |Δφ*|/|h| at s=1 {continuity:.2}, conjugation {conj:.1e}"
    );
    report(9, "Lerch-core identities", pass, &detail);
}

/// Slope of the upper envelope of `log|f|` against `log t`: the maxima over
/// consecutive log-spaced blocks, fitted by least squares.
fn envelope_exponent(ts: &[f64], vals: &[f64], blocks: usize) -> f64 {
    let per = ts.len() / blocks;
    let pts: Vec<(f64, f64)> = (0..blocks)
        .map(|b| {
            let range = b * per..(b + 1) * per;
            let (i, v) = range
                .map(|i| (i, vals[i]))
                .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
            (ts[i].ln(), v.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn criterion_10_growth_bound() {
    let p = LerchParams::new(2.0, 0.3).unwrap();
    let ts: Vec<f64> = (0..240).map(|k| 10.0 * 20f64.powf(k as f64 / 239.0)).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for sigma in [2.5, 0.5, -0.5] {
        let bound = (2.0 - sigma as f64).floor().max(0.0) + 0.2;
        for r in [c64(0.0, 0.0), c64(-1.0, 0.0), c64(0.5, 0.0)] {
            for sign in [1.0, -1.0] {
                let vals: Vec<f64> = ts.iter().map(|t| phi_star_aux(r, c64(sigma, sign * t), &p).unwrap().norm()).collect();
                let e = envelope_exponent(&ts, &vals, 8);
                ok &= e <= bound;
                if sign > 0.0 && r == c64(0.0, 0.0) {
                    detail.push(format!("σ={sigma} {e:.2}<={bound:.1}"));
                }
            }
        }
    }
    report(10, "vertical growth bound", ok, &detail.join(", "));
}

#[test]
fn criterion_11_determinism() {
    let first: Vec<VerificationReport> = preset_plans("all").unwrap().iter().map(|p| run_verification(p).unwrap()).collect();
    let second: Vec<VerificationReport> = preset_plans("all").unwrap().iter().map(|p| run_verification(p).unwrap()).collect();
    let csv_same = reports_to_csv(&first).into_bytes() == reports_to_csv(&second).into_bytes();
    let data = |rs: &[VerificationReport]| serde_json::to_string(&rs.iter().map(|r| r.data()).collect::<Vec<_>>()).unwrap();
    let json_same = data(&first) == data(&second);
    let detail = format!("{} reports, csv identical {csv_same}, json data identical {json_same}", first.len());
    report(11, "determinism", csv_same && json_same, &detail);
}
