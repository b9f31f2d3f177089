use std::f64::consts::PI;

use lerchzeta::asymptotics::*;
use lerchzeta::lerch::{phi_star_deriv, LerchParams};
use lerchzeta::mellin_barnes::{mb_transform, remainder_total};
use lerchzeta::numeric::{c64, rel_err, QuadratureConfig};
use lerchzeta::transforms::*;
use lerchzeta::Complex64;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default().with_rel_tol(1e-12).with_abs_tol(1e-300)
}

fn prm() -> LerchParams {
    LerchParams::new(2.0, 0.3).unwrap()
}

fn pochhammer(x: Complex64, n: usize) -> Complex64 {
    (0..n).fold(c64(1.0, 0.0), |acc, k| acc * (x + k as f64))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Taylor term of `∫ τ^{α−1} e^{−τ} f(s + zτ) dτ / Γ(α)` with `f = (φ*)^{(m)}`.
fn lm_taylor_term(alpha: Complex64, m: i64, s: Complex64, z: Complex64, n: usize) -> Complex64 {
    let d = phi_star_deriv(m + n as i64, s, &prm()).unwrap();
    pochhammer(alpha, n) / factorial(n) * z.powu(n as u32) * d
}

/// `10 |z|^{order} max_n |coefficient · aux value|`.
fn envelope(res: &ExpansionResult, z: Complex64) -> f64 {
    let scale = res
        .terms
        .iter()
        .map(|t| (t.coefficient * t.aux_value).norm())
        .fold(0.0, f64::max);
    10.0 * z.norm().powf(res.predicted_remainder_order) * scale
}

#[test]
fn lm_small_z_terms_are_taylor_terms() {
    let spec = TransformSpec::lm(c64(1.5, 0.0), 0);
    let (s, z) = (c64(2.0, 3.0), Complex64::from_polar(0.05, PI / 6.0));
    let res = expand_small_z(&spec, s, &prm(), z, &TruncationSpec::single(4)).unwrap();
    assert_eq!(res.terms.len(), 4);
    for (n, t) in res.terms.iter().enumerate() {
        let want = lm_taylor_term(spec.alpha, 0, s, z, n);
        assert!(rel_err(t.value, want) < 1e-10, "n={n}: {} vs {want}", t.value);
    }
}

#[test]
fn lm_small_z_error_within_first_omitted_term() {
    let spec = TransformSpec::lm(c64(1.5, 0.0), 0);
    let (s, z) = (c64(2.0, 3.0), Complex64::from_polar(0.05, PI / 6.0));
    let exact = lm_transform(&spec, s, &prm(), z, &cfg()).unwrap();
    let res = expand_small_z(&spec, s, &prm(), z, &TruncationSpec::single(4)).unwrap();
    let omitted = lm_taylor_term(spec.alpha, 0, s, z, 4).norm();
    let err = (exact - res.partial_sum).norm();
    assert!(err <= 10.0 * omitted, "{err:e} vs {omitted:e}");
    assert_eq!(res.predicted_remainder_order, 4.0);
}

#[test]
fn derivative_order_matches_s_derivative() {
    let m0 = TransformSpec::lm(c64(1.5, 0.0), 0);
    let m1 = TransformSpec::lm(c64(1.5, 0.0), 1);
    let (s, z) = (c64(2.0, 3.0), Complex64::from_polar(0.05, PI / 6.0));
    let h = 1e-4;
    let f = |s: Complex64| lm_transform(&m0, s, &prm(), z, &cfg()).unwrap();
    let fd = (f(s + h) - f(s - h)) / (2.0 * h);
    let res = expand_small_z(&m1, s, &prm(), z, &TruncationSpec::single(4)).unwrap();
    let omitted = lm_taylor_term(m1.alpha, 1, s, z, 4).norm();
    let err = (fd - res.partial_sum).norm();
    assert!(err <= 10.0 * omitted + 1e-7, "{err:e} vs {omitted:e}");
}

#[test]
fn lmlm_large_z_against_kernel_quadrature() {
    let spec = TransformSpec::lmlm(c64(1.2, 0.0), c64(0.9, 0.0), 0);
    let (s, z) = (c64(2.0, 3.0), Complex64::from_polar(40.0, PI / 4.0));
    let exact = iterated_transform(&spec, s, &prm(), z, &cfg(), IteratedMode::Kernel).unwrap();
    let res = expand_large_z(&spec, s, &prm(), z, &TruncationSpec::single(3)).unwrap();
    assert!((res.predicted_remainder_order - (-1.2 - 3.0)).abs() < 1e-12);
    let err = (exact - res.partial_sum).norm();
    let bound = envelope(&res, z);
    assert!(err <= bound, "{err:e} vs {bound:e}");
}

#[test]
fn vertical_line_against_contour_integral() {
    let spec = TransformSpec::lm(c64(1.5, 0.0), 0);
    for t in [200.0, -200.0] {
        let z = c64(0.0, t);
        let exact = mb_transform(&spec, c64(2.0, 0.0), &prm(), z, None, &cfg()).unwrap();
        let res = expand_vertical(&spec, 2.0, &prm(), t, &TruncationSpec::single(2)).unwrap();
        let err = (exact - res.partial_sum).norm();
        let bound = envelope(&res, z);
        assert!(err <= bound, "t={t}: {err:e} vs {bound:e}");
    }
}

#[test]
fn rl_stokes_branches_on_both_sides() {
    let spec = TransformSpec::rl(c64(1.2, 0.0), c64(0.8, 0.0), 0);
    let s = c64(4.0, 1.0);
    let trunc = TruncationSpec::split(2, 2);
    for sign in [1.0, -1.0] {
        let z = Complex64::from_polar(3.0, sign * 2.0 * PI / 3.0);
        let exact = rl_transform_continued(&spec, s, &prm(), z, &cfg()).unwrap();
        let res = expand_large_z(&spec, s, &prm(), z, &trunc).unwrap();
        let rem = remainder_total(Theorem::T4, &trunc, &spec, s, &prm(), z, &cfg()).unwrap();
        let e = rel_err(exact, res.partial_sum + rem);
        assert!(e < 1e-8, "sign {sign}: {e:e}");
    }
}

#[test]
fn split_orders_are_independent() {
    let spec = TransformSpec::rl(c64(1.2, 0.0), c64(0.8, 0.0), 0);
    let (s, z) = (c64(4.0, 1.0), Complex64::from_polar(30.0, 2.0 * PI / 3.0));
    let a = expand_large_z(&spec, s, &prm(), z, &TruncationSpec::split(1, 3)).unwrap();
    let b = expand_large_z(&spec, s, &prm(), z, &TruncationSpec::split(3, 1)).unwrap();
    let count = |r: &ExpansionResult, br| r.terms.iter().filter(|t| t.branch == br).count();
    assert_eq!((count(&a, 1), count(&a, 2)), (1, 3));
    assert_eq!((count(&b, 1), count(&b, 2)), (3, 1));
}
