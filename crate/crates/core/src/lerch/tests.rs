use std::f64::consts::PI;

use super::*;
use crate::numeric::{integrate_semiinfinite, rel_err, EndpointBehavior};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn p(a: f64, lambda: f64) -> LerchParams {
    LerchParams::new(a, lambda).unwrap()
}

/// Plain partial sum of `Σ e(λl)(a+l)^{−s} log^{−r}(a+l)`.
fn direct_series(r: Complex64, s: Complex64, a: f64, lambda: f64, terms: usize) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for l in (0..terms).rev() {
        let x = a + l as f64;
        let e = -s * x.ln() - r * x.ln().ln() + c64(0.0, 2.0 * PI * (lambda * l as f64).fract());
        acc += e.exp();
    }
    acc
}

/// `∫_a^∞ ξ^{−s} log^{−r}ξ dξ`, `σ > 1`, as `∫_0^∞ e^{(1−s)(x+x0)}(x+x0)^{−r} dx`.
fn psi_r_quadrature(r: Complex64, s: Complex64, a: f64) -> Complex64 {
    let x0 = a.ln();
    let w = c64(1.0, 0.0) - s;
    let b = EndpointBehavior::semi_infinite(0.0, s.re - 1.0);
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
    integrate_semiinfinite(|x| (w * (x + x0) - r * (x + x0).ln()).exp(), &b, &cfg).unwrap()
}

/// Hurwitz `ζ(s, a)` for real `s ≠ 1` by Euler-Maclaurin with fixed cut 40.
fn hurwitz_em(s: f64, a: f64) -> f64 {
    let n = 40usize;
    let mut sum: f64 = (0..n).map(|l| (a + l as f64).powf(-s)).sum();
    let x = a + n as f64;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // B_2k/(2k)! times (s)_{2k−1}
    let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let mut fact = 1.0;
    let mut poch = s;
    let mut pow = x.powf(-s - 1.0);
    for (k, bk) in b.iter().enumerate() {
        let k2 = 2 * (k + 1);
        fact *= ((k2 - 1) * k2) as f64;
        sum += bk / fact * poch * pow;
        poch *= (s + k2 as f64 - 1.0) * (s + k2 as f64);
        pow /= x * x;
    }
    sum
}

#[test]
fn params_validation() {
    assert!(LerchParams::new(0.0, 0.1).is_err());
    assert!(LerchParams::new(f64::NAN, 0.1).is_err());
    assert!(p(2.0, 3.0 + 1e-13).lambda_is_integer);
    assert!(!p(2.0, 3.0 + 1e-9).lambda_is_integer);
    assert!((p(2.0, -0.7).lambda_frac() - 0.3).abs() < 1e-15);
}

#[test]
fn psi_examples() {
    assert_eq!(psi_term(c64(2.0, 0.0), c64(1.0, 0.0)).unwrap(), c64(1.0, 0.0));
    assert!((psi_term(c64(3.0, 0.0), c64(2.0, 0.0)).unwrap() - 0.125).norm() < 1e-16);
    assert_eq!(psi_term(c64(1.0, 0.0), c64(2.0, 0.0)), Err(Error::PoleAtOne));
    // ∂_z ψ(s, z) = −s ψ(s+1, z)
    let (s, z, h) = (c64(2.2, 0.0), 1.5, 1e-5);
    let d = (psi_term(s, c64(z + h, 0.0)).unwrap() - psi_term(s, c64(z - h, 0.0)).unwrap()) / (2.0 * h);
    let rhs = -s * psi_term(s + 1.0, c64(z, 0.0)).unwrap();
    assert!((d - rhs).norm() < 1e-9);
}

#[test]
fn riemann_zeta_two() {
    let v = lerch_phi(c64(2.0, 0.0), &p(1.0, 0.0)).unwrap();
    assert!((v.re - PI * PI / 6.0).abs() < 1e-14 && v.im.abs() < 1e-15, "{v}");
    let v = lerch_phi(c64(2.0, 0.0), &p(2.0, 0.0)).unwrap();
    assert!((v.re - (PI * PI / 6.0 - 1.0)).abs() < 1e-14);
}

#[test]
fn periodic_in_lambda() {
    let s = c64(2.5, 0.0);
    let a = lerch_phi(s, &p(1.3, 0.25)).unwrap();
    let b = lerch_phi(s, &p(1.3, 1.25)).unwrap();
    assert!(rel_err(a, b) < 1e-14);
}

#[test]
fn phi_star_at_one() {
    let v = lerch_phi_star(c64(1.0, 0.0), &p(2.0, 0.0)).unwrap();
    let expect = EULER_GAMMA - 1.0 + 2f64.ln();
    assert!((v.re - expect).abs() < 1e-13, "{v} vs {expect}");
    let g = stieltjes_gamma(0, &p(2.0, 0.0)).unwrap();
    assert!((g.re - (expect + 1.0)).abs() < 1e-13);
    assert_eq!(lerch_phi(c64(1.0, 0.0), &p(2.0, 0.0)), Err(Error::PoleAtOne));
}

#[test]
fn phi_star_left_of_one() {
    // ζ*(−1/2, 3) = ζ(−1/2, 3) − 3^{3/2}/(−3/2)
    let v = lerch_phi_star(c64(-0.5, 0.0), &p(3.0, 0.0)).unwrap();
    let expect = hurwitz_em(-0.5, 3.0) - 3f64.powf(1.5) / -1.5;
    assert!((v.re - expect).abs() < 1e-12 * expect.abs(), "{v} vs {expect}");
    // σ ≤ 1 with a ≤ 1
    assert!(matches!(lerch_phi_star(c64(0.5, 0.0), &p(1.0, 0.3)), Err(Error::DomainError(_))));
}

#[test]
fn non_integer_lambda_matches_series() {
    let s = c64(2.3, 0.0);
    let v = lerch_phi_star(s, &p(1.5, 0.3)).unwrap();
    let w = direct_series(c64(0.0, 0.0), s, 1.5, 0.3, 2_000_000);
    assert!(rel_err(v, w) < 1e-10, "{v} vs {w}");
    assert_eq!(v, lerch_phi(s, &p(1.5, 0.3)).unwrap());
}

#[test]
fn aux_with_log_matches_series() {
    let r = c64(1.0, 0.0);
    let s = c64(3.0, 0.0);
    let v = phi_star_aux(r, s, &p(2.0, 0.3)).unwrap();
    let w = direct_series(r, s, 2.0, 0.3, 400_000);
    assert!((v - w).norm() < 1e-12, "{v} vs {w}");
    assert_eq!(phi_star_aux(c64(0.0, 0.0), s, &p(2.0, 0.3)).unwrap(), lerch_phi_star(s, &p(2.0, 0.3)).unwrap());
}

#[test]
fn singular_part_sign() {
    // φ*_r = φ_r − ψ_r for λ ∈ ℤ, checked against the loop contour on ζ*
    let (a, s, r) = (2.5, c64(3.0, 0.4), c64(0.5, 0.3));
    let prm = p(a, 0.0);
    let contour = hadamard_apply(r, |z| lerch_phi_star(z, &prm), s, a.ln()).unwrap();
    let phi_r = direct_series(r, s, a, 0.0, 1_000_000);
    let psi_r = psi_r_quadrature(r, s, a);
    let minus = phi_r - psi_r;
    let plus = phi_r + psi_r;
    assert!(rel_err(contour, minus) < 1e-9, "{contour} vs {minus}");
    assert!(rel_err(contour, plus) > 1e-2);
    let engine = phi_star_aux(r, s, &prm).unwrap();
    assert!(rel_err(engine, minus) < 1e-9);
}

#[test]
fn shift_relation() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..25 {
        let s = c64(rng.gen_range(1.2..4.0), rng.gen_range(-20.0..20.0));
        let a = rng.gen_range(0.2..5.0);
        let lambda = rng.gen_range(-1.0..1.0);
        let lhs = lerch_phi(s, &p(a, lambda)).unwrap();
        let rhs = (-s * a.ln()).exp() + unit_phase_of(lambda) * lerch_phi(s, &p(a + 1.0, lambda)).unwrap();
        assert!(rel_err(lhs, rhs) < 1e-12, "s={s} a={a} λ={lambda}");
    }
}

fn unit_phase_of(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

#[test]
fn conjugation_symmetry() {
    for (s, a, lambda) in [(c64(0.3, 7.0), 2.2, 0.31), (c64(-2.0, -3.0), 1.7, 0.0), (c64(1.0, 0.0), 3.0, 0.8)] {
        let v = lerch_phi_star(s, &p(a, lambda)).unwrap();
        let w = lerch_phi_star(s.conj(), &p(a, -lambda)).unwrap();
        assert!(rel_err(v.conj(), w) < 1e-14, "{v} vs {w}");
    }
}

#[test]
fn continuity_at_one() {
    let prm = p(2.0, 0.0);
    let at1 = lerch_phi_star(c64(1.0, 0.0), &prm).unwrap();
    let mut consts = Vec::new();
    for h in [1e-3, 1e-4] {
        let d = (lerch_phi_star(c64(1.0 + h, 0.0), &prm).unwrap() - at1).norm()
            + (lerch_phi_star(c64(1.0 - h, 0.0), &prm).unwrap() - at1).norm();
        consts.push(d / h);
    }
    assert!((consts[0] / consts[1] - 1.0).abs() < 0.01, "{consts:?}");
}

#[test]
fn derivative_in_a() {
    // ∂_a φ*(s, a, λ) = −s φ*(s+1, a, λ)
    let (s, a, h) = (c64(0.7, 2.0), 2.3, 1e-4);
    for lambda in [0.0, 0.4] {
        let d = (lerch_phi_star(s, &p(a + h, lambda)).unwrap() - lerch_phi_star(s, &p(a - h, lambda)).unwrap())
            / (2.0 * h);
        let rhs = -s * lerch_phi_star(s + 1.0, &p(a, lambda)).unwrap();
        assert!(rel_err(d, rhs) < 1e-7, "λ={lambda}: {d} vs {rhs}");
    }
}

#[test]
fn first_derivative_termwise() {
    // (ζ*)′(3, 2) = −Σ log(2+l)(2+l)^{−3} − ∂_s ψ(s, 2)
    let v = phi_star_deriv(1, c64(3.0, 0.0), &p(2.0, 0.0)).unwrap();
    let terms = 1_000_000;
    let x = 2.0 + terms as f64;
    // Euler-Maclaurin tail of the partial sum: ∫_X^∞ log ξ ξ^{−3} dξ − f(X)/2
    let tail = (2.0 * x.ln() + 1.0) / (4.0 * x * x) - 0.5 * x.ln() / x.powi(3);
    let series = -(direct_series(c64(-1.0, 0.0), c64(3.0, 0.0), 2.0, 0.0, terms) + tail);
    // ψ(s, 2) = 2^{1−s}/(s−1), ∂_s at 3 = −(log 2)/4/2 − 1/4/4
    let dpsi = -2f64.ln() * 0.25 / 2.0 - 0.25 / 4.0;
    let expect = series - dpsi;
    assert!(rel_err(v, expect) < 1e-10, "{v} vs {expect}");
}

#[test]
fn primitive_termwise() {
    // −∫₀^∞ ζ*(3+u, 4) du = −(Σ (4+l)^{−3}/log(4+l) − ∫_4^∞ ξ^{−3}/log ξ dξ)
    let v = phi_star_deriv(-1, c64(3.0, 0.0), &p(4.0, 0.0)).unwrap();
    let r = c64(1.0, 0.0);
    let expect = -(direct_series(r, c64(3.0, 0.0), 4.0, 0.0, 1_000_000) - psi_r_quadrature(r, c64(3.0, 0.0), 4.0));
    assert!(rel_err(v, expect) < 1e-9, "{v} vs {expect}");
}

#[test]
fn hadamard_integer_orders() {
    let prm = p(2.0, 0.3);
    let s = c64(0.8, 1.5);
    let f = |z| lerch_phi_star(z, &prm);
    let h = 1e-4;
    let fd = (f(s + h).unwrap() - f(s - h).unwrap()) / (2.0 * h);
    let d = hadamard_apply(c64(-1.0, 0.0), f, s, 2f64.ln()).unwrap();
    assert!(rel_err(d, -fd) < 1e-6);
    let i1 = hadamard_apply(c64(1.0, 0.0), f, s, 2f64.ln()).unwrap();
    let prim = phi_star_deriv(-1, s, &prm).unwrap();
    assert!(rel_err(i1, -prim) < 1e-8, "{i1} vs {prim}");
}

#[test]
fn recurrence_depth_independent() {
    let (r, s) = (c64(0.5, 1.0), c64(0.2, 2.0));
    for lambda in [0.3, 0.0] {
        let prm = p(2.0, lambda);
        let v3 = phi_star_aux_recurrence(r, s, &prm, 3).unwrap();
        let v6 = phi_star_aux_recurrence(r, s, &prm, 6).unwrap();
        let direct = phi_star_aux(r, s, &prm).unwrap();
        assert!(rel_err(v3, v6) < 1e-9, "λ={lambda}: {v3} vs {v6}");
        assert!(rel_err(v6, direct) < 1e-9, "λ={lambda}: {v6} vs {direct}");
    }
    assert_eq!(
        phi_star_aux_recurrence(r, s, &p(2.0, 0.3), 13),
        Err(Error::RecursionDepthExceeded(13))
    );
}

#[test]
fn stieltjes_first() {
    let prm = p(2.0, 0.0);
    let g1 = stieltjes_gamma(1, &prm).unwrap();
    let d = phi_star_deriv(1, c64(1.0, 0.0), &prm).unwrap();
    // φ*_{−1} = −(φ*)′, so the literal formula gives (ζ*)′(1, 2) − log 2
    assert!(rel_err(g1, d - 2f64.ln()) < 1e-13, "{g1} vs {d}");
}
