//! Evaluation of `φ*_r(s, a, λ)` for every complex `(r, s)`.
//!
//! Write `f(x) = (a+x)^{−s} log^{−r}(a+x)` and `A = a + M`.
//!
//! * `λ ∈ ℤ`: Euler-Maclaurin at `M`,
//!   `ζ*_r = Σ_{l<M} f(l) − ∫_a^A ξ^{−s}log^{−r}ξ dξ + f(M)/2 − Σ_k B_{2k}/(2k)! f^{(2k−1)}(M)`.
//! * `λ ∉ ℤ`: with `q = e(λ)`,
//!   `φ_r = Σ_{l<M} q^l f(l) + q^M A^{−s}L^{−r} Σ_j g_j A^{−j} Li_{−j}(q)`,
//!   where `f(A + h) = A^{−s}L^{−r} Σ_j g_j (h/A)^j` and `L = log A`.
//!
//! Both right sides are entire in `(r, s)`, so they give the continuation to
//! `σ ≤ 1` directly. `M` is picked so the tail series contracts by a fixed
//! ratio per term.
//!
//! For `r = 0` and `σ < 0` the head terms grow like `A^{−σ}` and cancel, so
//! that case goes through Lerch's transformation formula instead
//! (Hurwitz's formula for integer `λ`), after the shift relation has moved
//! `a` into `(0, 1]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::LerchParams;
use crate::error::{Error, Result};
use crate::numeric::{c64, check_finite, log_gamma, unit_phase, QuadratureConfig};
use crate::numeric::quadrature::adaptive_gauss_kronrod;

const TWO_PI: f64 = 2.0 * PI;
const MAX_TERMS: usize = 64;
const MAX_M: usize = 200_000;

/// Taylor coefficients `g_j`, `j < n`, of `(1+x)^{−s}(1 + log(1+x)/L)^{−r}`.
fn taylor_coefficients(s: Complex64, r: Complex64, log_a: f64, n: usize) -> Vec<Complex64> {
    let zero = c64(0.0, 0.0);
    // binomial series of (1+x)^{−s}
    let mut bin = vec![zero; n];
    bin[0] = c64(1.0, 0.0);
    for j in 1..n {
        bin[j] = bin[j - 1] * (-s - (j - 1) as f64) / j as f64;
    }
    if r == zero {
        return bin;
    }
    // ε = log(1+x)/L
    let mut e = vec![0.0_f64; n];
    for (k, ek) in e.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        *ek = sign / (k as f64 * log_a);
    }
    // P = (1+ε)^{−r} from (1+ε)P′ = −r ε′ P
    let mut p = vec![zero; n];
    p[0] = c64(1.0, 0.0);
    for j in 1..n {
        let mut acc = zero;
        for k in 1..=j {
            acc -= r * (k as f64 * e[k]) * p[j - k];
        }
        for k in 1..j {
            acc -= p[j - k] * (e[k] * (j - k) as f64);
        }
        p[j] = acc / j as f64;
    }
    let mut g = vec![zero; n];
    for j in 0..n {
        let mut acc = zero;
        for i in 0..=j {
            acc += bin[i] * p[j - i];
        }
        g[j] = acc;
    }
    g
}

/// `B_{2k}/(2k)` for `k = 1..=n`.
fn bernoulli_over_index(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    // c_k = (2k−1)!/(2π)^{2k}
    let mut c = 1.0 / (TWO_PI * TWO_PI);
    for k in 1..=n {
        let kk = 2 * k as i32;
        // the 40-term sum is short by about 40^{1−2k}/(2k−1): exact values
        // below 2k = 10
        let pi2 = PI * PI;
        let zeta = match k {
            1 => pi2 / 6.0,
            2 => pi2 * pi2 / 90.0,
            3 => pi2 * pi2 * pi2 / 945.0,
            4 => pi2 * pi2 * pi2 * pi2 / 9450.0,
            _ => (1..=40).rev().map(|m| (m as f64).powi(-kk)).sum(),
        };
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out.push(sign * 2.0 * zeta * c);
        c *= (2 * k) as f64 * (2 * k + 1) as f64 / (TWO_PI * TWO_PI);
    }
    out
}

/// `Li_{−j}(e(λ))` with the `l = 0` term counted for `j = 0`,
/// i.e. `T_j = Σ_{l≥0} l^j q^l` in the Abel sense, for `j < n`.
fn polylog_negative(lambda_frac: f64, n: usize) -> Vec<Complex64> {
    let q = unit_phase(lambda_frac);
    let one = c64(1.0, 0.0);
    let mut t = vec![c64(0.0, 0.0); n];
    // recurrence (1−q)T_j = δ_{j0} + q Σ_{i<j} C(j,i) T_i: stable for small j
    let direct = n.min(9);
    for j in 0..direct {
        let mut acc = if j == 0 { one } else { c64(0.0, 0.0) };
        let mut binom = 1.0;
        for (i, ti) in t.iter().enumerate().take(j) {
            acc += q * *ti * binom;
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
        t[j] = acc / (one - q);
    }
    // Li_{−j}(e(λ)) = j! Σ_k (2πi(k−λ))^{−j−1}, |k| ≤ 60 is plenty for j ≥ 9
    if n > direct {
        let inv: Vec<Complex64> = (-60_i64..=60)
            .map(|k| c64(0.0, TWO_PI * (k as f64 - lambda_frac)).inv())
            .collect();
        let mut cur: Vec<Complex64> = inv.iter().map(|x| x.powi(direct as i32 + 1)).collect();
        let mut fact = (1..direct).fold(1.0_f64, |f, k| f * k as f64);
        for (j, tj) in t.iter_mut().enumerate().skip(direct) {
            fact *= j as f64;
            // smallest terms first
            let mut acc = c64(0.0, 0.0);
            for d in (0..=60).rev() {
                acc += cur[60 + d];
                if d > 0 {
                    acc += cur[60 - d];
                }
            }
            *tj = acc * fact;
            for (c, i) in cur.iter_mut().zip(inv.iter()) {
                *c *= i;
            }
        }
    }
    t
}

/// `∫_a^A ξ^{−s} log^{−r} ξ dξ = ∫_{log a}^{log A} e^{(1−s)x} x^{−r} dx`.
fn log_power_integral(s: Complex64, r: Complex64, a: f64, big_a: f64) -> Result<Complex64> {
    let (x0, x1) = (a.ln(), big_a.ln());
    let w = c64(1.0, 0.0) - s;
    if r == c64(0.0, 0.0) {
        // e^{w x0} (e^{w(x1−x0)} − 1)/w without cancellation near w = 0
        let z = w * (x1 - x0);
        let ratio = if z.norm() < 0.25 {
            let mut term = c64(1.0, 0.0);
            let mut sum = term;
            for k in 2..30 {
                term *= z / k as f64;
                sum += term;
            }
            sum
        } else {
            (z.exp() - 1.0) / z
        };
        return Ok((w * x0).exp() * ratio * (x1 - x0));
    }
    if x0 <= 0.0 {
        return Err(Error::DomainError(format!(
            "log^(-r) needs a > 1 for r != 0, got a = {a}"
        )));
    }
    let oscillation = w.im.abs() * (x1 - x0) + r.im.abs() * (x1 / x0).ln() + r.re.abs() * 0.1;
    let panels = ((oscillation / 2.0).ceil() as usize + 2).min(4000);
    // per-panel error floor is 50ε|panel|, so 5e-14 is about as tight as
    // the estimate can certify
    let cfg = QuadratureConfig {
        rel_tol: 5e-14,
        abs_tol: 1e-300,
        max_refinement_depth: 12,
        max_nodes: 60_000,
    };
    let g = |x: f64| Ok((w * x - r * x.ln()).exp());
    match adaptive_gauss_kronrod(g, x0, x1, panels, &cfg) {
        Ok((v, _)) => Ok(v),
        Err(_) => {
            let loose = QuadratureConfig { rel_tol: 1e-12, ..cfg };
            adaptive_gauss_kronrod(g, x0, x1, panels, &loose).map(|p| p.0)
        }
    }
}

/// `Σ_{l<M} e(λl) f(l)`.
fn head_sum(s: Complex64, r: Complex64, a: f64, lambda_frac: f64, m: usize, with_log: bool) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    // summed from the smallest terms up when σ > 0
    let order: Box<dyn Iterator<Item = usize>> = if s.re > 0.0 {
        Box::new((0..m).rev())
    } else {
        Box::new(0..m)
    };
    for l in order {
        let x = a + l as f64;
        let lx = x.ln();
        let mut e = -s * lx;
        if with_log {
            e -= r * lx.ln();
        }
        let phase = if lambda_frac == 0.0 {
            c64(1.0, 0.0)
        } else {
            unit_phase((lambda_frac * l as f64).fract())
        };
        acc += e.exp() * phase;
    }
    acc
}

/// `φ(s, a, λ)` for `σ < 0` from values at `1 − s`.
///
/// With `a = α + k`, `0 < α ≤ 1`, `s′ = 1 − s`, `G = Γ(s′)(2π)^{−s′}`:
/// `φ(s, α, λ) = G{e(s′/4 − αλ) φ(s′, λ, −α) + e(−s′/4 + α(1−λ)) φ(s′, 1−λ, α)}`,
/// and for integer `λ`
/// `ζ(s, α) = G{e(−s′/4) F(α) + e(s′/4) F(−α)}`, `F(x) = e(x) φ(s′, 1, x)`.
/// Then `φ(s, a, λ) = e(−kλ){φ(s, α, λ) − Σ_{l<k} e(λl)(α+l)^{−s}}`.
fn reflected(s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    let one = c64(1.0, 0.0);
    let s1 = one - s;
    let k = (prm.a.ceil() - 1.0).max(0.0);
    let alpha = prm.a - k;
    let lam = prm.lambda_frac();
    // full φ at 1 − s, where the direct sum is accurate
    let right = |a: f64, lambda: f64| -> Result<Complex64> {
        let p = LerchParams::new(a, lambda)?;
        let star = aux_zeta(c64(0.0, 0.0), s1, &p)?;
        Ok(if p.lambda_is_integer {
            star + ((one - s1) * a.ln()).exp() / (s1 - 1.0)
        } else {
            star
        })
    };
    // G e(±s′/4) in log form, since each factor alone can overflow
    let log_g = log_gamma(s1)? - s1 * TWO_PI.ln();
    let quarter = c64(0.0, PI / 2.0) * s1;
    let up = (log_g + quarter).exp();
    let down = (log_g - quarter).exp();
    let base = if prm.lambda_is_integer {
        let f = |x: f64| -> Result<Complex64> {
            let x = x.rem_euclid(1.0);
            Ok(unit_phase(x) * right(1.0, x)?)
        };
        down * f(alpha)? + up * f(-alpha)?
    } else {
        up * unit_phase(-alpha * lam) * right(lam, (-alpha).rem_euclid(1.0))?
            + down * unit_phase(alpha * (1.0 - lam)) * right(1.0 - lam, alpha)?
    };
    let mut head = c64(0.0, 0.0);
    for l in 0..k as usize {
        head += unit_phase((lam * l as f64).fract()) * (-s * (alpha + l as f64).ln()).exp();
    }
    Ok(unit_phase(-(lam * k).fract()) * (base - head))
}

/// `φ*_r(s, a, λ)`; `with_log = false` means the `r = 0` path where `a ≤ 1`
/// is also allowed.
pub(crate) fn aux_zeta(r: Complex64, s: Complex64, prm: &LerchParams) -> Result<Complex64> {
    check_finite(r, "r")?;
    check_finite(s, "s")?;
    let a = prm.a;
    let with_log = r != c64(0.0, 0.0);
    if !with_log && s.re < 0.0 {
        let full = reflected(s, prm)?;
        return check_finite(
            if prm.lambda_is_integer {
                full - ((c64(1.0, 0.0) - s) * a.ln()).exp() / (s - 1.0)
            } else {
                full
            },
            "aux zeta",
        );
    }
    let lambda_frac = prm.lambda_frac();
    let size = s.norm() + r.norm();
    let target = 2.5 * size + 50.0;
    let dist = prm.lambda_distance();
    let big_a_min = if prm.lambda_is_integer {
        target / TWO_PI
    } else {
        target / (TWO_PI * dist)
    };
    // log(A) must stay away from 0 for the log factor: A ≥ 3 suffices
    let big_a_min = big_a_min.max(3.0).max(a + 4.0);
    let m = (big_a_min - a).ceil().max(0.0) as usize;
    if m > MAX_M {
        return Err(Error::NonConvergence {
            what: "aux zeta: λ too close to an integer for the polylog tail",
            estimate: dist,
        });
    }
    let big_a = a + m as f64;
    let log_a = big_a.ln();
    let pref = (-s * log_a - r * log_a.ln()).exp();

    let head = head_sum(s, r, a, lambda_frac, m, with_log);
    let g = taylor_coefficients(s, r, log_a, MAX_TERMS);

    let value = if prm.lambda_is_integer {
        let b = bernoulli_over_index(MAX_TERMS / 2 - 1);
        let mut tail = c64(0.5, 0.0);
        let mut power = 1.0 / big_a;
        let mut small = 0;
        for (k, bk) in b.iter().enumerate() {
            let j = 2 * k + 1;
            let term = g[j] * (bk * power);
            tail -= term;
            power /= big_a * big_a;
            if (term * pref).norm() <= 1e-17 * (head.norm() + (tail * pref).norm()) {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        head + tail * pref - log_power_integral(s, r, a, big_a)?
    } else {
        let t = polylog_negative(lambda_frac, MAX_TERMS);
        let mut tail = c64(0.0, 0.0);
        let mut power = 1.0;
        let mut small = 0;
        for j in 0..MAX_TERMS {
            let term = g[j] * t[j] * power;
            tail += term;
            power /= big_a;
            if (term * pref).norm() <= 1e-17 * (head.norm() + (tail * pref).norm()) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        let qm = unit_phase((lambda_frac * m as f64).fract());
        head + qm * pref * tail
    };
    check_finite(value, "aux zeta")
}
