//! Log-gamma, gamma quotients and Pochhammer symbols.

use num_complex::Complex64;

use super::{c64, nonpositive_integer};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos sum for `ℜz ≥ 1/2`.
fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = c64(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + x.ln()
}

/// Stirling series, used once `|z|` is large enough for it to be accurate to
/// machine precision. Keeps the imaginary part on the principal branch with
/// no `2π` jumps at large `|ℑz|`.
fn stirling(z: Complex64) -> Complex64 {
    const B: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let zi = z.inv();
    let z2 = zi * zi;
    let mut series = c64(0.0, 0.0);
    let mut p = zi;
    for b in B {
        series += p * b;
        p *= z2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Principal branch of `log Γ(z)`: continuous on `ℂ` cut along `(−∞, 0]`
/// and real on the positive axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(n as f64));
    }
    if z.norm() > 18.0 && z.re > 0.0 {
        return Ok(stirling(z));
    }
    if z.re >= 0.5 {
        if z.im.abs() > 10.0 {
            // shift up so the Stirling series applies
            let mut acc = c64(0.0, 0.0);
            let mut w = z;
            while w.norm() <= 18.0 {
                acc += w.ln();
                w += 1.0;
            }
            return Ok(stirling(w) - acc);
        }
        return Ok(lanczos(z));
    }
    // shift recurrence: log Γ(z) = log Γ(z+n) − Σ log(z+k); the sum of
    // principal logs follows the branch continuously in ℑz
    let n = (0.5 - z.re).ceil().max(1.0) as usize;
    let mut acc = c64(0.0, 0.0);
    for k in 0..n {
        acc += (z + k as f64).ln();
    }
    Ok(log_gamma(z + n as f64)? - acc)
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z).is_some() {
        return Ok(c64(0.0, 0.0));
    }
    log_gamma(z).map(|l| (-l).exp())
}

/// `∏Γ(num) / ∏Γ(den)`.
///
/// A denominator pole makes the quotient vanish; a numerator pole is an
/// error unless a denominator pole cancels it, in which case the pair is
/// resolved by the reflection limit `Γ(−n+ε)/Γ(−m+ε) → (−1)^{n−m} m!/n!`.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut num_poles: Vec<i64> = Vec::new();
    let mut den_poles: Vec<i64> = Vec::new();
    let mut log_sum = c64(0.0, 0.0);
    for &z in num {
        match nonpositive_integer(z) {
            Some(n) => num_poles.push(n),
            None => log_sum += log_gamma(z)?,
        }
    }
    for &z in den {
        match nonpositive_integer(z) {
            Some(n) => den_poles.push(n),
            None => log_sum -= log_gamma(z)?,
        }
    }
    if den_poles.len() > num_poles.len() {
        return Ok(c64(0.0, 0.0));
    }
    if num_poles.len() > den_poles.len() {
        return Err(Error::NumeratorPole(format!(
            "numerator arguments {:?} hit poles",
            num_poles
        )));
    }
    num_poles.sort_unstable();
    den_poles.sort_unstable();
    let mut factor = 1.0_f64;
    for (&n, &m) in num_poles.iter().zip(den_poles.iter()) {
        // Γ(−n+ε)/Γ(−m+ε)
        let sign = if (n - m).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        factor *= sign * factorial_ratio(m, n);
    }
    let v = log_sum.exp() * factor;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("gamma_ratio"))
    }
}

/// `m!/n!`.
fn factorial_ratio(m: i64, n: i64) -> f64 {
    let (lo, hi, invert) = if m >= n { (n, m, false) } else { (m, n, true) };
    let mut p = 1.0;
    for k in (lo + 1)..=hi {
        p *= k as f64;
    }
    if invert {
        1.0 / p
    } else {
        p
    }
}

/// `(z)_n = Γ(z+n)/Γ(z)` for integer `n` of either sign.
pub fn rising_factorial(z: Complex64, n: i64) -> Result<Complex64> {
    let mut p = c64(1.0, 0.0);
    if n >= 0 {
        for k in 0..n {
            p *= z + k as f64;
        }
        Ok(p)
    } else {
        for k in 1..=(-n) {
            let f = z - k as f64;
            if f.norm() == 0.0 {
                return Err(Error::DivisionByZero);
            }
            p *= f;
        }
        Ok(p.inv())
    }
}
