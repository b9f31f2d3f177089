//! Complex-arithmetic foundation shared by every other module.

pub mod contour;
pub mod gamma;
pub mod quadrature;
pub mod stirling;

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use contour::{
    choose_abscissa, circle_integral, integrate_contour, ContourSpec, GammaFactor, GammaQuotient, Indentation, IndentSide,
};
pub use gamma::{gamma, gamma_ratio, log_gamma, rgamma, rising_factorial};
pub use quadrature::{
    integrate_finite, integrate_finite_try, integrate_interval, integrate_semiinfinite,
    integrate_semiinfinite_try, integrate_vertical_line, EndpointBehavior, QuadratureConfig,
};
pub use stirling::{stirling_poly, stirling_row, StirlingPolynomial};

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rejects NaN/Inf at API boundaries.
pub fn check_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn check_finite_real(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Principal power `base^exponent = exp(exponent · Log base)`.
pub fn cpow(base: Complex64, exponent: Complex64) -> Complex64 {
    if base == Complex64::new(0.0, 0.0) {
        return if exponent.re > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    (exponent * base.ln()).exp()
}

/// Power of a positive real base, `x^w` for `x > 0`.
#[inline]
pub fn rpow(x: f64, w: Complex64) -> Complex64 {
    (w * x.ln()).exp()
}

/// `Some(n)` when `z` is (numerically) the nonpositive integer `-n`.
pub fn nonpositive_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    let scale = 1.0_f64.max(z.re.abs());
    if r <= 0.0 && (z.re - r).abs() <= 1e-13 * scale && z.im.abs() <= 1e-13 * scale {
        Some(-(r as i64))
    } else {
        None
    }
}

/// `Some(n)` when the real number is within `tol` of the integer `n`.
pub fn near_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() < tol {
        Some(r as i64)
    } else {
        None
    }
}

/// `ε(z) = sgn(arg z)`; zero on the positive real axis.
pub fn arg_sign(z: Complex64) -> f64 {
    let a = z.arg();
    if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `e(x) = exp(2πix)`.
#[inline]
pub fn unit_phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// Floor with an exact-integer guard: values within `1e-9` above an integer
/// snap down onto it, values within `1e-9` below snap up onto it.
pub fn guarded_floor(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as i64
    } else {
        x.floor() as i64
    }
}

/// Relative error with the `max(|a|, |b|, 1e-300)` denominator.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}
