//! Kernel functions of the iterated transforms: `K_ν`, Kummer's `M` and `U`,
//! and Gauss' `₂F₁`.

mod bessel;
mod gauss;
mod kummer;

pub use bessel::bessel_k;
pub use gauss::{gauss_2f1, gauss_2f1_at_complement, gauss_2f1_euler, gauss_2f1_mb, gauss_2f1_series};
pub use kummer::{
    kummer_m, kummer_m_euler, kummer_m_mb, kummer_m_series, kummer_u, kummer_u_integral, kummer_u_mb,
    kummer_u_polar,
};

/// `|Z|` at or below which power series are used.
pub const SERIES_RADIUS: f64 = 0.7;
/// Half-width of the sector on which integral routes along the real axis are
/// trusted without rotation.
pub const INTEGRAL_SECTOR: f64 = std::f64::consts::FRAC_PI_2 - 0.1;
