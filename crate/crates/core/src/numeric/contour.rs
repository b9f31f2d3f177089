//! Gamma quotients in the integration variable `w` and the (indented)
//! vertical contours they are integrated along.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_ratio, log_gamma};
use super::nonpositive_integer;
use super::quadrature::{integrate_vertical_line, QuadratureConfig};
use crate::error::{Error, Result};

/// `Γ(offset + sign·w)` with `sign ∈ {−1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub sign: i8,
    pub offset: Complex64,
}

impl GammaFactor {
    /// `Γ(offset + w)`.
    pub fn plus(offset: Complex64) -> Self {
        Self { sign: 1, offset }
    }

    /// `Γ(offset − w)`.
    pub fn minus(offset: Complex64) -> Self {
        Self { sign: -1, offset }
    }

    /// `Γ(offset)`, independent of `w`.
    pub fn constant(offset: Complex64) -> Self {
        Self { sign: 0, offset }
    }

    pub fn arg(&self, w: Complex64) -> Complex64 {
        self.offset + w * f64::from(self.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GammaQuotient {
    pub numerator: Vec<GammaFactor>,
    pub denominator: Vec<GammaFactor>,
}

/// Which side of the contour a pole family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndentSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Indentation {
    pub center: Complex64,
    pub radius: f64,
    pub side: IndentSide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub u: f64,
    pub decay_rate: f64,
    pub poly_degree: f64,
    pub indentations: Vec<Indentation>,
}

const MAX_INDENTATIONS: usize = 64;
const MIN_LINE_GAP: f64 = 1e-6;

impl GammaQuotient {
    pub fn new(numerator: Vec<GammaFactor>, denominator: Vec<GammaFactor>) -> Self {
        Self {
            numerator,
            denominator,
        }
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let num: Vec<Complex64> = self.numerator.iter().map(|f| f.arg(w)).collect();
        let den: Vec<Complex64> = self.denominator.iter().map(|f| f.arg(w)).collect();
        gamma_ratio(&num, &den)
    }

    /// `Q(w)·e^{log_power}`, combined in log space so that an underflowing
    /// quotient and an overflowing power do not meet as `0·∞`.
    pub fn eval_power(&self, w: Complex64, log_power: Complex64) -> Result<Complex64> {
        let num: Vec<Complex64> = self.numerator.iter().map(|f| f.arg(w)).collect();
        let den: Vec<Complex64> = self.denominator.iter().map(|f| f.arg(w)).collect();
        if num.iter().chain(&den).any(|&z| nonpositive_integer(z).is_some()) {
            return Ok(gamma_ratio(&num, &den)? * log_power.exp());
        }
        let mut l = log_power;
        for &z in &num {
            l += log_gamma(z)?;
        }
        for &z in &den {
            l -= log_gamma(z)?;
        }
        Ok(l.exp())
    }

    /// Exponential decay rate in `|ℑw|` of the quotient alone.
    pub fn decay_rate(&self) -> f64 {
        let count = |v: &[GammaFactor]| v.iter().filter(|f| f.sign != 0).count() as f64;
        FRAC_PI_2 * (count(&self.numerator) - count(&self.denominator))
    }

    /// Exponent of the algebraic factor `|ℑw|^p` on the line `ℜw = u`.
    pub fn poly_degree(&self, u: f64) -> f64 {
        let deg = |v: &[GammaFactor]| {
            v.iter()
                .filter(|f| f.sign != 0)
                .map(|f| f.offset.re + f64::from(f.sign) * u - 0.5)
                .sum::<f64>()
        };
        deg(&self.numerator) - deg(&self.denominator)
    }

    /// Numerator poles whose real part lies in `[lo, hi]`, tagged with the
    /// side of the contour they belong to.
    pub fn poles_between(&self, lo: f64, hi: f64) -> Vec<(Complex64, IndentSide)> {
        let mut out = Vec::new();
        for f in &self.numerator {
            match f.sign {
                // offset + w = −k
                1 => {
                    let first = -f.offset;
                    let k0 = (first.re - hi).ceil().max(0.0) as i64;
                    let mut k = k0;
                    while first.re - k as f64 >= lo {
                        out.push((first - k as f64, IndentSide::Left));
                        k += 1;
                    }
                }
                // offset − w = −k
                -1 => {
                    let first = f.offset;
                    let k0 = (lo - first.re).ceil().max(0.0) as i64;
                    let mut k = k0;
                    while first.re + k as f64 <= hi {
                        out.push((first + k as f64, IndentSide::Right));
                        k += 1;
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Poles that sit on the wrong side of the straight line `ℜw = u`.
    fn misplaced_poles(&self, u: f64) -> Result<Vec<(Complex64, IndentSide)>> {
        let mut out = Vec::new();
        for f in &self.numerator {
            match f.sign {
                1 => {
                    let first = -f.offset;
                    let mut k = 0;
                    while first.re - k as f64 > u - MIN_LINE_GAP {
                        out.push((first - k as f64, IndentSide::Left));
                        k += 1;
                        if out.len() > MAX_INDENTATIONS {
                            return Err(Error::ContourOnPole(
                                "too many poles on the wrong side of the line".into(),
                            ));
                        }
                    }
                }
                -1 => {
                    let first = f.offset;
                    let mut k = 0;
                    while first.re + (k as f64) < u + MIN_LINE_GAP {
                        out.push((first + k as f64, IndentSide::Right));
                        k += 1;
                        if out.len() > MAX_INDENTATIONS {
                            return Err(Error::ContourOnPole(
                                "too many poles on the wrong side of the line".into(),
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    }
}

impl ContourSpec {
    /// A straight line with no indentations.
    pub fn line(u: f64, decay_rate: f64, poly_degree: f64) -> Self {
        Self {
            u,
            decay_rate,
            poly_degree,
            indentations: Vec::new(),
        }
    }

    /// Contour along `ℜw = u` that keeps every left pole family of `q` to the
    /// left and every right family to the right, indenting around poles
    /// that the straight line would put on the wrong side.
    pub fn separating(q: &GammaQuotient, u: f64, decay_rate: f64, poly_degree: f64) -> Result<Self> {
        let nearby = q.poles_between(u - 3.0, u + 3.0);
        for (p, _) in &nearby {
            if (p.re - u).abs() < MIN_LINE_GAP && p.im.abs() < 1e3 {
                return Err(Error::ContourOnPole(format!(
                    "pole at {p} lies on the line re(w) = {u}"
                )));
            }
        }
        let misplaced = q.misplaced_poles(u)?;
        let all_poles = q.poles_between(u - 40.0, u + 40.0);
        let mut indentations = Vec::with_capacity(misplaced.len());
        for (p, side) in misplaced {
            let mut nearest = f64::INFINITY;
            for (other, other_side) in &all_poles {
                let d = (other - p).norm();
                if d < 1e-9 {
                    if *other_side != side {
                        return Err(Error::ContourOnPole(format!(
                            "left and right pole families collide at {p}"
                        )));
                    }
                    continue;
                }
                nearest = nearest.min(d);
            }
            indentations.push(Indentation {
                center: p,
                radius: 0.25_f64.min(0.45 * nearest),
                side,
            });
        }
        Ok(Self {
            u,
            decay_rate,
            poly_degree,
            indentations,
        })
    }
}

/// `(1/2πi) ∮ g` counterclockwise on a circle, by the trapezoid rule.
pub fn circle_integral<G>(g: &G, center: Complex64, radius: f64) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let rule = |n: usize| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let e = Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64);
            acc += g(center + e)? * e;
        }
        Ok(acc / n as f64)
    };
    let mut coarse = rule(32)?;
    for n in [64, 128, 256] {
        let fine = rule(n)?;
        if (fine - coarse).norm() <= 1e-13 * fine.norm().max(1e-300) {
            return Ok(fine);
        }
        coarse = fine;
    }
    Ok(coarse)
}

/// `(1/2πi) ∫_C g(w) dw` along the (possibly indented) contour.
pub fn integrate_contour<G>(g: &G, spec: &ContourSpec, cfg: &QuadratureConfig) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let mut total = integrate_vertical_line(g, spec.u, spec.decay_rate, spec.poly_degree, cfg)?;
    for ind in &spec.indentations {
        let loop_value = circle_integral(g, ind.center, ind.radius)?;
        match ind.side {
            IndentSide::Left => total += loop_value,
            IndentSide::Right => total -= loop_value,
        }
    }
    Ok(total)
}

/// Abscissa in the open window `(lo, hi)` farthest from the listed pole real
/// parts. A point within `1e-9` of nothing is fine; the window must be
/// nonempty.
pub fn choose_abscissa(lo: f64, hi: f64, pole_re: &[f64], what: &str) -> Result<f64> {
    if !(hi - lo > 1e-9) {
        return Err(Error::EmptyWindow(format!("{what}: ({lo}, {hi})")));
    }
    let mut cuts: Vec<f64> = pole_re
        .iter()
        .copied()
        .filter(|x| *x > lo && *x < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    let mut best = (0.5 * (lo + hi), -1.0);
    for pair in cuts.windows(2) {
        let gap = pair[1] - pair[0];
        if gap > best.1 {
            best = (0.5 * (pair[0] + pair[1]), gap);
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c64;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    /// `(1+Z)^{−α} = (1/2πi) ∫ Γ[α+w, −w; α] Z^w dw`.
    fn binomial_quotient(alpha: Complex64) -> GammaQuotient {
        GammaQuotient::new(
            vec![GammaFactor::plus(alpha), GammaFactor::minus(c64(0.0, 0.0))],
            vec![GammaFactor::constant(alpha)],
        )
    }

    #[test]
    fn binomial_mellin_barnes() {
        let alpha = c64(1.0, 0.0);
        let q = binomial_quotient(alpha);
        let z = c64(1.0, 0.0);
        let g = |w: Complex64| q.eval_power(w, w * z.ln());
        let spec = ContourSpec::line(-0.5, q.decay_rate() - z.arg().abs(), q.poly_degree(-0.5));
        let v = integrate_contour(&g, &spec, &cfg()).unwrap();
        assert!((v - c64(0.5, 0.0)).norm() < 1e-10, "{v}");
    }

    #[test]
    fn indentation_restores_misplaced_pole() {
        // line at u = 0.5 puts the pole w = 0 of Γ(−w) on the left; the
        // indentation must add it back
        let alpha = c64(1.3, 0.4);
        let q = binomial_quotient(alpha);
        let z = c64(0.6, 0.8);
        let g = |w: Complex64| q.eval_power(w, w * z.ln());
        let straight = ContourSpec::line(-0.5, q.decay_rate() - z.arg().abs(), 1.0);
        let bent = ContourSpec::separating(&q, 0.5, q.decay_rate() - z.arg().abs(), 1.0).unwrap();
        assert_eq!(bent.indentations.len(), 1);
        let a = integrate_contour(&g, &straight, &cfg()).unwrap();
        let b = integrate_contour(&g, &bent, &cfg()).unwrap();
        let expect = (-alpha * (z + 1.0).ln()).exp();
        assert!((a - expect).norm() < 1e-9 * expect.norm());
        assert!((b - expect).norm() < 1e-9 * expect.norm());
    }

    #[test]
    fn collision_rejected() {
        let q = GammaQuotient::new(
            vec![GammaFactor::plus(c64(0.0, 0.0)), GammaFactor::minus(c64(0.0, 0.0))],
            vec![],
        );
        assert!(matches!(
            ContourSpec::separating(&q, 0.5, 1.0, 0.0),
            Err(Error::ContourOnPole(_))
        ));
    }

    #[test]
    fn abscissa_choice() {
        assert!(matches!(choose_abscissa(0.0, 0.0, &[], "x"), Err(Error::EmptyWindow(_))));
        let u = choose_abscissa(-1.0, 0.0, &[-0.8], "x").unwrap();
        assert!((u + 0.4).abs() < 1e-12);
    }

    #[test]
    fn circle_residue() {
        // Res_{w=0} Γ(w) = 1
        let g = |w: Complex64| Ok(crate::numeric::gamma::gamma(w)?);
        let r = circle_integral(&g, c64(0.0, 0.0), 0.25).unwrap();
        assert!((r - c64(1.0, 0.0)).norm() < 1e-12);
    }
}
