//! Stirling polynomials of the first kind `𝔰_m^n(x)`, defined by
//! `(x+y)_n = Σ_m 𝔰_m^n(x) y^m`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `coefficients[k]` is the coefficient of `x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StirlingPolynomial {
    pub m: usize,
    pub n: usize,
    pub coefficients: Vec<f64>,
}

impl StirlingPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != 0.0)
    }

    /// Horner evaluation at complex `x`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }
}

const EXACT_LIMIT: usize = 20;

/// Coefficient grid `c[j][k]` of `x^k y^j` in `∏_{i<n} (x + y + i)`.
fn expand_exact(n: usize) -> Vec<Vec<i128>> {
    let mut c = vec![vec![0_i128; n + 1]; n + 1];
    c[0][0] = 1;
    for i in 0..n {
        let mut next = vec![vec![0_i128; n + 1]; n + 1];
        for j in 0..=i {
            for k in 0..=(i - j) {
                let v = c[j][k];
                if v == 0 {
                    continue;
                }
                next[j][k] += v * i as i128;
                next[j][k + 1] += v;
                next[j + 1][k] += v;
            }
        }
        c = next;
    }
    c
}

fn expand_float(n: usize) -> Vec<Vec<f64>> {
    let mut c = vec![vec![0.0_f64; n + 1]; n + 1];
    c[0][0] = 1.0;
    for i in 0..n {
        let mut next = vec![vec![0.0_f64; n + 1]; n + 1];
        for j in 0..=i {
            for k in 0..=(i - j) {
                let v = c[j][k];
                next[j][k] += v * i as f64;
                next[j][k + 1] += v;
                next[j + 1][k] += v;
            }
        }
        c = next;
    }
    c
}

/// `𝔰_m^n(x)`: the `y^m` coefficient of `(x+y)_n`. Exact integer arithmetic
/// for `n ≤ 20`.
pub fn stirling_poly(m: usize, n: usize) -> StirlingPolynomial {
    if m > n {
        return StirlingPolynomial {
            m,
            n,
            coefficients: vec![0.0],
        };
    }
    let coefficients = if n <= EXACT_LIMIT {
        expand_exact(n)[m][..=(n - m)]
            .iter()
            .map(|&v| v as f64)
            .collect()
    } else {
        expand_float(n)[m][..=(n - m)].to_vec()
    };
    StirlingPolynomial { m, n, coefficients }
}

/// All `𝔰_m^n` for `0 ≤ m ≤ n`, sharing one expansion.
pub fn stirling_row(n: usize) -> Vec<StirlingPolynomial> {
    let grid: Vec<Vec<f64>> = if n <= EXACT_LIMIT {
        expand_exact(n)
            .into_iter()
            .map(|row| row.into_iter().map(|v| v as f64).collect())
            .collect()
    } else {
        expand_float(n)
    };
    (0..=n)
        .map(|m| StirlingPolynomial {
            m,
            n,
            coefficients: grid[m][..=(n - m)].to_vec(),
        })
        .collect()
}
