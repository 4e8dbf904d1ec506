use std::f64::consts::PI;

use serde::Serialize;

/// Second-order expansion of the Minkowski-to-Rindler coefficients
/// `α_mn = α⁰ + α¹h + α²h²`, `β_mn = β⁰ + β¹h + β²h²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSeries {
    pub m: usize,
    pub n: usize,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl CoefficientSeries {
    pub fn alpha(&self, h: f64) -> f64 {
        self.alpha0 + h * (self.alpha1 + h * self.alpha2)
    }

    pub fn beta(&self, h: f64) -> f64 {
        self.beta0 + h * (self.beta1 + h * self.beta2)
    }
}

/// Series coefficients for Rindler mode `m` against Minkowski mode `n` (both >= 1).
///
/// The off-diagonal `α²` formula is only used for `m != n`. The `β²` formula
/// is used on the diagonal as well; it gives `β²_nn = 1/(16π²n²)`.
pub fn coefficient_series(m: usize, n: usize) -> CoefficientSeries {
    assert!(m >= 1 && n >= 1, "mode indices start at 1");
    let (mf, nf) = (m as f64, n as f64);
    let root = (mf * nf).sqrt();
    let pi2 = PI * PI;
    // (-1)^(m-n)
    let parity = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };

    let (alpha0, alpha1, alpha2) = if m == n {
        (1.0, 0.0, -pi2 * nf * nf / 240.0)
    } else {
        let d = mf - nf;
        (
            0.0,
            root * (parity - 1.0) / (pi2 * d.powi(3)),
            root * (parity + 1.0) * (mf + 2.0 * nf) / (2.0 * pi2 * d.powi(4)),
        )
    };

    let s = mf + nf;
    let beta1 = if m == n { 0.0 } else { root * (1.0 - parity) / (pi2 * s.powi(3)) };
    let beta2 = root * (-parity - 1.0) * (mf - 2.0 * nf) / (2.0 * pi2 * s.powi(4));

    CoefficientSeries { m, n, alpha0, alpha1, alpha2, beta0: 0.0, beta1, beta2 }
}
