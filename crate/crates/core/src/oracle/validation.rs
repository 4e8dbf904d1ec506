use rayon::prelude::*;
use serde::Serialize;

use super::modes::{coefficients_in, WedgeGeometry};
use super::quadrature::AdaptiveQuadrature;
use crate::bogoliubov::{coefficient_series, CoefficientSeries};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Allowed error is `bound_factor · h³`.
    pub bound_factor: f64,
    pub quadrature_rel_tol: f64,
    /// Accepted range for `max_error(h) / max_error(h/2)`.
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            bound_factor: 5.0,
            quadrature_rel_tol: AdaptiveQuadrature::DEFAULT_REL_TOL,
            min_ratio: 6.0,
            max_ratio: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationRow {
    pub h: f64,
    pub m: usize,
    pub n: usize,
    pub alpha_quad: f64,
    pub alpha_series: f64,
    pub alpha_error: f64,
    pub beta_quad: f64,
    pub beta_series: f64,
    pub beta_error: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Third-order scaling check: the largest error at `h` against the largest at `h/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderCheck {
    pub h: f64,
    pub max_error: f64,
    pub max_error_half: f64,
    pub ratio: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub order_checks: Vec<OrderCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed) && self.order_checks.iter().all(|c| c.passed)
    }

    pub fn max_error(&self, h: f64) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.h == h)
            .map(|r| r.alpha_error.max(r.beta_error))
            .fold(0.0, f64::max)
    }

    /// CSV table, one row per `(h, m, n)` followed by one `order` row per `h`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,h,m,n,alpha_quad,alpha_series,alpha_error,beta_quad,beta_series,beta_error,bound,ratio,passed\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "coefficient,{},{},{},{},{},{},{},{},{},{},,{}\n",
                sci(r.h),
                r.m,
                r.n,
                sci(r.alpha_quad),
                sci(r.alpha_series),
                sci(r.alpha_error),
                sci(r.beta_quad),
                sci(r.beta_series),
                sci(r.beta_error),
                sci(r.bound),
                r.passed
            ));
        }
        for c in &self.order_checks {
            out.push_str(&format!(
                "order,{},,,,,{},,,{},,{},{}\n",
                sci(c.h),
                sci(c.max_error),
                sci(c.max_error_half),
                sci(c.ratio),
                c.passed
            ));
        }
        out
    }
}

fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

fn compare(
    h: f64,
    m_max: usize,
    opts: &ValidationOptions,
    quadrature: &AdaptiveQuadrature,
    series: &(impl Fn(usize, usize) -> CoefficientSeries + Sync),
) -> Result<Vec<ValidationRow>> {
    let geometry = WedgeGeometry::unit(h)?;
    let pairs: Vec<(usize, usize)> = (1..=m_max).flat_map(|m| (1..=m_max).map(move |n| (m, n))).collect();
    pairs
        .par_iter()
        .map(|&(m, n)| {
            let (alpha, beta) = coefficients_in(m, n, &geometry, quadrature)?;
            let c = series(m, n);
            let (alpha_series, beta_series) = (c.alpha(h), c.beta(h));
            let alpha_error = (alpha.re - alpha_series).hypot(alpha.im);
            let beta_error = (beta.re - beta_series).hypot(beta.im);
            let bound = opts.bound_factor * h.powi(3);
            Ok(ValidationRow {
                h,
                m,
                n,
                alpha_quad: alpha.re,
                alpha_series,
                alpha_error,
                beta_quad: beta.re,
                beta_series,
                beta_error,
                bound,
                passed: alpha_error <= bound && beta_error <= bound,
            })
        })
        .collect()
}

/// Compare the second-order series against quadrature for all `m, n <= m_max`.
pub fn series_validation(h_list: &[f64], m_max: usize) -> Result<ValidationReport> {
    series_validation_with(h_list, m_max, &ValidationOptions::default(), coefficient_series)
}

/// As [`series_validation`], with explicit options and series source.
pub fn series_validation_with(
    h_list: &[f64],
    m_max: usize,
    opts: &ValidationOptions,
    series: impl Fn(usize, usize) -> CoefficientSeries + Sync,
) -> Result<ValidationReport> {
    if h_list.is_empty() {
        return Err(Error::invalid("h_list", "must not be empty"));
    }
    if let Some(&h) = h_list.iter().find(|&&h| !(h > 0.0 && h < 0.1)) {
        return Err(Error::invalid("h_list", format!("every h must be in (0, 0.1), got {h}")));
    }
    if m_max == 0 {
        return Err(Error::invalid("m_max", "must be >= 1"));
    }
    let quadrature = AdaptiveQuadrature::new(opts.quadrature_rel_tol)?;

    let mut rows = Vec::new();
    let mut order_checks = Vec::new();
    for &h in h_list {
        let at_h = compare(h, m_max, opts, &quadrature, &series)?;
        let at_half = compare(h / 2.0, m_max, opts, &quadrature, &series)?;
        let worst = |rs: &[ValidationRow]| rs.iter().map(|r| r.alpha_error.max(r.beta_error)).fold(0.0, f64::max);
        let (max_error, max_error_half) = (worst(&at_h), worst(&at_half));
        let ratio = max_error / max_error_half;
        order_checks.push(OrderCheck {
            h,
            max_error,
            max_error_half,
            ratio,
            passed: ratio >= opts.min_ratio && ratio <= opts.max_ratio,
        });
        rows.extend(at_h);
    }
    Ok(ValidationReport { rows, order_checks })
}
