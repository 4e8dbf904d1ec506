use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// One panel on `[lo, hi]`: the integral and the integral of `|f|`.
    pub fn panel<F>(&self, f: &F, lo: f64, hi: f64) -> (Complex64, f64)
    where
        F: Fn(f64) -> Complex64,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let y = f(mid + half * x);
            sum += *w * y;
            abs += *w * y.norm();
        }
        (sum * half, abs * half.abs())
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Gauss-Legendre panels with bisection until each panel meets
/// `|I − (I_left + I_right)| <= max(rel_tol · ∫|f|, abs_floor)`.
#[derive(Debug, Clone)]
pub struct AdaptiveQuadrature {
    rule: GaussLegendre,
    rel_tol: f64,
    abs_floor: f64,
    max_depth: u32,
}

impl AdaptiveQuadrature {
    pub const DEFAULT_NODES: usize = 64;
    pub const DEFAULT_REL_TOL: f64 = 1e-12;
    pub const DEFAULT_ABS_FLOOR: f64 = 1e-15;
    pub const DEFAULT_MAX_DEPTH: u32 = 24;
    /// Below this a relative tolerance cannot be met in double precision.
    pub const MIN_REL_TOL: f64 = 1e-15;

    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol >= Self::MIN_REL_TOL) {
            return Err(Error::invalid(
                "quadrature_rel_tol",
                format!("must be finite and >= {:e} (double-precision floor), got {rel_tol}", Self::MIN_REL_TOL),
            ));
        }
        Ok(Self {
            rule: GaussLegendre::new(Self::DEFAULT_NODES),
            rel_tol,
            abs_floor: Self::DEFAULT_ABS_FLOOR,
            max_depth: Self::DEFAULT_MAX_DEPTH,
        })
    }

    pub fn with_abs_floor(mut self, abs_floor: f64) -> Self {
        self.abs_floor = abs_floor;
        self
    }

    pub fn with_max_depth(mut self, max_depth: u32) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn integrate<F>(&self, f: F, lo: f64, hi: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let whole = self.rule.panel(&f, lo, hi);
        self.refine(&f, lo, hi, whole, 0)
    }

    fn refine<F>(&self, f: &F, lo: f64, hi: f64, whole: (Complex64, f64), depth: u32) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let mid = 0.5 * (lo + hi);
        let left = self.rule.panel(f, lo, mid);
        let right = self.rule.panel(f, mid, hi);
        let split = left.0 + right.0;
        let scale = left.1 + right.1;
        if (whole.0 - split).norm() <= (self.rel_tol * scale).max(self.abs_floor) {
            return Ok(split);
        }
        if depth >= self.max_depth {
            return Err(Error::QuadratureNonConvergence { lower: lo, upper: hi, depth });
        }
        Ok(self.refine(f, lo, mid, left, depth + 1)? + self.refine(f, mid, hi, right, depth + 1)?)
    }
}

impl Default for AdaptiveQuadrature {
    fn default() -> Self {
        Self::new(Self::DEFAULT_REL_TOL).expect("default tolerance is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn weights_sum_to_two_and_nodes_symmetric() {
        for n in [1, 2, 5, 16, 64] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let r = GaussLegendre::new(8);
        for p in 0..16 {
            let (got, _) = r.panel(&real(|x: f64| x.powi(p)), -1.0, 1.0);
            let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
            assert!((got.re - exact).abs() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn adaptive_oscillatory_integral() {
        let q = AdaptiveQuadrature::default();
        // ∫_0^1 sin²(60πx) dx = 1/2
        let got = q.integrate(real(|x: f64| (60.0 * PI * x).sin().powi(2)), 0.0, 1.0).unwrap();
        assert!((got.re - 0.5).abs() < 1e-13);
        let got = q.integrate(|x| Complex64::from_polar(1.0, 3.0 * x), 0.0, 2.0).unwrap();
        let exact = (Complex64::from_polar(1.0, 6.0) - 1.0) / Complex64::new(0.0, 3.0);
        assert!((got - exact).norm() < 1e-14);
    }

    #[test]
    fn panel_doubling_is_stable() {
        let f = real(|x: f64| (x * 7.0).cos() * (-x).exp());
        let q = AdaptiveQuadrature::default();
        let whole = q.integrate(&f, 0.0, 3.0).unwrap();
        let halves = q.integrate(&f, 0.0, 1.5).unwrap() + q.integrate(&f, 1.5, 3.0).unwrap();
        assert!((whole - halves).norm() <= 1e-12 * whole.norm());
    }

    #[test]
    fn impossible_tolerance_reports_non_convergence() {
        let q = AdaptiveQuadrature::new(1e-15).unwrap().with_abs_floor(0.0).with_max_depth(2);
        let err = q.integrate(real(|x: f64| (x * 400.0).sin() + x.sqrt()), 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { .. }));
        assert!(AdaptiveQuadrature::new(0.0).is_err());
        assert!(AdaptiveQuadrature::new(1e-18).is_err());
    }
}
