use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::AdaptiveQuadrature;
use crate::error::{Error, Result};

/// Cavity placed in the right Rindler wedge, horizon at `x = 0`.
///
/// On the `t = 0` slice the mirrors sit at `v²/a ∓ L/2`, so the inertial and
/// the uniformly accelerated cavity coincide there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WedgeGeometry {
    pub proper_length: f64,
    pub light_speed: f64,
    pub acceleration: f64,
    pub center_x0: f64,
    pub mirror_xl: f64,
    pub mirror_xr: f64,
    pub xi_l: f64,
    pub xi_r: f64,
}

impl WedgeGeometry {
    pub fn new(proper_length: f64, light_speed: f64, acceleration: f64) -> Result<Self> {
        if !(proper_length.is_finite() && proper_length > 0.0) {
            return Err(Error::invalid("proper_length", format!("must be finite and > 0, got {proper_length}")));
        }
        if !(light_speed.is_finite() && light_speed > 0.0) {
            return Err(Error::invalid("light_speed", format!("must be finite and > 0, got {light_speed}")));
        }
        if !(acceleration.is_finite() && acceleration > 0.0) {
            return Err(Error::invalid("acceleration", format!("must be finite and > 0, got {acceleration}")));
        }
        let h = acceleration * proper_length / (light_speed * light_speed);
        if !(h < 2.0) {
            return Err(Error::OutsideRindlerWedge { h });
        }
        let scale = light_speed * light_speed / acceleration;
        Ok(Self {
            proper_length,
            light_speed,
            acceleration,
            center_x0: scale,
            mirror_xl: scale - proper_length / 2.0,
            mirror_xr: scale + proper_length / 2.0,
            xi_l: scale * (-h / 2.0).ln_1p(),
            xi_r: scale * (h / 2.0).ln_1p(),
        })
    }

    /// Unit cavity (`L = v = 1`) at expansion parameter `h`.
    pub fn unit(h: f64) -> Result<Self> {
        Self::new(1.0, 1.0, h)
    }

    pub fn h(&self) -> f64 {
        self.acceleration * self.proper_length / (self.light_speed * self.light_speed)
    }

    fn scale(&self) -> f64 {
        self.light_speed * self.light_speed / self.acceleration
    }

    /// Rindler coordinate distance between the mirrors, `L′ = (2v²/a) atanh(h/2)`.
    pub fn rindler_length(&self) -> f64 {
        2.0 * self.scale() * (self.h() / 2.0).atanh()
    }

    pub fn minkowski_frequency(&self, n: usize) -> f64 {
        PI * n as f64 * self.light_speed / self.proper_length
    }

    pub fn rindler_frequency(&self, m: usize) -> f64 {
        PI * m as f64 * self.light_speed / self.rindler_length()
    }

    fn minkowski_wavenumber(&self, n: usize) -> f64 {
        PI * n as f64 / self.proper_length
    }

    fn rindler_wavenumber(&self, m: usize) -> f64 {
        PI * m as f64 / self.rindler_length()
    }

    /// `ξ − ξ_l` at offset `s` from the left mirror on the `t = 0` slice.
    fn rindler_offset(&self, s: f64) -> f64 {
        self.scale() * (s / self.mirror_xl).ln_1p()
    }

    /// `∂η/∂t = e^{−aξ/v²}` at offset `s` on the `t = 0` slice.
    fn lapse(&self, s: f64) -> f64 {
        self.scale() / (self.mirror_xl + s)
    }

    fn check_x(&self, x: f64) -> Result<()> {
        let slack = 1e-12 * self.proper_length;
        if x < self.mirror_xl - slack || x > self.mirror_xr + slack {
            return Err(Error::PointOutsideCavity { position: x, left: self.mirror_xl, right: self.mirror_xr });
        }
        Ok(())
    }
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ModeOutOfRange { index: 0, cutoff: usize::MAX });
    }
    Ok(())
}

/// Inertial cavity mode `u_n(t, x) = sin(ω_n(x − x_l)/v) e^{−iω_n t} / √(πn)`.
pub fn minkowski_mode(n: usize, x: f64, t: f64, geometry: &WedgeGeometry) -> Result<Complex64> {
    check_index(n)?;
    geometry.check_x(x)?;
    let k = geometry.minkowski_wavenumber(n);
    let amp = (k * (x - geometry.mirror_xl)).sin() / (PI * n as f64).sqrt();
    Ok(amp * Complex64::from_polar(1.0, -geometry.minkowski_frequency(n) * t))
}

/// Accelerated cavity mode `v_m(η, ξ) = sin(Ω_m(ξ − ξ_l)/v) e^{−iΩ_m η} / √(πm)`.
pub fn rindler_mode(m: usize, xi: f64, eta: f64, geometry: &WedgeGeometry) -> Result<Complex64> {
    check_index(m)?;
    let slack = 1e-12 * geometry.rindler_length();
    if xi < geometry.xi_l - slack || xi > geometry.xi_r + slack {
        return Err(Error::PointOutsideCavity { position: xi, left: geometry.xi_l, right: geometry.xi_r });
    }
    let k = geometry.rindler_wavenumber(m);
    let amp = (k * (xi - geometry.xi_l)).sin() / (PI * m as f64).sqrt();
    Ok(amp * Complex64::from_polar(1.0, -geometry.rindler_frequency(m) * eta))
}

/// A field configuration restricted to the `t = 0` slice, parametrized by the
/// offset `s ∈ [0, L]` from the left mirror.
pub trait SliceMode {
    fn value(&self, s: f64) -> Complex64;
    fn time_derivative(&self, s: f64) -> Complex64;
}

#[derive(Debug, Clone, Copy)]
pub struct MinkowskiMode<'g> {
    pub n: usize,
    pub geometry: &'g WedgeGeometry,
}

impl SliceMode for MinkowskiMode<'_> {
    fn value(&self, s: f64) -> Complex64 {
        let k = self.geometry.minkowski_wavenumber(self.n);
        Complex64::new((k * s).sin() / (PI * self.n as f64).sqrt(), 0.0)
    }

    fn time_derivative(&self, s: f64) -> Complex64 {
        let w = self.geometry.minkowski_frequency(self.n);
        Complex64::new(0.0, -w) * self.value(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RindlerMode<'g> {
    pub m: usize,
    pub geometry: &'g WedgeGeometry,
}

impl SliceMode for RindlerMode<'_> {
    fn value(&self, s: f64) -> Complex64 {
        let k = self.geometry.rindler_wavenumber(self.m);
        let xi = self.geometry.rindler_offset(s);
        Complex64::new((k * xi).sin() / (PI * self.m as f64).sqrt(), 0.0)
    }

    fn time_derivative(&self, s: f64) -> Complex64 {
        let w = self.geometry.rindler_frequency(self.m);
        Complex64::new(0.0, -w * self.geometry.lapse(s)) * self.value(s)
    }
}

/// Complex conjugate of a mode.
#[derive(Debug, Clone, Copy)]
pub struct Conjugate<M>(pub M);

impl<M: SliceMode> SliceMode for Conjugate<M> {
    fn value(&self, s: f64) -> Complex64 {
        self.0.value(s).conj()
    }

    fn time_derivative(&self, s: f64) -> Complex64 {
        self.0.time_derivative(s).conj()
    }
}

/// Klein-Gordon inner product on the `t = 0` slice,
/// `(f, g) = −(i/v) ∫ (f ∂_t g* − g* ∂_t f) dx`.
///
/// The `1/v` normalization makes the mode functions orthonormal.
pub fn kg_inner_product<F, G>(
    f: &F,
    g: &G,
    geometry: &WedgeGeometry,
    quadrature: &AdaptiveQuadrature,
) -> Result<Complex64>
where
    F: SliceMode + ?Sized,
    G: SliceMode + ?Sized,
{
    let integrand = |s: f64| {
        let gc = g.value(s).conj();
        let dgc = g.time_derivative(s).conj();
        f.value(s) * dgc - gc * f.time_derivative(s)
    };
    let integral = quadrature.integrate(integrand, 0.0, geometry.proper_length)?;
    Ok(Complex64::new(0.0, -1.0) * integral / geometry.light_speed)
}

/// `α_mn = (v_m, u_n)` and `β_mn = −(v_m, u_n*)` for `geometry`.
pub fn coefficients_in(
    m: usize,
    n: usize,
    geometry: &WedgeGeometry,
    quadrature: &AdaptiveQuadrature,
) -> Result<(Complex64, Complex64)> {
    check_index(m)?;
    check_index(n)?;
    let v = RindlerMode { m, geometry };
    let u = MinkowskiMode { n, geometry };
    let alpha = kg_inner_product(&v, &u, geometry, quadrature)?;
    let beta = -kg_inner_product(&v, &Conjugate(u), geometry, quadrature)?;
    Ok((alpha, beta))
}

/// Numerically exact `(α_mn, β_mn)` at finite `h ∈ (0, 2)`.
pub fn quadrature_coefficients(m: usize, n: usize, h: f64) -> Result<(Complex64, Complex64)> {
    coefficients_in(m, n, &WedgeGeometry::unit(h)?, &AdaptiveQuadrature::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogoliubov::coefficient_series;

    #[test]
    fn geometry_relations() {
        let g = WedgeGeometry::new(0.011, 1.1994e8, 1.7e15).unwrap();
        assert!(g.mirror_xl > 0.0);
        assert!((g.mirror_xr - g.mirror_xl - 0.011).abs() < 1e-14);
        let lp = g.xi_r - g.xi_l;
        assert!((lp - g.rindler_length()).abs() < 1e-12 * lp);
        assert!((g.h() - 1.3e-3).abs() < 2e-6);
        assert!(matches!(WedgeGeometry::unit(2.0), Err(Error::OutsideRindlerWedge { .. })));
        assert!(WedgeGeometry::unit(0.0).is_err());
    }

    #[test]
    fn dirichlet_boundaries_and_nodes() {
        let g = WedgeGeometry::new(0.02, 1.1994e8, 1e15).unwrap();
        for n in 1..6 {
            assert!(minkowski_mode(n, g.mirror_xl, 0.3e-9, &g).unwrap().norm() < 1e-15);
            // absolute positions near v²/a carry ~1e-15 m of rounding
            assert!(minkowski_mode(n, g.mirror_xr, 0.3e-9, &g).unwrap().norm() < 1e-11);
            assert!(rindler_mode(n, g.xi_r, 0.1e-9, &g).unwrap().norm() < 1e-12);
            assert!(rindler_mode(n, g.xi_l, 0.1e-9, &g).unwrap().norm() < 1e-15);
        }
        for n in [2, 4, 6] {
            assert!(minkowski_mode(n, g.center_x0, 0.0, &g).unwrap().norm() < 1e-11);
        }
        assert!(matches!(
            minkowski_mode(1, g.mirror_xr + 0.01, 0.0, &g),
            Err(Error::PointOutsideCavity { .. })
        ));
        assert!(matches!(rindler_mode(1, g.xi_l - 1.0, 0.0, &g), Err(Error::PointOutsideCavity { .. })));
    }

    #[test]
    fn slice_modes_agree_with_coordinate_modes() {
        let g = WedgeGeometry::new(0.011, 1.1994e8, 1.7e15).unwrap();
        let s = 0.0037;
        let x = g.mirror_xl + s;
        let xi = g.scale() * (x / g.center_x0).ln();
        let u = MinkowskiMode { n: 3, geometry: &g };
        let v = RindlerMode { m: 2, geometry: &g };
        assert!((u.value(s) - minkowski_mode(3, x, 0.0, &g).unwrap()).norm() < 1e-10);
        assert!((v.value(s) - rindler_mode(2, xi, 0.0, &g).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn orthonormality() {
        let q = AdaptiveQuadrature::default();
        let g = WedgeGeometry::unit(1e-2).unwrap();
        for n in 1..=10 {
            for m in 1..=10 {
                let delta = if n == m { 1.0 } else { 0.0 };
                let uu = kg_inner_product(&MinkowskiMode { n, geometry: &g }, &MinkowskiMode { n: m, geometry: &g }, &g, &q)
                    .unwrap();
                let vv = kg_inner_product(&RindlerMode { m: n, geometry: &g }, &RindlerMode { m, geometry: &g }, &g, &q)
                    .unwrap();
                assert!((uu - delta).norm() <= 1e-10, "u {n},{m}: {uu}");
                assert!((vv - delta).norm() <= 1e-10, "v {n},{m}: {vv}");
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let q = AdaptiveQuadrature::default();
        let (a_unit, b_unit) = quadrature_coefficients(2, 1, 1.3e-3).unwrap();
        let si = WedgeGeometry::new(0.011, 1.1994e8, 1.3e-3 * 1.1994e8f64.powi(2) / 0.011).unwrap();
        let (a_si, b_si) = coefficients_in(2, 1, &si, &q).unwrap();
        assert!((a_unit - a_si).norm() < 1e-11);
        assert!((b_unit - b_si).norm() < 1e-11);
    }

    #[test]
    fn first_order_coefficients() {
        let h = 1e-3;
        let (alpha, beta) = quadrature_coefficients(2, 1, h).unwrap();
        let c = coefficient_series(2, 1);
        assert!((alpha.re - c.alpha1 * h).abs() < 5e-9);
        assert!(alpha.im.abs() < 1e-15 && beta.im.abs() < 1e-15);
        assert!((beta.re - c.beta1 * h).abs() < 5e-9);
    }

    #[test]
    fn fundamental_self_overlap() {
        let h = 1e-3;
        let (alpha, _) = quadrature_coefficients(1, 1, h).unwrap();
        let c = coefficient_series(1, 1);
        assert!((alpha.re - (1.0 + c.alpha2 * h * h)).abs() < 5.0 * h.powi(3));
    }

    #[test]
    fn bogoliubov_identity_at_finite_h() {
        let q = AdaptiveQuadrature::default();
        let g = WedgeGeometry::unit(1e-2).unwrap();
        let mut sum = 0.0;
        for k in 1..=50 {
            let (a, b) = coefficients_in(k, 1, &g, &q).unwrap();
            sum += a.norm_sqr() - b.norm_sqr();
        }
        assert!((sum - 1.0).abs() <= 1e-6, "residual {}", sum - 1.0);
    }
}
