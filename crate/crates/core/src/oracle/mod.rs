//! Independent check of the coefficient series.
//!
//! Evaluates `α_mn = (v_m, u_n)` and `β_mn = −(v_m, u_n*)` by adaptive
//! Gauss-Legendre quadrature of the Klein-Gordon inner product on the
//! `t = 0` slice, where the inertial and accelerated cavities coincide.

pub mod modes;
pub mod quadrature;
pub mod validation;

pub use modes::{
    coefficients_in, kg_inner_product, minkowski_mode, quadrature_coefficients, rindler_mode, Conjugate,
    MinkowskiMode, RindlerMode, SliceMode, WedgeGeometry,
};
pub use quadrature::{AdaptiveQuadrature, GaussLegendre};
pub use validation::{series_validation, series_validation_with, OrderCheck, ValidationOptions, ValidationReport, ValidationRow};
