use nalgebra::DMatrix;
use num_complex::Complex64;

use super::series::coefficient_series;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Truncated Bogoliubov transformation between an input mode set `a_n` and an
/// output mode set `b_m`:
///
/// ```text
/// b_m = Σ_n (A*_mn a_n − B*_mn a_n†)
/// ```
///
/// `A` carries mode mixing, `B` particle creation.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovTransform {
    a: CMatrix,
    b: CMatrix,
}

impl BogoliubovTransform {
    pub fn new(a: CMatrix, b: CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { left: a.nrows(), right: a.ncols() });
        }
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch { left: a.nrows(), right: b.nrows() });
        }
        Ok(Self { a, b })
    }

    pub fn identity(modes: usize) -> Self {
        Self { a: CMatrix::identity(modes, modes), b: CMatrix::zeros(modes, modes) }
    }

    /// Free evolution: the fundamental mode advances by `theta1`, mode `m` by `m·theta1`.
    ///
    /// `A_mm = e^{+i m θ₁}` so that `b_m = e^{−i m θ₁} a_m`.
    pub fn free_evolution(theta1: f64, modes: usize) -> Self {
        let a = CMatrix::from_fn(modes, modes, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, (i + 1) as f64 * theta1)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { a, b: CMatrix::zeros(modes, modes) }
    }

    /// Change of basis from inertial cavity modes to the modes of the uniformly
    /// accelerated cavity, from the second-order series at signed `h`.
    /// Negative `h` is acceleration in the opposite direction.
    pub fn segment(h: f64, modes: usize) -> Result<Self> {
        if modes < 2 {
            return Err(Error::invalid("mode_cutoff", format!("must be >= 2, got {modes}")));
        }
        if !(h.abs() < 2.0) {
            return Err(Error::OutsideRindlerWedge { h });
        }
        let mut a = CMatrix::zeros(modes, modes);
        let mut b = CMatrix::zeros(modes, modes);
        for i in 0..modes {
            for j in 0..modes {
                let c = coefficient_series(i + 1, j + 1);
                a[(i, j)] = Complex64::new(c.alpha(h), 0.0);
                b[(i, j)] = Complex64::new(c.beta(h), 0.0);
            }
        }
        Ok(Self { a, b })
    }

    pub fn modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn a11(&self) -> Complex64 {
        self.a[(0, 0)]
    }

    pub fn b11(&self) -> Complex64 {
        self.b[(0, 0)]
    }

    /// `later ∘ earlier`: apply `earlier`, then `later`.
    ///
    /// `A = A₂A₁ + B₂B̄₁`, `B = A₂B₁ + B₂Ā₁`.
    pub fn compose(later: &Self, earlier: &Self) -> Result<Self> {
        if later.modes() != earlier.modes() {
            return Err(Error::DimensionMismatch { left: later.modes(), right: earlier.modes() });
        }
        let a = &later.a * &earlier.a + &later.b * earlier.b.conjugate();
        let b = &later.a * &earlier.b + &later.b * earlier.a.conjugate();
        Ok(Self { a, b })
    }

    /// Apply `next` after `self`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        Self::compose(next, self)
    }

    /// Inverse of an (approximately) symplectic transform: `A⁻¹ = A†`, `B⁻¹ = −Bᵀ`.
    pub fn inverse(&self) -> Self {
        Self { a: self.a.adjoint(), b: -self.b.transpose() }
    }

    /// Same transform with particle creation removed (`B = 0`).
    pub fn without_creation(&self) -> Self {
        Self { a: self.a.clone(), b: CMatrix::zeros(self.modes(), self.modes()) }
    }

    /// `self` applied `count` times in sequence, by repeated squaring.
    /// All factors are powers of `self` and commute, so the grouping is free.
    pub fn repeated(&self, count: u32) -> Self {
        let mut out = Self::identity(self.modes());
        let mut power = self.clone();
        let mut n = count;
        while n > 0 {
            if n & 1 == 1 {
                out = Self::compose(&power, &out).expect("same dimension");
            }
            n >>= 1;
            if n > 0 {
                power = Self::compose(&power, &power).expect("same dimension");
            }
        }
        out
    }

    /// Expected number of quanta created from the vacuum, `Σ |B_mn|²`.
    pub fn particle_number(&self) -> f64 {
        self.b.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Σ_k (|A_mk|² − |B_mk|²) − 1` for output mode `m` (1-based).
    pub fn symplectic_residual(&self, m: usize) -> f64 {
        let row = m - 1;
        let mut sum = 0.0;
        for k in 0..self.modes() {
            sum += self.a[(row, k)].norm_sqr() - self.b[(row, k)].norm_sqr();
        }
        sum - 1.0
    }

    /// Largest entry-wise deviation between two transforms of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let da = (&self.a - &other.a).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let db = (&self.b - &other.b).iter().map(|z| z.norm()).fold(0.0, f64::max);
        da.max(db)
    }
}
