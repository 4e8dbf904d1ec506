use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// `h = aL/v²` must stay below 2 so that both mirrors sit inside one Rindler wedge.
    #[error("cavity does not fit in Rindler wedge: h = {h} (must be < 2)")]
    OutsideRindlerWedge { h: f64 },

    #[error("mode index {index} out of range 1..={cutoff}")]
    ModeOutOfRange { index: usize, cutoff: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degenerate first-mode amplitude: A11 - B11 = 0")]
    DegenerateState,

    #[error("point {position} m lies outside the cavity [{left}, {right}]")]
    PointOutsideCavity { position: f64, left: f64, right: f64 },

    #[error("quadrature failed to converge on [{lower}, {upper}] after {depth} bisections")]
    QuadratureNonConvergence { lower: f64, upper: f64, depth: u32 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
