//! Bogoliubov transformations for a rigid cavity on a round trip.
//!
//! [`series`] holds the second-order coefficients relating inertial and
//! uniformly accelerated cavity modes. [`transform`] is the algebra of
//! truncated transforms (composition, inverse, free evolution). [`trip`]
//! assembles the six-segment round trip, evaluates the closed-form `A₁₁`
//! and `B₁₁`, extracts the clock phase and decomposes it.

pub mod series;
pub mod transform;
pub mod trip;

pub use series::{coefficient_series, CoefficientSeries};
pub use transform::{BogoliubovTransform, CMatrix};
pub use trip::{
    closed_form_a11, closed_form_b11, per_trip_transform, phase_decomposition, phase_shift, phase_tangent,
    round_trip_from_phases, round_trip_transform, wrap_angle, Channel, ClockReport, NormalizedShifts,
    PhaseDecomposition, TripPhases,
};
