use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::HardwareConstraints;
use crate::oracle::AdaptiveQuadrature;
use crate::physics::{CavitySetup, TrajectorySpec, DEFAULT_LIGHT_SPEED, DEFAULT_MODE_CUTOFF};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    pub light_speed_m_per_s: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        Self { light_speed_m_per_s: DEFAULT_LIGHT_SPEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavityConfig {
    pub length_m: f64,
    pub mode_cutoff: usize,
}

impl Default for CavityConfig {
    fn default() -> Self {
        Self { length_m: 0.011, mode_cutoff: DEFAULT_MODE_CUTOFF }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrajectoryConfig {
    pub proper_acceleration_m_per_s2: f64,
    pub accel_duration_s: f64,
    pub inertial_duration_s: f64,
    pub repetitions: u32,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        Self {
            proper_acceleration_m_per_s2: 1.7e15,
            accel_duration_s: 1e-9,
            inertial_duration_s: 0.0,
            repetitions: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    /// Upper mode index `K` in the closed-form `A₁₁`/`B₁₁` sums.
    pub closed_form_sum_cutoff: usize,
    pub quadrature_rel_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self { closed_form_sum_cutoff: 20, quadrature_rel_tol: AdaptiveQuadrature::DEFAULT_REL_TOL }
    }
}

/// Complete run configuration. Every field has a default; the defaults
/// describe a 1.1 cm cavity shaken 500 times at 1.7e15 m/s² for 1 ns per
/// accelerated segment, with no coasting.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub medium: MediumConfig,
    pub cavity: CavityConfig,
    pub trajectory: TrajectoryConfig,
    pub numerics: NumericsConfig,
    pub constraints: HardwareConstraints,
}

impl RunConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }

    pub fn load(path: &Path) -> std::result::Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn setup(&self) -> Result<CavitySetup> {
        CavitySetup::new(self.cavity.length_m, self.medium.light_speed_m_per_s, self.cavity.mode_cutoff)
    }

    pub fn trajectory(&self) -> Result<TrajectorySpec> {
        let t = &self.trajectory;
        TrajectorySpec::new(t.proper_acceleration_m_per_s2, t.accel_duration_s, t.inertial_duration_s, t.repetitions)
    }

    /// Range checks on every field. Physics-domain limits such as `h < 2`
    /// are left to the computations.
    pub fn validate(&self) -> Result<()> {
        self.setup()?;
        self.trajectory()?;
        if self.numerics.closed_form_sum_cutoff < 2 {
            return Err(Error::invalid(
                "closed_form_sum_cutoff",
                format!("must be >= 2, got {}", self.numerics.closed_form_sum_cutoff),
            ));
        }
        AdaptiveQuadrature::new(self.numerics.quadrature_rel_tol)?;
        self.constraints.validate()
    }
}
