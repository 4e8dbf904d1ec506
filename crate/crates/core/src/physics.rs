//! Kinematics, mode frequencies and closed-form proper times.
//!
//! Every quantity is SI. The "speed of light" is the effective propagation
//! speed `v` of the one-dimensional field (a waveguide in the circuit
//! implementation), so it is always passed explicitly.
//!
//! Limits at zero acceleration are evaluated through the well-conditioned
//! ratios `asinh(x)/x` and `(h/2)/atanh(h/2)`, never through `0/0`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Effective light speed of the coplanar waveguide, m/s.
pub const DEFAULT_LIGHT_SPEED: f64 = 1.1994e8;

/// Default number of cavity modes kept in truncated transforms.
pub const DEFAULT_MODE_CUTOFF: usize = 20;

/// Cavity of proper length `L` filled with a field propagating at speed `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavitySetup {
    proper_length: f64,
    light_speed: f64,
    mode_cutoff: usize,
}

impl CavitySetup {
    pub fn new(proper_length: f64, light_speed: f64, mode_cutoff: usize) -> Result<Self> {
        if !(proper_length.is_finite() && proper_length > 0.0) {
            return Err(Error::invalid("proper_length", format!("must be finite and > 0, got {proper_length}")));
        }
        if !(light_speed.is_finite() && light_speed > 0.0) {
            return Err(Error::invalid("light_speed", format!("must be finite and > 0, got {light_speed}")));
        }
        if mode_cutoff < 2 {
            return Err(Error::invalid("mode_cutoff", format!("must be >= 2, got {mode_cutoff}")));
        }
        Ok(Self { proper_length, light_speed, mode_cutoff })
    }

    pub fn proper_length(&self) -> f64 {
        self.proper_length
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    pub fn mode_cutoff(&self) -> usize {
        self.mode_cutoff
    }

    /// Same cavity with a different mode cutoff.
    pub fn with_mode_cutoff(&self, mode_cutoff: usize) -> Result<Self> {
        Self::new(self.proper_length, self.light_speed, mode_cutoff)
    }

    /// `ω₁ = πv/L`.
    pub fn fundamental_frequency(&self) -> f64 {
        PI * self.light_speed / self.proper_length
    }

    /// `ω_n = πnv/L` for `1 <= n <= N`.
    pub fn mode_frequency(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.mode_cutoff {
            return Err(Error::ModeOutOfRange { index: n, cutoff: self.mode_cutoff });
        }
        Ok(n as f64 * self.fundamental_frequency())
    }
}

/// One round trip is four accelerated segments of lab duration `t_a` and two
/// inertial segments of lab duration `t_i`, repeated `repetitions` times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySpec {
    proper_acceleration: f64,
    accel_duration: f64,
    inertial_duration: f64,
    repetitions: u32,
}

impl TrajectorySpec {
    pub fn new(
        proper_acceleration: f64,
        accel_duration: f64,
        inertial_duration: f64,
        repetitions: u32,
    ) -> Result<Self> {
        if !(proper_acceleration.is_finite() && proper_acceleration >= 0.0) {
            return Err(Error::invalid(
                "proper_acceleration",
                format!("must be finite and >= 0, got {proper_acceleration}"),
            ));
        }
        if !(accel_duration.is_finite() && accel_duration >= 0.0) {
            return Err(Error::invalid("accel_duration", format!("must be finite and >= 0, got {accel_duration}")));
        }
        if !(inertial_duration.is_finite() && inertial_duration >= 0.0) {
            return Err(Error::invalid(
                "inertial_duration",
                format!("must be finite and >= 0, got {inertial_duration}"),
            ));
        }
        if repetitions == 0 {
            return Err(Error::invalid("repetitions", "must be >= 1"));
        }
        Ok(Self { proper_acceleration, accel_duration, inertial_duration, repetitions })
    }

    pub fn proper_acceleration(&self) -> f64 {
        self.proper_acceleration
    }

    pub fn accel_duration(&self) -> f64 {
        self.accel_duration
    }

    pub fn inertial_duration(&self) -> f64 {
        self.inertial_duration
    }

    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    pub fn with_repetitions(&self, repetitions: u32) -> Result<Self> {
        Self::new(self.proper_acceleration, self.accel_duration, self.inertial_duration, repetitions)
    }

    /// Lab duration of one round trip, `t_t = 4t_a + 2t_i`.
    pub fn trip_duration(&self) -> f64 {
        4.0 * self.accel_duration + 2.0 * self.inertial_duration
    }

    /// Rapidity argument `x = a t_a / v` reached at the end of each accelerated segment.
    pub fn rapidity_argument(&self, light_speed: f64) -> f64 {
        self.proper_acceleration * self.accel_duration / light_speed
    }

    /// Lorentz factor during the coast, `γ = sqrt(x² + 1)`.
    pub fn lorentz_factor(&self, light_speed: f64) -> f64 {
        self.rapidity_argument(light_speed).hypot(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicSummary {
    pub h: f64,
    pub x: f64,
    pub gamma: f64,
    pub max_velocity: f64,
    pub max_displacement: f64,
    pub trip_duration_tt: f64,
}

/// `asinh(x)/x`, equal to 1 at `x = 0`.
pub(crate) fn asinh_ratio(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.asinh() / x
    }
}

/// `h = aL/v²`. Rejects cavities that do not fit inside the Rindler wedge.
pub fn dimensionless_h(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<f64> {
    let h = traj.proper_acceleration() * setup.proper_length() / setup.light_speed().powi(2);
    if !(h < 2.0) {
        return Err(Error::OutsideRindlerWedge { h });
    }
    Ok(h)
}

/// `(h/2) / atanh(h/2)`: ratio of cavity to pointlike proper time during acceleration.
pub fn clock_ratio(h: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&h) {
        if h >= 2.0 {
            return Err(Error::OutsideRindlerWedge { h });
        }
        return Err(Error::invalid("h", format!("must be in [0, 2), got {h}")));
    }
    let y = h / 2.0;
    if y < 1e-8 {
        return Ok(1.0 - y * y / 3.0);
    }
    Ok(y / y.atanh())
}

/// Phase of the fundamental mode over one accelerated segment,
/// `θ_a = π asinh(at_a/v) / (2 atanh(h/2))`, with limit `ω₁t_a` at `a = 0`.
pub fn rindler_phase_theta_a(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<f64> {
    Ok(setup.fundamental_frequency() * tau_cav_accel(setup, traj)?)
}

/// Phase of the fundamental mode over one inertial segment, `θ_i = πvt_i/(γL)`.
pub fn minkowski_phase_theta_i(setup: &CavitySetup, traj: &TrajectorySpec) -> f64 {
    setup.fundamental_frequency() * traj.inertial_duration() / traj.lorentz_factor(setup.light_speed())
}

/// Proper time of a pointlike comoving clock over one accelerated segment,
/// `(v/a) asinh(at_a/v)`.
pub fn tau_point_accel(traj: &TrajectorySpec, light_speed: f64) -> f64 {
    traj.accel_duration() * asinh_ratio(traj.rapidity_argument(light_speed))
}

/// Cavity-clock proper time over one accelerated segment, `θ_a / ω₁`.
pub fn tau_cav_accel(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<f64> {
    let h = dimensionless_h(setup, traj)?;
    Ok(tau_point_accel(traj, setup.light_speed()) * clock_ratio(h)?)
}

/// Pointlike proper time over a full round trip.
pub fn tau_point_trip(traj: &TrajectorySpec, light_speed: f64) -> f64 {
    4.0 * tau_point_accel(traj, light_speed) + 2.0 * traj.inertial_duration() / traj.lorentz_factor(light_speed)
}

pub fn kinematic_summary(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<KinematicSummary> {
    let v = setup.light_speed();
    let h = dimensionless_h(setup, traj)?;
    let x = traj.rapidity_argument(v);
    let gamma = x.hypot(1.0);
    let max_velocity = v * x / gamma;
    // 2 (v²/a)(γ - 1) rewritten without the 1/a.
    let t_a = traj.accel_duration();
    let turnaround = 2.0 * traj.proper_acceleration() * t_a * t_a / (gamma + 1.0);
    let max_displacement = turnaround + max_velocity * traj.inertial_duration();
    Ok(KinematicSummary {
        h,
        x,
        gamma,
        max_velocity,
        max_displacement,
        trip_duration_tt: traj.trip_duration(),
    })
}
