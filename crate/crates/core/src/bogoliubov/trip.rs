use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::series::coefficient_series;
use super::transform::BogoliubovTransform;
use crate::error::{Error, Result};
use crate::physics::{self, CavitySetup, TrajectorySpec};

/// Dimensionless description of one round trip: expansion parameter and the
/// fundamental-mode phases of an accelerated and an inertial segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripPhases {
    pub h: f64,
    pub theta_a: f64,
    pub theta_i: f64,
}

impl TripPhases {
    pub fn new(h: f64, theta_a: f64, theta_i: f64) -> Self {
        Self { h, theta_a, theta_i }
    }

    pub fn from_setup(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<Self> {
        Ok(Self {
            h: physics::dimensionless_h(setup, traj)?,
            theta_a: physics::rindler_phase_theta_a(setup, traj)?,
            theta_i: physics::minkowski_phase_theta_i(setup, traj),
        })
    }

    /// Phase of the rigid cavity clock over one trip, `4θ_a + 2θ_i`.
    pub fn rigid_phase(&self) -> f64 {
        4.0 * self.theta_a + 2.0 * self.theta_i
    }
}

/// Which parts of the segment transforms enter the composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Mode mixing and particle creation.
    Full,
    /// Mode mixing only: every `B` block is zeroed before composing.
    MixingOnly,
}

/// Accelerated stretch: switch to the accelerated frame, evolve in Rindler
/// time by `theta`, switch back.
fn accelerated(h: f64, theta: f64, modes: usize, channel: Channel) -> Result<BogoliubovTransform> {
    let mut basis = BogoliubovTransform::segment(h, modes)?;
    if channel == Channel::MixingOnly {
        basis = basis.without_creation();
    }
    basis
        .then(&BogoliubovTransform::free_evolution(theta, modes))?
        .then(&basis.inverse())
}

/// Transform for a single round trip.
///
/// The trip accelerates with `+h` for `θ_a`, coasts for `θ_i`, accelerates
/// with `−h` for `2θ_a` (turnaround plus the start of the return leg, which
/// share a direction), coasts for `θ_i`, and stops with `+h` for `θ_a`.
pub fn round_trip_from_phases(phases: &TripPhases, modes: usize, channel: Channel) -> Result<BogoliubovTransform> {
    let coast = BogoliubovTransform::free_evolution(phases.theta_i, modes);
    accelerated(phases.h, phases.theta_a, modes, channel)?
        .then(&coast)?
        .then(&accelerated(-phases.h, 2.0 * phases.theta_a, modes, channel)?)?
        .then(&coast)?
        .then(&accelerated(phases.h, phases.theta_a, modes, channel)?)
}

/// Transform for one round trip of `traj`, ignoring its repetition count.
pub fn per_trip_transform(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<BogoliubovTransform> {
    let phases = TripPhases::from_setup(setup, traj)?;
    round_trip_from_phases(&phases, setup.mode_cutoff(), Channel::Full)
}

/// Transform for the whole experiment: the per-trip transform composed
/// `repetitions` times.
pub fn round_trip_transform(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<BogoliubovTransform> {
    Ok(per_trip_transform(setup, traj)?.repeated(traj.repetitions()))
}

/// Closed-form second-order `A₁₁` for one round trip, with the mode sums cut at `k_max`.
pub fn closed_form_a11(theta_a: f64, theta_i: f64, h: f64, k_max: usize) -> Complex64 {
    let e = |phase: f64| Complex64::from_polar(1.0, phase);
    let (ta, ti) = (theta_a, theta_i);
    let alpha11 = coefficient_series(1, 1).alpha2;

    let mut out = (1.0 + 6.0 * alpha11 * h * h) * e(4.0 * ta + 2.0 * ti);
    for k in 2..=k_max {
        let c = coefficient_series(k, 1);
        let kf = k as f64;
        if c.alpha1 != 0.0 {
            let bracket = 2.0 * e((kf + 3.0) * ta + 2.0 * ti)
                + 2.0 * e(2.0 * (kf + 1.0) * ta + (kf + 1.0) * ti)
                - 2.0 * e((3.0 * kf + 1.0) * ta + (kf + 1.0) * ti)
                - 2.0 * e((3.0 * kf + 1.0) * ta + 2.0 * kf * ti)
                + 2.0 * e((kf + 3.0) * ta + (kf + 1.0) * ti)
                - 2.0 * e(4.0 * ta + (kf + 1.0) * ti)
                + e(2.0 * (kf + 1.0) * ta + 2.0 * ti)
                + e(4.0 * kf * ta + 2.0 * kf * ti)
                + e(2.0 * (kf + 1.0) * ta + 2.0 * kf * ti);
            out += h * h * c.alpha1 * c.alpha1 * bracket;
        }
        if c.beta1 != 0.0 {
            let bracket = 2.0 * e((-kf + 3.0) * ta + 2.0 * ti)
                + 2.0 * e(2.0 * (-kf + 1.0) * ta + (-kf + 1.0) * ti)
                - 2.0 * e((-3.0 * kf + 1.0) * ta + (-kf + 1.0) * ti)
                - 2.0 * e((-3.0 * kf + 1.0) * ta - 2.0 * kf * ti)
                + 2.0 * e((-kf + 3.0) * ta + (-kf + 1.0) * ti)
                - 2.0 * e(4.0 * ta + (-kf + 1.0) * ti)
                + e(2.0 * (-kf + 1.0) * ta + 2.0 * ti)
                + e(-4.0 * kf * ta - 2.0 * kf * ti)
                + e(2.0 * (-kf + 1.0) * ta - 2.0 * kf * ti);
            out -= h * h * c.beta1 * c.beta1 * bracket;
        }
    }
    out
}

/// Closed-form second-order `B₁₁` for one round trip, with the mode sum cut at `k_max`.
pub fn closed_form_b11(theta_a: f64, theta_i: f64, h: f64, k_max: usize) -> Complex64 {
    let (ta, ti) = (theta_a, theta_i);
    let beta11 = coefficient_series(1, 1).beta2;
    let mut re = beta11 * ((4.0 * ta + 2.0 * ti).sin() - (2.0 * ta + 2.0 * ti).sin() + (2.0 * ta).sin());
    for k in 2..=k_max {
        let c = coefficient_series(k, 1);
        let weight = c.alpha1 * c.beta1;
        if weight == 0.0 {
            continue;
        }
        let kf = k as f64;
        let bracket = ((4.0 * ta + 2.0 * ti) * kf).sin()
            - 2.0 * ((3.0 * ta + 2.0 * ti) * kf).sin() * ta.cos()
            - 2.0 * ((3.0 * ta + ti) * kf).sin() * (ta + ti).cos()
            + ((2.0 * ta + 2.0 * ti) * kf).sin()
            + 2.0 * ((2.0 * ta + ti) * kf).sin() * ti.cos()
            + (2.0 * ta * kf).sin()
            + 2.0 * ((ta + ti) * kf).sin() * (3.0 * ta + ti).cos()
            + 2.0 * (ta * kf).sin() * (3.0 * ta + 2.0 * ti).cos()
            - 2.0 * (ti * kf).sin() * (2.0 * ta + ti).cos();
        re += weight * bracket;
    }
    Complex64::new(0.0, 2.0 * h * h * re)
}

/// Wrap an angle into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    if y > PI {
        y -= two_pi;
    }
    y
}

/// `−Im(A₁₁ − B₁₁) / Re(A₁₁ − B₁₁)`: the tangent of the first-mode phase shift.
pub fn phase_tangent(a11: Complex64, b11: Complex64) -> f64 {
    let d = a11 - b11;
    -d.im / d.re
}

/// Unwrapped clock phase of the fundamental mode.
///
/// The coherent amplitude of mode 1 ends up multiplied by `(A₁₁ − B₁₁)*`, so
/// it rotates by `−Θ` with `Θ = arg(A₁₁ − B₁₁)`. `Θ` is reported positive and
/// unwrapped to the branch nearest `reference` (normally `4θ_a + 2θ_i`
/// times the number of trips).
pub fn phase_shift(a11: Complex64, b11: Complex64, reference: f64) -> Result<f64> {
    let d = a11 - b11;
    if d.norm() == 0.0 || !d.norm().is_finite() {
        return Err(Error::DegenerateState);
    }
    // arg(d · e^{-i ref}) = arg(d) − ref, already wrapped.
    let offset = (d * Complex64::from_polar(1.0, -wrap_angle(reference))).arg();
    Ok(reference + wrap_angle(offset))
}

/// Per-trip fundamental-mode phases of four clocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseDecomposition {
    /// Pointlike ideal clock carried at the cavity center.
    pub theta_point: f64,
    /// Rigid cavity without mode mixing or particle creation, `4θ_a + 2θ_i`.
    pub theta_rigid: f64,
    /// Cavity with mode mixing, particle creation removed.
    pub theta_mix: f64,
    /// Cavity with mode mixing and particle creation.
    pub theta_full: f64,
}

/// Clock-size and quantum corrections relative to the pointlike clock,
/// each normalized by the pointlike time dilation `t_t − τ_point`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedShifts {
    /// `(τ_rigid − τ_point) / (t_t − τ_point)`.
    pub clock_size: f64,
    /// `(τ_full − τ_point) / (t_t − τ_point)`.
    pub with_dce: f64,
    /// `(τ_full − τ_mix) / (t_t − τ_point)`.
    pub particle_creation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClockReport {
    pub repetitions: u32,
    pub fundamental_frequency: f64,
    pub theta_rob_per_trip: f64,
    pub theta_alice_per_trip: f64,
    /// Alice's minus Rob's phase after all repetitions, from exact composition.
    pub relative_phase_total: f64,
    /// Same quantity from the per-trip phase times the repetition count.
    pub relative_phase_additive: f64,
    pub tau_rob: f64,
    pub tau_alice: f64,
    pub decomposition: PhaseDecomposition,
    pub normalized: NormalizedShifts,
}

impl ClockReport {
    pub fn relative_phase_deg(&self) -> f64 {
        self.relative_phase_total.to_degrees()
    }

    /// Extra phase lag of the rigid cavity clock over the pointlike clock, all trips.
    pub fn clock_size_excess(&self) -> f64 {
        self.repetitions as f64 * (self.decomposition.theta_point - self.decomposition.theta_rigid)
    }
}

fn normalized(d: &PhaseDecomposition, alice: f64) -> NormalizedShifts {
    let dilation = alice - d.theta_point;
    let ratio = |x: f64| if dilation == 0.0 { 0.0 } else { x / dilation };
    NormalizedShifts {
        clock_size: ratio(d.theta_rigid - d.theta_point),
        with_dce: ratio(d.theta_full - d.theta_point),
        particle_creation: ratio(d.theta_full - d.theta_mix),
    }
}

/// Clock phases for `traj`, split into pointlike, clock-size, mode-mixing and
/// particle-creation contributions.
pub fn phase_decomposition(setup: &CavitySetup, traj: &TrajectorySpec) -> Result<ClockReport> {
    let phases = TripPhases::from_setup(setup, traj)?;
    let modes = setup.mode_cutoff();
    let omega1 = setup.fundamental_frequency();
    let v = setup.light_speed();
    let reps = traj.repetitions();
    let rigid = phases.rigid_phase();

    let full = round_trip_from_phases(&phases, modes, Channel::Full)?;
    let mix = round_trip_from_phases(&phases, modes, Channel::MixingOnly)?;
    let theta_full = phase_shift(full.a11(), full.b11(), rigid)?;
    let theta_mix = phase_shift(mix.a11(), mix.b11(), rigid)?;

    let decomposition = PhaseDecomposition {
        theta_point: omega1 * physics::tau_point_trip(traj, v),
        theta_rigid: rigid,
        theta_mix,
        theta_full,
    };
    let alice = omega1 * traj.trip_duration();

    let total = full.repeated(reps);
    let theta_total = phase_shift(total.a11(), total.b11(), reps as f64 * rigid)?;
    let reps_f = reps as f64;

    Ok(ClockReport {
        repetitions: reps,
        fundamental_frequency: omega1,
        theta_rob_per_trip: theta_full,
        theta_alice_per_trip: alice,
        relative_phase_total: reps_f * alice - theta_total,
        relative_phase_additive: reps_f * (alice - theta_full),
        tau_rob: theta_total / omega1,
        tau_alice: reps_f * traj.trip_duration(),
        decomposition,
        normalized: normalized(&decomposition, alice),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::DEFAULT_LIGHT_SPEED;
    use approx::assert_relative_eq;

    fn setup(l: f64) -> CavitySetup {
        CavitySetup::new(l, DEFAULT_LIGHT_SPEED, 20).unwrap()
    }

    #[test]
    fn inertial_trip_is_free_evolution() {
        let s = setup(0.011);
        let t = TrajectorySpec::new(0.0, 1e-9, 0.0, 1).unwrap();
        let trip = per_trip_transform(&s, &t).unwrap();
        let free = BogoliubovTransform::free_evolution(s.fundamental_frequency() * 4e-9, 20);
        assert!(trip.max_abs_diff(&free) < 1e-13);
    }

    #[test]
    fn closed_forms_at_zero_h() {
        let (ta, ti) = (0.83, 0.21);
        let a = closed_form_a11(ta, ti, 0.0, 20);
        assert!((a - Complex64::from_polar(1.0, 4.0 * ta + 2.0 * ti)).norm() < 1e-15);
        assert_eq!(closed_form_b11(ta, ti, 0.0, 20), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn closed_form_at_zero_phases_is_identity() {
        // At zero phases the trip is S⁻¹S = 1. Each bracket sums to 3 and the
        // coefficient combination 2α²₁₁ + Σα¹² − Σβ¹² vanishes, so A₁₁ = 1
        // up to the tail beyond k_max.
        let h = 1e-2;
        let a = closed_form_a11(0.0, 0.0, h, 2000);
        assert!((a - Complex64::new(1.0, 0.0)).norm() < 1e-15, "{a}");
        let mut bracket_sum = 6.0 * coefficient_series(1, 1).alpha2;
        for k in 2..=2000 {
            let c = coefficient_series(k, 1);
            bracket_sum += 3.0 * (c.alpha1 * c.alpha1 - c.beta1 * c.beta1);
        }
        assert!((a.re - 1.0 - h * h * bracket_sum).abs() < 1e-16);
        assert_eq!(closed_form_b11(0.0, 0.0, h, 20).norm(), 0.0);
    }

    #[test]
    fn closed_form_truncation_decays() {
        let (ta, ti, h) = (1.1, 0.4, 1e-2);
        let converged = closed_form_a11(ta, ti, h, 5000);
        let k20 = closed_form_a11(ta, ti, h, 20);
        assert!((converged - k20).norm() < 1e-8);
        let b_conv = closed_form_b11(ta, ti, h, 5000);
        assert!((b_conv - closed_form_b11(ta, ti, h, 20)).norm() < 1e-8);
    }

    #[test]
    fn composed_trip_matches_closed_form() {
        let (ta, ti) = (0.7, 0.3);
        let h = 1e-3;
        let t = round_trip_from_phases(&TripPhases::new(h, ta, ti), 30, Channel::Full).unwrap();
        assert!((t.a11() - closed_form_a11(ta, ti, h, 30)).norm() < h.powi(3));
        assert!((t.b11() - closed_form_b11(ta, ti, h, 30)).norm() < h.powi(3));
    }

    #[test]
    fn phase_shift_pure_rotation() {
        for phi in [0.3, 2.9, -1.0, 40.0, 1234.5] {
            let got = phase_shift(Complex64::from_polar(1.0, phi), Complex64::new(0.0, 0.0), phi).unwrap();
            assert!((got - phi).abs() < 1e-12 * phi.abs().max(1.0));
        }
    }

    #[test]
    fn phase_shift_unwraps_to_nearest_branch() {
        let got = phase_shift(Complex64::from_polar(1.0, 0.1), Complex64::new(0.0, 0.0), 4.0 * PI).unwrap();
        assert!((got - (4.0 * PI + 0.1)).abs() < 1e-14);
        let got = phase_shift(Complex64::from_polar(2.0, -0.1), Complex64::new(0.5, 0.0), 10.0 * PI).unwrap();
        let d = Complex64::from_polar(2.0, -0.1) - 0.5;
        assert!((got - (10.0 * PI + d.arg())).abs() < 1e-13);
    }

    #[test]
    fn phase_shift_degenerate() {
        let z = Complex64::new(0.3, -0.2);
        assert_eq!(phase_shift(z, z, 0.0), Err(Error::DegenerateState));
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_angle(0.25), 0.25);
    }

    #[test]
    fn zero_acceleration_decomposition() {
        let s = setup(0.011);
        let t = TrajectorySpec::new(0.0, 1e-9, 2e-9, 10).unwrap();
        let r = phase_decomposition(&s, &t).unwrap();
        let d = r.decomposition;
        let tol = 1e-12 * r.theta_alice_per_trip;
        for p in [d.theta_point, d.theta_rigid, d.theta_mix, d.theta_full] {
            assert!((p - r.theta_alice_per_trip).abs() < tol);
        }
        assert!(r.relative_phase_total.abs() < 1e-9);
        assert_eq!(r.normalized.clock_size, 0.0);
    }

    #[test]
    fn report_consistency() {
        let s = setup(0.011);
        let t = TrajectorySpec::new(1.7e15, 1e-9, 0.5e-9, 20).unwrap();
        let r = phase_decomposition(&s, &t).unwrap();
        assert!(r.theta_rob_per_trip <= r.theta_alice_per_trip);
        assert!(r.tau_rob < r.tau_alice);
        assert_relative_eq!(r.tau_alice * r.fundamental_frequency, 20.0 * r.theta_alice_per_trip, max_relative = 1e-14);
        assert_relative_eq!(
            r.tau_rob * r.fundamental_frequency,
            20.0 * r.theta_alice_per_trip - r.relative_phase_total,
            max_relative = 1e-14
        );
        // exact and additive repetition paths agree to O(h²) per trip
        let h: f64 = 1.3e-3;
        assert!((r.relative_phase_total - r.relative_phase_additive).abs() < 20.0 * h * h);
    }

    #[test]
    fn mixing_only_has_no_creation() {
        let p = TripPhases::new(1e-2, 0.9, 0.2);
        let t = round_trip_from_phases(&p, 12, Channel::MixingOnly).unwrap();
        assert_eq!(t.particle_number(), 0.0);
        assert!(round_trip_from_phases(&p, 12, Channel::Full).unwrap().particle_number() > 0.0);
    }
}
