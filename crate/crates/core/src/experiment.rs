//! Mirror worldlines and hardware-feasibility checks for a circuit realization.
//!
//! Each mirror follows its own hyperbola during an accelerated segment, so
//! that the cavity moves rigidly: the mirror nearer the horizon has the larger
//! proper acceleration and reaches the common end rapidity earlier in lab
//! time. Coasts are straight lines. Positions here are effective boundary
//! positions; no flux model is attempted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physics::{dimensionless_h, kinematic_summary, CavitySetup, TrajectorySpec};

/// Limits of the experimental platform. All set values must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HardwareConstraints {
    pub max_acceleration: f64,
    pub max_displacement: f64,
    pub max_total_time: f64,
    pub min_segment_time: f64,
    /// SQUID plasma frequency in rad/s; the check is skipped when unset.
    pub plasma_frequency: Option<f64>,
}

impl Default for HardwareConstraints {
    fn default() -> Self {
        Self {
            max_acceleration: 1.7e15,
            max_displacement: 3e-3,
            max_total_time: 2e-6,
            min_segment_time: 1e-9,
            plasma_frequency: None,
        }
    }
}

impl HardwareConstraints {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("max_acceleration", self.max_acceleration),
            ("max_displacement", self.max_displacement),
            ("max_total_time", self.max_total_time),
            ("min_segment_time", self.min_segment_time),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {value}")));
            }
        }
        if let Some(p) = self.plasma_frequency {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::invalid("plasma_frequency", format!("must be finite and > 0, got {p}")));
            }
        }
        Ok(())
    }
}

/// Relative slack on limit comparisons, so values quoted at the limit pass.
const LIMIT_SLACK: f64 = 1e-9;

fn within_upper(value: f64, limit: f64) -> bool {
    value <= limit * (1.0 + LIMIT_SLACK)
}

fn within_lower(value: f64, limit: f64) -> bool {
    value >= limit * (1.0 - LIMIT_SLACK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub measured: f64,
    pub limit: f64,
    /// `"max"` if `measured` must stay below `limit`, `"min"` if above.
    pub kind: &'static str,
    pub passed: bool,
}

impl ConstraintCheck {
    fn upper(name: &str, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, limit, kind: "max", passed: within_upper(measured, limit) }
    }

    fn lower(name: &str, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, limit, kind: "min", passed: within_lower(measured, limit) }
    }

    fn strictly_above(name: &str, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, limit, kind: "min", passed: measured > limit }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub checks: Vec<ConstraintCheck>,
    /// Proper acceleration of the inner mirror, `a/(1 − h/2)`. Informational.
    pub inner_mirror_acceleration: f64,
    /// Proper acceleration of the outer mirror, `a/(1 + h/2)`. Informational.
    pub outer_mirror_acceleration: f64,
    /// `None` when the cavity does not fit in the Rindler wedge.
    pub h: Option<f64>,
    pub passed: bool,
}

impl FeasibilityReport {
    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks a trip against the platform limits.
///
/// The acceleration limit is compared against the acceleration `a` of the
/// cavity center; the mirror accelerations `a/(1 ± h/2)` are reported
/// alongside. The segment-time limit is compared against `t_a` and, when
/// present, `t_i`.
pub fn feasibility_check(
    setup: &CavitySetup,
    traj: &TrajectorySpec,
    constraints: &HardwareConstraints,
) -> FeasibilityReport {
    let a = traj.proper_acceleration();
    let v = setup.light_speed();
    let h = dimensionless_h(setup, traj).ok();
    let mut checks = Vec::new();

    checks.push(ConstraintCheck {
        name: "rindler_wedge".into(),
        measured: a * setup.proper_length() / (v * v),
        limit: 2.0,
        kind: "max",
        passed: h.is_some(),
    });

    let displacement = match kinematic_summary(setup, traj) {
        Ok(k) => k.max_displacement,
        Err(_) => f64::INFINITY,
    };
    checks.push(ConstraintCheck::upper("displacement", displacement, constraints.max_displacement));
    checks.push(ConstraintCheck::upper("acceleration", a, constraints.max_acceleration));
    let total = f64::from(traj.repetitions()) * traj.trip_duration();
    checks.push(ConstraintCheck::upper("total_time", total, constraints.max_total_time));
    if a > 0.0 || traj.accel_duration() > 0.0 {
        checks.push(ConstraintCheck::lower("accel_segment_time", traj.accel_duration(), constraints.min_segment_time));
    }
    if traj.inertial_duration() > 0.0 {
        checks.push(ConstraintCheck::lower(
            "inertial_segment_time",
            traj.inertial_duration(),
            constraints.min_segment_time,
        ));
    }
    if let Some(plasma) = constraints.plasma_frequency {
        let top_mode = setup.fundamental_frequency() * setup.mode_cutoff() as f64;
        checks.push(ConstraintCheck::strictly_above("plasma_vs_top_mode", plasma, top_mode));
        if traj.accel_duration() > 0.0 {
            let switching = std::f64::consts::PI / traj.accel_duration();
            checks.push(ConstraintCheck::strictly_above("plasma_vs_switching", plasma, switching));
        }
    }

    let half = h.unwrap_or(f64::NAN) / 2.0;
    let passed = checks.iter().all(|c| c.passed);
    FeasibilityReport {
        checks,
        inner_mirror_acceleration: a / (1.0 - half),
        outer_mirror_acceleration: a / (1.0 + half),
        h,
        passed,
    }
}

/// One piece of a mirror worldline: constant proper acceleration `accel`
/// (signed, zero for a coast) starting at `(t0, x0)` with `sinh` of the
/// rapidity equal to `s0`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    t0: f64,
    duration: f64,
    x0: f64,
    s0: f64,
    accel: f64,
}

/// Kinematic state on a worldline: position, velocity and `sinh` of the rapidity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorState {
    pub position: f64,
    pub velocity: f64,
    pub sinh_rapidity: f64,
}

impl Piece {
    fn state(&self, t: f64, v: f64) -> MirrorState {
        let dt = t - self.t0;
        let c0 = self.s0.hypot(1.0);
        if self.accel == 0.0 {
            let velocity = v * self.s0 / c0;
            return MirrorState { position: self.x0 + velocity * dt, velocity, sinh_rapidity: self.s0 };
        }
        let ds = self.accel * dt / v;
        let s = self.s0 + ds;
        let c = s.hypot(1.0);
        // (v²/g)(cosh w − cosh w₀) with the difference of cosines taken exactly.
        let position = self.x0 + v * dt * (2.0 * self.s0 + ds) / (c + c0);
        MirrorState { position, velocity: v * s / c, sinh_rapidity: s }
    }

    fn end(&self) -> f64 {
        self.t0 + self.duration
    }
}

/// Analytic worldline of one mirror over all repetitions.
///
/// A trip ends at rest where it started, so one trip is stored and trip `k`
/// is the same worldline shifted by `k t_t` in time. Rounding therefore does
/// not accumulate from trip to trip.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorWorldline {
    pieces: Vec<Piece>,
    trip_duration: f64,
    repetitions: u32,
    light_speed: f64,
    proper_length: f64,
}

impl MirrorWorldline {
    /// `side` is −1 for the left mirror and +1 for the right one.
    fn build(setup: &CavitySetup, traj: &TrajectorySpec, h: f64, side: f64) -> Self {
        let v = setup.light_speed();
        let a = traj.proper_acceleration();
        let (t_a, t_i) = (traj.accel_duration(), traj.inertial_duration());
        // (direction of acceleration, duration in units of t_a), each followed by a coast but the last
        let accelerated = [(1.0, 1.0), (-1.0, 2.0), (1.0, 1.0)];

        let mut pieces = Vec::with_capacity(5);
        let (mut t, mut x, mut s) = (0.0, side * setup.proper_length() / 2.0, 0.0);
        for (k, &(dir, span)) in accelerated.iter().enumerate() {
            // distance from the horizon in units of v²/a
            let stretch = 1.0 + dir * side * h / 2.0;
            let mut segment = vec![(span * t_a * stretch, dir * a / stretch)];
            if k < 2 {
                segment.push((t_i, 0.0));
            }
            for (duration, accel) in segment {
                let p = Piece { t0: t, duration, x0: x, s0: s, accel };
                let end = p.state(p.end(), v);
                (t, x, s) = (p.end(), end.position, end.sinh_rapidity);
                pieces.push(p);
            }
        }
        Self {
            pieces,
            trip_duration: traj.trip_duration(),
            repetitions: traj.repetitions(),
            light_speed: v,
            proper_length: setup.proper_length(),
        }
    }

    /// State at lab time `t`. Times outside `[0, repetitions · t_t]` are
    /// extrapolated along the first or last piece.
    pub fn state(&self, t: f64) -> MirrorState {
        let last = self.repetitions.saturating_sub(1) as f64;
        let trip = if self.trip_duration > 0.0 { (t / self.trip_duration).floor().clamp(0.0, last) } else { 0.0 };
        let local = t - trip * self.trip_duration;
        let i = self.pieces.partition_point(|p| p.end() <= local).min(self.pieces.len() - 1);
        self.pieces[i].state(local, self.light_speed)
    }

    /// Every join over all trips: lab time, end state before it, start state after it.
    fn joins(&self) -> Vec<(f64, MirrorState, MirrorState)> {
        let v = self.light_speed;
        let first = &self.pieces[0];
        let final_piece = self.pieces.last().expect("a trip has pieces");
        let mut out = Vec::new();
        for k in 0..self.repetitions {
            let offset = f64::from(k) * self.trip_duration;
            if k > 0 {
                out.push((offset, final_piece.state(final_piece.end(), v), first.state(first.t0, v)));
            }
            for w in self.pieces.windows(2) {
                out.push((offset + w[1].t0, w[0].state(w[0].end(), v), w[1].state(w[1].t0, v)));
            }
        }
        out
    }

    /// Lab times at which one segment ends and the next begins.
    pub fn boundaries(&self) -> Vec<f64> {
        self.joins().into_iter().map(|(t, _, _)| t).collect()
    }

    /// End state before and start state after each join.
    pub fn boundary_states(&self) -> Vec<(MirrorState, MirrorState)> {
        self.joins().into_iter().map(|(_, a, b)| (a, b)).collect()
    }

    /// Largest jump across joins, position relative to the cavity length and
    /// velocity relative to the peak speed of the motion.
    pub fn continuity_error(&self) -> f64 {
        let joins = self.joins();
        let peak = joins.iter().map(|(_, a, b)| a.velocity.abs().max(b.velocity.abs())).fold(0.0, f64::max);
        joins
            .iter()
            .map(|(_, end, start)| {
                let dx = (end.position - start.position).abs() / self.proper_length;
                let jump = (end.velocity - start.velocity).abs();
                let dv = if jump == 0.0 { 0.0 } else { jump / peak };
                dx.max(dv)
            })
            .fold(0.0, f64::max)
    }
}

/// Sampled positions and velocities of both mirrors, with the analytic worldlines.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorWorldlines {
    pub sample_times: Vec<f64>,
    pub left_position: Vec<f64>,
    pub right_position: Vec<f64>,
    pub left_velocity: Vec<f64>,
    pub right_velocity: Vec<f64>,
    pub left: MirrorWorldline,
    pub right: MirrorWorldline,
    proper_length: f64,
}

/// Upper bound on the number of samples a single call will produce.
pub const MAX_SAMPLES: usize = 50_000_000;

pub fn mirror_worldlines(setup: &CavitySetup, traj: &TrajectorySpec, dt: f64) -> Result<MirrorWorldlines> {
    let h = dimensionless_h(setup, traj)?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    let total = f64::from(traj.repetitions()) * traj.trip_duration();
    let steps = (total / dt * (1.0 + 1e-12)).floor();
    if steps + 1.0 > MAX_SAMPLES as f64 {
        return Err(Error::invalid("dt", format!("would produce {} samples (limit {MAX_SAMPLES})", steps + 1.0)));
    }
    let left = MirrorWorldline::build(setup, traj, h, -1.0);
    let right = MirrorWorldline::build(setup, traj, h, 1.0);

    let n = steps as usize + 1;
    let mut out = MirrorWorldlines {
        sample_times: Vec::with_capacity(n),
        left_position: Vec::with_capacity(n),
        right_position: Vec::with_capacity(n),
        left_velocity: Vec::with_capacity(n),
        right_velocity: Vec::with_capacity(n),
        left,
        right,
        proper_length: setup.proper_length(),
    };
    for k in 0..n {
        let t = (k as f64 * dt).min(total);
        let (l, r) = (out.left.state(t), out.right.state(t));
        out.sample_times.push(t);
        out.left_position.push(l.position);
        out.right_position.push(r.position);
        out.left_velocity.push(l.velocity);
        out.right_velocity.push(r.velocity);
    }
    Ok(out)
}

impl MirrorWorldlines {
    pub fn len(&self) -> usize {
        self.sample_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sample_times.is_empty()
    }

    /// Proper distance from the left mirror at sample `i` to the right mirror,
    /// measured along the left mirror's instantaneous line of simultaneity.
    pub fn proper_separation(&self, i: usize) -> f64 {
        let t = self.sample_times[i];
        let v = self.left.light_speed;
        let l = self.left.state(t);
        let c = l.sinh_rapidity.hypot(1.0);
        // the line is (t + λ sinh w / v, x + λ cosh w); find where it meets the right worldline
        let mut lambda = self.proper_length;
        for _ in 0..50 {
            let r = self.right.state(t + lambda * l.sinh_rapidity / v);
            let gap = r.position - l.position - lambda * c;
            let slope = r.velocity * l.sinh_rapidity / v - c;
            let step = gap / slope;
            lambda -= step;
            if step.abs() <= 1e-16 * lambda.abs() {
                break;
            }
        }
        lambda
    }

    /// Largest `|separation − L| / L` over all samples.
    pub fn rigidity_error(&self) -> f64 {
        (0..self.len())
            .map(|i| (self.proper_separation(i) - self.proper_length).abs() / self.proper_length)
            .fold(0.0, f64::max)
    }

    /// Largest continuity jump over both mirrors.
    pub fn continuity_error(&self) -> f64 {
        self.left.continuity_error().max(self.right.continuity_error())
    }

    /// Largest displacement of either mirror from its starting position.
    pub fn peak_displacement(&self) -> f64 {
        let peak = |xs: &[f64]| xs.iter().map(|x| (x - xs[0]).abs()).fold(0.0, f64::max);
        peak(&self.left_position).max(peak(&self.right_position))
    }

    /// CSV with one header row, LF line endings and 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(80 * (self.len() + 1));
        out.push_str("time_s,left_pos_m,right_pos_m,left_vel_mps,right_vel_mps\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
                self.sample_times[i],
                self.left_position[i],
                self.right_position[i],
                self.left_velocity[i],
                self.right_velocity[i]
            ));
        }
        out
    }
}
