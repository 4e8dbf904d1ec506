use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use crate::bogoliubov::{
    closed_form_a11, closed_form_b11, coefficient_series, per_trip_transform, phase_decomposition, ClockReport,
    TripPhases,
};
use crate::error::{Error, Result};
use crate::experiment::{feasibility_check, mirror_worldlines, FeasibilityReport, MirrorWorldlines};
use crate::oracle::{series_validation_with, ValidationOptions, ValidationReport};
use crate::physics::{kinematic_summary, KinematicSummary};

/// Bumped whenever a field of the simulate JSON is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormCheck {
    pub sum_cutoff: usize,
    pub composed_a11: [f64; 2],
    pub closed_form_a11: [f64; 2],
    pub a11_abs_diff: f64,
    pub composed_b11: [f64; 2],
    pub closed_form_b11: [f64; 2],
    pub b11_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationOutput {
    pub schema_version: u32,
    pub config: RunConfig,
    pub relative_phase_rad: f64,
    pub relative_phase_deg: f64,
    pub relative_phase_additive_rad: f64,
    pub clock_size_excess_rad: f64,
    pub clock_size_excess_deg: f64,
    pub phases_per_segment: TripPhases,
    pub clock: ClockReport,
    pub kinematics: KinematicSummary,
    pub feasibility: FeasibilityReport,
    pub closed_form_check: ClosedFormCheck,
}

pub fn simulate(config: &RunConfig) -> Result<SimulationOutput> {
    config.validate()?;
    let setup = config.setup()?;
    let traj = config.trajectory()?;
    let clock = phase_decomposition(&setup, &traj)?;
    let phases = TripPhases::from_setup(&setup, &traj)?;

    let k = config.numerics.closed_form_sum_cutoff;
    let trip = per_trip_transform(&setup, &traj)?;
    let (a, b) = (trip.a11(), trip.b11());
    let (ca, cb) = (
        closed_form_a11(phases.theta_a, phases.theta_i, phases.h, k),
        closed_form_b11(phases.theta_a, phases.theta_i, phases.h, k),
    );
    let closed_form_check = ClosedFormCheck {
        sum_cutoff: k,
        composed_a11: [a.re, a.im],
        closed_form_a11: [ca.re, ca.im],
        a11_abs_diff: (a - ca).norm(),
        composed_b11: [b.re, b.im],
        closed_form_b11: [cb.re, cb.im],
        b11_abs_diff: (b - cb).norm(),
    };

    Ok(SimulationOutput {
        schema_version: SCHEMA_VERSION,
        config: *config,
        relative_phase_rad: clock.relative_phase_total,
        relative_phase_deg: clock.relative_phase_deg(),
        relative_phase_additive_rad: clock.relative_phase_additive,
        clock_size_excess_rad: clock.clock_size_excess(),
        clock_size_excess_deg: clock.clock_size_excess().to_degrees(),
        phases_per_segment: phases,
        kinematics: kinematic_summary(&setup, &traj)?,
        feasibility: feasibility_check(&setup, &traj, &config.constraints),
        closed_form_check,
        clock,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    /// Proper acceleration of the cavity center, m/s².
    Acceleration,
    /// Cavity proper length, m.
    Length,
    /// Lab duration of one accelerated segment, s.
    AccelDuration,
    /// Number of round trips; values are rounded to the nearest integer.
    Repetitions,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SweepRange {
    /// Evenly spaced values from `min` to `max` inclusive.
    pub fn values(&self) -> Result<Vec<f64>> {
        let Self { min, max, points } = *self;
        if !(min.is_finite() && max.is_finite() && min > 0.0) {
            return Err(Error::invalid("min", format!("range must be finite and positive, got [{min}, {max}]")));
        }
        if max < min {
            return Err(Error::invalid("max", format!("must be >= min, got [{min}, {max}]")));
        }
        match points {
            0 => Err(Error::invalid("points", "must be >= 1")),
            1 if max != min => Err(Error::invalid("points", "a single point needs min == max")),
            1 => Ok(vec![min]),
            _ => {
                let step = (max - min) / (points - 1) as f64;
                Ok((0..points).map(|k| if k + 1 == points { max } else { min + step * k as f64 }).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub relative_phase_rad: f64,
    pub relative_phase_deg: f64,
    pub theta_point: f64,
    pub theta_rigid: f64,
    pub theta_mix: f64,
    pub theta_full: f64,
    pub norm_clock_size: f64,
    pub norm_with_dce: f64,
    pub norm_particle_creation: f64,
}

fn apply_axis(config: &RunConfig, axis: SweepAxis, value: f64) -> Result<RunConfig> {
    let mut c = *config;
    match axis {
        SweepAxis::Acceleration => c.trajectory.proper_acceleration_m_per_s2 = value,
        SweepAxis::Length => c.cavity.length_m = value,
        SweepAxis::AccelDuration => c.trajectory.accel_duration_s = value,
        SweepAxis::Repetitions => {
            let n = value.round();
            if !(1.0..=f64::from(u32::MAX)).contains(&n) {
                return Err(Error::invalid("repetitions", format!("sweep value {value} is not a valid count")));
            }
            c.trajectory.repetitions = n as u32;
        }
    }
    Ok(c)
}

/// One row per axis value, evaluated in parallel and returned in input order.
pub fn sweep(config: &RunConfig, axis: SweepAxis, range: &SweepRange) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let values = range.values()?;
    values
        .par_iter()
        .map(|&value| {
            let c = apply_axis(config, axis, value)?;
            let report = phase_decomposition(&c.setup()?, &c.trajectory()?)?;
            let d = report.decomposition;
            let n = report.normalized;
            Ok(SweepRow {
                axis_value: if axis == SweepAxis::Repetitions { value.round() } else { value },
                relative_phase_rad: report.relative_phase_total,
                relative_phase_deg: report.relative_phase_deg(),
                theta_point: d.theta_point,
                theta_rigid: d.theta_rigid,
                theta_mix: d.theta_mix,
                theta_full: d.theta_full,
                norm_clock_size: n.clock_size,
                norm_with_dce: n.with_dce,
                norm_particle_creation: n.particle_creation,
            })
        })
        .collect()
}

pub const SWEEP_HEADER: &str = "axis_value,relative_phase_rad,relative_phase_deg,theta_point,theta_rigid,theta_mix,\
theta_full,norm_clock_size,norm_with_dce,norm_particle_creation";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let cols = [
            r.axis_value,
            r.relative_phase_rad,
            r.relative_phase_deg,
            r.theta_point,
            r.theta_rigid,
            r.theta_mix,
            r.theta_full,
            r.norm_clock_size,
            r.norm_with_dce,
            r.norm_particle_creation,
        ];
        let line: Vec<String> = cols.iter().map(|x| format!("{x:.11e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Deliberate error in one pair of series coefficients: every `h`-dependent
/// coefficient of `(m, n)` is multiplied by `factor`. Used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub m: usize,
    pub n: usize,
    pub factor: f64,
}

impl std::str::FromStr for Perturbation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [m, n, f] = parts[..] else {
            return Err(format!("expected M,N,FACTOR, got `{s}`"));
        };
        let m = m.parse().map_err(|e| format!("bad M `{m}`: {e}"))?;
        let n = n.parse().map_err(|e| format!("bad N `{n}`: {e}"))?;
        let factor = f.parse().map_err(|e| format!("bad FACTOR `{f}`: {e}"))?;
        if m == 0 || n == 0 {
            return Err("mode indices start at 1".into());
        }
        Ok(Self { m, n, factor })
    }
}

pub fn validate(
    config: &RunConfig,
    h_list: &[f64],
    m_max: usize,
    bound_factor: f64,
    perturbation: Option<Perturbation>,
) -> Result<ValidationReport> {
    config.validate()?;
    if !(bound_factor.is_finite() && bound_factor > 0.0) {
        return Err(Error::invalid("bound_factor", format!("must be finite and > 0, got {bound_factor}")));
    }
    let opts = ValidationOptions {
        bound_factor,
        quadrature_rel_tol: config.numerics.quadrature_rel_tol,
        ..Default::default()
    };
    let series = move |m, n| {
        let mut c = coefficient_series(m, n);
        if let Some(p) = perturbation.filter(|p| (p.m, p.n) == (m, n)) {
            c.alpha1 *= p.factor;
            c.alpha2 *= p.factor;
            c.beta1 *= p.factor;
            c.beta2 *= p.factor;
        }
        c
    };
    series_validation_with(h_list, m_max, &opts, series)
}

pub fn waveform(config: &RunConfig, dt: f64) -> Result<MirrorWorldlines> {
    config.validate()?;
    mirror_worldlines(&config.setup()?, &config.trajectory()?, dt)
}
