//! Cavity clocks on a relativistic round trip.
//!
//! A one-dimensional cavity of fixed proper length travels along a trip made
//! of constant-proper-acceleration and inertial segments. The field modes
//! before and after the trip are related by a Bogoliubov transformation; the
//! phase picked up by the fundamental mode is the clock reading. The crate
//! computes that transformation from second-order series in `h = aL/v²`,
//! compares the resulting clock against a pointlike ideal clock, splits the
//! difference into clock-size, mode-mixing and particle-creation parts, and
//! checks the series against direct quadrature of Klein-Gordon inner products.
//!
//! Modules:
//! - [`physics`]: setups, kinematics and closed-form proper times.
//! - [`bogoliubov`]: coefficient series, transform algebra, round trips and phase extraction.
//! - [`oracle`]: quadrature evaluation of the coefficients at finite `h`.
//! - [`experiment`]: mirror worldlines and hardware-feasibility checks.
//! - [`cli`]: configuration and the command-line subcommands.

pub mod bogoliubov;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod oracle;
pub mod physics;

pub use error::{Error, Result};
pub use physics::{CavitySetup, KinematicSummary, TrajectorySpec};
