//! Command-line front end.
//!
//! Settings are resolved in three layers: built-in defaults, then the JSON
//! file given by `--config`, then individual flags. Data goes to `--out` or
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 2 configuration error, 3 physics-domain error
//! (cavity outside the Rindler wedge), 4 validation failure.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
pub use commands::{Perturbation, SimulationOutput, SweepAxis, SweepRange, SweepRow};
pub use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "twin-cavity", version, about = "Cavity clocks on an accelerated round trip", allow_negative_numbers = true)]
pub struct Cli {
    /// JSON run configuration; missing keys take their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write data here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Prefix the output with a line describing the tool version and resolved configuration.
    #[arg(long, global = true)]
    pub meta: bool,

    #[command(flatten)]
    pub overrides: Overrides,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags that take precedence over the configuration file.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long, global = true, value_name = "M/S")]
    pub light_speed: Option<f64>,
    #[arg(long, global = true, value_name = "M")]
    pub length: Option<f64>,
    #[arg(long, global = true, value_name = "N")]
    pub mode_cutoff: Option<usize>,
    #[arg(long, global = true, value_name = "M/S2")]
    pub acceleration: Option<f64>,
    #[arg(long, global = true, value_name = "S")]
    pub accel_duration: Option<f64>,
    #[arg(long, global = true, value_name = "S")]
    pub inertial_duration: Option<f64>,
    #[arg(long, global = true, value_name = "N")]
    pub repetitions: Option<u32>,
    #[arg(long, global = true, value_name = "K")]
    pub sum_cutoff: Option<usize>,
    #[arg(long, global = true, value_name = "TOL")]
    pub quad_tol: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, config: &mut RunConfig) {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut config.medium.light_speed_m_per_s, self.light_speed);
        set(&mut config.cavity.length_m, self.length);
        set(&mut config.trajectory.proper_acceleration_m_per_s2, self.acceleration);
        set(&mut config.trajectory.accel_duration_s, self.accel_duration);
        set(&mut config.trajectory.inertial_duration_s, self.inertial_duration);
        set(&mut config.numerics.quadrature_rel_tol, self.quad_tol);
        if let Some(n) = self.mode_cutoff {
            config.cavity.mode_cutoff = n;
        }
        if let Some(n) = self.repetitions {
            config.trajectory.repetitions = n;
        }
        if let Some(k) = self.sum_cutoff {
            config.numerics.closed_form_sum_cutoff = k;
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario and print the clock report as JSON.
    Simulate,
    /// Vary one parameter and print one CSV row per value.
    Sweep {
        #[arg(long, value_enum)]
        axis: SweepAxis,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// Compare the coefficient series against quadrature and print the error table as CSV.
    Validate {
        /// Comma-separated expansion parameters, each in (0, 0.1).
        #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 1e-2])]
        h_list: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        /// Allowed error is this factor times h³.
        #[arg(long, default_value_t = 5.0)]
        bound_factor: f64,
        /// Scale the series coefficients of one mode pair, as M,N,FACTOR.
        #[arg(long, value_name = "M,N,FACTOR")]
        perturb: Option<Perturbation>,
    },
    /// Sample both mirror worldlines and print them as CSV.
    Waveform {
        /// Sampling interval in seconds.
        #[arg(long)]
        dt: f64,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Domain(String),
    Validation(String),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Output(_) => 1,
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Validation(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Domain(m) | CliError::Validation(m) | CliError::Output(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::OutsideRindlerWedge { .. } | Error::DegenerateState => CliError::Domain(msg),
            Error::QuadratureNonConvergence { .. } => CliError::Validation(msg),
            _ => CliError::Config(msg),
        }
    }
}

/// Resolve defaults, file and flags into one configuration.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(CliError::Config)?,
        None => RunConfig::default(),
    };
    cli.overrides.apply(&mut config);
    config.validate()?;
    Ok(config)
}

fn meta_line(cli: &Cli, config: &RunConfig) -> String {
    let name = match cli.command {
        Command::Simulate => "simulate",
        Command::Sweep { .. } => "sweep",
        Command::Validate { .. } => "validate",
        Command::Waveform { .. } => "waveform",
    };
    let config = serde_json::to_string(config).expect("config serializes");
    format!("# twin-cavity {} {name} config={config}\n", env!("CARGO_PKG_VERSION"))
}

/// Run a parsed command and return the text it produces.
///
/// A failed validation still returns its table, paired with the error.
pub fn execute(cli: &Cli) -> (Option<String>, Result<(), CliError>) {
    let config = match resolve_config(cli) {
        Ok(c) => c,
        Err(e) => return (None, Err(e)),
    };
    let body = match &cli.command {
        Command::Simulate => commands::simulate(&config)
            .map(|out| {
                let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
                text.push('\n');
                text
            })
            .map_err(CliError::from),
        Command::Sweep { axis, min, max, points } => {
            let range = SweepRange { min: *min, max: *max, points: *points };
            commands::sweep(&config, *axis, &range).map(|rows| commands::sweep_csv(&rows)).map_err(CliError::from)
        }
        Command::Validate { h_list, m_max, bound_factor, perturb } => {
            match commands::validate(&config, h_list, *m_max, *bound_factor, *perturb) {
                Ok(report) => {
                    let text = report.to_csv();
                    let status = if report.passed() {
                        Ok(())
                    } else {
                        let failed = report.rows.iter().filter(|r| !r.passed).count();
                        let orders = report.order_checks.iter().filter(|c| !c.passed).count();
                        Err(CliError::Validation(format!(
                            "series validation failed: {failed} coefficient rows out of bound, {orders} order checks out of range"
                        )))
                    };
                    let text = with_meta(cli, &config, text);
                    return (Some(text), status);
                }
                Err(e) => Err(CliError::from(e)),
            }
        }
        Command::Waveform { dt } => match commands::waveform(&config, *dt) {
            Ok(w) => {
                let (rigid, jump) = (w.rigidity_error(), w.continuity_error());
                let text = with_meta(cli, &config, w.to_csv());
                let status = if rigid > 1e-12 || jump > 1e-12 {
                    Err(CliError::Validation(format!(
                        "worldline check failed: proper-length error {rigid:e}, continuity jump {jump:e}"
                    )))
                } else {
                    Ok(())
                };
                return (Some(text), status);
            }
            Err(e) => Err(CliError::from(e)),
        },
    };
    match body {
        Ok(text) => (Some(with_meta(cli, &config, text)), Ok(())),
        Err(e) => (None, Err(e)),
    }
}

fn with_meta(cli: &Cli, config: &RunConfig, text: String) -> String {
    if cli.meta {
        meta_line(cli, config) + &text
    } else {
        text
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Parse arguments, run, and report. Usage errors exit with code 2.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (text, status) = execute(&cli);
    if let Some(text) = text {
        if let Err(e) = emit(&cli, &text) {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    }
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("twin-cavity").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file_which_overrides_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"cavity": {"length_m": 0.06}, "trajectory": {"repetitions": 7}}"#).unwrap();
        let cli = parse(&["simulate", "--config", path.to_str().unwrap(), "--repetitions", "9"]);
        let c = resolve_config(&cli).unwrap();
        assert_eq!(c.cavity.length_m, 0.06);
        assert_eq!(c.trajectory.repetitions, 9);
        assert_eq!(c.trajectory.proper_acceleration_m_per_s2, 1.7e15);
    }

    #[test]
    fn error_classes() {
        let cli = parse(&["simulate", "--acceleration", "1e19"]);
        assert_eq!(execute(&cli).1.unwrap_err().exit_code(), 3);
        let cli = parse(&["simulate", "--length=-1"]);
        assert_eq!(execute(&cli).1.unwrap_err().exit_code(), 2);
        let cli = parse(&["simulate", "--config", "/nonexistent/run.json"]);
        assert_eq!(execute(&cli).1.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn meta_line_is_deterministic() {
        let cli = parse(&["sweep", "--axis", "length", "--min", "0.01", "--max", "0.02", "--points", "2", "--meta"]);
        let (a, _) = execute(&cli);
        let (b, _) = execute(&cli);
        let a = a.unwrap();
        assert_eq!(Some(a.clone()), b);
        assert!(a.starts_with("# twin-cavity "));
        assert_eq!(a.lines().count(), 1 + 1 + 2);
    }

    #[test]
    fn failed_validation_still_returns_table() {
        let cli = parse(&["validate", "--h-list", "0.01", "--m-max", "3", "--perturb", "2,1,1.1"]);
        let (text, status) = execute(&cli);
        assert!(text.unwrap().contains("coefficient,"));
        assert_eq!(status.unwrap_err().exit_code(), 4);
    }
}
