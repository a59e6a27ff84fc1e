//! The `dimer-exciton` command-line front end.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{load, RunConfig};

/// Failures mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::NoSolution(_) => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Io(_) => CliError::Io(e.to_string()),
            crate::Error::NoSolution { .. } | crate::Error::NoMinimum { .. } => {
                CliError::NoSolution(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

const CONFIG_HELP: &str = "\
Configuration is a TOML file with the sections [dimer], [bath], [initial_state],
[time_grid], [sweep], [estimate], [helix] and [output]. Every key is optional;
defaults describe the FMO pigment dimer (omega1 = 120, omega2 = 0, j12 = -96,
lambda1 = 35 cm-1, |eta| = 1.64, theta = 0, T = 300 K, gamma_d = 1/50 fs-1).
Any key can be overridden with --set section.key=value.

Numbers are written with 9 significant digits. Exit codes: 0 ok, 2 config
error, 3 I/O error, 4 no solution.";

#[derive(Debug, Parser)]
#[command(name = "dimer-exciton", version, about = "Collective relaxation of a phonon-coupled oscillator dimer", after_help = CONFIG_HELP)]
pub struct Cli {
    /// TOML configuration file.
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,
    /// Override a configuration value, e.g. --set dimer.eta_abs=0.71
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE", global = true)]
    pub overrides: Vec<String>,
    /// Output directory (same as --set output.dir=DIR).
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exciton frame and decay rates of the configured dimer.
    #[command(after_help = "transform.csv columns: quantity,value\n\
        rows: phi0_rad, omega1p_cm1, omega2p_cm1, omega_plus_cm1, omega_minus_cm1, omega0_cm1,\n\
        lambda2_cm1, nbar0, alpha, inverse_alpha, gamma_fs1, lifetime_fs")]
    Transform,
    /// 1/alpha along |eta| for each sweep.thetas entry.
    #[command(after_help = "sweep.csv columns: theta_rad,eta_abs,inverse_alpha\n\
        rows grouped by theta in config order, eta ascending. --gnuplot also writes sweep.gp.")]
    Sweep {
        #[arg(long)]
        gnuplot: bool,
    },
    /// Minimum of 1/alpha over |eta| for each sweep.thetas entry.
    #[command(after_help = "minima.csv columns: quantity,theta_0,...,theta_{n-1}\n\
        rows: theta_rad, eta_min, inverse_alpha_min")]
    Minimize,
    /// Smallest |eta| with 1/alpha = estimate.target_ratio for each sweep.thetas entry.
    #[command(
        after_help = "estimate.csv columns: quantity,theta_0,...,theta_{n-1}\n\
        rows: theta_rad, target_ratio, eta_abs, lambda2_cm1, n_roots\n\
        --limit also writes estimate_limit.csv (quantity,value; rows gap0_cm1, j12_cm1, target_ratio, eta_abs)\n\
        Exits with code 4 when a target lies below the curve minimum."
    )]
    Estimate {
        /// Also apply the weak-coupling limit to the bare gap.
        #[arg(long)]
        limit: bool,
    },
    /// Analytic and RK4 trajectories of the configured initial state.
    #[command(after_help = "evolve_analytic.csv, evolve_numeric.csv columns:\n\
        t_fs,re_00,im_00,re_01,im_01,re_02,im_02,re_11,im_11,re_12,im_12,re_22,im_22\n\
        in time_grid.basis (index 0 = vacuum, 1/2 = sites or excitons)\n\
        evolve_diff.csv columns: t_fs,sup_diff")]
    Evolve,
    /// Attenuation factor from the helix transit time.
    #[command(after_help = "helix.csv columns: quantity,value\n\
        rows: a_angstrom, v_m_s, j12_cm1, alpha, inverse_alpha, gamma_fs1, lifetime_fs")]
    Helix,
    /// Bath shifts of the exciton energies from bath.modes_csv.
    #[command(after_help = "renorm.csv columns: quantity,value\n\
        rows: omega0_cm1, delta_plus_cm1, delta_minus_cm1, omega_plus_cm1, omega_minus_cm1,\n\
        omega_bar_plus_cm1, omega_bar_minus_cm1\n\
        Mode list header: omega_k_cm1,V2_k_cm2")]
    Renorm,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut overrides = cli.overrides.clone();
    if let Some(dir) = &cli.out {
        let dir = dir
            .to_string_lossy()
            .replace('\\', "\\\\")
            .replace('"', "\\\"");
        overrides.push(format!("output.dir=\"{dir}\""));
    }
    let cfg = load(cli.config.as_deref(), &overrides)?;
    match &cli.command {
        Command::Transform => commands::transform(&cfg, out),
        Command::Sweep { gnuplot } => commands::sweep(&cfg, *gnuplot, out),
        Command::Minimize => commands::minimize(&cfg, out),
        Command::Estimate { limit } => commands::estimate(&cfg, *limit, out),
        Command::Evolve => commands::evolve(&cfg, out),
        Command::Helix => commands::helix(&cfg, out),
        Command::Renorm => commands::renorm(&cfg, out),
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
