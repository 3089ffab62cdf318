use std::path::PathBuf;

use berry_spin::{Error, ModelParams};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "berry-spin",
    version,
    about = "Spin-1/2 in a rotating field: evolution, generalized geometric phase, periods"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one full record at a single time.
    Evolve {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep time, omega'/omega or omega T' and emit one record per sample.
    Sweep {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve for omega T' where n state cycles fit m field cycles.
    Commensurate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        cos_beta: f64,
    },
    /// Check every closed form against the RK4 oracles and invariants.
    Verify {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// End time of the oracle runs (default: 10 max(T', T'')).
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        steps_per_period: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Energy splitting omega.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Field rotation rate as omega'/omega.
    #[arg(long, default_value_t = 1.0)]
    pub omega_ratio: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub cos_beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gauge_a: f64,
    #[arg(long, default_value_t = ModelParams::DEFAULT_GAUGE_B, allow_hyphen_values = true)]
    pub gauge_b: f64,
}

impl PhysicsArgs {
    pub fn params(&self) -> Result<ModelParams, Error> {
        self.params_with_ratio(self.omega_ratio)
    }

    pub fn params_with_ratio(&self, ratio: f64) -> Result<ModelParams, Error> {
        Ok(
            ModelParams::from_cos_beta(self.omega, ratio * self.omega, self.cos_beta)?
                .with_alpha(self.alpha)
                .with_gauge(self.gauge_a, self.gauge_b),
        )
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct TimeArgs {
    /// Time in units of the field period T'.
    #[arg(long, allow_hyphen_values = true)]
    pub t_over_tprime: Option<f64>,
    /// Time in units of the state period T''.
    #[arg(long, allow_hyphen_values = true)]
    pub t_over_tsecond: Option<f64>,
    /// Absolute time.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
}

impl TimeArgs {
    pub fn unit_and_value(&self) -> (TimeUnit, f64) {
        match (self.t_over_tprime, self.t_over_tsecond, self.t) {
            (Some(v), _, _) => (TimeUnit::Tprime, v),
            (_, Some(v), _) => (TimeUnit::Tsecond, v),
            (_, _, Some(v)) => (TimeUnit::T, v),
            _ => unreachable!("clap enforces one time flag"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TimeUnit {
    /// Absolute time.
    #[value(name = "t")]
    T,
    /// Multiples of T' = 2 pi / omega'.
    #[value(name = "tprime")]
    Tprime,
    /// Multiples of T'' = 2 pi / lambda.
    #[value(name = "tsecond")]
    Tsecond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    #[value(name = "time")]
    Time,
    #[value(name = "omega_ratio")]
    OmegaRatio,
    #[value(name = "omega_t_prime")]
    OmegaTPrime,
}

impl Variable {
    pub fn column(&self) -> &'static str {
        match self {
            Variable::Time => "time",
            Variable::OmegaRatio => "omega_ratio",
            Variable::OmegaTPrime => "omega_t_prime",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub variable: Variable,
    #[arg(long, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Logarithmic spacing.
    #[arg(long)]
    pub log: bool,
    /// Unit of start/stop for a time sweep.
    #[arg(long, value_enum, default_value_t = TimeUnit::T)]
    pub time_unit: TimeUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
