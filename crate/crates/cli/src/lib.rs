//! `kickwalk` command-line front end.
//!
//! Every command writes plain-text artifacts into `--out` together with a
//! `manifest.json` that, passed back as `--config`, reproduces them. The
//! worker count only changes wall time.
//!
//! Exit status: 0 success, 2 configuration or input error, 3 numerical
//! failure or failed self-check.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{CoinSpec, RunConfig, SweepAxis, SweepSpec};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "kickwalk", version, about = "Momentum-space quantum walks in a kicked spinor condensate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a walk (or quasi-momentum ensemble) and write its history.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Closed-form distribution of the resonant Hadamard walk, checked against simulation.
    Analytic {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// One simulation per value of a parameter axis, plus a roll-up table.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        overrides: Overrides,
        /// Swept parameter: s (ratchet width), k or fwhm.
        #[arg(long)]
        axis: Option<String>,
        /// Comma-separated axis values.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        values: Option<Vec<f64>>,
    },
    /// Mean kinetic energy and power-law fit of history CSVs.
    Energy {
        /// Output directory.
        #[arg(long, default_value = "kickwalk-out")]
        out: PathBuf,
        /// Inclusive fit window `FIRST,LAST` (default: 2 to the last step).
        #[arg(long, value_delimiter = ',')]
        window: Option<Vec<usize>>,
        /// History CSV files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Pixelwise relative difference of an observed and a predicted matrix.
    Compare {
        #[arg(long, default_value = "kickwalk-out")]
        out: PathBuf,
        #[arg(long)]
        observed: PathBuf,
        #[arg(long)]
        predicted: PathBuf,
        /// Rescaling factor applied to the prediction.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON configuration (or a manifest from an earlier run).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "kickwalk-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Threads for ensemble runs; affects wall time only.
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Flags mirroring the configuration keys; each replaces the key it names.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// original, swapped, lightshift-raw or custom.
    #[arg(long)]
    pub protocol: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Number of walk steps j.
    #[arg(long, alias = "j")]
    pub steps: Option<usize>,
    /// Comma-separated ratchet momentum classes.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub classes: Option<Vec<i64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub fwhm: Option<f64>,
    #[arg(long = "n_samples", alias = "n-samples")]
    pub n_samples: Option<usize>,
    #[arg(long = "thermal_fraction", alias = "thermal-fraction", allow_negative_numbers = true)]
    pub thermal_fraction: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
    /// Coin name (w, y, h, identity) or ALPHA,CHI.
    #[arg(long = "init_coin", alias = "init-coin", allow_hyphen_values = true)]
    pub init_coin: Option<String>,
    #[arg(long = "step_coin", alias = "step-coin", allow_hyphen_values = true)]
    pub step_coin: Option<String>,
    #[arg(long = "light_shift", alias = "light-shift")]
    pub light_shift: Option<bool>,
    /// before-kick or after-kick.
    #[arg(long = "coin_position", alias = "coin-position")]
    pub coin_position: Option<String>,
}

impl Overrides {
    pub fn apply(&self, config: &mut RunConfig) -> CliResult<()> {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = &self.$field { config.$field = v.clone(); })*
            };
        }
        set!(protocol, k, tau, steps, classes, fwhm, n_samples, thermal_fraction, chi, light_shift);
        if let Some(text) = &self.init_coin {
            config.init_coin = Some(CoinSpec::parse("init_coin", text)?);
        }
        if let Some(text) = &self.step_coin {
            config.step_coin = Some(CoinSpec::parse("step_coin", text)?);
        }
        if let Some(text) = &self.coin_position {
            config.coin_position = serde_json::from_value(serde_json::Value::String(text.clone()))
                .map_err(|_| CliError::config("coin_position", format!("expected before-kick or after-kick, got `{text}`")))?;
        }
        Ok(())
    }
}

fn resolve(common: &CommonArgs, overrides: &Overrides) -> CliResult<(RunConfig, usize)> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    overrides.apply(&mut config)?;
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    let workers = match common.workers {
        Some(0) => return Err(CliError::config("workers", "must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok((config, workers))
}

fn window(values: &Option<Vec<usize>>) -> CliResult<Option<(usize, usize)>> {
    match values.as_deref() {
        None => Ok(None),
        Some(&[lo, hi]) => Ok(Some((lo, hi))),
        Some(other) => Err(CliError::config("window", format!("expected FIRST,LAST, got {other:?}"))),
    }
}

/// Executes one parsed command line.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { common, overrides } => {
            let (config, workers) = resolve(&common, &overrides)?;
            commands::simulate(&config, &common.out, workers)?;
        }
        Command::Analytic { common, overrides } => {
            let (config, _) = resolve(&common, &overrides)?;
            commands::analytic(&config, &common.out)?;
        }
        Command::Sweep {
            common,
            overrides,
            axis,
            values,
        } => {
            let (config, workers) = resolve(&common, &overrides)?;
            let spec = match (axis, values, config.sweep.clone()) {
                (Some(axis), Some(values), _) => SweepSpec {
                    axis: SweepAxis::parse(&axis)?,
                    values,
                },
                (Some(axis), None, Some(saved)) => SweepSpec {
                    axis: SweepAxis::parse(&axis)?,
                    values: saved.values,
                },
                (None, Some(values), Some(saved)) => SweepSpec { axis: saved.axis, values },
                (None, None, Some(saved)) => saved,
                (None, _, None) => return Err(CliError::config("axis", "no sweep axis given")),
                (Some(_), None, None) => return Err(CliError::config("values", "no sweep values given")),
            };
            commands::sweep(&config, &spec, &common.out, workers)?;
        }
        Command::Energy { out, window: w, inputs } => {
            commands::energy(&inputs, window(&w)?, &out)?;
        }
        Command::Compare {
            out,
            observed,
            predicted,
            a,
        } => {
            commands::compare(&observed, &predicted, a, &out)?;
        }
    }
    Ok(())
}
