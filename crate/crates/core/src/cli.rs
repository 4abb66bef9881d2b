//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::array_model::{fit_modes, synthesize_sweep, EigenModeSet};
use crate::capacity::{outage, sweep, OutageCurve, OutagePoint, PreparedPoint, SimConfig};
use crate::error::{Error, Result};
use crate::fano::{fano_boxcar, MatchSpec};
use crate::io::config::{config_hash, load_config};
use crate::io::emit::{
    curve_document, curve_table, match_document, match_table, mode_document, mode_table, write_pair, Unit,
};
use crate::io::fixtures::{table1_fixture, TABLE1_SPACING};
use crate::io::impedance::{parse_impedance, write_impedance};

#[derive(Debug, Parser)]
#[command(name = "uca", version, about = "Coupled uniform circular arrays: eigen-modes, Fano matching and outage capacity")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte-Carlo realizations per spacing.
    #[arg(long, global = true)]
    pub realizations: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, env = "UCA_OUTPUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
    /// Report capacities in bits/s/Hz instead of nats/s/Hz.
    #[arg(long, global = true)]
    pub bits: bool,
    /// Retune every mode to the carrier before matching.
    #[arg(long, global = true, overrides_with = "no_retune")]
    pub retune: bool,
    /// Keep fitted resonant frequencies.
    #[arg(long, global = true)]
    pub no_retune: bool,
    /// Worker threads (0 = all cores); never changes results.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Reference two-element eigen-modes (N = 2, d = 0.25).
    Table1,
}

#[derive(Debug, Args)]
pub struct ModeSource {
    /// Built-in mode parameters.
    #[arg(long, conflicts_with = "file")]
    pub fixture: Option<Fixture>,
    /// Impedance file to fit.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Spacing for the configured array model (default: first configured spacing).
    #[arg(long)]
    pub spacing: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigen-mode fits with usable bandwidths.
    Modes(ModeSource),
    /// Fano box-car budget per mode.
    Match(ModeSource),
    /// Outage capacity at one spacing.
    Capacity {
        /// Spacing in carrier wavelengths (default: first configured spacing).
        #[arg(long)]
        spacing: Option<f64>,
    },
    /// Outage capacity versus spacing.
    Sweep {
        /// Comma-separated spacings, overriding the configuration.
        #[arg(long)]
        spacings: Option<String>,
    },
    /// Series-RLC fit of an impedance file.
    Fit {
        file: PathBuf,
        /// Fit band as `lo,hi` (default: configured fit band).
        #[arg(long)]
        band: Option<String>,
    },
    /// Write a synthetic impedance file from the reference two-element modes.
    Fixture {
        /// Destination (default: `<out-dir>/table1_impedance.csv`).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn unit(global: &Global) -> Unit {
    if global.bits {
        Unit::Bits
    } else {
        Unit::Nats
    }
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| Error::Config(format!("'{s}' is not a number"))))
        .collect()
}

/// Configuration from file and flags.
pub fn resolve_config(global: &Global) -> Result<SimConfig> {
    let mut config = match &global.config {
        Some(path) => load_config(path)?,
        None => SimConfig::default(),
    };
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if let Some(m) = global.realizations {
        config.realizations = m;
    }
    if let Some(w) = global.workers {
        config.workers = w;
    }
    if global.no_retune {
        config.retune = false;
    } else if global.retune {
        config.retune = true;
    }
    config.validate()?;
    Ok(config)
}

fn first_spacing(config: &SimConfig, spacing: Option<f64>) -> Result<f64> {
    match spacing {
        Some(d) => Ok(d),
        None => config
            .sweep_spacings()?
            .first()
            .copied()
            .ok_or_else(|| Error::Config("spacing list is empty".into())),
    }
}

fn load_modes(source: &ModeSource, config: &SimConfig) -> Result<(EigenModeSet, String)> {
    let band = (config.fit_band[0], config.fit_band[1]);
    if source.fixture == Some(Fixture::Table1) {
        return Ok((table1_fixture(), "fixture table1".into()));
    }
    if let Some(path) = &source.file {
        let sweep = parse_impedance(path, Some(band))?;
        return Ok((fit_modes(&sweep, band)?, format!("file {}", path.display())));
    }
    let d = first_spacing(config, source.spacing)?;
    let point = PreparedPoint::new(&SimConfig { retune: false, ..config.clone() }, d)?;
    Ok((point.modes, format!("{:?} input, n = {}, spacing = {d}", config.input, config.n).to_lowercase()))
}

fn report(paths: &[PathBuf]) {
    for p in paths {
        log::info!("wrote {}", p.display());
    }
}

fn run_modes(global: &Global, config: &SimConfig, source: &ModeSource) -> Result<()> {
    let (set, label) = load_modes(source, config)?;
    let table = mode_table(&set);
    print!("{table}");
    report(&write_pair(&global.out_dir, "modes", &table, &mode_document(&set, &label, Some(config)))?);
    Ok(())
}

fn run_match(global: &Global, config: &SimConfig, source: &ModeSource) -> Result<()> {
    let (mut set, label) = load_modes(source, config)?;
    if config.retune {
        set = set.retuned(1.0)?;
    }
    let specs: Vec<MatchSpec> = set
        .modes
        .iter()
        .map(|m| fano_boxcar(m, config.relative_bandwidth))
        .collect::<Result<_>>()?;
    let table = match_table(&set, &specs);
    print!("{table}");
    report(&write_pair(&global.out_dir, "match", &table, &match_document(&set, &specs, &label, Some(config)))?);
    Ok(())
}

fn emit_curve(global: &Global, stem: &str, curve: &OutageCurve) -> Result<()> {
    let table = curve_table(curve, unit(global));
    print!("{table}");
    report(&write_pair(&global.out_dir, stem, &table, &curve_document(curve, unit(global)))?);
    Ok(())
}

fn run_capacity(global: &Global, config: &SimConfig, spacing: Option<f64>) -> Result<()> {
    let d = first_spacing(config, spacing)?;
    config.warn_if_coarse();
    let point = PreparedPoint::new(config, d)?;
    let samples = point.samples(config.seed, config.realizations, config.workers)?;
    let o = outage(&samples, config.outage_level)?;
    let curve = OutageCurve {
        points: vec![OutagePoint {
            spacing: d,
            result: Ok(o),
            realizations: config.realizations,
            mean: Some(samples.iter().sum::<f64>() / samples.len() as f64),
        }],
        config: SimConfig {
            spacings: vec![d],
            ..config.clone()
        },
    };
    emit_curve(global, "capacity", &curve)
}

fn run_sweep(global: &Global, mut config: SimConfig, spacings: Option<&str>) -> Result<()> {
    if let Some(list) = spacings {
        config.spacings = parse_list(list)?;
        config.validate()?;
    }
    let curve = sweep(&config)?;
    emit_curve(global, "sweep", &curve)?;
    if curve.points.iter().all(|p| p.result.is_err()) {
        return Err(Error::ModelMismatch("every spacing failed".into()));
    }
    Ok(())
}

fn run_fit(global: &Global, config: &SimConfig, file: &Path, band: Option<&str>) -> Result<()> {
    let band = match band {
        Some(text) => match parse_list(text)?.as_slice() {
            [lo, hi] => (*lo, *hi),
            _ => return Err(Error::Config(format!("band '{text}' must be 'lo,hi'"))),
        },
        None => (config.fit_band[0], config.fit_band[1]),
    };
    let sweep = parse_impedance(file, Some(band))?;
    let set = fit_modes(&sweep, band)?;
    let table = mode_table(&set);
    print!("{table}");
    let doc = mode_document(&set, &format!("file {}", file.display()), None);
    report(&write_pair(&global.out_dir, "fit", &table, &doc)?);
    Ok(())
}

fn run_fixture(global: &Global, config: &SimConfig, output: Option<&Path>) -> Result<()> {
    let sweep = synthesize_sweep(TABLE1_SPACING, config.frequency_grid()?, &table1_fixture())?;
    let path = match output {
        Some(p) => p.to_path_buf(),
        None => global.out_dir.join("table1_impedance.csv"),
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(&path, write_impedance(&sweep))?;
    println!("{}", json!({ "written": path.display().to_string(), "samples": sweep.grid().len() }));
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    let config = resolve_config(&cli.global)?;
    log::debug!("config hash {}", config_hash(&config));
    let g = &cli.global;
    match &cli.command {
        Command::Modes(src) => run_modes(g, &config, src),
        Command::Match(src) => run_match(g, &config, src),
        Command::Capacity { spacing } => run_capacity(g, &config, *spacing),
        Command::Sweep { spacings } => run_sweep(g, config, spacings.as_deref()),
        Command::Fit { file, band } => run_fit(g, &config, file, band.as_deref()),
        Command::Fixture { output } => run_fixture(g, &config, output.as_deref()),
    }
}
