//! Diversity-OFDM capacity under coupling and box-car matching, with
//! Monte-Carlo outage estimation over antenna spacing.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array_model::{fit_modes, synthesize_sweep, ArraySweep, DipoleArrayModel, EigenModeSet, ResonantMode};
use crate::channel::{
    draw_taps, realization_rng, spatial_correlation, taps_to_subcarriers, to_eigenbasis, CorrelationModel, TapProfile,
};
use crate::error::{Error, Result};
use crate::fano::{fano_boxcar, MatchSpec};
use crate::io::impedance::parse_impedance;
use crate::netalg::{CVector, FrequencyGrid};
use crate::rf_chain::{build_frontend, n0_normalize, noise_cov, FrontEnd, NoiseCov, NoiseTemps};

/// Matching network model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Matching {
    /// Box-car at the Fano limit of each mode.
    Fano,
    /// Zero reflection everywhere in band.
    Perfect,
}

/// Source of the array impedance data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    /// Induced-EMF dipole array evaluated at each spacing.
    Model,
    /// Eigen-mode parameters listed per spacing in `fixture`.
    Fixture,
    /// Impedance files listed in `impedance_files`; spacings come from their headers.
    Files,
}

/// Distinct `(R, Q, f0)` triples of one spacing, in DFT order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixturePoint {
    pub spacing: f64,
    pub modes: Vec<[f64; 3]>,
}

/// Frequency grid description, relative to the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            lo: 0.85,
            hi: 1.15,
            points: 601,
        }
    }
}

/// Full simulation configuration. Noise temperatures are multiples of `T0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub n: usize,
    pub spacings: Vec<f64>,
    pub subcarriers: usize,
    pub bandwidth_hz: f64,
    pub relative_bandwidth: f64,
    pub snr_db: f64,
    pub t_antenna: f64,
    pub t_forward: f64,
    pub t_reverse: f64,
    pub realizations: usize,
    pub outage_level: f64,
    pub seed: u64,
    pub retune: bool,
    pub taps: Vec<f64>,
    pub plane_waves: usize,
    pub coupling: bool,
    pub correlation: bool,
    pub matching: Matching,
    pub grid: GridSpec,
    pub fit_band: [f64; 2],
    pub input: InputKind,
    pub fixture: Vec<FixturePoint>,
    pub impedance_files: Vec<PathBuf>,
    /// `(R, Q, f0)` of a single isolated element; the dipole model when absent.
    pub isolated: Option<[f64; 3]>,
    /// Worker threads; 0 uses every core. Never affects results.
    #[serde(skip_serializing)]
    pub workers: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n: 2,
            spacings: vec![0.05, 0.1, 0.25, 0.5, 1.0],
            subcarriers: 64,
            bandwidth_hz: 20e6,
            relative_bandwidth: 0.02,
            snr_db: 10.0,
            t_antenna: 1.0,
            t_forward: 2.0,
            t_reverse: 0.0,
            realizations: 5000,
            outage_level: 0.01,
            seed: 1,
            retune: true,
            taps: vec![1.0; 8],
            plane_waves: 32,
            coupling: true,
            correlation: true,
            matching: Matching::Fano,
            grid: GridSpec::default(),
            fit_band: [0.85, 1.15],
            input: InputKind::Model,
            fixture: Vec::new(),
            impedance_files: Vec::new(),
            isolated: None,
            workers: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n == 0 || self.n > 16 {
            return bad(format!("n = {} must lie in 1..=16", self.n));
        }
        if self.subcarriers == 0 {
            return bad("subcarriers must be positive".into());
        }
        if self.taps.len() > self.subcarriers {
            return bad(format!("{} taps exceed {} sub-carriers", self.taps.len(), self.subcarriers));
        }
        if !(self.relative_bandwidth > 0.0 && self.relative_bandwidth < 2.0) {
            return bad(format!("relative_bandwidth {} must lie in (0, 2)", self.relative_bandwidth));
        }
        if !(self.outage_level > 0.0 && self.outage_level < 0.5) {
            return bad(format!("outage_level {} must lie in (0, 0.5)", self.outage_level));
        }
        if self.realizations == 0 {
            return bad("realizations must be positive".into());
        }
        if !self.snr_db.is_finite() || !(self.bandwidth_hz > 0.0) {
            return bad("snr_db must be finite and bandwidth_hz positive".into());
        }
        for (name, t) in [("t_antenna", self.t_antenna), ("t_forward", self.t_forward), ("t_reverse", self.t_reverse)] {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("{name} = {t} must be finite and nonnegative"));
            }
        }
        if self.spacings.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
            return bad("spacings must be finite and nonnegative".into());
        }
        if self.input != InputKind::Files && self.spacings.is_empty() {
            return bad("spacing list is empty".into());
        }
        if self.input == InputKind::Files && self.impedance_files.is_empty() {
            return bad("input = \"files\" needs impedance_files".into());
        }
        let [lo, hi] = self.fit_band;
        if !(lo < hi && lo >= self.grid.lo && hi <= self.grid.hi) {
            return bad(format!("fit_band [{lo}, {hi}] must be an interval inside the grid"));
        }
        Ok(())
    }

    /// Warn when `M < 100/p`, where the outage quantile rests on few tail samples.
    pub fn warn_if_coarse(&self) {
        if self.realizations < (100.0 / self.outage_level).ceil() as usize {
            log::warn!(
                "{} realizations is below 100/p = {:.0}; the outage quantile is coarse",
                self.realizations,
                100.0 / self.outage_level
            );
        }
    }

    pub fn snr_linear(&self) -> f64 {
        10f64.powf(self.snr_db / 10.0)
    }

    pub fn temps(&self) -> Result<NoiseTemps> {
        NoiseTemps::from_ratios(self.t_antenna, self.t_forward, self.t_reverse)
    }

    pub fn frequency_grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::uniform(self.grid.lo, self.grid.hi, self.grid.points, (self.fit_band[0], self.fit_band[1]))
    }

    pub fn isolated_mode(&self) -> Result<ResonantMode> {
        match self.isolated {
            Some([r, q, f0]) => ResonantMode::new(r, q, f0),
            None => Ok(DipoleArrayModel::default().isolated_mode()),
        }
    }

    /// Spacing points of the sweep, in order.
    pub fn sweep_spacings(&self) -> Result<Vec<f64>> {
        match self.input {
            InputKind::Files => self
                .impedance_files
                .iter()
                .map(|p| Ok(parse_impedance(p, Some((self.fit_band[0], self.fit_band[1])))?.spacing()))
                .collect(),
            _ => Ok(self.spacings.clone()),
        }
    }
}

/// Sub-carrier centre frequencies `1 + W((k + 1/2)/K - 1/2)`, all inside the signal band.
pub fn subcarrier_frequencies(subcarriers: usize, w: f64) -> Vec<f64> {
    (0..subcarriers)
        .map(|k| 1.0 + w * ((k as f64 + 0.5) / subcarriers as f64 - 0.5))
        .collect()
}

/// Capacity of one channel realization in nats/s/Hz:
/// `(1/K) sum_k ln(1 + snr sum_n |h_nk|^2 |T_nk|^2 / (sigma_nk / N0))`.
pub fn realization_capacity(hhat: &[CVector], frontend: &FrontEnd, noise: &NoiseCov, snr_linear: f64) -> Result<f64> {
    if hhat.len() != frontend.subcarriers.len() || noise.sigma.len() != hhat.len() {
        return Err(Error::InvalidDimension(format!(
            "{} channel vectors, {} front-end sub-carriers, {} noise rows",
            hhat.len(),
            frontend.subcarriers.len(),
            noise.sigma.len()
        )));
    }
    let mut total = 0.0;
    for (k, h) in hhat.iter().enumerate() {
        let mut quad = 0.0;
        for (n, z) in h.iter().enumerate() {
            let s = noise.normalized(k, n);
            if !(s > 0.0) {
                return Err(Error::IllConditioned(format!(
                    "noise entry {s:e} at sub-carrier {k}, mode {n}"
                )));
            }
            quad += z.norm_sqr() * frontend.transmission[k][n].powi(2) / s;
        }
        total += (snr_linear * quad).ln_1p();
    }
    Ok(total / hhat.len() as f64)
}

/// Everything fixed at one spacing before drawing channels.
#[derive(Debug, Clone)]
pub struct PreparedPoint {
    pub spacing: f64,
    pub modes: EigenModeSet,
    pub specs: Vec<MatchSpec>,
    pub gamma_iid: f64,
    pub frontend: FrontEnd,
    pub noise: NoiseCov,
    pub correlation: CorrelationModel,
    pub profile: TapProfile,
    pub snr_linear: f64,
    pub subcarriers: usize,
}

fn array_sweep(config: &SimConfig, spacing: f64, grid: FrequencyGrid) -> Result<ArraySweep> {
    if !config.coupling {
        let iso = config.isolated_mode()?;
        let params = vec![(iso.r, iso.q, iso.f0); config.n / 2 + 1];
        let set = EigenModeSet::from_parameters(config.n, &params, (config.fit_band[0], config.fit_band[1]))?;
        return synthesize_sweep(spacing, grid, &set);
    }
    match config.input {
        InputKind::Model => DipoleArrayModel::default().sweep(config.n, spacing, grid),
        InputKind::Fixture => {
            let point = config
                .fixture
                .iter()
                .find(|p| p.spacing == spacing)
                .ok_or_else(|| Error::Config(format!("no fixture modes for spacing {spacing}")))?;
            let params: Vec<_> = point.modes.iter().map(|m| (m[0], m[1], m[2])).collect();
            let set = EigenModeSet::from_parameters(config.n, &params, (config.fit_band[0], config.fit_band[1]))?;
            synthesize_sweep(spacing, grid, &set)
        }
        InputKind::Files => {
            let band = Some((config.fit_band[0], config.fit_band[1]));
            for path in &config.impedance_files {
                let sweep = parse_impedance(path, band)?;
                if sweep.spacing() == spacing {
                    if sweep.n() != config.n {
                        return Err(Error::Config(format!(
                            "{} holds N = {}, config has n = {}",
                            path.display(),
                            sweep.n(),
                            config.n
                        )));
                    }
                    return Ok(sweep);
                }
            }
            Err(Error::Config(format!("no impedance file for spacing {spacing}")))
        }
    }
}

impl PreparedPoint {
    /// Fit modes, match them and build the front-end and noise at `spacing`.
    pub fn new(config: &SimConfig, spacing: f64) -> Result<Self> {
        config.validate()?;
        let grid = config.frequency_grid()?;
        let sweep = array_sweep(config, spacing, grid)?;
        let mut modes = fit_modes(&sweep, (config.fit_band[0], config.fit_band[1]))?;
        if config.retune {
            modes = modes.retuned(1.0)?;
        }
        let w = config.relative_bandwidth;
        let (specs, gamma_iid) = match config.matching {
            Matching::Fano => (
                modes.modes.iter().map(|m| fano_boxcar(m, w)).collect::<Result<Vec<_>>>()?,
                fano_boxcar(&config.isolated_mode()?, w)?.gamma0,
            ),
            Matching::Perfect => (vec![MatchSpec::perfect(w); modes.modes.len()], 0.0),
        };
        let frequencies = subcarrier_frequencies(config.subcarriers, w);
        let frontend = build_frontend(&modes, &specs, 1.0, &frequencies)?;
        let temps = config.temps()?;
        let n0 = n0_normalize(&temps, 1.0, gamma_iid, config.bandwidth_hz);
        let noise = noise_cov(&frontend, &vec![1.0; config.n], &temps, config.bandwidth_hz, n0)?;
        let correlation = if config.correlation {
            spatial_correlation(config.n, spacing, config.plane_waves)?
        } else {
            CorrelationModel::identity(config.n)
        };
        Ok(Self {
            spacing,
            modes,
            specs,
            gamma_iid,
            frontend,
            noise,
            correlation,
            profile: TapProfile::new(config.taps.clone())?,
            snr_linear: config.snr_linear(),
            subcarriers: config.subcarriers,
        })
    }

    /// Capacity of realization `index` under `seed`.
    pub fn capacity(&self, seed: u64, index: u64) -> Result<f64> {
        let mut rng = realization_rng(seed, index);
        let taps = draw_taps(&self.correlation, &self.profile, &mut rng);
        let h = taps_to_subcarriers(&taps, self.subcarriers)?;
        let hhat = to_eigenbasis(&h, &self.frontend.beamformer);
        realization_capacity(&hhat, &self.frontend, &self.noise, self.snr_linear)
    }

    /// Realizations `0..m` in index order, evaluated on `workers` threads.
    pub fn samples(&self, seed: u64, m: usize, workers: usize) -> Result<Vec<f64>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..m as u64)
                .into_par_iter()
                .map(|i| {
                    self.capacity(seed, i).map_err(|e| Error::Realization {
                        index: i,
                        source: Box::new(e),
                    })
                })
                .collect()
        })
    }
}

/// `realizations` capacity samples at spacing `d`.
pub fn run_monte_carlo(config: &SimConfig, d: f64) -> Result<Vec<f64>> {
    PreparedPoint::new(config, d)?.samples(config.seed, config.realizations, config.workers)
}

/// Lower empirical quantile and its distribution-free 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outage {
    pub c0: f64,
    pub lower: f64,
    pub upper: f64,
    pub half_width: f64,
}

/// Ranks `(l, u)`, 1-based, with `P(x_(l) <= quantile < x_(u)) >= 0.95`.
fn binomial_ranks(m: usize, p: f64) -> (usize, usize) {
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let mut ln_pmf = m as f64 * ln_q;
    let mut cdf = 0.0;
    let (mut lower, mut upper) = (1, m);
    let mut lower_done = false;
    // cdf after adding pmf(j) is P(B <= j); rank j + 1 needs P(B <= j).
    for j in 0..=m {
        cdf += ln_pmf.exp();
        if !lower_done {
            if cdf <= 0.025 {
                lower = j + 1;
            } else {
                lower_done = true;
            }
        }
        if cdf >= 0.975 {
            upper = j + 1;
            break;
        }
        if j < m {
            ln_pmf += ((m - j) as f64).ln() - ((j + 1) as f64).ln() + ln_p - ln_q;
        }
    }
    (lower.clamp(1, m), upper.clamp(1, m))
}

/// `C0` is the `ceil(pM)`-th smallest sample.
pub fn outage(samples: &[f64], p: f64) -> Result<Outage> {
    let m = samples.len();
    let mp = m as f64 * p;
    if !(mp >= 1.0) {
        return Err(Error::InsufficientSamples(mp));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (mp.ceil() as usize).clamp(1, m);
    let (l, u) = binomial_ranks(m, p);
    let (lower, upper) = (sorted[l - 1], sorted[u - 1]);
    Ok(Outage {
        c0: sorted[rank - 1],
        lower,
        upper,
        half_width: (upper - lower) / 2.0,
    })
}

/// One point of an outage-versus-spacing curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutagePoint {
    pub spacing: f64,
    pub result: std::result::Result<Outage, String>,
    pub realizations: usize,
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageCurve {
    pub points: Vec<OutagePoint>,
    pub config: SimConfig,
}

fn evaluate(config: &SimConfig, spacing: f64) -> Result<(Outage, f64)> {
    let samples = run_monte_carlo(config, spacing)?;
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    Ok((outage(&samples, config.outage_level)?, mean))
}

/// Outage capacity at every spacing; failures are recorded per point.
pub fn sweep(config: &SimConfig) -> Result<OutageCurve> {
    config.validate()?;
    config.warn_if_coarse();
    let points = config
        .sweep_spacings()?
        .into_iter()
        .map(|spacing| {
            let outcome = evaluate(config, spacing);
            if let Err(e) = &outcome {
                log::error!("spacing {spacing}: {e}");
            }
            OutagePoint {
                spacing,
                mean: outcome.as_ref().ok().map(|o| o.1),
                result: outcome.map(|o| o.0).map_err(|e| e.to_string()),
                realizations: config.realizations,
            }
        })
        .collect();
    Ok(OutageCurve {
        points,
        config: config.clone(),
    })
}

/// The same configuration with coupling removed: isolated elements, matched by the same rule.
pub fn iid_baseline(config: &SimConfig) -> SimConfig {
    SimConfig {
        coupling: false,
        ..config.clone()
    }
}
