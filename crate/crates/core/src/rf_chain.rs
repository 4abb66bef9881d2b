//! Matched receive front-end per OFDM sub-carrier and the load-referenced
//! noise covariance in the eigen-basis.

use serde::{Deserialize, Serialize};

use crate::array_model::EigenModeSet;
use crate::error::{Error, Result};
use crate::fano::{boxcar_profile, MatchSpec};
use crate::netalg::{dft_beamformer, CMatrix};

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Reference temperature, K.
pub const T0: f64 = 290.0;

/// Antenna, forward-amplifier and reverse-amplifier noise temperatures in
/// kelvin. The forward/reverse correlation term is taken as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseTemps {
    pub t_a: f64,
    pub t_f: f64,
    pub t_r: f64,
}

impl NoiseTemps {
    pub fn new(t_a: f64, t_f: f64, t_r: f64) -> Result<Self> {
        for (name, t) in [("T_A", t_a), ("T_f", t_f), ("T_r", t_r)] {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Domain(format!("{name} = {t} K must be finite and nonnegative")));
            }
        }
        Ok(Self { t_a, t_f, t_r })
    }

    /// Temperatures given as multiples of `T0`.
    pub fn from_ratios(a: f64, f: f64, r: f64) -> Result<Self> {
        Self::new(a * T0, f * T0, r * T0)
    }
}

impl Default for NoiseTemps {
    fn default() -> Self {
        Self {
            t_a: T0,
            t_f: 2.0 * T0,
            t_r: 0.0,
        }
    }
}

/// Diagonal reflection and transmission magnitudes per sub-carrier and DFT index.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontEnd {
    pub subcarriers: Vec<f64>,
    /// `gamma[k][n]`, in `[0, 1]`.
    pub gamma: Vec<Vec<f64>>,
    /// `transmission[k][n] = sqrt(1 - gamma^2)`.
    pub transmission: Vec<Vec<f64>>,
    pub beamformer: CMatrix,
}

impl FrontEnd {
    pub fn n(&self) -> usize {
        self.beamformer.nrows()
    }

    /// `S_k = Q T_k Q^H`.
    pub fn transmission_matrix(&self, k: usize) -> CMatrix {
        let t = nalgebra::DVector::from_iterator(self.n(), self.transmission[k].iter().map(|&x| x.into()));
        &self.beamformer * CMatrix::from_diagonal(&t) * self.beamformer.adjoint()
    }
}

/// Box-car front-end centred at `center` for every sub-carrier in `subcarriers`.
///
/// `specs[i]` belongs to `modes.modes[i]`; degenerate DFT indices share it.
pub fn build_frontend(modes: &EigenModeSet, specs: &[MatchSpec], center: f64, subcarriers: &[f64]) -> Result<FrontEnd> {
    if specs.len() != modes.modes.len() {
        return Err(Error::Config(format!(
            "{} match specs for {} distinct modes",
            specs.len(),
            modes.modes.len()
        )));
    }
    if subcarriers.is_empty() || subcarriers.iter().any(|f| !(*f > 0.0 && f.is_finite())) {
        return Err(Error::Config("sub-carrier frequencies must be positive and nonempty".into()));
    }
    let n = modes.n;
    let owner: Vec<usize> = (0..n).map(|i| i.min(n - i)).collect();
    let gamma: Vec<Vec<f64>> = subcarriers
        .iter()
        .map(|&f| owner.iter().map(|&m| boxcar_profile(&specs[m], center, f)).collect())
        .collect();
    let transmission = gamma
        .iter()
        .map(|row| row.iter().map(|g| (1.0 - g * g).max(0.0).sqrt()).collect())
        .collect();
    Ok(FrontEnd {
        subcarriers: subcarriers.to_vec(),
        gamma,
        transmission,
        beamformer: dft_beamformer(n)?,
    })
}

/// Diagonal noise covariance `sigma[k][n]` (W) and the i.i.d. reference `n0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseCov {
    pub sigma: Vec<Vec<f64>>,
    pub n0: f64,
}

impl NoiseCov {
    /// `sigma[k][n] / n0`.
    pub fn normalized(&self, k: usize, n: usize) -> f64 {
        self.sigma[k][n] / self.n0
    }
}

/// Load-referenced noise with zero forward/reverse correlation:
/// `4 k_B B [(T_A - T_r) R_n (1 - gamma^2) + T_f + T_r]`.
///
/// `resistances` holds one value per DFT index in the same units as the
/// reference resistance behind `n0`.
pub fn noise_cov(frontend: &FrontEnd, resistances: &[f64], temps: &NoiseTemps, bandwidth: f64, n0: f64) -> Result<NoiseCov> {
    let temps = NoiseTemps::new(temps.t_a, temps.t_f, temps.t_r)?;
    if resistances.len() != frontend.n() {
        return Err(Error::InvalidDimension(format!(
            "{} resistances for {} modes",
            resistances.len(),
            frontend.n()
        )));
    }
    if let Some(r) = resistances.iter().find(|r| !(**r > 0.0)) {
        return Err(Error::Domain(format!("mode resistance {r} must be positive")));
    }
    let scale = 4.0 * K_B * bandwidth;
    let sigma = frontend
        .gamma
        .iter()
        .map(|row| {
            row.iter()
                .zip(resistances)
                .map(|(g, r)| scale * ((temps.t_a - temps.t_r) * r * (1.0 - g * g) + temps.t_f + temps.t_r))
                .collect()
        })
        .collect();
    Ok(NoiseCov { sigma, n0 })
}

/// Noise of a single isolated element under the same matching budget:
/// `4 k_B B (T_A Re(z_A)(1 - gamma^2) + T_f + T_r gamma^2)`.
pub fn n0_normalize(temps: &NoiseTemps, z_a_resistance: f64, gamma_iid: f64, bandwidth: f64) -> f64 {
    let g2 = gamma_iid * gamma_iid;
    4.0 * K_B * bandwidth * (temps.t_a * z_a_resistance * (1.0 - g2) + temps.t_f + temps.t_r * g2)
}
