//! Synthetic array sweeps: from eigen-mode parameters, or from an
//! induced-EMF model of side-by-side half-wave dipoles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::geometry::pair_distance;
use super::special::sici;
use super::{independent_entries, ArraySweep, EigenModeSet, ResonantMode};
use crate::error::Result;
use crate::netalg::{cos_turns, FrequencyGrid};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Q·R product (ohms) assigned to an isolated element: the mean of the
/// products of the two reference eigen-modes, 445.35 and 452.96.
pub const ISOLATED_Q_TIMES_R: f64 = 449.155;

/// Circulant sweep whose eigen-impedances are exactly the RLC models of `modes`.
pub fn synthesize_sweep(spacing: f64, grid: FrequencyGrid, modes: &EigenModeSet) -> Result<ArraySweep> {
    let n = modes.n;
    let expanded = modes.expanded();
    let rows = grid
        .samples()
        .iter()
        .map(|&f| {
            let lambda: Vec<Complex64> = expanded.iter().map(|m| m.impedance(f)).collect();
            (0..independent_entries(n))
                .map(|k| {
                    lambda
                        .iter()
                        .enumerate()
                        .map(|(idx, l)| l * cos_turns(idx * k, n))
                        .sum::<Complex64>()
                        / n as f64
                })
                .collect()
        })
        .collect();
    ArraySweep::new(n, spacing, grid, rows)
}

/// Thin half-wave dipoles standing side by side.
///
/// Self impedance is a series resonator at the carrier; mutual impedance
/// follows the induced-EMF closed form evaluated at the electrical
/// separation `distance * f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleArrayModel {
    pub r_self: f64,
    pub q_self: f64,
    pub coupling: bool,
}

impl Default for DipoleArrayModel {
    fn default() -> Self {
        let r_self = Self::radiation_resistance();
        Self {
            r_self,
            q_self: ISOLATED_Q_TIMES_R / r_self,
            coupling: true,
        }
    }
}

impl DipoleArrayModel {
    /// `30 (gamma + ln 2pi - Ci(2pi))`, about 73.13 ohms.
    pub fn radiation_resistance() -> f64 {
        30.0 * (EULER_GAMMA + (2.0 * PI).ln() - sici(2.0 * PI).1)
    }

    pub fn uncoupled() -> Self {
        Self {
            coupling: false,
            ..Self::default()
        }
    }

    /// The isolated element as a resonant mode at `f0 = 1`.
    pub fn isolated_mode(&self) -> ResonantMode {
        ResonantMode {
            r: self.r_self,
            q: self.q_self,
            f0: 1.0,
            multiplicity: 1,
            dft_index: 0,
        }
    }

    pub fn self_impedance(&self, f: f64) -> Complex64 {
        self.isolated_mode().impedance(f)
    }

    /// Mutual impedance at separation `d` wavelengths.
    pub fn mutual_impedance(d: f64) -> Complex64 {
        let k = 2.0 * PI;
        let half = 0.5;
        let hyp = (d * d + half * half).sqrt();
        let (s0, c0) = sici(k * d);
        let (s1, c1) = sici(k * (hyp + half));
        let (s2, c2) = sici(k * (hyp - half));
        Complex64::new(30.0 * (2.0 * c0 - c1 - c2), -30.0 * (2.0 * s0 - s1 - s2))
    }

    pub fn sweep(&self, n: usize, spacing: f64, grid: FrequencyGrid) -> Result<ArraySweep> {
        let rows = grid
            .samples()
            .iter()
            .map(|&f| {
                (0..independent_entries(n))
                    .map(|k| {
                        if k == 0 {
                            self.self_impedance(f)
                        } else if self.coupling {
                            Self::mutual_impedance(pair_distance(n, spacing, 0, k) * f)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect()
            })
            .collect();
        ArraySweep::new(n, spacing, grid, rows)
    }
}
