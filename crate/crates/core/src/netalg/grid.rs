use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered relative frequencies f/f_c plus the band of interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    samples: Vec<f64>,
    band: (f64, f64),
}

impl FrequencyGrid {
    pub fn new(samples: Vec<f64>, band: (f64, f64)) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidDimension("frequency grid is empty".into()));
        }
        if let Some(i) = samples.iter().position(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(Error::Domain(format!(
                "frequency sample {i} = {} is not positive",
                samples[i]
            )));
        }
        if let Some(i) = samples.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Domain(format!(
                "frequency samples not strictly increasing at index {}",
                i + 1
            )));
        }
        let (lo, hi) = band;
        let first = samples[0];
        let last = samples[samples.len() - 1];
        if !(lo <= hi && lo >= first && hi <= last) {
            return Err(Error::Domain(format!(
                "band [{lo}, {hi}] outside sample range [{first}, {last}]"
            )));
        }
        Ok(Self { samples, band })
    }

    /// `points` equally spaced samples over `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, points: usize, band: (f64, f64)) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidDimension(format!(
                "uniform grid needs at least 2 points, got {points}"
            )));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let samples = (0..points)
            .map(|i| if i == points - 1 { hi } else { lo + step * i as f64 })
            .collect();
        Self::new(samples, band)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn band(&self) -> (f64, f64) {
        self.band
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Indices of samples inside `[lo, hi]`, endpoints inclusive up to
    /// grid-construction roundoff.
    pub fn indices_in(&self, lo: f64, hi: f64) -> Vec<usize> {
        let slack = 1e-12 * hi.abs().max(1.0);
        self.samples
            .iter()
            .enumerate()
            .filter(|(_, f)| **f >= lo - slack && **f <= hi + slack)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn band_indices(&self) -> Vec<usize> {
        self.indices_in(self.band.0, self.band.1)
    }
}
