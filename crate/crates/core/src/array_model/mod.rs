//! Circulant array impedance sweeps, their eigen-impedances and the
//! series-RLC description of each eigen-mode.

mod extend;
mod fit;
mod fixture;
pub mod geometry;
mod mode;
pub mod special;

pub use extend::{extend_to_2n_port, extend_traces};
pub use fit::{fit_modes, fit_rlc, EigenModeSet, RlcFit};
pub use fixture::{synthesize_sweep, DipoleArrayModel, ISOLATED_Q_TIMES_R};
pub use mode::{eigen_mode_response, mode_reflection, retune, usable_bandwidth, vswr, ResonantMode};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netalg::{diagonalize_circulant, CMatrix, ComplexMatrixSweep, FrequencyGrid};

/// Number of independent first-row entries of a symmetric circulant.
pub fn independent_entries(n: usize) -> usize {
    n / 2 + 1
}

/// Swept impedance data of an N-element uniform circular array.
///
/// Only `z_11 .. z_1M` are stored; the rest of the first row follows from
/// `z_1k = z_1(N+2-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArraySweep {
    n: usize,
    spacing: f64,
    grid: FrequencyGrid,
    first_row: Vec<Vec<Complex64>>,
}

impl ArraySweep {
    /// `first_row[sample]` holds the `N/2 + 1` independent entries at that sample.
    pub fn new(n: usize, spacing: f64, grid: FrequencyGrid, first_row: Vec<Vec<Complex64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("array needs at least one element".into()));
        }
        if !(spacing >= 0.0 && spacing.is_finite()) {
            return Err(Error::Domain(format!("spacing {spacing} must be finite and nonnegative")));
        }
        if first_row.len() != grid.len() {
            return Err(Error::InvalidDimension(format!(
                "{} impedance rows for {} grid samples",
                first_row.len(),
                grid.len()
            )));
        }
        let m = independent_entries(n);
        if let Some((sample, row)) = first_row.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::InvalidDimension(format!(
                "sample {sample}: {} first-row entries, N = {n} needs {m}",
                row.len()
            )));
        }
        Ok(Self {
            n,
            spacing,
            grid,
            first_row,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// Independent entries per sample.
    pub fn first_row(&self) -> &[Vec<Complex64>] {
        &self.first_row
    }

    /// Full first row `z_11 .. z_1N` at one sample.
    pub fn full_row(&self, sample: usize) -> Vec<Complex64> {
        let row = &self.first_row[sample];
        (0..self.n).map(|k| row[k.min(self.n - k)]).collect()
    }

    /// Circulant impedance matrix at one sample.
    pub fn impedance_matrix(&self, sample: usize) -> CMatrix {
        let row = self.full_row(sample);
        let n = self.n;
        CMatrix::from_fn(n, n, |i, j| row[(j + n - i) % n])
    }

    pub fn impedance_sweep(&self) -> Result<ComplexMatrixSweep> {
        ComplexMatrixSweep::new((0..self.grid.len()).map(|s| self.impedance_matrix(s)).collect())
    }
}

/// Eigen-impedance traces `lambda_n(f)`, indexed `[dft index][sample]`.
///
/// Fails if any mode has nonpositive resistance inside the signal band.
pub fn eigen_impedances(sweep: &ArraySweep) -> Result<Vec<Vec<Complex64>>> {
    let rows: Vec<_> = (0..sweep.grid.len()).map(|s| sweep.full_row(s)).collect();
    let traces = diagonalize_circulant(&rows, sweep.n)?;
    for sample in sweep.grid.band_indices() {
        for (mode, trace) in traces.iter().enumerate() {
            let resistance = trace[sample].re;
            if !(resistance > 0.0) {
                return Err(Error::NonPhysical {
                    mode,
                    sample,
                    resistance,
                });
            }
        }
    }
    Ok(traces)
}
