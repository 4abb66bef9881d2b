//! Series-RLC fits of eigen-impedance traces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{eigen_impedances, retune, ArraySweep, ResonantMode};
use crate::error::{Error, Result};
use crate::netalg::FrequencyGrid;

/// A fitted mode and the RMS reactance misfit over the fit band (ohms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlcFit {
    pub mode: ResonantMode,
    pub residual: f64,
}

/// Fit `R [1 + jQ(f/f0 - f0/f)]` to one trace over `band`.
///
/// `R` is the band-mean resistance. The reactance model `a f + b / f` is
/// linear in `(a, b) = (RQ/f0, -RQ f0)`, so its least-squares optimum is
/// solved directly and mapped back to `(Q, f0)`.
pub fn fit_rlc(grid: &FrequencyGrid, trace: &[Complex64], band: (f64, f64), dft_index: usize) -> Result<RlcFit> {
    if trace.len() != grid.len() {
        return Err(Error::InvalidDimension(format!(
            "trace has {} samples, grid has {}",
            trace.len(),
            grid.len()
        )));
    }
    let idx = grid.indices_in(band.0, band.1);
    if idx.len() < 3 {
        return Err(Error::FitFailure(format!(
            "only {} grid samples inside fit band [{}, {}]",
            idx.len(),
            band.0,
            band.1
        )));
    }
    if let Some(&sample) = idx.iter().find(|&&i| !(trace[i].re > 0.0)) {
        return Err(Error::NonPhysical {
            mode: dft_index,
            sample,
            resistance: trace[sample].re,
        });
    }
    let crosses = idx.windows(2).any(|w| trace[w[0]].im * trace[w[1]].im <= 0.0);
    if !crosses {
        return Err(Error::NoResonance { lo: band.0, hi: band.1 });
    }

    let f: Vec<f64> = idx.iter().map(|&i| grid.samples()[i]).collect();
    let x: Vec<f64> = idx.iter().map(|&i| trace[i].im).collect();
    let r = idx.iter().map(|&i| trace[i].re).sum::<f64>() / idx.len() as f64;

    // Columns f - 1/f and f + 1/f are far better conditioned than f and 1/f.
    let design = DMatrix::from_fn(f.len(), 2, |row, col| {
        let fi = f[row];
        if col == 0 {
            fi - 1.0 / fi
        } else {
            fi + 1.0 / fi
        }
    });
    let rhs = DVector::from_column_slice(&x);
    let coef = design
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::FitFailure(e.to_string()))?;
    let (cu, cv) = (coef[0], coef[1]);
    let (a, b) = (cu + cv, cv - cu);
    if !(a > 0.0 && b < 0.0) {
        return Err(Error::FitFailure(format!(
            "reactance slope gives negative Q (a = {a:.6e}, b = {b:.6e})"
        )));
    }
    let f0 = (-b / a).sqrt();
    let q = (-a * b).sqrt() / r;
    let mode = ResonantMode::with_index(r, q, f0, dft_index, 1)?;
    let residual = (&design * &coef - rhs).norm() / (f.len() as f64).sqrt();
    Ok(RlcFit { mode, residual })
}

/// Distinct eigen-modes of an N-element circulant array.
///
/// `modes[i]` describes DFT index `i` for `i = 0 ..= N/2`; index `N - i`
/// shares that entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenModeSet {
    pub n: usize,
    pub modes: Vec<ResonantMode>,
    pub band: (f64, f64),
    pub residuals: Vec<f64>,
}

fn multiplicity(n: usize, idx: usize) -> usize {
    if idx == 0 || 2 * idx == n {
        1
    } else {
        2
    }
}

impl EigenModeSet {
    /// Build from distinct `(R, Q, f0)` triples in DFT order.
    pub fn from_parameters(n: usize, params: &[(f64, f64, f64)], band: (f64, f64)) -> Result<Self> {
        if n == 0 || params.len() != n / 2 + 1 {
            return Err(Error::InvalidDimension(format!(
                "N = {n} needs {} distinct modes, got {}",
                n / 2 + 1,
                params.len()
            )));
        }
        let modes = params
            .iter()
            .enumerate()
            .map(|(i, &(r, q, f0))| ResonantMode::with_index(r, q, f0, i, multiplicity(n, i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            residuals: vec![0.0; modes.len()],
            modes,
            band,
        })
    }

    pub fn distinct(&self) -> usize {
        self.modes.len()
    }

    pub fn mode_for_index(&self, dft_index: usize) -> &ResonantMode {
        let i = dft_index % self.n;
        &self.modes[i.min(self.n - i)]
    }

    /// One mode per DFT index, multiplicities expanded.
    pub fn expanded(&self) -> Vec<ResonantMode> {
        (0..self.n).map(|i| *self.mode_for_index(i)).collect()
    }

    pub fn retuned(&self, f_target: f64) -> Result<Self> {
        Ok(Self {
            modes: self
                .modes
                .iter()
                .map(|m| retune(m, f_target))
                .collect::<Result<_>>()?,
            ..self.clone()
        })
    }
}

/// Eigen-decompose a sweep and fit every distinct mode over `band`.
pub fn fit_modes(sweep: &ArraySweep, band: (f64, f64)) -> Result<EigenModeSet> {
    let traces = eigen_impedances(sweep)?;
    let n = sweep.n();
    let mut modes = Vec::new();
    let mut residuals = Vec::new();
    for (idx, trace) in traces.iter().enumerate().take(n / 2 + 1) {
        let fit = fit_rlc(sweep.grid(), trace, band, idx)?;
        modes.push(ResonantMode {
            multiplicity: multiplicity(n, idx),
            ..fit.mode
        });
        residuals.push(fit.residual);
    }
    Ok(EigenModeSet {
        n,
        modes,
        band,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> FrequencyGrid {
        FrequencyGrid::uniform(0.85, 1.15, 601, (0.9, 1.1)).unwrap()
    }

    fn trace(m: &ResonantMode, g: &FrequencyGrid) -> Vec<Complex64> {
        g.samples().iter().map(|&f| m.impedance(f)).collect()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn recovers_table1_modes() {
        let g = grid();
        for (r, q, f0) in [(118.76, 3.75, 1.0425), (28.31, 16.0, 0.9675)] {
            let m = ResonantMode::new(r, q, f0).unwrap();
            let fit = fit_rlc(&g, &trace(&m, &g), (0.9, 1.1), 0).unwrap();
            assert!(rel(fit.mode.r, r) < 1e-9);
            assert!(rel(fit.mode.q, q) < 1e-9);
            assert!(rel(fit.mode.f0, f0) < 1e-9);
            assert!(fit.residual < 1e-9 * r * q);
        }
    }

    #[test]
    fn constant_reactance_has_no_resonance() {
        let g = grid();
        let t = vec![Complex64::new(50.0, 20.0); g.len()];
        assert!(matches!(fit_rlc(&g, &t, (0.9, 1.1), 0), Err(Error::NoResonance { .. })));
    }

    #[test]
    fn falling_reactance_is_fit_failure() {
        let g = grid();
        let t: Vec<_> = g.samples().iter().map(|&f| Complex64::new(50.0, 100.0 * (1.0 - f))).collect();
        assert!(matches!(fit_rlc(&g, &t, (0.9, 1.1), 0), Err(Error::FitFailure(_))));
    }

    #[test]
    fn negative_resistance_is_non_physical() {
        let g = grid();
        let m = ResonantMode::new(10.0, 5.0, 1.0).unwrap();
        let mut t = trace(&m, &g);
        t[300].re = -1.0;
        assert!(matches!(fit_rlc(&g, &t, (0.9, 1.1), 2), Err(Error::NonPhysical { mode: 2, .. })));
    }

    #[test]
    fn scale_consistency() {
        let g = grid();
        let m = ResonantMode::new(40.0, 7.0, 1.01).unwrap();
        let base = trace(&m, &g);
        let noisy: Vec<_> = base
            .iter()
            .enumerate()
            .map(|(i, z)| z + Complex64::new((i as f64 * 0.37).sin(), 2.0 * (i as f64 * 0.11).cos()))
            .collect();
        let a = fit_rlc(&g, &noisy, (0.9, 1.1), 0).unwrap().mode;
        let scaled: Vec<_> = noisy.iter().map(|z| z * 3.5).collect();
        let b = fit_rlc(&g, &scaled, (0.9, 1.1), 0).unwrap().mode;
        assert!(rel(b.r, 3.5 * a.r) < 1e-12);
        assert!(rel(b.q, a.q) < 1e-12);
        assert!(rel(b.f0, a.f0) < 1e-12);
    }

    #[test]
    fn fit_beats_perturbed_parameters() {
        // Least-squares optimality: nudging (Q, f0) never lowers the misfit.
        let g = grid();
        let m = ResonantMode::new(30.0, 12.0, 0.98).unwrap();
        let t: Vec<_> = trace(&m, &g)
            .iter()
            .enumerate()
            .map(|(i, z)| z + Complex64::new(0.0, 5.0 * (i as f64).sin()))
            .collect();
        let fit = fit_rlc(&g, &t, (0.9, 1.1), 0).unwrap();
        let misfit = |q: f64, f0: f64| {
            let idx = g.indices_in(0.9, 1.1);
            let ss: f64 = idx
                .iter()
                .map(|&i| {
                    let f = g.samples()[i];
                    (t[i].im - fit.mode.r * q * (f / f0 - f0 / f)).powi(2)
                })
                .sum();
            (ss / idx.len() as f64).sqrt()
        };
        let best = misfit(fit.mode.q, fit.mode.f0);
        assert!((best - fit.residual).abs() < 1e-9);
        for (dq, df) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-4), (0.0, -1e-4), (1e-3, 1e-4)] {
            assert!(misfit(fit.mode.q * (1.0 + dq), fit.mode.f0 * (1.0 + df)) >= best);
        }
    }

    #[test]
    fn mode_set_expansion() {
        let set = EigenModeSet::from_parameters(4, &[(1.0, 2.0, 1.0), (2.0, 3.0, 1.0), (3.0, 4.0, 1.0)], (0.9, 1.1)).unwrap();
        let e = set.expanded();
        assert_eq!(e.len(), 4);
        assert_eq!(e[1], e[3]);
        assert_eq!(set.modes.iter().map(|m| m.multiplicity).sum::<usize>(), 4);
        let set3 = EigenModeSet::from_parameters(3, &[(1.0, 2.0, 1.0), (2.0, 3.0, 1.0)], (0.9, 1.1)).unwrap();
        assert_eq!(set3.modes[1].multiplicity, 2);
        assert!(EigenModeSet::from_parameters(4, &[(1.0, 2.0, 1.0)], (0.9, 1.1)).is_err());
    }
}
