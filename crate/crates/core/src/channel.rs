//! Spatially correlated frequency-selective fading in the array eigen-basis.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::array_model::geometry::pair_distance;
use crate::error::{Error, Result};
use crate::netalg::{unit_root, CMatrix, CVector};

/// Eigenvalues below this are treated as a genuine PSD violation.
pub const PSD_TOLERANCE: f64 = -1e-10;

/// Spatial correlation of the array under uniform azimuthal plane-wave
/// incidence, with its Hermitian square root.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationModel {
    pub n: usize,
    pub spacing: f64,
    pub plane_waves: usize,
    pub r: CMatrix,
    pub sqrt: CMatrix,
}

impl CorrelationModel {
    /// Uncorrelated elements.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            spacing: f64::INFINITY,
            plane_waves: 0,
            r: CMatrix::identity(n, n),
            sqrt: CMatrix::identity(n, n),
        }
    }
}

/// `[R]_nm = (1/K') sum_k exp(j 2 pi d_nm cos(2 pi k / K'))`.
pub fn spatial_correlation(n: usize, spacing: f64, plane_waves: usize) -> Result<CorrelationModel> {
    if n == 0 {
        return Err(Error::InvalidDimension("correlation needs N >= 1".into()));
    }
    if !(spacing >= 0.0 && spacing.is_finite()) {
        return Err(Error::Domain(format!("spacing {spacing} must be finite and nonnegative")));
    }
    if plane_waves < 2 * n {
        return Err(Error::Config(format!(
            "{plane_waves} plane waves cannot resolve {n} elements (need at least {})",
            2 * n
        )));
    }
    let cosines: Vec<f64> = (0..plane_waves)
        .map(|k| (2.0 * PI * k as f64 / plane_waves as f64).cos())
        .collect();
    let r = CMatrix::from_fn(n, n, |a, b| {
        let d = pair_distance(n, spacing, a, b);
        cosines
            .iter()
            .map(|c| Complex64::from_polar(1.0, 2.0 * PI * d * c))
            .sum::<Complex64>()
            / plane_waves as f64
    });
    let sqrt = psd_sqrt(&r)?;
    Ok(CorrelationModel {
        n,
        spacing,
        plane_waves,
        r,
        sqrt,
    })
}

/// Hermitian PSD square root by eigen-decomposition, clipping roundoff negatives.
pub fn psd_sqrt(r: &CMatrix) -> Result<CMatrix> {
    let eig = r.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < PSD_TOLERANCE {
        return Err(Error::NotPsd(min));
    }
    if min < 0.0 {
        log::debug!("clipping eigenvalue {min:.3e} of correlation matrix to zero");
    }
    let roots = CVector::from_iterator(
        r.nrows(),
        eig.eigenvalues.iter().map(|&l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    let v = &eig.eigenvectors;
    Ok(v * CMatrix::from_diagonal(&roots) * v.adjoint())
}

/// Power-delay profile of the channel taps, normalized to unit total power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TapProfile {
    powers: Vec<f64>,
}

impl TapProfile {
    pub fn new(powers: Vec<f64>) -> Result<Self> {
        if powers.is_empty() || powers.iter().any(|p| !(*p >= 0.0 && p.is_finite())) {
            return Err(Error::Config("tap powers must be nonempty, finite and nonnegative".into()));
        }
        let total: f64 = powers.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Config("tap powers sum to zero".into()));
        }
        Ok(Self {
            powers: powers.iter().map(|p| p / total).collect(),
        })
    }

    /// `taps` equal-power taps.
    pub fn uniform(taps: usize) -> Result<Self> {
        Self::new(vec![1.0; taps])
    }

    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }
}

/// Random stream for one Monte-Carlo realization.
pub fn realization_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Circularly symmetric complex Gaussian with unit variance.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

/// One realization of the tap vectors `sqrt(p_l) R^{1/2} w_l`.
pub fn draw_taps<R: Rng + ?Sized>(model: &CorrelationModel, profile: &TapProfile, rng: &mut R) -> Vec<CVector> {
    profile
        .powers()
        .iter()
        .map(|p| {
            let w = CVector::from_fn(model.n, |_, _| complex_normal(rng));
            (&model.sqrt * w) * Complex64::new(p.sqrt(), 0.0)
        })
        .collect()
}

/// `h_k = sum_l h_l exp(-j 2 pi k l / K)` for `k = 0 .. K-1`.
pub fn taps_to_subcarriers(taps: &[CVector], subcarriers: usize) -> Result<Vec<CVector>> {
    if taps.len() > subcarriers {
        return Err(Error::CyclicPrefix {
            taps: taps.len(),
            subcarriers,
        });
    }
    let n = taps.first().map(|t| t.len()).unwrap_or(0);
    Ok((0..subcarriers)
        .map(|k| {
            let mut h = CVector::zeros(n);
            for (l, tap) in taps.iter().enumerate() {
                h.axpy(unit_root(k * l % subcarriers, subcarriers), tap, Complex64::new(1.0, 0.0));
            }
            h
        })
        .collect())
}

/// Effective gains `Q^H h_k`.
pub fn to_eigenbasis(h: &[CVector], q: &CMatrix) -> Vec<CVector> {
    let qh = q.adjoint();
    h.iter().map(|hk| &qh * hk).collect()
}
