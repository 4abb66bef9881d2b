//! Series-RLC eigen-mode model `lambda(f) = R [1 + jQ (f/f0 - f0/f)]`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One eigen-impedance modelled as a series resonator. Frequencies are
/// relative to the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonantMode {
    pub r: f64,
    pub q: f64,
    pub f0: f64,
    pub multiplicity: usize,
    pub dft_index: usize,
}

impl ResonantMode {
    /// A single (non-degenerate) mode at DFT index 0.
    pub fn new(r: f64, q: f64, f0: f64) -> Result<Self> {
        Self::with_index(r, q, f0, 0, 1)
    }

    pub fn with_index(r: f64, q: f64, f0: f64, dft_index: usize, multiplicity: usize) -> Result<Self> {
        for (name, v) in [("R", r), ("Q", q), ("f0", f0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} = {v} must be positive and finite")));
            }
        }
        if multiplicity == 0 {
            return Err(Error::Domain("mode multiplicity must be at least 1".into()));
        }
        Ok(Self {
            r,
            q,
            f0,
            multiplicity,
            dft_index,
        })
    }

    /// Model impedance in ohms at relative frequency `f`.
    pub fn impedance(&self, f: f64) -> Complex64 {
        Complex64::new(self.r, self.r * self.q * (f / self.f0 - self.f0 / f))
    }

    /// Series inductance times the carrier frequency, `L f_c = QR / (2 pi f0)`, in H Hz.
    pub fn inductance_fc(&self) -> f64 {
        self.q * self.r / (2.0 * PI * self.f0)
    }

    /// Series capacitance times the carrier frequency, `C f_c = 1 / (QR 2 pi f0)`, in F Hz.
    pub fn capacitance_fc(&self) -> f64 {
        1.0 / (self.q * self.r * 2.0 * PI * self.f0)
    }
}

fn check_frequency(f: f64) -> Result<()> {
    if f > 0.0 && f.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("frequency {f} must be positive")))
    }
}

/// Reflection of the mode against its own resistance `R`.
pub fn mode_reflection(mode: &ResonantMode, f: f64) -> Result<Complex64> {
    check_frequency(f)?;
    let x = f / mode.f0;
    let num = 1.0 - x * x;
    Ok(Complex64::new(num, 0.0) / Complex64::new(num, 2.0 * x / mode.q))
}

/// Transmitted power fraction `|T'|^2 = 1 - |Gamma'|^2`.
pub fn eigen_mode_response(mode: &ResonantMode, f: f64) -> Result<f64> {
    check_frequency(f)?;
    let x = f / mode.f0;
    let detune = mode.q * (x * x - 1.0);
    let four_x2 = 4.0 * x * x;
    Ok(four_x2 / (four_x2 + detune * detune))
}

/// Voltage standing-wave ratio; infinite at total reflection.
pub fn vswr(gamma_mag: f64) -> f64 {
    if gamma_mag >= 1.0 {
        f64::INFINITY
    } else {
        (1.0 + gamma_mag) / (1.0 - gamma_mag)
    }
}

/// Band around `f0` where VSWR stays at or below 2, i.e. `|T'|^2 >= 8/9`.
pub fn usable_bandwidth(mode: &ResonantMode) -> (f64, f64) {
    let half = 1.0 / (2.0 * SQRT_2 * mode.q);
    let centre = (half * half + 1.0).sqrt();
    (mode.f0 * (centre - half), mode.f0 * (centre + half))
}

/// Same mode with its resonance moved to `f_target`.
pub fn retune(mode: &ResonantMode, f_target: f64) -> Result<ResonantMode> {
    check_frequency(f_target)?;
    Ok(ResonantMode {
        f0: f_target,
        ..*mode
    })
}
