//! Fano gain-bandwidth limits and box-car matching targets for eigen-modes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array_model::{vswr, ResonantMode};
use crate::error::{Error, Result};

/// Box-car match of one mode over relative bandwidth `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchSpec {
    pub w: f64,
    /// In-band reflection magnitude.
    pub gamma0: f64,
    /// `exp(-2 pi / (Q W))`, from the first constraint alone.
    pub gamma0_sq_upper: f64,
    /// `exp(-2 pi (1 - W^2/4) / (Q W))`, from the second constraint; the value used.
    pub gamma0_sq_lower: f64,
    /// Right-half-plane reflection zero `alpha + j beta` (beta taken as 0).
    pub rhp_zero: Complex64,
    /// VSWR at or below 2 in band.
    pub usable: bool,
}

impl MatchSpec {
    /// Ideal lossless match: no in-band reflection.
    pub fn perfect(w: f64) -> Self {
        Self {
            w,
            gamma0: 0.0,
            gamma0_sq_upper: 0.0,
            gamma0_sq_lower: 0.0,
            rhp_zero: Complex64::new(0.0, 0.0),
            usable: true,
        }
    }

    pub fn gamma0_sq(&self) -> f64 {
        self.gamma0 * self.gamma0
    }

    /// `-ln |Gamma0|^2`.
    pub fn g0(&self) -> f64 {
        -self.gamma0_sq_lower.ln()
    }
}

fn check_w(w: f64) -> Result<()> {
    if w > 0.0 && w < 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("relative bandwidth W = {w} must lie in (0, 2)")))
    }
}

/// Best constant in-band reflection allowed by both matching constraints.
pub fn fano_boxcar(mode: &ResonantMode, w: f64) -> Result<MatchSpec> {
    check_w(w)?;
    let qw = mode.q * w;
    let gamma0_sq_lower = (-2.0 * PI * (1.0 - w * w / 4.0) / qw).exp();
    let gamma0_sq_upper = (-2.0 * PI / qw).exp();
    let gamma0 = gamma0_sq_lower.sqrt();
    Ok(MatchSpec {
        w,
        gamma0,
        gamma0_sq_upper,
        gamma0_sq_lower,
        rhp_zero: Complex64::new(mode.f0 * PI * w * w / (4.0 * mode.q), 0.0),
        usable: vswr(gamma0) <= 2.0,
    })
}

/// Residuals of both integral constraints for a box-car spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoCheck {
    /// `int G0 df_n - (2pi/Q - 2 alpha/f0)`.
    pub residual_a: f64,
    /// `int f_n^-2 G0 df_n - (2pi/Q - 2 alpha f0/|z|^2)` with `|z| = f0`.
    pub residual_b: f64,
    /// Analytic size of `residual_b`, `pi W^2 / (2Q)`.
    pub bound_b: f64,
    /// `residual_b / W^2`.
    pub constant: f64,
}

impl FanoCheck {
    pub fn pass(&self) -> bool {
        self.residual_a.abs() < 1e-12 && self.residual_b.abs() <= self.bound_b * (1.0 + 1e-9)
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| {
            let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
            weight * f(a + i as f64 * h)
        })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// Integrate the box-car profile against both constraints in normalized frequency.
pub fn fano_integral_check(spec: &MatchSpec, mode: &ResonantMode) -> FanoCheck {
    let g0 = spec.g0();
    let (lo, hi) = (1.0 - spec.w / 2.0, 1.0 + spec.w / 2.0);
    let alpha = spec.rhp_zero.re;
    let budget = 2.0 * PI / mode.q - 2.0 * alpha / mode.f0;
    let first = simpson(|_| g0, lo, hi, 2);
    let second = simpson(|f| g0 / (f * f), lo, hi, 2000);
    let residual_b = second - budget;
    FanoCheck {
        residual_a: first - budget,
        residual_b,
        bound_b: PI * spec.w * spec.w / (2.0 * mode.q),
        constant: residual_b / (spec.w * spec.w),
    }
}

/// Reflection magnitude of the box-car profile at `f`.
pub fn boxcar_profile(spec: &MatchSpec, center: f64, f: f64) -> f64 {
    let (lo, hi) = (center * (1.0 - spec.w / 2.0), center * (1.0 + spec.w / 2.0));
    if f >= lo && f <= hi {
        spec.gamma0
    } else {
        1.0
    }
}
