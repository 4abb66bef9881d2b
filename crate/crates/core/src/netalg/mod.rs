//! Dense complex matrix and multiport network algebra.
//!
//! Everything here operates sample-by-sample on a shared [`FrequencyGrid`];
//! nothing resamples. Matrices are small (N <= 16) so every inverse is a
//! pivoted LU solve followed by an explicit 1-norm condition check.

mod circulant;
mod convert;
mod grid;
mod multiport;
mod solve;
mod sweep;

pub use circulant::{cos_turns, dft_beamformer, diagonalize_circulant, unit_root};
pub use convert::{s_to_z, z_to_s};
pub use grid::FrequencyGrid;
pub use multiport::{cascade, check_lossless, check_reciprocal, LosslessReport, MultiportS, Reference};
pub use solve::{condition_1norm, invert, SINGULAR_CONDITION};
pub use sweep::ComplexMatrixSweep;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
