//! 2N-port scattering networks in N x N block form.

use serde::{Deserialize, Serialize};

use super::{invert, CMatrix, ComplexMatrixSweep, FrequencyGrid};
use crate::error::{Error, Result};

/// Port normalization of a [`MultiportS`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Reference {
    /// Every port referenced to the same real impedance in ohms.
    Uniform(f64),
    /// Eigen-port `n` referenced to its own resistance (ohms), indexed by DFT index.
    PerMode(Vec<f64>),
}

/// Four N x N blocks per frequency sample:
///
/// ```text
/// [b1]   [S11 S12] [a1]
/// [b2] = [S21 S22] [a2]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct MultiportS {
    pub grid: FrequencyGrid,
    pub s11: ComplexMatrixSweep,
    pub s12: ComplexMatrixSweep,
    pub s21: ComplexMatrixSweep,
    pub s22: ComplexMatrixSweep,
    pub reference: Reference,
}

impl MultiportS {
    pub fn new(
        grid: FrequencyGrid,
        s11: ComplexMatrixSweep,
        s12: ComplexMatrixSweep,
        s21: ComplexMatrixSweep,
        s22: ComplexMatrixSweep,
        reference: Reference,
    ) -> Result<Self> {
        let n = s11.dim();
        for (name, b) in [("S12", &s12), ("S21", &s21), ("S22", &s22)] {
            if b.dim() != n {
                return Err(Error::InvalidDimension(format!(
                    "{name} is {}x{0}, S11 is {n}x{n}",
                    b.dim()
                )));
            }
        }
        for (name, b) in [("S11", &s11), ("S12", &s12), ("S21", &s21), ("S22", &s22)] {
            if b.len() != grid.len() {
                return Err(Error::InvalidDimension(format!(
                    "{name} has {} samples, grid has {}",
                    b.len(),
                    grid.len()
                )));
            }
        }
        Ok(Self {
            grid,
            s11,
            s12,
            s21,
            s22,
            reference,
        })
    }

    /// Ideal through-connection: zero reflection, identity transmission.
    pub fn through(grid: FrequencyGrid, n: usize) -> Result<Self> {
        let len = grid.len();
        let zero = ComplexMatrixSweep::constant(CMatrix::zeros(n, n), len)?;
        let eye = ComplexMatrixSweep::constant(CMatrix::identity(n, n), len)?;
        Self::new(grid, zero.clone(), eye.clone(), eye, zero, Reference::Uniform(1.0))
    }

    /// Split full 2N x 2N matrices into blocks.
    pub fn from_full(grid: FrequencyGrid, full: &[CMatrix], reference: Reference) -> Result<Self> {
        let two_n = full.first().map(|m| m.nrows()).unwrap_or(0);
        if two_n == 0 || two_n % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "full scattering matrix dimension {two_n} is not even"
            )));
        }
        let n = two_n / 2;
        let block = |r: usize, c: usize| -> Result<ComplexMatrixSweep> {
            ComplexMatrixSweep::new(
                full.iter()
                    .map(|m| m.view((r * n, c * n), (n, n)).into_owned())
                    .collect(),
            )
        };
        Self::new(grid, block(0, 0)?, block(0, 1)?, block(1, 0)?, block(1, 1)?, reference)
    }

    pub fn dim(&self) -> usize {
        self.s11.dim()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Assembled 2N x 2N matrix at one sample.
    pub fn full(&self, sample: usize) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(self.s11.get(sample));
        m.view_mut((0, n), (n, n)).copy_from(self.s12.get(sample));
        m.view_mut((n, 0), (n, n)).copy_from(self.s21.get(sample));
        m.view_mut((n, n), (n, n)).copy_from(self.s22.get(sample));
        m
    }
}

/// Connect port group 2 of `a` to port group 1 of `m`.
pub fn cascade(a: &MultiportS, m: &MultiportS) -> Result<MultiportS> {
    if a.dim() != m.dim() {
        return Err(Error::InvalidDimension(format!(
            "cascade of {}-port groups with {}-port groups",
            a.dim(),
            m.dim()
        )));
    }
    if a.grid != m.grid {
        return Err(Error::InvalidDimension(
            "cascade operands are on different frequency grids".into(),
        ));
    }
    let n = a.dim();
    let eye = CMatrix::identity(n, n);
    let len = a.len();
    let (mut s11, mut s12, mut s21, mut s22) = (
        Vec::with_capacity(len),
        Vec::with_capacity(len),
        Vec::with_capacity(len),
        Vec::with_capacity(len),
    );
    for sample in 0..len {
        let (a11, a12, a21, a22) = (a.s11.get(sample), a.s12.get(sample), a.s21.get(sample), a.s22.get(sample));
        let (m11, m12, m21, m22) = (m.s11.get(sample), m.s12.get(sample), m.s21.get(sample), m.s22.get(sample));
        let left = invert(&(&eye - m11 * a22))
            .map_err(|condition| Error::CascadeSingular { sample, condition })?;
        let right = invert(&(&eye - a22 * m11))
            .map_err(|condition| Error::CascadeSingular { sample, condition })?;
        s11.push(a11 + a12 * &left * m11 * a21);
        s12.push(a12 * &left * m12);
        s21.push(m21 * &right * a21);
        s22.push(m22 + m21 * &right * a22 * m12);
    }
    MultiportS::new(
        a.grid.clone(),
        ComplexMatrixSweep::new(s11)?,
        ComplexMatrixSweep::new(s12)?,
        ComplexMatrixSweep::new(s21)?,
        ComplexMatrixSweep::new(s22)?,
        a.reference.clone(),
    )
}

/// Outcome of a per-sample property check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LosslessReport {
    pub max_deviation: f64,
    pub worst_sample: usize,
    pub pass: bool,
}

fn worst<F: Fn(&CMatrix) -> f64>(s: &MultiportS, tol: f64, f: F) -> LosslessReport {
    let (worst_sample, max_deviation) = (0..s.len())
        .map(|i| (i, f(&s.full(i))))
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 || d.is_nan() { (i, d) } else { acc });
    LosslessReport {
        max_deviation,
        worst_sample,
        pass: max_deviation <= tol,
    }
}

/// Frobenius norm of `S S^H - I`, worst over the grid.
pub fn check_lossless(s: &MultiportS, tol: f64) -> LosslessReport {
    let two_n = 2 * s.dim();
    let eye = CMatrix::identity(two_n, two_n);
    worst(s, tol, |m| (m * m.adjoint() - &eye).norm())
}

/// Frobenius norm of `S - S^T`, worst over the grid.
pub fn check_reciprocal(s: &MultiportS, tol: f64) -> LosslessReport {
    worst(s, tol, |m| (m - m.transpose()).norm())
}
