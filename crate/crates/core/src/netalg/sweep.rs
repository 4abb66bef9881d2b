use super::CMatrix;
use crate::error::{Error, Result};

/// One N x N complex matrix per frequency sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrixSweep {
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl ComplexMatrixSweep {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        if dim == 0 {
            return Err(Error::InvalidDimension("empty sweep".into()));
        }
        if let Some(i) = matrices
            .iter()
            .position(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::InvalidDimension(format!(
                "sample {i} is {}x{}, expected {dim}x{dim}",
                matrices[i].nrows(),
                matrices[i].ncols()
            )));
        }
        Ok(Self { dim, matrices })
    }

    /// The same matrix repeated at every one of `len` samples.
    pub fn constant(matrix: CMatrix, len: usize) -> Result<Self> {
        Self::new(vec![matrix; len])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn get(&self, sample: usize) -> &CMatrix {
        &self.matrices[sample]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CMatrix> {
        self.matrices.iter()
    }

    pub fn into_matrices(self) -> Vec<CMatrix> {
        self.matrices
    }

    /// Apply `f` per sample, keeping the first error with its sample index.
    pub fn try_map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &CMatrix) -> Result<CMatrix>,
    {
        let out = self
            .matrices
            .iter()
            .enumerate()
            .map(|(i, m)| f(i, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(out)
    }

    /// Largest entrywise distance to `other` across the sweep.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}
