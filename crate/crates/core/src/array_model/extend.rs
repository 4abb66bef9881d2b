//! Lossless, reciprocal 2N-port completion of an antenna array.

use num_complex::Complex64;

use super::{eigen_impedances, ArraySweep};
use crate::error::{Error, Result};
use crate::netalg::{dft_beamformer, CMatrix, ComplexMatrixSweep, FrequencyGrid, MultiportS, Reference};

/// 2N-port whose port group 2 sees the array impedance.
///
/// Per eigen-mode the 2x2 scattering block is
/// `[[-conj(g), t], [t, g]]` with `g = (lambda - r)/(lambda + r)` and
/// `t = sqrt(1 - |g|^2)`, which is unitary and symmetric. With a uniform
/// reference `S22 = z_to_s(Z_A)`.
pub fn extend_to_2n_port(sweep: &ArraySweep, reference: Reference) -> Result<MultiportS> {
    let traces = eigen_impedances(sweep)?;
    extend_traces(sweep.grid(), &traces, reference)
}

/// Same completion starting from eigen-impedance traces `[dft index][sample]`.
pub fn extend_traces(grid: &FrequencyGrid, traces: &[Vec<Complex64>], reference: Reference) -> Result<MultiportS> {
    let n = traces.len();
    let q = dft_beamformer(n)?;
    let refs: Vec<f64> = match &reference {
        Reference::Uniform(z) => vec![*z; n],
        Reference::PerMode(r) if r.len() == n => r.clone(),
        Reference::PerMode(r) => {
            return Err(Error::InvalidDimension(format!(
                "{} per-mode references for {n} modes",
                r.len()
            )))
        }
    };
    if let Some(bad) = refs.iter().find(|r| !(**r > 0.0)) {
        return Err(Error::Domain(format!("reference resistance {bad} must be positive")));
    }
    let qh = q.adjoint();
    let embed = |diag: &[Complex64]| -> CMatrix { &q * CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag)) * &qh };
    let len = grid.len();
    let (mut s11, mut s21, mut s22) = (Vec::with_capacity(len), Vec::with_capacity(len), Vec::with_capacity(len));
    for sample in 0..len {
        let mut g = Vec::with_capacity(n);
        for (mode, trace) in traces.iter().enumerate() {
            let lambda = trace.get(sample).copied().ok_or_else(|| {
                Error::InvalidDimension(format!("trace {mode} shorter than grid"))
            })?;
            if !(lambda.re > 0.0) {
                return Err(Error::NonPhysical {
                    mode,
                    sample,
                    resistance: lambda.re,
                });
            }
            g.push((lambda - refs[mode]) / (lambda + refs[mode]));
        }
        let t: Vec<Complex64> = g.iter().map(|x| Complex64::new((1.0 - x.norm_sqr()).max(0.0).sqrt(), 0.0)).collect();
        let g11: Vec<Complex64> = g.iter().map(|x| -x.conj()).collect();
        s11.push(embed(&g11));
        s21.push(embed(&t));
        s22.push(embed(&g));
    }
    let s21 = ComplexMatrixSweep::new(s21)?;
    MultiportS::new(
        grid.clone(),
        ComplexMatrixSweep::new(s11)?,
        s21.clone(),
        s21,
        ComplexMatrixSweep::new(s22)?,
        reference,
    )
}
