//! Impedance <-> scattering conversion against a real reference impedance.

use num_complex::Complex64;

use super::{invert, CMatrix, ComplexMatrixSweep};
use crate::error::{Error, Result};

/// `S = (Z + z_ref I)^-1 (Z - z_ref I)` per sample.
pub fn z_to_s(z: &ComplexMatrixSweep, z_ref: f64) -> Result<ComplexMatrixSweep> {
    check_reference(z_ref)?;
    let n = z.dim();
    let r = CMatrix::identity(n, n) * Complex64::new(z_ref, 0.0);
    z.try_map(|sample, zm| {
        let inv = invert(&(zm + &r)).map_err(|condition| Error::Singular { sample, condition })?;
        Ok(inv * (zm - &r))
    })
}

/// `Z = z_ref (I + S)(I - S)^-1` per sample.
pub fn s_to_z(s: &ComplexMatrixSweep, z_ref: f64) -> Result<ComplexMatrixSweep> {
    check_reference(z_ref)?;
    let n = s.dim();
    let eye = CMatrix::identity(n, n);
    s.try_map(|sample, sm| {
        let inv = invert(&(&eye - sm)).map_err(|_| Error::TotalReflection { sample })?;
        Ok((&eye + sm) * inv * Complex64::new(z_ref, 0.0))
    })
}

fn check_reference(z_ref: f64) -> Result<()> {
    if z_ref.is_finite() && z_ref > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("reference impedance {z_ref} must be positive")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn scalar_sweep(z: Complex64) -> ComplexMatrixSweep {
        ComplexMatrixSweep::constant(CMatrix::from_element(1, 1, z), 3).unwrap()
    }

    #[test]
    fn matched_termination_reflects_nothing() {
        let z = ComplexMatrixSweep::constant(CMatrix::identity(3, 3), 4).unwrap();
        let s = z_to_s(&z, 1.0).unwrap();
        assert!(s.iter().all(|m| m.iter().all(|v| v.norm() == 0.0)));
    }

    #[test]
    fn three_ohm_gives_half() {
        let z = ComplexMatrixSweep::constant(CMatrix::identity(2, 2) * c(3.0), 2).unwrap();
        let s = z_to_s(&z, 1.0).unwrap();
        let expect = CMatrix::identity(2, 2) * c(0.5);
        assert!(s.iter().all(|m| (m - &expect).norm() < 1e-15));
        let back = s_to_z(&s, 1.0).unwrap();
        assert!(back.max_abs_diff(&z) < 1e-14);
    }

    #[test]
    fn table1_r1_reflection() {
        let s = z_to_s(&scalar_sweep(c(118.76)), 1.0).unwrap();
        let gamma = s.get(0)[(0, 0)];
        assert!((gamma.re - 117.76 / 119.76).abs() < 1e-15);
        assert!((gamma.re - 0.983300).abs() < 5e-7);
    }

    #[test]
    fn zero_s_gives_reference() {
        let s = ComplexMatrixSweep::constant(CMatrix::zeros(2, 2), 2).unwrap();
        let z = s_to_z(&s, 50.0).unwrap();
        assert!(z.iter().all(|m| (m - CMatrix::identity(2, 2) * c(50.0)).norm() < 1e-13));
    }

    #[test]
    fn singularities_are_frequency_indexed() {
        let mut ms = vec![CMatrix::identity(1, 1); 3];
        ms[2] = CMatrix::from_element(1, 1, c(-1.0));
        let z = ComplexMatrixSweep::new(ms).unwrap();
        match z_to_s(&z, 1.0) {
            Err(Error::Singular { sample, .. }) => assert_eq!(sample, 2),
            other => panic!("unexpected {other:?}"),
        }
        let s = ComplexMatrixSweep::new(vec![CMatrix::zeros(1, 1), CMatrix::identity(1, 1)]).unwrap();
        match s_to_z(&s, 1.0) {
            Err(Error::TotalReflection { sample }) => assert_eq!(sample, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
