//! DFT beamformer and circulant diagonalization.
//!
//! Twiddles are evaluated from the reduced turn fraction `k/N` so that
//! quarter turns and 30-degree multiples come out exact, and conjugate
//! pairs `k`, `N - k` are bitwise conjugates.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// cos(2 pi p / q) for p/q in [0, 1/4], reduced so equal fractions give
/// identical bits.
fn cos_first_quadrant(p: usize, q: usize) -> f64 {
    let g = gcd(p, q).max(1);
    let (p, q) = (p / g, q / g);
    if (12 * p) % q == 0 {
        match 12 * p / q {
            0 => return 1.0,
            2 => return 0.5,
            3 => return 0.0,
            _ => {}
        }
    }
    (2.0 * std::f64::consts::PI * p as f64 / q as f64).cos()
}

/// `cos(2 pi k / n)`, exact at multiples of 30 degrees except 30 itself,
/// with `cos(pi - x) == -cos(x)` bitwise.
pub fn cos_turns(k: usize, n: usize) -> f64 {
    let mut r = k % n;
    if 2 * r > n {
        r = n - r;
    }
    if 4 * r > n {
        -cos_first_quadrant(n - 2 * r, 2 * n)
    } else {
        cos_first_quadrant(r, n)
    }
}

fn sin_turns(k: usize, n: usize) -> f64 {
    // sin(2 pi k/n) = cos(2 pi (k - n/4) / n); use 4n so the shift is integral.
    let n4 = 4 * n;
    let shifted = (4 * (k % n) + n4 - n) % n4;
    cos_turns(shifted, n4)
}

/// `alpha^k` with `alpha = exp(-2 pi j / n)`.
pub fn unit_root(k: usize, n: usize) -> Complex64 {
    Complex64::new(cos_turns(k, n), -sin_turns(k, n))
}

/// Unitary spatial DFT, `Q[m][k] = alpha^(m k) / sqrt(N)`.
pub fn dft_beamformer(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("beamformer needs N >= 1".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, n, |m, k| unit_root(m * k, n) * scale))
}

/// Eigenvalue traces of symmetric circulant matrices given their first rows.
///
/// `rows[s]` is the length-N first row at sample `s`. The result is indexed
/// `[dft_index][sample]`; indices `k` and `N - k` are bitwise equal.
pub fn diagonalize_circulant(rows: &[Vec<Complex64>], n: usize) -> Result<Vec<Vec<Complex64>>> {
    if n == 0 {
        return Err(Error::InvalidDimension("circulant needs N >= 1".into()));
    }
    let mut traces = vec![Vec::with_capacity(rows.len()); n];
    for (sample, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidDimension(format!(
                "sample {sample}: first row has {} entries, expected {n}",
                row.len()
            )));
        }
        let scale = row.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for k in 1..n {
            if (row[k] - row[n - k]).norm() > 1e-9 * scale {
                return Err(Error::ModelMismatch(format!(
                    "sample {sample}: z_1{} != z_1{} (circulant symmetry violated)",
                    k + 1,
                    n - k + 1
                )));
            }
        }
        for (idx, value) in symmetric_dft(row).into_iter().enumerate() {
            traces[idx].push(value);
        }
    }
    Ok(traces)
}

fn symmetric_dft(row: &[Complex64]) -> Vec<Complex64> {
    let n = row.len();
    let half = n / 2;
    let paired: Vec<Complex64> = (1..=((n - 1) / 2))
        .map(|k| (row[k] + row[n - k]) * 0.5)
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for idx in 0..=half {
        let mut acc = row[0];
        for (k, c) in paired.iter().enumerate() {
            acc += c * (2.0 * cos_turns(idx * (k + 1), n));
        }
        if n % 2 == 0 && n > 1 {
            let sign = if idx % 2 == 0 { 1.0 } else { -1.0 };
            acc += row[half] * sign;
        }
        out[idx] = acc;
        if idx != 0 {
            out[n - idx] = acc;
        }
    }
    out
}
