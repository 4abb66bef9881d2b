#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use uca_core::netalg::{CMatrix, ComplexMatrixSweep, FrequencyGrid, MultiportS, Reference};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    random_matrix(rng, n).qr().q()
}

pub fn grid(points: usize) -> FrequencyGrid {
    FrequencyGrid::uniform(0.9, 1.1, points, (0.95, 1.05)).unwrap()
}

/// Random per-sample unitary 2N-port.
pub fn random_lossless(rng: &mut impl Rng, n: usize, g: &FrequencyGrid) -> MultiportS {
    let full: Vec<CMatrix> = (0..g.len()).map(|_| random_unitary(rng, 2 * n)).collect();
    MultiportS::from_full(g.clone(), &full, Reference::Uniform(1.0)).unwrap()
}

pub fn sweep_of(ms: Vec<CMatrix>) -> ComplexMatrixSweep {
    ComplexMatrixSweep::new(ms).unwrap()
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for &k in &idx[i..=j] {
                r[k] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Independent i.i.d. Rayleigh OFDM capacity sampler: N antennas, equal-power
/// taps, per-antenna power gain `t2`, unit noise. Box-Muller normals from a
/// ChaCha20 stream, DFT written out with sin/cos.
pub fn oracle_iid_capacities(n: usize, taps: usize, k: usize, snr: f64, t2: f64, m: usize, seed: u64) -> Vec<f64> {
    use std::f64::consts::PI;
    let mut r = rng(seed);
    let mut normal = move || {
        let u1: f64 = 1.0 - r.random::<f64>();
        let u2: f64 = r.random::<f64>();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    };
    let amp = (1.0 / (2.0 * taps as f64)).sqrt();
    (0..m)
        .map(|_| {
            let g: Vec<Vec<(f64, f64)>> = (0..taps)
                .map(|_| (0..n).map(|_| (amp * normal(), amp * normal())).collect())
                .collect();
            let mut total = 0.0;
            for kk in 0..k {
                let mut energy = 0.0;
                for a in 0..n {
                    let (mut re, mut im) = (0.0, 0.0);
                    for (l, tap) in g.iter().enumerate() {
                        let th = -2.0 * PI * (kk * l) as f64 / k as f64;
                        let (c, s) = (th.cos(), th.sin());
                        re += tap[a].0 * c - tap[a].1 * s;
                        im += tap[a].0 * s + tap[a].1 * c;
                    }
                    energy += re * re + im * im;
                }
                total += (1.0 + snr * t2 * energy).ln();
            }
            total / k as f64
        })
        .collect()
}
