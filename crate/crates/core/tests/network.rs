mod common;

use common::*;
use rand::Rng;
use num_complex::Complex64;
use uca_core::netalg::*;

#[test]
fn cascade_with_through_is_exact_identity() {
    let mut r = rng(1);
    let g = grid(7);
    let a = random_lossless(&mut r, 3, &g);
    let t = MultiportS::through(g, 3).unwrap();
    assert_eq!(cascade(&a, &t).unwrap(), a);
}

#[test]
fn cascade_preserves_unitarity() {
    let mut r = rng(2);
    let g = grid(9);
    for n in 1..=4 {
        let a = random_lossless(&mut r, n, &g);
        let m = random_lossless(&mut r, n, &g);
        let c = cascade(&a, &m).unwrap();
        assert!(check_lossless(&c, 1e-9).pass, "n = {n}");
    }
}

#[test]
fn cascade_is_associative() {
    let mut r = rng(3);
    let g = grid(5);
    let (a, b, c) = (random_lossless(&mut r, 2, &g), random_lossless(&mut r, 2, &g), random_lossless(&mut r, 2, &g));
    let left = cascade(&cascade(&a, &b).unwrap(), &c).unwrap();
    let right = cascade(&a, &cascade(&b, &c).unwrap()).unwrap();
    for (x, y) in [(&left.s11, &right.s11), (&left.s12, &right.s12), (&left.s21, &right.s21), (&left.s22, &right.s22)] {
        assert!(x.max_abs_diff(y) < 1e-10);
    }
}

/// Two Z-parameter two-ports joined port 2 to port 1, solved by eliminating the junction.
fn join_z(za: &CMatrix, zm: &CMatrix) -> CMatrix {
    let d = za[(1, 1)] + zm[(0, 0)];
    CMatrix::from_row_slice(
        2,
        2,
        &[
            za[(0, 0)] - za[(0, 1)] * za[(1, 0)] / d,
            za[(0, 1)] * zm[(0, 1)] / d,
            zm[(1, 0)] * za[(1, 0)] / d,
            zm[(1, 1)] - zm[(1, 0)] * zm[(0, 1)] / d,
        ],
    )
}

#[test]
fn scalar_cascade_matches_impedance_composition() {
    let mut r = rng(4);
    let g = grid(6);
    let passive = |r: &mut rand_chacha::ChaCha20Rng| {
        let m = random_matrix(r, 2);
        let sym = &m + m.transpose();
        sym + CMatrix::identity(2, 2) * Complex64::new(3.0, 0.0)
    };
    let za: Vec<CMatrix> = (0..g.len()).map(|_| passive(&mut r)).collect();
    let zm: Vec<CMatrix> = (0..g.len()).map(|_| passive(&mut r)).collect();
    let to_s = |z: &[CMatrix]| z_to_s(&sweep_of(z.to_vec()), 1.0).unwrap().into_matrices();
    let a = MultiportS::from_full(g.clone(), &to_s(&za), Reference::Uniform(1.0)).unwrap();
    let m = MultiportS::from_full(g.clone(), &to_s(&zm), Reference::Uniform(1.0)).unwrap();
    let c = cascade(&a, &m).unwrap();
    let joined: Vec<CMatrix> = za.iter().zip(&zm).map(|(x, y)| join_z(x, y)).collect();
    let oracle = to_s(&joined);
    for (i, o) in oracle.iter().enumerate() {
        assert!((c.full(i) - o).norm() < 1e-10, "sample {i}");
    }
}

#[test]
fn z_s_round_trip_on_random_reciprocal_sweep() {
    let mut r = rng(5);
    let ms: Vec<CMatrix> = (0..20)
        .map(|_| {
            let m = random_matrix(&mut r, 2) * Complex64::new(0.4, 0.0);
            &m + m.transpose()
        })
        .collect();
    let s = sweep_of(ms);
    for z_ref in [1.0, 50.0] {
        let back = z_to_s(&s_to_z(&s, z_ref).unwrap(), z_ref).unwrap();
        for (a, b) in back.iter().zip(s.iter()) {
            assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }
}

#[test]
fn beamformer_unitary_up_to_sixteen() {
    for n in 1..=16 {
        let q = dft_beamformer(n).unwrap();
        assert!((q.adjoint() * &q - CMatrix::identity(n, n)).norm() < 1e-13, "n = {n}");
    }
    assert!(dft_beamformer(0).is_err());
}

#[test]
fn circulant_reconstruction_random() {
    let mut r = rng(6);
    for n in 1..=9 {
        let m = n / 2 + 1;
        let half: Vec<Complex64> = (0..m).map(|_| Complex64::new(r.random_range(-50.0..50.0), r.random_range(-50.0..50.0))).collect();
        let row: Vec<Complex64> = (0..n).map(|k| half[k.min(n - k)]).collect();
        let traces = diagonalize_circulant(std::slice::from_ref(&row), n).unwrap();
        let lambda = CMatrix::from_diagonal(&CVector::from_iterator(n, traces.iter().map(|t| t[0])));
        let q = dft_beamformer(n).unwrap();
        let z = &q * lambda * q.adjoint();
        let want = CMatrix::from_fn(n, n, |i, j| row[(j + n - i) % n]);
        assert!((&z - &want).norm() < 1e-10 * want.norm(), "n = {n}");
    }
}
