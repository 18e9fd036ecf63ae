//! `evolve` against powers of the dense walk operator on a finite block of sites.

mod common;

use common::oracle::{brute_force_trial, dense_step_matrix, matvec};
use num_complex::Complex64;
use qwalk_core::Coin;

#[test]
fn evolve_matches_dense_matrix_powers() {
    for seed in 0..200 {
        let err = brute_force_trial(seed);
        assert!(err <= 1e-13, "seed {seed}: {err:e}");
    }
}

#[test]
fn dense_step_is_unitary_in_the_bulk() {
    let coin = Coin::grover(4).unwrap();
    let m = dense_step_matrix(&coin, -6, 6);
    let mut v = vec![Complex64::new(0.0, 0.0); 13 * 4];
    v[6 * 4 + 1] = Complex64::new(1.0, 0.0);
    let w = matvec(&m, &v);
    let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-15);
}
