//! Dense-matrix reference for the walk operator.

use super::*;
use num_complex::Complex64;
use qwalk_core::evolution::evolve;
use qwalk_core::{Coin, WaveWindow};
use rand::Rng;

/// Dense matrix of one step on sites `lo..=hi`, indexed by `(x - lo) * dim + k`.
/// Only used on blocks wide enough that nothing leaves them.
pub fn dense_step_matrix(coin: &Coin, lo: i64, hi: i64) -> Vec<Vec<Complex64>> {
    let dim = coin.size();
    let len = (hi - lo + 1) as usize * dim;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); len]; len];
    for x in lo..=hi {
        for k in 0..dim {
            let y = x - coin.shifts()[k];
            if y < lo || y > hi {
                continue;
            }
            for j in 0..dim {
                m[(x - lo) as usize * dim + k][(y - lo) as usize * dim + j] = coin.matrix().get(k, j);
            }
        }
    }
    m
}

pub fn matvec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn brute_force_trial(seed: u64) -> f64 {
    let mut rng = rng(seed);
    let dim = rng.random_range(2..=5);
    let coin = if rng.random_bool(0.25) { Coin::grover(dim).unwrap() } else { random_coin(&mut rng, dim) };
    let width = rng.random_range(1..=9usize);
    let offset = rng.random_range(-5..=5i64);
    let steps = rng.random_range(0..=4usize);
    let amps: Vec<Complex64> = (0..width * dim).map(|_| random_complex(&mut rng)).collect();
    let psi0 = WaveWindow::new(dim, offset, amps.clone()).unwrap();

    let reach = coin.max_shift() * steps as i64;
    let (lo, hi) = (offset - reach, offset + width as i64 - 1 + reach);
    let m = dense_step_matrix(&coin, lo, hi);
    let mut v = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize * dim];
    v[(reach as usize * dim)..(reach as usize * dim + amps.len())].copy_from_slice(&amps);
    for _ in 0..steps {
        v = matvec(&m, &v);
    }

    let out = evolve(&coin, &psi0, steps).unwrap();
    let mut worst = 0.0_f64;
    for x in lo..=hi {
        for k in 0..dim {
            let dense = v[(x - lo) as usize * dim + k];
            let got = out.site(x).map_or(Complex64::new(0.0, 0.0), |s| s[k]);
            worst = worst.max((dense - got).norm());
        }
    }
    worst
}
