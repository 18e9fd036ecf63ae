#![allow(dead_code)]

pub mod oracle;

use num_complex::Complex64;
use qwalk_core::{Coin, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.random::<f64>().max(1e-300);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    c(gaussian(rng), gaussian(rng))
}

/// Unit vector, uniform on the complex sphere.
pub fn random_unit(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random unitary by Gram-Schmidt on Gaussian rows.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> SquareMatrix {
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        for _ in 0..2 {
            for r in &rows {
                let dot: Complex64 = r.iter().zip(&v).map(|(p, q)| p.conj() * q).sum();
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi -= dot * ri;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            rows.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    SquareMatrix::from_rows(rows).unwrap()
}

pub fn random_coin(rng: &mut impl Rng, n: usize) -> Coin {
    Coin::explicit(random_unitary(rng, n)).unwrap()
}

/// Random two-state unitary with every entry of modulus at least 0.05.
pub fn random_generic_coin(rng: &mut impl Rng) -> Coin {
    loop {
        let m = random_unitary(rng, 2);
        if m.entries().iter().all(|z| z.norm() > 0.05) {
            return Coin::explicit(m).unwrap();
        }
    }
}
