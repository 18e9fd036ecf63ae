//! Exact time evolution `Psi_{n+1}(x) = sum_k U_k Psi_n(x - shift_k)`.
//!
//! Windows grow by the largest displacement on each side per step and are
//! never truncated, so every result is exact up to floating-point rounding.

use num_complex::Complex64;

use crate::coin::{Coin, SquareMatrix};
use crate::error::{Result, WalkError};
use crate::field::{phi_measure, MeasureWindow, WaveWindow};

/// The coin's rows as separate matrices: part `k` keeps row `k` and zeros
/// elsewhere, paired with that row's displacement. The parts sum to the coin.
pub fn split_coin(coin: &Coin) -> Vec<(i64, SquareMatrix)> {
    let n = coin.size();
    coin.shifts()
        .iter()
        .enumerate()
        .map(|(k, &shift)| {
            let mut part = SquareMatrix::zeros(n);
            for j in 0..n {
                part.set(k, j, coin.matrix().get(k, j));
            }
            (shift, part)
        })
        .collect()
}

/// One application of the walk operator.
pub fn step(coin: &Coin, psi: &WaveWindow) -> Result<WaveWindow> {
    let dim = coin.size();
    if psi.chirality_dim() != dim {
        return Err(WalkError::DimensionMismatch { coin: dim, state: psi.chirality_dim() });
    }
    let reach = coin.max_shift();
    let mut out = WaveWindow::zeros(dim, psi.offset() - reach, psi.len() + 2 * reach as usize);
    let matrix = coin.matrix();
    let shifts = coin.shifts();
    let dst = out.raw_mut();
    // Each output entry (x, k) is written exactly once, from input site x - shift_k.
    for (i, src) in psi.raw().chunks(dim).enumerate() {
        for (k, &shift) in shifts.iter().enumerate() {
            let row = matrix.row(k);
            let mut acc = Complex64::new(0.0, 0.0);
            for (u, z) in row.iter().zip(src) {
                acc += u * z;
            }
            let target = (i as i64 + reach + shift) as usize;
            dst[target * dim + k] = acc;
        }
    }
    Ok(out)
}

/// `n` applications of [`step`]; `n = 0` returns a copy of `psi0`.
pub fn evolve(coin: &Coin, psi0: &WaveWindow, n: usize) -> Result<WaveWindow> {
    let mut psi = psi0.clone();
    for _ in 0..n {
        psi = step(coin, &psi)?;
    }
    Ok(psi)
}

/// `phi(evolve(coin, psi0, n))`.
pub fn measure_at(coin: &Coin, psi0: &WaveWindow, n: usize) -> Result<MeasureWindow> {
    Ok(phi_measure(&evolve(coin, psi0, n)?))
}

/// Iterator over `Psi_0, Psi_1, ...`.
pub struct Trajectory<'a> {
    coin: &'a Coin,
    next: Option<WaveWindow>,
}

impl<'a> Trajectory<'a> {
    pub fn new(coin: &'a Coin, psi0: &WaveWindow) -> Result<Self> {
        if psi0.chirality_dim() != coin.size() {
            return Err(WalkError::DimensionMismatch { coin: coin.size(), state: psi0.chirality_dim() });
        }
        Ok(Trajectory { coin, next: Some(psi0.clone()) })
    }
}

impl Iterator for Trajectory<'_> {
    type Item = WaveWindow;

    fn next(&mut self) -> Option<WaveWindow> {
        let current = self.next.take()?;
        self.next = step(self.coin, &current).ok();
        Some(current)
    }
}

/// Partial Cesaro average `(1/T) sum_{n<T} mu_n`, reported with its `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeAverage {
    pub steps: usize,
    pub measure: MeasureWindow,
}

pub fn time_averaged_measure(coin: &Coin, psi0: &WaveWindow, steps: usize) -> Result<TimeAverage> {
    if steps == 0 {
        return Err(WalkError::InvalidArgument("time average needs T >= 1".into()));
    }
    let reach = coin.max_shift();
    let grow = reach * (steps as i64 - 1);
    let mut acc = MeasureWindow::zeros(psi0.offset() - grow, psi0.len() + 2 * grow as usize);
    let w = 1.0 / steps as f64;
    for psi in Trajectory::new(coin, psi0)?.take(steps) {
        acc.add_scaled(&phi_measure(&psi), w);
    }
    Ok(TimeAverage { steps, measure: acc })
}

/// Divides by the total mass so the values sum to one.
pub fn normalized_distribution(mu: &MeasureWindow) -> Result<MeasureWindow> {
    let total = mu.total();
    if total.is_nan() || total <= 0.0 || total.is_infinite() {
        return Err(WalkError::DegenerateInput(format!("measure has total mass {total}")));
    }
    MeasureWindow::new(mu.offset(), mu.values().iter().map(|v| v / total).collect())
}
