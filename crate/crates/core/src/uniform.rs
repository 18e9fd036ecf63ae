//! Uniform probability on `{-M, ..., M}` from a truncated eigenstate.
//!
//! Keep the eigenstate on `|x| <= 2M`, zero elsewhere, and run `M` steps.
//! Every site in `[-M, M]` only sees amplitudes that started inside the
//! truncation window, so there the state is still `lambda^M` times the
//! eigenstate and the measure keeps its constant value. With the constant set
//! to `1/(2M+1)` this is the uniform probability on the interval. Mass outside
//! `[-M, M]` is whatever the truncation leaves behind and is only reported.

use serde::Serialize;

use crate::coin::Coin;
use crate::error::{invalid, Result, WalkError};
use crate::evolution::measure_at;
use crate::field::{MeasureWindow, WaveWindow};
use crate::stationary::{CaseTag, Eigenpair};

/// The eigenstate restricted to `[-2M, 2M]`.
pub fn truncated_initial_state(ep: &Eigenpair, m: i64) -> Result<WaveWindow> {
    if m < 1 {
        return invalid(format!("M must be >= 1, got {m}"));
    }
    Ok(ep.materialize(-2 * m, 2 * m))
}

/// Free parameter of a case, set so that its per-site measure is `1/(2M+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityScale {
    /// `|A| = 1/sqrt(2(2M+1))` for the `abcd != 0` eigenstates.
    Amplitude(f64),
    /// `|alpha|^2 + |beta|^2` (or `|l|^2 + |l+r|^2 + |r|^2` for the Grover `-1` case).
    SquaredNorm(f64),
    /// `|psi_0|^2` for Grover `lambda_+-`, `|psi|^2` for Grover `lambda = 1`.
    Coefficient(f64),
}

impl ProbabilityScale {
    pub fn value(&self) -> f64 {
        match *self {
            ProbabilityScale::Amplitude(v) | ProbabilityScale::SquaredNorm(v) | ProbabilityScale::Coefficient(v) => v,
        }
    }
}

pub fn amplitude_scale_for_probability(case: CaseTag, m: i64) -> Result<ProbabilityScale> {
    if m < 1 {
        return invalid(format!("M must be >= 1, got {m}"));
    }
    let target = 1.0 / (2 * m + 1) as f64;
    Ok(match case {
        CaseTag::Generic(_) => ProbabilityScale::Amplitude((0.5 * target).sqrt()),
        CaseTag::AZeroPlus | CaseTag::AZeroMinus | CaseTag::BZero | CaseTag::Grover3Neg1 => {
            ProbabilityScale::SquaredNorm(target)
        }
        CaseTag::Grover3Plus | CaseTag::Grover3Minus => ProbabilityScale::Coefficient(target / 4.0),
        CaseTag::Grover3Pos1 => ProbabilityScale::Coefficient(target / 3.0),
        CaseTag::GroverNTrivial => {
            return Err(WalkError::InvalidArgument(
                "groverN_trivial scale depends on N; use scale_to_probability".into(),
            ))
        }
    })
}

/// `ep` rescaled by a positive real so that its per-site measure is `1/(2M+1)`.
pub fn scale_to_probability(ep: &Eigenpair, m: i64) -> Result<Eigenpair> {
    if m < 1 {
        return invalid(format!("M must be >= 1, got {m}"));
    }
    ep.with_per_site_measure(1.0 / (2 * m + 1) as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformReport {
    #[serde(rename = "M")]
    pub m: i64,
    /// `1/(2M+1)`.
    pub target: f64,
    /// `max_{|x| <= M} |mu_M(x) - 1/(2M+1)|`.
    pub max_dev: f64,
    pub interval_mass: f64,
    pub outside_mass: f64,
    #[serde(skip)]
    pub measure: MeasureWindow,
}

impl UniformReport {
    /// `mu_M` on `[-M, M]`.
    pub fn interval(&self) -> Vec<(i64, f64)> {
        (-self.m..=self.m).map(|x| (x, self.measure.get(x))).collect()
    }
}

/// Evolves the truncated state `M` steps and compares `mu_M` on `[-M, M]`
/// against `1/(2M+1)`. `ep` is used as given; scale it first with
/// [`scale_to_probability`].
pub fn uniform_probability_check(coin: &Coin, ep: &Eigenpair, m: i64) -> Result<UniformReport> {
    let psi0 = truncated_initial_state(ep, m)?;
    let measure = measure_at(coin, &psi0, m as usize)?;
    let target = 1.0 / (2 * m + 1) as f64;
    let max_dev = (-m..=m).map(|x| (measure.get(x) - target).abs()).fold(0.0, f64::max);
    let interval_mass = measure.mass_on(-m, m);
    let outside_mass = measure.total() - interval_mass;
    Ok(UniformReport { m, target, max_dev, interval_mass, outside_mass, measure })
}
