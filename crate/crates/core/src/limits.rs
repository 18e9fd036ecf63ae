//! Closed-form limit objects and their comparison with finite-time walks.
//!
//! Two kinds of limits appear:
//!
//! - measures on sites, `lim mu_n(x)`: the localized part of the three-state
//!   Grover walk ([`grover3_localization`]) and the time averages of the
//!   `a = 0` walk;
//! - weak limits of the rescaled position `X_n / n`: the Konno density for
//!   two-state coins with `abcd != 0`, and the Grover-3 law (point mass at the
//!   origin plus a density on `(-1/sqrt3, 1/sqrt3)`).
//!
//! Model CDFs integrate the densities after the substitution `x = r sin t`,
//! which turns the inverse-square-root endpoint singularities into smooth
//! integrands on `[-pi/2, pi/2]`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::coin::{Coin, CASE_ZERO_TOL};
use crate::error::{invalid, Result, WalkError};
use crate::evolution::{measure_at, normalized_distribution};
use crate::field::{MeasureWindow, WaveWindow};
use crate::quadrature::integrate;

/// Unit-norm tolerance for initial chirality vectors.
pub const UNIT_NORM_TOL: f64 = 1e-12;

const SQRT_6: f64 = 2.449_489_742_783_178;

/// Decay base `49 - 20 sqrt6` of the localized Grover-3 measure.
pub fn grover3_decay_base() -> f64 {
    49.0 - 20.0 * SQRT_6
}

/// Half-width `1/sqrt3` of the Grover-3 density support.
pub fn grover3_support_radius() -> f64 {
    1.0 / 3f64.sqrt()
}

/// `sqrt(1 - r^2) / (pi (1 - x^2) sqrt(r^2 - x^2))` on `(-r, r)`, zero elsewhere.
pub fn f_k(x: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return invalid(format!("f_K needs 0 < r < 1, got {r}"));
    }
    if x.abs() >= r {
        return Ok(0.0);
    }
    Ok((1.0 - r * r).sqrt() / (PI * (1.0 - x * x) * (r * r - x * x).sqrt()))
}

/// `C = |alpha|^2 - |beta|^2 + 2 Re(a alpha conj(b beta)) / |a|^2`.
pub fn konno_c(a: Complex64, b: Complex64, alpha: Complex64, beta: Complex64) -> Result<f64> {
    if a.norm() <= CASE_ZERO_TOL {
        return Err(WalkError::WrongCase("Konno coefficient needs a != 0".into()));
    }
    Ok(alpha.norm_sqr() - beta.norm_sqr() + 2.0 * (a * alpha * (b * beta).conj()).re / a.norm_sqr())
}

fn grover3_norms(alpha: Complex64, beta: Complex64, gamma: Complex64) -> (f64, f64, f64) {
    ((2.0 * alpha + beta).norm_sqr(), (beta + 2.0 * gamma).norm_sqr(), (alpha + beta + gamma).norm_sqr())
}

/// `lim mu_n(x)` for the three-state Grover walk started from `[alpha, beta, gamma]` at the origin.
pub fn grover3_localization(x: i64, alpha: Complex64, beta: Complex64, gamma: Complex64) -> f64 {
    let (p, q, s) = grover3_norms(alpha, beta, gamma);
    let r = grover3_decay_base();
    match x {
        0 => (5.0 - 2.0 * SQRT_6) / 2.0 * (p + q),
        x if x > 0 => ((3.0 + SQRT_6) * p + (3.0 - SQRT_6) * q - 2.0 * s) * r.powi(x as i32),
        x => ((3.0 - SQRT_6) * p + (3.0 + SQRT_6) * q - 2.0 * s) * r.powi((-x) as i32),
    }
}

/// Point mass at the origin of the Grover-3 weak limit.
pub fn grover3_delta_mass(alpha: Complex64, beta: Complex64, gamma: Complex64) -> f64 {
    let (p, q, s) = grover3_norms(alpha, beta, gamma);
    (SQRT_6 - 2.0) / 4.0 * (p + q) - (5.0 * SQRT_6 - 12.0) / 6.0 * s
}

/// `[c0, c1, c2]` of the Grover-3 weak-limit density.
pub fn grover3_weak_coefficients(alpha: Complex64, beta: Complex64, gamma: Complex64) -> [f64; 3] {
    let c0 = (alpha + gamma).norm_sqr() / 2.0 + beta.norm_sqr();
    let c1 = -(alpha - beta).norm_sqr() + (gamma - beta).norm_sqr();
    let c2 = (alpha - gamma).norm_sqr() / 2.0 - ((2.0 * alpha + beta) * (2.0 * gamma + beta).conj()).re;
    [c0, c1, c2]
}

/// `sqrt2 (c0 + c1 x + c2 x^2) / (pi (1 - x^2) sqrt(1 - 3x^2))` on `(-1/sqrt3, 1/sqrt3)`.
pub fn grover3_weak_density(x: f64, alpha: Complex64, beta: Complex64, gamma: Complex64) -> f64 {
    if 3.0 * x * x >= 1.0 {
        return 0.0;
    }
    let [c0, c1, c2] = grover3_weak_coefficients(alpha, beta, gamma);
    SQRT_2 * (c0 + c1 * x + c2 * x * x) / (PI * (1.0 - x * x) * (1.0 - 3.0 * x * x).sqrt())
}

fn check_unit(v: &[Complex64]) -> Result<()> {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return invalid(format!("initial vector must have unit norm, got squared norm {norm}"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    TwoStateKonno,
    Grover3Weak,
    Grover3Localization,
    /// Finitely many atoms (the `a = 0` and `b = 0` weak limits).
    Atomic,
}

/// A closed-form limit law. Only inputs are stored; every coefficient is derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityModel {
    TwoStateKonno { a: Complex64, b: Complex64, alpha: Complex64, beta: Complex64 },
    Grover3Weak { alpha: Complex64, beta: Complex64, gamma: Complex64 },
    Grover3Localization { alpha: Complex64, beta: Complex64, gamma: Complex64 },
    /// `(position, mass)` pairs.
    Atomic { atoms: Vec<(f64, f64)> },
}

impl DensityModel {
    /// Konno law for a two-state coin with all entries nonzero.
    pub fn konno(coin: &Coin, alpha: Complex64, beta: Complex64) -> Result<DensityModel> {
        let [a, b, ..] = coin.two_state_entries()?;
        DensityModel::konno_from_entries(a, b, alpha, beta)
    }

    pub fn konno_from_entries(a: Complex64, b: Complex64, alpha: Complex64, beta: Complex64) -> Result<DensityModel> {
        if a.norm() <= CASE_ZERO_TOL || b.norm() <= CASE_ZERO_TOL {
            return Err(WalkError::WrongCase("Konno density needs a != 0 and b != 0".into()));
        }
        check_unit(&[alpha, beta])?;
        Ok(DensityModel::TwoStateKonno { a, b, alpha, beta })
    }

    pub fn grover3_weak(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<DensityModel> {
        check_unit(&[alpha, beta, gamma])?;
        Ok(DensityModel::Grover3Weak { alpha, beta, gamma })
    }

    pub fn grover3_localization(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<DensityModel> {
        check_unit(&[alpha, beta, gamma])?;
        Ok(DensityModel::Grover3Localization { alpha, beta, gamma })
    }

    /// Atoms with nonnegative masses summing to one (to `1e-12`).
    pub fn atomic(mut atoms: Vec<(f64, f64)>) -> Result<DensityModel> {
        if atoms.is_empty() || atoms.iter().any(|&(x, m)| !x.is_finite() || m.is_nan() || m < 0.0) {
            return invalid("atoms need finite positions and nonnegative masses");
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > UNIT_NORM_TOL {
            return invalid(format!("atom masses must sum to 1, got {total}"));
        }
        atoms.sort_by(|p, q| p.0.total_cmp(&q.0));
        Ok(DensityModel::Atomic { atoms })
    }

    pub fn kind(&self) -> DensityKind {
        match self {
            DensityModel::TwoStateKonno { .. } => DensityKind::TwoStateKonno,
            DensityModel::Grover3Weak { .. } => DensityKind::Grover3Weak,
            DensityModel::Grover3Localization { .. } => DensityKind::Grover3Localization,
            DensityModel::Atomic { .. } => DensityKind::Atomic,
        }
    }

    /// `C(a, b; alpha, beta)` for the Konno law.
    pub fn konno_c(&self) -> Option<f64> {
        match *self {
            DensityModel::TwoStateKonno { a, b, alpha, beta } => konno_c(a, b, alpha, beta).ok(),
            _ => None,
        }
    }

    /// `[c0, c1, c2]` for the Grover-3 laws.
    pub fn grover3_coefficients(&self) -> Option<[f64; 3]> {
        match *self {
            DensityModel::Grover3Weak { alpha, beta, gamma } | DensityModel::Grover3Localization { alpha, beta, gamma } => {
                Some(grover3_weak_coefficients(alpha, beta, gamma))
            }
            _ => None,
        }
    }

    /// Mass of the atom at the origin (the localized mass for the Grover-3 kinds).
    pub fn delta_mass(&self) -> f64 {
        match self {
            DensityModel::TwoStateKonno { .. } => 0.0,
            &DensityModel::Grover3Weak { alpha, beta, gamma }
            | &DensityModel::Grover3Localization { alpha, beta, gamma } => grover3_delta_mass(alpha, beta, gamma),
            DensityModel::Atomic { atoms } => atoms.iter().filter(|a| a.0 == 0.0).map(|a| a.1).sum(),
        }
    }

    /// Atoms of the weak limit of `X_n / n`.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            DensityModel::TwoStateKonno { .. } => Vec::new(),
            DensityModel::Grover3Weak { .. } => vec![(0.0, self.delta_mass())],
            DensityModel::Grover3Localization { .. } => Vec::new(),
            DensityModel::Atomic { atoms } => atoms.clone(),
        }
    }

    /// Absolutely continuous part of the weak limit of `X_n / n`.
    pub fn density(&self, x: f64) -> f64 {
        match *self {
            DensityModel::TwoStateKonno { a, b, alpha, beta } => {
                let c = konno_c(a, b, alpha, beta).unwrap_or(0.0);
                (1.0 - c * x) * f_k(x, a.norm()).unwrap_or(0.0)
            }
            DensityModel::Grover3Weak { alpha, beta, gamma } => grover3_weak_density(x, alpha, beta, gamma),
            _ => 0.0,
        }
    }

    /// `lim mu_n(x)` on sites, for the localization kind.
    pub fn localization(&self, x: i64) -> Option<f64> {
        match *self {
            DensityModel::Grover3Localization { alpha, beta, gamma } => Some(grover3_localization(x, alpha, beta, gamma)),
            _ => None,
        }
    }

    /// Radius `r` of the density support `(-r, r)`, if there is a density.
    pub fn support_radius(&self) -> Option<f64> {
        match *self {
            DensityModel::TwoStateKonno { a, .. } => Some(a.norm()),
            DensityModel::Grover3Weak { .. } => Some(grover3_support_radius()),
            _ => None,
        }
    }

    /// `density(r sin t) * r cos t`, smooth on `[-pi/2, pi/2]`.
    fn angular_density(&self, t: f64) -> f64 {
        match *self {
            DensityModel::TwoStateKonno { a, b, alpha, beta } => {
                let r = a.norm();
                let c = konno_c(a, b, alpha, beta).unwrap_or(0.0);
                let s = t.sin();
                (1.0 - c * r * s) * (1.0 - r * r).sqrt() / (PI * (1.0 - r * r * s * s))
            }
            DensityModel::Grover3Weak { alpha, beta, gamma } => {
                let r = grover3_support_radius();
                let x = r * t.sin();
                let [c0, c1, c2] = grover3_weak_coefficients(alpha, beta, gamma);
                SQRT_2 * (c0 + c1 * x + c2 * x * x) * r / (PI * (1.0 - x * x))
            }
            _ => 0.0,
        }
    }

    fn angle_of(&self, x: f64) -> f64 {
        match self.support_radius() {
            Some(r) => (x / r).clamp(-1.0, 1.0).asin(),
            None => -FRAC_PI_2,
        }
    }

    /// `int_{-inf}^x density`, the absolutely continuous part of the CDF.
    pub fn continuous_cdf(&self, x: f64) -> f64 {
        if self.support_radius().is_none() {
            return 0.0;
        }
        integrate(|t| self.angular_density(t), -FRAC_PI_2, self.angle_of(x), QUAD_TOL)
    }

    /// `P(X <= x)` of the weak limit: atoms at or below `x` plus [`Self::continuous_cdf`].
    pub fn cdf(&self, x: f64) -> f64 {
        self.atoms().iter().filter(|a| a.0 <= x).map(|a| a.1).sum::<f64>() + self.continuous_cdf(x)
    }

    /// Total mass of the law; `1` up to quadrature error for the weak-limit kinds.
    pub fn total_mass(&self) -> f64 {
        self.atoms().iter().map(|a| a.1).sum::<f64>() + self.continuous_cdf(f64::INFINITY)
    }
}

const QUAD_TOL: f64 = 1e-12;

/// `(x_i, density(x_i))` at `grid + 1` equispaced points of `[-1, 1]`.
pub fn density_grid(model: &DensityModel, grid: usize) -> Result<Vec<(f64, f64)>> {
    if grid == 0 {
        return invalid("grid must have at least one interval");
    }
    Ok((0..=grid)
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / grid as f64;
            (x, model.density(x))
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct AZeroLimits {
    /// `lim (1/T) sum_{n<T} mu_n = (|beta|^2 delta_{-1} + delta_0 + |alpha|^2 delta_1) / 2`.
    pub time_avg: MeasureWindow,
    /// `delta_0`.
    pub weak_limit: DensityModel,
}

pub fn a_zero_closed_forms(alpha: Complex64, beta: Complex64) -> Result<AZeroLimits> {
    check_unit(&[alpha, beta])?;
    let time_avg = MeasureWindow::new(-1, vec![0.5 * beta.norm_sqr(), 0.5, 0.5 * alpha.norm_sqr()])?;
    Ok(AZeroLimits { time_avg, weak_limit: DensityModel::atomic(vec![(0.0, 1.0)])? })
}

/// `mu_n = |alpha|^2 delta_{-n} + |beta|^2 delta_n` for the diagonal coin.
pub fn b_zero_closed_forms(alpha: Complex64, beta: Complex64, n: usize) -> Result<MeasureWindow> {
    check_unit(&[alpha, beta])?;
    let n = n as i64;
    MeasureWindow::from_points(&[(-n, alpha.norm_sqr()), (n, beta.norm_sqr())])
}

/// `|alpha|^2 delta_{-1} + |beta|^2 delta_1`.
pub fn b_zero_weak_limit(alpha: Complex64, beta: Complex64) -> Result<DensityModel> {
    check_unit(&[alpha, beta])?;
    DensityModel::atomic(vec![(-1.0, alpha.norm_sqr()), (1.0, beta.norm_sqr())])
}

/// Distances between the law of `X_n / n` and a model weak limit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Comparison {
    pub n: usize,
    /// Sup of `|F_n - F|` over continuity points of `F_n`, away from model atoms; see [`empirical_vs_density`].
    pub ks_distance: f64,
    /// Plain two-sided sup over the real line.
    pub raw_sup: f64,
    /// Model mass at the origin.
    pub delta_mass: f64,
}

/// Compares the empirical law of `X_n / n` (from exact amplitudes) with `model`.
///
/// `F_n` is a step function with jumps at `x / n`. Its values are compared
/// with the model CDF `F` at the midpoints between consecutive jump points
/// and at one lattice step beyond either end, i.e. at continuity points of
/// `F_n`. Points strictly closer than `n^{-1/2}` to a model atom are skipped:
/// near an atom the finite-`n` mass is spread over a shrinking neighbourhood
/// and the plain sup does not tend to zero even though the laws converge
/// weakly. `raw_sup` is the classical sup over all `x`, without either rule.
pub fn empirical_vs_density(coin: &Coin, psi0: &WaveWindow, n: usize, model: &DensityModel) -> Result<Comparison> {
    if n == 0 {
        return invalid("comparison needs n >= 1");
    }
    if model.kind() == DensityKind::Grover3Localization {
        return invalid("the localization model is a measure on sites, not a law of X_n/n");
    }
    let p = normalized_distribution(&measure_at(coin, psi0, n)?)?;
    let scale = n as f64;
    let support: Vec<(f64, f64)> = p.iter().filter(|s| s.1 > 0.0).map(|(x, v)| (x as f64 / scale, v)).collect();
    let atoms = model.atoms();
    let atom_mass_upto = |x: f64, inclusive: bool| -> f64 {
        atoms.iter().filter(|a| if inclusive { a.0 <= x } else { a.0 < x }).map(|a| a.1).sum()
    };

    // Continuity points of F_n with the empirical CDF there.
    let step = 1.0 / scale;
    let mut probes = Vec::with_capacity(support.len() + 1);
    let mut cum = 0.0;
    probes.push((support[0].0 - step, 0.0));
    for w in support.windows(2) {
        cum += w[0].1;
        probes.push((0.5 * (w[0].0 + w[1].0), cum));
    }
    probes.push((support[support.len() - 1].0 + step, 1.0));

    let radius = 1.0 / scale.sqrt();
    let mut cdf = IncrementalCdf::new(model);
    let mut ks_distance = 0.0_f64;
    for &(x, emp) in &probes {
        let f = cdf.at(x) + atom_mass_upto(x, true);
        if atoms.iter().any(|a| (a.0 - x).abs() < radius) {
            continue;
        }
        ks_distance = ks_distance.max((emp - f).abs());
    }

    // Breakpoints of either CDF, with left and right limits.
    let mut breaks: Vec<(f64, f64)> = support.clone();
    breaks.extend(atoms.iter().map(|a| (a.0, 0.0)));
    breaks.sort_by(|p, q| p.0.total_cmp(&q.0));
    breaks.dedup_by(|later, kept| {
        let same = later.0 == kept.0;
        if same {
            kept.1 += later.1;
        }
        same
    });
    let mut cdf = IncrementalCdf::new(model);
    let mut before = 0.0;
    let mut raw_sup = 0.0_f64;
    for &(x, mass) in &breaks {
        let cont = cdf.at(x);
        let after = before + mass;
        raw_sup = raw_sup.max((before - cont - atom_mass_upto(x, false)).abs());
        raw_sup = raw_sup.max((after - cont - atom_mass_upto(x, true)).abs());
        before = after;
    }

    Ok(Comparison { n, ks_distance, raw_sup, delta_mass: model.delta_mass() })
}

/// Continuous CDF at nondecreasing abscissae, integrating only the new piece each call.
struct IncrementalCdf<'a> {
    model: &'a DensityModel,
    angle: f64,
    value: f64,
}

impl<'a> IncrementalCdf<'a> {
    fn new(model: &'a DensityModel) -> Self {
        IncrementalCdf { model, angle: -FRAC_PI_2, value: 0.0 }
    }

    fn at(&mut self, x: f64) -> f64 {
        if self.model.support_radius().is_none() {
            return 0.0;
        }
        let angle = self.model.angle_of(x);
        if angle > self.angle {
            self.value += integrate(|t| self.model.angular_density(t), self.angle, angle, 1e-14);
            self.angle = angle;
        }
        self.value
    }
}
