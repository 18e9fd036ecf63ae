//! Closed-form eigenstates `U^(s) Psi = lambda Psi` whose measure is uniform on Z.
//!
//! Each constructor returns an [`Eigenpair`]: the eigenvalue, a rule giving the
//! amplitude at any site, the case tag, and the per-site measure that the
//! closed form predicts. Nothing is stored per site; [`Eigenpair::materialize`]
//! evaluates the rule on a finite window.
//!
//! Two-state coins are routed by their entries:
//!
//! | case        | eigenvalues                           | per-site measure |
//! |-------------|---------------------------------------|------------------|
//! | `a = 0`     | `+-i sqrt(det U)`                     | `|alpha|^2 + |beta|^2` |
//! | `b = 0`     | any unit `lambda`                     | `|alpha|^2 + |beta|^2` |
//! | `abcd != 0` | four values where `h(z)` has a double root | `2|A|^2`     |
//!
//! The three-state Grover coin has four cases (`lambda_+-`, `-1`, `1`) and the
//! N-state Grover coin has the constant eigenstate at `lambda = 1`.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::coin::{unit_phase, Coin, CASE_ZERO_TOL};
use crate::error::{invalid, Result, WalkError};
use crate::evolution::{step, Trajectory};
use crate::field::{phi_measure, WaveWindow};

/// A `lambda` is accepted as a double-root eigenvalue when the quadratic's
/// discriminant has modulus at most this.
pub const DOUBLE_ROOT_TOL: f64 = 1e-8;

/// Tolerance on `| |lambda| - 1 |` for caller-supplied eigenvalues.
pub const UNIT_LAMBDA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    AZeroPlus,
    AZeroMinus,
    BZero,
    /// Index `1..=4` of the double-root eigenvalue.
    Generic(u8),
    Grover3Plus,
    Grover3Minus,
    Grover3Neg1,
    Grover3Pos1,
    GroverNTrivial,
}

impl CaseTag {
    pub const ALL: [CaseTag; 12] = [
        CaseTag::AZeroPlus,
        CaseTag::AZeroMinus,
        CaseTag::BZero,
        CaseTag::Generic(1),
        CaseTag::Generic(2),
        CaseTag::Generic(3),
        CaseTag::Generic(4),
        CaseTag::Grover3Plus,
        CaseTag::Grover3Minus,
        CaseTag::Grover3Neg1,
        CaseTag::Grover3Pos1,
        CaseTag::GroverNTrivial,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::AZeroPlus => "a_zero_plus",
            CaseTag::AZeroMinus => "a_zero_minus",
            CaseTag::BZero => "b_zero",
            CaseTag::Generic(1) => "generic_1",
            CaseTag::Generic(2) => "generic_2",
            CaseTag::Generic(3) => "generic_3",
            CaseTag::Generic(_) => "generic_4",
            CaseTag::Grover3Plus => "grover3_plus",
            CaseTag::Grover3Minus => "grover3_minus",
            CaseTag::Grover3Neg1 => "grover3_neg1",
            CaseTag::Grover3Pos1 => "grover3_pos1",
            CaseTag::GroverNTrivial => "groverN_trivial",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<CaseTag> {
        CaseTag::ALL
            .iter()
            .find(|t| t.as_str() == s)
            .copied()
            .ok_or_else(|| WalkError::InvalidArgument(format!("unknown case tag '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum AmplitudeRule {
    /// Period-two pattern: `even` on even sites, `odd` on odd sites.
    Alternating { even: Vec<Complex64>, odd: Vec<Complex64> },
    /// Component `k` at site `x` is `coeffs[k] * ratios[k]^x`.
    Geometric { coeffs: Vec<Complex64>, ratios: Vec<Complex64> },
}

/// An eigenvalue on the unit circle together with its closed-form eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    lambda: Complex64,
    rule: AmplitudeRule,
    label: CaseTag,
    per_site_measure: f64,
}

impl Eigenpair {
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn label(&self) -> CaseTag {
        self.label
    }

    pub fn chirality_dim(&self) -> usize {
        match &self.rule {
            AmplitudeRule::Alternating { even, .. } => even.len(),
            AmplitudeRule::Geometric { coeffs, .. } => coeffs.len(),
        }
    }

    /// Value of the uniform measure predicted by the closed form.
    pub fn per_site_measure(&self) -> f64 {
        self.per_site_measure
    }

    pub fn amp_at(&self, x: i64) -> Vec<Complex64> {
        match &self.rule {
            AmplitudeRule::Alternating { even, odd } => {
                if x.rem_euclid(2) == 0 {
                    even.clone()
                } else {
                    odd.clone()
                }
            }
            AmplitudeRule::Geometric { coeffs, ratios } => {
                coeffs.iter().zip(ratios).map(|(c, r)| c * int_pow(*r, x)).collect()
            }
        }
    }

    /// The eigenstate evaluated on `[lo, hi]`.
    pub fn materialize(&self, lo: i64, hi: i64) -> WaveWindow {
        let hi = hi.max(lo);
        let amps = (lo..=hi).flat_map(|x| self.amp_at(x)).collect();
        WaveWindow::new(self.chirality_dim(), lo, amps).expect("eigenstate windows are non-empty")
    }

    /// Multiplies every amplitude by `s`; the per-site measure scales by `|s|^2`.
    pub fn scaled(&self, s: Complex64) -> Eigenpair {
        let scale = |v: &Vec<Complex64>| v.iter().map(|z| z * s).collect::<Vec<_>>();
        let rule = match &self.rule {
            AmplitudeRule::Alternating { even, odd } => AmplitudeRule::Alternating { even: scale(even), odd: scale(odd) },
            AmplitudeRule::Geometric { coeffs, ratios } => {
                AmplitudeRule::Geometric { coeffs: scale(coeffs), ratios: ratios.clone() }
            }
        };
        Eigenpair { lambda: self.lambda, rule, label: self.label, per_site_measure: self.per_site_measure * s.norm_sqr() }
    }

    /// Rescales (by a positive real) so that the per-site measure equals `c`.
    pub fn with_per_site_measure(&self, c: f64) -> Result<Eigenpair> {
        if c.is_nan() || c <= 0.0 {
            return invalid(format!("target per-site measure must be positive, got {c}"));
        }
        Ok(self.scaled(Complex64::new((c / self.per_site_measure).sqrt(), 0.0)))
    }
}

/// `z^x` for integer `x` by binary powering (exact for `+-1`, `+-i`).
fn int_pow(z: Complex64, x: i64) -> Complex64 {
    let mut base = if x < 0 { z.inv() } else { z };
    let mut e = x.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

fn require_nonzero(z: Complex64, name: &str) -> Result<()> {
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return invalid(format!("{name} must be a nonzero finite complex number"));
    }
    Ok(())
}

/// Eigenstate of the `a = 0` coin [`Coin::a_zero`]`(eta, xi)` for
/// `lambda = +-i e^{i xi/2}` (principal half-angle of `det U = e^{i xi}`).
///
/// Even sites carry `[alpha, beta]`, odd sites `[e^{i eta} beta / lambda, lambda e^{-i eta} alpha]`.
pub fn eigen_a_zero(eta: f64, xi: f64, sign: Sign, alpha: Complex64, beta: Complex64) -> Result<Eigenpair> {
    if alpha.norm() == 0.0 || beta.norm() == 0.0 {
        return invalid("a = 0 eigenstate requires alpha * beta != 0");
    }
    require_nonzero(alpha, "alpha")?;
    require_nonzero(beta, "beta")?;
    let half = 0.5 * xi.rem_euclid(TAU);
    let lambda = Complex64::new(0.0, sign.factor()) * unit_phase(half);
    let phase = unit_phase(eta);
    let odd = vec![phase * beta / lambda, lambda * phase.conj() * alpha];
    Ok(Eigenpair {
        lambda,
        rule: AmplitudeRule::Alternating { even: vec![alpha, beta], odd },
        label: if sign == Sign::Plus { CaseTag::AZeroPlus } else { CaseTag::AZeroMinus },
        per_site_measure: alpha.norm_sqr() + beta.norm_sqr(),
    })
}

/// Eigenstate of the diagonal coin [`Coin::b_zero`]`(eta, xi)` for any unit `lambda`:
/// `Psi^L(x) = (lambda e^{-i eta})^x alpha`, `Psi^R(x) = (conj(lambda) e^{i xi} e^{-i eta})^x beta`.
pub fn eigen_b_zero(eta: f64, xi: f64, lambda: Complex64, alpha: Complex64, beta: Complex64) -> Result<Eigenpair> {
    if (lambda.norm() - 1.0).abs() > UNIT_LAMBDA_TOL {
        return invalid(format!("b = 0 eigenvalue must have |lambda| = 1, got {}", lambda.norm()));
    }
    if alpha.norm() == 0.0 || beta.norm() == 0.0 {
        return invalid("b = 0 eigenstate requires alpha * beta != 0");
    }
    require_nonzero(alpha, "alpha")?;
    require_nonzero(beta, "beta")?;
    let phase = unit_phase(-eta);
    let delta = unit_phase(xi);
    Ok(Eigenpair {
        lambda,
        rule: AmplitudeRule::Geometric {
            coeffs: vec![alpha, beta],
            ratios: vec![lambda * phase, lambda.conj() * delta * phase],
        },
        label: CaseTag::BZero,
        per_site_measure: alpha.norm_sqr() + beta.norm_sqr(),
    })
}

fn generic_entries(coin: &Coin) -> Result<[Complex64; 4]> {
    let entries = coin.two_state_entries()?;
    if entries.iter().any(|z| z.norm() <= CASE_ZERO_TOL) {
        return Err(WalkError::WrongCase(
            "coin has a zero entry; use the a = 0 or b = 0 constructors".into(),
        ));
    }
    Ok(entries)
}

/// The four eigenvalues for which `h(z) = z^2 - (lambda + det/lambda) z / d + a/d`
/// has a double root: `+-e^{i(+-phi + xi/2)}` with `cos phi = |a|`, `det U = e^{i xi}`.
pub fn double_root_lambdas(coin: &Coin) -> Result<[Complex64; 4]> {
    let [a, ..] = generic_entries(coin)?;
    let phi = a.norm().clamp(0.0, 1.0).acos();
    let xi = coin.determinant()?.arg().rem_euclid(TAU);
    let l1 = unit_phase(phi + 0.5 * xi);
    let l2 = unit_phase(-phi + 0.5 * xi);
    Ok([l1, l2, -l1, -l2])
}

/// Double root `gamma = (lambda + det * conj(lambda)) / (2a)` of the recurrence
/// satisfied by both chirality components.
pub fn gamma_of(coin: &Coin, lambda: Complex64) -> Result<Complex64> {
    let [a, ..] = coin.two_state_entries()?;
    if a.norm() <= CASE_ZERO_TOL {
        return Err(WalkError::WrongCase("gamma needs a != 0".into()));
    }
    let delta = coin.determinant()?;
    Ok((lambda + delta * lambda.conj()) / (2.0 * a))
}

/// `|B^2 - 4AC|` for `h(z)` of a two-state coin with `d != 0`.
pub fn two_state_discriminant(coin: &Coin, lambda: Complex64) -> Result<f64> {
    let [a, _, _, d] = coin.two_state_entries()?;
    if d.norm() <= CASE_ZERO_TOL {
        return Err(WalkError::WrongCase("h(z) needs d != 0".into()));
    }
    let delta = coin.determinant()?;
    let linear = (lambda + delta / lambda) / d;
    Ok((linear * linear - 4.0 * a / d).norm())
}

/// `|B^2 - 4|` for `h_G(z) = z^2 + ((3 lambda^2 + 4 lambda + 3)/lambda) z + 1`.
pub fn grover3_discriminant(lambda: Complex64) -> f64 {
    let linear = (3.0 * lambda * lambda + 4.0 * lambda + 3.0) / lambda;
    (linear * linear - 4.0).norm()
}

/// Dispatches to [`two_state_discriminant`] or [`grover3_discriminant`].
pub fn h_polynomial_discriminant(coin: &Coin, lambda: Complex64) -> Result<f64> {
    if coin.is_grover(3) {
        Ok(grover3_discriminant(lambda))
    } else if coin.size() == 2 {
        two_state_discriminant(coin, lambda)
    } else {
        Err(WalkError::WrongCase("no quadratic h(z) for this coin".into()))
    }
}

/// Eigenstate of a coin with `abcd != 0` at a double-root `lambda`:
/// `Psi^L(x) = A gamma^x`, `Psi^R(x) = (A/b) ((lambda - det conj(lambda))/2) gamma^{x-1}`.
pub fn eigen_generic(coin: &Coin, lambda: Complex64, amplitude: Complex64) -> Result<Eigenpair> {
    let [_, b, ..] = generic_entries(coin)?;
    require_nonzero(amplitude, "A")?;
    let disc = two_state_discriminant(coin, lambda)?;
    if disc > DOUBLE_ROOT_TOL {
        return invalid(format!("lambda = {lambda} is not a double-root eigenvalue (discriminant {disc:e})"));
    }
    let roots = double_root_lambdas(coin)?;
    let k = roots
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| (**p - lambda).norm().total_cmp(&(**q - lambda).norm()))
        .map(|(i, _)| i as u8 + 1)
        .unwrap_or(1);
    let delta = coin.determinant()?;
    // |gamma| = 1 for a unitary coin; dropping the rounding keeps gamma^x from drifting over long windows.
    let gamma = gamma_of(coin, lambda)?;
    let gamma = gamma / gamma.norm();
    let right = amplitude / b * (lambda - delta * lambda.conj()) / 2.0 / gamma;
    Ok(Eigenpair {
        lambda,
        rule: AmplitudeRule::Geometric { coeffs: vec![amplitude, right], ratios: vec![gamma, gamma] },
        label: CaseTag::Generic(k),
        per_site_measure: 2.0 * amplitude.norm_sqr(),
    })
}

/// [`eigen_generic`] at the `k`-th (1-based) value of [`double_root_lambdas`].
pub fn eigen_generic_k(coin: &Coin, k: usize, amplitude: Complex64) -> Result<Eigenpair> {
    if !(1..=4).contains(&k) {
        return invalid(format!("double-root index must be 1..=4, got {k}"));
    }
    let lambda = double_root_lambdas(coin)?[k - 1];
    eigen_generic(coin, lambda, amplitude)
}

/// Parameters for the four three-state Grover cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grover3Case {
    /// `lambda_+ = (-1 + 2 sqrt2 i)/3`, `Psi(x) = (-1)^x psi0 [1, -sqrt2 i, 1]`.
    Plus { psi0: Complex64 },
    /// `lambda_- = (-1 - 2 sqrt2 i)/3`, `Psi(x) = (-1)^x psi0 [1, sqrt2 i, 1]`.
    Minus { psi0: Complex64 },
    /// `lambda = -1`, constant `[l, -(l + r), r]`.
    Neg1 { left: Complex64, right: Complex64 },
    /// `lambda = 1`, constant `[psi, psi, psi]`.
    Pos1 { psi: Complex64 },
}

pub fn grover3_lambda_plus() -> Complex64 {
    Complex64::new(-1.0 / 3.0, 2.0 * SQRT_2 / 3.0)
}

pub fn grover3_lambda_minus() -> Complex64 {
    grover3_lambda_plus().conj()
}

pub fn eigen_grover3(case: Grover3Case) -> Result<Eigenpair> {
    let one = Complex64::new(1.0, 0.0);
    let (lambda, coeffs, ratio, label) = match case {
        Grover3Case::Plus { psi0 } | Grover3Case::Minus { psi0 } => {
            require_nonzero(psi0, "psi0")?;
            let (lambda, middle, label) = match case {
                Grover3Case::Plus { .. } => (grover3_lambda_plus(), Complex64::new(0.0, -SQRT_2), CaseTag::Grover3Plus),
                _ => (grover3_lambda_minus(), Complex64::new(0.0, SQRT_2), CaseTag::Grover3Minus),
            };
            (lambda, vec![psi0, middle * psi0, psi0], -one, label)
        }
        Grover3Case::Neg1 { left, right } => {
            if !(left.norm() > 0.0 || right.norm() > 0.0) || !(left.norm() + right.norm()).is_finite() {
                return invalid("lambda = -1 eigenstate requires (Psi^L(0), Psi^R(0)) != (0, 0)");
            }
            (-one, vec![left, -(left + right), right], one, CaseTag::Grover3Neg1)
        }
        Grover3Case::Pos1 { psi } => {
            require_nonzero(psi, "psi")?;
            (one, vec![psi; 3], one, CaseTag::Grover3Pos1)
        }
    };
    let per_site_measure = coeffs.iter().map(|z| z.norm_sqr()).sum();
    Ok(Eigenpair { lambda, rule: AmplitudeRule::Geometric { ratios: vec![ratio; 3], coeffs }, label, per_site_measure })
}

/// Constant eigenstate `psi` in every component of the N-state Grover walk, `lambda = 1`.
pub fn eigen_grover_n_trivial(n: usize, psi: Complex64) -> Result<Eigenpair> {
    if n < 2 {
        return invalid(format!("Grover walk needs N >= 2, got {n}"));
    }
    require_nonzero(psi, "psi")?;
    let one = Complex64::new(1.0, 0.0);
    Ok(Eigenpair {
        lambda: one,
        rule: AmplitudeRule::Geometric { coeffs: vec![psi; n], ratios: vec![one; n] },
        label: CaseTag::GroverNTrivial,
        per_site_measure: n as f64 * psi.norm_sqr(),
    })
}

/// Largest `|(U^(s) Psi)_k(x) - lambda Psi_k(x)|` over interior sites of `[-W, W]`.
///
/// Sites within the maximal shift of the window edge are skipped because
/// their neighbours were cut off by the truncation.
pub fn eigen_residual(coin: &Coin, ep: &Eigenpair, half_width: i64) -> Result<f64> {
    if ep.chirality_dim() != coin.size() {
        return Err(WalkError::DimensionMismatch { coin: coin.size(), state: ep.chirality_dim() });
    }
    let reach = coin.max_shift();
    if half_width < reach + 1 {
        return invalid(format!("half width {half_width} leaves no interior (need >= {})", reach + 1));
    }
    let psi = ep.materialize(-half_width, half_width);
    let next = step(coin, &psi)?;
    let mut worst = 0.0_f64;
    for x in (-half_width + reach)..=(half_width - reach) {
        let before = psi.site(x).expect("interior site");
        let after = next.site(x).expect("interior site");
        for (u, v) in after.iter().zip(before) {
            worst = worst.max((u - ep.lambda * v).norm());
        }
    }
    Ok(worst)
}

/// Largest `|mu_n(x) - c|` over `n <= steps`, where `mu_n` comes from evolving
/// the eigenstate materialized on `[-W, W]` and `x` ranges over the sites the
/// truncation cannot yet reach, `|x| <= W - n * maxshift`.
pub fn stationarity_defect(coin: &Coin, ep: &Eigenpair, half_width: i64, steps: usize) -> Result<f64> {
    if ep.chirality_dim() != coin.size() {
        return Err(WalkError::DimensionMismatch { coin: coin.size(), state: ep.chirality_dim() });
    }
    let reach = coin.max_shift();
    if half_width < reach * steps as i64 {
        return invalid(format!("half width {half_width} is too small for {steps} steps"));
    }
    let c = ep.per_site_measure();
    let mut worst = 0.0_f64;
    for (n, psi) in Trajectory::new(coin, &ep.materialize(-half_width, half_width))?.enumerate().take(steps + 1) {
        let mu = phi_measure(&psi);
        let edge = half_width - n as i64 * reach;
        for x in -edge..=edge {
            worst = worst.max((mu.get(x) - c).abs());
        }
    }
    Ok(worst)
}

/// `lambda_1` of a `U(theta)` coin, `e^{i(theta + pi/2)}`, for `0 < theta < pi/2`.
pub fn theta_lambda_1(theta: f64) -> Complex64 {
    unit_phase(theta + 0.5 * PI)
}
