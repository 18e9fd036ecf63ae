//! Coin matrices and the shift rule that turns a coin into a walk on Z.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, WalkError};

/// Entries with modulus below this are treated as zero when routing a
/// two-state coin to its closed-form case.
pub const CASE_ZERO_TOL: f64 = 1e-12;

/// Unitarity tolerance applied to explicit, user-supplied coins.
pub const EXPLICIT_UNITARY_TOL: f64 = 1e-10;

/// `e^{i theta}`, rounded to the pair of doubles (within a few ulps of
/// `(cos theta, sin theta)`) whose squared modulus is closest to one.
///
/// Walks multiply by these phases at every step, so a modulus of `1 + eps`
/// grows into `1 + n eps` after `n` steps.
pub fn unit_phase(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    let mut best = (c, s);
    let mut best_defect = modulus_defect(c, s);
    for dc in -4i32..=4 {
        for ds in -4i32..=4 {
            let (cc, ss) = (step_ulps(c, dc), step_ulps(s, ds));
            let d = modulus_defect(cc, ss);
            if d < best_defect {
                best = (cc, ss);
                best_defect = d;
            }
        }
    }
    Complex64::new(best.0, best.1)
}

fn step_ulps(v: f64, k: i32) -> f64 {
    let mut v = v;
    for _ in 0..k.unsigned_abs() {
        v = if k > 0 { v.next_up() } else { v.next_down() };
    }
    v
}

/// `|c^2 + s^2 - 1|`, accurate well below one ulp of one.
fn modulus_defect(c: f64, s: f64) -> f64 {
    let (big, small) = if c.abs() >= s.abs() { (c, s) } else { (s, c) };
    let p1 = big * big;
    let e1 = big.mul_add(big, -p1);
    let p2 = small * small;
    let e2 = small.mul_add(small, -p2);
    // p1 >= 1/2 near the circle, so p1 - 1 is exact.
    ((p1 - 1.0) + p2 + (e1 + e2)).abs()
}

/// Dense row-major complex square matrix.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return invalid("matrix must have at least one row");
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return invalid(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            data.extend(row);
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// `max_{ij} |(U U^dagger - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.get(i, k) * self.get(j, k).conj();
                }
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Complex64]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// True iff `||U U^dagger - I||_max <= tol`.
pub fn check_unitary(matrix: &SquareMatrix, tol: f64) -> bool {
    matrix.unitarity_defect() <= tol
}

/// Displacement of each chirality row for an N-state walk.
///
/// Odd `N = 2M+1`: row `k` (1-based) jumps by `-M + (k-1)`.
/// Even `N = 2M`: rows `k <= M` jump by `-M + (k-1)`, rows `k > M` by `-M + k`,
/// so displacement 0 is skipped. For `N = 2` this is `[-1, +1]`.
pub fn standard_shifts(n: usize) -> Vec<i64> {
    let n_i = n as i64;
    let m = n_i / 2;
    (1..=n_i)
        .map(|k| {
            if n % 2 == 1 || k <= m {
                -m + (k - 1)
            } else {
                -m + k
            }
        })
        .collect()
}

/// How a coin was built. This is also the coin's JSON encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoinSpec {
    Theta { theta: f64 },
    AZero { eta: f64, xi: f64 },
    BZero { eta: f64, xi: f64 },
    Grover { n: usize },
    /// Row-major `[re, im]` pairs; the size is the square root of the length.
    Explicit { entries: Vec<[f64; 2]> },
}

/// An N x N unitary together with the displacement of each row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoinSpec", into = "CoinSpec")]
pub struct Coin {
    matrix: SquareMatrix,
    shifts: Vec<i64>,
    spec: CoinSpec,
}

impl Coin {
    /// `[[cos t, sin t], [sin t, -cos t]]`; `t = pi/4` is the Hadamard coin.
    pub fn from_theta(theta: f64) -> Coin {
        let z = unit_phase(theta);
        let (c, s) = (z.re, z.im);
        let m = mat2(Complex64::new(c, 0.0), Complex64::new(s, 0.0), Complex64::new(s, 0.0), Complex64::new(-c, 0.0));
        Coin::with_standard_shifts(m, CoinSpec::Theta { theta })
    }

    /// Antidiagonal coin `[[0, e^{i eta}], [-e^{i xi} e^{-i eta}, 0]]` with determinant `e^{i xi}`.
    pub fn a_zero(eta: f64, xi: f64) -> Coin {
        let zero = Complex64::new(0.0, 0.0);
        let b = unit_phase(eta);
        let c = -unit_phase(xi - eta);
        Coin::with_standard_shifts(mat2(zero, b, c, zero), CoinSpec::AZero { eta, xi })
    }

    /// Diagonal coin `diag(e^{i eta}, e^{i xi} e^{-i eta})`.
    pub fn b_zero(eta: f64, xi: f64) -> Coin {
        let zero = Complex64::new(0.0, 0.0);
        let a = unit_phase(eta);
        let d = unit_phase(xi - eta);
        Coin::with_standard_shifts(mat2(a, zero, zero, d), CoinSpec::BZero { eta, xi })
    }

    /// N-state Grover coin: `2/N - 1` on the diagonal, `2/N` elsewhere.
    pub fn grover(n: usize) -> Result<Coin> {
        if n < 2 {
            return invalid(format!("Grover coin needs N >= 2, got {n}"));
        }
        let nf = n as f64;
        // (2 - N)/N is the correctly rounded value of 2/N - 1.
        let diag = Complex64::new((2.0 - nf) / nf, 0.0);
        let off = Complex64::new(2.0 / nf, 0.0);
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, if i == j { diag } else { off });
            }
        }
        Ok(Coin::with_standard_shifts(m, CoinSpec::Grover { n }))
    }

    /// Arbitrary unitary with the standard shift rule. Rejects matrices that
    /// are not unitary within [`EXPLICIT_UNITARY_TOL`].
    pub fn explicit(matrix: SquareMatrix) -> Result<Coin> {
        if matrix.size() < 2 {
            return invalid("coin must be at least 2 x 2");
        }
        let defect = matrix.unitarity_defect();
        if defect > EXPLICIT_UNITARY_TOL {
            return invalid(format!("coin is not unitary (defect {defect:e})"));
        }
        let entries = matrix.entries().iter().map(|z| [z.re, z.im]).collect();
        Ok(Coin::with_standard_shifts(matrix, CoinSpec::Explicit { entries }))
    }

    pub fn from_spec(spec: &CoinSpec) -> Result<Coin> {
        match spec {
            CoinSpec::Theta { theta } => Ok(Coin::from_theta(*theta)),
            CoinSpec::AZero { eta, xi } => Ok(Coin::a_zero(*eta, *xi)),
            CoinSpec::BZero { eta, xi } => Ok(Coin::b_zero(*eta, *xi)),
            CoinSpec::Grover { n } => Coin::grover(*n),
            CoinSpec::Explicit { entries } => {
                let n = (entries.len() as f64).sqrt().round() as usize;
                if n * n != entries.len() {
                    return invalid(format!("{} explicit entries do not form a square matrix", entries.len()));
                }
                let rows = entries
                    .chunks(n.max(1))
                    .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                Coin::explicit(SquareMatrix::from_rows(rows)?)
            }
        }
    }

    fn with_standard_shifts(matrix: SquareMatrix, spec: CoinSpec) -> Coin {
        let shifts = standard_shifts(matrix.size());
        Coin { matrix, shifts, spec }
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn spec(&self) -> &CoinSpec {
        &self.spec
    }

    pub fn max_shift(&self) -> i64 {
        self.shifts.iter().map(|s| s.abs()).max().unwrap_or(0)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        check_unitary(&self.matrix, tol)
    }

    /// `[a, b, c, d]` for a two-state coin.
    pub fn two_state_entries(&self) -> Result<[Complex64; 4]> {
        if self.size() != 2 {
            return Err(WalkError::WrongCase(format!("expected a 2-state coin, got {}-state", self.size())));
        }
        let m = &self.matrix;
        Ok([m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)])
    }

    /// `det U` for a two-state coin.
    pub fn determinant(&self) -> Result<Complex64> {
        let [a, b, c, d] = self.two_state_entries()?;
        Ok(a * d - b * c)
    }

    /// True if this is the N-state Grover coin for the given N (built by [`Coin::grover`]).
    pub fn is_grover(&self, n: usize) -> bool {
        matches!(self.spec, CoinSpec::Grover { n: m } if m == n)
    }
}

impl TryFrom<CoinSpec> for Coin {
    type Error = WalkError;

    fn try_from(spec: CoinSpec) -> Result<Coin> {
        Coin::from_spec(&spec)
    }
}

impl From<Coin> for CoinSpec {
    fn from(c: Coin) -> CoinSpec {
        c.spec
    }
}

fn mat2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> SquareMatrix {
    SquareMatrix { n: 2, data: vec![a, b, c, d] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} != {b}");
    }

    #[test]
    fn unit_phase_sits_on_the_circle() {
        let (mut rounded, mut plain) = (0.0, 0.0);
        for i in 0..2000 {
            let theta = -7.0 + 14.0 * i as f64 / 1999.0;
            let z = unit_phase(theta);
            let naive = Complex64::from_polar(1.0, theta);
            let d = modulus_defect(z.re, z.im);
            assert!(d <= modulus_defect(naive.re, naive.im));
            assert!((z - naive).norm() < 1e-15);
            rounded += d;
            plain += modulus_defect(naive.re, naive.im);
        }
        assert!(rounded < 0.5 * plain, "{rounded:e} vs {plain:e}");
        assert_eq!(unit_phase(0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn theta_pi_over_4_is_hadamard() {
        let h = Coin::from_theta(FRAC_PI_4);
        let expect = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2];
        for (z, e) in h.two_state_entries().unwrap().iter().zip(expect) {
            assert_close(*z, c(e, 0.0), 1e-15);
        }
        assert_eq!(h.shifts(), &[-1, 1]);
    }

    #[test]
    fn theta_corner_cases() {
        let z = Coin::from_theta(0.0).two_state_entries().unwrap();
        assert_eq!(z, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let q = Coin::from_theta(FRAC_PI_2).two_state_entries().unwrap();
        for (z, e) in q.iter().zip([0.0, 1.0, 1.0, 0.0]) {
            assert_close(*z, c(e, 0.0), 1e-15);
        }
    }

    #[test]
    fn a_zero_examples() {
        let g = Coin::a_zero(0.0, PI).two_state_entries().unwrap();
        for (z, e) in g.iter().zip([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]) {
            assert_close(*z, e, 1e-15);
        }
        let [a, b, cc, d] = Coin::a_zero(FRAC_PI_2, 0.0).two_state_entries().unwrap();
        assert_eq!(a, c(0.0, 0.0));
        assert_eq!(d, c(0.0, 0.0));
        assert_close(b, c(0.0, 1.0), 1e-15);
        assert_close(cc, c(0.0, 1.0), 1e-15);
        for (eta, xi) in [(0.3, 1.9), (4.0, 5.5), (2.2, 0.1)] {
            let coin = Coin::a_zero(eta, xi);
            assert!((coin.determinant().unwrap().norm() - 1.0).abs() < 1e-15);
            assert_close(coin.determinant().unwrap(), Complex64::from_polar(1.0, xi), 1e-15);
        }
    }

    #[test]
    fn b_zero_examples() {
        assert_eq!(Coin::b_zero(0.0, 0.0).matrix(), &SquareMatrix::identity(2));
        let m = Coin::b_zero(PI, 0.0).two_state_entries().unwrap();
        assert_close(m[0], c(-1.0, 0.0), 1e-15);
        assert_close(m[3], c(-1.0, 0.0), 1e-15);
        assert!(Coin::b_zero(1.3, 2.9).is_unitary(1e-12));
    }

    #[test]
    fn grover_examples() {
        let g3 = Coin::grover(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { -1.0 / 3.0 } else { 2.0 / 3.0 };
                assert_close(g3.matrix().get(i, j), c(e, 0.0), 1e-16);
            }
        }
        assert_eq!(g3.shifts(), &[-1, 0, 1]);
        let g2 = Coin::grover(2).unwrap();
        assert_eq!(g2.two_state_entries().unwrap(), [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let g4 = Coin::grover(4).unwrap();
        assert_eq!(g4.matrix().get(1, 1), c(-0.5, 0.0));
        assert_eq!(g4.matrix().get(0, 3), c(0.5, 0.0));
        assert!(matches!(Coin::grover(1), Err(WalkError::InvalidArgument(_))));
        assert!(matches!(Coin::grover(0), Err(WalkError::InvalidArgument(_))));
    }

    #[test]
    fn shift_rule_by_parity() {
        assert_eq!(standard_shifts(2), vec![-1, 1]);
        assert_eq!(standard_shifts(3), vec![-1, 0, 1]);
        assert_eq!(standard_shifts(4), vec![-2, -1, 1, 2]);
        assert_eq!(standard_shifts(5), vec![-2, -1, 0, 1, 2]);
        assert_eq!(standard_shifts(6), vec![-3, -2, -1, 1, 2, 3]);
        for n in 2..12 {
            let s = standard_shifts(n);
            let mut sorted = s.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), n);
            let bound = n.div_ceil(2) as i64;
            assert!(s.iter().all(|x| x.abs() <= bound));
        }
    }

    #[test]
    fn unitarity_checks() {
        assert!(Coin::from_theta(FRAC_PI_4).is_unitary(1e-12));
        assert!(Coin::grover(3).unwrap().is_unitary(1e-12));
        let bad = SquareMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(!check_unitary(&bad, 1e-12));
        assert!(Coin::explicit(bad).is_err());
    }

    #[test]
    fn every_constructor_is_unitary() {
        for k in 0..40 {
            let t = k as f64 * 0.157;
            assert!(Coin::from_theta(t).is_unitary(1e-12));
            assert!(Coin::a_zero(t, 2.0 * t).is_unitary(1e-12));
            assert!(Coin::b_zero(3.0 * t, t).is_unitary(1e-12));
        }
        for n in 2..16 {
            assert!(Coin::grover(n).unwrap().is_unitary(1e-12), "N={n}");
        }
    }

    #[test]
    fn json_encoding() {
        let coin = Coin::grover(3).unwrap();
        let s = serde_json::to_string(&coin).unwrap();
        assert_eq!(s, r#"{"kind":"grover","n":3}"#);
        let back: Coin = serde_json::from_str(&s).unwrap();
        assert_eq!(back, coin);

        let theta: Coin = serde_json::from_str(r#"{"kind":"theta","theta":0.5}"#).unwrap();
        assert_eq!(theta, Coin::from_theta(0.5));
        let a0: Coin = serde_json::from_str(r#"{"kind":"a_zero","eta":0.0,"xi":1.0}"#).unwrap();
        assert_eq!(a0, Coin::a_zero(0.0, 1.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let raw = format!(r#"{{"kind":"explicit","entries":[[{h},0],[{h},0],[{h},0],[-{h},0]]}}"#);
        let ex: Coin = serde_json::from_str(&raw).unwrap();
        assert_eq!(ex.shifts(), &[-1, 1]);
        assert!(ex.is_unitary(1e-12));
        let roundtrip: Coin = serde_json::from_str(&serde_json::to_string(&ex).unwrap()).unwrap();
        assert_eq!(roundtrip, ex);

        assert!(serde_json::from_str::<Coin>(r#"{"kind":"grover","n":1}"#).is_err());
        assert!(serde_json::from_str::<Coin>(r#"{"kind":"explicit","entries":[[1,0],[0,0],[0,0]]}"#).is_err());
    }
}
