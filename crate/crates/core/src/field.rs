//! Finitely supported fields over Z: amplitudes, measures and the map between them.
//!
//! A field is stored as an offset (leftmost stored site) plus a dense vector.
//! Sites outside the stored range are exact zeros.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, WalkError};

/// Amplitude field with `dim` complex components per site.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveWindow {
    dim: usize,
    offset: i64,
    amps: Vec<Complex64>,
}

impl WaveWindow {
    /// `amps` is site-major: site `offset + i` occupies `amps[i*dim .. (i+1)*dim]`.
    pub fn new(dim: usize, offset: i64, amps: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return invalid("chirality dimension must be positive");
        }
        if amps.is_empty() || !amps.len().is_multiple_of(dim) {
            return invalid(format!("{} amplitudes cannot fill whole sites of dimension {dim}", amps.len()));
        }
        Ok(WaveWindow { dim, offset, amps })
    }

    pub fn from_sites(offset: i64, sites: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = match sites.first() {
            Some(s) => s.len(),
            None => return invalid("state must contain at least one site"),
        };
        if let Some((i, s)) = sites.iter().enumerate().find(|(_, s)| s.len() != dim) {
            return invalid(format!("site {i} has {} components, expected {dim}", s.len()));
        }
        WaveWindow::new(dim, offset, sites.into_iter().flatten().collect())
    }

    pub fn zeros(dim: usize, offset: i64, len: usize) -> Self {
        WaveWindow { dim, offset, amps: vec![Complex64::new(0.0, 0.0); dim * len.max(1)] }
    }

    /// Walker localized at the origin with the given chirality amplitudes.
    pub fn delta(chirality: &[Complex64]) -> Result<Self> {
        WaveWindow::new(chirality.len(), 0, chirality.to_vec())
    }

    pub fn chirality_dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.amps.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Last stored site.
    pub fn last(&self) -> i64 {
        self.offset + self.len() as i64 - 1
    }

    pub fn raw(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Amplitudes at site `x`, or `None` outside the stored range.
    pub fn site(&self, x: i64) -> Option<&[Complex64]> {
        let i = x - self.offset;
        if i < 0 || i >= self.len() as i64 {
            return None;
        }
        let i = i as usize;
        Some(&self.amps[i * self.dim..(i + 1) * self.dim])
    }

    /// Component `k` at site `x`; zero outside the window.
    pub fn amp(&self, x: i64, k: usize) -> Complex64 {
        self.site(x).map_or(Complex64::new(0.0, 0.0), |s| s[k])
    }

    pub fn sites(&self) -> impl Iterator<Item = (i64, &[Complex64])> {
        self.amps.chunks(self.dim).enumerate().map(move |(i, s)| (self.offset + i as i64, s))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, s: Complex64) -> WaveWindow {
        WaveWindow { dim: self.dim, offset: self.offset, amps: self.amps.iter().map(|z| z * s).collect() }
    }

    /// Copy of this field restricted to (or zero-padded out to) `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> WaveWindow {
        let mut out = WaveWindow::zeros(self.dim, lo, (hi - lo + 1).max(1) as usize);
        for x in lo..=hi {
            if let Some(src) = self.site(x) {
                let i = (x - lo) as usize * self.dim;
                out.amps[i..i + self.dim].copy_from_slice(src);
            }
        }
        out
    }

    /// Reads the JSON state format `{"offset": int, "amps": [[[re, im], ...], ...]}`.
    pub fn from_json(text: &str) -> Result<WaveWindow> {
        let file: StateFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateFile::from(self)).expect("state serialization is infallible")
    }
}

/// On-disk shape of a [`WaveWindow`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub offset: i64,
    pub amps: Vec<Vec<[f64; 2]>>,
}

impl From<&WaveWindow> for StateFile {
    fn from(w: &WaveWindow) -> Self {
        StateFile {
            offset: w.offset,
            amps: w.amps.chunks(w.dim).map(|s| s.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }
}

impl TryFrom<StateFile> for WaveWindow {
    type Error = WalkError;

    fn try_from(f: StateFile) -> Result<WaveWindow> {
        let sites = f
            .amps
            .into_iter()
            .map(|s| s.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        WaveWindow::from_sites(f.offset, sites)
    }
}

/// Nonnegative measure on a window of Z.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureWindow {
    offset: i64,
    values: Vec<f64>,
}

impl MeasureWindow {
    pub fn new(offset: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("measure must cover at least one site");
        }
        if let Some(v) = values.iter().find(|v| v.is_nan() || **v < 0.0) {
            return invalid(format!("measure values must be nonnegative, found {v}"));
        }
        Ok(MeasureWindow { offset, values })
    }

    /// Builds from `(site, value)` pairs; unspecified sites in the hull are zero.
    pub fn from_points(points: &[(i64, f64)]) -> Result<Self> {
        let lo = points.iter().map(|p| p.0).min();
        let hi = points.iter().map(|p| p.0).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return invalid("measure must cover at least one site");
        };
        let mut values = vec![0.0; (hi - lo + 1) as usize];
        for &(x, v) in points {
            values[(x - lo) as usize] += v;
        }
        MeasureWindow::new(lo, values)
    }

    pub(crate) fn zeros(offset: i64, len: usize) -> Self {
        MeasureWindow { offset, values: vec![0.0; len.max(1)] }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at `x`; zero outside the window.
    pub fn get(&self, x: i64) -> f64 {
        let i = x - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.offset + i as i64, *v))
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sum of the values on `[lo, hi]`.
    pub fn mass_on(&self, lo: i64, hi: i64) -> f64 {
        (lo..=hi).map(|x| self.get(x)).sum()
    }

    pub(crate) fn add_scaled(&mut self, other: &MeasureWindow, w: f64) {
        for (x, v) in other.iter() {
            let i = (x - self.offset) as usize;
            self.values[i] += w * v;
        }
    }

    /// Drops leading and trailing sites with value below `1e-300`. For reporting only.
    pub fn trimmed(&self) -> MeasureWindow {
        let keep = |v: &f64| *v >= 1e-300;
        let Some(first) = self.values.iter().position(keep) else {
            return MeasureWindow { offset: 0, values: vec![0.0] };
        };
        let last = self.values.iter().rposition(keep).unwrap_or(first);
        MeasureWindow { offset: self.offset + first as i64, values: self.values[first..=last].to_vec() }
    }

    /// CSV with the given header, one `x,value` row per site, values to 17 significant digits.
    pub fn to_csv(&self, header: &str) -> String {
        let mut out = String::with_capacity(32 * self.values.len());
        out.push_str(header);
        out.push('\n');
        for (x, v) in self.iter() {
            let _ = writeln!(out, "{x},{}", fmt_real(v));
        }
        out
    }
}

/// Formats a real with 17 significant digits, which round-trips any f64.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Per-site sum of squared moduli over all chirality components.
pub fn phi_measure(psi: &WaveWindow) -> MeasureWindow {
    let values = psi.amps.chunks(psi.dim).map(|s| s.iter().map(|z| z.norm_sqr()).sum()).collect();
    MeasureWindow { offset: psi.offset, values }
}
