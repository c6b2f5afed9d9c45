//! FIR windows and one-parameter sequence families, plus spread scans that
//! place them against the optimal `η_p(Δω_p²)` curve.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::spreads::{self, SpreadReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Rectangular,
    Triangular,
    Hann,
    Hamming,
    Blackman,
}

impl WindowKind {
    pub const ALL: [WindowKind; 5] = [
        WindowKind::Rectangular,
        WindowKind::Triangular,
        WindowKind::Hann,
        WindowKind::Hamming,
        WindowKind::Blackman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WindowKind::Rectangular => "rectangular",
            WindowKind::Triangular => "triangular",
            WindowKind::Hann => "hann",
            WindowKind::Hamming => "hamming",
            WindowKind::Blackman => "blackman",
        }
    }

    /// Coefficient `n` of a symmetric window of length `len`.
    fn coefficient(self, n: usize, len: usize) -> f64 {
        let m = (len - 1) as f64;
        let x = n as f64;
        let c = |k: f64| (2.0 * PI * k * x / m).cos();
        match self {
            WindowKind::Rectangular => 1.0,
            // scipy's `triang`: nonzero endpoints
            WindowKind::Triangular => {
                let half = (len as f64 + 1.0) / 2.0;
                1.0 - ((x - m / 2.0) / half).abs()
            }
            WindowKind::Hann => 0.5 - 0.5 * c(1.0),
            WindowKind::Hamming => 0.54 - 0.46 * c(1.0),
            WindowKind::Blackman => (0.42 - 0.5 * c(1.0) + 0.08 * c(2.0)).max(0.0),
        }
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WindowKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownWindow(s.to_string()))
    }
}

/// Textbook window of `taps` coefficients, unit norm, centered on index 0
/// (for even lengths the extra tap sits on the right).
pub fn standard_window(kind: WindowKind, taps: usize) -> Result<Sequence> {
    if taps < 3 {
        return Err(Error::InvalidParameter(format!("window needs at least 3 taps, got {taps}")));
    }
    // evaluate one half and mirror so the window is exactly symmetric
    let mut w = vec![0.0; taps];
    for n in 0..taps.div_ceil(2) {
        let v = kind.coefficient(n, taps);
        w[n] = v;
        w[taps - 1 - n] = v;
    }
    Ok(Sequence::from_real(&w, -(((taps - 1) / 2) as i64))?.normalized())
}

/// `standard_window` by name.
pub fn standard_window_named(name: &str, taps: usize) -> Result<Sequence> {
    standard_window(name.parse()?, taps)
}

/// `x_k ∝ exp(-k²/(2w²))` on `k = -(taps-1)/2 ..= (taps-1)/2`, unit norm.
pub fn sampled_gaussian(width: f64, taps: usize) -> Result<Sequence> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidParameter(format!("gaussian width must be positive, got {width}")));
    }
    if taps < 3 || taps % 2 == 0 {
        return Err(Error::InvalidParameter(format!("gaussian needs an odd tap count >= 3, got {taps}")));
    }
    let half = (taps / 2) as i64;
    let w: Vec<f64> = (-half..=half)
        .map(|k| (-((k * k) as f64) / (2.0 * width * width)).exp())
        .collect();
    Ok(Sequence::centered_real(&w)?.normalized())
}

/// Tap count that keeps a sampled Gaussian's edge energy negligible.
pub fn gaussian_taps(width: f64) -> usize {
    2 * ((10.0 * width).ceil() as usize).max(1) + 1
}

/// `x^(ε) = ε δ_{n+1} + √(1 - 2ε²) δ_n + ε δ_{n-1}`.
pub fn three_tap(epsilon: f64) -> Result<Sequence> {
    if !(epsilon > 0.0 && epsilon < std::f64::consts::FRAC_1_SQRT_2) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/sqrt(2)), got {epsilon}"
        )));
    }
    Sequence::centered_real(&[epsilon, (1.0 - 2.0 * epsilon * epsilon).sqrt(), epsilon])
}

/// Closed form `η_p(x^(ε)) = 1/(2(1 - 2ε²)) - 2ε²`.
pub fn three_tap_eta(epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    1.0 / (2.0 * (1.0 - 2.0 * e2)) - 2.0 * e2
}

/// Sampled Gaussian whose periodic frequency spread equals `delta_wp2`
/// (bisection on the width; taps sized by [`gaussian_taps`]).
pub fn gaussian_with_spread(delta_wp2: f64) -> Result<(f64, Sequence)> {
    if !(delta_wp2 > 0.0 && delta_wp2.is_finite()) {
        return Err(Error::InvalidParameter(format!("target spread must be positive, got {delta_wp2}")));
    }
    let spread = |w: f64| -> Result<f64> {
        Ok(spreads::periodic_freq_spread(&sampled_gaussian(w, gaussian_taps(w))?))
    };
    // Δω_p² decreases with the width.
    let (mut lo, mut hi) = (0.05, 1.0);
    while spread(hi)? > delta_wp2 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e5 {
            return Err(Error::InvalidParameter(format!("spread {delta_wp2} too small to reach")));
        }
    }
    if spread(lo)? < delta_wp2 {
        return Err(Error::InvalidParameter(format!("spread {delta_wp2} too large for a gaussian")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13 * hi {
            break;
        }
        if spread(mid)? > delta_wp2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi);
    Ok((w, sampled_gaussian(w, gaussian_taps(w))?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Parameter: tap count.
    Window(WindowKind),
    /// Parameter: width `w`; taps from [`gaussian_taps`].
    SampledGaussian,
    /// Parameter: `ε`.
    ThreeTap,
}

/// A one-parameter family of real, symmetric, unit-norm sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowFamily {
    pub name: String,
    pub kind: FamilyKind,
    pub parameter_grid: Vec<f64>,
}

impl WindowFamily {
    pub fn generate(&self, param: f64) -> Result<Sequence> {
        match self.kind {
            FamilyKind::Window(kind) => {
                if param.fract() != 0.0 || param < 0.0 {
                    return Err(Error::InvalidParameter(format!("tap count must be integral, got {param}")));
                }
                standard_window(kind, param as usize)
            }
            FamilyKind::SampledGaussian => sampled_gaussian(param, gaussian_taps(param)),
            FamilyKind::ThreeTap => three_tap(param),
        }
    }

    /// Default scan grid: taps 5, 9, …, 401 for the textbook windows.
    pub fn window(kind: WindowKind) -> Self {
        Self {
            name: kind.name().to_string(),
            kind: FamilyKind::Window(kind),
            parameter_grid: (5..=401).step_by(4).map(|t| t as f64).collect(),
        }
    }

    /// Default scan grid: 40 widths log-spaced in `[0.3, 50]`.
    pub fn sampled_gaussian() -> Self {
        Self {
            name: "gaussian".into(),
            kind: FamilyKind::SampledGaussian,
            parameter_grid: log_space(0.3, 50.0, 40),
        }
    }

    /// Default scan grid: 20 values of `ε` log-spaced in `[0.01, 0.7]`.
    pub fn three_tap() -> Self {
        Self {
            name: "three_tap".into(),
            kind: FamilyKind::ThreeTap,
            parameter_grid: log_space(0.01, 0.7, 20),
        }
    }

    /// Every built-in family with its default grid.
    pub fn defaults() -> Vec<Self> {
        WindowKind::ALL
            .into_iter()
            .map(Self::window)
            .chain([Self::sampled_gaussian(), Self::three_tap()])
            .collect()
    }
}

fn log_space(start: f64, stop: f64, n: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), stop.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub family: String,
    pub param: f64,
    pub report: Result<SpreadReport>,
}

/// Spread report for every grid parameter, sorted by `Δω_p²` (failures last).
pub fn spread_scan(family: &WindowFamily) -> Vec<ScanPoint> {
    let mut points: Vec<ScanPoint> = family
        .parameter_grid
        .par_iter()
        .map(|&param| ScanPoint {
            family: family.name.clone(),
            param,
            report: family.generate(param).map(|s| SpreadReport::of(&s)),
        })
        .collect();
    points.sort_by(|a, b| {
        let key = |p: &ScanPoint| p.report.as_ref().map_or(f64::NAN, |r| r.delta_wp2);
        key(a).total_cmp(&key(b))
    });
    points
}
