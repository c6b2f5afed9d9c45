//! Finite complex sequences with an explicit integer time offset.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence `x_n`: tap `i` sits at time index `offset + i`.
///
/// Always nonempty, finite and of positive norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequence {
    taps: Vec<Complex64>,
    offset: i64,
}

impl Sequence {
    pub fn new(taps: Vec<Complex64>, offset: i64) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = taps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteTap(i));
        }
        if taps.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { taps, offset })
    }

    pub fn from_real(taps: &[f64], offset: i64) -> Result<Self> {
        Self::new(taps.iter().map(|&v| Complex64::new(v, 0.0)).collect(), offset)
    }

    /// Real taps laid out symmetrically around index 0. `taps.len()` must be odd.
    pub fn centered_real(taps: &[f64]) -> Result<Self> {
        if taps.len() % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "centered sequence needs an odd number of taps, got {}",
                taps.len()
            )));
        }
        Self::from_real(taps, -((taps.len() / 2) as i64))
    }

    /// The unit impulse at time index `at`.
    pub fn impulse(at: i64) -> Self {
        Self {
            taps: vec![Complex64::new(1.0, 0.0)],
            offset: at,
        }
    }

    pub fn taps(&self) -> &[Complex64] {
        &self.taps
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Time index of the last tap.
    pub fn last_index(&self) -> i64 {
        self.offset + self.taps.len() as i64 - 1
    }

    /// `(time index, tap)` pairs in order.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.taps
            .iter()
            .enumerate()
            .map(move |(i, &z)| (self.offset + i as i64, z))
    }

    pub fn is_real(&self) -> bool {
        self.taps.iter().all(|z| z.im == 0.0)
    }

    /// Real parts of the taps.
    pub fn real_taps(&self) -> Vec<f64> {
        self.taps.iter().map(|z| z.re).collect()
    }

    /// Number of taps with nonzero modulus (`‖x‖₀`).
    pub fn nonzero_count(&self) -> usize {
        self.taps.iter().filter(|z| z.norm_sqr() > 0.0).count()
    }

    /// `Σ|x_k|²`.
    pub fn norm2(&self) -> f64 {
        self.taps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Same sequence scaled to unit energy.
    pub fn normalized(&self) -> Self {
        let scale = 1.0 / self.norm2().sqrt();
        Self {
            taps: self.taps.iter().map(|z| z * scale).collect(),
            offset: self.offset,
        }
    }

    /// Delays the sequence by `m` samples: `y_n = x_{n-m}`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            taps: self.taps.clone(),
            offset: self.offset + m,
        }
    }

    /// Taps replaced by their moduli.
    pub fn modulus(&self) -> Self {
        Self {
            taps: self.taps.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect(),
            offset: self.offset,
        }
    }

    /// `X(e^{jω}) = Σ_k x_k e^{-jωk}` evaluated at each `ω`.
    pub fn dtft(&self, omegas: &[f64]) -> Vec<Complex64> {
        omegas.iter().map(|&w| self.dtft_at(w)).collect()
    }

    pub fn dtft_at(&self, omega: f64) -> Complex64 {
        // Reduce the phase argument per tap so large indices keep full precision.
        self.indexed()
            .map(|(k, z)| {
                let phase = (omega * k as f64).rem_euclid(std::f64::consts::TAU);
                z * Complex64::from_polar(1.0, -phase)
            })
            .sum()
    }

    /// `r_m = Σ_k x_k x*_{k+m}`.
    pub fn autocorrelation(&self, lag: i64) -> Complex64 {
        let n = self.taps.len() as i64;
        if lag.abs() >= n {
            return Complex64::new(0.0, 0.0);
        }
        let (start, end) = if lag >= 0 { (0, n - lag) } else { (-lag, n) };
        (start..end)
            .map(|i| self.taps[i as usize] * self.taps[(i + lag) as usize].conj())
            .sum()
    }
}
