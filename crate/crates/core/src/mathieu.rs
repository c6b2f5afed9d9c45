//! Mathieu's characteristic value `a₀(q)` and harmonic cosine `ce₀(q; θ)`
//! from the ground state of `A - (|q|/2)B`.
//!
//! In the DTFT domain, `(A - λ₁B)x = λ₂x` reads `X'' + (λ₂ + λ₁cos ω)X = 0`;
//! with `θ = ω/2` this is Mathieu's equation `y'' + (a - 2q cos 2θ)y = 0` for
//! `a = 4λ₂` and `q = -2λ₁`. The positive ground-state taps `x_k` are
//! therefore the Fourier coefficients of `ce₀(-2λ₁; θ)`:
//!
//! ```text
//! ce₀(q; θ) = c (x₀ + 2 Σ_{k≥1} s_k x_k cos 2kθ),   s_k = 1 (q ≤ 0), (-1)^k (q > 0)
//! ```
//!
//! The sign pattern for `q > 0` is `ce₀(q; θ) = ce₀(-q; π/2 - θ)`, and
//! `a₀(q) = a₀(-q)`. `c = 1/√2` gives `∫₀^{2π} ce₀² dθ = π` for unit-norm taps.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::designer::DesignResult;
use crate::error::{Error, Result};
use crate::pencil::Pencil;
use crate::tridiag::{self, EigenPair};

/// Ground-state entries at the grid edges must fall below this.
pub const TAIL_TOL: f64 = 1e-12;
const MAX_HALF_LEN: usize = 1 << 15;

/// Normalization metadata for a [`MathieuEval`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub convention: String,
    /// `c` in `ce₀ = c (x₀ + 2 Σ s_k x_k cos 2kθ)`.
    pub ce0_scale: f64,
    /// `γ₀` with `X(e^{jω}) = γ₀ ce₀(q; ω/2)` for the unit-energy tap sequence.
    pub spectrum_gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MathieuEval {
    pub q: f64,
    pub a0: f64,
    pub thetas: Vec<f64>,
    pub ce0_values: Vec<f64>,
    pub normalization: Normalization,
    /// Ground-state taps `x_0, x_1, …, x_N` (positive, `x_{-k} = x_k`).
    pub fourier_coeffs: Vec<f64>,
}

impl MathieuEval {
    /// `ce₀(q; θ)` at an arbitrary angle.
    pub fn eval(&self, theta: f64) -> f64 {
        ce0_series(&self.fourier_coeffs, self.q, theta) * self.normalization.ce0_scale
    }

    /// `∫₀^{2π} ce₀² dθ` by Parseval.
    pub fn norm_integral(&self) -> f64 {
        let c = self.normalization.ce0_scale;
        let energy: f64 = self.fourier_coeffs[0].powi(2)
            + 2.0 * self.fourier_coeffs[1..].iter().map(|x| x * x).sum::<f64>();
        2.0 * PI * c * c * energy
    }

    /// Largest `|y'' + (a - 2q cos 2θ) y|` over `thetas`, with `y''` from a
    /// sixth-order central difference of step `h`.
    pub fn ode_residual(&self, thetas: &[f64], h: f64) -> f64 {
        const W: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
        thetas
            .iter()
            .map(|&t| {
                let d2 = W
                    .iter()
                    .enumerate()
                    .map(|(i, w)| w * self.eval(t + (i as f64 - 3.0) * h))
                    .sum::<f64>()
                    / (180.0 * h * h);
                (d2 + (self.a0 - 2.0 * self.q * (2.0 * t).cos()) * self.eval(t)).abs()
            })
            .fold(0.0, f64::max)
    }
}

fn ce0_series(coeffs: &[f64], q: f64, theta: f64) -> f64 {
    let alternate = q > 0.0;
    coeffs[0]
        + 2.0
            * coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let k = i + 1;
                    let sign = if alternate && k % 2 == 1 { -1.0 } else { 1.0 };
                    sign * x * (2.0 * k as f64 * theta).cos()
                })
                .sum::<f64>()
}

/// Ground state of `A - (|q|/2)B`, doubling `N` from `min_half_len` until
/// both edge entries are below [`TAIL_TOL`]. Returns the grid half length used.
pub fn ground_state_auto(q: f64, min_half_len: usize) -> Result<(usize, EigenPair)> {
    if !q.is_finite() {
        return Err(Error::InvalidParameter(format!("q must be finite, got {q}")));
    }
    let mut n = min_half_len.max(8);
    loop {
        let gs = Pencil::new(n, 0.5 * q.abs(), 0.0)?.ground_state()?;
        let edge = gs.vector[0].abs().max(gs.vector[gs.vector.len() - 1].abs());
        if edge < TAIL_TOL || n >= MAX_HALF_LEN {
            return Ok((n, gs));
        }
        n *= 2;
    }
}

/// `a₀(q) = 4 λ_min(A - (|q|/2)B)`, with the grid grown as needed.
pub fn char_value_a0(q: f64, min_half_len: usize) -> Result<f64> {
    Ok(4.0 * ground_state_auto(q, min_half_len)?.1.value)
}

/// `4×` the two smallest eigenvalues of `A - (|q|/2)B`: `a₀(q)` and the next
/// characteristic value with a π-periodic solution.
pub fn lowest_char_values(q: f64, min_half_len: usize) -> Result<(f64, f64)> {
    let (n, gs) = ground_state_auto(q, min_half_len)?;
    let pen = Pencil::new(n, 0.5 * q.abs(), 0.0)?;
    let second = tridiag::eigenvalue_by_index(pen.diag(), pen.offdiag(), 1);
    Ok((4.0 * gs.value, 4.0 * second))
}

/// `ce₀(q; θ)` sampled at `thetas`, normalized to `∫₀^{2π} ce₀² dθ = π`.
pub fn ce0(q: f64, thetas: &[f64], min_half_len: usize) -> Result<MathieuEval> {
    let (n, gs) = ground_state_auto(q, min_half_len)?;
    let v = &gs.vector;
    // fold the (symmetric) grid onto k ≥ 0
    let fourier_coeffs: Vec<f64> = (0..=n).map(|k| 0.5 * (v[n + k] + v[n - k])).collect();
    let scale = FRAC_1_SQRT_2;
    let ce0_values = thetas
        .iter()
        .map(|&t| scale * ce0_series(&fourier_coeffs, q, t))
        .collect();
    Ok(MathieuEval {
        q,
        a0: 4.0 * gs.value,
        thetas: thetas.to_vec(),
        ce0_values,
        normalization: Normalization {
            convention: "integral over [0, 2pi] of ce0^2 equals pi".into(),
            ce0_scale: scale,
            spectrum_gamma: SQRT_2,
        },
        fourier_coeffs,
    })
}

/// Sup-norm relative mismatch between `|X(e^{jω})|` of a designed sequence and
/// the best single-scale fit `γ·ce₀(-2λ₁; ω/2)` on `points` frequencies in `[-π, π)`.
pub fn spectrum_mismatch(result: &DesignResult, points: usize) -> Result<f64> {
    let omegas: Vec<f64> = (0..points)
        .map(|i| -PI + 2.0 * PI * i as f64 / points as f64)
        .collect();
    let thetas: Vec<f64> = omegas.iter().map(|w| 0.5 * w).collect();
    let m = ce0(-2.0 * result.lambda1, &thetas, result.taps / 2)?;
    let mags: Vec<f64> = result.sequence.dtft(&omegas).iter().map(|z| z.norm()).collect();
    let gamma = mags.iter().zip(&m.ce0_values).map(|(x, c)| x * c).sum::<f64>()
        / m.ce0_values.iter().map(|c| c * c).sum::<f64>();
    let peak = mags.iter().copied().fold(0.0, f64::max);
    Ok(mags
        .iter()
        .zip(&m.ce0_values)
        .map(|(x, c)| (x - gamma * c).abs())
        .fold(0.0, f64::max)
        / peak)
}
