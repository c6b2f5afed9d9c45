//! The pencil `P = A - λ₁B - λ₂I` on the symmetric index grid `{-N, …, N}`.
//!
//! `A = diag(k²)` carries the time spread of a centered sequence and `B`
//! (1/2 on both off-diagonals) its lag-one autocorrelation, so for a real
//! unit vector `x`, `xᵀAx = Δn²` and `xᵀBx = τ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag;

/// Smallest LDLᵀ pivot still accepted as nonnegative.
pub const PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    half_len: usize,
    lambda1: f64,
    lambda2: f64,
    diag: Vec<f64>,
}

/// Outcome of [`Pencil::psd_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum PsdCertificate {
    /// All pivots of the LDLᵀ factorization are `≥ -PIVOT_TOL`.
    Psd { min_pivot: f64 },
    /// First pivot below `-PIVOT_TOL`, at grid index `k`.
    NotPsd { k: i64, pivot: f64 },
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }
}

impl Pencil {
    pub fn new(half_len: usize, lambda1: f64, lambda2: f64) -> Result<Self> {
        if half_len == 0 {
            return Err(Error::InvalidParameter("pencil half length must be at least 1".into()));
        }
        let n = half_len as i64;
        let diag = (-n..=n).map(|k| (k * k) as f64 - lambda2).collect();
        Ok(Self {
            half_len,
            lambda1,
            lambda2,
            diag,
        })
    }

    pub fn half_len(&self) -> usize {
        self.half_len
    }

    /// Grid size `2N + 1`.
    pub fn dim(&self) -> usize {
        2 * self.half_len + 1
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// `k² - λ₂` for `k = -N..=N`.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `-λ₁/2`.
    pub fn offdiag(&self) -> f64 {
        -0.5 * self.lambda1
    }

    /// Grid index of vector slot `i`.
    pub fn index_of(&self, slot: usize) -> i64 {
        slot as i64 - self.half_len as i64
    }

    /// Positivity via one LDLᵀ pass, `s_{k+1} = (k+1)² - λ₂ - λ₁²/(4 s_k)`.
    pub fn psd_check(&self) -> PsdCertificate {
        let pivots = tridiag::ldl_pivots(&self.diag, self.offdiag(), 0.0);
        let mut min_pivot = f64::INFINITY;
        for (i, &p) in pivots.iter().enumerate() {
            if p < -PIVOT_TOL || p.is_nan() {
                return PsdCertificate::NotPsd {
                    k: self.index_of(i),
                    pivot: p,
                };
            }
            min_pivot = min_pivot.min(p);
        }
        PsdCertificate::Psd { min_pivot }
    }

    /// Smallest eigenvalue of the pencil (including the `-λ₂` shift).
    pub fn min_eigenvalue(&self) -> f64 {
        tridiag::min_eigenvalue(&self.diag, self.offdiag())
    }

    pub fn ground_state(&self) -> Result<tridiag::EigenPair> {
        tridiag::min_eigenpair(&self.diag, self.offdiag())
    }

    /// `P v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        tridiag::apply(&self.diag, self.offdiag(), v)
    }
}

/// Sufficient condition for `A - λ₁B - λ₂I ⪰ 0` when `λ₁ ≥ 0`: `λ₂ < 1 - √(1 + λ₁²)`.
pub fn restricted_cone_test(lambda1: f64, lambda2: f64) -> bool {
    lambda2 < 1.0 - (1.0 + lambda1 * lambda1).sqrt()
}

/// `(xᵀAx, xᵀBx)` on the grid `{-N, …, N}` with `N = (len - 1)/2`.
pub fn quad_forms(x: &[f64]) -> Result<(f64, f64)> {
    if x.len() % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "quadratic forms need an odd-length vector, got {}",
            x.len()
        )));
    }
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnitNorm(norm2));
    }
    Ok((a_form(x), b_form(x)))
}

/// `Σ k² x_k²` for a vector centered on the grid.
pub(crate) fn a_form(x: &[f64]) -> f64 {
    let half = (x.len() / 2) as i64;
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let k = (i as i64 - half) as f64;
            k * k * v * v
        })
        .sum()
}

/// `Σ x_k x_{k+1}`.
pub(crate) fn b_form(x: &[f64]) -> f64 {
    x.windows(2).map(|w| w[0] * w[1]).sum()
}

/// `λ_max(B) = cos(π/(n + 1))` for `B` of size `n`.
pub fn b_lambda_max(dim: usize) -> f64 {
    (std::f64::consts::PI / (dim as f64 + 1.0)).cos()
}
