//! Closed-form bounds on the time-frequency spread `η_p` of maximally compact
//! sequences, and the large-`q` expansion of Mathieu's `a₀(q)` behind the
//! upper bound.
//!
//! Both bounds come from two-variable duals with a modified feasible set:
//!
//! * lower: the dual restricted to `λ₂ < 1 - √(1 + λ₁²)` (a subset of the
//!   PSD region) has optimum `1 - √(1 - α²)`;
//! * upper: the dual relaxed to `λ₂ ≤ -λ₁ + √(λ₁/2) - 1/16` (from
//!   `a₀(q) ≤ -2q + 2√q - 1/4`) has optimum `1/(8(1-α)) - 1/16`, attained at
//!   `λ₁ = 1/(8(1-α)²)`. It holds only for small σ², i.e. large `λ₁`.
//!
//! Both are multiplied by σ² to bound `η_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest `q` accepted by [`mclachlan_a0`].
pub const MCLACHLAN_Q_MIN: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub sigma2: f64,
    pub eta_lower: f64,
    /// Asymptotic in σ² → 0; no guarantee for larger σ².
    pub eta_upper: f64,
}

impl BoundPair {
    pub fn at(sigma2: f64) -> Result<Self> {
        Ok(Self {
            sigma2,
            eta_lower: eta_lower(sigma2)?,
            eta_upper: eta_upper(sigma2)?,
        })
    }
}

fn check_sigma2(sigma2: f64) -> Result<()> {
    if sigma2 > 0.0 && sigma2.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("sigma2 must be positive and finite, got {sigma2}")))
    }
}

/// `α = 1/√(1 + σ²)`, the lag-one correlation matching `Δω_p² = σ²`.
pub fn alpha_of(sigma2: f64) -> f64 {
    1.0 / (1.0 + sigma2).sqrt()
}

/// `σ²(1 - √(σ²/(1 + σ²)))`.
pub fn eta_lower(sigma2: f64) -> Result<f64> {
    check_sigma2(sigma2)?;
    Ok(sigma2 * delta_n2_lower_raw(sigma2))
}

/// `1 - √(σ²/(1+σ²))`, the lower bound on `Δ²_{n,opt}`.
pub fn delta_n2_lower(sigma2: f64) -> Result<f64> {
    check_sigma2(sigma2)?;
    Ok(delta_n2_lower_raw(sigma2))
}

fn delta_n2_lower_raw(sigma2: f64) -> f64 {
    // 1 - r = (1 - r²)/(1 + r) avoids cancellation for large σ².
    let r = (sigma2 / (1.0 + sigma2)).sqrt();
    1.0 / ((1.0 + sigma2) * (1.0 + r))
}

/// `(σ²/8)(√(1+σ²)/(√(1+σ²) - 1) - 1/2)`.
pub fn eta_upper(sigma2: f64) -> Result<f64> {
    check_sigma2(sigma2)?;
    Ok(sigma2 * delta_n2_upper_raw(sigma2))
}

/// `(1/8)(√(1+σ²)/(√(1+σ²) - 1) - 1/2)`, the small-σ² upper bound on `Δ²_{n,opt}`.
pub fn delta_n2_upper(sigma2: f64) -> Result<f64> {
    check_sigma2(sigma2)?;
    Ok(delta_n2_upper_raw(sigma2))
}

fn delta_n2_upper_raw(sigma2: f64) -> f64 {
    // √(1+s)/(√(1+s) - 1) = (1 + s + √(1+s))/s
    let root = (1.0 + sigma2).sqrt();
    ((1.0 + sigma2 + root) / sigma2 - 0.5) / 8.0
}

/// Optimum of `max αλ₁ + λ₂ s.t. λ₂ < 1 - √(1+λ₁²)`: `(λ₁*, value)`.
pub fn restricted_dual_optimum(alpha: f64) -> (f64, f64) {
    let c = (1.0 - alpha * alpha).sqrt();
    (alpha / c, 1.0 - c)
}

/// Optimum of `max αλ₁ + λ₂ s.t. λ₂ ≤ -λ₁ + √(λ₁/2) - 1/16`: `(λ₁*, value)`.
pub fn relaxed_dual_optimum(alpha: f64) -> (f64, f64) {
    let gap = 1.0 - alpha;
    (1.0 / (8.0 * gap * gap), 1.0 / (8.0 * gap) - 1.0 / 16.0)
}

/// Truncated large-`q` series for `a₀(q)`:
///
/// ```text
/// -2q + 2q^{1/2} - 1/4 - (1/32)q^{-1/2} - (48/2⁷)q^{-1} - (848/2¹⁷)q^{-3/2}
///     - (4752/2²⁰)q^{-2} - (126752/2²⁰)q^{-5/2}
/// ```
///
/// Note: Abramowitz & Stegun 20.2.30 (w = 1) gives `48/2¹²` and `126752/2²⁵`
/// for the `q^{-1}` and `q^{-5/2}` terms; the coefficients above are kept as
/// they are used for the upper bound. The difference is `O(q⁻¹)` and below
/// `4e-4·|a₀|` for `q ≥ 25`.
pub fn mclachlan_a0(q: f64) -> Result<f64> {
    if !(q >= MCLACHLAN_Q_MIN) || !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "asymptotic series needs q >= {MCLACHLAN_Q_MIN}, got {q}"
        )));
    }
    let s = q.sqrt();
    let p2 = |e: i32| 2f64.powi(e);
    Ok(-2.0 * q + 2.0 * s
        - 0.25
        - (1.0 / 32.0) / s
        - (48.0 / p2(7)) / q
        - (848.0 / p2(17)) / (q * s)
        - (4752.0 / p2(20)) / (q * q)
        - (126752.0 / p2(20)) / (q * q * s))
}

/// `-2q + 2√q - 1/4`, an upper bound on `a₀(q)` for large `q`.
pub fn a0_upper_bound(q: f64) -> f64 {
    -2.0 * q + 2.0 * q.sqrt() - 0.25
}
