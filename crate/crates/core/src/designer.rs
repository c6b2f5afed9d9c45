//! Maximally compact sequences: minimal `Δn²` for a prescribed `Δω_p² = σ²`.
//!
//! The nonconvex problem `min xᵀAx s.t. xᵀBx = α, xᵀx = 1` with
//! `α = 1/√(1+σ²)` has a tight semidefinite relaxation (two constraints,
//! rank-one optimum) and strong duality with
//!
//! ```text
//! max αλ₁ + λ₂   s.t.   A - λ₁B - λ₂I ⪰ 0.
//! ```
//!
//! For fixed `λ₁` the best `λ₂` is `λ_min(A - λ₁B)`, so the dual reduces to the
//! concave scalar problem `g(λ₁) = αλ₁ + λ_min(A - λ₁B)`, whose slope is
//! `α - xᵀBx` for the ground state `x`. The optimum is the `λ₁` at which the
//! ground state meets the constraint; that ground state is the optimal
//! sequence and `X = xxᵀ` the rank-one primal solution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::pencil::{self, Pencil};
use crate::sequence::Sequence;
use crate::tridiag::EigenPair;

pub const DEFAULT_TAPS: usize = 201;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Largest accepted mass in the two outermost taps before the grid is deemed too short.
pub const TAIL_MASS_LIMIT: f64 = 1e-10;
const MAX_AUTO_TAPS: usize = 1 << 16;
const LAMBDA1_CEILING: f64 = 1e15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignStatus {
    Ok,
    /// The outermost taps carry more than [`TAIL_MASS_LIMIT`]; use more taps.
    IncreaseTaps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignResult {
    pub sigma2: f64,
    pub alpha: f64,
    pub taps: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub delta_n2_opt: f64,
    pub eta_p: f64,
    /// Unit norm, centered at 0, entrywise positive.
    pub sequence: Sequence,
    /// `|xᵀAx - (αλ₁ + λ₂)|`.
    pub duality_gap: f64,
    /// `xᵀBx - α`.
    pub constraint_gap: f64,
    /// `‖(A - λ₁B)x - λ₂x‖₂`.
    pub eig_residual: f64,
    /// `x_{-N}² + x_N²`.
    pub tail_mass: f64,
    pub status: DesignStatus,
}

impl DesignResult {
    /// Real taps on the grid `-N..=N`.
    pub fn taps_real(&self) -> Vec<f64> {
        self.sequence.real_taps()
    }
}

/// One evaluation of the reduced dual at a given `λ₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    pub lambda1: f64,
    /// `λ_min(A - λ₁B)`.
    pub lambda2: f64,
    /// `αλ₁ + λ₂`.
    pub g: f64,
    /// `xᵀBx` of the ground state; `α - b` is the slope of `g`.
    pub b: f64,
    pub ground_state: EigenPair,
}

/// Ground state of `A - λ₁B` on `{-N, …, N}`.
pub fn ground_state(half_len: usize, lambda1: f64) -> Result<EigenPair> {
    Pencil::new(half_len, lambda1, 0.0)?.ground_state()
}

/// `g(λ₁) = αλ₁ + λ_min(A - λ₁B)` and the ground state's `xᵀBx`.
pub fn dual_value(lambda1: f64, alpha: f64, half_len: usize) -> Result<DualPoint> {
    if !(lambda1 >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda1 must be >= 0, got {lambda1}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if half_len < 2 {
        return Err(Error::InvalidParameter(format!("half length must be >= 2, got {half_len}")));
    }
    let gs = ground_state(half_len, lambda1)?;
    let b = pencil::b_form(&gs.vector);
    Ok(DualPoint {
        lambda1,
        lambda2: gs.value,
        g: alpha * lambda1 + gs.value,
        b,
        ground_state: gs,
    })
}

fn validate(sigma2: f64, taps: usize, tol: f64) -> Result<()> {
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma2 must be positive, got {sigma2}")));
    }
    if taps < 5 || taps % 2 == 0 {
        return Err(Error::InvalidParameter(format!("taps must be odd and >= 5, got {taps}")));
    }
    if !(tol >= 1e-12 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tol must be >= 1e-12, got {tol}")));
    }
    Ok(())
}

/// Minimal-time-spread sequence with `taps` taps and periodic frequency spread `σ²`.
///
/// `λ₁` is bisected on the nondecreasing map `λ₁ ↦ x(λ₁)ᵀBx(λ₁)` until
/// `|xᵀBx - α|·max(1, λ₁) ≤ tol`, which bounds both the constraint gap and the
/// duality gap `λ₁|xᵀBx - α|` by `tol` (up to eigensolver accuracy).
pub fn design_max_compact(sigma2: f64, taps: usize, tol: f64) -> Result<DesignResult> {
    validate(sigma2, taps, tol)?;
    let alpha = bounds::alpha_of(sigma2);
    let lambda_max_b = pencil::b_lambda_max(taps);
    let unattainable = Error::Unattainable {
        alpha,
        lambda_max_b,
        taps,
    };
    if alpha >= lambda_max_b {
        return Err(unattainable);
    }
    let half_len = taps / 2;

    let eval = |l1: f64| dual_value(l1, alpha, half_len);
    let score = |p: &DualPoint| (p.b - alpha).abs() * p.lambda1.max(1.0);

    // b(0) = 0 < α; grow the upper end until the constraint is overshot.
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut best = eval(hi)?;
    while best.b <= alpha {
        lo = hi;
        hi *= 2.0;
        if hi > LAMBDA1_CEILING {
            return Err(unattainable);
        }
        best = eval(hi)?;
    }

    for _ in 0..200 {
        if score(&best) <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let p = eval(mid)?;
        if p.b < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
        if score(&p) < score(&best) {
            best = p;
        }
    }

    Ok(certify(sigma2, alpha, taps, best))
}

fn certify(sigma2: f64, alpha: f64, taps: usize, point: DualPoint) -> DesignResult {
    let mut x = point.ground_state.vector;
    // The ground state is even; remove rounding asymmetry.
    let n = x.len();
    for i in 0..n / 2 {
        let m = 0.5 * (x[i] + x[n - 1 - i]);
        x[i] = m;
        x[n - 1 - i] = m;
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);

    let half_len = n / 2;
    let lambda1 = point.lambda1;
    let lambda2 = point.lambda2;
    let a = pencil::a_form(&x);
    let b = pencil::b_form(&x);
    let pen = Pencil::new(half_len, lambda1, 0.0).expect("half length >= 2");
    let eig_residual = pen
        .apply(&x)
        .iter()
        .zip(&x)
        .map(|(px, v)| (px - lambda2 * v).powi(2))
        .sum::<f64>()
        .sqrt();
    let tail_mass = x[0] * x[0] + x[n - 1] * x[n - 1];
    let status = if tail_mass > TAIL_MASS_LIMIT {
        DesignStatus::IncreaseTaps
    } else {
        DesignStatus::Ok
    };
    let sequence = Sequence::centered_real(&x).expect("odd, finite, nonzero");

    DesignResult {
        sigma2,
        alpha,
        taps,
        lambda1,
        lambda2,
        delta_n2_opt: a,
        eta_p: a * sigma2,
        sequence,
        duality_gap: (a - (alpha * lambda1 + lambda2)).abs(),
        constraint_gap: b - alpha,
        eig_residual,
        tail_mass,
        status,
    }
}

/// Like [`design_max_compact`], starting at `min_taps` and doubling the grid
/// until the result is neither unattainable nor truncation-limited.
pub fn design_auto_taps(sigma2: f64, min_taps: usize, tol: f64) -> Result<DesignResult> {
    let mut taps = min_taps.max(5) | 1;
    loop {
        match design_max_compact(sigma2, taps, tol) {
            Ok(r) if r.status == DesignStatus::Ok => return Ok(r),
            Ok(r) if taps >= MAX_AUTO_TAPS => return Ok(r),
            Err(e @ Error::Unattainable { .. }) if taps >= MAX_AUTO_TAPS => return Err(e),
            Ok(_) | Err(Error::Unattainable { .. }) => taps = 2 * taps - 1,
            Err(e) => return Err(e),
        }
    }
}

/// One row of the optimal `η_p(σ²)` curve with its analytic bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub sigma2: f64,
    pub delta_n2: Option<f64>,
    pub eta_p: Option<f64>,
    pub eta_lower: Option<f64>,
    pub eta_upper: Option<f64>,
    /// Diagnostic for a failed point.
    pub error: Option<String>,
}

/// Solves every grid point (in parallel) and returns rows in grid order.
pub fn sweep_curve(sigma2_grid: &[f64], taps: usize, tol: f64) -> Vec<CurvePoint> {
    sigma2_grid
        .par_iter()
        .map(|&sigma2| {
            let bounds = bounds::BoundPair::at(sigma2).ok();
            let (delta_n2, eta_p, error) = match design_max_compact(sigma2, taps, tol) {
                Ok(r) => {
                    let err = (r.status == DesignStatus::IncreaseTaps).then(|| {
                        format!("tail mass {:e} exceeds {TAIL_MASS_LIMIT:e}; increase taps", r.tail_mass)
                    });
                    (Some(r.delta_n2_opt), Some(r.eta_p), err)
                }
                Err(e) => (None, None, Some(e.to_string())),
            };
            CurvePoint {
                sigma2,
                delta_n2,
                eta_p,
                eta_lower: bounds.map(|b| b.eta_lower),
                eta_upper: bounds.map(|b| b.eta_upper),
                error,
            }
        })
        .collect()
}
