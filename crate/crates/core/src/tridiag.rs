//! Ground state of a symmetric tridiagonal matrix with constant off-diagonal.
//!
//! The smallest eigenvalue is bracketed by Sturm counts (the number of
//! negative LDLᵀ pivots of `T - xI` equals the number of eigenvalues below
//! `x`) and the eigenvector follows from inverse iteration shifted just below
//! the bracket, where `T - μI` is positive definite and the LDLᵀ solve needs
//! no pivoting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute bisection tolerance on the eigenvalue.
pub const EIGENVALUE_TOL: f64 = 1e-12;
const MAX_INVERSE_STEPS: usize = 50;
const MAX_BISECTION_STEPS: usize = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: f64,
    /// Unit norm; the center entry (or the largest one, if the center vanishes) is positive.
    pub vector: Vec<f64>,
    /// `‖Tv - λv‖₂`.
    pub residual: f64,
}

/// LDLᵀ pivots of `T - shift·I` for `T = tridiag(offdiag, diag, offdiag)`.
///
/// `d₀ = diag₀ - shift`, `d_{i+1} = diag_{i+1} - shift - offdiag²/d_i`. A zero
/// pivot followed by a coupled row yields `-∞` at the next index.
pub fn ldl_pivots(diag: &[f64], offdiag: f64, shift: f64) -> Vec<f64> {
    let e2 = offdiag * offdiag;
    let mut out = Vec::with_capacity(diag.len());
    let mut prev: Option<f64> = None;
    for &d in diag {
        let p = match prev {
            None => d - shift,
            Some(_) if e2 == 0.0 => d - shift,
            Some(q) => d - shift - e2 / q,
        };
        out.push(p);
        prev = Some(p);
    }
    out
}

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], offdiag: f64, x: f64) -> usize {
    let e2 = offdiag * offdiag;
    let pivmin = f64::MIN_POSITIVE * e2.max(1.0);
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - e2 / q };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Bracket `[lo, hi]` around the smallest eigenvalue with `hi - lo ≤ tol`
/// (or at floating-point resolution).
pub fn min_eigen_bracket(diag: &[f64], offdiag: f64, tol: f64) -> (f64, f64) {
    assert!(!diag.is_empty(), "empty diagonal");
    let n = diag.len();
    let e = offdiag.abs();
    let min_diag = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let mut lo = diag
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let neighbours = (i > 0) as usize + (i + 1 < n) as usize;
            d - neighbours as f64 * e
        })
        .fold(f64::INFINITY, f64::min);
    // λ_min ≤ min diag by the Rayleigh quotient of a unit vector.
    let mut hi = min_diag;
    let pad = 4.0 * f64::EPSILON * (lo.abs().max(hi.abs()).max(1.0));
    lo -= pad;
    hi += pad;
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, offdiag, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Smallest eigenvalue by Sturm bisection to absolute tolerance [`EIGENVALUE_TOL`].
pub fn min_eigenvalue(diag: &[f64], offdiag: f64) -> f64 {
    let (lo, hi) = min_eigen_bracket(diag, offdiag, EIGENVALUE_TOL);
    0.5 * (lo + hi)
}

/// `‖Tv - λv‖₂`.
pub fn residual_norm(diag: &[f64], offdiag: f64, value: f64, v: &[f64]) -> f64 {
    apply(diag, offdiag, v)
        .iter()
        .zip(v)
        .map(|(tv, x)| (tv - value * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `T v`.
pub fn apply(diag: &[f64], offdiag: f64, v: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut acc = diag[i] * v[i];
            if i > 0 {
                acc += offdiag * v[i - 1];
            }
            if i + 1 < n {
                acc += offdiag * v[i + 1];
            }
            acc
        })
        .collect()
}

/// Smallest eigenvalue and its unit eigenvector.
pub fn min_eigenpair(diag: &[f64], offdiag: f64) -> Result<EigenPair> {
    assert!(!diag.is_empty(), "empty diagonal");
    let n = diag.len();

    if offdiag == 0.0 || n == 1 {
        let (idx, &value) = diag
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        let mut vector = vec![0.0; n];
        vector[idx] = 1.0;
        return Ok(EigenPair {
            value,
            vector,
            residual: 0.0,
        });
    }

    let (lo, hi) = min_eigen_bracket(diag, offdiag, EIGENVALUE_TOL);
    let value = 0.5 * (lo + hi);
    let scale = diag.iter().fold(lo.abs(), |m, d| m.max(d.abs())).max(1.0);
    let shift = lo - 8.0 * f64::EPSILON * scale;

    let solver = ShiftedLdl::new(diag, offdiag, shift);
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    let target = 1e-10 * (1.0 + value.abs());

    for step in 1..=MAX_INVERSE_STEPS {
        let mut y = solver.solve(&v);
        let norm = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        y.iter_mut().for_each(|x| *x /= norm);
        canonicalize_sign(&mut y);
        let change = y
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        v = y;
        residual = residual_norm(diag, offdiag, value, &v);
        if step >= 2 && change < 1e-13 && residual <= target {
            return Ok(EigenPair {
                value,
                vector: v,
                residual,
            });
        }
    }

    if residual <= target {
        Ok(EigenPair {
            value,
            vector: v,
            residual,
        })
    } else {
        Err(Error::NoConvergence {
            iterations: MAX_INVERSE_STEPS,
            residual,
        })
    }
}

fn canonicalize_sign(v: &mut [f64]) {
    let center = v[v.len() / 2];
    let pick = if center.abs() > 1e-8 {
        center
    } else {
        v.iter()
            .copied()
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .unwrap_or(1.0)
    };
    if pick < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// LDLᵀ factorization of `T - μI`, assumed positive definite.
struct ShiftedLdl {
    pivots: Vec<f64>,
    offdiag: f64,
}

impl ShiftedLdl {
    fn new(diag: &[f64], offdiag: f64, shift: f64) -> Self {
        let e2 = offdiag * offdiag;
        // Pivots are positive in exact arithmetic; keep rounding from flipping them.
        let floor = f64::EPSILON * offdiag.abs().max(1.0);
        let mut pivots: Vec<f64> = Vec::with_capacity(diag.len());
        for &d in diag {
            let p = match pivots.last() {
                None => d - shift,
                Some(&q) => d - shift - e2 / q,
            };
            pivots.push(p.max(floor));
        }
        Self { pivots, offdiag }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        // L y = rhs, with L_{i,i-1} = e / d_{i-1}
        let mut y = rhs.to_vec();
        for i in 1..n {
            y[i] -= self.offdiag / self.pivots[i - 1] * y[i - 1];
        }
        // D Lᵀ x = y
        let mut x = vec![0.0; n];
        x[n - 1] = y[n - 1] / self.pivots[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = y[i] / self.pivots[i] - self.offdiag / self.pivots[i] * x[i + 1];
        }
        x
    }
}

/// The `index`-th smallest eigenvalue (0-based) by Sturm bisection.
pub fn eigenvalue_by_index(diag: &[f64], offdiag: f64, index: usize) -> f64 {
    assert!(index < diag.len(), "eigenvalue index out of range");
    let n = diag.len();
    let e = offdiag.abs();
    let (mut lo, mut hi) = diag.iter().enumerate().fold(
        (f64::INFINITY, f64::NEG_INFINITY),
        |(lo, hi), (i, &d)| {
            let r = ((i > 0) as usize + (i + 1 < n) as usize) as f64 * e;
            (lo.min(d - r), hi.max(d + r))
        },
    );
    let pad = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    lo -= pad;
    hi += pad;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= EIGENVALUE_TOL || mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, offdiag, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
