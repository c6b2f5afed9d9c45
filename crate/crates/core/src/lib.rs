//! Time and frequency spreads of finite sequences, and construction of
//! maximally compact sequences: the minimal time spread attainable for a
//! prescribed periodic frequency spread.
//!
//! The optimizer is computed through a two-variable dual whose constraint is
//! the positive semidefiniteness of a tridiagonal pencil `A - λ₁B - λ₂I`
//! (`A = diag(k²)`, `B` the symmetric lag-one averaging operator). At the
//! optimum the sequence is the ground state of `A - λ₁B`, and its spectrum
//! is Mathieu's harmonic cosine `ce₀(-2λ₁; ω/2)`.
//!
//! Module map:
//! - [`sequence`]: tap vectors with an integer time offset, DTFT, autocorrelation.
//! - [`spreads`]: time/frequency centers and spreads, `η_p` and `η_ℓ`.
//! - [`pencil`]: the `A - λ₁B - λ₂I` family and its LDL positivity test.
//! - [`tridiag`]: Sturm bisection and inverse iteration for the ground state.
//! - [`designer`]: the dual solve, certificates and σ² sweeps.
//! - [`bounds`]: closed-form lower/upper bounds on `η_p` and McLachlan's series.
//! - [`mathieu`]: `a₀(q)` and `ce₀(q; θ)` from the pencil ground state.
//! - [`windows`]: FIR windows, sampled Gaussians and spread scans.
//! - [`io`]: sequence files, CSV and JSON emitters.
//! - [`cli`]: the command-line front end.

pub mod bounds;
pub mod cli;
pub mod designer;
pub mod error;
pub mod io;
pub mod mathieu;
pub mod pencil;
pub mod sequence;
pub mod spreads;
pub mod tridiag;
pub mod windows;

pub use designer::{design_max_compact, sweep_curve, CurvePoint, DesignResult, DesignStatus};
pub use error::{Error, Result};
pub use mathieu::MathieuEval;
pub use pencil::Pencil;
pub use sequence::Sequence;
pub use spreads::SpreadReport;
pub use tridiag::EigenPair;
