//! Centers and spreads of a sequence in time and frequency.
//!
//! Time moments are taken over the normalized energy distribution
//! `|x_k|²/‖x‖²`. Two frequency spreads are provided:
//!
//! * the *linear* spread, the variance of `|X(e^{jω})|²/(2π‖x‖²)` on `[-π, π]`;
//! * the *periodic* spread `(1 - |τ|²)/|τ|²`, built from the first
//!   trigonometric moment `τ = Σ x_k x*_{k+1} / ‖x‖²` (a circular-statistics
//!   variance surrogate that respects the 2π-periodicity of the spectrum).
//!
//! `η_ℓ` and `η_p` are the corresponding time-frequency products.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Every center/spread measure of one sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub mu_n: f64,
    pub delta_n2: f64,
    pub tau: Complex64,
    #[serde(with = "ext_real")]
    pub delta_wp2: f64,
    pub mu_wl: f64,
    pub delta_wl2: f64,
    /// `None` when the sequence has a single nonzero tap (`0 · ∞`).
    #[serde(with = "ext_real::option")]
    pub eta_p: Option<f64>,
    pub eta_l: f64,
}

impl SpreadReport {
    pub fn of(s: &Sequence) -> Self {
        let mu_n = time_center(s);
        let delta_n2 = time_spread(s);
        let tau = trig_moment(s);
        let delta_wp2 = spread_from_tau(tau);
        let (mu_wl, delta_wl2) = linear_freq_spread(s);
        let eta_p = if s.nonzero_count() > 1 {
            Some(delta_n2 * delta_wp2)
        } else {
            None
        };
        Self {
            mu_n,
            delta_n2,
            tau,
            delta_wp2,
            mu_wl,
            delta_wl2,
            eta_p,
            eta_l: delta_n2 * delta_wl2,
        }
    }

    /// The periodic frequency "center" `1 - τ`. Reported, never consumed.
    pub fn freq_center_periodic(&self) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.tau
    }
}

/// `μ_n = Σ k|x_k|² / ‖x‖²`.
pub fn time_center(s: &Sequence) -> f64 {
    let e = s.norm2();
    s.indexed().map(|(k, z)| k as f64 * z.norm_sqr()).sum::<f64>() / e
}

/// `Δn² = Σ (k - μ_n)²|x_k|² / ‖x‖²`.
pub fn time_spread(s: &Sequence) -> f64 {
    let e = s.norm2();
    let mu = time_center(s);
    s.indexed()
        .map(|(k, z)| {
            let d = k as f64 - mu;
            d * d * z.norm_sqr()
        })
        .sum::<f64>()
        / e
}

/// First trigonometric moment `τ = Σ_k x_k x*_{k+1} / ‖x‖²`.
///
/// The spectral integral `(1/2π‖x‖²) ∫ e^{jω}|X|² dω` equals `τ*`; the two
/// share the modulus, which is all the periodic spread depends on.
pub fn trig_moment(s: &Sequence) -> Complex64 {
    s.autocorrelation(1) / s.norm2()
}

/// `Δω_p² = (1 - |τ|²)/|τ|²`, or `+∞` when `τ = 0`.
pub fn periodic_freq_spread(s: &Sequence) -> f64 {
    spread_from_tau(trig_moment(s))
}

fn spread_from_tau(tau: Complex64) -> f64 {
    let t2 = tau.norm_sqr();
    if t2 == 0.0 {
        f64::INFINITY
    } else {
        (1.0 - t2) / t2
    }
}

/// `(μ_ωℓ, Δω_ℓ²)`, the mean and variance of the normalized energy spectrum
/// over `[-π, π]`.
///
/// Integrating `|X|² = Σ_m r_m* e^{-jωm}` term by term gives
///
/// ```text
/// μ_ωℓ  = (2/‖x‖²) Σ_{m≥1} (-1)^m Im(r_m) / m
/// E[ω²] = π²/3 + (4/‖x‖²) Σ_{m≥1} (-1)^m Re(r_m) / m²
/// ```
pub fn linear_freq_spread(s: &Sequence) -> (f64, f64) {
    let e = s.norm2();
    let mut mean = 0.0;
    let mut second = PI * PI / 3.0;
    for m in 1..s.len() as i64 {
        let r = s.autocorrelation(m);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mf = m as f64;
        mean += 2.0 * sign * r.im / (mf * e);
        second += 4.0 * sign * r.re / (mf * mf * e);
    }
    (mean, (second - mean * mean).max(0.0))
}

/// `η_p = Δn² Δω_p²`. A single nonzero tap is reported as [`Error::SingleTap`].
pub fn tf_spread_periodic(s: &Sequence) -> Result<f64> {
    if s.nonzero_count() <= 1 {
        return Err(Error::SingleTap);
    }
    Ok(time_spread(s) * periodic_freq_spread(s))
}

/// `η_ℓ = Δn² Δω_ℓ²`.
pub fn tf_spread_linear(s: &Sequence) -> f64 {
    time_spread(s) * linear_freq_spread(s).1
}

/// JSON encoding for extended reals: finite values as numbers, `+∞` as `"inf"`.
pub(crate) mod ext_real {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    struct ExtVisitor;

    impl<'de> Visitor<'de> for ExtVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a number or \"inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" => Ok(f64::INFINITY),
                other => Err(E::custom(format!("expected \"inf\", got {other:?}"))),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(ExtVisitor)
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}
