//! File formats.
//!
//! Sequence files hold one tap per line as `re im` (whitespace separated; a
//! lone value is a real tap), preceded by an optional `# offset=<int>` header.
//! Other `#` lines and blank lines are ignored. Numbers are written in Rust's
//! shortest round-trip form, so write → read is lossless.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::designer::CurvePoint;
use crate::error::{Error, Result};
use crate::mathieu::MathieuEval;
use crate::sequence::Sequence;
use crate::windows::ScanPoint;

pub const CURVE_HEADER: &str = "sigma2,delta_n2,eta_p,eta_lower,eta_upper";
pub const SCAN_HEADER: &str = "family,param,delta_wp2,delta_n2,eta_p";

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut offset = 0i64;
    let mut taps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("offset=") {
                offset = v.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad offset {v:?}"),
                })?;
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad number {s:?}"),
            })
        };
        let tap = match fields.as_slice() {
            [re] => Complex64::new(num(re)?, 0.0),
            [re, im] => Complex64::new(num(re)?, num(im)?),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `re im`, got {line:?}"),
                })
            }
        };
        taps.push(tap);
    }
    Sequence::new(taps, offset)
}

pub fn read_sequence(path: &Path) -> Result<Sequence> {
    parse_sequence(&std::fs::read_to_string(path)?)
}

pub fn format_sequence(s: &Sequence) -> String {
    let mut out = format!("# offset={}\n", s.offset());
    for z in s.taps() {
        let _ = writeln!(out, "{} {}", z.re, z.im);
    }
    out
}

pub fn write_sequence(path: &Path, s: &Sequence) -> Result<()> {
    std::fs::write(path, format_sequence(s))?;
    Ok(())
}

/// `index,re,im` rows, one per tap.
pub fn sequence_csv(s: &Sequence) -> String {
    let mut out = String::from("index,re,im\n");
    for (k, z) in s.indexed() {
        let _ = writeln!(out, "{k},{},{}", z.re, z.im);
    }
    out
}

#[derive(Serialize)]
struct SequenceJson {
    offset: i64,
    taps: Vec<[f64; 2]>,
}

/// `{"offset": n, "taps": [[re, im], …]}`.
pub fn sequence_json(s: &Sequence) -> String {
    let js = SequenceJson {
        offset: s.offset(),
        taps: s.taps().iter().map(|z| [z.re, z.im]).collect(),
    };
    serde_json::to_string_pretty(&js).expect("finite taps serialize")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), |x| x.to_string())
}

/// Curve rows; failed points carry `nan` in the solver columns.
pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.sigma2,
            opt(p.delta_n2),
            opt(p.eta_p),
            opt(p.eta_lower),
            opt(p.eta_upper)
        );
    }
    out
}

/// Window-scan rows; failed or degenerate points carry `nan`.
pub fn scan_csv(points: &[ScanPoint]) -> String {
    let mut out = format!("{SCAN_HEADER}\n");
    for p in points {
        match &p.report {
            Ok(r) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    p.family,
                    p.param,
                    ext(r.delta_wp2),
                    r.delta_n2,
                    r.eta_p.map_or_else(|| "nan".into(), ext)
                );
            }
            Err(_) => {
                let _ = writeln!(out, "{},{},nan,nan,nan", p.family, p.param);
            }
        }
    }
    out
}

fn ext(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        v.to_string()
    }
}

/// `theta,ce0` rows.
pub fn ce0_csv(m: &MathieuEval) -> String {
    let mut out = String::from("theta,ce0\n");
    for (t, v) in m.thetas.iter().zip(&m.ce0_values) {
        let _ = writeln!(out, "{t},{v}");
    }
    out
}

/// `q,a0` rows.
pub fn a0_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("q,a0\n");
    for (q, a) in rows {
        let _ = writeln!(out, "{q},{a}");
    }
    out
}
