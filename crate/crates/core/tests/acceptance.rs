//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use tfcompact::bounds;
use tfcompact::designer::{self, DesignResult, DesignStatus};
use tfcompact::mathieu;
use tfcompact::pencil::Pencil;
use tfcompact::spreads::{self, SpreadReport};
use tfcompact::windows::{self, WindowFamily};
use tfcompact::Sequence;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn twenty_designs() -> Result<(Vec<DesignResult>, Duration), String> {
    let start = Instant::now();
    let designs = log_grid(0.02, 10.0, 20)
        .into_iter()
        .map(|s| designer::design_max_compact(s, 201, designer::DEFAULT_TOL))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok((designs, start.elapsed()))
}

fn c1_example_design() -> Outcome {
    let start = Instant::now();
    let r = designer::design_max_compact(0.1, 201, designer::DEFAULT_TOL).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check((0.257..=0.267).contains(&r.eta_p), format!("eta_p = {}", r.eta_p))?;
    check((2.57..=2.67).contains(&r.delta_n2_opt), format!("delta_n2 = {}", r.delta_n2_opt))?;
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "eta_p = {:.5}, delta_n2 = {:.5}, {:.1} ms",
        r.eta_p,
        r.delta_n2_opt,
        elapsed.as_secs_f64() * 1e3
    ))
}

/// Composite Simpson on `[-π, π]` of the linear frequency moments of `|X|²`.
fn linear_moments_by_quadrature(s: &Sequence, intervals: usize) -> (f64, f64) {
    let h = 2.0 * PI / intervals as f64;
    let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for i in 0..=intervals {
        let w = -PI + i as f64 * h;
        let weight = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let p = s.dtft_at(w).norm_sqr() * weight;
        m0 += p;
        m1 += w * p;
        m2 += w * w * p;
    }
    let mean = m1 / m0;
    (mean, m2 / m0 - mean * mean)
}

fn c2_example_analysis() -> Outcome {
    let s = Sequence::from_real(&[1.0, 7.0, 2.0], 0).map_err(|e| e.to_string())?;
    let closed = spreads::tf_spread_linear(&s);
    let (_, var) = linear_moments_by_quadrature(&s, 1 << 14);
    let quad = spreads::time_spread(&s) * var;
    for (name, v) in [("closed form", closed), ("quadrature", quad)] {
        check((0.158..=0.160).contains(&v), format!("{name} eta_l = {v}"))?;
        check(v < 0.25, format!("{name} eta_l = {v} not below 1/4"))?;
    }
    Ok(format!("eta_l closed = {closed:.9}, quadrature = {quad:.9}"))
}

fn c3_certificates() -> Outcome {
    let (designs, elapsed) = twenty_designs()?;
    let mut worst = [0.0f64; 3];
    for r in &designs {
        worst[0] = worst[0].max(r.duality_gap);
        worst[1] = worst[1].max(r.eig_residual);
        worst[2] = worst[2].max(r.constraint_gap.abs());
        let x = r.taps_real();
        check(x.iter().all(|&v| v > 0.0), format!("sigma2 = {}: nonpositive tap", r.sigma2))?;
        check(
            (0..x.len()).all(|i| x[i] == x[x.len() - 1 - i]),
            format!("sigma2 = {}: asymmetric", r.sigma2),
        )?;
        check(r.status == DesignStatus::Ok, format!("sigma2 = {}: {:?}", r.sigma2, r.status))?;
    }
    check(worst.iter().all(|&w| w <= 1e-8), format!("worst gaps {worst:?}"))?;
    check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!(
        "max duality {:.1e}, residual {:.1e}, constraint {:.1e}; {:.0} ms",
        worst[0],
        worst[1],
        worst[2],
        elapsed.as_secs_f64() * 1e3
    ))
}

fn c4_sandwich() -> Outcome {
    let (designs, _) = twenty_designs()?;
    let mut min_lower_margin = f64::INFINITY;
    let mut min_upper_margin = f64::INFINITY;
    for r in &designs {
        let b = bounds::BoundPair::at(r.sigma2).map_err(|e| e.to_string())?;
        let lower_margin = r.eta_p - b.eta_lower;
        min_lower_margin = min_lower_margin.min(lower_margin);
        check(lower_margin >= -1e-9, format!("sigma2 = {}: eta_p {} < lower {}", r.sigma2, r.eta_p, b.eta_lower))?;
        if r.sigma2 <= 0.1 {
            let upper_margin = b.eta_upper + 5e-3 - r.eta_p;
            min_upper_margin = min_upper_margin.min(upper_margin);
            check(upper_margin >= 0.0, format!("sigma2 = {}: eta_p {} > upper {}", r.sigma2, r.eta_p, b.eta_upper))?;
        }
    }
    Ok(format!(
        "min margin above lower {min_lower_margin:.3e}, below upper+5e-3 {min_upper_margin:.3e}"
    ))
}

fn c5_monotone() -> Outcome {
    let (designs, _) = twenty_designs()?;
    for w in designs.windows(2) {
        check(
            w[1].delta_n2_opt < w[0].delta_n2_opt,
            format!(
                "delta_n2({}) = {} !< delta_n2({}) = {}",
                w[1].sigma2, w[1].delta_n2_opt, w[0].sigma2, w[0].delta_n2_opt
            ),
        )?;
    }
    Ok(format!(
        "delta_n2 falls from {:.4} to {:.6}",
        designs[0].delta_n2_opt,
        designs[designs.len() - 1].delta_n2_opt
    ))
}

fn c6_asymptotes() -> Outcome {
    let r = designer::design_max_compact(100.0, 201, designer::DEFAULT_TOL).map_err(|e| e.to_string())?;
    check((0.45..=0.5).contains(&r.eta_p), format!("eta_p(100) = {}", r.eta_p))?;
    let up = bounds::eta_upper(1e-6).map_err(|e| e.to_string())?;
    check((up - 0.25).abs() <= 1e-6, format!("eta_upper(1e-6) = {up}"))?;
    let lo = bounds::eta_lower(1e6).map_err(|e| e.to_string())?;
    check((lo - 0.5).abs() <= 1e-3, format!("eta_lower(1e6) = {lo}"))?;
    Ok(format!(
        "eta_p(100) = {:.6}, eta_upper(1e-6) = {up:.9}, eta_lower(1e6) = {lo:.6}",
        r.eta_p
    ))
}

fn c7_mathieu() -> Outcome {
    let mut worst_rel = 0.0f64;
    for q in [25.0, 50.0, 100.0, 500.0] {
        let a = mathieu::char_value_a0(q, 16).map_err(|e| e.to_string())?;
        let m = bounds::mclachlan_a0(q).map_err(|e| e.to_string())?;
        let rel = (a - m).abs() / a.abs();
        worst_rel = worst_rel.max(rel);
        check(rel <= 1e-3, format!("q = {q}: a0 = {a}, series = {m}"))?;
    }
    let mut worst_margin = f64::INFINITY;
    for q in log_grid(10.0, 1e3, 200) {
        let a = mathieu::char_value_a0(q, 16).map_err(|e| e.to_string())?;
        let margin = bounds::a0_upper_bound(q) + 1e-6 - a;
        worst_margin = worst_margin.min(margin);
        check(margin >= 0.0, format!("q = {q}: a0 = {a} above bound"))?;
    }
    let thetas: Vec<f64> = (0..=400).map(|i| i as f64 * PI / 400.0).collect();
    let mut worst_ode = 0.0f64;
    for q in [0.5, 2.0, 10.0, 50.0] {
        let m = mathieu::ce0(q, &[], 16).map_err(|e| e.to_string())?;
        let r = m.ode_residual(&thetas, 5e-3);
        worst_ode = worst_ode.max(r);
        check(r <= 1e-5, format!("q = {q}: ODE residual {r}"))?;
    }
    Ok(format!(
        "series rel err <= {worst_rel:.1e}, bound margin >= {worst_margin:.3e}, ODE residual <= {worst_ode:.1e}"
    ))
}

fn c8_spectrum() -> Outcome {
    let mut worst = 0.0f64;
    for s in [0.05, 0.1, 1.0] {
        let r = designer::design_max_compact(s, 201, designer::DEFAULT_TOL).map_err(|e| e.to_string())?;
        let e = mathieu::spectrum_mismatch(&r, 1024).map_err(|e| e.to_string())?;
        worst = worst.max(e);
        check(e <= 1e-8, format!("sigma2 = {s}: mismatch {e}"))?;
    }
    Ok(format!("max relative mismatch {worst:.2e}"))
}

/// Cyclic Jacobi rotations on a dense symmetric matrix; returns (eigenvalues, columns of V).
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    (values, vectors)
}

fn c9_jacobi_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut worst_val = 0.0f64;
    let mut worst_vec = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let l1 = rng.gen_range(-20.0..20.0);
        let l2 = rng.gen_range(-10.0..10.0);
        let p = Pencil::new(n, l1, l2).map_err(|e| e.to_string())?;
        let gs = p.ground_state().map_err(|e| e.to_string())?;
        let dim = p.dim();
        let dense: Vec<Vec<f64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match i.abs_diff(j) {
                        0 => p.diag()[i],
                        1 => p.offdiag(),
                        _ => 0.0,
                    })
                    .collect()
            })
            .collect();
        let (vals, vecs) = jacobi_eigen(dense);
        let imin = (0..dim).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
        let dv = (vals[imin] - gs.value).abs();
        let dot: f64 = vecs[imin].iter().zip(&gs.vector).map(|(a, b)| a * b).sum();
        let sign = dot.signum();
        let dx = vecs[imin]
            .iter()
            .zip(&gs.vector)
            .map(|(a, b)| (sign * a - b).abs())
            .fold(0.0, f64::max);
        worst_val = worst_val.max(dv);
        worst_vec = worst_vec.max(dx);
        check(dv <= 1e-9 && dx <= 1e-9, format!("N = {n}, l1 = {l1}, l2 = {l2}: dvalue {dv:e}, dvector {dx:e}"))?;
    }
    Ok(format!("max eigenvalue diff {worst_val:.1e}, eigenvector diff {worst_vec:.1e}"))
}

fn c10_fuzzing() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut min_eta = f64::INFINITY;
    let mut checked = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=24);
        let taps: Vec<Complex64> = (0..len)
            .map(|_| {
                // sprinkle exact zeros to exercise sparse supports
                if rng.gen_bool(0.1) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }
            })
            .collect();
        let offset = rng.gen_range(-50..50);
        let Ok(x) = Sequence::new(taps, offset) else { continue };
        let r = SpreadReport::of(&x);
        if x.nonzero_count() > 1 && r.tau.norm() > 0.0 {
            let eta = r.eta_p.ok_or("eta_p missing")?;
            min_eta = min_eta.min(eta);
            checked += 1;
            check(eta >= 0.25 - 1e-9, format!("eta_p = {eta} for {x:?}"))?;
        }
        let m = SpreadReport::of(&x.modulus());
        check(
            (m.delta_n2 - r.delta_n2).abs() <= 1e-9 * r.delta_n2.max(1.0),
            "modulus changed the time spread",
        )?;
        check(
            m.tau.norm() >= r.tau.norm() - 1e-12 && m.delta_wp2 <= r.delta_wp2 * (1.0 + 1e-9) + 1e-12,
            format!("modulus widened the spectrum: {} > {}", m.delta_wp2, r.delta_wp2),
        )?;
        let shift = rng.gen_range(-1000..1000);
        let s = SpreadReport::of(&x.shift(shift));
        let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9 * a.abs().max(1.0);
        check(
            close(s.delta_n2, r.delta_n2)
                && close(s.delta_wp2, r.delta_wp2)
                && (s.tau - r.tau).norm() <= 1e-12
                && close(s.mu_n, r.mu_n + shift as f64),
            format!("shift by {shift} changed spreads"),
        )?;
    }
    let mut worst = 0.0f64;
    for eps in log_grid(0.01, 0.7, 20) {
        let s = windows::three_tap(eps).map_err(|e| e.to_string())?;
        let measured = spreads::tf_spread_periodic(&s).map_err(|e| e.to_string())?;
        let d = (measured - windows::three_tap_eta(eps)).abs();
        worst = worst.max(d);
        check(d <= 1e-12, format!("eps = {eps}: {measured} vs closed form"))?;
    }
    Ok(format!(
        "{checked} eta_p checks, min {min_eta:.6}; three-tap closed form within {worst:.1e}"
    ))
}

fn c11_windows() -> Outcome {
    // (family, param, delta_wp2, eta_p, taps) for every scanned point with finite spreads
    let mut usable: Vec<(String, f64, f64, f64, usize)> = Vec::new();
    for family in WindowFamily::defaults() {
        for p in windows::spread_scan(&family) {
            let Ok(r) = &p.report else { continue };
            let Some(eta) = r.eta_p else { continue };
            if !r.delta_wp2.is_finite() {
                continue;
            }
            let taps = family.generate(p.param).map_err(|e| e.to_string())?.len();
            usable.push((p.family, p.param, r.delta_wp2, eta, taps));
        }
    }
    let margins = usable
        .par_iter()
        .map(|(family, param, wp2, eta, taps)| {
            let d = designer::design_auto_taps(*wp2, (*taps).max(201), designer::DEFAULT_TOL)
                .map_err(|e| format!("{family} {param}: {e}"))?;
            Ok((family.clone(), *param, eta - d.eta_p))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let (family, param, worst) = margins
        .iter()
        .cloned()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .ok_or("no usable window points")?;
    check(worst >= -1e-6, format!("{family} at {param} lies {worst:e} below the optimum"))?;

    let (_, g) = windows::gaussian_with_spread(0.01).map_err(|e| e.to_string())?;
    let eta_g = spreads::tf_spread_periodic(&g).map_err(|e| e.to_string())?;
    let opt = designer::design_auto_taps(spreads::periodic_freq_spread(&g), 201, designer::DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    let gap = eta_g - opt.eta_p;
    check((0.0..=0.01).contains(&gap), format!("Gaussian gap {gap}"))?;
    Ok(format!(
        "{} window points, tightest margin {worst:.2e} ({family} {param}); Gaussian gap {gap:.2e}",
        usable.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("example design (sigma2 = 0.1, 201 taps)", c1_example_design),
        ("example analysis of (1, 7, 2)", c2_example_analysis),
        ("optimality certificates on 20 designs", c3_certificates),
        ("bound sandwich", c4_sandwich),
        ("time spread decreases with sigma2", c5_monotone),
        ("asymptotes", c6_asymptotes),
        ("Mathieu cross-checks", c7_mathieu),
        ("spectrum equals scaled ce0", c8_spectrum),
        ("tridiagonal vs dense Jacobi", c9_jacobi_oracle),
        ("property fuzzing", c10_fuzzing),
        ("window dominance", c11_windows),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
