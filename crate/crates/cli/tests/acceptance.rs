//! Acceptance suite: one `PASS`/`FAIL` line per criterion, with the measured
//! values behind it, and a closing count of failures.
//!
//! Run alone with `cargo test -p cw-glt --test acceptance`. Failures make the
//! process exit non-zero only when `CW_GLT_ACCEPTANCE_STRICT=1`, because cargo
//! stops at the first failing test binary and would skip the rest of the
//! workspace suite.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cw_glt::fixtures::{
    Fixtures, ADHERENCE_GRID, ADHERENCE_SIZES, PERTURBATION_RANK, PERTURBATION_SEED,
    PERTURBATION_SITES, SPHERE_GRID,
};
use cw_glt_core::coherent::{berezin_deviation, resolution_identity_check, CoherentState};
use cw_glt_core::curie_weiss::{cw_restricted, dense_cw_oracle, ModelParams, TwiceSpin};
use cw_glt_core::distribution::{
    compare_quantiles, empirical_functional, ks_distance_clustered, perturbation_robustness,
    quantile_sup_distance, schatten_zero_test, SchattenExponent, WeightedSpectrum,
};
use cw_glt_core::eigen::{dense_sym_eigenvalues, tridiag_eigenvalues, DEFAULT_TOL};
use cw_glt_core::extremal::{
    restricted_extrema, ConvergenceTable, Extrema, GapPolicy, DEFAULT_SIZES,
};
use cw_glt_core::full_model::{chernoff_bound, full_cw_spectrum, nu_measure};
use cw_glt_core::symbol::{cw_symbol, rearrange_symbol};
use cw_glt_core::SymTridiagonal;

/// Four-decimal rounding of reference eigenvalues.
const REFERENCE_VALUE_TOL: f64 = 5e-5;
/// Tabulated log-ratios.
const REFERENCE_RATIO_TOL: f64 = 2e-3;
const REFERENCE_TIME_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(30);
const TRACE_TOL: f64 = 1e-10;
const TRACE_SQ_TOL: f64 = 1e-9;
const MASS_TOL: f64 = 1e-10;
const COHERENT_TOL: f64 = 1e-10;
const RESOLUTION_TOL: f64 = 1e-10;
const ADHERENCE_LIMIT: f64 = 0.05;
const EIGEN_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

struct Suite {
    failed: Vec<&'static str>,
}

impl Suite {
    fn run(&mut self, name: &'static str, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2} s]"),
            Err(detail) => {
                println!("FAIL {name}: {detail} [{secs:.2} s]");
                self.failed.push(name);
            }
        }
    }
}

fn unit(b: f64) -> ModelParams {
    ModelParams::new(1.0, b).expect("valid parameters")
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

fn within(measured: &[f64], expected: &[f64], tol: f64) -> bool {
    measured.len() == expected.len()
        && measured
            .iter()
            .zip(expected)
            .all(|(a, b)| (a - b).abs() <= tol)
}

/// Which side of the spectrum a reference column describes.
#[derive(Clone, Copy)]
enum Side {
    Min,
    Max,
}

/// Gaps and log-ratios of one side of the spectrum. A gap that is not
/// positive makes the ratios meaningless and is reported instead.
fn side_ratios(
    extrema: &[Extrema],
    side: Side,
    bounds: (f64, f64),
) -> Result<(Vec<f64>, Vec<f64>), String> {
    let (m, big_m) = bounds;
    let t = ConvergenceTable::from_extrema_with(extrema, m, big_m, GapPolicy::Absolute)
        .map_err(|e| e.to_string())?;
    let mut gaps = Vec::new();
    let mut ratios = Vec::new();
    for (i, (row, ex)) in t.rows.iter().zip(extrema).enumerate() {
        let (gap, ratio) = match side {
            Side::Min => (ex.lambda_min - m, row.alpha),
            Side::Max => (big_m - ex.lambda_max, row.beta),
        };
        if gap <= 0.0 {
            return Err(format!(
                "gap {gap:.6} is not positive in row {} (size {})",
                i + 1,
                ex.size
            ));
        }
        gaps.push(gap);
        ratios.extend(ratio);
    }
    Ok((gaps, ratios))
}

/// Compares one reference column and its log-ratios.
fn reference_check(
    extrema: &[Extrema],
    side: Side,
    bounds: (f64, f64),
    values: &[f64],
    ratios: &[f64],
) -> Outcome {
    let measured: Vec<f64> = extrema
        .iter()
        .map(|e| match side {
            Side::Min => e.lambda_min,
            Side::Max => e.lambda_max,
        })
        .collect();
    let (ratio_ok, ratio_text) = match side_ratios(extrema, side, bounds) {
        Ok((_, r)) => (within(&r, ratios, REFERENCE_RATIO_TOL), fmt_list(&r)),
        Err(e) => (false, format!("none ({e})")),
    };
    let values_ok = within(&measured, values, REFERENCE_VALUE_TOL);
    let detail = format!(
        "values {} vs {}; ratios {} vs {}",
        fmt_list(&measured),
        fmt_list(values),
        ratio_text,
        fmt_list(ratios)
    );
    if values_ok && ratio_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed_extrema(b: f64) -> Result<(Vec<Extrema>, Duration), String> {
    let start = Instant::now();
    let ex = restricted_extrema(unit(b), &DEFAULT_SIZES).map_err(|e| e.to_string())?;
    Ok((ex, start.elapsed()))
}

fn with_time_limit(outcome: Outcome, elapsed: Duration) -> Outcome {
    if elapsed > REFERENCE_TIME_LIMIT {
        let msg = format!("took {elapsed:?}, limit {REFERENCE_TIME_LIMIT:?}");
        return Err(match outcome {
            Ok(d) | Err(d) => format!("{d}; {msg}"),
        });
    }
    outcome
}

fn extremal_min_b1() -> Outcome {
    let (ex, t) = timed_extrema(1.0)?;
    let out = reference_check(
        &ex,
        Side::Min,
        (-1.0, 1.0),
        &[-0.9936, -0.9975, -0.9990, -0.9996],
        &[0.4082, 0.3979, 0.3979],
    );
    with_time_limit(out, t)
}

// 0.3010 is a reference value that happens to be close to log10(2).
#[allow(clippy::approx_constant)]
fn extremal_max_b1() -> Outcome {
    let (ex, t) = timed_extrema(1.0)?;
    let out = reference_check(
        &ex,
        Side::Max,
        (-1.0, 1.0),
        &[0.9654, 0.9825, 0.9912, 0.9956],
        &[0.2960, 0.2985, 0.3010],
    );
    with_time_limit(out, t)
}

fn extremal_min_b05() -> Outcome {
    let (ex, t) = timed_extrema(0.5)?;
    let out = reference_check(
        &ex,
        Side::Min,
        (-0.6241, 0.4982),
        &[-0.6007, -0.6137, -0.6195, -0.6223],
        &[0.3521, 0.3542, 0.4074],
    );
    with_time_limit(out, t)
}

fn extremal_max_b05() -> Outcome {
    let (ex, t) = timed_extrema(0.5)?;
    let out = reference_check(
        &ex,
        Side::Max,
        (-0.6241, 0.4982),
        &[0.4789, 0.4893, 0.4946, 0.4973],
        &[0.3361, 0.3930, 0.4010],
    );
    let analytic = match side_ratios(&ex, Side::Max, (-0.625, 0.5)) {
        Ok((gaps, beta)) => format!(
            "M=0.5 run: tau_hat {} beta {}",
            fmt_list(&gaps),
            fmt_list(&beta)
        ),
        Err(e) => format!("M=0.5 run: {e}"),
    };
    let out = match out {
        Ok(d) => Ok(format!("{d}; {analytic}")),
        Err(d) => Err(format!("{d}; {analytic}")),
    };
    with_time_limit(out, t)
}

fn block_dense_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst_ks: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for n in 1..=10 {
        for b in [0.0, 0.5, 1.0] {
            let p = unit(b);
            let sectors = full_cw_spectrum(n, p).map_err(|e| e.to_string())?;
            let dense = dense_cw_oracle(n, p)
                .and_then(|m| dense_sym_eigenvalues(&m, DEFAULT_TOL))
                .and_then(|e| WeightedSpectrum::from_eigenvalues(&e))
                .map_err(|e| e.to_string())?;
            worst_ks = worst_ks.max(ks_distance_clustered(&sectors, &dense, ORACLE_TOL));
            worst_q = worst_q.max(quantile_sup_distance(&sectors, &dense));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "max KS {worst_ks:.3e}, max quantile gap {worst_q:.3e} over N=1..10, B in {{0, 0.5, 1}}"
    );
    if worst_ks <= ORACLE_TOL && worst_q <= ORACLE_TOL && elapsed <= ORACLE_TIME_LIMIT {
        Ok(detail)
    } else {
        Err(format!("{detail}; took {elapsed:?}"))
    }
}

fn zero_distribution() -> Outcome {
    let p = unit(1.0);
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [4u32, 10, 50, 200] {
        let s = full_cw_spectrum(n, p).map_err(|e| e.to_string())?;
        let nf = n as f64;
        let tr = empirical_functional(&s, |y| y);
        let tr2 = empirical_functional(&s, |y| y * y);
        let want2 = 0.25 * (3.0 * nf * nf - 2.0 * nf) / nf.powi(4) + 1.0 / nf;
        let e1 = (tr + 1.0 / (2.0 * nf)).abs();
        let e2 = (tr2 - want2).abs();
        ok &= e1 <= TRACE_TOL && e2 <= TRACE_SQ_TOL;
        notes.push(format!(
            "N={n}: tr err {e1:.1e}, tr^2 {tr2:.6} err {e2:.1e}"
        ));
    }
    let mut schatten = Vec::new();
    for n in [25u32, 50, 100, 200] {
        let s = full_cw_spectrum(n, p).map_err(|e| e.to_string())?;
        let two = SchattenExponent::new(2.0).map_err(|e| e.to_string())?;
        schatten.push(schatten_zero_test(&s, two));
    }
    let decreasing = schatten.windows(2).all(|w| w[1] < w[0]);
    ok &= decreasing;
    let detail = format!("{}; schatten-2 {}", notes.join("; "), fmt_list(&schatten));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn nu_chernoff() -> Outcome {
    let mut worst_mass: f64 = 0.0;
    for n in 1..=2000u32 {
        let nu = nu_measure(n).map_err(|e| e.to_string())?;
        worst_mass = worst_mass.max((nu.total_mass() - 1.0).abs());
    }
    let mut violations = Vec::new();
    let mut tightest = f64::INFINITY;
    for n in [50u32, 100, 200, 500] {
        let nu = nu_measure(n).map_err(|e| e.to_string())?;
        for eps in [0.2, 0.4, 0.6] {
            let mass = nu.interval_mass(eps, 1.0);
            let bound = chernoff_bound(n, eps).map_err(|e| e.to_string())?;
            tightest = tightest.min(bound - mass);
            if mass > bound {
                violations.push(format!("N={n} eps={eps}: {mass:e} > {bound:e}"));
            }
        }
    }
    let detail =
        format!("max |mass-1| {worst_mass:.1e} for N<=2000; smallest bound slack {tightest:.3e}");
    if worst_mass <= MASS_TOL && violations.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", violations.join("; ")))
    }
}

fn coherent_suite() -> Outcome {
    let committed = Fixtures::committed().map_err(|e| e.to_string())?;
    let mut worst_identity: f64 = 0.0;
    for twice in [1u32, 2, 10, 100] {
        let j = twice as f64 / 2.0;
        for i in 0..=12 {
            let theta = PI * i as f64 / 12.0;
            for k in 0..8 {
                let phi = 2.0 * PI * k as f64 / 8.0;
                let c =
                    CoherentState::new(TwiceSpin(twice), theta, phi).map_err(|e| e.to_string())?;
                let errs = [
                    (c.norm() - 1.0).abs(),
                    (c.expect_j3() - j * theta.cos()).abs(),
                    (c.expect_j1() - j * theta.sin() * phi.cos()).abs(),
                ];
                worst_identity = errs.iter().fold(worst_identity, |a, &b| a.max(b));
            }
        }
    }
    let mut worst_resolution: f64 = 0.0;
    for twice in 1..=20u32 {
        let nt = twice as usize + 2;
        let np = 2 * twice as usize + 2;
        let dev = resolution_identity_check(TwiceSpin(twice), nt, np).map_err(|e| e.to_string())?;
        worst_resolution = worst_resolution.max(dev);
    }
    let bound = committed.berezin.bound;
    let mut scaled = Vec::new();
    for n in committed.berezin.sizes.iter().copied() {
        let dev = berezin_deviation(n, TwiceSpin(n), unit(1.0), SPHERE_GRID)
            .map_err(|e| e.to_string())?;
        scaled.push(n as f64 * dev);
    }
    let berezin_ok = scaled.iter().all(|&v| v <= bound);
    let detail = format!(
        "identities {worst_identity:.1e} for J in {{1/2, 1, 5, 50}}; resolution {worst_resolution:.1e} for J<=10; \
         N*dev {} vs fixture {bound:.10}",
        fmt_list(&scaled)
    );
    if worst_identity <= COHERENT_TOL && worst_resolution <= RESOLUTION_TOL && berezin_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn adherence() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for b in [1.0, 0.5] {
        let p = unit(b);
        let psi = rearrange_symbol(&cw_symbol(p), ADHERENCE_GRID.0, ADHERENCE_GRID.1)
            .map_err(|e| e.to_string())?;
        let mut gaps = Vec::new();
        for n in ADHERENCE_SIZES {
            let eig = cw_restricted(n, p)
                .and_then(|m| tridiag_eigenvalues(&m, DEFAULT_TOL))
                .map_err(|e| e.to_string())?;
            let report = compare_quantiles(&eig.values, &psi).map_err(|e| e.to_string())?;
            gaps.push(report.sup_quantile_gap);
        }
        let (small, large) = (gaps[0], gaps[gaps.len() - 1]);
        ok &= large <= ADHERENCE_LIMIT && large < small;
        parts.push(format!("B={b}: gap N=40 {small:.5}, N=320 {large:.5}"));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn eigensolver_ground_truth() -> Outcome {
    let n = 100;
    let m = SymTridiagonal::new(vec![0.0; n], vec![1.0; n - 1]).map_err(|e| e.to_string())?;
    let eig = tridiag_eigenvalues(&m, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let mut exact: Vec<f64> = (1..=n)
        .map(|k| 2.0 * (k as f64 * PI / (n as f64 + 1.0)).cos())
        .collect();
    exact.sort_by(f64::total_cmp);
    let err = eig
        .values
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let detail = format!("max error {err:.2e}");
    if err <= EIGEN_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn perturbation() -> Outcome {
    let m = cw_restricted(PERTURBATION_SITES, unit(1.0)).map_err(|e| e.to_string())?;
    let r = perturbation_robustness(&m, PERTURBATION_RANK, PERTURBATION_SEED)
        .map_err(|e| e.to_string())?;
    let bound = PERTURBATION_RANK as f64 / m.dim() as f64;
    let detail = format!(
        "KS {:.6} vs {bound:.6} (rank {PERTURBATION_RANK}, seed {PERTURBATION_SEED})",
        r.ks_distance
    );
    if r.ks_distance <= bound {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: Vec::new() };
    suite.run("extremal_min_gamma1_b1", extremal_min_b1);
    suite.run("extremal_max_gamma1_b1", extremal_max_b1);
    suite.run("extremal_min_gamma1_b05", extremal_min_b05);
    suite.run("extremal_max_gamma1_b05", extremal_max_b05);
    suite.run("block_dense_oracle", block_dense_oracle);
    suite.run("zero_distribution", zero_distribution);
    suite.run("nu_measure_chernoff", nu_chernoff);
    suite.run("coherent_states", coherent_suite);
    suite.run("distribution_adherence", adherence);
    suite.run("eigensolver_ground_truth", eigensolver_ground_truth);
    suite.run("perturbation_robustness", perturbation);
    if suite.failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {} failing: {}",
            suite.failed.len(),
            suite.failed.join(", ")
        );
        if std::env::var("CW_GLT_ACCEPTANCE_STRICT").as_deref() == Ok("1") {
            ExitCode::FAILURE
        } else {
            ExitCode::SUCCESS
        }
    }
}
