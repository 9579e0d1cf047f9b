//! One function per subcommand, each producing a [`Table`].

use cw_glt_core::coherent::berezin_deviation;
use cw_glt_core::curie_weiss::{cw_restricted, ModelParams, TwiceSpin};
use cw_glt_core::distribution::{
    compare_quantiles, empirical_functional, schatten_zero_test, SchattenExponent,
};
use cw_glt_core::eigen::tridiag_eigenvalues;
use cw_glt_core::extremal::{restricted_extrema, ConvergenceTable, GapPolicy, DEFAULT_SIZES};
use cw_glt_core::full_model::{full_cw_spectrum, nu_measure};
use cw_glt_core::symbol::{cw_symbol, rearrange_symbol, symbol_extrema, SeparableSymbol};

use crate::args::{Functional, GridArgs, Mode};
use crate::error::{CliError, CliResult};
use crate::io::{fmt_f64, Cell, Table};

/// Smallest symbol grid accepted on the command line.
pub const MIN_GRID: usize = 64;
/// Coarse grid and refinement steps used to locate the symbol extrema.
pub const EXTREMA_GRID: (usize, usize) = (256, 256);
pub const EXTREMA_REFINE: usize = 60;

pub fn params(gamma: f64, bfield: f64) -> CliResult<ModelParams> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(CliError::usage(format!("gamma must be > 0, got {gamma}")));
    }
    if !bfield.is_finite() {
        return Err(CliError::usage(format!(
            "bfield must be finite, got {bfield}"
        )));
    }
    Ok(ModelParams::new(gamma, bfield)?)
}

pub fn check_tol(tol: f64) -> CliResult<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::usage(format!("tol must be > 0, got {tol}")));
    }
    Ok(())
}

fn check_size(size: u32) -> CliResult<()> {
    if size == 0 {
        return Err(CliError::usage("size must be ≥ 1"));
    }
    Ok(())
}

fn check_grid(grid: &GridArgs) -> CliResult<()> {
    if grid.grid_nx < MIN_GRID || grid.grid_ntheta < MIN_GRID {
        return Err(CliError::usage(format!(
            "grid {}x{} is below the minimum {MIN_GRID}x{MIN_GRID}",
            grid.grid_nx, grid.grid_ntheta
        )));
    }
    Ok(())
}

pub fn spectrum(p: ModelParams, mode: Mode, size: u32, tol: f64) -> CliResult<Table> {
    check_size(size)?;
    let mut t = Table::new(vec!["index", "eigenvalue", "weight"]);
    let pairs: Vec<(f64, f64)> = match mode {
        Mode::Restricted => {
            let eig = tridiag_eigenvalues(&cw_restricted(size, p)?, tol)?;
            let w = 1.0 / eig.len() as f64;
            eig.values.iter().map(|&v| (v, w)).collect()
        }
        Mode::Full => full_cw_spectrum(size, p)?.pairs().to_vec(),
    };
    for (i, (v, w)) in pairs.into_iter().enumerate() {
        t.push(vec![
            Cell::Int(i as u64 + 1),
            Cell::Float(v),
            Cell::Float(w),
        ]);
    }
    Ok(t)
}

pub fn rearrange(
    p: ModelParams,
    grid: &GridArgs,
    points: Option<usize>,
    constant: Option<f64>,
) -> CliResult<Table> {
    check_grid(grid)?;
    let symbol = match constant {
        Some(c) if !c.is_finite() => return Err(CliError::usage("constant symbol must be finite")),
        Some(c) => SeparableSymbol::constant(c),
        None => cw_symbol(p),
    };
    let psi = rearrange_symbol(&symbol, grid.grid_nx, grid.grid_ntheta)?;
    let mut t = Table::new(vec!["t", "psi"]);
    match points {
        Some(0) => return Err(CliError::usage("points must be ≥ 1")),
        Some(k) => {
            for i in 1..=k {
                let s = i as f64 / (k + 1) as f64;
                t.push(vec![Cell::Float(s), Cell::Float(psi.quantile(s)?)]);
            }
        }
        None => {
            let values = psi.sorted_values();
            let last = (values.len() - 1).max(1) as f64;
            for (i, &v) in values.iter().enumerate() {
                t.push(vec![Cell::Float(i as f64 / last), Cell::Float(v)]);
            }
        }
    }
    t.note("symbol", symbol.description());
    t.note("grid", format!("{}x{}", grid.grid_nx, grid.grid_ntheta));
    Ok(t)
}

pub fn compare(p: ModelParams, size: u32, grid: &GridArgs, tol: f64) -> CliResult<Table> {
    check_size(size)?;
    check_grid(grid)?;
    let eig = tridiag_eigenvalues(&cw_restricted(size, p)?, tol)?;
    let psi = rearrange_symbol(&cw_symbol(p), grid.grid_nx, grid.grid_ntheta)?;
    let r = compare_quantiles(&eig.values, &psi)?;
    let mut t = Table::new(vec![
        "sup_quantile_gap",
        "mean_abs_gap",
        "ks_distance",
        "n",
        "grid",
    ]);
    t.push(vec![
        Cell::Float(r.sup_quantile_gap),
        Cell::Float(r.mean_abs_gap),
        Cell::Float(r.ks_distance),
        Cell::Int(eig.len() as u64),
        Cell::Grid(grid.grid_nx, grid.grid_ntheta),
    ]);
    Ok(t)
}

fn join(values: impl Iterator<Item = Option<f64>>) -> String {
    values
        .map(|v| v.map(fmt_f64).unwrap_or_default())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn extremal(
    p: ModelParams,
    sizes: &[usize],
    min_ref: Option<f64>,
    max_ref: Option<f64>,
    abs_gaps: bool,
) -> CliResult<Table> {
    let sizes = if sizes.is_empty() {
        &DEFAULT_SIZES[..]
    } else {
        sizes
    };
    if let Some(&s) = sizes.iter().find(|&&s| s < 2) {
        return Err(CliError::usage(format!("matrix size {s} is below 2")));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::usage("sizes must be strictly ascending"));
    }
    let ext = symbol_extrema(&cw_symbol(p), EXTREMA_GRID, EXTREMA_REFINE)?;
    let m = min_ref.unwrap_or(ext.min);
    let big_m = max_ref.unwrap_or(ext.max);
    if m > big_m {
        return Err(CliError::usage(format!(
            "min-ref {m} exceeds max-ref {big_m}"
        )));
    }
    let policy = if abs_gaps {
        GapPolicy::Absolute
    } else {
        GapPolicy::Strict
    };
    let extrema = restricted_extrema(p, sizes)?;
    let table = ConvergenceTable::from_extrema_with(&extrema, m, big_m, policy)?;

    let mut t = Table::new(vec![
        "size",
        "lambda_min",
        "tau",
        "alpha",
        "lambda_max",
        "tau_hat",
        "beta",
    ]);
    let opt = |v: Option<f64>| v.map_or(Cell::Empty, Cell::Float);
    for r in &table.rows {
        t.push(vec![
            Cell::Int(r.size as u64),
            Cell::Float(r.lambda_min),
            Cell::Float(r.tau),
            opt(r.alpha),
            Cell::Float(r.lambda_max),
            Cell::Float(r.tau_hat),
            opt(r.beta),
        ]);
    }
    let source = |given: Option<f64>| {
        if given.is_some() {
            "flag"
        } else {
            "symbol extremum"
        }
    };
    t.note("m_used", fmt_f64(m));
    t.note("m_source", source(min_ref));
    t.note("M_used", fmt_f64(big_m));
    t.note("M_source", source(max_ref));
    t.note("gap_policy", if abs_gaps { "absolute" } else { "strict" });
    t.note("log_base", "10");
    if let Some((p_min, p_max)) = table.fitted_exponents {
        t.note("p_min", fmt_f64(p_min));
        t.note("p_max", fmt_f64(p_max));
    }
    if let Some(given) = max_ref.filter(|&v| v != ext.max) {
        t.note("analytic_M", fmt_f64(ext.max));
        match ConvergenceTable::from_extrema_with(&extrema, m, ext.max, policy) {
            Ok(alt) => {
                t.note("beta_analytic_M", join(alt.rows.iter().map(|r| r.beta)));
                t.note(
                    "tau_hat_analytic_M",
                    join(alt.rows.iter().map(|r| Some(r.tau_hat))),
                );
            }
            Err(e) => t.note("beta_analytic_M", format!("unavailable: {e}")),
        }
        t.note(
            "note",
            format!("beta column uses M = {given} from --max-ref; beta_analytic_M uses the symbol maximum"),
        );
    }
    Ok(t)
}

pub fn zerodist(p: ModelParams, sizes: &[u32], functional: Functional) -> CliResult<Table> {
    let two = SchattenExponent::new(2.0)?;
    let mut t = Table::new(vec!["N", "schatten2", "mean_F2"]);
    for &n in sizes {
        check_size(n)?;
        let s = full_cw_spectrum(n, p)?;
        let mean = match functional {
            Functional::Square => empirical_functional(&s, |y| y * y),
            Functional::One => empirical_functional(&s, |_| 1.0),
        };
        t.push(vec![
            Cell::Int(n as u64),
            Cell::Float(schatten_zero_test(&s, two)),
            Cell::Float(mean),
        ]);
    }
    t.note(
        "functional",
        match functional {
            Functional::Square => "F(y)=y^2",
            Functional::One => "F(y)=1",
        },
    );
    Ok(t)
}

pub fn nu(size: u32) -> CliResult<Table> {
    check_size(size)?;
    let nu = nu_measure(size)?;
    let mut t = Table::new(vec!["u", "mass"]);
    for &(u, mass) in nu.atoms() {
        t.push(vec![Cell::Float(u), Cell::Float(mass)]);
    }
    t.note("total_mass", fmt_f64(nu.total_mass()));
    Ok(t)
}

pub fn berezin(p: ModelParams, sizes: &[u32], sphere: (usize, usize)) -> CliResult<Table> {
    if sphere.0 < 2 || sphere.1 < 1 {
        return Err(CliError::usage(
            "sphere grid needs at least 2 polar and 1 azimuthal nodes",
        ));
    }
    let mut t = Table::new(vec!["N", "J", "sup_deviation", "N_times_deviation"]);
    for &n in sizes {
        check_size(n)?;
        let dev = berezin_deviation(n, TwiceSpin(n), p, sphere)?;
        t.push(vec![
            Cell::Int(n as u64),
            Cell::Float(n as f64 / 2.0),
            Cell::Float(dev),
            Cell::Float(n as f64 * dev),
        ]);
    }
    t.note("sphere_grid", format!("{}x{}", sphere.0, sphere.1));
    Ok(t)
}
