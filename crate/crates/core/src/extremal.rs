//! Convergence of the extreme eigenvalues of the restricted model towards
//! the extrema of its symbol.

use alloc::vec::Vec;

use crate::curie_weiss::{cw_restricted, ModelParams};
use crate::eigen::{tridiag_eigenvalues, DEFAULT_TOL};
use crate::{Error, Result};

/// Matrix sizes `N + 1 = 40·2^j`, `j = 0..3`.
pub const DEFAULT_SIZES: [usize; 4] = [40, 80, 160, 320];

/// Extreme eigenvalues of the restricted model of matrix size `size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub size: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub size: usize,
    pub lambda_min: f64,
    /// `λ_min - m`.
    pub tau: f64,
    /// `log₁₀(τ_j / τ_{j+1})`; absent on the last row.
    pub alpha: Option<f64>,
    pub lambda_max: f64,
    /// `M - λ_max`.
    pub tau_hat: f64,
    /// `log₁₀(τ̂_j / τ̂_{j+1})`; absent on the last row.
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub m_used: f64,
    pub big_m_used: f64,
    /// Mean decay exponents `(p_min, p_max)` with `τ ~ size^{-p}`: each
    /// consecutive pair gives `α_j / log₁₀(size_{j+1}/size_j)`, which is
    /// `α_j / log₁₀ 2` on a doubling ladder. `None` for a single row.
    pub fitted_exponents: Option<(f64, f64)>,
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument {
            name: "sizes",
            reason: "no sizes given".into(),
        });
    }
    if let Some(&s) = sizes.iter().find(|&&s| s < 2) {
        return Err(Error::InvalidArgument {
            name: "sizes",
            reason: alloc::format!("size {s} is below 2"),
        });
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument {
            name: "sizes",
            reason: "sizes must be strictly ascending".into(),
        });
    }
    Ok(())
}

/// `λ_min` and `λ_max` of `cw_restricted(size - 1)` for each size.
pub fn restricted_extrema(params: ModelParams, sizes: &[usize]) -> Result<Vec<Extrema>> {
    check_sizes(sizes)?;
    sizes
        .iter()
        .map(|&size| {
            let eig = tridiag_eigenvalues(&cw_restricted((size - 1) as u32, params)?, DEFAULT_TOL)?;
            Ok(Extrema {
                size,
                lambda_min: eig.min(),
                lambda_max: eig.max(),
            })
        })
        .collect()
}

/// How signed gaps enter the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapPolicy {
    /// `τ = λ_min - m` and `τ̂ = M - λ_max` must be positive.
    #[default]
    Strict,
    /// `τ = |λ_min - m|`, `τ̂ = |M - λ_max|`; only exact zeros are refused.
    Absolute,
}

impl ConvergenceTable {
    /// Builds the table from measured extrema and reference values `m ≤ M`.
    /// A gap `τ ≤ 0` or `τ̂ ≤ 0` is an error naming the row.
    pub fn from_extrema(extrema: &[Extrema], m_used: f64, big_m_used: f64) -> Result<Self> {
        Self::from_extrema_with(extrema, m_used, big_m_used, GapPolicy::Strict)
    }

    pub fn from_extrema_with(
        extrema: &[Extrema],
        m_used: f64,
        big_m_used: f64,
        policy: GapPolicy,
    ) -> Result<Self> {
        if !(m_used.is_finite() && big_m_used.is_finite() && m_used <= big_m_used) {
            return Err(Error::InvalidArgument {
                name: "m, M",
                reason: alloc::format!("need finite m ≤ M, got m = {m_used}, M = {big_m_used}"),
            });
        }
        let sizes: Vec<usize> = extrema.iter().map(|e| e.size).collect();
        check_sizes(&sizes)?;
        let mut rows = Vec::with_capacity(extrema.len());
        for (row, e) in extrema.iter().enumerate() {
            let (mut tau, mut tau_hat) = (e.lambda_min - m_used, big_m_used - e.lambda_max);
            if policy == GapPolicy::Absolute {
                tau = libm::fabs(tau);
                tau_hat = libm::fabs(tau_hat);
            }
            for (column, value) in [("tau", tau), ("tau_hat", tau_hat)] {
                if value <= 0.0 {
                    return Err(Error::NonPositiveGap {
                        row: row + 1,
                        size: e.size,
                        column,
                        value,
                    });
                }
            }
            rows.push(ConvergenceRow {
                size: e.size,
                lambda_min: e.lambda_min,
                tau,
                alpha: None,
                lambda_max: e.lambda_max,
                tau_hat,
                beta: None,
            });
        }
        let mut exps = (0.0, 0.0);
        for j in 0..rows.len().saturating_sub(1) {
            let alpha = libm::log10(rows[j].tau / rows[j + 1].tau);
            let beta = libm::log10(rows[j].tau_hat / rows[j + 1].tau_hat);
            let step = libm::log10(rows[j + 1].size as f64 / rows[j].size as f64);
            rows[j].alpha = Some(alpha);
            rows[j].beta = Some(beta);
            exps.0 += alpha / step;
            exps.1 += beta / step;
        }
        let pairs = rows.len() - 1;
        let fitted_exponents = (pairs > 0).then(|| (exps.0 / pairs as f64, exps.1 / pairs as f64));
        Ok(Self {
            rows,
            m_used,
            big_m_used,
            fitted_exponents,
        })
    }
}

/// [`restricted_extrema`] followed by [`ConvergenceTable::from_extrema`].
pub fn extremal_convergence(
    params: ModelParams,
    sizes: &[usize],
    m_used: f64,
    big_m_used: f64,
) -> Result<ConvergenceTable> {
    ConvergenceTable::from_extrema(&restricted_extrema(params, sizes)?, m_used, big_m_used)
}
