//! Exact spectra of the full `2^N`-dimensional model through its spin
//! sectors, the sector measure `ν_N` and its Chernoff bound.

use alloc::vec::Vec;

use crate::curie_weiss::{sector_list, spin_block, ModelParams, SpinSectorSpec};
use crate::distribution::{empirical_functional, WeightedSpectrum};
use crate::eigen::{tridiag_eigenvalues, EigenResult, DEFAULT_TOL};
use crate::{Error, Result};

/// Largest `N` accepted by [`full_cw_spectrum`]; the cost is `Σ_J (2J+1)²`.
pub const FULL_MODEL_MAX_SITES: u32 = 2000;

fn check_full_sites(n_sites: u32) -> Result<()> {
    if n_sites > FULL_MODEL_MAX_SITES {
        return Err(Error::SizeLimit {
            what: "full model sites",
            limit: FULL_MODEL_MAX_SITES as usize,
            requested: n_sites as usize,
        });
    }
    Ok(())
}

/// Eigenvalues of every sector block, ascending in `J`.
pub fn sector_spectra(
    n_sites: u32,
    params: ModelParams,
) -> Result<Vec<(SpinSectorSpec, EigenResult)>> {
    check_full_sites(n_sites)?;
    sector_list(n_sites)?
        .into_iter()
        .map(|s| {
            Ok((
                s,
                tridiag_eigenvalues(&spin_block(n_sites, s.spin, params)?, DEFAULT_TOL)?,
            ))
        })
        .collect()
}

/// Spectrum of the full model with the weight `C(J, N)/2^N` on each eigenvalue
/// of sector `J`. Weights are formed in log space and normalized at the end.
pub fn full_cw_spectrum(n_sites: u32, params: ModelParams) -> Result<WeightedSpectrum> {
    let sectors = sector_spectra(n_sites, params)?;
    let log_max = sectors
        .iter()
        .map(|(s, _)| s.log_multiplicity)
        .fold(f64::NEG_INFINITY, f64::max);
    let total = crate::neumaier_sum(
        sectors
            .iter()
            .map(|(s, _)| s.dim as f64 * libm::exp(s.log_multiplicity - log_max)),
    );
    let mut pairs = Vec::with_capacity(sectors.iter().map(|(s, _)| s.dim).sum());
    for (s, eig) in &sectors {
        let w = libm::exp(s.log_multiplicity - log_max) / total;
        pairs.extend(eig.values.iter().map(|&v| (v, w)));
    }
    WeightedSpectrum::new(pairs, n_sites as f64)
}

/// `(1/2^N) Tr F(H̄_N)` for each `N` in `sizes`.
pub fn zero_dist_trace_test(
    sizes: &[u32],
    params: ModelParams,
    f: impl Fn(f64) -> f64,
) -> Result<Vec<f64>> {
    sizes
        .iter()
        .map(|&n| Ok(empirical_functional(&full_cw_spectrum(n, params)?, &f)))
        .collect()
}

/// The probability measure `ν_N` on `[0,1]` with mass `C(J,N)(2J+1)/2^N` at
/// `u = 2J/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NuMeasure {
    n_sites: u32,
    atoms: Vec<(f64, f64)>,
}

impl NuMeasure {
    pub fn n_sites(&self) -> u32 {
        self.n_sites
    }

    /// `(u, mass)` pairs, ascending in `u`.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        crate::neumaier_sum(self.atoms.iter().map(|a| a.1))
    }

    /// `ν_N([lo, hi])`.
    pub fn interval_mass(&self, lo: f64, hi: f64) -> f64 {
        crate::neumaier_sum(
            self.atoms
                .iter()
                .filter(|a| lo <= a.0 && a.0 <= hi)
                .map(|a| a.1),
        )
    }
}

/// Builds `ν_N`. Masses are not renormalized, so [`NuMeasure::total_mass`]
/// checks the multiplicity formula.
pub fn nu_measure(n_sites: u32) -> Result<NuMeasure> {
    let ln2 = core::f64::consts::LN_2;
    let atoms = sector_list(n_sites)?
        .iter()
        .map(|s| {
            let u = s.spin.0 as f64 / n_sites as f64;
            let log_mass = s.log_multiplicity + libm::log(s.dim as f64) - n_sites as f64 * ln2;
            (u, libm::exp(log_mass))
        })
        .collect();
    Ok(NuMeasure { n_sites, atoms })
}

/// `2(N+1)² exp(-(Nε+1)²/(6(N+1)))`, an upper bound for `ν_N([ε, 1])`.
pub fn chernoff_bound(n_sites: u32, eps: f64) -> Result<f64> {
    if n_sites == 0 {
        return Err(Error::InvalidArgument {
            name: "N",
            reason: "size must be ≥ 1".into(),
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument {
            name: "eps",
            reason: alloc::format!("{eps} not in (0, 1)"),
        });
    }
    let n = n_sites as f64;
    let t = n * eps + 1.0;
    Ok(2.0 * (n + 1.0) * (n + 1.0) * libm::exp(-t * t / (6.0 * (n + 1.0))))
}
