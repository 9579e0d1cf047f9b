//! Measured constants behind the tolerance checks, regenerated by
//! `cw-glt --fixtures PATH` and committed as `fixtures/tolerances.json`.

use serde::{Deserialize, Serialize};

use cw_glt_core::coherent::berezin_deviation;
use cw_glt_core::curie_weiss::{cw_restricted, ModelParams, TwiceSpin};
use cw_glt_core::distribution::{compare_quantiles, perturbation_robustness};
use cw_glt_core::eigen::{tridiag_eigenvalues, DEFAULT_TOL};
use cw_glt_core::symbol::{cw_symbol, rearrange_symbol};

use crate::error::CliResult;

pub const BEREZIN_SIZES: [u32; 4] = [20, 40, 80, 160];
pub const SPHERE_GRID: (usize, usize) = (65, 64);
/// Added to the largest measured `N·deviation` to form the recorded bound.
pub const BEREZIN_MARGIN: f64 = 1e-9;
pub const ADHERENCE_SIZES: [u32; 2] = [40, 320];
pub const ADHERENCE_GRID: (usize, usize) = (1000, 1000);
pub const ADHERENCE_THRESHOLD: f64 = 0.05;
pub const PERTURBATION_SITES: u32 = 320;
pub const PERTURBATION_RANK: usize = 5;
pub const PERTURBATION_SEED: u64 = 20_240_917;

const COMMITTED: &str = include_str!("../fixtures/tolerances.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generated: String,
    pub tool: String,
    pub solver: String,
    pub solver_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerezinFixture {
    pub gamma: f64,
    pub bfield: f64,
    pub sizes: Vec<u32>,
    pub sphere_grid: (usize, usize),
    pub n_times_deviation: Vec<f64>,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdherenceFixture {
    pub gamma: f64,
    pub bfield: f64,
    pub grid: (usize, usize),
    pub sizes: Vec<u32>,
    pub sup_quantile_gap: Vec<f64>,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationFixture {
    pub n_sites: u32,
    pub rank: usize,
    pub seed: u64,
    pub generator: String,
    pub ks_distance: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixtures {
    pub provenance: Provenance,
    pub berezin: BerezinFixture,
    pub adherence: Vec<AdherenceFixture>,
    pub perturbation: PerturbationFixture,
}

impl Fixtures {
    /// The committed file.
    pub fn committed() -> serde_json::Result<Self> {
        serde_json::from_str(COMMITTED)
    }

    /// Recomputes every entry.
    pub fn generate(generated: String) -> CliResult<Self> {
        let unit = ModelParams::new(1.0, 1.0)?;
        let n_times_deviation = BEREZIN_SIZES
            .iter()
            .map(|&n| Ok(n as f64 * berezin_deviation(n, TwiceSpin(n), unit, SPHERE_GRID)?))
            .collect::<CliResult<Vec<f64>>>()?;
        let bound = n_times_deviation.iter().copied().fold(0.0, f64::max) + BEREZIN_MARGIN;
        let berezin = BerezinFixture {
            gamma: 1.0,
            bfield: 1.0,
            sizes: BEREZIN_SIZES.to_vec(),
            sphere_grid: SPHERE_GRID,
            n_times_deviation,
            bound,
        };

        let mut adherence = Vec::new();
        for b in [1.0, 0.5] {
            let p = ModelParams::new(1.0, b)?;
            let psi = rearrange_symbol(&cw_symbol(p), ADHERENCE_GRID.0, ADHERENCE_GRID.1)?;
            let gaps = ADHERENCE_SIZES
                .iter()
                .map(|&n| {
                    let eig = tridiag_eigenvalues(&cw_restricted(n, p)?, DEFAULT_TOL)?;
                    Ok(compare_quantiles(&eig.values, &psi)?.sup_quantile_gap)
                })
                .collect::<CliResult<Vec<f64>>>()?;
            adherence.push(AdherenceFixture {
                gamma: 1.0,
                bfield: b,
                grid: ADHERENCE_GRID,
                sizes: ADHERENCE_SIZES.to_vec(),
                sup_quantile_gap: gaps,
                threshold: ADHERENCE_THRESHOLD,
            });
        }

        let m = cw_restricted(PERTURBATION_SITES, unit)?;
        let r = perturbation_robustness(&m, PERTURBATION_RANK, PERTURBATION_SEED)?;
        let perturbation = PerturbationFixture {
            n_sites: PERTURBATION_SITES,
            rank: PERTURBATION_RANK,
            seed: PERTURBATION_SEED,
            generator: "ChaCha8 seed_from_u64; f = (next_u64 >> 11) * 2^-53".into(),
            ks_distance: r.ks_distance,
            bound: PERTURBATION_RANK as f64 / m.dim() as f64,
        };

        Ok(Self {
            provenance: Provenance {
                generated,
                tool: concat!("cw-glt ", env!("CARGO_PKG_VERSION")).into(),
                solver: "implicit QL on symmetric tridiagonal blocks".into(),
                solver_tol: DEFAULT_TOL,
            },
            berezin,
            adherence,
            perturbation,
        })
    }
}
