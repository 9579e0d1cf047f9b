//! Matrices of the normalized quantum Curie-Weiss model
//! `H̄ = -(Γ/2) S₃² - B S₁`, `S_i = (1/N) Σ_x σ_i(x)`.
//!
//! The model commutes with total spin, so on `(C²)^{⊗N}` it splits into
//! `(2J+1)`-dimensional blocks, one per admissible `J`, each repeated
//! `C(J, N)` times. The `J = N/2` block is the restricted model on the
//! symmetric subspace.

use alloc::vec::Vec;

use crate::matrix::{RealMatrix, SymTridiagonal};
use crate::toeplitz::sample_diagonal;
use crate::{Error, Result};

/// Largest `N` accepted by [`dense_cw_oracle`] (dimension `2^12 = 4096`).
pub const DENSE_ORACLE_MAX_SITES: u32 = 12;

/// Coupling `Γ > 0` and transverse field `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    gamma: f64,
    bfield: f64,
}

impl ModelParams {
    pub fn new(gamma: f64, bfield: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidArgument {
                name: "gamma",
                reason: alloc::format!("must be finite and > 0, got {gamma}"),
            });
        }
        if !bfield.is_finite() {
            return Err(Error::InvalidArgument {
                name: "bfield",
                reason: alloc::format!("must be finite, got {bfield}"),
            });
        }
        Ok(Self { gamma, bfield })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn bfield(&self) -> f64 {
        self.bfield
    }
}

/// A spin quantum number stored as the integer `2J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwiceSpin(pub u32);

impl TwiceSpin {
    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Block dimension `2J + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Whether `J ∈ 𝕁_N`, i.e. `2J ≤ N` with `N - 2J` even.
    pub fn is_admissible(self, n_sites: u32) -> bool {
        self.0 <= n_sites && (n_sites - self.0).is_multiple_of(2)
    }
}

/// Admissible spins of `N` sites in ascending order: `{0, 1, …, N/2}` for even
/// `N`, `{1/2, 3/2, …, N/2}` for odd `N`.
pub fn admissible_spins(n_sites: u32) -> impl Iterator<Item = TwiceSpin> {
    (n_sites % 2..=n_sites).step_by(2).map(TwiceSpin)
}

/// One irreducible sector of `N` spin-1/2 sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSectorSpec {
    pub n_sites: u32,
    pub spin: TwiceSpin,
    /// `2J + 1`.
    pub dim: usize,
    /// `ln C(J, N)`.
    pub log_multiplicity: f64,
}

/// `ln binom(n, k)` via log-gamma.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    if k == 0 || k == n {
        return 0.0;
    }
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// `ln C(J, N)` with `C(J, N) = (2J+1)/(N+1) · binom(N+1, N/2+J+1)`.
pub fn ln_multiplicity(n_sites: u32, spin: TwiceSpin) -> Result<f64> {
    check_spin(n_sites, spin)?;
    let n = n_sites as u64;
    let top = (n + spin.0 as u64) / 2 + 1;
    Ok(libm::log((spin.0 as f64 + 1.0) / (n as f64 + 1.0)) + ln_binomial(n + 1, top))
}

/// All sectors of `N` sites, ascending in `J`.
pub fn sector_list(n_sites: u32) -> Result<Vec<SpinSectorSpec>> {
    check_sites(n_sites)?;
    admissible_spins(n_sites)
        .map(|spin| {
            Ok(SpinSectorSpec {
                n_sites,
                spin,
                dim: spin.dim(),
                log_multiplicity: ln_multiplicity(n_sites, spin)?,
            })
        })
        .collect()
}

fn check_sites(n_sites: u32) -> Result<()> {
    if n_sites == 0 {
        return Err(Error::InvalidArgument {
            name: "N",
            reason: "size must be ≥ 1".into(),
        });
    }
    Ok(())
}

fn check_spin(n_sites: u32, spin: TwiceSpin) -> Result<()> {
    check_sites(n_sites)?;
    if !spin.is_admissible(n_sites) {
        return Err(Error::SpinOutOfRange {
            n_sites,
            twice_spin: spin.0,
        });
    }
    Ok(())
}

/// The block `H̄_N(J)` in the `J₃` eigenbasis `m = -J, …, J`:
/// `diag_m = -(Γ/2)(2m/N)²`, coupling of `m, m+1` equal to
/// `-(B/N) √(J(J+1) - m(m+1))`.
pub fn spin_block(n_sites: u32, spin: TwiceSpin, params: ModelParams) -> Result<SymTridiagonal> {
    check_spin(n_sites, spin)?;
    let n = n_sites as f64;
    let tj = spin.0 as i64;
    let diag = (0..=tj)
        .map(|k| {
            // 2m = 2k - 2J
            let two_m = (2 * k - tj) as f64;
            let r = two_m / n;
            -0.5 * params.gamma * r * r
        })
        .collect();
    // J(J+1) - m(m+1) = (J - m)(J + m + 1) = (2J - k)(k + 1) for m = k - J.
    let offdiag = (0..tj)
        .map(|k| -params.bfield / n * libm::sqrt(((tj - k) * (k + 1)) as f64))
        .collect();
    SymTridiagonal::new(diag, offdiag)
}

/// The restricted model on the symmetric subspace, `(N+1) × (N+1)`:
/// `diag_k = -(Γ/2)(2(k-1)/N - 1)²`, `offdiag_k = -B √(1-(k-1)/N) √(k/N)`.
///
/// This is the `J = N/2` block of [`spin_block`], and the two agree entrywise.
pub fn cw_restricted(n_sites: u32, params: ModelParams) -> Result<SymTridiagonal> {
    check_sites(n_sites)?;
    spin_block(n_sites, TwiceSpin(n_sites), params)
}

/// The restricted model written literally as
/// `-(Γ/2) D_n((2x-1)²) - B D_n(a) T_n(e^{iθ}) - B T_n(e^{-iθ}) D_n(a)`,
/// `a(x) = √((1-x)x)`, `n = N + 1`.
///
/// It differs from [`cw_restricted`] by a matrix whose norm is `O(N^{-1/2})`
/// (the square-root singularity at the edges), so both sequences share the
/// same symbol.
pub fn cw_restricted_glt_form(n_sites: u32, params: ModelParams) -> Result<SymTridiagonal> {
    check_sites(n_sites)?;
    let n = n_sites as usize + 1;
    let diag = sample_diagonal(
        |x| -0.5 * params.gamma * (2.0 * x - 1.0) * (2.0 * x - 1.0),
        n,
    )?;
    let a = sample_diagonal(|x| libm::sqrt(((1.0 - x) * x).max(0.0)), n)?;
    // (D T(e^{iθ}))_{i+1,i} = a((i+1)/n) and (T(e^{-iθ}) D)_{i,i+1} = a((i+1)/n).
    let offdiag = a[1..].iter().map(|&v| -params.bfield * v).collect();
    SymTridiagonal::new(diag, offdiag)
}

/// Centered finite-difference matrix of `-(1/(N+1)²) a(x) u'' + c(x) u` on
/// `x_k = k/(N+1)`, `k = 1..N+1`, with `a(x) = B√((1-x)x)` and
/// `c(x) = -(Γ/2)(2x-1)² - 2B√((1-x)x)`.
///
/// Its symbol `2a(x)(1 - cos θ) + c(x)` is the Curie-Weiss symbol.
pub fn fd_schrodinger(n_sites: u32, params: ModelParams) -> Result<SymTridiagonal> {
    check_sites(n_sites)?;
    let n = n_sites as usize + 1;
    let h = 1.0 / n as f64;
    let a = |x: f64| params.bfield * libm::sqrt(((1.0 - x) * x).max(0.0));
    let c = |x: f64| -0.5 * params.gamma * (2.0 * x - 1.0) * (2.0 * x - 1.0) - 2.0 * a(x);
    let grid: Vec<f64> = (1..=n).map(|k| k as f64 * h).collect();
    let diag = grid.iter().map(|&x| 2.0 * a(x) + c(x)).collect();
    let offdiag = grid[..n - 1].iter().map(|&x| -a(x)).collect();
    SymTridiagonal::new(diag, offdiag)
}

/// Dense `2^N × 2^N` matrix of `H̄ = -(Γ/2) S₃² - B S₁` in the computational
/// basis (bit `x` of the row index is site `x`, 0 meaning σ₃ = +1).
///
/// Entry formula of the Kronecker-product construction: `S₃` is diagonal with
/// `(1/N) Σ_x s_x`, and `σ₁(x)` flips bit `x`.
pub fn dense_cw_oracle(n_sites: u32, params: ModelParams) -> Result<RealMatrix> {
    check_sites(n_sites)?;
    if n_sites > DENSE_ORACLE_MAX_SITES {
        return Err(Error::SizeLimit {
            what: "dense oracle sites",
            limit: DENSE_ORACLE_MAX_SITES as usize,
            requested: n_sites as usize,
        });
    }
    let dim = 1usize << n_sites;
    let n = n_sites as f64;
    let mut m = RealMatrix::zeros(dim, dim);
    for state in 0..dim {
        let down = state.count_ones() as f64;
        let s3 = (n - 2.0 * down) / n;
        m[(state, state)] = -0.5 * params.gamma * s3 * s3;
        for site in 0..n_sites {
            m[(state, state ^ (1 << site))] = -params.bfield / n;
        }
    }
    Ok(m)
}

pub fn pauli_x() -> RealMatrix {
    RealMatrix::from_row_major(2, 2, alloc::vec![0.0, 1.0, 1.0, 0.0]).expect("2x2")
}

pub fn pauli_z() -> RealMatrix {
    RealMatrix::from_row_major(2, 2, alloc::vec![1.0, 0.0, 0.0, -1.0]).expect("2x2")
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` at `site`, site 0 being the least
/// significant factor (rightmost).
pub fn site_operator(n_sites: u32, site: u32, op: &RealMatrix) -> RealMatrix {
    let id = RealMatrix::identity(2);
    let mut out = RealMatrix::identity(1);
    for x in (0..n_sites).rev() {
        out = out.kron(if x == site { op } else { &id });
    }
    out
}
