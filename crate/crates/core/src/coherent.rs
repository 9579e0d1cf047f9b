//! Spin coherent states, Berezin (lower) symbols of sector blocks, and the
//! resolution of the identity.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::curie_weiss::{ln_binomial, spin_block, ModelParams, TwiceSpin};
use crate::eigen::{dense_sym_eigenvalues, DEFAULT_TOL};
use crate::matrix::{RealMatrix, SymTridiagonal};
use crate::symbol::classical_h0;
use crate::{Error, Result};

/// `|J, Ω⟩` for `Ω = (ϑ, φ)`.
///
/// Amplitudes are stored for `m = J, J-1, …, -J`; the amplitude at `m` is
/// `binom(2J, J+m)^{1/2} cos(ϑ/2)^{J+m} sin(ϑ/2)^{J-m} e^{i(J-m)φ}`, so that
/// `⟨J₃⟩ = J cos ϑ` and `⟨J₁⟩ = J sin ϑ cos φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    spin: TwiceSpin,
    theta: f64,
    phi: f64,
    amplitudes: Vec<Complex64>,
}

impl CoherentState {
    pub fn new(spin: TwiceSpin, theta: f64, phi: f64) -> Result<Self> {
        if spin.0 == 0 {
            return Err(Error::InvalidArgument {
                name: "J",
                reason: "must be at least 1/2".into(),
            });
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidArgument {
                name: "theta",
                reason: alloc::format!("{theta} not in [0, π]"),
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidArgument {
                name: "phi",
                reason: alloc::format!("{phi} not in [0, 2π)"),
            });
        }
        let tj = spin.0 as u64;
        let (c, s) = (libm::cos(0.5 * theta), libm::sin(0.5 * theta));
        // Index a ↔ m = J - a: exponent of cos is 2J - a, of sin is a.
        let amplitudes = (0..=tj)
            .map(|a| {
                let (pc, ps) = (tj - a, a);
                if (pc > 0 && c <= 0.0) || (ps > 0 && s <= 0.0) {
                    return Complex64::new(0.0, 0.0);
                }
                let mut log_mod = 0.5 * ln_binomial(tj, a);
                if pc > 0 {
                    log_mod += pc as f64 * libm::log(c);
                }
                if ps > 0 {
                    log_mod += ps as f64 * libm::log(s);
                }
                Complex64::from_polar(libm::exp(log_mod), a as f64 * phi)
            })
            .collect();
        Ok(Self {
            spin,
            theta,
            phi,
            amplitudes,
        })
    }

    pub fn spin(&self) -> TwiceSpin {
        self.spin
    }

    pub fn angles(&self) -> (f64, f64) {
        (self.theta, self.phi)
    }

    /// Amplitudes for `m = J, J-1, …, -J`.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude in the `m = -J, …, J` order of [`spin_block`].
    fn block_amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[self.amplitudes.len() - 1 - k]
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(crate::neumaier_sum(
            self.amplitudes.iter().map(|a| a.norm_sqr()),
        ))
    }

    pub fn expect_j3(&self) -> f64 {
        let j = self.spin.as_f64();
        crate::neumaier_sum(
            self.amplitudes
                .iter()
                .enumerate()
                .map(|(a, c)| (j - a as f64) * c.norm_sqr()),
        )
    }

    /// `⟨J₁⟩ = Re⟨J₊⟩`, with `⟨m+1|J₊|m⟩ = √((J-m)(J+m+1))`.
    pub fn expect_j1(&self) -> f64 {
        let tj = self.spin.0 as usize;
        crate::neumaier_sum((0..tj).map(|k| {
            let coupling = libm::sqrt(((tj - k) * (k + 1)) as f64);
            coupling * (self.block_amplitude(k + 1).conj() * self.block_amplitude(k)).re
        }))
    }
}

/// `⟨Ω| block |Ω⟩` for a `(2J+1)`-dimensional block in the `m = -J, …, J`
/// basis.
pub fn berezin_symbol(block: &SymTridiagonal, state: &CoherentState) -> Result<f64> {
    if block.dim() != state.amplitudes.len() {
        return Err(Error::DimensionMismatch {
            expected: state.amplitudes.len(),
            found: block.dim(),
        });
    }
    let diag = block
        .diag()
        .iter()
        .enumerate()
        .map(|(k, d)| d * state.block_amplitude(k).norm_sqr());
    let off = block.offdiag().iter().enumerate().map(|(k, e)| {
        2.0 * e * (state.block_amplitude(k).conj() * state.block_amplitude(k + 1)).re
    });
    Ok(crate::neumaier_sum(diag.chain(off)))
}

/// `sup |⟨Ω|H̄_N(J)|Ω⟩ - h₀(2J/N, Ω)|` over the closed grid
/// `ϑ_i = π i/(n_θ - 1)`, `φ_j = 2π j/n_φ`.
pub fn berezin_deviation(
    n_sites: u32,
    spin: TwiceSpin,
    params: ModelParams,
    sphere_grid: (usize, usize),
) -> Result<f64> {
    let (n_theta, n_phi) = sphere_grid;
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::InvalidArgument {
            name: "sphere_grid",
            reason: alloc::format!("{n_theta}x{n_phi} needs at least 2 polar and 1 azimuthal node"),
        });
    }
    let block = spin_block(n_sites, spin, params)?;
    let u = spin.0 as f64 / n_sites as f64;
    let mut sup: f64 = 0.0;
    for i in 0..n_theta {
        let theta = if i + 1 == n_theta {
            PI
        } else {
            PI * i as f64 / (n_theta - 1) as f64
        };
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let state = CoherentState::new(spin, theta, phi)?;
            let dev = berezin_symbol(&block, &state)? - classical_h0(u, theta, phi, params)?;
            sup = sup.max(libm::fabs(dev));
        }
    }
    Ok(sup)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` (Newton on the three-term
/// recurrence).
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n",
            reason: "need at least one node".into(),
        });
    }
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut deriv = 0.0;
        for iter in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * k + 1) as f64 * z * p2 - k as f64 * p3) / (k + 1) as f64;
            }
            deriv = nf * (z * p1 - p2) / (z * z - 1.0);
            let step = p1 / deriv;
            z -= step;
            if libm::fabs(step) <= 1e-15 {
                break;
            }
            if iter == 99 {
                return Err(Error::NoConvergence { index: i });
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * deriv * deriv);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok((nodes, weights))
}

/// Spectral-norm deviation of `(2J+1)/(4π) ∫ |Ω⟩⟨Ω| dΩ` from the identity,
/// with `n_theta` Gauss nodes in `cos ϑ` and `n_phi` uniform nodes in `φ`.
///
/// Requires `n_theta ≥ 2J + 2` and `n_phi ≥ 4J + 2`, for which the product
/// rule is exact.
pub fn resolution_identity_check(spin: TwiceSpin, n_theta: usize, n_phi: usize) -> Result<f64> {
    let tj = spin.0 as usize;
    if n_theta < tj + 2 || n_phi < 2 * tj + 2 {
        return Err(Error::InvalidArgument {
            name: "nodes",
            reason: alloc::format!(
                "{n_theta}x{n_phi} nodes, need at least {}x{} for 2J = {tj}",
                tj + 2,
                2 * tj + 2
            ),
        });
    }
    let dim = tj + 1;
    let (nodes, weights) = gauss_legendre(n_theta)?;
    let mut acc = alloc::vec![Complex64::new(0.0, 0.0); dim * dim];
    let scale = (dim as f64) / (4.0 * PI) * (2.0 * PI / n_phi as f64);
    for (&x, &w) in nodes.iter().zip(&weights) {
        let theta = libm::acos(x.clamp(-1.0, 1.0));
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let c = CoherentState::new(spin, theta, phi)?;
            for a in 0..dim {
                let ca = c.amplitudes[a] * (w * scale);
                for b in 0..dim {
                    acc[a * dim + b] += ca * c.amplitudes[b].conj();
                }
            }
        }
    }
    for a in 0..dim {
        acc[a * dim + a] -= 1.0;
    }
    // ‖X‖₂ of a Hermitian X via the real symmetric embedding [[Re, -Im], [Im, Re]].
    let mut real = RealMatrix::zeros(2 * dim, 2 * dim);
    for a in 0..dim {
        for b in 0..dim {
            let v = 0.5 * (acc[a * dim + b] + acc[b * dim + a].conj());
            real[(a, b)] = v.re;
            real[(a + dim, b + dim)] = v.re;
            real[(a, b + dim)] = -v.im;
            real[(a + dim, b)] = v.im;
        }
    }
    let eig = dense_sym_eigenvalues(&real, DEFAULT_TOL)?;
    Ok(libm::fabs(eig.min()).max(libm::fabs(eig.max())))
}
