//! Weighted spectral measures, empirical functionals, CDF and quantile
//! distances, and the Schatten zero-distribution test.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::eigen::{dense_sym_eigenvalues, tridiag_eigenvalues, EigenResult, DEFAULT_TOL};
use crate::matrix::{RealMatrix, SymTridiagonal};
use crate::symbol::MonotoneRearrangement;
use crate::{Error, Result};

/// Tolerance on `Σ w = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;

/// A discrete probability measure on the real line: eigenvalues with weights.
///
/// Atoms are sorted ascending and the weights sum to one. `log2_dim` is
/// `log₂ d_n` of the matrix the spectrum came from, which may be far larger
/// than the number of stored atoms (`d_n = 2^N` for the full model).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSpectrum {
    pairs: Vec<(f64, f64)>,
    log2_dim: f64,
}

impl WeightedSpectrum {
    /// Sorts the atoms and checks finiteness, `w ≥ 0` and `Σ w = 1`.
    pub fn new(mut pairs: Vec<(f64, f64)>, log2_dim: f64) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument {
                name: "spectrum",
                reason: "no eigenvalues".into(),
            });
        }
        if let Some(index) = pairs
            .iter()
            .position(|(v, w)| !v.is_finite() || !w.is_finite())
        {
            return Err(Error::NonFinite {
                context: "weighted spectrum",
                index,
            });
        }
        if let Some(i) = pairs.iter().position(|&(_, w)| w < 0.0) {
            return Err(Error::InvalidArgument {
                name: "weights",
                reason: alloc::format!("weight {} at index {i} is negative", pairs[i].1),
            });
        }
        let total = crate::neumaier_sum(pairs.iter().map(|p| p.1));
        if libm::fabs(total - 1.0) > WEIGHT_SUM_TOL {
            return Err(Error::InvalidArgument {
                name: "weights",
                reason: alloc::format!("weights sum to {total}, expected 1"),
            });
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { pairs, log2_dim })
    }

    /// Uniform weights `1/n`.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let w = 1.0 / n as f64;
        Self::new(
            values.iter().map(|&v| (v, w)).collect(),
            libm::log2(n as f64),
        )
    }

    pub fn from_eigenvalues(values: &EigenResult) -> Result<Self> {
        Self::from_values(&values.values)
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `log₂ d_n`.
    pub fn log2_dim(&self) -> f64 {
        self.log2_dim
    }

    pub fn min(&self) -> f64 {
        self.pairs[0].0
    }

    pub fn max(&self) -> f64 {
        self.pairs[self.pairs.len() - 1].0
    }

    /// Mass of `(-∞, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        let end = self.pairs.partition_point(|p| p.0 <= x);
        crate::neumaier_sum(self.pairs[..end].iter().map(|p| p.1))
    }
}

/// Distances between two spectra, or a spectrum and a rearranged symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    pub sup_quantile_gap: f64,
    pub mean_abs_gap: f64,
    pub ks_distance: f64,
}

/// `Σ_i w_i F(λ_i)`.
pub fn empirical_functional(ws: &WeightedSpectrum, f: impl Fn(f64) -> f64) -> f64 {
    crate::neumaier_sum(ws.pairs.iter().map(|&(v, w)| w * f(v)))
}

/// Kolmogorov distance `sup_x |F_a(x) - F_b(x)|` by a merged sweep over the
/// sorted atoms. Atoms at equal values are absorbed together before the two
/// CDFs are compared.
pub fn ks_distance(a: &WeightedSpectrum, b: &WeightedSpectrum) -> f64 {
    ks_distance_clustered(a, b, 0.0)
}

/// As [`ks_distance`], but atoms of the merged sequence closer than
/// `value_tol` to their predecessor join the same threshold. With a small
/// `value_tol` this compares spectra that agree up to rounding, where exact
/// ties have been split into nearly equal values.
pub fn ks_distance_clustered(a: &WeightedSpectrum, b: &WeightedSpectrum, value_tol: f64) -> f64 {
    let (pa, pb) = (&a.pairs, &b.pairs);
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0, 0.0);
    let mut best: f64 = 0.0;
    while i < pa.len() || j < pb.len() {
        let next = |i: usize, j: usize| match (pa.get(i), pb.get(j)) {
            (Some(x), Some(y)) => x.0.min(y.0),
            (Some(x), None) => x.0,
            (None, Some(y)) => y.0,
            (None, None) => f64::INFINITY,
        };
        let mut edge = next(i, j);
        loop {
            while i < pa.len() && pa[i].0 <= edge {
                fa += pa[i].1;
                i += 1;
            }
            while j < pb.len() && pb[j].0 <= edge {
                fb += pb[j].1;
                j += 1;
            }
            let following = next(i, j);
            if following - edge <= value_tol {
                edge = following;
            } else {
                break;
            }
        }
        best = best.max(libm::fabs(fa - fb));
    }
    best.min(1.0)
}

/// `sup_t |Q_a(t) - Q_b(t)|` over the left-continuous quantile functions
/// (the ∞-Wasserstein distance). Cumulative weights closer than `1e-12` are
/// treated as equal.
pub fn quantile_sup_distance(a: &WeightedSpectrum, b: &WeightedSpectrum) -> f64 {
    const CUM_TOL: f64 = 1e-12;
    let (pa, pb) = (&a.pairs, &b.pairs);
    let (mut i, mut j) = (0, 0);
    let (mut ca, mut cb) = (pa[0].1, pb[0].1);
    let mut best: f64 = 0.0;
    loop {
        best = best.max(libm::fabs(pa[i].0 - pb[j].0));
        let (last_a, last_b) = (i + 1 == pa.len(), j + 1 == pb.len());
        if last_a && last_b {
            return best;
        }
        let diff = ca - cb;
        if (libm::fabs(diff) <= CUM_TOL && !last_a && !last_b) || (diff < 0.0 && last_b) {
            // Tied breakpoint, or b exhausted by rounding.
            if !last_a {
                i += 1;
                ca += pa[i].1;
            }
            if !last_b && libm::fabs(diff) <= CUM_TOL {
                j += 1;
                cb += pb[j].1;
            }
        } else if (diff < 0.0 && !last_a) || last_b {
            i += 1;
            ca += pa[i].1;
        } else {
            j += 1;
            cb += pb[j].1;
        }
    }
}

/// Compares sorted eigenvalues with the rearranged symbol: the gaps
/// `|λ_i - ψ(i/(n+1))|`, `i = 1..n`, and the Kolmogorov distance between the
/// eigenvalue CDF and the CDF of the symbol samples.
pub fn compare_quantiles(values: &[f64], psi: &MonotoneRearrangement) -> Result<DistanceReport> {
    let spectrum = WeightedSpectrum::from_values(values)?;
    let n = spectrum.len();
    let mut gaps = Vec::with_capacity(n);
    for (i, &(v, _)) in spectrum.pairs.iter().enumerate() {
        let t = (i + 1) as f64 / (n + 1) as f64;
        gaps.push(libm::fabs(v - psi.quantile(t)?));
    }
    let samples = WeightedSpectrum::from_values(psi.sorted_values())?;
    Ok(DistanceReport {
        sup_quantile_gap: gaps.iter().copied().fold(0.0, f64::max),
        mean_abs_gap: crate::neumaier_sum(gaps.iter().copied()) / n as f64,
        ks_distance: ks_distance(&spectrum, &samples),
    })
}

/// Exponent of a Schatten norm, `1 ≤ p ≤ ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchattenExponent(f64);

impl SchattenExponent {
    pub const INFINITY: SchattenExponent = SchattenExponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidArgument {
                name: "p",
                reason: alloc::format!("{p} not in [1, ∞]"),
            });
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `(Σ w_i |λ_i|^p)^{1/p}`, which is `‖A‖_p / d_n^{1/p}` for a Hermitian `A`
/// with uniform weights `1/d_n`; `max |λ_i|` for `p = ∞`.
pub fn schatten_zero_test(ws: &WeightedSpectrum, p: SchattenExponent) -> f64 {
    let scale = ws
        .pairs
        .iter()
        .fold(0.0, |m: f64, &(v, _)| m.max(libm::fabs(v)));
    if p.0.is_infinite() || scale == 0.0 {
        return scale;
    }
    let sum = crate::neumaier_sum(
        ws.pairs
            .iter()
            .map(|&(v, w)| w * libm::pow(libm::fabs(v) / scale, p.0)),
    );
    scale * libm::pow(sum, 1.0 / p.0)
}

/// Uniform draw from `[0, 1)`: the top 53 bits of a `u64`.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Pseudo-random symmetric `P = Σ_j s_j v_j v_jᵀ` of rank `k` with orthonormal
/// `v_j` and `s_j ∈ [-1, 1)`, so `‖P‖₂ ≤ 1`.
///
/// The stream is ChaCha8 seeded with `seed_from_u64(seed)`. Each float is the
/// top 53 bits of `next_u64()` times `2⁻⁵³`, mapped to `[-1, 1)` by `2u - 1`.
/// Vector entries are drawn first (`v_1` to `v_k`, `n` entries each), then
/// `s_1..s_k`; the vectors are orthonormalized by modified Gram-Schmidt in
/// that order.
pub fn random_low_rank_symmetric(n: usize, rank_k: usize, seed: u64) -> Result<RealMatrix> {
    if rank_k > n {
        return Err(Error::InvalidArgument {
            name: "rank_k",
            reason: alloc::format!("rank {rank_k} exceeds dimension {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rank_k);
    for _ in 0..rank_k {
        let mut v: Vec<f64> = (0..n).map(|_| 2.0 * unit_f64(&mut rng) - 1.0).collect();
        for q in &basis {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = libm::sqrt(v.iter().map(|a| a * a).sum::<f64>());
        if norm < 1e-8 {
            return Err(Error::InvalidArgument {
                name: "seed",
                reason: "random vectors are numerically dependent".into(),
            });
        }
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    let strengths: Vec<f64> = (0..rank_k)
        .map(|_| 2.0 * unit_f64(&mut rng) - 1.0)
        .collect();
    let mut p = RealMatrix::zeros(n, n);
    for (v, s) in basis.iter().zip(&strengths) {
        for i in 0..n {
            let svi = s * v[i];
            for j in 0..n {
                p[(i, j)] += svi * v[j];
            }
        }
    }
    // Exact symmetry for the dense solver.
    let pt = p.transpose();
    p.add_scaled(&pt, 1.0).map(|m| m.map(|x| 0.5 * x))
}

/// Distances between the spectrum of `m` and that of `m + P`, with `P` from
/// [`random_low_rank_symmetric`]. Requires `rank_k ≤ dim/4`.
pub fn perturbation_robustness(
    m: &SymTridiagonal,
    rank_k: usize,
    seed: u64,
) -> Result<DistanceReport> {
    let n = m.dim();
    if rank_k > n / 4 {
        return Err(Error::InvalidArgument {
            name: "rank_k",
            reason: alloc::format!("rank {rank_k} exceeds dim/4 = {}", n / 4),
        });
    }
    let before = tridiag_eigenvalues(m, DEFAULT_TOL)?;
    let perturbed = m
        .to_dense()
        .add_scaled(&random_low_rank_symmetric(n, rank_k, seed)?, 1.0)?;
    let after = dense_sym_eigenvalues(&perturbed, DEFAULT_TOL)?;
    let gaps: Vec<f64> = before
        .values
        .iter()
        .zip(&after.values)
        .map(|(a, b)| libm::fabs(a - b))
        .collect();
    Ok(DistanceReport {
        sup_quantile_gap: gaps.iter().copied().fold(0.0, f64::max),
        mean_abs_gap: crate::neumaier_sum(gaps.iter().copied()) / n as f64,
        ks_distance: ks_distance(
            &WeightedSpectrum::from_eigenvalues(&before)?,
            &WeightedSpectrum::from_eigenvalues(&after)?,
        ),
    })
}
