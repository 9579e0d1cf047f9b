//! Toeplitz matrices generated by Fourier coefficients, and diagonal sampling
//! matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::{Error, Result};

/// Finitely supported Fourier coefficients `f̂_k` of a generating function.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FourierCoefficients {
    entries: BTreeMap<i64, Complex64>,
}

impl FourierCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, Complex64)>>(pairs: I) -> Self {
        let mut c = Self::new();
        for (k, v) in pairs {
            c.insert(k, v);
        }
        c
    }

    /// Real coefficients, e.g. `{-1: 1, 1: 1}` for `2 cos θ`.
    pub fn from_real_pairs<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(k, v)| (k, Complex64::new(v, 0.0))))
    }

    pub fn insert(&mut self, offset: i64, value: Complex64) {
        self.entries.insert(offset, value);
    }

    /// `f̂_k`, zero outside the support.
    pub fn get(&self, offset: i64) -> Complex64 {
        self.entries.get(&offset).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest `|f̂_{-k} - conj(f̂_k)|`; zero for a real generating function.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&k, v)| (self.get(-k) - v.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Evaluates `Σ f̂_k e^{ikθ}`.
    pub fn evaluate(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(k, v)| v * Complex64::from_polar(1.0, k as f64 * theta))
            .sum()
    }
}

/// `T_n(f)` with entry `(i, j) = f̂_{i-j}`.
pub fn toeplitz_from_coeffs(coeffs: &FourierCoefficients, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n",
            reason: "must be at least 1".into(),
        });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (k, v) in coeffs.iter() {
        if k.unsigned_abs() as usize >= n {
            continue;
        }
        for i in 0..n {
            let j = i as i64 - k;
            if (0..n as i64).contains(&j) {
                m[(i, j as usize)] = v;
            }
        }
    }
    Ok(m)
}

/// Default quadrature size for [`fourier_coeffs`].
pub fn default_quad_points(max_offset: usize) -> usize {
    usize::max(256, 4 * max_offset + 4)
}

/// Fourier coefficients `f̂_k = (1/2π) ∫ f(θ) e^{-ikθ} dθ`, `|k| ≤ max_offset`,
/// by the uniform rule on the shifted grid `θ_j = -π + (j + 1/2)·2π/Q`.
///
/// The rule is exact for trigonometric polynomials of degree below `Q/2`,
/// and the grid never hits the endpoint `±π` where a periodic extension may
/// jump.
pub fn fourier_coeffs(
    f: impl Fn(f64) -> Complex64,
    max_offset: usize,
    quad_points: usize,
) -> Result<FourierCoefficients> {
    if quad_points < 4 * max_offset + 4 {
        return Err(Error::InvalidArgument {
            name: "quad_points",
            reason: alloc::format!("{quad_points} < 4K+4 = {}", 4 * max_offset + 4),
        });
    }
    let h = 2.0 * PI / quad_points as f64;
    let mut samples = Vec::with_capacity(quad_points);
    for j in 0..quad_points {
        let theta = -PI + (j as f64 + 0.5) * h;
        let v = f(theta);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "generating function sample",
                index: j,
            });
        }
        samples.push((theta, v));
    }
    let k_max = max_offset as i64;
    let coeffs = (-k_max..=k_max).map(|k| {
        let sum: Complex64 = samples
            .iter()
            .map(|&(theta, v)| v * Complex64::from_polar(1.0, -(k as f64) * theta))
            .sum();
        (k, sum / quad_points as f64)
    });
    Ok(FourierCoefficients::from_pairs(coeffs))
}

/// Diagonal entries `a(i/n)`, `i = 1..n`.
pub fn sample_diagonal(a: impl Fn(f64) -> f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n",
            reason: "must be at least 1".into(),
        });
    }
    (1..=n)
        .map(|i| {
            let v = a(i as f64 / n as f64);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite {
                    context: "diagonal sampling",
                    index: i,
                })
            }
        })
        .collect()
}

/// The diagonal sampling matrix `D_n(a) = diag(a(i/n))`, `i = 1..n`.
pub fn diag_sampling(a: impl Fn(f64) -> f64, n: usize) -> Result<RealMatrix> {
    Ok(RealMatrix::from_diagonal(&sample_diagonal(a, n)?))
}
