//! Eigenvalues of real symmetric tridiagonal and dense symmetric matrices.
//!
//! The tridiagonal path is the implicitly shifted QL iteration (values only).
//! Sturm-sequence bisection is kept as an independent route for
//! cross-checking and for counting eigenvalues below a threshold.

use alloc::vec::Vec;

use crate::matrix::{RealMatrix, SymTridiagonal};
use crate::{Error, Result};

/// Size guard for [`dense_sym_eigenvalues`].
pub const DENSE_EIGEN_MAX_DIM: usize = 4096;
/// Size guard for [`singular_values`].
pub const SVD_MAX_DIM: usize = 2048;
/// Default absolute accuracy target for the O(1)-norm matrices of this crate.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative threshold under which an off-diagonal entry splits the matrix.
const DEFLATION: f64 = 1e-15;
const MAX_QL_SWEEPS: usize = 60;

/// All eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub values: Vec<f64>,
    pub tol_used: f64,
}

impl EigenResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument {
            name: "tol",
            reason: alloc::format!("must be finite and > 0, got {tol}"),
        });
    }
    Ok(())
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-type shifts.
pub fn tridiag_eigenvalues(m: &SymTridiagonal, tol: f64) -> Result<EigenResult> {
    check_tol(tol)?;
    let mut values = ql_implicit(m.diag(), m.offdiag())?;
    values.sort_by(f64::total_cmp);
    Ok(EigenResult {
        values,
        tol_used: tol,
    })
}

fn ql_implicit(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= DEFLATION * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence { index: l });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Number of eigenvalues strictly below `x` (Sturm sequence / LDLᵀ pivots).
pub fn sturm_count(m: &SymTridiagonal, x: f64) -> usize {
    let d = m.diag();
    let e = m.offdiag();
    let tiny = libm::sqrt(f64::MIN_POSITIVE);
    let mut count = 0;
    let mut q = d[0] - x;
    for i in 0..d.len() {
        if i > 0 {
            let prev = if libm::fabs(q) < tiny {
                libm::copysign(tiny, q)
            } else {
                q
            };
            q = d[i] - x - e[i - 1] * e[i - 1] / prev;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues by bisection on Sturm counts, each bracketed to width
/// `tol · max(1, ‖m‖)`.
pub fn bisection_eigenvalues(m: &SymTridiagonal, tol: f64) -> Result<EigenResult> {
    check_tol(tol)?;
    let norm = m.norm_bound();
    let width = tol * norm.max(1.0);
    let (lo0, hi0) = (-norm - width, norm + width);
    let values = (0..m.dim())
        .map(|k| {
            let (mut lo, mut hi) = (lo0, hi0);
            while hi - lo > width {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(m, mid) <= k {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    Ok(EigenResult {
        values,
        tol_used: tol,
    })
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
pub fn householder_tridiagonalize(m: &RealMatrix) -> Result<SymTridiagonal> {
    let n = m.n_rows();
    let mut a: Vec<f64> = m.as_slice().to_vec();
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut v = alloc::vec![0.0; n];
    let mut p = alloc::vec![0.0; n];

    for k in 0..n.saturating_sub(1) {
        diag.push(a[k * n + k]);
        let start = k + 1;
        let scale: f64 = (start..n).map(|i| libm::fabs(a[i * n + k])).sum();
        if scale == 0.0 {
            offdiag.push(0.0);
            continue;
        }
        let mut norm_sq = 0.0;
        for i in start..n {
            v[i] = a[i * n + k] / scale;
            norm_sq += v[i] * v[i];
        }
        let alpha = -libm::copysign(libm::sqrt(norm_sq), v[start]);
        offdiag.push(alpha * scale);
        if k + 2 == n {
            // 1x1 trailing block: the reflection only flips a sign.
            continue;
        }
        v[start] -= alpha;
        let v_norm = libm::sqrt((start..n).map(|i| v[i] * v[i]).sum::<f64>());
        for vi in &mut v[start..n] {
            *vi /= v_norm;
        }
        // p = A v, K = vᵀp, q = p - K v; A ← A - 2 v qᵀ - 2 q vᵀ on the trailing block.
        for i in start..n {
            let row = &a[i * n + start..i * n + n];
            p[i] = row.iter().zip(&v[start..n]).map(|(x, y)| x * y).sum();
        }
        let kv: f64 = (start..n).map(|i| v[i] * p[i]).sum();
        for i in start..n {
            p[i] -= kv * v[i];
        }
        for i in start..n {
            let (vi, qi) = (v[i], p[i]);
            let row = &mut a[i * n + start..i * n + n];
            for (j, entry) in row.iter_mut().enumerate() {
                let jj = start + j;
                *entry -= 2.0 * (vi * p[jj] + qi * v[jj]);
            }
        }
    }
    if n > 0 {
        diag.push(a[(n - 1) * n + n - 1]);
    }
    SymTridiagonal::new(diag, offdiag)
}

/// Eigenvalues of a dense real symmetric matrix: Householder reduction, then
/// [`tridiag_eigenvalues`].
pub fn dense_sym_eigenvalues(m: &RealMatrix, tol: f64) -> Result<EigenResult> {
    check_tol(tol)?;
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.n_rows(),
            found: m.n_cols(),
        });
    }
    if m.n_rows() > DENSE_EIGEN_MAX_DIM {
        return Err(Error::SizeLimit {
            what: "dense eigenproblem dimension",
            limit: DENSE_EIGEN_MAX_DIM,
            requested: m.n_rows(),
        });
    }
    if let Some(index) = m.as_slice().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "dense matrix",
            index,
        });
    }
    let asym = m.max_asymmetry();
    if asym > 1e-12 * m.max_abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric {
            max_deviation: asym,
        });
    }
    let t = householder_tridiagonalize(m)?;
    tridiag_eigenvalues(&t, tol)
}

/// Singular values in descending order, as square roots of the eigenvalues
/// of `mᵀm` clamped at zero.
pub fn singular_values(m: &RealMatrix) -> Result<Vec<f64>> {
    let dim = m.n_rows().max(m.n_cols());
    if dim > SVD_MAX_DIM {
        return Err(Error::SizeLimit {
            what: "singular value dimension",
            limit: SVD_MAX_DIM,
            requested: dim,
        });
    }
    let gram = m.transpose().matmul(m)?;
    // The product is symmetric up to rounding; symmetrize before the check.
    let sym = gram.add_scaled(&gram.transpose(), 1.0)?.map(|v| 0.5 * v);
    let eig = dense_sym_eigenvalues(&sym, DEFAULT_TOL)?;
    Ok(eig
        .values
        .iter()
        .rev()
        .map(|&l| libm::sqrt(l.max(0.0)))
        .collect())
}
