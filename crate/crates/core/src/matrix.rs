//! Matrix containers: real symmetric tridiagonal and dense row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_complex::Complex64;

use crate::{Error, Result};

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    /// Builds the matrix, checking `offdiag.len() + 1 == diag.len()` and that
    /// every entry is finite.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument {
                name: "diag",
                reason: "matrix dimension must be at least 1".into(),
            });
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                found: offdiag.len(),
            });
        }
        if let Some(index) = diag.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "tridiagonal diagonal",
                index,
            });
        }
        if let Some(index) = offdiag.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "tridiagonal off-diagonal",
                index,
            });
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Maximum absolute row sum, an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    libm::fabs(self.offdiag[i - 1])
                } else {
                    0.0
                };
                let right = if i + 1 < n {
                    libm::fabs(self.offdiag[i])
                } else {
                    0.0
                };
                libm::fabs(self.diag[i]) + left + right
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DenseMatrix<f64> {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.offdiag.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    values: Vec<T>,
}

pub type RealMatrix = DenseMatrix<f64>;
pub type ComplexMatrix = DenseMatrix<Complex64>;

impl<T: Copy + Default> DenseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            values: vec![T::default(); n_rows * n_cols],
        }
    }

    /// Wraps a row-major buffer; its length must be `n_rows * n_cols`.
    pub fn from_row_major(n_rows: usize, n_cols: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                expected: n_rows * n_cols,
                found: values.len(),
            });
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
        })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map<U: Copy + Default>(&self, f: impl Fn(T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl<T> DenseMatrix<T>
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: rhs.n_rows,
            });
        }
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                let rhs_row = rhs.row(k);
                let out_row = &mut out.values[i * rhs.n_cols..(i + 1) * rhs.n_cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.n_rows * rhs.n_rows, self.n_cols * rhs.n_cols);
        for i1 in 0..self.n_rows {
            for j1 in 0..self.n_cols {
                let a = self[(i1, j1)];
                for i2 in 0..rhs.n_rows {
                    for j2 in 0..rhs.n_cols {
                        out[(i1 * rhs.n_rows + i2, j1 * rhs.n_cols + j2)] = a * rhs[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Entrywise `self + scale * rhs`.
    pub fn add_scaled(&self, rhs: &Self, scale: T) -> Result<Self> {
        if self.n_rows != rhs.n_rows || self.n_cols != rhs.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: rhs.values.len(),
            });
        }
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(&a, &b)| a + scale * b)
                .collect(),
        })
    }
}

impl DenseMatrix<f64> {
    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n_rows {
            for j in (i + 1)..self.n_cols.min(self.n_rows) {
                dev = dev.max(libm::fabs(self[(i, j)] - self[(j, i)]));
            }
        }
        dev
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(libm::fabs(v)))
    }

    pub fn trace(&self) -> f64 {
        crate::neumaier_sum(self.diagonal())
    }

    pub fn frobenius_sq(&self) -> f64 {
        crate::neumaier_sum(self.values.iter().map(|v| v * v))
    }
}

impl DenseMatrix<Complex64> {
    /// Drops imaginary parts, refusing when any exceeds `tol`.
    pub fn to_real(&self, tol: f64) -> Result<DenseMatrix<f64>> {
        for (k, v) in self.values.iter().enumerate() {
            if libm::fabs(v.im) > tol {
                return Err(Error::InvalidArgument {
                    name: "matrix",
                    reason: alloc::format!(
                        "entry ({}, {}) has imaginary part {:e}",
                        k / self.n_cols,
                        k % self.n_cols,
                        v.im
                    ),
                });
            }
        }
        Ok(self.map(|v| v.re))
    }
}

impl<T> core::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.values[i * self.n_cols + j]
    }
}

impl<T> core::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.values[i * self.n_cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_rejects_bad_lengths_and_nan() {
        assert!(matches!(
            SymTridiagonal::new(vec![1.0, 2.0], vec![]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            SymTridiagonal::new(vec![1.0, f64::NAN], vec![0.0]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = RealMatrix::identity(2);
        let i3 = RealMatrix::identity(3);
        assert_eq!(i2.kron(&i3), RealMatrix::identity(6));
    }

    #[test]
    fn matmul_dimension_check() {
        let a = RealMatrix::zeros(2, 3);
        assert!(a.matmul(&a).is_err());
        assert_eq!(a.matmul(&a.transpose()).unwrap(), RealMatrix::zeros(2, 2));
    }

    #[test]
    fn tridiagonal_dense_embedding() {
        let t = SymTridiagonal::new(vec![1.0, 2.0, 3.0], vec![-1.0, 0.5]).unwrap();
        let d = t.to_dense();
        assert_eq!(d[(0, 1)], -1.0);
        assert_eq!(d[(2, 1)], 0.5);
        assert_eq!(d.max_asymmetry(), 0.0);
        assert_eq!(t.norm_bound(), 3.5);
    }
}
