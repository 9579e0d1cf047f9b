//! Spectral toolkit for the structured matrix-sequences of the quantum
//! Curie-Weiss model.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`toeplitz`]: Toeplitz matrices from Fourier coefficients and diagonal
//!   sampling matrices.
//! - [`curie_weiss`]: spin-sector blocks, the restricted (symmetric-subspace)
//!   model, sector multiplicities, the finite-difference Schrödinger analogue
//!   and a dense `2^N` oracle.
//! - [`eigen`]: symmetric tridiagonal and dense symmetric eigensolvers.
//! - [`symbol`]: separable GLT symbols, sampling, monotone rearrangement,
//!   extrema and weak-* integrals.
//! - [`distribution`]: weighted spectra, functionals and distances.
//! - [`full_model`], [`coherent`], [`extremal`]: the mean-field analysis
//!   (exact full spectra via sectors, the `ν_N` measure, spin coherent states,
//!   Berezin symbols and extremal-eigenvalue convergence tables).
#![no_std]

extern crate alloc;

pub mod coherent;
pub mod curie_weiss;
pub mod distribution;
pub mod eigen;
mod error;
pub mod extremal;
pub mod full_model;
pub mod matrix;
pub mod symbol;
pub mod toeplitz;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, SymTridiagonal};

pub use num_complex::Complex64;

/// Compensated (Neumaier) summation.
pub(crate) fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
