use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument is outside its admissible range.
    InvalidArgument { name: &'static str, reason: String },
    /// A sampled or stored value is NaN or infinite.
    NonFinite { context: &'static str, index: usize },
    /// `2J` is not an admissible spin for `N` sites.
    SpinOutOfRange { n_sites: u32, twice_spin: u32 },
    /// The request exceeds a size guard.
    SizeLimit {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    /// The dense input is not symmetric.
    NotSymmetric { max_deviation: f64 },
    /// Matrix or vector dimensions disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// The QL iteration did not converge.
    NoConvergence { index: usize },
    /// A symbol sample has a non-negligible imaginary part.
    NonReal { x: f64, theta: f64, imag: f64 },
    /// An extremal gap `τ` or `τ̂` is not strictly positive.
    NonPositiveGap {
        row: usize,
        size: usize,
        column: &'static str,
        value: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::NonFinite { context, index } => {
                write!(f, "non-finite value in {context} at index {index}")
            }
            Error::SpinOutOfRange {
                n_sites,
                twice_spin,
            } => write!(
                f,
                "spin J = {twice_spin}/2 is not an admissible sector for N = {n_sites}"
            ),
            Error::SizeLimit {
                what,
                limit,
                requested,
            } => {
                write!(f, "{what} = {requested} exceeds the limit {limit}")
            }
            Error::NotSymmetric { max_deviation } => {
                write!(
                    f,
                    "matrix is not symmetric (max deviation {max_deviation:e})"
                )
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NoConvergence { index } => {
                write!(
                    f,
                    "tridiagonal QL iteration failed to converge at index {index}"
                )
            }
            Error::NonReal { x, theta, imag } => write!(
                f,
                "symbol is not real at (x, theta) = ({x}, {theta}): imaginary part {imag:e}"
            ),
            Error::NonPositiveGap {
                row,
                size,
                column,
                value,
            } => write!(
                f,
                "{column} = {value:e} is not positive in row {row} (size {size})"
            ),
        }
    }
}

impl core::error::Error for Error {}
