//! Exact arithmetic for twisted second-quantized elliptic genera of K3.
//!
//! The crate reconstructs the product expansions `Φ_g` attached to the
//! conjugacy classes of M24 and expresses a power of each one as a product of
//! rescaled Borcherds products. Everything is exact over the rationals except
//! [`numverify`], which replays the cusp-expansion data in floating point.
//!
//! Series and linear algebra are generic over the coefficient type (see
//! [`Scalar`] and [`Field`]); the aliases below fix the concrete types used by
//! the rest of the crate.

pub mod borcherds;
pub mod expander;
pub mod exactseries;
pub mod jacobi;
pub mod linalg;
pub mod modforms;
pub mod moonshine;
pub mod numverify;
pub mod solver;

mod error;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};

/// Arbitrary precision rational, always in lowest terms.
pub type Rat = num_rational::BigRational;
/// Arbitrary precision integer.
pub type Int = num_bigint::BigInt;

/// Univariate q-series with rational coefficients.
pub type QSeries = exactseries::QSeries<Rat>;
/// Bivariate (q, ζ) series with rational coefficients.
pub type QZSeries = exactseries::QZSeries<Rat>;
/// Trivariate (q₁, ζ, q₂) series with rational coefficients.
pub type Q3Series = exactseries::Q3Series<Rat>;
/// Dense matrix over the rationals.
pub type RatMatrix = linalg::Matrix<Rat>;
