//! Exact-arithmetic BC_n-symmetric polynomials.
//!
//! This crate constructs BC_n-symmetric interpolation polynomials and
//! Koornwinder polynomials over exact rational parameter specializations,
//! together with their symmetric-function liftings, and machine-verifies a
//! catalog of identities: difference equations, branching and Pieri rules,
//! multivariate basic hypergeometric transformations, q-Racah orthogonality,
//! and vanishing results for Koornwinder-type virtual integrals.
//!
//! All arithmetic is over the rationals: square roots are supplied as exact
//! half-parameters, series are truncated with explicit caps, and every
//! verification is an exact equality (tolerance zero).

pub mod bcpoly;
pub mod cli;
pub mod cnorm;
pub mod error;
pub mod hyperg;
pub mod interpolation;
pub mod koornwinder;
pub mod lifting;
pub mod linalg;
pub mod partitions;
pub mod report;
pub mod series;
pub mod scalar;
pub mod symfunc;
pub mod upoly;
pub mod vanishing;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use scalar::{Params, Scalar, SpecSampler};
