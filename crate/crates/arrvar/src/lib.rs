//! Exact-arithmetic toolkit for torus actions of higher complexity.
//!
//! The crate builds explicit T-varieties and general arrangement varieties
//! from integer matrix data, classifies the faces of the positive orthant
//! into big and leaf types, and derives the divisor class group geometry of
//! the resulting varieties: Picard group, cones of divisor classes,
//! canonical class, smoothness, Fano status and Gorenstein index.
//!
//! All arithmetic is exact. Integers are arbitrary precision
//! ([`Int`]) and rational coefficients use [`Rational`].

pub mod catalog;
pub mod error;
pub mod lattice;
pub mod polyhedral;
pub mod varspec;
pub mod faces;
pub mod geometry;
pub mod graded;
pub mod named;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for every lattice computation.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used for relation coefficients.
pub type Rational = num_rational::BigRational;
