//! Exact decision procedures for the category of integrable modules of a
//! toroidal Lie algebra at positive level.
//!
//! The crate computes spectral characters of irreducibles, the lattice
//! `G_pi` of nonvanishing degrees and its finite quotient, isomorphism of
//! irreducibles, the type I / type II split of spectral characters and
//! block membership. All arithmetic is exact: integers are `i64` for weight
//! coordinates and arbitrary precision everywhere else.
//!
//! The integer lattice engine in [`zlattice`] is generic over the integer
//! scalar; the aliases below fix the arbitrary-precision choice used by the
//! rest of the crate.

pub mod blocks;
pub mod cli;
pub mod error;
pub mod rootdata;
pub mod schema;
pub mod spectral;
pub mod torus;
pub mod weights;
pub mod zlattice;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for lattices and evaluations.
pub type Int = num_bigint::BigInt;
/// Exact rational used for torus coordinates and delta coefficients.
pub type Rational = num_rational::BigRational;
/// Sublattice of `Z^d` over arbitrary-precision integers.
pub type Lattice = zlattice::ZLattice<Int>;
/// Quotient data of a [`Lattice`].
pub type Quotient = zlattice::QuotientData<Int>;
