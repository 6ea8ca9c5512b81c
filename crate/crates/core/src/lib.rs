//! Exact-arithmetic toolkit for cubic fourfolds containing a plane.
//!
//! The crate has three layers:
//!
//! * integer lattice machinery ([`lattice`], [`fqf`]) and the rank-3
//!   classification built on it ([`moduli`]),
//! * exact multivariate polynomial algebra ([`poly`], [`pfaffian`],
//!   [`bundle`], [`tangency`], [`smooth`]) used to verify an explicit
//!   pfaffian fourfold and its quadric surface bundle,
//! * finite field arithmetic and point counting over the degree-2 K3
//!   double cover ([`gf`], [`zeta`]), feeding the Picard rank bound.
//!
//! Everything is exact (arbitrary-precision integers and rationals, or
//! prime fields); floating point appears only in Gauss-sum phases and
//! polynomial root moduli, both guarded by explicit tolerances.

pub mod error;
pub mod mat;

pub mod fqf;
pub mod gram_io;
pub mod lattice;
pub mod moduli;

pub mod poly;

pub mod bundle;
pub mod groebner;
pub mod pfaffian;
pub mod smooth;
pub mod tangency;

pub mod gf;
pub mod zeta;

pub mod fixture;
pub mod report;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
