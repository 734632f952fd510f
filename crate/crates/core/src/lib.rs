//! Counting and classifying the conjugacy classes of finite-order SU(n)
//! elements — and of cyclic subgroups — in which no matrix has 1 as an
//! eigenvalue.
//!
//! Every count is available by several independent routes and the routes
//! are cross-checked against each other:
//!
//! - a closed-form divisor sum over Euler's totient ([`counting`]),
//! - direct streaming enumeration of eigenvalue spectra ([`spectra`]),
//! - coefficient extraction from an exact rational generating function
//!   ([`series`]),
//! - orbit classification of spectra under the unit-group power action,
//!   with a Burnside-lemma oracle ([`orbits`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, with runtime checks on every division a theorem promises
//! to be exact.

#![forbid(unsafe_code)]

pub mod counting;
pub mod error;
pub mod numtheory;
pub mod orbits;
pub mod series;
pub mod spectra;

pub use error::{Error, Result};
pub use num_bigint::BigUint;
