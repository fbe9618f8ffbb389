//! Exact finite-N numerics for the rotating-wave Dicke (Tavis-Cummings) model,
//! with and without the `ε(a† + a)²` field term.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! - [`spin`]: collective-spin ladder coefficients in the excited-atom labeling,
//! - [`eigen`]: tridiagonal and sparse symmetric eigensolvers,
//! - [`rwa`]: excitation-sector solution of the rotating-wave model,
//! - [`a2`]: Bogoliubov-frame exact diagonalization with the `A²` term, and
//!   the full (non-rotating-wave) model,
//! - [`observables`]: Berry phases, fidelity, gaps and transition detection.
#![no_std]
// Negated comparisons reject NaN inputs on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod a2;
pub mod eigen;
mod error;
mod math;
pub mod model;
pub mod observables;
pub mod params;
pub mod rwa;
pub mod spin;

pub use error::{Error, Result};
pub use params::ModelParams;
