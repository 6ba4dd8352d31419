//! Quantum models of concept combination.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! side of the toolkit:
//!
//! * [`counts`]: count tables, coincidence counts and their normalisation.
//! * [`bell`]: joint distributions, expectation values and the CHSH statistic.
//! * [`hilbert`]: the explicit complex-vector model of a concept disjunction,
//!   plus a small Fock-weight container.
//! * [`landscape`]: Gaussian amplitude fields, exemplar placement, phase
//!   interpolation and interference-grid sampling.
//! * [`stats`]: Bose-Einstein and Maxwell-Boltzmann occupancy distributions
//!   and their comparison with observed data.
//!
//! File formats, corpus scanning, the HTTP count provider and the command
//! line live in the `conceptq` crate.

#![cfg_attr(not(test), no_std)]
// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod bell;
pub mod counts;
mod error;
pub mod hilbert;
pub mod landscape;
mod math;
pub mod stats;

pub use error::{Error, ErrorKind, Offender, Result};
pub use math::{sincos_deg, Complex64};
