//! File formats, corpus and provider counting, grid export and the
//! command-line tool built on `conceptq-core`.

pub mod cli;
pub mod corpus;
mod error;
pub mod formats;
pub mod grid;
pub mod provider;
pub mod report;

pub use conceptq_core as core;
pub use error::{Error, Result};
