//! Verification toolkit for two-dimensional metrics admitting exactly one
//! essential projective vector field.

pub mod catalog;
pub mod error;
pub mod jets;
pub mod obstructions;
pub mod projective;
pub mod report;
pub mod spectra;
pub mod suite;
pub mod tensorcalc;
pub mod transforms;

pub use error::{Error, Result};
