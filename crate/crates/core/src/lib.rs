//! Exact and numeric toolkit for partial and false Eisenstein series, unimodal
//! rank coefficients and the modular completions of the underlying theta
//! functions.

pub mod cli;
pub mod error;
pub mod numeric;
pub mod partitions;
pub mod recursions;
pub mod report;
pub mod series;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
