//! Exponential Riesz spectra for finite unions of intervals.

pub mod error;
pub mod arith;
pub mod assembly;
pub mod dft_minor;
pub mod interval;
pub mod json;
pub mod linalg;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
