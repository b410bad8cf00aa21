//! Numerical toolkit for circular β-ensembles and the sine-β process.

pub mod cbe;
pub mod error;
pub mod expansion;
pub mod harness;
pub mod pointproc;
pub mod quad;
pub mod rng;
pub mod sinesde;
pub mod stats;
pub mod symcore;

pub use error::{Error, Result};
