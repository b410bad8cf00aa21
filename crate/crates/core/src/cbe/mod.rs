//! Exact sampling of the circular β-ensemble from independent Verblunsky
//! coefficients, and the associated Prüfer phase.

pub mod prufer;
pub mod sampler;
pub mod verblunsky;

pub use prufer::{prufer_psi, PruferPhase};
pub use sampler::{companion_roots, polynomial_roots, sample_cbe, CbeSample, CbeSampler};
pub use verblunsky::{
    characteristic_polynomial, sample_theta_nu, sample_verblunsky, szego_pair, SzegoPair, VerblunskySeq,
};
