//! Point configurations built from monotone functions, and their functionals.

pub mod config;
pub mod monotone;

pub use config::{
    additive_functional, multiplicative_functional, regularized_additive, theta_map, Configuration, EDGE_TOLERANCE,
};
pub use monotone::{l1_distance, MonotoneFnView, Preimage};
