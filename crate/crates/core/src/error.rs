use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("partitions {0} and {1} have different weights")]
    WeightMismatch(String, String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("partition {partition} has {length} parts but only {n} variables are available")]
    TooManyParts { partition: String, length: usize, n: usize },

    #[error("partition {partition} has weight above the degree cap {cap}")]
    AboveDegreeCap { partition: String, cap: usize },

    #[error("Gram-Schmidt pivot vanished at partition {0}")]
    VanishingPivot(String),

    #[error("specialization has no value for p_{0}")]
    MissingPowerSum(usize),

    #[error("function is not real-valued: {0}")]
    NotReal(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("monotone repair of magnitude {magnitude:.3e} exceeds tolerance {tolerance:.3e}")]
    RepairTooLarge { magnitude: f64, tolerance: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("window sizing failed: {0}")]
    WindowSizing(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
