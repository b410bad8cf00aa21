//! Quantities built from specializations of Jack polynomials: the series for
//! multiplicative functionals of the circular β-ensemble, its limit and
//! bounds, and Jack measures.

pub mod circle;
pub mod gessel;
pub mod measure;

pub use circle::{CircleFunction, Side, Specialization};
pub use gessel::{cbe_error_bound, gessel_expectation, limit_laplace, subgauss_bound, GesselSeries, GesselValue};
pub use measure::{expected_partition_size, plancherel_pmf, ExpectedSize, JackMeasure, MassSummary};
