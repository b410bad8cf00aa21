//! Line test functions, sine-β CLT experiments and cross-model checks.

mod clt;
mod line;
mod verify;

pub use clt::{
    decreasing_up_to_one_inversion, feller_bound, ks_distance, normal_cdf, run_clt_at_scale, run_clt_experiment,
    truncation_half_width, CltConfig, CltResult, ExperimentRecord,
};
pub use line::{limit_variance, normalize_for_unit_variance, LineFunction};
pub use verify::{verify_cbe_convergence, ConvergenceReport, ScaleComparison, VerifyConfig};
