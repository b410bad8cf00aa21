//! Sample means with standard errors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl MeanEstimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let count = xs.len();
        if count == 0 {
            return MeanEstimate {
                mean: f64::NAN,
                stderr: f64::NAN,
                count,
            };
        }
        let mean = xs.iter().sum::<f64>() / count as f64;
        let stderr = if count > 1 {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            (var / count as f64).sqrt()
        } else {
            f64::INFINITY
        };
        MeanEstimate { mean, stderr, count }
    }

    /// `|mean − target|` measured in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.stderr
    }
}

/// Complex mean; the standard error is that of the modulus of the deviation,
/// `sqrt(E|X − EX|²/m)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMeanEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub count: usize,
}

impl ComplexMeanEstimate {
    pub fn from_samples(xs: &[Complex64]) -> Self {
        let count = xs.len();
        let mean = xs.iter().sum::<Complex64>() / count as f64;
        let stderr = if count > 1 {
            let var = xs.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / (count - 1) as f64;
            (var / count as f64).sqrt()
        } else {
            f64::INFINITY
        };
        ComplexMeanEstimate { mean, stderr, count }
    }
}
