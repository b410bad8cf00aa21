//! Two-oracle check: CBE linear statistics at scale `n` against sine-β.

use serde::{Deserialize, Serialize};

use super::line::LineFunction;
use crate::cbe::CbeSampler;
use crate::error::{Error, Result};
use crate::pointproc::additive_functional;
use crate::rng::derive_seed;
use crate::sinesde::{SdeConfig, SineSampler};
use crate::stats::MeanEstimate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub seed: u64,
    pub grid_spacing: f64,
    pub t0: f64,
    pub rotation_limit: f64,
    /// Width of the joint confidence band in standard errors.
    pub band: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            grid_spacing: 0.25,
            t0: SdeConfig::DEFAULT_T0,
            rotation_limit: SdeConfig::DEFAULT_ROTATION,
            band: 3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleComparison {
    pub n: usize,
    /// Estimate of `E_n exp(Σ_j f(n θ_j))`.
    pub cbe: MeanEstimate,
    pub difference: f64,
    pub joint_stderr: f64,
    pub within_band: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub beta: f64,
    pub function: LineFunction,
    pub samples: usize,
    pub config: VerifyConfig,
    /// Estimate of `E_β e^{S_f}`.
    pub sine: MeanEstimate,
    pub scales: Vec<ScaleComparison>,
    pub all_within: bool,
}

/// Compares `E_n exp(S_{f(n·)})` under the `n`-point CBE with
/// `E_β exp(S_f)` under sine-β, both by Monte Carlo.
pub fn verify_cbe_convergence(
    f: &LineFunction,
    beta: f64,
    n_list: &[usize],
    samples: usize,
    cfg: &VerifyConfig,
) -> Result<ConvergenceReport> {
    f.validate()?;
    let (a, b) = f
        .support()
        .ok_or_else(|| Error::InvalidParameter("a compactly supported function is required".into()))?;
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(Error::InvalidParameter(format!("beta must lie in (0, 2], got {beta}")));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter("at least two samples are needed".into()));
    }
    let reach = a.abs().max(b.abs());
    if let Some(n) = n_list.iter().find(|&&n| (n as f64) * std::f64::consts::PI <= reach) {
        return Err(Error::InvalidParameter(format!(
            "support of f does not fit on the circle at n = {n}"
        )));
    }

    let mut sde = SdeConfig::new(
        beta,
        SdeConfig::uniform_grid(a, b, cfg.grid_spacing),
        derive_seed(cfg.seed, "sine"),
    );
    sde.t0 = cfg.t0;
    let sampler = SineSampler::new(sde.with_rotation_limit(cfg.rotation_limit))?;
    let sine_values = sampler.map(samples, |s| {
        additive_functional(&s.configuration, |x| f.eval(x)).re.exp()
    })?;
    let sine = MeanEstimate::from_samples(&sine_values);

    let scales = n_list
        .iter()
        .map(|&n| {
            let cbe = CbeSampler {
                n,
                beta,
                seed: derive_seed(cfg.seed, &format!("cbe-{n}")),
            };
            let values = cbe.map(samples, |s| {
                s.angles.iter().map(|&t| f.eval(n as f64 * t)).sum::<f64>().exp()
            })?;
            let est = MeanEstimate::from_samples(&values);
            let difference = est.mean - sine.mean;
            let joint_stderr = est.stderr.hypot(sine.stderr);
            Ok(ScaleComparison {
                n,
                cbe: est,
                difference,
                joint_stderr,
                within_band: difference.abs() <= cfg.band * joint_stderr,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        beta,
        function: f.clone(),
        samples,
        config: cfg.clone(),
        sine,
        all_within: scales.iter().all(|s| s.within_band),
        scales,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_gives_one() {
        let f = LineFunction::triangle(0.0, 2.0).unwrap();
        let r = verify_cbe_convergence(&f, 2.0, &[4, 8], 20, &VerifyConfig::default()).unwrap();
        assert_eq!(r.sine.mean, 1.0);
        assert_eq!(r.sine.stderr, 0.0);
        for s in &r.scales {
            assert_eq!(s.cbe.mean, 1.0);
            assert!(s.within_band);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = LineFunction::gaussian(1.0, 1.0).unwrap();
        assert!(verify_cbe_convergence(&g, 2.0, &[4], 20, &VerifyConfig::default()).is_err());
        let wide = LineFunction::triangle(1.0, 20.0).unwrap();
        assert!(verify_cbe_convergence(&wide, 2.0, &[4], 20, &VerifyConfig::default()).is_err());
        let tri = LineFunction::triangle(1.0, 2.0).unwrap();
        assert!(verify_cbe_convergence(&tri, 3.0, &[4], 20, &VerifyConfig::default()).is_err());
    }

    #[test]
    fn small_agreement() {
        let f = LineFunction::triangle(0.5, 6.0).unwrap();
        let cfg = VerifyConfig {
            seed: 11,
            ..VerifyConfig::default()
        };
        let r = verify_cbe_convergence(&f, 2.0, &[16], 1000, &cfg).unwrap();
        assert!(r.all_within, "{r:?}");
    }
}
