//! Coupled simulation of the sine-β SDE family
//! `dX_x = x dt + (2/√(βt)) Im{(e^{iX_x} − 1)(dB₁ + i dB₂)}` and the point
//! configurations it induces.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointproc::{theta_map, Configuration, MonotoneFnView};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdeConfig {
    pub beta: f64,
    /// Start time; `X_x(t0) = x·t0`.
    pub t0: f64,
    /// Geometric spacing factor: `dt ≤ log_step·t`.
    pub log_step: f64,
    /// Absolute cap on `dt`.
    pub max_step: f64,
    pub x_grid: Vec<f64>,
    pub seed: u64,
    /// Allowed monotone repair, as a fraction of the grid span.
    pub repair_tolerance: f64,
}

impl SdeConfig {
    pub const DEFAULT_T0: f64 = 1e-4;
    pub const MIN_STEPS: usize = 1000;
    pub const DEFAULT_MAX_STEP: f64 = 0.01;
    /// Target standard deviation of the noise increment per step, relative
    /// to the local gap between neighbouring paths.
    pub const NOISE_PER_STEP: f64 = 0.14;
    pub const DEFAULT_ROTATION: f64 = 0.5;

    /// Defaults: `dt = min(κt, max_step)` with `√(4κ/β) = 0.14` and
    /// `max|x|·max_step ≤ 0.5`.
    pub fn new(beta: f64, x_grid: Vec<f64>, seed: u64) -> Self {
        let log_step = (Self::NOISE_PER_STEP.powi(2) * beta / 4.0).min(Self::DEFAULT_MAX_STEP);
        SdeConfig {
            beta,
            t0: Self::DEFAULT_T0,
            log_step,
            max_step: Self::DEFAULT_MAX_STEP,
            x_grid,
            seed,
            repair_tolerance: 1e-3,
        }
        .with_rotation_limit(Self::DEFAULT_ROTATION)
    }

    /// Equally spaced grid on `[a, b]` with spacing at most `h`, containing
    /// `0` when `a ≤ 0 ≤ b`.
    pub fn uniform_grid(a: f64, b: f64, h: f64) -> Vec<f64> {
        let m = ((b - a) / h).ceil().max(1.0) as usize;
        let step = (b - a) / m as f64;
        let mut grid: Vec<f64> = (0..=m).map(|i| a + step * i as f64).collect();
        if a < 0.0 && b > 0.0 && !grid.contains(&0.0) {
            grid.push(0.0);
            grid.sort_by(f64::total_cmp);
        }
        grid
    }

    /// Caps the step so that `max|x|·dt ≤ rotation`.
    pub fn with_rotation_limit(mut self, rotation: f64) -> Self {
        let xmax = self.x_grid.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        self.max_step = if xmax > 0.0 {
            (rotation / xmax).min(Self::DEFAULT_MAX_STEP)
        } else {
            Self::DEFAULT_MAX_STEP
        };
        self
    }

    /// The same rule with every step divided by `factor`.
    pub fn refined(mut self, factor: f64) -> Self {
        self.log_step /= factor;
        self.max_step /= factor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must be positive, got {}", self.beta));
        }
        if !(self.t0 > 0.0 && self.t0 <= 1e-2) {
            return bad(format!("t0 must lie in (0, 0.01], got {}", self.t0));
        }
        if !(self.log_step > 0.0 && self.log_step <= 1.0) || !(self.max_step > 0.0 && self.max_step <= 1.0) {
            return bad("step factors must lie in (0, 1]".into());
        }
        if self.x_grid.len() < 2 || self.x_grid.iter().any(|x| !x.is_finite()) {
            return bad("x grid needs at least two finite points".into());
        }
        if self.x_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("x grid must be strictly increasing".into());
        }
        Ok(())
    }

    /// `t0 = t_0 < … < t_N = 1` with `t_{k+1} − t_k = min(κ t_k, max_step)`,
    /// uniformly refined if needed so that `N ≥ MIN_STEPS`.
    pub fn time_grid(&self) -> Vec<f64> {
        let build = |kappa: f64, cap: f64| {
            let mut t = vec![self.t0];
            let mut now = self.t0;
            while now < 1.0 {
                now = (now + (kappa * now).min(cap)).min(1.0);
                // Avoid a sliver step at the end.
                if 1.0 - now < 1e-3 * (kappa * now).min(cap) {
                    now = 1.0;
                }
                t.push(now);
            }
            t
        };
        let mut factor = 1.0;
        loop {
            let t = build(self.log_step / factor, self.max_step / factor);
            let steps = t.len() - 1;
            if steps >= Self::MIN_STEPS {
                return t;
            }
            factor *= 1.01 * Self::MIN_STEPS as f64 / steps as f64;
        }
    }

    pub fn steps(&self) -> usize {
        self.time_grid().len() - 1
    }

    pub fn window(&self) -> (f64, f64) {
        (self.x_grid[0], self.x_grid[self.x_grid.len() - 1])
    }
}

/// `x_i ↦ X_{x_i}(1)` after isotonic repair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonePath {
    pub x_grid: Vec<f64>,
    pub u: Vec<f64>,
    /// `max_i |u_i − raw_i|` introduced by the repair.
    pub repair_magnitude: f64,
    /// Fraction of adjacent pairs that decreased before repair.
    pub violation_fraction: f64,
}

impl MonotonePath {
    pub fn view(&self) -> MonotoneFnView {
        MonotoneFnView::new(self.x_grid.clone(), self.u.clone()).expect("repaired path is monotone")
    }
}

/// Pool-adjacent-violators projection onto nondecreasing sequences.
pub fn isotonic(values: &[f64]) -> Vec<f64> {
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        let mut cur = (v, 1usize);
        while let Some(&(mean, n)) = blocks.last() {
            if mean <= cur.0 {
                break;
            }
            blocks.pop();
            let total = n + cur.1;
            cur = ((mean * n as f64 + cur.0 * cur.1 as f64) / total as f64, total);
        }
        blocks.push(cur);
    }
    blocks
        .into_iter()
        .flat_map(|(m, n)| std::iter::repeat_n(m, n))
        .collect()
}

/// Euler–Maruyama with one pair of Brownian increments shared by every `x`.
pub fn simulate_sine_path<R: Rng + ?Sized>(cfg: &SdeConfig, rng: &mut R) -> Result<MonotonePath> {
    cfg.validate()?;
    let times = cfg.time_grid();
    let mut state: Vec<f64> = cfg.x_grid.iter().map(|&x| x * cfg.t0).collect();
    let scale = 2.0 / cfg.beta.sqrt();
    for w in times.windows(2) {
        let dt = w[1] - w[0];
        let sigma = scale / w[0].sqrt();
        let sd = dt.sqrt();
        let db1: f64 = sd * rng.sample::<f64, _>(StandardNormal);
        let db2: f64 = sd * rng.sample::<f64, _>(StandardNormal);
        for (xv, &x) in state.iter_mut().zip(&cfg.x_grid) {
            let (s, c) = xv.sin_cos();
            *xv += x * dt + sigma * ((c - 1.0) * db2 + s * db1);
        }
    }
    let violations = state.windows(2).filter(|w| w[0] > w[1]).count();
    let repaired = isotonic(&state);
    let repair_magnitude = repaired
        .iter()
        .zip(&state)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let (a, b) = cfg.window();
    let tolerance = cfg.repair_tolerance * (b - a);
    if repair_magnitude > tolerance {
        return Err(Error::RepairTooLarge {
            magnitude: repair_magnitude,
            tolerance,
        });
    }
    Ok(MonotonePath {
        x_grid: cfg.x_grid.clone(),
        u: repaired,
        repair_magnitude,
        violation_fraction: violations as f64 / (state.len() - 1) as f64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SineSample {
    pub configuration: Configuration,
    pub omega: f64,
    pub repair_magnitude: f64,
    pub violation_fraction: f64,
}

/// Simulates a path, draws `ω` uniform on `[0, 2π)` and returns
/// `u⁻¹(ω + 2πZ)` on the grid window.
pub fn sample_sine_configuration<R: Rng + ?Sized>(cfg: &SdeConfig, rng: &mut R) -> Result<SineSample> {
    let path = simulate_sine_path(cfg, rng)?;
    let omega = TAU * rng.random::<f64>();
    Ok(SineSample {
        configuration: theta_map(&path.view(), omega),
        omega,
        repair_magnitude: path.repair_magnitude,
        violation_fraction: path.violation_fraction,
    })
}

/// Seeded batch driver; path `i` uses stream `i` of `cfg.seed`.
#[derive(Clone, Debug)]
pub struct SineSampler {
    pub cfg: SdeConfig,
}

impl SineSampler {
    pub fn new(cfg: SdeConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(SineSampler { cfg })
    }

    pub fn path(&self, index: u64) -> Result<MonotonePath> {
        simulate_sine_path(&self.cfg, &mut rng::stream(self.cfg.seed, index))
    }

    pub fn sample(&self, index: u64) -> Result<SineSample> {
        sample_sine_configuration(&self.cfg, &mut rng::stream(self.cfg.seed, index))
    }

    /// Applies `stat` to `count` configurations in parallel, in index order.
    pub fn map<T, F>(&self, count: usize, stat: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&SineSample) -> T + Sync,
    {
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.sample(i).map(|s| stat(&s)))
            .collect()
    }

    pub fn map_paths<T, F>(&self, count: usize, stat: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&MonotonePath) -> T + Sync,
    {
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.path(i).map(|p| stat(&p)))
            .collect()
    }
}
