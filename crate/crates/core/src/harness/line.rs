//! Test functions on the line with exact Fourier data.
//!
//! Convention: `f̂(λ) = (1/2π) ∫ f(x) e^{−iλx} dx`, and
//! `‖f‖²_p = ∫ |λ|^{2p} |f̂(λ)|² dλ`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum LineFunction {
    /// `amplitude · exp(−x²/(2 width²))`.
    GaussianBump { amplitude: f64, width: f64 },
    /// `height · max(0, 1 − |x|/half_width)`.
    Triangle { height: f64, half_width: f64 },
    /// Linear interpolation of `(x_i, y_i)`, zero outside `[x_0, x_last]`.
    /// The end values must be zero.
    Tabulated { x: Vec<f64>, y: Vec<f64> },
}

impl LineFunction {
    pub fn gaussian(amplitude: f64, width: f64) -> Result<Self> {
        let f = LineFunction::GaussianBump { amplitude, width };
        f.validate()?;
        Ok(f)
    }

    pub fn triangle(height: f64, half_width: f64) -> Result<Self> {
        let f = LineFunction::Triangle { height, half_width };
        f.validate()?;
        Ok(f)
    }

    pub fn tabulated(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let f = LineFunction::Tabulated { x, y };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        match self {
            LineFunction::GaussianBump { amplitude, width } => {
                if !amplitude.is_finite() || !(*width > 0.0 && width.is_finite()) {
                    return bad("gaussian bump needs a finite amplitude and positive width");
                }
            }
            LineFunction::Triangle { height, half_width } => {
                if !height.is_finite() || !(*half_width > 0.0 && half_width.is_finite()) {
                    return bad("triangle needs a finite height and positive half-width");
                }
            }
            LineFunction::Tabulated { x, y } => {
                if x.len() != y.len() || x.len() < 2 {
                    return bad("tabulated function needs at least two knots and matching lengths");
                }
                if x.iter().chain(y).any(|v| !v.is_finite()) {
                    return bad("tabulated values must be finite");
                }
                if x.windows(2).any(|w| !(w[0] < w[1])) {
                    return bad("tabulated abscissae must be strictly increasing");
                }
                if y[0] != 0.0 || y[y.len() - 1] != 0.0 {
                    return bad("tabulated function must vanish at both ends");
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            LineFunction::GaussianBump { amplitude, width } => amplitude * (-0.5 * (t / width).powi(2)).exp(),
            LineFunction::Triangle { height, half_width } => height * (1.0 - t.abs() / half_width).max(0.0),
            LineFunction::Tabulated { x, y } => {
                if t <= x[0] || t >= x[x.len() - 1] {
                    return 0.0;
                }
                let i = x.partition_point(|&v| v <= t);
                y[i - 1] + (y[i] - y[i - 1]) * (t - x[i - 1]) / (x[i] - x[i - 1])
            }
        }
    }

    /// `∫ f`.
    pub fn integral(&self) -> f64 {
        match self {
            LineFunction::GaussianBump { amplitude, width } => amplitude * width * TAU.sqrt(),
            LineFunction::Triangle { height, half_width } => height * half_width,
            LineFunction::Tabulated { x, y } => x
                .windows(2)
                .zip(y.windows(2))
                .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
                .sum(),
        }
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            LineFunction::GaussianBump { .. } => None,
            LineFunction::Triangle { half_width, .. } => Some((-half_width, *half_width)),
            LineFunction::Tabulated { x, .. } => Some((x[0], x[x.len() - 1])),
        }
    }

    /// `c·f`.
    pub fn scale(&self, c: f64) -> Self {
        match self {
            LineFunction::GaussianBump { amplitude, width } => LineFunction::GaussianBump {
                amplitude: c * amplitude,
                width: *width,
            },
            LineFunction::Triangle { height, half_width } => LineFunction::Triangle {
                height: c * height,
                half_width: *half_width,
            },
            LineFunction::Tabulated { x, y } => LineFunction::Tabulated {
                x: x.clone(),
                y: y.iter().map(|v| c * v).collect(),
            },
        }
    }

    /// `f(·/r)`.
    pub fn dilate(&self, r: f64) -> Self {
        match self {
            LineFunction::GaussianBump { amplitude, width } => LineFunction::GaussianBump {
                amplitude: *amplitude,
                width: r * width,
            },
            LineFunction::Triangle { height, half_width } => LineFunction::Triangle {
                height: *height,
                half_width: r * half_width,
            },
            LineFunction::Tabulated { x, y } => LineFunction::Tabulated {
                x: x.iter().map(|v| r * v).collect(),
                y: y.clone(),
            },
        }
    }

    /// Knots of a piecewise-linear family.
    fn knots(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            LineFunction::GaussianBump { .. } => None,
            LineFunction::Triangle { height, half_width } => {
                Some((vec![-half_width, 0.0, *half_width], vec![0.0, *height, 0.0]))
            }
            LineFunction::Tabulated { x, y } => Some((x.clone(), y.clone())),
        }
    }

    /// `f̂(λ)`.
    pub fn fourier(&self, lambda: f64) -> Complex64 {
        match self {
            LineFunction::GaussianBump { amplitude, width } => {
                let s = *width;
                Complex64::new(amplitude * s / TAU.sqrt() * (-0.5 * (s * lambda).powi(2)).exp(), 0.0)
            }
            LineFunction::Triangle { height, half_width } => {
                let w = *half_width;
                Complex64::new(height * w / TAU * sinc(0.5 * lambda * w).powi(2), 0.0)
            }
            LineFunction::Tabulated { x, y } => tabulated_fourier(x, y, lambda),
        }
    }

    /// Fourier coefficient `j` of the 2π-periodization of `f(scale·θ)`,
    /// namely `(1/scale)·f̂(j/scale)`.
    pub fn circle_coefficient(&self, scale: f64, j: i64) -> Complex64 {
        self.fourier(j as f64 / scale) / scale
    }

    /// `‖f‖²_p`. Piecewise-linear families have finite seminorms only for
    /// `p < 3/2`.
    pub fn seminorm_sq(&self, p: f64) -> Result<f64> {
        if !(p >= 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "seminorm order must be nonnegative, got {p}"
            )));
        }
        if let LineFunction::GaussianBump { amplitude, width } = self {
            return Ok(amplitude * amplitude * width.powf(1.0 - 2.0 * p) * gamma(p + 0.5) / TAU);
        }
        let (x, y) = self.knots().expect("piecewise-linear family");
        let kinks = slope_jumps(&x, &y);
        if kinks.iter().all(|&(_, c)| c == 0.0) {
            return Ok(0.0);
        }
        if p >= 1.5 {
            return Err(Error::InvalidParameter(format!(
                "‖f‖_p diverges for piecewise-linear f when p ≥ 3/2 (p = {p})"
            )));
        }
        // ∫|λ|^{2p}|F|² with F(λ) = −λ⁻² Σ c_k e^{−iλx_k}; the pairwise
        // kernels are the finite parts of ∫|λ|^{2p−4} cos(λd) dλ, whose
        // polynomial terms cancel because Σc_k = Σc_k x_k = 0.
        let kernel = |d: f64| -> f64 {
            if p == 0.0 {
                PI / 6.0 * d.powi(3)
            } else if p == 0.5 {
                d * d * d.ln()
            } else if p == 1.0 {
                -PI * d
            } else {
                let a = 2.0 * p - 3.0;
                2.0 * gamma(a) * (0.5 * PI * a).cos() * d.powf(-a)
            }
        };
        let mut total = 0.0;
        for (j, &(xj, cj)) in kinks.iter().enumerate() {
            for &(xk, ck) in &kinks[j + 1..] {
                total += 2.0 * cj * ck * kernel(xk - xj);
            }
        }
        Ok((total / (TAU * TAU)).max(0.0))
    }

    /// `∫_{|x|>L} |f|`.
    pub fn abs_tail_integral(&self, l: f64) -> f64 {
        let l = l.max(0.0);
        match self {
            LineFunction::GaussianBump { amplitude, width } => {
                amplitude.abs() * width * TAU.sqrt() * erfc(l / (width * std::f64::consts::SQRT_2))
            }
            _ => {
                let (x, y) = self.knots().expect("piecewise-linear family");
                let mut total = 0.0;
                for (xs, ys) in x.windows(2).zip(y.windows(2)) {
                    let line = |t: f64| ys[0] + (ys[1] - ys[0]) * (t - xs[0]) / (xs[1] - xs[0]);
                    for (a, b) in [(xs[0], xs[1].min(-l)), (xs[0].max(l), xs[1])] {
                        if b > a {
                            total += abs_linear_integral(line(a), line(b), b - a);
                        }
                    }
                }
                total
            }
        }
    }
}

fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

// ∫_0^h |p + (q − p)s/h| ds.
fn abs_linear_integral(p: f64, q: f64, h: f64) -> f64 {
    if p * q >= 0.0 {
        0.5 * h * (p.abs() + q.abs())
    } else {
        0.5 * h * (p * p + q * q) / (p.abs() + q.abs())
    }
}

/// `(x_k, slope_right − slope_left)` at every knot.
fn slope_jumps(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    let slopes: Vec<f64> = x
        .windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (ys[1] - ys[0]) / (xs[1] - xs[0]))
        .collect();
    (0..x.len())
        .map(|k| {
            let left = if k == 0 { 0.0 } else { slopes[k - 1] };
            let right = slopes.get(k).copied().unwrap_or(0.0);
            (x[k], right - left)
        })
        .collect()
}

fn tabulated_fourier(x: &[f64], y: &[f64], lambda: f64) -> Complex64 {
    let center = 0.5 * (x[0] + x[x.len() - 1]);
    let half = 0.5 * (x[x.len() - 1] - x[0]);
    let kinks = slope_jumps(x, y);
    let phase = Complex64::from_polar(1.0, -lambda * center);
    let big_f = if lambda.abs() * half <= 0.5 {
        // F = Σ_{n≥2} (−iλ)^{n−2} P_n / n!, P_n = Σ c_k (x_k − center)^n.
        let z = Complex64::new(0.0, -lambda);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut zpow = Complex64::new(1.0, 0.0);
        let mut fact = 2.0;
        for n in 2..40 {
            if n > 2 {
                fact *= n as f64;
                zpow *= z;
            }
            let pn: f64 = kinks.iter().map(|&(xk, c)| c * (xk - center).powi(n)).sum();
            sum += zpow * (pn / fact);
        }
        sum
    } else {
        let s: Complex64 = kinks
            .iter()
            .map(|&(xk, c)| c * Complex64::from_polar(1.0, -lambda * (xk - center)))
            .sum();
        -s / (lambda * lambda)
    };
    phase * big_f / TAU
}

/// `σ² = (4/β) ∫_0^∞ λ |f̂(λ)|² dλ = (2/β)‖f‖²_{1/2}` for real `f`.
pub fn limit_variance(f: &LineFunction, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    Ok(2.0 / beta * f.seminorm_sq(0.5)?)
}

/// `c·f` with `limit_variance(c·f, β) = 1`.
pub fn normalize_for_unit_variance(f: &LineFunction, beta: f64) -> Result<LineFunction> {
    let var = limit_variance(f, beta)?;
    if !(var > 0.0) {
        return Err(Error::InvalidParameter(
            "cannot normalize a function with zero limit variance".into(),
        ));
    }
    Ok(f.scale(var.sqrt().recip()))
}
