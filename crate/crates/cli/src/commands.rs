//! Subcommand bodies. Each returns the gates it checked; I/O and parameter
//! problems are errors.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use cbeta::cbe::{CbeSample, CbeSampler};
use cbeta::expansion::{cbe_error_bound, limit_laplace, subgauss_bound, CircleFunction, GesselSeries};
use cbeta::harness::{
    limit_variance, normalize_for_unit_variance, run_clt_experiment, verify_cbe_convergence, ExperimentRecord,
};
use cbeta::sinesde::{SdeConfig, SineSampler};
use cbeta::stats::MeanEstimate;
use cbeta::symcore::{Alpha, JackTable};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{self, CltTestConfig, ExpandConfig, VerifyTomlConfig};
use crate::output::{self, Gates};
use crate::SampleFormat;

/// Sampled angles must sit this close to the unit circle.
const MODULUS_GATE: f64 = 1e-8;

#[derive(Serialize)]
struct ExpandRecord {
    n: usize,
    value: Complex64,
    tail_estimate: f64,
    limit: Complex64,
    /// Bound on `|value·e^{−n f̂₀}/limit − 1|`; even `n` only.
    bound: Option<f64>,
    deviation: f64,
    /// `|value|·e^{−n Re f̂₀}`, compared against `subgauss_bound`.
    normalized_modulus: f64,
}

#[derive(Serialize)]
struct ExpandReport {
    beta: f64,
    alpha: String,
    degree: usize,
    function: Vec<(i64, f64, f64)>,
    subgauss_bound: Option<f64>,
    records: Vec<ExpandRecord>,
    gates_passed: bool,
}

pub fn expand(path: &Path) -> anyhow::Result<Gates> {
    let cfg: ExpandConfig = config::load(path)?;
    if cfg.n_list.is_empty() {
        bail!("n_list is empty");
    }
    let f = CircleFunction::from_coeffs(cfg.function.iter().map(|&(j, re, im)| (j, Complex64::new(re, im))));
    let alpha = Alpha::from_f64(2.0 / cfg.beta, 1000)?;
    let table = JackTable::new(alpha.clone(), cfg.degree)?;
    let series = GesselSeries::new(&f, &table, None)?;
    let limit = limit_laplace(&f, cfg.beta)?;
    let subgauss = if f.is_real() {
        Some(subgauss_bound(&f, cfg.beta)?)
    } else {
        None
    };

    let mut gates = Gates::default();
    let mut records = Vec::with_capacity(cfg.n_list.len());
    for &n in &cfg.n_list {
        let g = series.evaluate(n)?;
        let scale = (-(n as f64) * f.coeff(0)).exp();
        let relative = scale / limit;
        let deviation = (g.value * relative - 1.0).norm();
        let bound = if n % 2 == 0 {
            Some(cbe_error_bound(&f, cfg.beta, n / 2)?)
        } else {
            None
        };
        if let Some(b) = bound {
            let allowance = b + g.tail_estimate * relative.norm();
            gates.check(deviation <= allowance, || {
                format!("n = {n}: deviation {deviation:.3e} exceeds bound {allowance:.3e}")
            });
        }
        let normalized_modulus = g.value.norm() * scale.norm();
        if let Some(s) = subgauss {
            let allowance = s + g.tail_estimate * scale.norm();
            gates.check(normalized_modulus <= allowance, || {
                format!("n = {n}: {normalized_modulus:.6} exceeds subgaussian bound {allowance:.6}")
            });
        }
        records.push(ExpandRecord {
            n,
            value: g.value,
            tail_estimate: g.tail_estimate,
            limit,
            bound,
            deviation,
            normalized_modulus,
        });
    }
    let report = ExpandReport {
        beta: cfg.beta,
        alpha: alpha.to_string(),
        degree: cfg.degree,
        function: cfg.function.clone(),
        subgauss_bound: subgauss,
        records,
        gates_passed: gates.passed(),
    };
    match &cfg.output {
        Some(p) => output::write_json(p, &report)?,
        None => output::print_json(&report)?,
    }
    Ok(gates)
}

#[derive(Serialize)]
struct CbeLine<'a> {
    index: usize,
    n: usize,
    beta: f64,
    seed: u64,
    angles: &'a [f64],
    max_modulus_deviation: f64,
}

#[derive(Serialize)]
struct CbeSummary {
    n: usize,
    beta: f64,
    seed: u64,
    samples: usize,
    max_modulus_deviation: f64,
}

pub fn sample_cbe(
    n: usize,
    beta: f64,
    samples: usize,
    seed: u64,
    out: &Path,
    format: SampleFormat,
) -> anyhow::Result<Gates> {
    if n == 0 || !(beta > 0.0) {
        bail!("need n >= 1 and beta > 0");
    }
    let sampler = CbeSampler { n, beta, seed };
    let draws: Vec<CbeSample> = sampler.map(samples, |s| s.clone())?;
    let mut w = output::create(out)?;
    match format {
        SampleFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            let mut header = vec!["sample".to_string()];
            header.extend((1..=n).map(|k| format!("theta_{k}")));
            csv.write_record(&header)?;
            for (i, s) in draws.iter().enumerate() {
                let row = std::iter::once(i.to_string()).chain(s.angles.iter().map(f64::to_string));
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
        SampleFormat::Jsonl => {
            for (index, s) in draws.iter().enumerate() {
                let line = CbeLine {
                    index,
                    n,
                    beta,
                    seed,
                    angles: &s.angles,
                    max_modulus_deviation: s.max_modulus_deviation,
                };
                serde_json::to_writer(&mut w, &line)?;
                writeln!(w)?;
            }
        }
    }
    w.flush()?;

    let worst = draws.iter().map(|s| s.max_modulus_deviation).fold(0.0, f64::max);
    let mut gates = Gates::default();
    gates.check(worst <= MODULUS_GATE, || {
        format!("root modulus deviation {worst:.3e} exceeds {MODULUS_GATE:e}")
    });
    output::print_json(&CbeSummary {
        n,
        beta,
        seed,
        samples,
        max_modulus_deviation: worst,
    })?;
    Ok(gates)
}

#[derive(Serialize)]
struct SineDiagnostics {
    beta: f64,
    window: (f64, f64),
    grid_points: usize,
    paths: usize,
    seed: u64,
    /// Start time of the integration; paths start at `X_x(t0) = x·t0`.
    t0: f64,
    initialization: &'static str,
    steps: usize,
    log_step: f64,
    max_step: f64,
    repair_tolerance: f64,
    repair_magnitudes: Vec<f64>,
    max_repair: f64,
    mean_violation_fraction: f64,
    /// Point count in the window against its expectation `(b − a)/2π`.
    count: MeanEstimate,
    expected_count: f64,
    edge_points: usize,
    flat_hits: usize,
}

pub fn simulate_sine(
    beta: f64,
    window: (f64, f64),
    grid_points: usize,
    paths: usize,
    seed: u64,
    out: &Path,
    sidecar: &Path,
) -> anyhow::Result<Gates> {
    let (a, b) = window;
    if !(a < b) || grid_points < 2 || paths == 0 {
        bail!("need a < b, at least two grid points and at least one path");
    }
    let h = (b - a) / (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points)
        .map(|i| if i + 1 == grid_points { b } else { a + h * i as f64 })
        .collect();
    let cfg = SdeConfig::new(beta, grid, seed);
    let sampler = SineSampler::new(cfg.clone())?;
    let draws = sampler.map(paths, |s| s.clone())?;

    let mut w = output::create(out)?;
    {
        let mut csv = csv::WriterBuilder::new().flexible(true).from_writer(&mut w);
        csv.write_record(["path", "omega", "points"])?;
        for (i, s) in draws.iter().enumerate() {
            let row = [i.to_string(), s.omega.to_string()]
                .into_iter()
                .chain(s.configuration.points().iter().map(f64::to_string));
            csv.write_record(row)?;
        }
        csv.flush()?;
    }
    w.flush()?;

    let counts: Vec<f64> = draws.iter().map(|s| s.configuration.len() as f64).collect();
    let repair_magnitudes: Vec<f64> = draws.iter().map(|s| s.repair_magnitude).collect();
    let diagnostics = SineDiagnostics {
        beta,
        window,
        grid_points,
        paths,
        seed,
        t0: cfg.t0,
        initialization: "X_x(t0) = x t0",
        steps: cfg.steps(),
        log_step: cfg.log_step,
        max_step: cfg.max_step,
        repair_tolerance: cfg.repair_tolerance * (b - a),
        max_repair: repair_magnitudes.iter().copied().fold(0.0, f64::max),
        repair_magnitudes,
        mean_violation_fraction: draws.iter().map(|s| s.violation_fraction).sum::<f64>() / paths as f64,
        count: MeanEstimate::from_samples(&counts),
        expected_count: (b - a) / TAU,
        edge_points: draws.iter().map(|s| s.configuration.near_edge.len()).sum(),
        flat_hits: draws.iter().map(|s| s.configuration.flat_hits.len()).sum(),
    };
    output::write_json(sidecar, &diagnostics)?;
    Ok(Gates::default())
}

#[derive(Serialize)]
struct Timing {
    wall_clock_seconds: f64,
}

pub fn clt_test(path: &Path) -> anyhow::Result<Gates> {
    let mut cfg: CltTestConfig = config::load(path)?;
    cfg.clt.seed = cfg.seed;
    let f = if cfg.normalize {
        normalize_for_unit_variance(&cfg.function, cfg.beta)?
    } else {
        cfg.function.clone()
    };
    let start = Instant::now();
    let record = run_clt_experiment(&f, cfg.beta, &cfg.r_list, cfg.paths, &cfg.clt)?;
    let elapsed = start.elapsed().as_secs_f64();

    output::write_json(&cfg.output.json, &record)?;
    write_clt_table(&cfg.output.csv, &record)?;
    if let Some(p) = &cfg.output.timing {
        output::write_json(
            p,
            &Timing {
                wall_clock_seconds: elapsed,
            },
        )?;
    }

    let mut gates = Gates::default();
    gates.check(record.ks_decreasing, || {
        "KS distance does not decrease along the R sweep".into()
    });
    if let (Some(max), Some(last)) = (cfg.max_ks, record.results.last()) {
        gates.check(last.ks < max, || {
            format!("KS {:.4} at R = {} is not below {max}", last.ks, last.r)
        });
    }
    // Subgaussian bound E e^{S̄} ≤ e^{σ²/2}, allowing three standard errors.
    let bound = (limit_variance(&f, cfg.beta)? / 2.0).exp();
    for r in &record.results {
        gates.check(r.laplace.mean - 3.0 * r.laplace.stderr <= bound, || {
            format!(
                "R = {}: E e^S = {:.4} exceeds the subgaussian bound {bound:.4}",
                r.r, r.laplace.mean
            )
        });
    }
    for r in record.results.iter().filter(|r| r.truncation_flag) {
        eprintln!(
            "warning: R = {}: truncation bound {:.2e} exceeds the MC error",
            r.r, r.truncation_bound
        );
    }
    Ok(gates)
}

fn write_clt_table(path: &Path, record: &ExperimentRecord) -> anyhow::Result<()> {
    let mut w = output::create(path)?;
    {
        let mut csv = csv::Writer::from_writer(&mut w);
        csv.write_record(["r", "statistic", "value"])?;
        for r in &record.results {
            let mut rows: Vec<(String, f64)> = vec![
                ("ks".into(), r.ks),
                ("mean".into(), r.mean.mean),
                ("mean_stderr".into(), r.mean.stderr),
                ("variance".into(), r.variance),
                ("laplace".into(), r.laplace.mean),
                ("laplace_stderr".into(), r.laplace.stderr),
                ("truncation_bound".into(), r.truncation_bound),
                ("window_half_width".into(), r.window.1),
                ("max_repair".into(), r.max_repair),
                ("edge_points".into(), r.edge_points as f64),
            ];
            for &(p, emp, normal) in &r.quantiles {
                rows.push((format!("quantile_{p}"), emp));
                rows.push((format!("normal_quantile_{p}"), normal));
            }
            for (name, value) in rows {
                csv.write_record([r.r.to_string(), name, value.to_string()])?;
            }
        }
        csv.flush()?;
    }
    w.flush().context("writing CLT table")?;
    Ok(())
}

pub fn verify(path: &Path) -> anyhow::Result<Gates> {
    let mut cfg: VerifyTomlConfig = config::load(path)?;
    cfg.verify.seed = cfg.seed;
    let report = verify_cbe_convergence(&cfg.function, cfg.beta, &cfg.n_list, cfg.samples, &cfg.verify)?;
    match &cfg.output {
        Some(p) => output::write_json(p, &report)?,
        None => output::print_json(&report)?,
    }
    let mut gates = Gates::default();
    for s in &report.scales {
        gates.check(s.within_band, || {
            format!(
                "n = {}: difference {:.4} outside {} joint standard errors ({:.4})",
                s.n, s.difference, cfg.verify.band, s.joint_stderr
            )
        });
    }
    Ok(gates)
}
