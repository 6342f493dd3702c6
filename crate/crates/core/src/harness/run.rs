//! Experiment execution: schedules the (functional, p, n) grid, persists one
//! JSON file per cell so interrupted runs resume without resampling, writes
//! rate reports and a machine-readable verdict.
//!
//! Everything under the digest directory except run_meta.json is a pure
//! function of the resolved config, byte for byte; worker counts and rerun
//! counts cannot leak into it. run_meta.json carries the wall time and tool
//! version and is the one deliberately non-reproducible file.

use crate::analysis::rates::serialize_extended;
use crate::analysis::{
    baseline_lipschitz_rate, check_admissible, estimate_lp_error, fit_rate, theoretical_rate,
    Admissibility, ErrorEstimate, LpEstimateConfig, RateReport,
};
use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, SweepConfig};
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Every estimate sits at rounding level: the scheme is exact here.
    Exact,
    /// Admissible, p > 2, and the fitted slope reaches the prediction minus
    /// the tolerance.
    Pass,
    /// Admissible, p > 2, and the fitted slope falls short.
    Fail,
    /// No certified prediction applies (inadmissible pair or p <= 2); the
    /// slope is reported without a pass/fail claim.
    Informational,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellStatus::Exact => "exact",
            CellStatus::Pass => "pass",
            CellStatus::Fail => "fail",
            CellStatus::Informational => "informational",
        }
    }
}

/// Outcome for one (functional, p) ladder.
#[derive(Debug, Clone, Serialize)]
pub struct CellVerdict {
    pub functional: String,
    pub p: f64,
    pub theoretical_rate: Option<f64>,
    pub baseline_rate: Option<f64>,
    pub fitted_slope: Option<f64>,
    pub last_octave_slope: Option<f64>,
    pub status: CellStatus,
}

/// Machine-readable outcome of one experiment. Wall time deliberately lives
/// in run_meta.json instead, so this file reproduces byte-identically.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub digest: String,
    pub name: String,
    pub alpha: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub alpha_tilde: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub beta: f64,
    pub admissible: Admissibility,
    pub tolerance: f64,
    pub cells: Vec<CellVerdict>,
    pub pass: bool,
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, bytes)?;
    fs::rename(tmp, path)?;
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn load_cell(path: &Path, n: usize, samples: usize) -> Option<ErrorEstimate> {
    let bytes = fs::read(path).ok()?;
    let est: ErrorEstimate = serde_json::from_slice(&bytes).ok()?;
    (est.n == n && est.samples == samples).then_some(est)
}

/// Run one experiment under `out_root/<digest>/`, reusing any completed
/// cells found there.
pub fn run_experiment(cfg: &ExperimentConfig, out_root: &Path) -> Result<Verdict> {
    let started = Instant::now();
    cfg.validate()?;
    let resolved = cfg.resolved();
    let digest = resolved.digest()?;
    let dir = out_root.join(&digest);
    let cells_dir = dir.join("cells");
    let reports_dir = dir.join("reports");
    fs::create_dir_all(&cells_dir)?;
    fs::create_dir_all(&reports_dir)?;
    write_atomic(&dir.join("config.resolved.json"), &pretty(&resolved)?)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    let x0 = resolved.x0.clone().expect("resolved config has explicit x0");

    let alpha = cfg.levy.alpha();
    let alpha_tilde = cfg.levy.alpha_tilde();
    let beta = cfg.drift.beta();
    let admissible = check_admissible(alpha, alpha_tilde, beta)?;

    let mut cells = Vec::with_capacity(cfg.functionals.len() * cfg.p_values.len());
    for functional in &cfg.functionals {
        let label = functional.label();
        for &p in &cfg.p_values {
            let mut estimates = Vec::with_capacity(cfg.n_ladder.len());
            for &n in &cfg.n_ladder {
                let cell_path = cells_dir.join(format!("{label}_p{p}_n{n}.json"));
                let estimate = match load_cell(&cell_path, n, cfg.samples) {
                    Some(found) => found,
                    None => {
                        let est = pool.install(|| {
                            estimate_lp_error(&LpEstimateConfig {
                                levy: &cfg.levy,
                                drift: &cfg.drift,
                                x0: &x0,
                                n,
                                n_ref: cfg.n_ref,
                                p,
                                samples: cfg.samples,
                                functional: *functional,
                                seed: cfg.seed,
                            })
                        })?;
                        write_atomic(&cell_path, &pretty(&est)?)?;
                        est
                    }
                };
                estimates.push(estimate);
            }
            let fit = fit_rate(&estimates)?;
            let prediction = if admissible.admissible && p > 2.0 {
                Some(theoretical_rate(alpha, alpha_tilde, beta, p)?)
            } else {
                None
            };
            let baseline = Some(baseline_lipschitz_rate(alpha, p)?);
            let status = if fit.exact {
                CellStatus::Exact
            } else if let (Some(t), Some(s)) = (prediction, fit.fitted_slope) {
                if s >= t - cfg.tolerance {
                    CellStatus::Pass
                } else {
                    CellStatus::Fail
                }
            } else {
                CellStatus::Informational
            };
            let report = RateReport {
                functional: label.clone(),
                p,
                n_values: cfg.n_ladder.clone(),
                errors: estimates,
                fit: fit.clone(),
                theoretical_rate: prediction,
                baseline_rate: baseline,
                admissible: Some(admissible),
            };
            write_atomic(&reports_dir.join(format!("{label}_p{p}.json")), &pretty(&report)?)?;
            let mut csv = Vec::new();
            report.write_csv(&mut csv)?;
            write_atomic(&reports_dir.join(format!("{label}_p{p}.csv")), &csv)?;
            cells.push(CellVerdict {
                functional: label.clone(),
                p,
                theoretical_rate: prediction,
                baseline_rate: baseline,
                fitted_slope: fit.fitted_slope,
                last_octave_slope: fit.last_octave_slope,
                status,
            });
        }
    }
    let pass = cells.iter().all(|c| c.status != CellStatus::Fail);
    let verdict = Verdict {
        digest: digest.clone(),
        name: cfg.name.clone(),
        alpha,
        alpha_tilde,
        beta,
        admissible,
        tolerance: cfg.tolerance,
        cells,
        pass,
    };
    write_atomic(&dir.join("verdict.json"), &pretty(&verdict)?)?;
    let meta = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "wall_time_secs": started.elapsed().as_secs_f64(),
    });
    write_atomic(&dir.join("run_meta.json"), &pretty(&meta)?)?;
    Ok(verdict)
}

fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn csv_opt(v: Option<f64>) -> String {
    v.map(csv_float).unwrap_or_default()
}

/// Run every cell of a sweep and write one `summary.csv` under `out_root`.
pub fn run_sweep(sweep: &SweepConfig, out_root: &Path) -> Result<Vec<Verdict>> {
    if sweep.cells.is_empty() {
        return Err(Error::Config("sweep has no cells".into()));
    }
    let mut verdicts = Vec::with_capacity(sweep.cells.len());
    for cfg in &sweep.cells {
        verdicts.push(run_experiment(cfg, out_root)?);
    }
    let mut csv = String::from(
        "name,digest,alpha,alpha_tilde,beta,p,functional,admissible,\
         theoretical_rate,fitted_slope,last_octave_slope,status\n",
    );
    for v in &verdicts {
        for c in &v.cells {
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                v.name,
                v.digest,
                csv_float(v.alpha),
                csv_float(v.alpha_tilde),
                csv_float(v.beta),
                c.p,
                c.functional,
                v.admissible.admissible,
                csv_opt(c.theoretical_rate),
                csv_opt(c.fitted_slope),
                csv_opt(c.last_octave_slope),
                c.status.as_str()
            )
            .expect("writing to a String cannot fail");
        }
    }
    write_atomic(&out_root.join("summary.csv"), csv.as_bytes())?;
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ErrorFunctional;
    use crate::levy::{LevyKind, LevySpec};
    use crate::sde::{DriftKind, DriftSpec};
    use std::collections::BTreeMap;
    use std::path::PathBuf;

    fn config(name: &str, drift: DriftKind) -> ExperimentConfig {
        ExperimentConfig {
            name: name.into(),
            levy: LevySpec::new(LevyKind::Brownian { scale: 2.0 }, 1).unwrap(),
            drift: DriftSpec::new(drift, 1).unwrap(),
            x0: None,
            n_ladder: vec![8, 16, 64],
            n_ref: 512,
            p_values: vec![2.01],
            functionals: vec![ErrorFunctional::SupNorm],
            samples: 100,
            seed: 2024,
            workers: Some(2),
            tolerance: 0.15,
        }
    }

    /// All files below `dir`, keyed by relative path.
    fn snapshot(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
        fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
            for entry in fs::read_dir(dir).unwrap() {
                let path = entry.unwrap().path();
                if path.is_dir() {
                    walk(root, &path, out);
                } else {
                    let rel = path.strip_prefix(root).unwrap().to_path_buf();
                    out.insert(rel, fs::read(&path).unwrap());
                }
            }
        }
        let mut out = BTreeMap::new();
        walk(dir, dir, &mut out);
        out
    }

    fn without_meta(
        snap: &BTreeMap<PathBuf, Vec<u8>>,
    ) -> BTreeMap<PathBuf, Vec<u8>> {
        snap.iter()
            .filter(|(k, _)| k.file_name().unwrap() != "run_meta.json")
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    #[test]
    fn zero_drift_runs_to_an_exact_verdict() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config("exactness", DriftKind::Zero);
        let verdict = run_experiment(&cfg, dir.path()).unwrap();
        assert!(verdict.pass);
        assert_eq!(verdict.cells.len(), 1);
        assert_eq!(verdict.cells[0].status, CellStatus::Exact);
        let run_dir = dir.path().join(&verdict.digest);
        for file in [
            "config.resolved.json",
            "verdict.json",
            "run_meta.json",
            "cells/sup_norm_p2.01_n8.json",
            "reports/sup_norm_p2.01.json",
            "reports/sup_norm_p2.01.csv",
        ] {
            assert!(run_dir.join(file).is_file(), "missing {file}");
        }
    }

    #[test]
    fn reruns_and_worker_counts_reproduce_bytes() {
        let smooth = DriftKind::SmoothSine {
            amplitude: 1.0,
            frequency: 1.0,
        };
        let dir_a = tempfile::tempdir().unwrap();
        let mut cfg = config("determinism", smooth.clone());
        let v1 = run_experiment(&cfg, dir_a.path()).unwrap();
        let first = snapshot(&dir_a.path().join(&v1.digest));
        // Resumed rerun in place.
        run_experiment(&cfg, dir_a.path()).unwrap();
        let second = snapshot(&dir_a.path().join(&v1.digest));
        assert_eq!(without_meta(&first), without_meta(&second));
        // Fresh run with a different worker count.
        cfg.workers = Some(1);
        let dir_b = tempfile::tempdir().unwrap();
        let v2 = run_experiment(&cfg, dir_b.path()).unwrap();
        assert_eq!(v1.digest, v2.digest);
        let other = snapshot(&dir_b.path().join(&v2.digest));
        assert_eq!(without_meta(&first), without_meta(&other));
    }

    #[test]
    fn completed_cells_are_reused_not_resampled() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(
            "resume",
            DriftKind::SmoothSine {
                amplitude: 1.0,
                frequency: 1.0,
            },
        );
        let verdict = run_experiment(&cfg, dir.path()).unwrap();
        let cell = dir
            .path()
            .join(&verdict.digest)
            .join("cells/sup_norm_p2.01_n8.json");
        // Plant a sentinel value; a resumed run must trust the stored cell.
        let planted = ErrorEstimate {
            n: 8,
            value: 0.123456,
            ci_half_width: 0.001,
            samples: cfg.samples,
        };
        fs::write(&cell, serde_json::to_vec_pretty(&planted).unwrap()).unwrap();
        let resumed = run_experiment(&cfg, dir.path()).unwrap();
        let report: serde_json::Value = serde_json::from_slice(
            &fs::read(
                dir.path()
                    .join(&resumed.digest)
                    .join("reports/sup_norm_p2.01.json"),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(report["errors"][0]["value"].as_f64().unwrap(), 0.123456);
        // A corrupt cell is resampled instead of trusted.
        fs::write(&cell, b"{not json").unwrap();
        run_experiment(&cfg, dir.path()).unwrap();
        let recovered: ErrorEstimate =
            serde_json::from_slice(&fs::read(&cell).unwrap()).unwrap();
        assert_ne!(recovered.value, 0.123456);
    }

    #[test]
    fn sweeps_write_one_summary_row_per_cell() {
        let dir = tempfile::tempdir().unwrap();
        let sweep = SweepConfig {
            cells: vec![
                config("a", DriftKind::Zero),
                config(
                    "b",
                    DriftKind::Constant { values: vec![0.4] },
                ),
            ],
        };
        let verdicts = run_sweep(&sweep, dir.path()).unwrap();
        assert_eq!(verdicts.len(), 2);
        let text = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,digest,alpha,alpha_tilde,beta,p,functional,admissible,\
             theoretical_rate,fitted_slope,last_octave_slope,status"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].starts_with("a,"));
        assert!(rows[0].contains(",inf,"), "Brownian alpha_tilde prints inf");
        assert!(rows[0].ends_with(",exact"));
        assert!(rows[1].starts_with("b,"));
        assert!(rows[1].ends_with(",exact"));
    }

    #[test]
    fn invalid_configs_do_not_touch_the_disk() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = config("bad", DriftKind::Zero);
        cfg.samples = 10;
        assert!(run_experiment(&cfg, dir.path()).is_err());
        assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
    }
}
