//! Command-line front end: run experiments, validate samplers against their
//! characteristic exponents, sweep rate tables, and query admissibility.
//!
//! Exit codes: 0 success, 1 tolerance failure (a failed verdict or sampler
//! check), 2 invalid input.

use clap::{Parser, Subcommand};
use levy_em::analysis::{check_admissible, theoretical_rate};
use levy_em::harness::{run_experiment, run_sweep, CellStatus, ExperimentConfig, SweepConfig, Verdict};
use levy_em::levy::validate::{
    cf_threshold, default_lambda_grid, default_t_grid, validate_char_exponent, verify_h3_moments,
};
use levy_em::levy::LevySpec;
use levy_em::rng::RngFactory;
use levy_em::Result;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "levy-em",
    version,
    about = "Strong-rate experiments for the Euler-Maruyama scheme under Levy noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo sample-count override.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Output directory [default: $LEVY_EM_OUT_DIR or ./runs].
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Worker-thread count.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config; exit 1 if its verdict fails.
    Run { config: PathBuf },
    /// Test a driver spec: characteristic function at three step sizes plus
    /// small-time moment scaling.
    ValidateSampler { spec: PathBuf },
    /// Run every cell of a sweep config and write one summary.csv.
    RateTable { sweep: PathBuf },
    /// Check beta > max(1 - alpha/2, 2 - alpha - alpha_tilde) and print the
    /// predicted rate; "inf" is accepted for alpha_tilde and beta.
    Admissible {
        alpha: f64,
        alpha_tilde: f64,
        beta: f64,
    },
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out_dir
        .clone()
        .or_else(|| std::env::var_os("LEVY_EM_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("./runs"))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = std::fs::read(path)?;
    Ok(serde_json::from_slice(&bytes)?)
}

fn apply_overrides(cfg: &mut ExperimentConfig, cli: &Cli) {
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(samples) = cli.samples {
        cfg.samples = samples;
    }
    if let Some(workers) = cli.workers {
        cfg.workers = Some(workers);
    }
}

/// Six significant decimals, trailing zeros trimmed; infinities as "inf".
fn trim(v: f64) -> String {
    if !v.is_finite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn print_verdict(v: &Verdict) {
    let name = if v.name.is_empty() { "(unnamed)" } else { &v.name };
    println!("experiment {name} [{}]", v.digest);
    let verdict_word = if v.admissible.admissible {
        "admissible"
    } else {
        "not admissible"
    };
    println!(
        "  alpha = {}, alpha_tilde = {}, beta = {}: {verdict_word}, margin {}",
        trim(v.alpha),
        trim(v.alpha_tilde),
        trim(v.beta),
        trim(v.admissible.margin)
    );
    for c in &v.cells {
        match c.status {
            CellStatus::Exact => {
                println!(
                    "  {} p={}: exact (all estimates at rounding level)",
                    c.functional, c.p
                );
            }
            CellStatus::Informational => {
                println!(
                    "  {} p={}: fitted slope {} (no certified prediction): informational",
                    c.functional,
                    c.p,
                    c.fitted_slope.map(trim).unwrap_or_default()
                );
            }
            CellStatus::Pass | CellStatus::Fail => {
                println!(
                    "  {} p={}: fitted slope {}, last octave {}, predicted {} - {}: {}",
                    c.functional,
                    c.p,
                    c.fitted_slope.map(trim).unwrap_or_default(),
                    c.last_octave_slope.map(trim).unwrap_or_default(),
                    c.theoretical_rate.map(trim).unwrap_or_default(),
                    trim(v.tolerance),
                    pass_str(c.status == CellStatus::Pass)
                );
            }
        }
    }
    println!("  verdict: {}", pass_str(v.pass));
}

fn cmd_run(cli: &Cli, path: &Path) -> Result<bool> {
    let mut cfg: ExperimentConfig = load_json(path)?;
    apply_overrides(&mut cfg, cli);
    let verdict = run_experiment(&cfg, &out_dir(cli))?;
    print_verdict(&verdict);
    Ok(verdict.pass)
}

fn cmd_rate_table(cli: &Cli, path: &Path) -> Result<bool> {
    let mut sweep: SweepConfig = load_json(path)?;
    for cell in &mut sweep.cells {
        apply_overrides(cell, cli);
    }
    let dir = out_dir(cli);
    let verdicts = run_sweep(&sweep, &dir)?;
    for v in &verdicts {
        print_verdict(v);
    }
    println!("summary: {}", dir.join("summary.csv").display());
    Ok(verdicts.iter().all(|v| v.pass))
}

fn cmd_validate_sampler(cli: &Cli, path: &Path) -> Result<bool> {
    let spec: LevySpec = load_json(path)?;
    spec.validate()?;
    let samples = cli.samples.unwrap_or(20_000);
    let seed = cli.seed.unwrap_or(0);
    let factory = RngFactory::new(seed).derive("validate-sampler");
    let lambdas = default_lambda_grid(spec.dim);
    let mut all = true;

    println!(
        "characteristic function: {} frequencies, {} draws per dt, threshold {}",
        lambdas.len(),
        samples,
        trim(cf_threshold(samples))
    );
    for (i, dt) in [1.0, 1.0 / 16.0, 1.0 / 256.0].into_iter().enumerate() {
        let mut rng = factory.stream(i as u64);
        let report = validate_char_exponent(&spec, dt, samples, &lambdas, &mut rng)?;
        let worst = report.rows.iter().map(|r| r.gap).fold(0.0, f64::max);
        println!(
            "  dt = {:<10} worst gap {}: {}",
            trim(dt),
            trim(worst),
            pass_str(report.pass)
        );
        all &= report.pass;
    }

    println!("moment scaling: {samples} draws per time");
    for (i, p) in [1.0, 2.0].into_iter().enumerate() {
        let mut rng = factory.stream(100 + i as u64);
        let report = verify_h3_moments(&spec, p, &default_t_grid(), samples, &mut rng)?;
        let side = if report.heavy_tail {
            " (heavy tail: one-sided)"
        } else {
            ""
        };
        println!(
            "  p = {p}: slope {} vs target {}{side}: {}",
            trim(report.slope),
            trim(report.target),
            pass_str(report.pass)
        );
        all &= report.pass;
    }
    Ok(all)
}

fn cmd_admissible(alpha: f64, alpha_tilde: f64, beta: f64) -> Result<bool> {
    let adm = check_admissible(alpha, alpha_tilde, beta)?;
    if adm.admissible {
        let rate = theoretical_rate(alpha, alpha_tilde, beta, 2.01)?;
        println!(
            "admissible, margin {}, theoretical L_p rate at p=2.01: {}",
            trim(adm.margin),
            trim(rate)
        );
    } else {
        println!(
            "not admissible: beta = {} does not exceed the threshold {} (margin {})",
            trim(beta),
            trim(adm.threshold),
            trim(adm.margin)
        );
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { config } => cmd_run(&cli, config),
        Command::ValidateSampler { spec } => cmd_validate_sampler(&cli, spec),
        Command::RateTable { sweep } => cmd_rate_table(&cli, sweep),
        Command::Admissible {
            alpha,
            alpha_tilde,
            beta,
        } => cmd_admissible(*alpha, *alpha_tilde, *beta),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
