//! Experiment orchestration: config files, digest-keyed persistent runs,
//! rate reports, verdicts, and sweep summaries.

pub mod config;
pub mod run;

pub use config::{ExperimentConfig, SweepConfig};
pub use run::{run_experiment, run_sweep, CellStatus, CellVerdict, Verdict};
