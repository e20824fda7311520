//! Batch harness around `renorm-core`: multiway graph export, convergence
//! sweeps of normalized templates against the exact wave function, and the
//! `renorm` command-line front end.

pub mod app;
pub mod config;
pub mod dot;
pub mod error;
pub mod fit;
pub mod sweep;

pub use dot::{export_multiway_dot, DotOptions};
pub use error::CliError;
pub use fit::fit_convergence_rate;
pub use sweep::{
    level_for_time, run_convergence_sweep, write_csv, ConvergenceRecord, Normalization,
    SweepConfig, CSV_HEADER,
};

pub use renorm_core as core;
