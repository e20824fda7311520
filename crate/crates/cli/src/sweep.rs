//! Convergence sweeps: normalized templates at level `k = floor(tK)` compared
//! against the exact wave function at time `t`.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use renorm_core::{
    compute_template, exact_solution, l2_error, normalize_template, normalize_template_literal,
    Algorithm, ModelConfig, DEFAULT_ENUMERATION_CAP,
};

use crate::error::CliError;

pub const CSV_HEADER: [&str; 6] = ["K", "t", "k", "err_l2", "norm_defect", "algo"];

/// How `T_k` is scaled before comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `K^(-k)` with `k = floor(tK)`.
    #[default]
    Level,
    /// `K^(-tK)`, which only agrees with `Level` when `tK` is an integer.
    Literal,
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub max_symbol: u32,
    pub t: f64,
    /// `floor(tK)`.
    pub level: u64,
    pub err_l2: f64,
    /// `‖K^(-k) T_k‖₂ - 1`.
    pub norm_defect: f64,
    pub algo: Algorithm,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub t_values: Vec<f64>,
    pub k_values: Vec<u32>,
    pub algo: Algorithm,
    pub output_path: Option<PathBuf>,
    pub enumeration_cap: u64,
    pub normalization: Normalization,
}

impl SweepConfig {
    pub fn new(t_values: Vec<f64>, k_values: Vec<u32>, algo: Algorithm) -> Result<Self, CliError> {
        if t_values.is_empty() || k_values.is_empty() {
            return Err(CliError::Usage(
                "sweep needs at least one t and one K".into(),
            ));
        }
        if let Some(t) = t_values.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(CliError::Usage(format!(
                "t must be finite and nonnegative, got {t}"
            )));
        }
        if k_values.contains(&0) {
            return Err(CliError::Usage("K values must be positive".into()));
        }
        if k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage(
                "K values must be strictly increasing".into(),
            ));
        }
        Ok(SweepConfig {
            t_values,
            k_values,
            algo,
            output_path: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            normalization: Normalization::Level,
        })
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output_path = Some(path.into());
        self
    }
}

/// `floor(tK)`, except that a product within one ulp of an integer rounds to
/// it, so that e.g. `t = 0.29, K = 100` lands on level 29 and not 28.
pub fn level_for_time(t: f64, max_symbol: u32) -> u64 {
    let x = t * f64::from(max_symbol);
    let nearest = x.round();
    if (x - nearest).abs() <= f64::EPSILON * nearest.abs().max(1.0) {
        nearest as u64
    } else {
        x.floor() as u64
    }
}

fn grid_point(t: f64, max_symbol: u32, cfg: &SweepConfig) -> Result<ConvergenceRecord, CliError> {
    let level = level_for_time(t, max_symbol);
    let model = ModelConfig::with_default_init(max_symbol)?.with_cap(cfg.enumeration_cap)?;
    let template = compute_template(&model, level, cfg.algo)?;
    let psi = match cfg.normalization {
        Normalization::Level => normalize_template(&template)?,
        Normalization::Literal => normalize_template_literal(&template, t)?,
    };
    Ok(ConvergenceRecord {
        max_symbol,
        t,
        level,
        err_l2: l2_error(&psi, &exact_solution(t)),
        norm_defect: psi.norm() - 1.0,
        algo: cfg.algo,
    })
}

/// Runs every `(t, K)` pair, sorted by `(t, K)`, and writes the CSV when an
/// output path is configured.
pub fn run_convergence_sweep(cfg: &SweepConfig) -> Result<Vec<ConvergenceRecord>, CliError> {
    let grid: Vec<(f64, u32)> = cfg
        .t_values
        .iter()
        .flat_map(|&t| cfg.k_values.iter().map(move |&k| (t, k)))
        .collect();
    let mut records = grid
        .par_iter()
        .map(|&(t, k)| grid_point(t, k, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.max_symbol.cmp(&b.max_symbol)));

    if let Some(path) = &cfg.output_path {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        write_csv(&records, file).map_err(|e| CliError::io(path, e))?;
    }
    Ok(records)
}

fn float(x: f64) -> String {
    // 17 significant digits round-trip any double
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(records: &[ConvergenceRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.max_symbol.to_string(),
            float(r.t),
            r.level.to_string(),
            float(r.err_l2),
            float(r.norm_defect),
            r.algo.name().to_string(),
        ])?;
    }
    w.flush()
}
