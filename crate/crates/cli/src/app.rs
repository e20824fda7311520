//! Argument parsing and subcommand dispatch for the `renorm` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use renorm_core::{
    compute_template, exact_solution, expm_2x2, expm_limit, Algorithm, Matrix2c, ModelConfig, Word,
    DEFAULT_ENUMERATION_CAP,
};

use crate::config::expand_config;
use crate::dot::{export_multiway_dot, DotOptions};
use crate::error::CliError;
use crate::fit::fit_convergence_rate;
use crate::sweep::{run_convergence_sweep, write_csv, Normalization, SweepConfig};

#[derive(Debug, Parser)]
#[command(
    name = "renorm",
    version,
    about = "Append-rule multiway system, its qubit coarse-graining, and convergence checks",
    args_override_self = true,
    after_help = "Any subcommand also accepts --config FILE: a key = value file of flags \
                  (flags given on the command line override it)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgoArg {
    Bruteforce,
    Recurrence,
    Closedform,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Bruteforce => Algorithm::BruteForce,
            AlgoArg::Recurrence => Algorithm::Recurrence,
            AlgoArg::Closedform => Algorithm::ClosedForm,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export the multiway system (or its renormalization) as a Graphviz digraph.
    Graph {
        /// Largest symbol index; the alphabet is a_0..=a_K.
        #[arg(long = "K")]
        max_symbol: u32,
        /// Number of levels below the initial word.
        #[arg(long)]
        depth: u64,
        /// Label vertices by coarse-grained qubit terms (x = |0>, y = |1>).
        #[arg(long)]
        renormalized: bool,
        /// Draw the K identity rewrites as parallel edges instead of one "×K" edge.
        #[arg(long)]
        parallel_edges: bool,
        /// Initial word as a subindex string, e.g. "0" or "012" (hyphenated when K > 9).
        #[arg(long, default_value = "0")]
        init: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Print the exact template T_k as JSON.
    Template {
        #[arg(long = "K")]
        max_symbol: u32,
        /// Level k.
        #[arg(long = "k")]
        level: u64,
        #[arg(long, value_enum, default_value = "closedform")]
        algo: AlgoArg,
        #[arg(long, default_value = "0")]
        init: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Print the exact wave function cos t |0> - i sin t |1> as JSON.
    Wave {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Sweep (t, K), compare K^-k T_k (k = floor(tK)) with the exact wave
    /// function, write CSV and print the fitted log-log slope per t.
    #[command(
        long_about = "Sweep (t, K), compare K^-k T_k with the exact wave function, write CSV \
                      and print the fitted log-log slope per t.\n\n\
                      The level is k = floor(t*K), except that a product within one ulp of an \
                      integer is rounded to that integer to avoid floating-point floor jitter."
    )]
    Converge {
        #[arg(long = "t-list", value_delimiter = ',', action = ArgAction::Set, required = true)]
        t_list: Vec<f64>,
        #[arg(long = "K-list", alias = "k-list", value_delimiter = ',', action = ArgAction::Set, required = true)]
        k_list: Vec<u32>,
        #[arg(long, value_enum, default_value = "closedform")]
        algo: AlgoArg,
        /// CSV destination; stdout when omitted (slopes then go to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// Scale by K^(-tK) instead of K^(-floor(tK)).
        #[arg(long)]
        literal_normalization: bool,
    },
    /// Compare (I - i t X / n)^n with exp(-i t X) for each n.
    ExpmCheck {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long = "n-list", value_delimiter = ',', action = ArgAction::Set, required = true)]
        n_list: Vec<u64>,
    },
}

fn model(max_symbol: u32, init: &str, cap: u64) -> Result<ModelConfig, CliError> {
    if max_symbol == 0 {
        return Err(CliError::Usage("--K must be at least 1".into()));
    }
    let word = Word::parse(init, max_symbol)?;
    Ok(ModelConfig::new(max_symbol, word, cap)?)
}

/// Shortest round-trip decimal, with `-0` printed as `0`.
fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn complex_json(z: Complex64) -> String {
    format!("[{},{}]", num(z.re), num(z.im))
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_stdout(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Graph {
            max_symbol,
            depth,
            renormalized,
            parallel_edges,
            init,
            cap,
        } => {
            let cfg = model(max_symbol, &init, cap)?;
            let opts = DotOptions {
                renormalized,
                parallel_edges,
            };
            out.write_all(export_multiway_dot(&cfg, depth, opts)?.as_bytes())
                .map_err(io_stdout)
        }
        Command::Template {
            max_symbol,
            level,
            algo,
            init,
            cap,
        } => {
            let cfg = model(max_symbol, &init, cap)?;
            let t = compute_template(&cfg, level, algo.into())?;
            writeln!(out, "{}", t.to_json()).map_err(io_stdout)
        }
        Command::Wave { t } => {
            if !t.is_finite() {
                return Err(CliError::Usage("--t must be finite".into()));
            }
            let psi = exact_solution(t);
            writeln!(
                out,
                "{{\"t\":{},\"c0\":{},\"c1\":{}}}",
                num(t),
                complex_json(psi.c0()),
                complex_json(psi.c1())
            )
            .map_err(io_stdout)
        }
        Command::Converge {
            t_list,
            k_list,
            algo,
            out: path,
            cap,
            literal_normalization,
        } => {
            let mut cfg = SweepConfig::new(t_list.clone(), k_list, algo.into())?;
            cfg.enumeration_cap = cap;
            if literal_normalization {
                cfg.normalization = Normalization::Literal;
            }
            let to_stdout = path.is_none();
            cfg.output_path = path;
            let records = run_convergence_sweep(&cfg)?;
            let slope_sink: &mut dyn Write = if to_stdout {
                write_csv(&records, &mut *out).map_err(io_stdout)?;
                err
            } else {
                out
            };
            let mut ts = t_list;
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            for t in ts {
                let at_t: Vec<_> = records.iter().filter(|r| r.t == t).cloned().collect();
                let line = match fit_convergence_rate(&at_t) {
                    Ok(slope) => format!("t={} slope={}", num(t), sci(slope)),
                    Err(e) => format!("t={} slope=n/a ({e})", num(t)),
                };
                writeln!(slope_sink, "{line}").map_err(io_stdout)?;
            }
            Ok(())
        }
        Command::ExpmCheck { t, n_list } => {
            if !t.is_finite() {
                return Err(CliError::Usage("--t must be finite".into()));
            }
            if n_list.contains(&0) {
                return Err(CliError::Usage("n values must be positive".into()));
            }
            let m = Matrix2c::pauli_x().scale(Complex64::new(0.0, -t));
            let exact = expm_2x2(&m);
            writeln!(out, "n,err_max,ratio").map_err(io_stdout)?;
            let mut prev: Option<f64> = None;
            for n in n_list {
                let e = expm_limit(&m, n).max_abs_diff(&exact);
                let ratio = prev.map(|p| sci(e / p)).unwrap_or_default();
                writeln!(out, "{n},{},{ratio}", sci(e)).map_err(io_stdout)?;
                prev = Some(e);
            }
            Ok(())
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code:
/// 0 success, 1 usage error, 2 enumeration cap exceeded, 3 I/O error.
pub fn run(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
