// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
mod config;
mod error;

use config::{Format, Tolerances};

#[derive(Parser)]
#[command(
    name = "hyplab",
    version,
    about = "Hypergroup tables, joins and character amenability diagnostics"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct GlobalArgs {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// chebyshev, jacobi, assoc_legendre, pollaczek, soradi or graph.
    #[arg(long, global = true)]
    family: Option<String>,
    /// Family parameters, e.g. `a=2,b=4`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Truncation level.
    #[arg(short = 'N', global = true)]
    n: Option<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_decay_tail: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol_decay_slope: Option<f64>,
    #[arg(long, global = true)]
    tol_convergent: Option<f64>,
    #[arg(long, global = true)]
    tol_divergent: Option<f64>,
    #[arg(long, global = true)]
    tol_trivial: Option<f64>,
    #[arg(long, global = true)]
    tol_parity: Option<f64>,
    #[arg(long, global = true)]
    tol_join: Option<f64>,
}

impl GlobalArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            decay_tail: self.tol_decay_tail,
            decay_slope: self.tol_decay_slope,
            convergent: self.tol_convergent,
            divergent: self.tol_divergent,
            trivial: self.tol_trivial,
            parity: self.tol_parity,
            join: self.tol_join,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Recursion coefficients and Haar weights (n, a_n, b_n, c_n, h_n).
    FamilyInfo,
    /// Nonnegativity and row sums of the linearization table up to N.
    Verify,
    /// Classify characters on a grid or at listed points.
    Classify {
        /// `lo:hi:steps`, endpoints included.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Comma-separated points; `s0`, `s1`, `x0` and `xstar` are accepted.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Solve the modified Reiter program at one point.
    Reiter {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// C = {0, …, r}.
        #[arg(long)]
        c_radius: Option<usize>,
        /// S = {0, …, s}; defaults to N.
        #[arg(long)]
        support: Option<usize>,
        /// Norm bound.
        #[arg(long = "M")]
        m: Option<f64>,
        /// Support sizes for the ε(N) curve, comma-separated.
        #[arg(long)]
        curve: Option<String>,
        /// Write the ε(N) curve as CSV here.
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Build H ∨ J, check the axioms, optionally list the dual and compare verdicts.
    Join {
        /// Finite H: JSON spec or a path to one. Defaults to ℤ₂.
        #[arg(long)]
        h: Option<String>,
        /// Finite J: JSON spec or path. Without it J is the polynomial family.
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// Enumerate the dual (finite J only).
        #[arg(long)]
        dual: bool,
        /// Points of J (polynomial J only) for the transfer comparison.
        #[arg(long, allow_hyphen_values = true)]
        transfer: Option<String>,
    },
    /// |α(n)| with its running-max envelope and fitted slope.
    ScanDecay {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Imaginary part of z for the disc family.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        /// Direction (m, n) of the diagonal for the disc family.
        #[arg(long)]
        direction: Option<String>,
    },
    /// Gram matrix deviation of P_0..P_N against the orthogonality measure.
    Orthocheck {
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Convolution table p(n, m) for n, m <= N.
    ExportTable,
    /// Point derivation probe at x.
    Derivation {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn init_threads() {
    if let Some(n) = std::env::var("HYPLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match commands::run(&cli.global, &cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hyplab: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
