//! `gstool`: command-line front end for the set-function toolkit.
//!
//! Exit codes: 0 when a verdict is reached, 1 when a checked property is
//! violated, 2 on usage errors (bad arguments, unreadable or malformed files).

mod commands;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gstool", version, about = "Exact tools for gross-substitutes valuations")]
pub struct Cli {
    /// Print machine-readable JSON instead of a text summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel scans and searches; results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report class memberships of a valuation.
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Exit 1 unless the valuation belongs to this class.
        #[arg(long)]
        require: Option<Class>,
    },
    /// Apply a symmetrization and print the resulting valuation.
    Symmetrize(SymmetrizeArgs),
    /// Welfare convolution of two valuations on the same items.
    Convolve {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximation ratio of `g` against `f`.
    Gap {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Upper-bounding mode: check `f <= g` and report `max g/f`.
        #[arg(long)]
        from_above: bool,
    },
    /// Build a standard valuation.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the LP tree search.
    Certify {
        #[command(subcommand)]
        kind: CertifyKind,
    },
    /// Demand at given prices, by brute force and by greedy.
    Demand {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated prices, one per item, e.g. `1,1/2,0`.
        #[arg(long)]
        prices: String,
    },
    /// Run a named reproduction and compare with its expected values.
    Reproduce {
        /// Claim identifier; `list` prints all of them.
        claim: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Monotone,
    Additive,
    BudgetAdditive,
    Submodular,
    Gs,
    Sws,
    Xos,
    Subadditive,
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Max-symmetrize this pair of items (names or indices).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Option<Vec<String>>,
    /// Partial symmetrization raising `g(Sy)` to `max(g(Sx), g(Sy))`.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub partial: Option<Vec<String>>,
    /// Symmetrize to the fixpoint of the symmetries of this valuation.
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Budget-additive `BA(k, d)` with budget 1.
    Ba {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// The GS approximator of `BA(k, 1)` within `2k/(k+1)`.
    Approx2 {
        #[arg(long)]
        k: usize,
    },
    /// `min(B, Σ v_j)`.
    BudgetAdditive {
        #[arg(long)]
        values: String,
        #[arg(long)]
        budget: String,
    },
    Additive {
        #[arg(long)]
        values: String,
    },
    UnitDemand {
        #[arg(long)]
        values: String,
    },
    /// Threshold construction from item values and non-increasing thresholds.
    Threshold {
        #[arg(long)]
        values: String,
        #[arg(long)]
        thresholds: String,
    },
    /// The `q x q` XOS grid.
    XosGrid {
        #[arg(long)]
        q: usize,
    },
    /// The submodular approximator of the XOS grid.
    XosGridSubmod {
        #[arg(long)]
        q: usize,
    },
    /// The monotone submodular four-item table that is not GS.
    ExampleNotSubmodular,
    /// Threshold approximator of a budget-additive valuation with at least 16 items.
    BaLoglog {
        #[arg(long)]
        f: PathBuf,
    },
    /// Level-based approximator of a budget-additive valuation.
    BaLog {
        #[arg(long)]
        f: PathBuf,
    },
    /// Random coverage valuation sandwiching a budget-additive one.
    CoverageBa {
        #[arg(long)]
        f: PathBuf,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "791/500")]
        rho: String,
    },
    /// Weighted matroid rank from a matroid JSON file.
    Wmrf {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        weights: String,
    },
    /// Valuation induced by a network JSON file.
    Induce {
        #[arg(long)]
        network: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Combos {
    Full,
    Set1,
    Set2,
}

#[derive(Subcommand, Debug)]
pub enum CertifyKind {
    /// Five-item search over the symmetrization-violation constraints.
    S1 {
        #[arg(long, value_enum, default_value_t = Combos::Full)]
        combos: Combos,
        #[arg(long)]
        with_mono_submod: bool,
        /// Write the certificate JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a GS valuation approximating `f` within `rho`.
    Gap {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        rho: String,
        /// Require the approximator to share the symmetries of `f`.
        #[arg(long)]
        sym: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan subsets of the 40 combinations for infeasible ones.
    Sufficient {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        budget: u64,
    },
    /// Re-check a certificate file.
    Replay {
        #[arg(long)]
        cert: PathBuf,
    },
}

/// How a command ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
