//! `cvx` — batch driver for the experiment suite.
//!
//! One process, one experiment per invocation, artifacts on disk.  Exit
//! status 0 means every asserted inequality held; 1 means the run finished
//! but at least one assertion failed; 2 means the run could not be carried
//! out at all (malformed spec, impossible configuration, I/O trouble).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cvx::experiments::{
    finish, run_capacity, run_counterexample, run_distillability, run_extremality,
    run_gaussify_converge, run_max_entropy, CapacityArgs, CounterexampleArgs, DistillabilityArgs,
    ExtremalityArgs, GaussifyArgs, MaxEntropyArgs, OutDir,
};

#[derive(Parser)]
#[command(
    name = "cvx",
    version,
    about = "Batch experiments on Gaussian extremality, Gaussification, and Gaussian channels",
    after_help = "Environment:\n  CVX_MAX_DIM  caps the total Fock-space dimension any command may allocate\n               (default 20000); raise it only with the memory to back it up.\n\nExit status: 0 all assertions hold, 1 some assertion failed, 2 the run could\nnot be performed (bad spec, bad configuration, I/O error)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutOpt {
    /// Output directory for tables, sidecars, and verdict.json
    /// (default: cvx-out/<experiment>).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutOpt {
    fn resolve(&self, experiment: &str) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from("cvx-out").join(experiment))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the two-mode family φ(λ) and check that its Gaussian
    /// counterpart carries strictly more logarithmic negativity.
    Counterexample {
        /// Weight of the |11⟩ component, strictly between 0 and 1.
        #[arg(long, default_value_t = 0.25)]
        lambda: f64,
        /// Slack for the asserted inequalities.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Compare one state against its Gaussian counterpart: entropies,
    /// conditional entropies, and logarithmic negativities across the
    /// first-mode-versus-rest cut.
    Extremality {
        /// State spec (JSON); defaults to φ(1/4).
        #[arg(long)]
        state: Option<PathBuf>,
        /// Slack for the asserted inequalities.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Push a source through beam-splitter cascades of doubling order and
    /// record the sup distance to the matched Gaussian on a probe grid.
    GaussifyConverge {
        /// State spec (JSON); defaults to the single-photon state.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Largest order exponent: runs n = 2, 4, ..., 2^m_max.
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        /// Half-width of the probe grid on every phase-space axis.
        #[arg(long, default_value_t = 3.0)]
        grid_max: f64,
        /// Probe spacing on every axis.
        #[arg(long, default_value_t = 1.0)]
        grid_step: f64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Seeded random-state suite for the two entropy inequalities; requires
    /// zero violations.
    MaxEntropy {
        /// Seed for the state ensemble.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of states to draw.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Violation slack.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Optimize the coherent-encoding modulation for a pure-loss channel
    /// under an energy budget and report the achievable rate.
    Capacity {
        /// Pure-loss transmissivity in (0, 1].
        #[arg(long, default_value_t = 0.8)]
        eta: f64,
        /// Energy budget per mode for the average encoding state (vacuum = 1).
        #[arg(long, default_value_t = 3.0)]
        kappa: f64,
        /// Eigenvalue step for the exhaustive cross-check oracle.
        #[arg(long, default_value_t = 1e-3)]
        grid_step: f64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Seeded two-mode covariance-matrix suite checking that the
    /// partial-transpose criterion and positive log-negativity agree.
    Distillability {
        /// Seed for the covariance-matrix ensemble.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of matrices to draw.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Threshold below which log-negativity counts as zero.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutOpt,
    },
}

fn run(cli: Cli) -> cvx::Result<(String, i32)> {
    match cli.command {
        Command::Counterexample { lambda, tol, out } => {
            let dir = OutDir::new(out.resolve("counterexample"))?;
            let verdict = run_counterexample(&CounterexampleArgs { lambda, tol }, &dir)?;
            finish(&verdict, &dir)
        }
        Command::Extremality { state, tol, out } => {
            let dir = OutDir::new(out.resolve("extremality"))?;
            let verdict = run_extremality(&ExtremalityArgs { state, tol }, &dir)?;
            finish(&verdict, &dir)
        }
        Command::GaussifyConverge {
            state,
            m_max,
            grid_max,
            grid_step,
            out,
        } => {
            let dir = OutDir::new(out.resolve("gaussify-converge"))?;
            let verdict = run_gaussify_converge(
                &GaussifyArgs {
                    state,
                    m_max,
                    grid_max,
                    grid_step,
                },
                &dir,
            )?;
            finish(&verdict, &dir)
        }
        Command::MaxEntropy {
            seed,
            count,
            tol,
            out,
        } => {
            let dir = OutDir::new(out.resolve("max-entropy"))?;
            let verdict = run_max_entropy(&MaxEntropyArgs { seed, count, tol }, &dir)?;
            finish(&verdict, &dir)
        }
        Command::Capacity {
            eta,
            kappa,
            grid_step,
            out,
        } => {
            let dir = OutDir::new(out.resolve("capacity"))?;
            let verdict = run_capacity(
                &CapacityArgs {
                    eta,
                    kappa,
                    grid_step,
                },
                &dir,
            )?;
            finish(&verdict, &dir)
        }
        Command::Distillability {
            seed,
            count,
            tol,
            out,
        } => {
            let dir = OutDir::new(out.resolve("distillability"))?;
            let verdict = run_distillability(&DistillabilityArgs { seed, count, tol }, &dir)?;
            finish(&verdict, &dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
