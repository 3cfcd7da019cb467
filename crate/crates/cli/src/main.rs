//! `easy-diagrams`: branching graphs, dimension tables, conjecture sweeps,
//! diagram-algebra arithmetic and trace evaluation from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed (the
//! report carries the witness), 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "easy-diagrams", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum VerifyTarget {
    /// Closed identities, monotonicity and the max-ratio identity of M(n,l).
    MProperties,
    /// Ratio inequalities and max identity for K(n,k,l).
    Conjecture,
    /// Hyperoctahedral dimension recursion and its K-array bridge.
    Hyperoct,
    /// Copy-forgetting isomorphism of the pascalized principal graph with gamma-b.
    IsoGammaB,
    /// Closed-form total algebra dimensions against sums of squared path counts.
    DimAn,
    /// Dimension factorizations through the M and K arrays.
    Factorizations,
    /// Sum-of-squares per level against category diagram counts.
    CountsBridge,
}

#[derive(Subcommand)]
enum Command {
    /// Build a branching graph and export it with its dimension table.
    Graph {
        /// young, gamma-b, theta, lambda, walled, doubled-young, or a
        /// `pascalized-<kind>` variant
        #[arg(long)]
        kind: String,
        /// Level cap (<= 30 for base graphs, <= 20 for pascalizations)
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Output file (stdout when omitted); writes are atomic
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification target and emit a JSON report.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Sweep range; defaults depend on the target
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Checkpoint file for resumable sweeps (conjecture only)
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Dump the M or K dimension table.
    Dims {
        /// m or k
        #[arg(long)]
        kind: String,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply two diagram-algebra elements given as JSON files.
    Mul {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Optional rational value of the loop parameter, e.g. 7/2
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the lifted Thoma trace of a diagram-algebra element.
    Trace {
        #[arg(long)]
        x: PathBuf,
        /// JSON file {"alpha": ["1/2", ...], "beta": [...]}
        #[arg(long)]
        thoma: PathBuf,
        #[arg(long, default_value = "cycle-length")]
        convention: String,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List all diagrams of a category at a given tower level.
    EnumerateCategory {
        /// S, O, H, B, S' or B'
        #[arg(long)]
        category: String,
        /// Number of points per row (<= 6)
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Graph {
            kind,
            levels,
            format,
            out,
        } => commands::graph(&kind, levels, format, out.as_deref()),
        Command::Verify {
            target,
            levels,
            out,
            resume,
        } => commands::verify(target, levels, out.as_deref(), resume.as_deref()),
        Command::Dims {
            kind,
            levels,
            format,
            out,
        } => commands::dims(&kind, levels, format, out.as_deref()),
        Command::Mul {
            x,
            y,
            delta,
            format,
            out,
        } => commands::mul(&x, &y, delta.as_deref(), format, out.as_deref()),
        Command::Trace {
            x,
            thoma,
            convention,
            delta,
            format,
            out,
        } => commands::trace(
            &x,
            &thoma,
            &convention,
            delta.as_deref(),
            format,
            out.as_deref(),
        ),
        Command::EnumerateCategory {
            category,
            levels,
            format,
            out,
        } => commands::enumerate_category(&category, levels, format, out.as_deref()),
    };
    match outcome {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
