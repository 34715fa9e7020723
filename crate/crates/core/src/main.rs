use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deloop_core::harness::{run, Command, OutputFormat, RunConfig, DEFAULT_SEED};
use deloop_core::report::{DEFAULT_BUDGET, DEFAULT_CAP};

/// Exact Hochschild, cyclic and Lie algebra homology, plus checks on banded
/// operators over finite-dimensional algebras.
///
/// Exit status: 0 success, 1 failed check, 2 input error, 3 size budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "deloop", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Highest homology degree reported.
    #[arg(long, global = true, env = "DELOOP_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Largest chain space (basis elements) that may be built.
    #[arg(long, global = true, env = "DELOOP_BUDGET", default_value_t = DEFAULT_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for the randomized suites.
    #[arg(long, global = true, env = "DELOOP_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, env = "DELOOP_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON algebra (hh, hc, lie-homology, prim) or operator(s) (checks).
    #[arg(long, global = true, env = "DELOOP_INPUT")]
    input: Option<PathBuf>,
    /// Algebra label when no input is given, e.g. `k`, `k[e]/(e^2)`, `M_2(k)`, `k[Z/3]`.
    #[arg(long, global = true, env = "DELOOP_ALGEBRA", default_value = "k")]
    algebra: String,
    /// Lie commands: homology of gl_n of the algebra.
    #[arg(long, global = true, env = "DELOOP_GL", default_value_t = 2)]
    gl: usize,
    /// Lie commands: a named Lie algebra instead (`sl2`, `ab_<d>`).
    #[arg(long, global = true, env = "DELOOP_LIE")]
    lie: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hochschild homology, confirmed by two constructions.
    Hh,
    /// Cyclic homology, confirmed by two constructions.
    Hc,
    /// Chevalley-Eilenberg homology.
    LieHomology,
    /// Lie homology with primitive dimensions.
    Prim,
    /// The two-cocycle on banded operators.
    CocycleCheck,
    /// Ideal membership and splitting.
    IdealCheck,
    /// Lattice boundedness witnesses.
    LatticeBound {
        /// Source lattice index for the forward witness.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        /// Target lattice index for the backward witness.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
    },
    /// Every acceptance check.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, n, m) = match cli.command {
        Cmd::Hh => (Command::Hh, 0, 0),
        Cmd::Hc => (Command::Hc, 0, 0),
        Cmd::LieHomology => (Command::LieHomology, 0, 0),
        Cmd::Prim => (Command::Prim, 0, 0),
        Cmd::CocycleCheck => (Command::CocycleCheck, 0, 0),
        Cmd::IdealCheck => (Command::IdealCheck, 0, 0),
        Cmd::LatticeBound { n, m } => (Command::LatticeBound, n, m),
        Cmd::Verify => (Command::Verify, 0, 0),
    };
    let c = cli.common;
    let cfg = RunConfig {
        command,
        input_path: c.input,
        algebra: c.algebra,
        gl: c.gl,
        lie: c.lie,
        degree_cap: c.cap,
        size_budget: usize::try_from(c.budget).unwrap_or(usize::MAX),
        seed: c.seed,
        output_format: match c.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        },
        n,
        m,
    };
    let started = std::time::Instant::now();
    let out = run(&cfg);
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    if command == Command::Verify {
        eprintln!("verify finished in {:.1} s (exit {})", started.elapsed().as_secs_f64(), out.status);
    }
    ExitCode::from(out.status as u8)
}
