//! `arrange`: command-line front end for the arrangements library.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arrangements::{ComputeOptions, Execution};

#[derive(Debug, Parser)]
#[command(name = "arrange", version, about = "Exact invariants of affine plane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Report reduced instead of ordinary Betti numbers.
    #[arg(long, global = true)]
    reduced: bool,

    /// Treat a real ("Q") input as the complexification of that arrangement.
    #[arg(long, global = true)]
    complexify: bool,

    /// Upper bound on the faces enumerated for any one simplicial complex.
    #[arg(long, global = true)]
    max_faces: Option<usize>,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection poset with Möbius values.
    Poset { file: PathBuf },
    /// Betti numbers of the complement.
    Betti { file: PathBuf },
    /// Degree-by-degree cohomology of the complement with contributing nodes.
    Gm {
        file: PathBuf,
        /// Also compute the multiplication table of the graded ring.
        #[arg(long)]
        ring: bool,
    },
    /// Orlik–Solomon algebra of a complex hyperplane arrangement.
    Os { file: PathBuf },
    /// Regions of a real hyperplane arrangement.
    Regions { file: PathBuf },
    /// Cell census of the complexified complement.
    Salvetti {
        file: PathBuf,
        /// Test every sign sequence directly (small inputs only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Wedge decomposition of the compactified union of the planes.
    Wedges {
        file: PathBuf,
        /// Imaginary wedge census of a real normal-crossing arrangement.
        #[arg(long)]
        imaginary: bool,
    },
    /// Relative homology of the complex of connected k-hypergraphs on n nodes.
    GraphComplex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Twisted homology predictions for a rank-one local system.
    Twisted {
        file: Option<PathBuf>,
        /// Comma-separated monodromy values (Gaussian rationals or "generic").
        /// A single value is used for every hyperplane.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Comma-separated real points for the punctured-line model.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Rank function of a central arrangement, or an axiom check of a given
    /// rank function.
    Matroid {
        file: PathBuf,
        /// The input is a rank function `{mask: rank}` rather than an arrangement.
        #[arg(long)]
        rank_function: bool,
        /// Require submodularity for disjoint sets with r(∅) = 0.
        #[arg(long)]
        empty_rank_zero: bool,
    },
    /// Rank conditions of the ten-line configuration for a parameter.
    Mnev {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Compare two arrangements' dimensional data, or (with --self) the two
    /// Betti number pipelines on one input. Exits 3 on a mismatch.
    Compare {
        #[arg(long = "self")]
        self_check: bool,
        files: Vec<PathBuf>,
    },
}

/// What a successful command hands back for printing.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// Set when a comparison found a mismatch.
    pub mismatch: bool,
}

/// Exit statuses.
const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

pub struct Failure {
    pub code: String,
    pub message: String,
    pub exit: u8,
}

impl From<arrangements::Error> for Failure {
    fn from(e: arrangements::Error) -> Self {
        Failure { code: e.code().to_string(), message: e.to_string(), exit: if e.is_budget() { EXIT_BUDGET } else { EXIT_INPUT } }
    }
}

impl Failure {
    pub fn input(code: &str, message: impl Into<String>) -> Self {
        Failure { code: code.to_string(), message: message.into(), exit: EXIT_INPUT }
    }
}

pub struct Settings {
    pub reduced: bool,
    pub complexify: bool,
    pub opts: ComputeOptions,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("ARRANGE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input("E_ARGUMENT", format!("ARRANGE_THREADS must be a positive integer, got {value:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::input("E_ARGUMENT", format!("cannot configure thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: Cli) -> Result<Output, Failure> {
    configure_threads()?;
    let mut opts = ComputeOptions::default();
    if cli.sequential || !arrangements::par::parallel_available() {
        opts.execution = Execution::Sequential;
    }
    if let Some(budget) = cli.max_faces {
        opts.max_faces = budget;
    }
    let settings = Settings { reduced: cli.reduced, complexify: cli.complexify, opts };
    match cli.command {
        Command::Poset { file } => commands::poset(&file, &settings),
        Command::Betti { file } => commands::betti(&file, &settings),
        Command::Gm { file, ring } => commands::gm(&file, ring, &settings),
        Command::Os { file } => commands::os(&file, &settings),
        Command::Regions { file } => commands::regions(&file, &settings),
        Command::Salvetti { file, brute_force } => commands::salvetti(&file, brute_force, &settings),
        Command::Wedges { file, imaginary } => commands::wedges(&file, imaginary, &settings),
        Command::GraphComplex { n, k } => commands::graph_complex(n, k, &settings),
        Command::Twisted { file, tau, points } => commands::twisted(file.as_deref(), &tau, points.as_deref(), &settings),
        Command::Matroid { file, rank_function, empty_rank_zero } => {
            commands::matroid(&file, rank_function, empty_rank_zero, &settings)
        }
        Command::Mnev { alpha } => commands::mnev(&alpha),
        Command::Compare { self_check, files } => commands::compare(self_check, &files, &settings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[E_USAGE]: {first}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize")),
                Format::Text => print!("{}", out.text),
            }
            if out.mismatch {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(f.exit)
        }
    }
}
