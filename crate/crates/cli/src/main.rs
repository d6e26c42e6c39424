mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdsrank_core::bounds::fix_bounds_report;
use fdsrank_core::constructions::{
    canonical_upper_witness, conjunctive, maxper_witness, maxrank_witness, modular_complete, nilpotent_class_two,
    packing_plus_one_witness, star_witness,
};
use fdsrank_core::invariants::maximum_cycle_packing;
use fdsrank_core::verify::{run_suite, Status};
use fdsrank_core::{canonicalize, enumerate_stats, Digraph, Error, Fds, Limits};
use serde::Serialize;

use report::{analyze, canonical_summary, to_table};

#[derive(Parser)]
#[command(name = "fdsrank", version, about = "Rank, periodic rank and fixed points of finite dynamical systems on digraphs")]
struct Cli {
    #[command(flatten)]
    guards: Guards,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Guards {
    /// Largest number of systems an exhaustive enumeration may visit.
    #[arg(long, global = true, env = "FDSRANK_MAX_FUNCS", value_parser = clap::value_parser!(u64).range(1..))]
    max_functions: Option<u64>,
    /// Largest state space q^n scanned in full.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: Option<u64>,
    /// Vertex cap for exact NP-hard graph invariants.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_exact_n: Option<u64>,
}

impl Guards {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(v) = self.max_functions {
            l.max_functions = v;
        }
        if let Some(v) = self.max_states {
            l.max_states = v;
        }
        if let Some(v) = self.max_exact_n {
            l.max_exact_n = v as usize;
        }
        l
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Family {
    /// Alphabet size.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    q: u32,
    /// Use F[D,q] (every arc essential) instead of F(D,q).
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one graph.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustive rank / periodic rank / fixed point statistics.
    Enum {
        file: PathBuf,
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Canonical graph with the L, L' and U bounds.
    Canonical {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bounds on the maximum number of fixed points.
    Bounds {
        file: PathBuf,
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Writes a witness system in the fds text format.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
        /// Output file; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Runs the built-in verification suite.
    Verify {
        /// Skip the checks that sweep every 3-vertex digraph.
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Boolean AND of the in-neighbours.
    Conjunctive { file: PathBuf },
    /// Nilpotent system of class at most two (q >= 3).
    Nilpotent {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        q: u32,
    },
    /// Periodic rank q^alpha_n.
    Maxper {
        file: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        q: u32,
    },
    /// Rank q^alpha_1.
    Maxrank {
        file: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        q: u32,
    },
    /// Rank U(C) on the canonical graph.
    CanonicalUpper { file: PathBuf },
    /// Boolean system with one more fixed point than a maximum cycle packing.
    Packing { file: PathBuf },
    /// Star system with rank 2^ceil(n/2) + 2^floor(n/2) - 1 (odd n >= 3).
    Star { n: usize },
    /// Negated-sum system on the complete graph with q^(n-1) fixed points.
    Modular {
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        q: u32,
    },
}

enum Failure {
    Input(String),
    Guard(String),
    Other(String),
    Verify(Vec<u8>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            Error::SizeLimitExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<Digraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Digraph::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(doc: &impl Serialize, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).expect("report serializes")),
        Format::Table => print!("{}", to_table(doc)),
    }
}

fn witness(kind: &WitnessKind, limits: &Limits) -> Result<Fds, Failure> {
    Ok(match kind {
        WitnessKind::Conjunctive { file } => conjunctive(&read_graph(file)?),
        WitnessKind::Nilpotent { file, q } => nilpotent_class_two(&read_graph(file)?, *q)?,
        WitnessKind::Maxper { file, q } => maxper_witness(&read_graph(file)?, *q)?,
        WitnessKind::Maxrank { file, q } => maxrank_witness(&read_graph(file)?, *q)?,
        WitnessKind::CanonicalUpper { file } => canonical_upper_witness(&canonicalize(&read_graph(file)?))?,
        WitnessKind::Packing { file } => {
            let d = read_graph(file)?;
            packing_plus_one_witness(&d, &maximum_cycle_packing(&d, limits)?)?
        }
        WitnessKind::Star { n } => star_witness(*n)?,
        WitnessKind::Modular { n, q } => modular_complete(*n, *q)?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = cli.guards.limits();
    match cli.command {
        Command::Analyze { file, family, format } => {
            let d = read_graph(&file)?;
            emit(&analyze(&d, family.q, family.strict, &limits)?, format);
        }
        Command::Enum { file, family, format } => {
            let d = read_graph(&file)?;
            let stats = enumerate_stats(&d, family.q, family.strict, &limits)?;
            match format {
                Format::Json => println!("{}", stats.to_json()),
                Format::Table => print!("{}", stats.to_table()),
            }
        }
        Command::Canonical { file, format } => {
            let d = read_graph(&file)?;
            emit(&canonical_summary(&d, &limits)?, format);
        }
        Command::Bounds { file, family, format } => {
            let d = read_graph(&file)?;
            emit(&fix_bounds_report(&d, family.q, family.strict, &limits)?, format);
        }
        Command::Witness { kind, output } => {
            let f = witness(&kind, &limits)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, f.to_text())
                        .map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
                    eprintln!("wrote {} (n={}, q={})", path.display(), f.n(), f.q());
                }
                None => print!("{}", f.to_text()),
            }
        }
        Command::Verify { quick, format } => {
            let outcomes = run_suite(quick, &limits, |o| {
                if let Format::Table = format {
                    println!("{o}");
                }
            });
            if let Format::Json = format {
                println!("{}", serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"));
            }
            let failed: Vec<u8> = outcomes.iter().filter(|o| o.status == Status::Fail).map(|o| o.id).collect();
            if !failed.is_empty() {
                return Err(Failure::Verify(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(ids)) => {
            let ids: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
            eprintln!("failed checks: {}", ids.join(", "));
            ExitCode::from(1)
        }
    }
}
