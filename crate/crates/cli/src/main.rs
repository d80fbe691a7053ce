use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use maxout_cli::{commands, reproduce};

/// Exact polyhedral computations for input-convex maxout networks.
#[derive(Parser)]
#[command(name = "maxout", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the polytope of a network or a candidate.
    Build(BuildArgs),
    /// Report f-vector, cubicality and the polar dual of a polytope.
    Analyze(AnalyzeArgs),
    /// Face typing and separating complex of two normally equivalent polytopes.
    Separating(SeparatingArgs),
    /// Vertex bound for zonoboxtopes over a zonotope via bicolorings.
    BicolorBound(BicolorArgs),
    /// Search random factored zonoboxtopes for the most vertices.
    SampleZonoboxtope(SampleArgs),
    /// Rank condition and witness search for a candidate.
    Realizability(RealizabilityArgs),
    /// Extremal constructions.
    Extremal {
        #[command(subcommand)]
        which: ExtremalCommand,
    },
    /// Check a stored result against its expected values.
    Reproduce {
        /// Result id; `list` prints the known ids.
        id: String,
    },
    /// Write a polytope in OFF format for viewing.
    ExportOff {
        polytope: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long)]
    candidate: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: Source,
    /// Polytope JSON output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    polytope: PathBuf,
    #[arg(long)]
    fvector: bool,
    #[arg(long)]
    cubical: bool,
    /// Polar dual; needs the origin in the interior.
    #[arg(long)]
    dual: bool,
    /// Also write an OFF file.
    #[arg(long)]
    off: Option<PathBuf>,
}

#[derive(Args)]
struct SeparatingArgs {
    #[arg(long)]
    p1: PathBuf,
    #[arg(long)]
    p2: PathBuf,
    /// Translate P2 slightly until the pair is in general position.
    #[arg(long)]
    perturb_seed: Option<u64>,
}

#[derive(Args)]
#[group(id = "zonotope_source", required = true, multiple = false, args = ["zonotope", "incidence"])]
struct BicolorArgs {
    /// JSON with `generators` and an optional `base`.
    #[arg(long)]
    zonotope: Option<PathBuf>,
    /// JSON dual graph with `nodes`, `edges` and `cells`.
    #[arg(long)]
    incidence: Option<PathBuf>,
    /// Node budget for the search; unbounded by default.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct RealizabilityArgs {
    #[arg(long)]
    candidate: PathBuf,
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExtremalCommand {
    /// The boxtope with the most faces in dimension d.
    Bd {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The second extremal boxtope type, odd d >= 3.
    Bdprime {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A planar zonoboxtope with the most edges.
    Zonobox2d {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> commands::CmdResult {
    match cli.command {
        Command::Build(a) => commands::build(
            a.source.network.as_deref(),
            a.source.candidate.as_deref(),
            a.out.as_deref(),
        ),
        Command::Analyze(a) => {
            commands::analyze(&a.polytope, a.fvector, a.cubical, a.dual, a.off.as_deref())
        }
        Command::Separating(a) => commands::separating(&a.p1, &a.p2, a.perturb_seed),
        Command::BicolorBound(a) => {
            commands::bicolor_bound(a.zonotope.as_deref(), a.incidence.as_deref(), a.budget)
        }
        Command::SampleZonoboxtope(a) => {
            commands::sample_zonoboxtope(a.d, a.n, a.trials, a.seed, a.jobs)
        }
        Command::Realizability(a) => commands::realizability(&a.candidate, a.seed),
        Command::Extremal { which } => match which {
            ExtremalCommand::Bd { d, out } => commands::extremal("bd", d, out.as_deref()),
            ExtremalCommand::Bdprime { d, out } => commands::extremal("bdprime", d, out.as_deref()),
            ExtremalCommand::Zonobox2d { n, out } => {
                commands::extremal("zonobox2d", n, out.as_deref())
            }
        },
        Command::Reproduce { id } => reproduce::run(&id),
        Command::ExportOff { polytope, out } => commands::export_off(&polytope, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(report) => {
            let _ = writeln!(std::io::stdout(), "{}", report.to_json());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
