use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toricbound_cli::{
    corpus_entry, corpus_list, parse_grid, run, Command, InputSource, Options, RunConfig, EXIT_INVALID,
};

/// Exact computations of rings of bounded polynomials on semi-algebraic
/// subsets of toric varieties.
#[derive(Parser)]
#[command(name = "toricbound", version)]
struct Cli {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Hilbert basis of the semigroup H with B(S) = R[H].
    Bounded(Common),
    /// The cones K(S) and K₀(S).
    Ksets(Common),
    /// A complete fan adapted to S containing σ.
    AdaptedFan(Common),
    /// Check the toric compatibility condition (exits 0 for every verdict).
    TcCheck(Common),
    /// Hilbert basis of a rational cone.
    Hilbert(Common),
    /// Inertia of a symmetric rational matrix.
    Inertia(Common),
    /// Transcendence degree of O(X minus the curves in T).
    SurfaceClassify(Common),
    /// Levels L_0, …, L_nmax of the boundedness filtration.
    Filtration(Common),
    /// Total-stability certificate for binomial sets and tentacles.
    Stability(Common),
    /// Minimal smooth refinement of a rank-2 fan.
    ResolveFan(Common),
    /// The bundled examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the bundled example names.
    List,
    /// Run a bundled example with its own command and options.
    Run { name: String },
}

#[derive(Args)]
struct Common {
    /// Input JSON document (standard input when absent).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Comma-separated sample values for certificates, e.g. "-2,-1,-1/2,1/2,1,2".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Highest filtration level.
    #[arg(long)]
    nmax: Option<u64>,
    /// Half-width of the box used to cross-check Hilbert bases.
    #[arg(long = "box")]
    box_bound: Option<u64>,
    /// Use the input of a bundled example.
    #[arg(long, conflicts_with = "input")]
    corpus: Option<String>,
}

fn config(command: Command, c: Common) -> Result<RunConfig, String> {
    let mut options = Options::default();
    if let Some(g) = &c.grid {
        options.grid = parse_grid(g).map_err(|e| e.message)?;
    }
    if let Some(n) = c.nmax {
        options.nmax = n;
    }
    options.box_bound = c.box_bound;
    let input = match (c.input, c.corpus) {
        (Some(p), _) => InputSource::Path(p),
        (None, Some(name)) => InputSource::Corpus(name),
        (None, None) => InputSource::Stdin,
    };
    Ok(RunConfig {
        command,
        input,
        output: c.output,
        options,
    })
}

fn emit(code: i32, text: &str) -> ExitCode {
    if code == 0 {
        print!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.action {
        Action::Bounded(c) => (Command::Bounded, c),
        Action::Ksets(c) => (Command::Ksets, c),
        Action::AdaptedFan(c) => (Command::AdaptedFan, c),
        Action::TcCheck(c) => (Command::TcCheck, c),
        Action::Hilbert(c) => (Command::Hilbert, c),
        Action::Inertia(c) => (Command::Inertia, c),
        Action::SurfaceClassify(c) => (Command::SurfaceClassify, c),
        Action::Filtration(c) => (Command::Filtration, c),
        Action::Stability(c) => (Command::Stability, c),
        Action::ResolveFan(c) => (Command::ResolveFan, c),
        Action::Corpus { action } => {
            return match action {
                CorpusAction::List => {
                    for name in corpus_list() {
                        println!("{name}");
                    }
                    ExitCode::SUCCESS
                }
                CorpusAction::Run { name } => match corpus_entry(&name) {
                    Some(e) => match e.run() {
                        Ok(report) => emit(0, &report),
                        Err(err) => emit(err.code, &format!("error: {}", err.message)),
                    },
                    None => emit(EXIT_INVALID, &format!("error: unknown corpus entry {name:?}")),
                },
            };
        }
    };
    match config(command, common) {
        Ok(cfg) => {
            let out = run(&cfg);
            if out.code == 0 && cfg.output.is_some() {
                return ExitCode::SUCCESS;
            }
            emit(out.code, &out.text)
        }
        Err(msg) => emit(EXIT_INVALID, &format!("error: {msg}")),
    }
}
