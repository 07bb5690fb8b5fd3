mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use posgame::geography::{classify_nodes, solve_geo, validate_geo, GeoInstance};
use posgame::hypergraph::{find_pairing, is_pairing, Board, Hypergraph, MbPosition, MmPosition};
use posgame::reduction::{reduce, Variant};
use posgame::solvers::{solve_mb_from, solve_mm_from, SolveOptions};
use posgame::Error;

#[derive(Parser)]
#[command(name = "posgame", version, about = "Positional games on hypergraphs and the Geography reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Geography instance against the reduction's requirements.
    Validate {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Solve a Geography instance exactly.
    SolveGeo {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Compile a Geography instance to a hypergraph.
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "rank4")]
        variant: Variant,
        /// Hypergraph output; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Solve a hypergraph game from the initial position or after `--moves`.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        convention: Convention,
        #[arg(long)]
        budget: Option<u64>,
        /// Comma-separated picks, first player first.
        #[arg(long, value_delimiter = ',')]
        moves: Vec<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Check the reduction's claims on a Geography instance.
    Verify {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Search a hypergraph for a pairing.
    Pair {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Mb,
    Mm,
}

/// Process outcome: exit code plus a diagnostic for standard error.
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExhausted { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub(crate) fn claim(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load_geo(path: &Path) -> Result<GeoInstance, Failure> {
    Ok(GeoInstance::from_json_str(&read(path)?)?)
}

fn load_board(path: &Path) -> Result<Hypergraph, Failure> {
    Ok(Hypergraph::from_json_str(&read(path)?)?)
}

fn validate(input: &Path) -> CmdResult {
    let inst = load_geo(input)?;
    let report = validate_geo(&inst);
    print!("{}", json(&report));
    if report.valid {
        Ok(())
    } else {
        let names: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        Err(Failure::input(format!("instance violates: {}", names.join("; "))))
    }
}

fn reduce_cmd(input: &Path, variant: Variant, output: Option<&Path>, meta: Option<&Path>, dot: Option<&Path>) -> CmdResult {
    let inst = load_geo(input)?;
    let red = reduce(&inst, variant)?;
    let mut board = red.board.to_json_string();
    board.push('\n');
    match output {
        Some(p) => write(p, &board)?,
        None => print!("{board}"),
    }
    if let Some(p) = meta {
        write(p, &json(&red.metadata()))?;
    }
    if let Some(p) = dot {
        let types = classify_nodes(&inst)?;
        write(p, &inst.to_dot(Some(&types)))?;
    }
    eprintln!("{} vertices, {} edges", red.board.num_vertices(), red.board.num_edges());
    Ok(())
}

fn solve_cmd(input: &Path, convention: Convention, budget: Option<u64>, moves: &[String], workers: usize) -> CmdResult {
    let h = load_board(input)?;
    let board = Board::new(&h)?;
    let picks = moves
        .iter()
        .filter(|m| !m.is_empty())
        .map(|m| board.index_of(m).ok_or_else(|| Failure::input(format!("unknown vertex {m:?}"))))
        .collect::<Result<Vec<usize>, Failure>>()?;
    let pos = MbPosition::from_moves(&board, &picks)?;
    let opts = SolveOptions { budget, workers: workers.max(1), ..Default::default() };
    let report = match convention {
        Convention::Mb => {
            if pos.maker_won(&board) {
                return Err(Failure::input("the moves already fill an edge"));
            }
            solve_mb_from(&board, pos, &opts)?
        }
        Convention::Mm => solve_mm_from(&board, MmPosition { first: pos.maker, second: pos.breaker }, &opts)?,
    };
    print!("{}", json(&report));
    Ok(())
}

#[derive(Serialize)]
struct PairReport {
    found: bool,
    /// Whether the search ran to completion; a complete search without a
    /// pairing proves that none exists.
    complete: bool,
    valid: bool,
    nodes: u64,
    pairs: Vec<(String, String)>,
}

fn pair_cmd(input: &Path, budget: u64) -> CmdResult {
    let h = load_board(input)?;
    let search = find_pairing(&h, budget);
    let valid = search.pairing.as_ref().is_some_and(|p| is_pairing(&h, p).is_valid());
    let report = PairReport {
        found: search.pairing.is_some(),
        complete: search.complete,
        valid,
        nodes: search.nodes,
        pairs: search.pairing.as_ref().map(|p| p.names(&h)).unwrap_or_default(),
    };
    print!("{}", json(&report));
    match (&search.pairing, search.complete) {
        (Some(_), _) if valid => Ok(()),
        (Some(_), _) => Err(Failure::claim("the pairing found does not validate")),
        (None, true) => Err(Failure::claim("the board has no pairing")),
        (None, false) => Err(Failure { code: 3, message: format!("node budget of {budget} exhausted") }),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { input } => validate(&input),
        Command::SolveGeo { input, budget } => {
            let inst = load_geo(&input)?;
            print!("{}", json(&solve_geo(&inst, budget)?));
            Ok(())
        }
        Command::Reduce { input, variant, output, meta, dot } => {
            reduce_cmd(&input, variant, output.as_deref(), meta.as_deref(), dot.as_deref())
        }
        Command::Solve { input, convention, budget, moves, workers } => solve_cmd(&input, convention, budget, &moves, workers),
        Command::Verify { input, suite, budget, workers } => {
            let inst = match (&input, suite) {
                (Some(p), _) => Some(load_geo(p)?),
                (None, verify::Suite::Gadgets) => None,
                (None, _) => return Err(Failure::input("--input is required for this suite")),
            };
            let report = verify::run(inst.as_ref(), suite, budget, workers.max(1))?;
            print!("{}", json(&report));
            if report.passed {
                Ok(())
            } else {
                Err(Failure::claim(format!("claims failed: {}", report.failed.join(", "))))
            }
        }
        Command::Pair { input, budget } => pair_cmd(&input, budget),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("posgame: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
