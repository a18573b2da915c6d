//! `ddl`: command-line front end for the deliberative dynamic logic checker.
//!
//! Exit codes: 0 true or success, 1 false, 2 parse error, 3 configuration
//! error, 4 oracle mismatch, 5 fresh-pool exhaustion, 6 counterexample,
//! 64 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use ddl_core::argsem::{extensions, format_set, parse_apx, ArgSet, SemanticsKind};
use ddl_core::basis::{parse_basis, shrink_with_stats, Basis, BasisFile, ShrinkStats};
use ddl_core::checker::{check_at_root_detailed, oracle_check, oracle_universe, CheckConfig, CheckError, CheckStats};
use ddl_core::ids::ArgumentId;
use ddl_core::logic::{parse_formula, white_depth, WhiteFormula};
use ddl_core::probe::{run_probe, ProbeConfig, Schema};
use ddl_core::random::random_basis;
use ddl_core::State;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXIT_FALSE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_ORACLE: u8 = 4;
const EXIT_POOL: u8 = 5;
const EXIT_COUNTEREXAMPLE: u8 = 6;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "ddl", version, about = "Model checker for deliberative dynamic logic")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// admissible, complete, grounded, preferred or stable.
    #[arg(long, global = true, default_value = "preferred")]
    semantics: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the extensions of an APX framework.
    Extensions { file: PathBuf },
    /// Decide a formula at the empty state of a basis.
    Check(CheckArgs),
    /// Write the basis restricted to a formula's vicinity.
    Shrink {
        file: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Instance-test the dynamic validity schemata on random bases.
    ProbeValidities(ProbeArgs),
    /// Emit a random basis as JSON.
    Random {
        #[arg(long, default_value_t = 4)]
        args: usize,
        #[arg(long, default_value_t = 2)]
        agents: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    formula: String,
    /// Also run the brute-force oracle and compare.
    #[arg(long)]
    oracle: bool,
    /// Comma-separated oracle universe. Defaults to the basis universe, the
    /// formula's arguments and a fresh pool of the formula's depth.
    #[arg(long, requires = "oracle", value_delimiter = ',')]
    universe: Option<Vec<String>>,
    /// Write the witness trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    fresh_pool: Option<usize>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    max_args: usize,
    #[arg(long, default_value_t = 3)]
    max_agents: usize,
    /// Maximum white depth of the random bodies.
    #[arg(long, default_value_t = 1)]
    body_depth: usize,
    /// Also assert the invalid converse `[q]<p>phi -> <p>[q]phi`.
    #[arg(long, hide = true)]
    include_converse: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

/// Writes a line to stdout. A closed pipe is not an error for a CLI.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let sem: SemanticsKind = cli
        .semantics
        .parse()
        .map_err(|e| Failure::new(EXIT_CONFIG, format!("{e}")))?;
    let start = Instant::now();
    let code = match &cli.command {
        Command::Extensions { file } => cmd_extensions(cli, file, sem),
        Command::Check(args) => cmd_check(cli, args, sem),
        Command::Shrink { file, formula } => cmd_shrink(cli, file, formula),
        Command::ProbeValidities(args) => cmd_probe(cli, args, sem),
        Command::Random { args, agents } => cmd_random(cli, *args, *agents),
    }?;
    // timing goes to stderr so that stdout stays byte-identical across runs
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    Ok(code)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn load_basis(path: &Path) -> Result<Basis, Failure> {
    parse_basis(&read(path)?).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_formula(text: &str) -> Result<WhiteFormula, Failure> {
    parse_formula(text).map_err(|e| {
        let caret = format!("{}^", " ".repeat(e.position));
        Failure::new(EXIT_PARSE, format!("formula: {e}\n  {text}\n  {caret}"))
    })
}

fn print_json<T: Serialize>(value: &T) {
    out!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn sorted_names(set: &ArgSet) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = set.iter().map(|p| p.name()).collect();
    names.sort_unstable();
    names
}

#[derive(Serialize)]
struct ExtensionsReport {
    semantics: SemanticsKind,
    extensions: Vec<Vec<&'static str>>,
}

fn cmd_extensions(cli: &Cli, file: &Path, sem: SemanticsKind) -> Outcome {
    let text = read(file)?;
    let fw = parse_apx(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    let mut found: Vec<ArgSet> = extensions(&fw, sem).into_iter().collect();
    found.sort_by_cached_key(sorted_names);
    if cli.json {
        print_json(&ExtensionsReport {
            semantics: sem,
            extensions: found.iter().map(sorted_names).collect(),
        });
    } else {
        for e in &found {
            out!("{}", format_set(e));
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckReport {
    formula: String,
    semantics: SemanticsKind,
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<bool>,
    domain_size: usize,
    shrink: ShrinkStats,
    stats: CheckStats,
}

fn cmd_check(cli: &Cli, args: &CheckArgs, sem: SemanticsKind) -> Outcome {
    let basis = load_basis(&args.file)?;
    let phi = load_formula(&args.formula)?;
    let cfg = CheckConfig {
        fresh_pool_size: args.fresh_pool,
        ..CheckConfig::new(sem).memoized()
    };
    let report = check_at_root_detailed(&basis, &phi, &cfg, args.trace.is_some()).map_err(|e| match e {
        CheckError::PoolExhausted { .. } => Failure::new(EXIT_POOL, e.to_string()),
    })?;

    let oracle = if args.oracle {
        let universe = match &args.universe {
            Some(names) => names
                .iter()
                .map(|n| ArgumentId::new(n.trim()))
                .collect::<Result<ArgSet, _>>()
                .map_err(|e| Failure::new(EXIT_CONFIG, format!("--universe: {e}")))?,
            None => oracle_universe(&basis, &phi, white_depth(&phi)),
        };
        Some(oracle_check(&basis, &phi, &State::root(), &universe, sem))
    } else {
        None
    };

    if let (Some(path), Some(trace)) = (&args.trace, &report.trace) {
        let json = serde_json::to_string_pretty(trace).expect("serializable");
        fs::write(path, json + "\n")
            .map_err(|e| Failure::new(EXIT_CONFIG, format!("cannot write {}: {e}", path.display())))?;
    }

    let verdict = oracle.unwrap_or(report.verdict);
    if cli.json {
        print_json(&CheckReport {
            formula: phi.to_string(),
            semantics: sem,
            verdict,
            oracle,
            domain_size: report.domain_size,
            shrink: report.shrink,
            stats: report.stats,
        });
    } else {
        out!("{verdict}");
    }
    let s = report.shrink;
    eprintln!(
        "|D| = {}, edges kept {}, dropped {}; states {}, successors {}, memo hits {}",
        s.vicinity_size,
        s.edges_kept,
        s.edges_dropped,
        report.stats.states_visited,
        report.stats.successors_enumerated,
        report.stats.memo_hits
    );

    if oracle.is_some_and(|o| o != report.verdict) {
        return Err(Failure::new(
            EXIT_ORACLE,
            format!("oracle says {verdict}, shrunk check says {}", report.verdict),
        ));
    }
    Ok(if verdict { 0 } else { EXIT_FALSE })
}

#[derive(Serialize)]
struct ShrinkReport {
    basis: BasisFile,
    shrink: ShrinkStats,
}

fn cmd_shrink(cli: &Cli, file: &Path, formula: &str) -> Outcome {
    let basis = load_basis(file)?;
    let phi = load_formula(formula)?;
    let (shrunk, stats) = shrink_with_stats(&basis, &phi);
    if cli.json {
        print_json(&ShrinkReport {
            basis: BasisFile::from(&shrunk),
            shrink: stats,
        });
    } else {
        out!("{}", shrunk.to_json());
    }
    eprintln!(
        "|D| = {}, edges kept {}, dropped {}",
        stats.vicinity_size, stats.edges_kept, stats.edges_dropped
    );
    Ok(0)
}

fn cmd_probe(cli: &Cli, args: &ProbeArgs, sem: SemanticsKind) -> Outcome {
    let mut schemata = Schema::VALID.to_vec();
    if args.include_converse {
        schemata.push(Schema::BoxDiamondSwap);
    }
    let cfg = ProbeConfig {
        seed: cli.seed,
        trials: args.trials,
        max_args: args.max_args,
        max_agents: args.max_agents,
        body_depth: args.body_depth,
        semantics: sem,
        schemata,
    };
    let outcome = run_probe(&cfg).map_err(|e| Failure::new(EXIT_POOL, e.to_string()))?;
    if cli.json {
        print_json(&outcome);
    } else if let Some(cx) = &outcome.counterexample {
        out!("counterexample in trial {}: {}", cx.trial, cx.schema_text);
        out!("{}", serde_json::to_string_pretty(cx).expect("serializable"));
    } else {
        out!("ok: {} trials, {} instances", outcome.trials, outcome.instances);
    }
    Ok(if outcome.counterexample.is_some() { EXIT_COUNTEREXAMPLE } else { 0 })
}

fn cmd_random(cli: &Cli, args: usize, agents: usize) -> Outcome {
    if args == 0 || agents == 0 {
        return Err(Failure::new(EXIT_CONFIG, "--args and --agents must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let basis = random_basis(&mut rng, args, agents);
    out!("{}", basis.to_json());
    Ok(0)
}
