mod solve;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use csep_core::engine::{Strategy, StrategyConfig};
use csep_core::io::{parse_problem, ModelDocument, ProblemFile, ProofDocument, MODEL_FORMAT, PROOF_FORMAT};
use csep_core::verify::check_proof;

use solve::{portfolio, solve, Mode};

/// Exit statuses: a verdict, no verdict, and bad usage or input.
const EXIT_VERDICT: u8 = 0;
const EXIT_UNKNOWN: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "csep", version, about = "Contradiction separation prover for clause sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a DIMACS or TPTP CNF problem.
    Prove {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the refutation as JSON when the problem is unsatisfiable.
        #[arg(long, value_name = "PATH")]
        emit_proof: Option<PathBuf>,
        /// Write the model as JSON when the problem is satisfiable.
        #[arg(long, value_name = "PATH")]
        emit_model: Option<PathBuf>,
        /// Race this many differently seeded engines and keep the first verdict.
        #[arg(long, value_name = "N")]
        portfolio: Option<usize>,
    },
    /// Replay a proof document, or evaluate a model document, against a problem.
    Check { document: PathBuf, problem: PathBuf },
    /// Run every problem in a directory and print a verdict table. Without a time limit
    /// each problem gets ten seconds.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    /// Upper bound on derived clauses.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Clauses per contradiction.
    #[arg(long)]
    max_width: Option<usize>,
    #[arg(long)]
    max_term_depth: Option<usize>,
    /// Seconds of search before giving up.
    #[arg(long, env = "CSE_DEFAULT_TIME_LIMIT", value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// `extension` or `binary`.
    #[arg(long, default_value = "extension")]
    strategy: Strategy,
    #[arg(long)]
    seed: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> Result<StrategyConfig> {
        let mut cfg = StrategyConfig { strategy: self.strategy, seed: self.seed, ..StrategyConfig::default() };
        if let Some(n) = self.max_steps {
            cfg.max_steps = n;
        }
        if let Some(n) = self.max_width {
            cfg.max_width = n;
        }
        if let Some(n) = self.max_term_depth {
            cfg.max_term_depth = n;
        }
        if let Some(secs) = self.time_limit {
            cfg.time_limit =
                Some(Duration::try_from_secs_f64(secs).context("time limit must be a non-negative number of seconds")?);
        }
        Ok(cfg)
    }
}

fn load(path: &Path) -> Result<ProblemFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let name = path.file_stem().map_or_else(|| "problem".to_string(), |s| s.to_string_lossy().into_owned());
    let problem = parse_problem(&name, &text).with_context(|| format!("{}", path.display()))?;
    for w in &problem.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(problem)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display()))
}

fn prove(
    file: &Path,
    search: &SearchArgs,
    emit_proof: Option<&Path>,
    emit_model: Option<&Path>,
    workers: Option<usize>,
) -> Result<u8> {
    let problem = load(file)?;
    let cfg = search.config()?;
    let (outcome, _) = match workers {
        Some(n) => portfolio(&problem.clauses, search.mode, &cfg, n)?,
        None => solve(&problem.clauses, search.mode, &cfg)?,
    };
    println!("SZS status {} for {}", outcome.status(), problem.name);
    if let Some(reason) = outcome.reason() {
        println!("% {reason}");
    }
    if let Some(path) = emit_proof {
        match outcome.proof_document(&problem.name) {
            Some(doc) => {
                write(path, &doc.to_json())?;
                println!("% proof written to {}", path.display());
            }
            None => eprintln!("note: no proof to write for a {} verdict", outcome.status()),
        }
    }
    if let Some(path) = emit_model {
        match outcome.model_document(&problem.name) {
            Some(doc) => {
                write(path, &doc.to_json())?;
                println!("% model written to {}", path.display());
            }
            None => eprintln!("note: no model to write for a {} verdict", outcome.status()),
        }
    }
    Ok(if outcome.is_decided() { EXIT_VERDICT } else { EXIT_UNKNOWN })
}

fn check(document: &Path, problem_path: &Path) -> Result<u8> {
    let text = fs::read_to_string(document).with_context(|| format!("cannot read {}", document.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", document.display()))?;
    let problem = load(problem_path)?;
    let verdict = match value.get("format").and_then(|f| f.as_str()) {
        Some(PROOF_FORMAT) => {
            let doc = ProofDocument::from_json(&text)?;
            if doc.status != "Unsatisfiable" {
                Err(format!("proof document claims status {}", doc.status))
            } else {
                let proof = doc.to_proof()?;
                check_proof(&proof, &problem.clauses)
                    .map(|()| ("Unsatisfiable", format!("proof of {} steps verified", proof.len())))
                    .map_err(|e| e.to_string())
            }
        }
        Some(MODEL_FORMAT) => {
            let doc = ModelDocument::from_json(&text)?;
            if doc.status != "Satisfiable" {
                Err(format!("model document claims status {}", doc.status))
            } else if doc.satisfies(&problem.clauses)? {
                Ok(("Satisfiable", "model satisfies every clause".to_string()))
            } else {
                Err("model falsifies a clause".to_string())
            }
        }
        Some(other) => bail!("unknown document format `{other}`"),
        None => bail!("{} has no format tag", document.display()),
    };
    match verdict {
        Ok((status, note)) => {
            println!("SZS status {status} for {}", problem.name);
            println!("% {note}");
            Ok(EXIT_VERDICT)
        }
        Err(reason) => {
            println!("SZS status Unknown for {}", problem.name);
            println!("% rejected: {reason}");
            Ok(EXIT_UNKNOWN)
        }
    }
}

const PROBLEM_EXTENSIONS: [&str; 4] = ["p", "cnf", "tptp", "dimacs"];

const BENCH_TIME_LIMIT: Duration = Duration::from_secs(10);

fn bench(dir: &Path, search: &SearchArgs) -> Result<u8> {
    let mut cfg = search.config()?;
    cfg.time_limit.get_or_insert(BENCH_TIME_LIMIT);
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| PROBLEM_EXTENSIONS.iter().any(|e| x == *e)))
        .collect();
    files.sort();
    println!("{:<32} {:<9} {:<15} {:>10} {:>8}", "problem", "format", "status", "time_ms", "derived");
    let mut counts = [0usize; 4];
    for path in &files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let problem = match load(path) {
            Ok(p) => p,
            Err(e) => {
                counts[3] += 1;
                println!("{name:<32} {:<9} {:<15} {:>10} {:>8}", "-", "InputError", "-", "-");
                eprintln!("error: {e:#}");
                continue;
            }
        };
        let started = Instant::now();
        let row = solve(&problem.clauses, search.mode, &cfg);
        let millis = started.elapsed().as_secs_f64() * 1000.0;
        match row {
            Ok((outcome, stats)) => {
                counts[match outcome.status() {
                    "Unsatisfiable" => 0,
                    "Satisfiable" => 1,
                    _ => 2,
                }] += 1;
                println!(
                    "{name:<32} {:<9} {:<15} {millis:>10.1} {:>8}",
                    problem.format.to_string(),
                    outcome.status(),
                    stats.derived
                );
            }
            Err(e) => {
                counts[3] += 1;
                println!("{name:<32} {:<9} {:<15} {millis:>10.1} {:>8}", problem.format.to_string(), "Error", "-");
                eprintln!("error: {name}: {e}");
            }
        }
    }
    println!(
        "% {} problems: {} unsatisfiable, {} satisfiable, {} unknown, {} errors",
        files.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    );
    Ok(EXIT_VERDICT)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Prove { file, search, emit_proof, emit_model, portfolio } => {
            prove(&file, &search, emit_proof.as_deref(), emit_model.as_deref(), portfolio)
        }
        Command::Check { document, problem } => check(&document, &problem),
        Command::Bench { dir, search } => bench(&dir, &search),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
