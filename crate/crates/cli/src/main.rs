use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rtmp_cli::problem::parse_problem;
use rtmp_cli::report::{self, RunResult, Status};
use rtmp_cli::{effective_config, presets, Flags};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "rtmp", version, about = "Solve truncated rational moment problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numerical tolerance; for `verify` the residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for randomized choices; RTMP_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true)]
    max_retries: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Also write an atom/density table as CSV.
    #[arg(long, global = true)]
    emit_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility and construct a representing measure.
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Positivity certificate only.
    Check { file: PathBuf },
    /// Check a measure (a `solve` report or a bare measure) against a problem.
    Verify { measure: PathBuf, file: PathBuf },
    /// Convert rational moments to power moments.
    Convert { file: PathBuf },
    /// Run a bundled worked example.
    Preset {
        #[arg(value_parser = presets::NAMES)]
        name: String,
        /// Print the preset's problem file instead of solving it.
        #[arg(long)]
        print_problem: bool,
    },
}

fn seed_from_env() -> Result<Option<u64>, String> {
    match std::env::var("RTMP_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("RTMP_SEED: expected a nonnegative integer, got {s:?}")),
        Err(_) => Ok(None),
    }
}

fn load(path: &Path) -> Result<rtmp_cli::problem::ProblemFile, RunResult> {
    parse_problem(path).map_err(|e| RunResult {
        status: Status::Error,
        doc: serde_json::json!({"status": "error", "error": e}),
        table: Vec::new(),
    })
}

fn solve_one(path: &Path, flags: &Flags) -> RunResult {
    let mut r = match load(path) {
        Ok(file) => report::run_solve(&file, &effective_config(&file, flags)),
        Err(r) => r,
    };
    if let Value::Object(m) = &mut r.doc {
        m.insert("input".into(), path.display().to_string().into());
    }
    r
}

fn emit(cli: &Cli, results: &[(String, RunResult)]) -> Result<(), String> {
    let doc = match results {
        [(_, r)] => r.doc.clone(),
        many => Value::Array(many.iter().map(|(_, r)| r.doc.clone()).collect()),
    };
    let mut text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable"),
        Format::Text => report::render_text(&doc),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string())?,
    }
    if let Some(p) = &cli.emit_csv {
        let tables: Vec<(String, &[report::Row])> =
            results.iter().map(|(n, r)| (n.clone(), r.table.as_slice())).collect();
        fs::write(p, report::render_csv(&tables)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_seed = match seed_from_env() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let flags = Flags {
        tol: cli.tol,
        seed: env_seed.or(cli.seed),
        max_retries: cli.max_retries,
    };
    let results: Vec<(String, RunResult)> = match &cli.command {
        Command::Solve { files } => files
            .par_iter()
            .map(|p| (p.display().to_string(), solve_one(p, &flags)))
            .collect(),
        Command::Check { file } => {
            vec![(file.display().to_string(), load(file).map_or_else(|r| r, |f| report::run_check(&f)))]
        }
        Command::Convert { file } => {
            vec![(file.display().to_string(), load(file).map_or_else(|r| r, |f| report::run_convert(&f)))]
        }
        Command::Verify { measure, file } => {
            let r = match (load(file), read_measure(measure)) {
                (Err(r), _) => r,
                (_, Err(e)) => RunResult {
                    status: Status::Error,
                    doc: serde_json::json!({"status": "error", "error": e}),
                    table: Vec::new(),
                },
                (Ok(f), Ok(mu)) => report::run_verify(&mu, &f, cli.tol.unwrap_or(report::VERIFY_TOL)),
            };
            vec![(file.display().to_string(), r)]
        }
        Command::Preset { name, print_problem } => {
            if *print_problem {
                print!("{}", presets::source(name).expect("validated by clap"));
                return ExitCode::SUCCESS;
            }
            vec![(name.clone(), presets::run(name, &flags).expect("validated by clap"))]
        }
    };
    if let Err(e) = emit(&cli, &results) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    for (name, r) in &results {
        if r.status == Status::Error {
            if let Some(e) = r.doc.get("error").and_then(Value::as_str) {
                eprintln!("error: {name}: {e}");
            }
        }
    }
    let worst = results.iter().map(|(_, r)| r.status).max().unwrap_or(Status::Solved);
    ExitCode::from(worst.exit_code())
}

fn read_measure(path: &Path) -> Result<report::ParsedMeasure, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))?;
    report::parse_measure(&doc).map_err(|e| format!("{}: {e}", path.display()))
}
