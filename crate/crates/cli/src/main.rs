use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

mod render;
mod run;
mod scenario;
mod table;

use run::{Outcome, Report};

/// Affinization scenarios and verdict tables.
#[derive(Debug, Parser)]
#[command(name = "eala", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Every affine matrix with every diagram automorphism.
    #[value(alias = "theorem48")]
    DiagramVerdicts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the checks of a scenario file (one scenario or an array).
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Overrides the window of algebra-backed scenarios.
        #[arg(long)]
        window: Option<i64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add wall-clock timings; the report is then not reproducible.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print a verdict table.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        /// Largest finite rank `ℓ`; matrices have `ℓ + 1` nodes.
        #[arg(long)]
        max_rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Serialize)]
struct Summary {
    scenarios: usize,
    pass: usize,
    fail: usize,
    undetermined: usize,
}

#[derive(Serialize)]
struct RunOutput<'a> {
    reports: &'a [Report],
    summary: Summary,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(
    scenario: PathBuf,
    window: Option<i64>,
    out: Option<PathBuf>,
    timing: bool,
    format: Format,
) -> ExitCode {
    if window.is_some_and(|w| w < 1) {
        return input_error("--window must be at least 1");
    }
    let text = match fs::read_to_string(&scenario) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", scenario.display())),
    };
    let items = match scenario::parse_file(&text) {
        Ok(x) => x,
        Err(e) => return input_error(format!("{}: {e}", scenario.display())),
    };
    let prepared: Result<Vec<_>, _> = items
        .par_iter()
        .map(|(prefix, s)| scenario::prepare(s, prefix, window))
        .collect();
    let prepared = match prepared {
        Ok(p) => p,
        Err(e) => return input_error(format!("{}: {e}", scenario.display())),
    };
    let mut reports: Vec<Report> = prepared
        .par_iter()
        .map(|p| run::run_scenario(p, timing))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |o| reports.iter().map(|r| r.count(o)).sum::<usize>();
    let summary = Summary {
        scenarios: reports.len(),
        pass: count(Outcome::Pass),
        fail: count(Outcome::Fail),
        undetermined: count(Outcome::Undetermined),
    };
    let all_pass = summary.fail == 0 && summary.undetermined == 0;
    let body = match format {
        Format::Json => {
            serde_json::to_string_pretty(&RunOutput {
                reports: &reports,
                summary,
            })
            .expect("serializable")
                + "\n"
        }
        Format::Text => render::reports(&reports),
    };
    if let Err(code) = emit(&body, out.as_ref()) {
        return code;
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn table(kind: TableKind, max_rank: usize, format: Format) -> ExitCode {
    if max_rank == 0 {
        return input_error("--max-rank must be positive");
    }
    let rows = match kind {
        TableKind::DiagramVerdicts => table::diagram_table(max_rank),
    };
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
        Format::Text => render::verdict_table(&rows),
    };
    print!("{body}");
    if rows.iter().all(|r| r.agrees) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run {
            scenario,
            window,
            out,
            timing,
            format,
        } => run(scenario, window, out, timing, format),
        Command::Table {
            kind,
            max_rank,
            format,
        } => table(kind, max_rank, format),
    }
}
