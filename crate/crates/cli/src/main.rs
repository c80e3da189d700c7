use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use chevalley_core::groebner::{GbCache, CACHE_ENV};
use chevalley_core::scenario::{list_corpus, run_scenario, Flag, Report, RunOptions, Scenario, Verdict};

#[derive(Parser)]
#[command(name = "chevalley", version, about = "Evidence for Chevalley restriction on symplectic reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenario files or bundled scenarios by label.
    Run {
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        budget_steps: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Directory for cached Gröbner bases.
        #[arg(long, env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
        /// Scenarios run in parallel on this many workers.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Also write each JSON report to this directory as `<label>.json`.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// List the bundled scenarios.
    List {
        #[arg(long)]
        flag: Option<String>,
    },
    /// Render a saved JSON report.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

const USAGE_ERROR: u8 = 3;

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

fn exit_code(reports: &[Report]) -> ExitCode {
    let any = |v: &[Verdict]| reports.iter().any(|r| v.contains(&r.verdict));
    if any(&[Verdict::NonReducedWitnessFound, Verdict::SurjectivityFailed, Verdict::CheckFailed]) {
        ExitCode::from(1)
    } else if any(&[Verdict::Inconclusive]) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::List { flag } => {
            let flag = match flag.as_deref().map(|f| Flag::parse(f).ok_or(f)) {
                None => None,
                Some(Ok(f)) => Some(f),
                Some(Err(f)) => {
                    let names: Vec<&str> = Flag::ALL.iter().map(|f| f.name()).collect();
                    eprintln!("unknown flag `{f}`; expected one of {}", names.join(", "));
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            for s in list_corpus(flag) {
                let state = if s.enabled { "" } else { " [disabled]" };
                println!("{:<26} {}{state}", s.label, s.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Report { path, format } => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            match Report::from_json(&text) {
                Ok(r) => {
                    println!("{}", render(&r, format));
                    exit_code(&[r])
                }
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    ExitCode::from(USAGE_ERROR)
                }
            }
        }
        Command::Run {
            targets,
            degree_bound,
            budget_steps,
            budget_seconds,
            format,
            cache_dir,
            workers,
            save,
        } => {
            let mut scenarios = Vec::new();
            for t in &targets {
                match Scenario::load_any(t) {
                    Ok(s) => scenarios.push(s),
                    Err(e) => {
                        eprintln!("{e}");
                        return ExitCode::from(USAGE_ERROR);
                    }
                }
            }
            let options = RunOptions {
                cache: cache_dir.map(GbCache::new),
                degree_bound,
                budget_steps,
                budget_seconds,
            };
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            let reports: Vec<Report> = pool.install(|| scenarios.par_iter().map(|s| run_scenario(s, &options)).collect());
            for r in &reports {
                if let Some(dir) = &save {
                    let path = dir.join(format!("{}.json", r.label));
                    if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, r.to_json())) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(USAGE_ERROR);
                    }
                }
                if !(format == Format::Json && reports.len() > 1) {
                    println!("{}", render(r, format));
                }
            }
            if format == Format::Json && reports.len() > 1 {
                println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            }
            exit_code(&reports)
        }
    }
}
