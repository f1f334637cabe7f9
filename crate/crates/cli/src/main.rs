use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use fda_cli::store::{report_json, write_report};
use fda_cli::{compare_golden, run_task, CliError, GoldenReport, TaskConfig, TASKS};
use fda_core::Verdict;

/// Run a named exact verification and report pass, fail or capped.
#[derive(Parser, Debug)]
#[command(name = "fdacheck", version)]
struct Args {
    /// Task id (see --list).
    #[arg(long, required_unless_present = "list")]
    task: Option<String>,
    /// Enable the expensive checks (tr omega^7, beta != 0).
    #[arg(long)]
    long: bool,
    /// Maximum basis size for linear-algebra checks.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Directory for timestamped JSON reports.
    #[arg(long, default_value = "reports")]
    out: PathBuf,
    /// Print the full report as JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Compare the pinned scalars with a golden report.
    #[arg(long, value_name = "FILE")]
    compare: Option<PathBuf>,
    /// Write the pinned scalars of this run as a golden report.
    #[arg(long, value_name = "FILE")]
    write_golden: Option<PathBuf>,
    /// List the task ids and exit.
    #[arg(long)]
    list: bool,
}

fn config(args: &Args, task: &str) -> TaskConfig {
    let mut c = TaskConfig::new(task);
    if args.long {
        c = c.with("long", true);
    }
    if let Some(v) = args.cap {
        c = c.with("cap", v);
    }
    if let Some(v) = &args.alpha {
        c = c.with("alpha", v);
    }
    if let Some(v) = &args.beta {
        c = c.with("beta", v);
    }
    if let Some(v) = args.max_degree {
        c = c.with("max_degree", v);
    }
    if let Some(v) = args.n {
        c = c.with("n", v);
    }
    c
}

fn run(args: &Args) -> anyhow::Result<ExitCode> {
    if args.list {
        for t in TASKS {
            println!("{:<22} {}", t.id, t.summary);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let task = args.task.as_deref().expect("clap enforces --task");
    let report = match run_task(&config(args, task)) {
        Ok(r) => r,
        Err(e @ CliError::UnknownTask(_)) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
        Err(CliError::Core(e @ fda_core::Error::Unsupported(_))) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };
    let path = write_report(&args.out, &report).context("writing report")?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report_json(&report))?);
    } else {
        println!("{}: {:?} ({:.0} ms)", report.task, report.verdict, report.stats.elapsed_ms);
        if let Some(f) = report.first_failure() {
            println!("  first failure: {}", f.task);
            if let (Some(label), Some(w)) = (&f.witness_label, &f.witness) {
                println!("  witness at {label}: {} terms", w.len());
            }
            for note in &f.notes {
                println!("  {note}");
            }
        }
        for note in &report.notes {
            println!("  {note}");
        }
        println!("  report: {}", path.display());
    }
    if let Some(golden_path) = &args.write_golden {
        let golden = GoldenReport::from_report(&report);
        fs::write(golden_path, serde_json::to_string_pretty(&golden)?).context("writing golden report")?;
    }
    let mut regressed = false;
    if let Some(golden_path) = &args.compare {
        let text = fs::read_to_string(golden_path).context("reading golden report")?;
        let golden: GoldenReport = serde_json::from_str(&text)?;
        let diffs = compare_golden(&report, &golden)?;
        for d in &diffs {
            println!("  golden mismatch {}: expected {:?}, found {:?}", d.key, d.golden, d.found);
        }
        regressed = !diffs.is_empty();
    }
    Ok(match report.verdict {
        Verdict::Fail => ExitCode::from(1),
        _ if regressed => ExitCode::from(1),
        Verdict::Capped => ExitCode::from(2),
        Verdict::Pass => ExitCode::SUCCESS,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
