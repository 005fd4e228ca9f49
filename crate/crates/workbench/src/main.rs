use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tightclosure_workbench::render::render_script;
use tightclosure_workbench::runner::{OrderChoice, RunConfig, Runner};
use tightclosure_workbench::script::{parse_script, ScriptError, WorkbenchScript};
use tightclosure_workbench::{text, SCHEMA};

/// Tight closure workbench: runs the tasks of a workbench script.
#[derive(Parser)]
#[command(name = "tcw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a script (or one, with --task).
    Run {
        file: PathBuf,
        /// 1-based index of the only task to run.
        #[arg(long)]
        task: Option<usize>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Parse a script and report the first error.
    Check { file: PathBuf },
    /// Print a script in canonical form.
    Render { file: PathBuf },
    /// Print the JSON schema of the result document.
    Schema,
}

#[derive(Args)]
struct Flags {
    /// Emit one JSON result document instead of text tables.
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "N")]
    emax: Option<u32>,
    #[arg(long, value_name = "N")]
    kpow: Option<u32>,
    #[arg(long, value_name = "N")]
    bound: Option<u64>,
    #[arg(long, value_name = "N")]
    smax: Option<u64>,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderChoice,
    /// Primes for `task models`, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    primes: Option<Vec<u64>>,
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Treat the named element as a known test element.
    #[arg(long, value_name = "NAME")]
    assert_test_element: Option<String>,
    /// Record wall-clock time per task.
    #[arg(long)]
    timing: bool,
}

fn load(file: &PathBuf) -> Result<WorkbenchScript, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("tcw: cannot read {}: {e}", file.display());
        ExitCode::from(1)
    })?;
    parse_script(&text).map_err(|e: ScriptError| {
        eprintln!("{}:{e} [{}]", file.display(), e.code());
        ExitCode::from(1)
    })
}

fn run(file: &PathBuf, only: Option<usize>, f: Flags) -> Result<ExitCode, ExitCode> {
    let script = load(file)?;
    if let Some(n) = f.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| {
            eprintln!("tcw: {e}");
            ExitCode::from(1)
        })?;
    }
    let count = script.tasks().count();
    if let Some(i) = only {
        if i == 0 || i > count {
            eprintln!("tcw: --task {i} out of range (script has {count} tasks)");
            return Err(ExitCode::from(1));
        }
    }
    let cfg = RunConfig {
        emax: f.emax,
        kpow: f.kpow,
        bound: f.bound,
        smax: f.smax,
        order: f.order,
        primes: f.primes,
        assert_test_element: f.assert_test_element,
        timing: f.timing,
    };
    let doc = Runner::new(&script, cfg).run_selected(|i, _| only.is_none_or(|n| n == i));
    for t in &doc.tasks {
        if let Some(e) = &t.error {
            eprintln!("{}:{}: task {} failed: error[{}]: {}", file.display(), t.line, t.index, e.code, e.message);
        }
    }
    if f.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("result document serializes"));
    } else {
        print!("{}", text::document(&doc));
    }
    Ok(ExitCode::from(doc.exit_code as u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Run { file, task, flags } => run(&file, task, flags),
        Command::Check { file } => load(&file).map(|s| {
            println!("ok: {} declarations, {} tasks", s.decls.len(), s.tasks().count());
            ExitCode::SUCCESS
        }),
        Command::Render { file } => load(&file).map(|s| {
            print!("{}", render_script(&s));
            ExitCode::SUCCESS
        }),
        Command::Schema => {
            print!("{SCHEMA}");
            Ok(ExitCode::SUCCESS)
        }
    };
    res.unwrap_or_else(|c| c)
}
