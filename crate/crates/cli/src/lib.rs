//! Command-line front end: argument handling, command dispatch and report documents.

pub mod args;
pub mod commands;
pub mod context;
pub mod error;
pub mod report;
pub mod suites;

use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, FormatArg, Options};
use context::{part_name, RunConfig, MAX_ENTRIES_ENV};
use error::CliError;
use report::{Params, ReportDocument, Timing, Verdict, SCHEMA};

/// Everything a run produces. `document` is absent only for `--help` and `--version`.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub document: Option<ReportDocument>,
}

fn value_name<T: clap::ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn params(o: &Options, cap: usize) -> Params {
    Params {
        n: o.n,
        k: o.k,
        ell: o.ell.clone(),
        max_degree: o.max_degree,
        buffer: o.buffer,
        part: value_name(&o.part),
        model: o.model.as_ref().map(value_name),
        format: value_name(&o.format),
        seed: o.seed,
        suite: value_name(&o.suite),
        max_entries: cap,
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<commands::Output, CliError> {
    match command {
        Command::Cohom(_) => commands::cohom(cfg),
        Command::E1(_) => commands::e1(cfg),
        Command::Pages(_) => commands::pages(cfg),
        Command::Koszul(_) => commands::koszul(cfg),
        Command::Hilbert(_) => commands::hilbert(cfg),
        Command::Verify(_) => Ok((vec![], suites::run(cfg)?)),
    }
}

/// Runs the tool on `argv` (including the program name), reading the entry cap from the
/// environment if no flag overrides it.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString>,
{
    let env_cap = std::env::var(MAX_ENTRIES_ENV).ok();
    run_with_env(argv, env_cap.as_deref())
}

pub fn run_with_env<I, S>(argv: I, env_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString>,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: 0,
                stdout: e.render().to_string(),
                stderr: String::new(),
                document: None,
            };
        }
        Err(e) => {
            let command = argv.get(1).map(|a| a.to_string_lossy().into_owned()).unwrap_or_default();
            let doc = ReportDocument {
                schema: SCHEMA,
                command,
                params: serde_json::json!({}),
                tables: vec![],
                verdicts: vec![Verdict::new("arguments", false, e.kind().to_string())],
                timing: Timing { elapsed_ms: 0 },
            };
            return Outcome {
                code: 2,
                stdout: doc.to_json() + "\n",
                stderr: e.render().to_string(),
                document: Some(doc),
            };
        }
    };
    let start = Instant::now();
    let o = cli.command.options();
    let cfg = RunConfig::from_options(o, env_cap);
    let cap = cfg.as_ref().map(|c| c.cap).unwrap_or(weilcoh::linalg::DEFAULT_MAX_ENTRIES);
    let mut params = params(o, cap);
    let result = cfg.and_then(|cfg| {
        params.part = part_name(cfg.part).to_string();
        dispatch(&cli.command, &cfg)
    });
    let (tables, verdicts, failure) = match result {
        Ok((t, v)) => (t, v, None),
        Err(e) => (vec![], vec![Verdict::new("error", false, e.to_string())], Some(e)),
    };
    let doc = ReportDocument {
        schema: SCHEMA,
        command: cli.command.name().to_string(),
        params: serde_json::to_value(&params).expect("params serialize"),
        tables,
        verdicts,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
        },
    };
    let code = match &failure {
        Some(e) => e.exit_code(),
        None if doc.all_pass() => 0,
        None => 1,
    };
    let stdout = match o.format {
        FormatArg::Json => doc.to_json() + "\n",
        FormatArg::Csv => doc.to_csv(),
    };
    let mut stderr = String::new();
    if let Some(e) = &failure {
        stderr = format!("error: {e}\n");
    } else {
        for v in doc.verdicts.iter().filter(|v| !v.pass) {
            stderr.push_str(&format!("failed: {}: {}\n", v.name, v.detail));
        }
    }
    Outcome {
        code,
        stdout,
        stderr,
        document: Some(doc),
    }
}
