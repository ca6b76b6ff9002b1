//! Command-line front end. Every report carries a `meta` block with the
//! tool version, the arguments, the effective configuration and all caps.
//!
//! Exit codes: 0 when every requested check passed, 1 when a check failed,
//! 2 for usage or parse errors, 3 when a cap or budget stopped the work,
//! 4 for I/O errors. Failures also print a JSON object on stderr.

mod args;
mod commands;

use std::ffi::OsString;
use std::time::Duration;

use clap::Parser;
use serde_json::{json, Value};

use crate::construction::ConstructionError;
use crate::exact::ExactError;
use crate::graphs::GraphError;
use crate::lattice::LatticeError;
use crate::mis::Budget;
use crate::Caps;

pub use args::{Cli, Command, Format, GlobalOpts};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Failed(_) => "check_failed",
            CliError::Usage(_) => "usage",
            CliError::Cap(_) => "cap_exceeded",
            CliError::Io(_) => "io",
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Exact(inner) => inner.into(),
            ConstructionError::Identity(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            LatticeError::Exact(inner) => inner.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            GraphError::Lattice(inner) => inner.into(),
            GraphError::NotIndependent | GraphError::LiftNotIndependent | GraphError::Malformed(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// What a command produced: a JSON body, optionally a CSV rendering, and
/// whether all of its checks passed.
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    pub ok: bool,
    pub reason: Option<String>,
    /// Merged into the `meta` block.
    pub meta: Value,
}

impl Report {
    fn json(json: Value, ok: bool, reason: Option<String>) -> Self {
        Self {
            json,
            csv: None,
            ok,
            reason,
            meta: json!({}),
        }
    }
}

/// Resolved run configuration.
pub struct RunConfig {
    pub caps: Caps,
    pub budget: Budget,
    pub seed: u64,
    pub format: Format,
    pub threads: usize,
}

impl RunConfig {
    fn from_opts(opts: &GlobalOpts, command: &Command) -> Result<Self, CliError> {
        if opts.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        let caps = Caps {
            p0_order: opts.p0_cap,
            enumeration: opts.enum_cap,
            ..Caps::default()
        };
        let budget = Budget {
            max_nodes: opts.budget_nodes,
            max_time: Duration::from_secs(opts.budget_secs),
        };
        Ok(Self {
            caps,
            budget,
            seed: opts.seed,
            format: opts.format.unwrap_or(command.default_format()),
            threads: opts.threads.unwrap_or_else(rayon::current_num_threads),
        })
    }

    fn meta(&self, command: &str, argv: &[String]) -> Value {
        json!({
            "tool": "shannon-lattice",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "args": argv,
            "config": {
                "threads": self.threads,
                "seed": self.seed,
                "format": self.format.name(),
                "budget": {
                    "max_nodes": self.budget.max_nodes,
                    "max_secs": self.budget.max_time.as_secs(),
                },
            },
            "caps": self.caps,
        })
    }
}

fn render(report: &Report, meta: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let doc = json!({
                "meta": meta,
                "result": report.json,
                "ok": report.ok,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("plain data") + "\n")
        }
        Format::Csv => {
            let body = report
                .csv
                .as_ref()
                .ok_or_else(|| CliError::Usage("this command has no CSV output; use --format json".into()))?;
            Ok(format!("# meta: {meta}\n{body}"))
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn report_error(e: &CliError) -> i32 {
    let body = json!({
        "status": "error",
        "kind": e.kind(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    });
    eprintln!("{body}");
    e.exit_code()
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let shown: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &shown) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<i32, CliError> {
    let config = RunConfig::from_opts(&cli.global, &cli.command)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", config.threads)))?;
    let report = pool.install(|| commands::dispatch(&cli.command, &config))?;

    let mut meta = config.meta(cli.command.name(), argv);
    if let (Some(m), Some(extra)) = (meta.as_object_mut(), report.meta.as_object()) {
        for (k, v) in extra {
            m.insert(k.clone(), v.clone());
        }
    }
    let text = render(&report, &meta, config.format)?;
    emit(&text, cli.global.out.as_deref())?;
    if report.ok {
        Ok(0)
    } else {
        let body = json!({
            "status": "failed",
            "kind": "check_failed",
            "command": cli.command.name(),
            "reason": report.reason,
            "exit_code": 1,
        });
        eprintln!("{body}");
        Ok(1)
    }
}
