use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use crlab::{Options, SUITES};

/// Runs verification suites and inspects catalog entries.
///
/// `crlab <suite>` (or `crlab run <suite>`) with suite one of model,
/// examples, prolongation, cohomology, rigidity, tube, ode, structure, all;
/// `crlab describe <entry>`; `crlab catalog list|export`.
#[derive(Parser, Debug)]
#[command(name = "crlab", version)]
struct Cli {
    /// Suite name, `run`, `describe` or `catalog`.
    command: String,
    /// Suite for `run`, entry for `describe`, `list`/`export` for `catalog`.
    target: Option<String>,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Tube order (tube suite) or symmetric power (gl2_sk entry).
    #[arg(long)]
    k: Option<usize>,
    /// Family parameter, e.g. `2`, `-1/3` or `1+i`.
    #[arg(long)]
    t: Option<String>,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("crlab: {msg}");
    ExitCode::from(2)
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn depth_from_env() -> Result<i32, String> {
    match std::env::var("CRLAB_DEPTH") {
        Ok(v) => v.parse().map_err(|_| format!("CRLAB_DEPTH={v} is not an integer")),
        Err(_) => Ok(2),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command.as_str() {
        "describe" => {
            let Some(name) = cli.target.as_deref() else { return usage("describe needs an entry name") };
            match crlab::describe(name, cli.k) {
                Ok(d) => {
                    emit(&d.render());
                    let json = serde_json::to_string_pretty(&d).expect("description serializes");
                    if let Err(code) = write_json(&cli.json, &json) {
                        return code;
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        "catalog" => match cli.target.as_deref() {
            Some("list") | None => {
                emit(&crlab_core::models::CATALOG.map(|n| format!("{n}\n")).concat());
                ExitCode::SUCCESS
            }
            Some("export") => match crlab::catalog(cli.k) {
                Ok(all) => {
                    let json = serde_json::to_string_pretty(&all).expect("catalog serializes");
                    if cli.json.is_some() {
                        if let Err(code) = write_json(&cli.json, &json) {
                            return code;
                        }
                    } else {
                        emit(&format!("{json}\n"));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            },
            Some(other) => usage(format!("unknown catalog action `{other}` (list or export)")),
        },
        cmd => {
            let suite = if cmd == "run" {
                match cli.target.as_deref() {
                    Some(s) => s,
                    None => return usage(format!("run needs a suite: {}", SUITES.join(", "))),
                }
            } else {
                if let Some(extra) = &cli.target {
                    return usage(format!("unexpected argument `{extra}`"));
                }
                cmd
            };
            let depth = match depth_from_env() {
                Ok(d) => d,
                Err(e) => return usage(e),
            };
            let opts = Options { seed: cli.seed, samples: cli.samples, k: cli.k, t: cli.t.clone(), depth };
            match crlab::run(suite, &opts) {
                Ok(report) => {
                    emit(&report.render());
                    if let Err(code) = write_json(&cli.json, &report.to_json()) {
                        return code;
                    }
                    ExitCode::from(report.exit_code() as u8)
                }
                Err(e) => usage(e),
            }
        }
    }
}
