//! Command-line front end: seeded scenario execution with JSON/text trace
//! emission, plus the code catalog, secrecy-rate table and collision-census
//! reports.

mod config;
mod runner;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stegoq::catalytic::gv_secrecy_rate;
use stegoq::codes::{catalog, find_code, CodeSpec};
use stegoq::phasebit::{build_context, census_collisions};
use stegoq::SupportMask;

use config::ScenarioConfig;
use runner::run_scenario;

/// Structured failure: every error leaves on stderr as one JSON object.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage".into(),
            field: None,
            message: message.into(),
        }
    }

    fn io(message: impl std::fmt::Display) -> Self {
        CliError {
            kind: "io".into(),
            field: None,
            message: message.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "stegoq",
    about = "Simulator for covert transmission protocols over stabilizer codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Args)]
struct EmitArgs {
    /// Output format (default json; `run` also honors the config's
    /// `output` field).
    #[arg(long, value_enum)]
    output: Option<OutputMode>,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a JSON config file.
    Run {
        /// Path to the scenario config.
        #[arg(long)]
        config: PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's trial count.
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Inspect the shipped code catalog.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Tabulate the secrecy-rate lower bound over a range of relative
    /// distances.
    GvTable {
        #[arg(long)]
        delta_min: f64,
        #[arg(long)]
        delta_max: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// List the measurement-record collision pairs of a code.
    Collisions {
        /// Code name from the catalog.
        #[arg(long)]
        code: String,
        /// Optional explicit coordinate mask (bit string such as 00011).
        #[arg(long)]
        q_vec: Option<String>,
        #[command(flatten)]
        emit: EmitArgs,
    },
}

#[derive(Subcommand)]
enum CodesAction {
    /// Print every code in the catalog.
    List {
        #[command(flatten)]
        emit: EmitArgs,
    },
}

fn emit(emit: &EmitArgs, default: OutputMode, json: String, text: String) -> Result<(), CliError> {
    let payload = match emit.output.unwrap_or(default) {
        OutputMode::Json => json,
        OutputMode::Text => text,
    };
    match &emit.out {
        Some(path) => fs::write(path, payload.as_bytes()).map_err(CliError::io),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError {
            kind: "serialize".into(),
            field: None,
            message: e.to_string(),
        })
}

#[derive(Serialize)]
struct GvRow {
    delta: f64,
    rate_lower_bound: f64,
}

#[derive(Serialize)]
struct GvTable {
    rows: Vec<GvRow>,
}

#[derive(Serialize)]
struct CollisionReport {
    code: String,
    q_vec: String,
    pair_count: usize,
    pairs: Vec<(String, String)>,
}

fn run_command(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            seed,
            trials,
            emit: emit_args,
        } => {
            let raw = fs::read_to_string(&config).map_err(CliError::io)?;
            let parsed: ScenarioConfig = serde_json::from_str(&raw).map_err(|e| CliError {
                kind: "config".into(),
                field: None,
                message: e.to_string(),
            })?;
            let effective = parsed.with_overrides(seed, trials);
            let trace = run_scenario(&effective)?;
            let default_mode = match effective.output.as_deref() {
                Some("text") => OutputMode::Text,
                _ => OutputMode::Json,
            };
            let json = to_pretty(&trace)?;
            let text = runner::render_trace_text(&trace);
            emit(&emit_args, default_mode, json, text)
        }
        Command::Codes {
            action: CodesAction::List { emit: emit_args },
        } => {
            let specs: Vec<CodeSpec> = catalog().iter().map(CodeSpec::from_code).collect();
            let json = to_pretty(&specs)?;
            let mut text = String::new();
            for s in &specs {
                text.push_str(&format!(
                    "{}: [[{}, {}, {}]]{}\n  generators: {}\n",
                    s.name,
                    s.n,
                    s.k,
                    s.d,
                    if s.ownership.is_empty() {
                        String::new()
                    } else {
                        format!(" receiver-held qubits {:?}", s.ownership)
                    },
                    s.generators.join(", ")
                ));
            }
            emit(&emit_args, OutputMode::Json, json, text)
        }
        Command::GvTable {
            delta_min,
            delta_max,
            step,
            emit: emit_args,
        } => {
            if step <= 0.0 {
                return Err(CliError::usage("step must be positive"));
            }
            if delta_min > delta_max {
                return Err(CliError::usage("delta_min must not exceed delta_max"));
            }
            let mut rows = Vec::new();
            let mut delta = delta_min;
            while delta <= delta_max + 1e-12 {
                let rate = gv_secrecy_rate(delta).map_err(|e| CliError::usage(e.to_string()))?;
                rows.push(GvRow {
                    delta,
                    rate_lower_bound: rate,
                });
                delta += step;
            }
            let table = GvTable { rows };
            let json = to_pretty(&table)?;
            let mut text = String::from("delta    rate lower bound\n");
            for row in &table.rows {
                text.push_str(&format!("{:<8.4} {:.6}\n", row.delta, row.rate_lower_bound));
            }
            emit(&emit_args, OutputMode::Json, json, text)
        }
        Command::Collisions {
            code,
            q_vec,
            emit: emit_args,
        } => {
            let code = find_code(&code).map_err(|e| CliError::usage(e.to_string()))?;
            let mask = q_vec
                .as_deref()
                .map(SupportMask::from_bit_string)
                .transpose()
                .map_err(|e| CliError::usage(e.to_string()))?;
            let ctx = build_context(&code, mask).map_err(|e| CliError {
                kind: "run".into(),
                field: None,
                message: e.to_string(),
            })?;
            let census = census_collisions(&ctx).map_err(|e| CliError {
                kind: "run".into(),
                field: None,
                message: e.to_string(),
            })?;
            let pairs: Vec<(String, String)> = census
                .pairs
                .iter()
                .map(|(a, b)| (a.to_product_string_ascii(), b.to_product_string_ascii()))
                .collect();
            let report = CollisionReport {
                code: code.name().to_string(),
                q_vec: ctx.q_vec().to_bit_string(),
                pair_count: pairs.len(),
                pairs,
            };
            let json = to_pretty(&report)?;
            let mut text = format!(
                "code {} with mask {}: {} indistinguishable pairs\n",
                report.code, report.q_vec, report.pair_count
            );
            for (a, b) in &report.pairs {
                text.push_str(&format!("  {a} ~ {b}\n"));
            }
            emit(&emit_args, OutputMode::Json, json, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not failures
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::usage(e.to_string());
            eprintln!("{}", serde_json::to_string(&err).unwrap());
            return ExitCode::from(2);
        }
    };
    match run_command(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&e).unwrap());
            ExitCode::from(1)
        }
    }
}
