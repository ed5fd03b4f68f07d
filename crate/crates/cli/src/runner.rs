//! Scenario execution and trace assembly.

use serde::Serialize;
use serde_json::Value;

use stegoq::catalytic::{run_chained, RoundStatus};
use stegoq::degenerate::DegenerateProtocol;
use stegoq::phasebit::{build_context, run_phasebit_round, CoverSpec};

use crate::config::{Scenario, ScenarioConfig};
use crate::CliError;

pub const TRACE_SCHEMA: &str = "stegoq-trace/1";

#[derive(Debug, Serialize)]
pub struct TraceFile {
    pub schema: &'static str,
    pub scenario: ScenarioConfig,
    pub trials: Vec<Value>,
    pub aggregates: Aggregates,
}

#[derive(Debug, Default, Serialize)]
pub struct Aggregates {
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_replenish_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub external_ebits_consumed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<[f64; 4]>,
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError {
        kind: "run".into(),
        field: None,
        message: e.to_string(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(internal)
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<TraceFile, CliError> {
    let scenario = config.validate()?;
    let (trials, aggregates) = match &scenario {
        Scenario::Catalytic {
            code,
            rounds,
            error,
            trials,
            seed,
        } => {
            let mut records = Vec::new();
            let mut round_successes = 0u64;
            let mut round_total = 0u64;
            let mut min_fidelity = f64::INFINITY;
            let mut external = 0usize;
            for trial in 0..*trials {
                let chain = run_chained(rounds, code, error.as_ref(), seed.wrapping_add(trial))
                    .map_err(internal)?;
                for round in &chain.rounds {
                    round_total += 1;
                    if round.status == RoundStatus::Success {
                        round_successes += 1;
                    }
                    if let Some(f) = round.replenish_fidelity {
                        min_fidelity = min_fidelity.min(f);
                    }
                }
                external += chain.external_ebits_consumed;
                records.push(to_value(&chain)?);
            }
            (
                records,
                Aggregates {
                    trials: *trials,
                    success_rate: Some(round_successes as f64 / round_total.max(1) as f64),
                    min_replenish_fidelity: if min_fidelity.is_finite() {
                        Some(min_fidelity)
                    } else {
                        None
                    },
                    external_ebits_consumed: Some(external),
                    ..Aggregates::default()
                },
            )
        }
        Scenario::Degenerate {
            p,
            q,
            cover_w,
            trials,
            seed,
        } => {
            let proto = DegenerateProtocol::shor().map_err(internal)?;
            let report = proto
                .empirical_innocence_run(p, q, *trials, *seed, *cover_w)
                .map_err(internal)?;
            let records = report
                .records
                .iter()
                .map(to_value)
                .collect::<Result<Vec<_>, _>>()?;
            (
                records,
                Aggregates {
                    trials: *trials,
                    tv_distance: Some(report.tv_distance),
                    empirical: Some(report.empirical),
                    analytic: Some(report.analytic),
                    ..Aggregates::default()
                },
            )
        }
        Scenario::Phasebit {
            code,
            w,
            secret,
            error,
            policy,
            q_vec,
            trials,
            seed,
        } => {
            let ctx = build_context(code, q_vec.clone()).map_err(internal)?;
            let mut records = Vec::new();
            let mut successes = 0u64;
            let mut ambiguous = 0u64;
            for trial in 0..*trials {
                let trace = run_phasebit_round(
                    &ctx,
                    &CoverSpec::Classical(*w),
                    secret,
                    error.as_ref(),
                    policy,
                    seed.wrapping_add(trial),
                )
                .map_err(internal)?;
                if trace.success {
                    successes += 1;
                }
                if trace.ambiguous {
                    ambiguous += 1;
                }
                records.push(to_value(&trace)?);
            }
            (
                records,
                Aggregates {
                    trials: *trials,
                    success_rate: Some(successes as f64 / *trials as f64),
                    ambiguity_rate: Some(ambiguous as f64 / *trials as f64),
                    ..Aggregates::default()
                },
            )
        }
    };
    Ok(TraceFile {
        schema: TRACE_SCHEMA,
        scenario: config.clone(),
        trials,
        aggregates,
    })
}

pub fn render_trace_text(trace: &TraceFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema: {}\n", trace.schema));
    out.push_str(&format!(
        "protocol: {} | trials: {}\n",
        trace.scenario.protocol, trace.aggregates.trials
    ));
    if let Some(v) = trace.aggregates.success_rate {
        out.push_str(&format!("success rate: {v:.6}\n"));
    }
    if let Some(v) = trace.aggregates.ambiguity_rate {
        out.push_str(&format!("ambiguity rate: {v:.6}\n"));
    }
    if let Some(v) = trace.aggregates.tv_distance {
        out.push_str(&format!("TV distance (empirical vs analytic): {v:.6}\n"));
    }
    if let Some(v) = trace.aggregates.min_replenish_fidelity {
        out.push_str(&format!("min replenish fidelity: {v:.12}\n"));
    }
    if let Some(v) = trace.aggregates.external_ebits_consumed {
        out.push_str(&format!("external ebits consumed: {v}\n"));
    }
    if let Some(e) = trace.aggregates.empirical {
        out.push_str(&format!("empirical class distribution: {e:?}\n"));
    }
    if let Some(a) = trace.aggregates.analytic {
        out.push_str(&format!("analytic class distribution:  {a:?}\n"));
    }
    out
}
