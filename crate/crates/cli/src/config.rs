//! Scenario configuration: the JSON schema the `run` subcommand consumes,
//! plus validation into typed scenarios with field-path errors.

use serde::{Deserialize, Serialize};

use stegoq::codes::find_code;
use stegoq::phasebit::{ResolutionPolicy, SecretSpec};
use stegoq::{Distribution4, PauliOperator, StabilizerCode, SupportMask};

use crate::CliError;

/// Flat on-disk scenario description; protocol-specific fields are optional
/// and validated per protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub protocol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Default output format ("json" | "text"); the --output flag wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Catalytic: the (w, b) list, one entry per chained round.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<Vec<(u8, u8)>>,
    /// Catalytic/phasebit: channel error as a Pauli string ("X1", "Z4Z9");
    /// catalytic chains apply it on every round.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Degenerate: sender symbol distribution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<[f64; 4]>,
    /// Degenerate: receiver randomization distribution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<[f64; 4]>,
    /// Degenerate: cover word.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_w: Option<u8>,
    /// Phasebit: classical cover word.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u8>,
    /// Phasebit: classical secret bit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u8>,
    /// Phasebit: quantum secret amplitude on phase bit 0, as [re, im].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 2]>,
    /// Phasebit: quantum secret amplitude on phase bit 1, as [re, im].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 2]>,
    /// Phasebit: "min_weight" (default) or "allowed_set".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed_set: Option<Vec<String>>,
    /// Phasebit: explicit coordinate mask as a bit string ("00011").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_vec: Option<String>,
}

/// Validated, typed scenario.
pub enum Scenario {
    Catalytic {
        code: StabilizerCode,
        rounds: Vec<(u8, u8)>,
        error: Option<PauliOperator>,
        trials: u64,
        seed: u64,
    },
    Degenerate {
        p: Distribution4,
        q: Distribution4,
        cover_w: u8,
        trials: u64,
        seed: u64,
    },
    Phasebit {
        code: StabilizerCode,
        w: u8,
        secret: SecretSpec,
        error: Option<PauliOperator>,
        policy: ResolutionPolicy,
        q_vec: Option<SupportMask>,
        trials: u64,
        seed: u64,
    },
}

fn config_err(field: &str, message: impl Into<String>) -> CliError {
    CliError {
        kind: "config".into(),
        field: Some(field.into()),
        message: message.into(),
    }
}

impl ScenarioConfig {
    /// Apply command-line overrides (flags win over file values).
    pub fn with_overrides(mut self, seed: Option<u64>, trials: Option<u64>) -> Self {
        if seed.is_some() {
            self.seed = seed;
        }
        if trials.is_some() {
            self.trials = trials;
        }
        self
    }

    pub fn validate(&self) -> Result<Scenario, CliError> {
        let trials = self.trials.unwrap_or(1);
        if trials == 0 {
            return Err(config_err("trials", "must be at least 1"));
        }
        if let Some(output) = &self.output {
            if output != "json" && output != "text" {
                return Err(config_err(
                    "output",
                    format!("unknown output format `{output}` (json | text)"),
                ));
            }
        }
        let seed = self.seed.unwrap_or(0);
        match self.protocol.as_str() {
            "catalytic" => {
                let code_name = self.code.as_deref().unwrap_or("four_two_two");
                let code = find_code(code_name).map_err(|e| config_err("code", e.to_string()))?;
                if code.k() < 2 {
                    return Err(config_err(
                        "code",
                        format!("`{code_name}` has k = {}, catalysis needs k >= 2", code.k()),
                    ));
                }
                let rounds = self
                    .rounds
                    .clone()
                    .ok_or_else(|| config_err("rounds", "catalytic runs need a (w, b) list"))?;
                if rounds.is_empty() {
                    return Err(config_err("rounds", "need at least one round"));
                }
                for (i, &(w, b)) in rounds.iter().enumerate() {
                    if w > 1 || b > 1 {
                        return Err(config_err(
                            &format!("rounds[{i}]"),
                            "cover and secret must be bits",
                        ));
                    }
                }
                let error = self
                    .error
                    .as_deref()
                    .map(|s| PauliOperator::parse(s, code.n()))
                    .transpose()
                    .map_err(|e| config_err("error", e.to_string()))?;
                Ok(Scenario::Catalytic {
                    code,
                    rounds,
                    error,
                    trials,
                    seed,
                })
            }
            "degenerate" => {
                let p = self.p.ok_or_else(|| {
                    config_err("p", "degenerate runs need the sender distribution")
                })?;
                let p = Distribution4::new(p).map_err(|e| config_err("p", e.to_string()))?;
                let q = self.q.ok_or_else(|| {
                    config_err("q", "degenerate runs need the receiver distribution")
                })?;
                let q = Distribution4::new(q).map_err(|e| config_err("q", e.to_string()))?;
                let cover_w = self.cover_w.unwrap_or(0);
                if cover_w > 1 {
                    return Err(config_err("cover_w", "cover word must be a bit"));
                }
                if let Some(code) = &self.code {
                    if code != "shor_ea" {
                        return Err(config_err("code", "degenerate runs ship on `shor_ea`"));
                    }
                }
                Ok(Scenario::Degenerate {
                    p,
                    q,
                    cover_w,
                    trials,
                    seed,
                })
            }
            "phasebit" => {
                let code_name = self.code.as_deref().unwrap_or("five_qubit");
                let code = find_code(code_name).map_err(|e| config_err("code", e.to_string()))?;
                let w = self.w.unwrap_or(0);
                if w > 1 {
                    return Err(config_err("w", "cover word must be a bit"));
                }
                let secret = match (self.alpha, self.beta, self.b) {
                    (Some(a), Some(bt), None) => SecretSpec::Quantum(
                        stegoq::Complex64::new(a[0], a[1]),
                        stegoq::Complex64::new(bt[0], bt[1]),
                    ),
                    (None, None, Some(bit)) => {
                        if bit > 1 {
                            return Err(config_err("b", "secret must be a bit"));
                        }
                        SecretSpec::Classical(bit)
                    }
                    (None, None, None) => SecretSpec::Classical(0),
                    _ => {
                        return Err(config_err(
                            "alpha",
                            "give either b, or both alpha and beta, not a mixture",
                        ))
                    }
                };
                let error = self
                    .error
                    .as_deref()
                    .map(|s| PauliOperator::parse(s, code.n()))
                    .transpose()
                    .map_err(|e| config_err("error", e.to_string()))?;
                let policy = match self.policy.as_deref().unwrap_or("min_weight") {
                    "min_weight" => {
                        if self.allowed_set.is_some() {
                            return Err(config_err(
                                "allowed_set",
                                "only meaningful with the allowed_set policy",
                            ));
                        }
                        ResolutionPolicy::MinWeight
                    }
                    "allowed_set" => {
                        let set = self.allowed_set.as_ref().ok_or_else(|| {
                            config_err("allowed_set", "the allowed_set policy needs the list")
                        })?;
                        let parsed = set
                            .iter()
                            .map(|s| PauliOperator::parse(s, code.n()))
                            .collect::<stegoq::Result<Vec<_>>>()
                            .map_err(|e| config_err("allowed_set", e.to_string()))?;
                        ResolutionPolicy::AllowedSet(parsed)
                    }
                    other => {
                        return Err(config_err(
                            "policy",
                            format!("unknown policy `{other}` (min_weight | allowed_set)"),
                        ))
                    }
                };
                let q_vec = self
                    .q_vec
                    .as_deref()
                    .map(SupportMask::from_bit_string)
                    .transpose()
                    .map_err(|e| config_err("q_vec", e.to_string()))?;
                Ok(Scenario::Phasebit {
                    code,
                    w,
                    secret,
                    error,
                    policy,
                    q_vec,
                    trials,
                    seed,
                })
            }
            other => Err(config_err(
                "protocol",
                format!("unknown protocol `{other}` (catalytic | degenerate | phasebit)"),
            )),
        }
    }
}
