//! Shared trace plumbing for the protocol drivers.

use serde::Serialize;

use crate::state::StateVector;

/// One named step of a protocol round, optionally carrying a state dump
/// (significant amplitudes as (basis word, re, im)).
#[derive(Debug, Clone, Serialize)]
pub struct TraceEvent {
    pub step: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<(String, f64, f64)>>,
}

impl TraceEvent {
    pub fn note(step: &str, detail: impl Into<String>) -> Self {
        TraceEvent {
            step: step.to_string(),
            detail: detail.into(),
            state: None,
        }
    }

    pub fn with_state(step: &str, detail: impl Into<String>, sv: &StateVector<f64>) -> Self {
        TraceEvent {
            step: step.to_string(),
            detail: detail.into(),
            state: Some(sv.dump()),
        }
    }
}
