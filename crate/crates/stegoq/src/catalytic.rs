//! Catalytic covert transmission over a k >= 2 stabilizer code.
//!
//! Each round dense-codes a classical cover bit `w` and secret bit `b` into
//! the sender's half of a shared Bell pair, encodes that half together with
//! one half of a locally prepared Bell pair into the code block, and ships
//! the block through a (possibly noisy) channel. After correction and
//! decoding the receiver extracts (w, b) and is left holding a fresh Bell
//! pair with the sender, which funds the next round: only the very first
//! round consumes a pre-shared ebit.
//!
//! Also provided: the probabilistic qubit-secret/qubit-cover preparation
//! (post-selected on a double "+" outcome) and the Gilbert-Varshamov lower
//! bound on the asymptotic secrecy rate.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::real::Real;
use crate::state::{Gate, MeasurementBasis, StateVector as GenericState};
use crate::trace::TraceEvent;
use crate::StateVector;

/// Fidelity demanded of the replenished ebit on clean rounds.
pub const REPLENISH_TOL: f64 = 1e-10;

/// Configuration of a single round.
#[derive(Debug, Clone)]
pub struct CatalyticRoundConfig {
    pub code: StabilizerCode,
    pub cover: u8,
    pub secret: u8,
    pub error: Option<PauliOperator>,
    pub seed: u64,
}

impl CatalyticRoundConfig {
    pub fn validate(&self) -> Result<()> {
        if self.code.k() < 2 {
            return Err(Error::Config(format!(
                "code `{}` has k = {}, catalysis needs k >= 2",
                self.code.name(),
                self.code.k()
            )));
        }
        if let Some(e) = &self.error {
            if e.n() != self.code.n() {
                return Err(Error::DimensionMismatch {
                    expected: self.code.n(),
                    got: e.n(),
                });
            }
            // distance-2 codes only detect, so allow errors up to d-1 there
            let budget = if self.code.d() == 2 {
                self.code.d() - 1
            } else {
                self.code.correction_radius()
            };
            if e.weight() > budget {
                return Err(Error::Config(format!(
                    "error weight {} exceeds the budget {budget} of `{}`",
                    e.weight(),
                    self.code.name()
                )));
            }
        }
        Ok(())
    }
}

/// Terminal status of a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundStatus {
    Success,
    DetectedUncorrectable,
}

/// Full record of one round.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrace {
    pub status: RoundStatus,
    pub events: Vec<TraceEvent>,
    pub syndrome: Option<Vec<u8>>,
    pub recovered: Option<(u8, u8)>,
    pub replenish_fidelity: Option<f64>,
    /// True when this round drew on an externally supplied ebit rather than
    /// one replenished by a previous round.
    pub external_ebit: bool,
}

/// Result of a chained run.
#[derive(Debug, Clone, Serialize)]
pub struct ChainTrace {
    pub rounds: Vec<RoundTrace>,
    pub external_ebits_consumed: usize,
    pub aborted: bool,
}

/// The Bell-pair rotation encoding (w, b): (|0,w> + (-1)^b |1,w~>)/sqrt(2)
/// on labels (A, B).
pub fn prepare_eta(w: u8, b: u8) -> Result<StateVector> {
    let mut eta = StateVector::bell_phi_plus("A", "B")?;
    dense_code(&mut eta, w, b)?;
    Ok(eta)
}

fn dense_code(ebit: &mut StateVector, w: u8, b: u8) -> Result<()> {
    if w & 1 == 1 {
        ebit.apply_gate(&Gate::X, &["A"])?;
    }
    if b & 1 == 1 {
        ebit.apply_gate(&Gate::Z, &["A"])?;
    }
    Ok(())
}

/// Codeword images for the encoding isometry: logical qubit 1 carries the
/// local ebit half, logical qubit 2 the dense-coded qubit, any further
/// logical qubits ride along as |0>.
fn code_images(code: &StabilizerCode) -> Result<Vec<StateVector>> {
    let k = code.k();
    let mut images = Vec::with_capacity(4);
    for x in 0..2u8 {
        for y in 0..2u8 {
            let mut word = vec![0u8; k];
            word[0] = x;
            word[1] = y;
            images.push(code.codeword(&word)?);
        }
    }
    Ok(images)
}

/// Everything up to (not including) the terminal measurements: encode,
/// transmit with optional error, correct, decode, and the receiver's CNOT+H
/// extraction. The surviving state spans [l1, l2, A, B].
pub struct Transmission {
    pub status: RoundStatus,
    pub events: Vec<TraceEvent>,
    pub syndrome: Option<Vec<u8>>,
    pub state: Option<StateVector>,
}

pub fn run_transmission(
    eta: &StateVector,
    code: &StabilizerCode,
    error: Option<&PauliOperator>,
) -> Result<Transmission> {
    let mut events = Vec::new();
    let local = StateVector::bell_phi_plus("l1", "l2")?;
    events.push(TraceEvent::note(
        "prepare_local_ebit",
        "local Bell pair on (l1, l2)",
    ));
    let joint = local.tensor(eta)?;
    events.push(TraceEvent::with_state(
        "dense_coded_input",
        "local ebit with the dense-coded shared pair",
        &joint,
    ));

    let images = code_images(code)?;
    let mut encoded = joint.encode_block(&["l1", "A"], &images)?;
    events.push(TraceEvent::with_state(
        "encode",
        format!("(l1, A) encoded into the `{}` block", code.name()),
        &encoded,
    ));

    let block_labels = code.block_labels();
    let block: Vec<&str> = block_labels.iter().map(|s| s.as_str()).collect();
    if let Some(e) = error {
        encoded.apply_pauli(e, &block)?;
        events.push(TraceEvent::with_state(
            "channel_error",
            format!("channel applied {e}"),
            &encoded,
        ));
    } else {
        events.push(TraceEvent::note("channel_error", "noiseless channel"));
    }

    // deterministic syndrome readout: the block state is a stabilizer
    // eigenstate, so generator expectations are exactly +-1
    let mut syndrome = Vec::with_capacity(code.generators().len());
    for g in code.generators() {
        let v = encoded.expectation_pauli(g, &block)?;
        if (v.abs() - 1.0).abs() > crate::AMP_TOL {
            return Err(Error::NotEigenstate {
                operator: g.to_letter_string(),
                value: v,
            });
        }
        syndrome.push(u8::from(v < 0.0));
    }
    events.push(TraceEvent::note(
        "syndrome",
        format!("generator eigenvalue pattern {syndrome:?}"),
    ));

    if syndrome.contains(&1) {
        let table = code.coset_table(code.correction_radius());
        match table.leader(&crate::codes::Syndrome::new(syndrome.clone())) {
            Some(leader) => {
                let correction = leader.inverse();
                encoded.apply_pauli(&correction, &block)?;
                events.push(TraceEvent::note(
                    "correct",
                    format!("applied coset-leader correction {leader}"),
                ));
            }
            None if code.d() == 2 => {
                events.push(TraceEvent::note(
                    "correct",
                    "nonzero syndrome with no coset leader: detected, not correctable",
                ));
                return Ok(Transmission {
                    status: RoundStatus::DetectedUncorrectable,
                    events,
                    syndrome: Some(syndrome),
                    state: None,
                });
            }
            None => {
                return Err(Error::Uncorrectable { syndrome });
            }
        }
    } else {
        events.push(TraceEvent::note("correct", "trivial syndrome"));
    }

    let decoded = encoded.decode_block(&images, &["l1", "A"])?;
    let norm = decoded.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::DecodeFailure(format!(
            "state left the code space (residual norm {norm})"
        )));
    }
    let mut state = decoded.reordered(&["l1", "l2", "A", "B"])?;
    events.push(TraceEvent::with_state(
        "decode",
        "adjoint isometry back to (l1, A)",
        &state,
    ));

    state.apply_gate(&Gate::Cnot, &["B", "A"])?;
    state.apply_gate(&Gate::H, &["B"])?;
    events.push(TraceEvent::with_state(
        "extract_rotation",
        "CNOT (control B) then H on B",
        &state,
    ));

    Ok(Transmission {
        status: RoundStatus::Success,
        events,
        syndrome: Some(syndrome),
        state: Some(state),
    })
}

/// One full round from a fresh externally supplied ebit.
pub fn run_round(cfg: &CatalyticRoundConfig) -> Result<RoundTrace> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (trace, _) = round_with_ebit(cfg, None, &mut rng)?;
    Ok(trace)
}

fn round_with_ebit(
    cfg: &CatalyticRoundConfig,
    shared: Option<StateVector>,
    rng: &mut impl Rng,
) -> Result<(RoundTrace, Option<StateVector>)> {
    let external = shared.is_none();
    let mut eta = match shared {
        Some(ebit) => ebit,
        None => StateVector::bell_phi_plus("A", "B")?,
    };
    dense_code(&mut eta, cfg.cover, cfg.secret)?;
    let mut events = vec![TraceEvent::note(
        "dense_code",
        format!(
            "encoded (w, b) = ({}, {}) onto the shared pair ({})",
            cfg.cover,
            cfg.secret,
            if external { "external" } else { "replenished" }
        ),
    )];

    let tx = run_transmission(&eta, &cfg.code, cfg.error.as_ref())?;
    events.extend(tx.events);
    if tx.status == RoundStatus::DetectedUncorrectable {
        return Ok((
            RoundTrace {
                status: tx.status,
                events,
                syndrome: tx.syndrome,
                recovered: None,
                replenish_fidelity: None,
                external_ebit: external,
            },
            None,
        ));
    }
    let mut state = tx.state.expect("successful transmission carries a state");

    let b_rec = state.measure("B", MeasurementBasis::Z, rng)?;
    if b_rec == 1 {
        // undo the phase dense coding leaves on the |1> cover branch
        state.apply_gate(&Gate::Z, &["A"])?;
    }
    let w_rec = state.measure("A", MeasurementBasis::Z, rng)?;
    events.push(TraceEvent::note(
        "readout",
        format!("measured cover {w_rec}, secret {b_rec}"),
    ));

    let target = StateVector::bell_phi_plus("l1", "l2")?;
    let fidelity = state.block_fidelity(&target)?;
    events.push(TraceEvent::note(
        "replenish_check",
        format!("fidelity of (l1, l2) against the Bell pair: {fidelity:.12}"),
    ));

    // l2 stayed with the sender and l1 traveled to the receiver, so they
    // take the (A, B) roles of the next round's shared pair
    let next = state
        .extract_block(&["l2", "l1"], 1e-9)?
        .relabeled(&["A", "B"])?;

    Ok((
        RoundTrace {
            status: RoundStatus::Success,
            events,
            syndrome: tx.syndrome,
            recovered: Some((w_rec, b_rec)),
            replenish_fidelity: Some(fidelity),
            external_ebit: external,
        },
        Some(next),
    ))
}

/// Chained rounds: round i+1 runs on the ebit replenished by round i. A
/// detected-uncorrectable round aborts the chain with a partial trace.
pub fn run_chained(
    pairs: &[(u8, u8)],
    code: &StabilizerCode,
    error: Option<&PauliOperator>,
    seed: u64,
) -> Result<ChainTrace> {
    if pairs.is_empty() {
        return Err(Error::Config("chain needs at least one round".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rounds = Vec::with_capacity(pairs.len());
    let mut carried: Option<StateVector> = None;
    let mut external = 0usize;
    for &(w, b) in pairs {
        let cfg = CatalyticRoundConfig {
            code: code.clone(),
            cover: w,
            secret: b,
            error: error.cloned(),
            seed,
        };
        cfg.validate()?;
        if carried.is_none() {
            external += 1;
        }
        let (trace, next) = round_with_ebit(&cfg, carried.take(), &mut rng)?;
        let aborted = trace.status == RoundStatus::DetectedUncorrectable;
        rounds.push(trace);
        if aborted {
            return Ok(ChainTrace {
                rounds,
                external_ebits_consumed: external,
                aborted: true,
            });
        }
        carried = next;
    }
    Ok(ChainTrace {
        rounds,
        external_ebits_consumed: external,
        aborted: false,
    })
}

/// Outcome of the probabilistic qubit-secret preparation.
#[derive(Debug, Clone)]
pub struct QuantumStegoOutcome {
    pub success: bool,
    /// X-basis outcomes of the (cover, secret) ancillas.
    pub ancilla_outcomes: (u8, u8),
    /// Post-measurement state of the (A, B) pair.
    pub state: StateVector,
}

/// Prepare the doubly-rotated Bell state carrying an arbitrary qubit secret
/// (angles alpha, beta) inside an arbitrary qubit cover (angles mu, nu):
/// CNOT from the cover ancilla and CPHASE from the secret ancilla onto the
/// sender's Bell half, then X-basis measurement of both ancillas. Succeeds
/// exactly when both read "+".
pub fn prepare_quantum_stego(
    alpha: f64,
    beta: f64,
    mu: f64,
    nu: f64,
    rng: &mut impl Rng,
) -> Result<QuantumStegoOutcome> {
    let cover = StateVector::qubit(
        "cov",
        Complex64::new(mu.cos(), 0.0),
        Complex64::from_polar(mu.sin(), nu),
    )?;
    let secret = StateVector::qubit(
        "sec",
        Complex64::new(alpha.cos(), 0.0),
        Complex64::from_polar(alpha.sin(), beta),
    )?;
    let mut state = cover
        .tensor(&secret)?
        .tensor(&StateVector::bell_phi_plus("A", "B")?)?;
    state.apply_gate(&Gate::Cnot, &["cov", "A"])?;
    state.apply_gate(&Gate::Cphase, &["sec", "A"])?;
    let m_cov = state.measure("cov", MeasurementBasis::X, rng)?;
    let m_sec = state.measure("sec", MeasurementBasis::X, rng)?;
    let pair = state.extract_block(&["A", "B"], 1e-9)?;
    Ok(QuantumStegoOutcome {
        success: m_cov == 0 && m_sec == 0,
        ancilla_outcomes: (m_cov, m_sec),
        state: pair,
    })
}

/// Reference expansion of the doubly-rotated Bell state, built directly in
/// the Bell basis; the oracle `prepare_quantum_stego` is checked against.
pub fn quantum_stego_reference(alpha: f64, beta: f64, mu: f64, nu: f64) -> Result<StateVector> {
    let bell = |signs: (f64, f64), flip: bool| -> Result<StateVector> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (w00, w11) = if flip { (1, 2) } else { (0, 3) };
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[w00] = Complex64::new(signs.0 * r, 0.0);
        amps[w11] = Complex64::new(signs.1 * r, 0.0);
        StateVector::from_amplitudes(&["A", "B"], amps)
    };
    let phi_plus = bell((1.0, 1.0), false)?;
    let phi_minus = bell((1.0, -1.0), false)?;
    let psi_plus = bell((1.0, 1.0), true)?;
    let psi_minus = bell((1.0, -1.0), true)?;
    let ca = Complex64::new(alpha.cos(), 0.0);
    let sa = Complex64::from_polar(alpha.sin(), beta);
    let cm = Complex64::new(mu.cos(), 0.0);
    let sm = Complex64::from_polar(mu.sin(), nu);
    GenericState::superpose(&[
        (cm * ca, &phi_plus),
        (cm * sa, &phi_minus),
        (sm * ca, &psi_plus),
        (sm * sa, &psi_minus),
    ])
}

/// Binary entropy with the 0 log 0 = 0 convention.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let mut acc = T::zero();
    for q in [p, T::one() - p] {
        if q > T::zero() {
            acc -= q * q.log2();
        }
    }
    acc
}

/// Gilbert-Varshamov lower bound on the secrecy rate at relative distance
/// delta: 1/2 - H2(delta) - delta log2(3).
pub fn gv_secrecy_rate<T: Real>(delta: T) -> Result<T> {
    if delta < T::zero() || delta >= T::from_f64(0.5) {
        return Err(Error::Domain(format!(
            "relative distance {delta} outside [0, 1/2)"
        )));
    }
    let half = T::from_f64(0.5);
    let log2_3 = T::from_f64(3.0).log2();
    Ok(half - binary_entropy(delta) - delta * log2_3)
}
