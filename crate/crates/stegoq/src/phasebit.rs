//! Phase-bit signalling through a split codeword.
//!
//! A weight-q coordinate mask splits each codeword's basis support into the
//! even (L0) and odd (L1) overlap halves. The sender entangles that split
//! with her half of a Bell pair, so the secret rides on the relative phase
//! between |L0, 0> and |L1, 1>. Stabilizer generators then come in two
//! kinds: non-flipping ones fix each half (their syndromes read out
//! directly) while flipping ones swap the halves, so only pairwise products
//! of flipping generators have readable eigenvalues. The pairwise system
//! determines the flipping syndromes up to a global complement, which is
//! why every measurement record is shared by exactly two candidate errors;
//! resolution policies and the collision census quantify that ambiguity.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{CosetTable, StabilizerCode, Syndrome};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliOperator, SupportMask};
use crate::state::{Gate, MeasurementBasis, StateVector as GenericState};
use crate::trace::TraceEvent;
use crate::StateVector;

/// Label of the receiver-held qubit.
pub const BOB: &str = "bob";

/// Context derived from a code and an admissible coordinate mask.
#[derive(Debug, Clone)]
pub struct PhaseBitContext {
    code: StabilizerCode,
    q_vec: SupportMask,
    flipping: Vec<usize>,
    non_flipping: Vec<usize>,
    sublogical_z: PauliOperator,
    default_flip: usize,
    /// Per cover word: basis supports of the even and odd halves, packed
    /// with qubit 1 on bit 0.
    supports: Vec<[Vec<u64>; 2]>,
    codewords: Vec<StateVector>,
    coset: CosetTable,
}

/// Cover payload of a round.
#[derive(Debug, Clone)]
pub enum CoverSpec {
    Classical(u8),
    /// c0 |0_L> + c1 |1_L> (single-logical-qubit codes only).
    Superposed(Complex64, Complex64),
}

/// Secret payload of a round.
#[derive(Debug, Clone)]
pub enum SecretSpec {
    Classical(u8),
    /// alpha on phase bit 0, beta on phase bit 1; |alpha|^2 + |beta|^2 = 1.
    Quantum(Complex64, Complex64),
}

/// Raw measurement record of one erroneous stego state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyndromeRecord {
    /// (generator index, syndrome bit) for each non-flipping generator.
    pub nf_values: Vec<(usize, u8)>,
    /// (i, j, s_i xor s_j) for every pair of flipping generators.
    pub pair_sums: Vec<(usize, usize, u8)>,
    /// The two full syndrome assignments consistent with the record; they
    /// differ exactly by complementing every flipping bit.
    pub candidates: [Syndrome; 2],
}

/// How to pick between the two candidate errors.
#[derive(Debug, Clone)]
pub enum ResolutionPolicy {
    MinWeight,
    AllowedSet(Vec<PauliOperator>),
}

/// Outcome of candidate resolution.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    Resolved {
        applied: PauliOperator,
        candidates: (PauliOperator, PauliOperator),
    },
    Ambiguous {
        candidates: (PauliOperator, PauliOperator),
    },
}

impl Resolution {
    pub fn is_ambiguous(&self) -> bool {
        matches!(self, Resolution::Ambiguous { .. })
    }

    pub fn candidates(&self) -> &(PauliOperator, PauliOperator) {
        match self {
            Resolution::Resolved { candidates, .. } => candidates,
            Resolution::Ambiguous { candidates } => candidates,
        }
    }
}

/// Corrected state plus the resolution that produced it.
#[derive(Debug, Clone)]
pub struct ResolveOutcome {
    pub state: StateVector,
    pub resolution: Resolution,
}

/// Disentangled secret readout.
#[derive(Debug, Clone)]
pub struct SecretReadout {
    /// Deterministic X-basis value when one exists (classical secrets).
    pub bit: Option<u8>,
    /// The receiver's qubit after the controlled flip.
    pub bob_qubit: StateVector,
    /// Full register after the controlled flip (receiver qubit untouched).
    pub state: StateVector,
}

impl PhaseBitContext {
    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn q_vec(&self) -> &SupportMask {
        &self.q_vec
    }

    pub fn flipping(&self) -> &[usize] {
        &self.flipping
    }

    pub fn non_flipping(&self) -> &[usize] {
        &self.non_flipping
    }

    pub fn sublogical_z(&self) -> &PauliOperator {
        &self.sublogical_z
    }

    /// Generator index used for the controlled flip and the sublogical
    /// Hadamard.
    pub fn default_flip(&self) -> usize {
        self.default_flip
    }

    pub fn codeword(&self, w: u8) -> &StateVector {
        &self.codewords[w as usize % self.codewords.len()]
    }

    pub fn support(&self, w: u8, half: usize) -> &[u64] {
        &self.supports[w as usize % self.supports.len()][half & 1]
    }

    fn block(&self) -> Vec<String> {
        self.code.block_labels()
    }
}

/// The sublogical Z for a coordinate mask: the tensor of Z letters on the
/// masked positions.
pub fn sublogical_z(mask: &SupportMask) -> PauliOperator {
    let mut op = PauliOperator::identity(mask.n());
    for pos in mask.positions() {
        op = op
            .multiply(&PauliOperator::single(mask.n(), pos, PauliLetter::Z).unwrap())
            .unwrap();
    }
    op
}

/// All weight-q masks over n qubits in lexicographic bit-string order.
fn masks_of_weight(n: usize, q: usize) -> Vec<SupportMask> {
    let mut out = Vec::new();
    if q == 0 || q > n {
        return out;
    }
    let mut positions: Vec<usize> = (1..=q).collect();
    loop {
        out.push(SupportMask::from_positions(n, &positions).unwrap());
        let mut i = q;
        while i > 0 && positions[i - 1] == n - (q - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        positions[i - 1] += 1;
        for j in i..q {
            positions[j] = positions[j - 1] + 1;
        }
    }
    out.sort_by_key(|m| m.to_bit_string());
    out
}

/// Subgroup index of the even half inside the support: 2 when the mask
/// splits the support, 1 when it is blind to it.
fn lagrange_index(words: &[u64], mask: &SupportMask) -> usize {
    let zero = words.iter().filter(|&&v| mask.dot_word(v) == 0).count();
    if zero == words.len() {
        1
    } else {
        2
    }
}

/// Build the context for a code; when `q_vec` is omitted the weight-q masks
/// are searched in lexicographic order and the first that splits the
/// support is taken.
pub fn build_context(code: &StabilizerCode, q_vec: Option<SupportMask>) -> Result<PhaseBitContext> {
    build_context_with_flip(code, q_vec, None)
}

/// As `build_context`, with an explicit flipping generator for the readout
/// stage (defaults to the first flipping generator).
pub fn build_context_with_flip(
    code: &StabilizerCode,
    q_vec: Option<SupportMask>,
    default_flip: Option<usize>,
) -> Result<PhaseBitContext> {
    let q_weight = code.correction_radius() + 1;
    let mut codewords = Vec::with_capacity(1 << code.k());
    for w in 0..1u32 << code.k() {
        let bits: Vec<u8> = (0..code.k()).map(|j| ((w >> j) & 1) as u8).collect();
        codewords.push(code.codeword::<f64>(&bits)?);
    }
    let base_words = codewords[0].support_words(crate::AMP_TOL);

    let mask = match q_vec {
        Some(m) => {
            if m.n() != code.n() {
                return Err(Error::InvalidMask(format!(
                    "mask length {} does not match the {}-qubit code",
                    m.n(),
                    code.n()
                )));
            }
            if m.popcount() != q_weight {
                return Err(Error::InvalidMask(format!(
                    "mask weight {} but the code needs weight {q_weight}",
                    m.popcount()
                )));
            }
            if lagrange_index(&base_words, &m) != 2 {
                return Err(Error::InvalidMask(format!(
                    "mask {m} does not split the codeword support"
                )));
            }
            m
        }
        None => masks_of_weight(code.n(), q_weight)
            .into_iter()
            .find(|m| lagrange_index(&base_words, m) == 2)
            .ok_or(Error::NoSplit)?,
    };

    // classify generators by the parity of X/Y letters on the mask
    let mut flipping = Vec::new();
    let mut non_flipping = Vec::new();
    for (i, g) in code.generators().iter().enumerate() {
        if (g.x_bits() & mask.bits()).count_ones() % 2 == 1 {
            flipping.push(i);
        } else {
            non_flipping.push(i);
        }
    }
    let phi = flipping.len();
    if phi == 0 {
        return Err(Error::Config(
            "no flipping generator: the mask cannot carry a phase bit".into(),
        ));
    }
    if phi * (phi - 1) / 2 < phi {
        return Err(Error::Config(format!(
            "{phi} flipping generators give only {} pairwise sums, too few to solve",
            phi * (phi - 1) / 2
        )));
    }

    let zbar = sublogical_z(&mask);
    for (i, g) in code.generators().iter().enumerate() {
        let want = u8::from(flipping.contains(&i));
        if g.commutes_bit(&zbar)? != want {
            return Err(Error::InvalidCode {
                name: code.name().to_string(),
                reason: format!("sublogical Z has the wrong commutation with {g}"),
            });
        }
    }

    let mut supports = Vec::with_capacity(codewords.len());
    for sv in &codewords {
        let words = sv.support_words(crate::AMP_TOL);
        let (odd, even): (Vec<u64>, Vec<u64>) =
            words.into_iter().partition(|&v| mask.dot_word(v) == 1);
        if even.is_empty() || odd.is_empty() || even.len() != odd.len() {
            return Err(Error::InvalidMask(format!(
                "mask {mask} splits a codeword support unevenly ({} / {})",
                even.len(),
                odd.len()
            )));
        }
        supports.push([even, odd]);
    }

    let default_flip = match default_flip {
        Some(idx) => {
            if !flipping.contains(&idx) {
                return Err(Error::Config(format!(
                    "generator {} is not flipping",
                    idx + 1
                )));
            }
            idx
        }
        None => flipping[0],
    };

    Ok(PhaseBitContext {
        code: code.clone(),
        q_vec: mask,
        flipping,
        non_flipping,
        sublogical_z: zbar,
        default_flip,
        supports,
        coset: code.coset_table(code.correction_radius()),
        codewords,
    })
}

/// The two normalized halves of a codeword: |w_L> = (|L0> + |L1>)/sqrt(2).
pub fn split_codeword(ctx: &PhaseBitContext, w: u8) -> Result<(StateVector, StateVector)> {
    let sv = ctx.codeword(w);
    let mask = &ctx.q_vec;
    let n = ctx.code.n();
    let root2 = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let mut halves = [
        vec![Complex64::new(0.0, 0.0); sv.amplitudes().len()],
        vec![Complex64::new(0.0, 0.0); sv.amplitudes().len()],
    ];
    for (idx, amp) in sv.amplitudes().iter().enumerate() {
        if amp.norm() <= crate::AMP_TOL {
            continue;
        }
        let mut word = 0u64;
        for qubit in 0..n {
            if idx & (1 << (n - 1 - qubit)) != 0 {
                word |= 1 << qubit;
            }
        }
        halves[mask.dot_word(word) as usize][idx] = *amp * root2;
    }
    let labels = ctx.block();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let l0 = GenericState::from_amplitudes(&refs, halves[0].clone())?;
    let l1 = GenericState::from_amplitudes(&refs, halves[1].clone())?;
    Ok((l0, l1))
}

/// The stego state: code block (c1..cn) entangled with the receiver qubit,
/// the secret riding on the relative phase of the |L0, 0> and |L1, 1>
/// branches.
pub fn prepare_upsilon(
    ctx: &PhaseBitContext,
    cover: &CoverSpec,
    secret: &SecretSpec,
) -> Result<StateVector> {
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    // branch weights: (u, v) with state = u |L0, 0> + v |L1, 1>
    let (u, v) = match secret {
        SecretSpec::Classical(b) => {
            let sign = if b & 1 == 1 { -1.0 } else { 1.0 };
            (half, half * sign)
        }
        SecretSpec::Quantum(alpha, beta) => {
            let norm = alpha.norm_sqr() + beta.norm_sqr();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "secret amplitudes have norm^2 = {norm}, expected 1"
                )));
            }
            ((*alpha + *beta) * half, (*alpha - *beta) * half)
        }
    };
    let covers: Vec<(Complex64, u8)> = match cover {
        CoverSpec::Classical(w) => vec![(Complex64::new(1.0, 0.0), *w & 1)],
        CoverSpec::Superposed(c0, c1) => {
            if ctx.code.k() != 1 {
                return Err(Error::Config(
                    "superposed covers need a single logical qubit".into(),
                ));
            }
            let norm = c0.norm_sqr() + c1.norm_sqr();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "cover amplitudes have norm^2 = {norm}, expected 1"
                )));
            }
            vec![(*c0, 0), (*c1, 1)]
        }
    };
    let bob0 = GenericState::basis(&[BOB], &[0])?;
    let bob1 = GenericState::basis(&[BOB], &[1])?;
    let mut pieces: Vec<(Complex64, StateVector)> = Vec::new();
    for (c, w) in covers {
        let (l0, l1) = split_codeword(ctx, w)?;
        pieces.push((c * u, l0.tensor(&bob0)?));
        pieces.push((c * v, l1.tensor(&bob1)?));
    }
    let terms: Vec<(Complex64, &StateVector)> = pieces.iter().map(|(c, s)| (*c, s)).collect();
    let mut out = GenericState::superpose(&terms)?;
    out.normalize();
    Ok(out)
}

/// Read the non-flipping syndromes and the pairwise flipping sums off an
/// erroneous stego state, and assemble the two consistent full-syndrome
/// candidates.
pub fn extract_syndromes(state: &StateVector, ctx: &PhaseBitContext) -> Result<SyndromeRecord> {
    let labels = ctx.block();
    let block: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let read_bit = |op: &PauliOperator| -> Result<u8> {
        let v = state.expectation_pauli(op, &block)?;
        if (v.abs() - 1.0).abs() > crate::AMP_TOL {
            return Err(Error::NotEigenstate {
                operator: op.to_letter_string(),
                value: v,
            });
        }
        Ok(u8::from(v < 0.0))
    };

    let mut nf_values = Vec::with_capacity(ctx.non_flipping.len());
    for &i in &ctx.non_flipping {
        nf_values.push((i, read_bit(&ctx.code.generators()[i])?));
    }

    let mut pair_sums = Vec::new();
    for (a, &i) in ctx.flipping.iter().enumerate() {
        for &j in &ctx.flipping[a + 1..] {
            let product = ctx.code.generators()[i].multiply(&ctx.code.generators()[j])?;
            pair_sums.push((i, j, read_bit(&product)?));
        }
    }

    // solve the pairwise system: anchor the first flipping bit at 0, read
    // the rest off the anchored sums, then check every remaining equation
    let anchor = ctx.flipping[0];
    let mut solution = vec![0u8; ctx.code.generators().len()];
    for &(i, bit) in &nf_values {
        solution[i] = bit;
    }
    for &(i, j, sum) in &pair_sums {
        if i == anchor {
            solution[j] = sum;
        }
    }
    for &(i, j, sum) in &pair_sums {
        if solution[i] ^ solution[j] != sum {
            return Err(Error::DecodeFailure(format!(
                "inconsistent pairwise sums: s{} ^ s{} != {sum}",
                i + 1,
                j + 1
            )));
        }
    }
    let mut complement = solution.clone();
    for &i in &ctx.flipping {
        complement[i] ^= 1;
    }
    Ok(SyndromeRecord {
        nf_values,
        pair_sums,
        candidates: [Syndrome::new(solution), Syndrome::new(complement)],
    })
}

/// Map both candidate syndromes to their minimum-weight errors and pick one
/// according to the policy; the chosen error's inverse is applied to the
/// code block. Ties and empty/double allowed-set hits stay uncorrected and
/// are reported as ambiguous.
pub fn resolve_and_correct(
    state: &StateVector,
    record: &SyndromeRecord,
    ctx: &PhaseBitContext,
    policy: &ResolutionPolicy,
) -> Result<ResolveOutcome> {
    let leader = |syn: &Syndrome| -> Result<PauliOperator> {
        ctx.coset
            .leader(syn)
            .cloned()
            .ok_or_else(|| Error::Uncorrectable {
                syndrome: syn.bits().to_vec(),
            })
    };
    let cand0 = leader(&record.candidates[0])?;
    let cand1 = leader(&record.candidates[1])?;
    let pick = match policy {
        ResolutionPolicy::MinWeight => {
            use std::cmp::Ordering;
            match cand0.weight().cmp(&cand1.weight()) {
                Ordering::Less => Some(0),
                Ordering::Greater => Some(1),
                Ordering::Equal => None,
            }
        }
        ResolutionPolicy::AllowedSet(set) => {
            let hit0 = set.iter().any(|e| e.same_pattern(&cand0));
            let hit1 = set.iter().any(|e| e.same_pattern(&cand1));
            match (hit0, hit1) {
                (true, false) => Some(0),
                (false, true) => Some(1),
                _ => None,
            }
        }
    };
    match pick {
        Some(which) => {
            let applied = if which == 0 {
                cand0.clone()
            } else {
                cand1.clone()
            };
            let labels = ctx.block();
            let block: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            let mut corrected = state.clone();
            corrected.apply_pauli(&applied.inverse(), &block)?;
            Ok(ResolveOutcome {
                state: corrected,
                resolution: Resolution::Resolved {
                    applied,
                    candidates: (cand0, cand1),
                },
            })
        }
        None => Ok(ResolveOutcome {
            state: state.clone(),
            resolution: Resolution::Ambiguous {
                candidates: (cand0, cand1),
            },
        }),
    }
}

/// The receiver's controlled flip: with his qubit as control, applying the
/// default flipping generator to the code block folds both branches onto
/// |L0^w> and leaves his qubit carrying the phase bit in the X basis.
pub fn read_secret(state: &StateVector, ctx: &PhaseBitContext) -> Result<SecretReadout> {
    let mut post = state.clone();
    let sf = ctx.code.generators()[ctx.default_flip].clone();
    let labels = ctx.block();
    let mut targets: Vec<&str> = vec![BOB];
    targets.extend(labels.iter().map(|s| s.as_str()));
    post.apply_gate(&Gate::ControlledPauli(sf), &targets)?;
    let purity = post.block_purity(&[BOB])?;
    if purity < 1.0 - 1e-9 {
        return Err(Error::DecodeFailure(format!(
            "receiver qubit still entangled after the controlled flip (purity {purity})"
        )));
    }
    let bob_qubit = post.extract_block(&[BOB], 1e-9)?;
    let bit = bob_qubit.deterministic_bit(BOB, MeasurementBasis::X)?;
    Ok(SecretReadout {
        bit,
        bob_qubit,
        state: post,
    })
}

/// The sublogical Hadamard (S_F + Zbar)/sqrt(2) on the code block, mapping
/// |L0^w> back to the full codeword.
pub fn restore_cover(state: &StateVector, ctx: &PhaseBitContext) -> Result<StateVector> {
    let labels = ctx.block();
    let block: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut via_flip = state.clone();
    via_flip.apply_pauli(&ctx.code.generators()[ctx.default_flip], &block)?;
    let mut via_z = state.clone();
    via_z.apply_pauli(&ctx.sublogical_z, &block)?;
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let out = GenericState::superpose(&[(half, &via_flip), (half, &via_z)])?;
    if (out.norm() - state.norm()).abs() > crate::AMP_TOL {
        return Err(Error::Config(
            "sublogical Hadamard failed to preserve the norm".into(),
        ));
    }
    Ok(out)
}

/// Full round trace.
#[derive(Debug, Clone, Serialize)]
pub struct PhasebitRoundTrace {
    pub events: Vec<TraceEvent>,
    pub record: Option<SyndromeRecord>,
    pub resolution: Option<Resolution>,
    pub ambiguous: bool,
    pub recovered_bit: Option<u8>,
    pub secret_fidelity: Option<f64>,
    pub cover_fidelity: Option<f64>,
    pub success: bool,
}

/// Run one round end to end: prepare, corrupt, extract, resolve, read the
/// secret, restore the cover, and score the result.
pub fn run_phasebit_round(
    ctx: &PhaseBitContext,
    cover: &CoverSpec,
    secret: &SecretSpec,
    error: Option<&PauliOperator>,
    policy: &ResolutionPolicy,
    seed: u64,
) -> Result<PhasebitRoundTrace> {
    if let Some(e) = error {
        if e.n() != ctx.code.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.code.n(),
                got: e.n(),
            });
        }
        if e.weight() > ctx.code.correction_radius() {
            return Err(Error::Config(format!(
                "error weight {} exceeds the correction radius {}",
                e.weight(),
                ctx.code.correction_radius()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::new();

    let mut state = prepare_upsilon(ctx, cover, secret)?;
    events.push(TraceEvent::with_state(
        "prepare_stego_state",
        "codeword split entangled with the receiver qubit",
        &state,
    ));

    let labels = ctx.block();
    let block: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    if let Some(e) = error {
        state.apply_pauli(e, &block)?;
        events.push(TraceEvent::with_state(
            "channel_error",
            format!("channel applied {e}"),
            &state,
        ));
    } else {
        events.push(TraceEvent::note("channel_error", "noiseless channel"));
    }

    let record = extract_syndromes(&state, ctx)?;
    events.push(TraceEvent::note(
        "syndrome_extraction",
        format!(
            "non-flipping bits {:?}, pairwise sums {:?}",
            record.nf_values, record.pair_sums
        ),
    ));

    let resolved = resolve_and_correct(&state, &record, ctx, policy)?;
    let resolution = resolved.resolution.clone();
    let (c0, c1) = resolution.candidates().clone();
    events.push(TraceEvent::note(
        "resolve",
        match &resolution {
            Resolution::Resolved { applied, .. } => {
                format!("candidates {c0} / {c1}; corrected with {applied}")
            }
            Resolution::Ambiguous { .. } => {
                format!("candidates {c0} / {c1}; tie, no correction applied")
            }
        },
    ));
    if resolution.is_ambiguous() {
        return Ok(PhasebitRoundTrace {
            events,
            record: Some(record),
            resolution: Some(resolution),
            ambiguous: true,
            recovered_bit: None,
            secret_fidelity: None,
            cover_fidelity: None,
            success: false,
        });
    }

    let readout = read_secret(&resolved.state, ctx)?;
    let mut secret_fidelity = None;
    let mut recovered_bit = readout.bit;
    let secret_ok = match secret {
        SecretSpec::Classical(b) => {
            // sample the X measurement too; it must agree with the
            // deterministic expectation value when one exists
            let mut sampled = readout.bob_qubit.clone();
            let m = sampled.measure(BOB, MeasurementBasis::X, &mut rng)?;
            if let Some(bit) = readout.bit {
                debug_assert_eq!(bit, m);
            }
            recovered_bit = Some(m);
            readout.bit == Some(*b & 1)
        }
        SecretSpec::Quantum(alpha, beta) => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let expected = GenericState::from_amplitudes(
                &[BOB],
                vec![(*alpha + *beta) * r, (*alpha - *beta) * r],
            )?;
            let f = readout.bob_qubit.fidelity(&expected)?;
            secret_fidelity = Some(f);
            f >= 1.0 - 1e-9
        }
    };
    events.push(TraceEvent::note(
        "read_secret",
        format!("recovered bit {recovered_bit:?}, fidelity {secret_fidelity:?}"),
    ));

    let restored = restore_cover(&readout.state, ctx)?;
    let expected_cover = match cover {
        CoverSpec::Classical(w) => ctx.codeword(*w).clone(),
        CoverSpec::Superposed(c0, c1) => {
            let mut sv =
                GenericState::superpose(&[(*c0, ctx.codeword(0)), (*c1, ctx.codeword(1))])?;
            sv.normalize();
            sv
        }
    };
    let cover_fidelity = restored.block_fidelity(&expected_cover)?;
    events.push(TraceEvent::note(
        "restore_cover",
        format!("cover fidelity {cover_fidelity:.12}"),
    ));

    let success = secret_ok && cover_fidelity >= 1.0 - 1e-9;
    Ok(PhasebitRoundTrace {
        events,
        record: Some(record),
        resolution: Some(resolution),
        ambiguous: false,
        recovered_bit,
        secret_fidelity,
        cover_fidelity: Some(cover_fidelity),
        success,
    })
}

/// Algebraic measurement record of an error: the non-flipping syndrome bits
/// and the pairwise flipping sums, exactly what the receiver can observe.
pub fn measurement_record(ctx: &PhaseBitContext, e: &PauliOperator) -> Result<(Vec<u8>, Vec<u8>)> {
    let syndrome = ctx.code.syndrome_of(e)?;
    let bits = syndrome.bits();
    let nf: Vec<u8> = ctx.non_flipping.iter().map(|&i| bits[i]).collect();
    let mut sums = Vec::new();
    for (a, &i) in ctx.flipping.iter().enumerate() {
        for &j in &ctx.flipping[a + 1..] {
            sums.push(bits[i] ^ bits[j]);
        }
    }
    Ok((nf, sums))
}

/// The identity plus all single-qubit errors, in enumeration order.
pub fn unit_errors(n: usize) -> Vec<PauliOperator> {
    let mut out = vec![PauliOperator::identity(n)];
    for pos in 1..=n {
        for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            out.push(PauliOperator::single(n, pos, letter).unwrap());
        }
    }
    out
}

/// Grouping of the unit errors by indistinguishable measurement record.
#[derive(Debug, Clone, Serialize)]
pub struct CollisionCensus {
    pub pairs: Vec<(PauliOperator, PauliOperator)>,
}

/// Observable record: (non-flipping bits, pairwise flipping sums).
type RecordKey = (Vec<u8>, Vec<u8>);

pub fn census_collisions(ctx: &PhaseBitContext) -> Result<CollisionCensus> {
    let errors = unit_errors(ctx.code.n());
    let mut groups: Vec<(RecordKey, Vec<usize>)> = Vec::new();
    for (idx, e) in errors.iter().enumerate() {
        let key = measurement_record(ctx, e)?;
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(idx),
            None => groups.push((key, vec![idx])),
        }
    }
    let mut pairs = Vec::new();
    for (_, members) in groups {
        if members.len() != 2 {
            return Err(Error::Config(format!(
                "expected records to pair up exactly, found a group of {}",
                members.len()
            )));
        }
        pairs.push((errors[members[0]].clone(), errors[members[1]].clone()));
    }
    Ok(CollisionCensus { pairs })
}
