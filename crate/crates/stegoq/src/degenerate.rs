//! Secret signalling through degenerate errors on the entanglement-assisted
//! nine-qubit code.
//!
//! The sender encodes a 2-bit symbol by applying one of the single-Z errors
//! of her alphabet to the codeword; the receiver reads it back from the two
//! X-type generator syndromes (normal mode). Under inspection (challenge
//! mode) the receiver first applies a random Z from his own qubits; because
//! matching errors multiply into the stabilizer, this erases or re-randomizes
//! the symbol, and the inspector's class statistics follow the XOR-circulant
//! mixing law r = M(q) p, whose entropy can only grow.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{StabilizerCode, Syndrome};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::real::Real;
use crate::StateVector;

/// Probability vector over the 2-bit symbols {00, 01, 10, 11}, indexed by
/// the integer value of the symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distribution4<T: Real> {
    p: [T; 4],
}

impl<T: Real> Distribution4<T> {
    pub fn new(p: [T; 4]) -> Result<Self> {
        let tol = T::from_f64(crate::PROB_TOL);
        let mut clamped = p;
        for v in &mut clamped {
            if *v < -tol {
                return Err(Error::Config(format!("negative probability {v}")));
            }
            if *v < T::zero() {
                *v = T::zero();
            }
        }
        let sum: T = clamped.iter().copied().sum();
        if (sum - T::one()).abs() > T::from_f64(1e-9) {
            return Err(Error::Config(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Distribution4 { p: clamped })
    }

    pub fn uniform() -> Self {
        let q = T::from_f64(0.25);
        Distribution4 { p: [q; 4] }
    }

    /// Point mass on one symbol.
    pub fn delta(symbol: usize) -> Self {
        let mut p = [T::zero(); 4];
        p[symbol & 3] = T::one();
        Distribution4 { p }
    }

    pub fn as_array(&self) -> [T; 4] {
        self.p
    }

    pub fn get(&self, symbol: usize) -> T {
        self.p[symbol & 3]
    }

    /// Shannon entropy in bits, 0 log 0 = 0.
    pub fn entropy(&self) -> T {
        let mut acc = T::zero();
        for &v in &self.p {
            if v > T::zero() {
                acc -= v * v.log2();
            }
        }
        acc
    }

    /// The XOR-circulant mixture: r_k = sum_j q_{k xor j} p_j.
    pub fn mix(&self, q: &Distribution4<T>) -> Distribution4<T> {
        let mut r = [T::zero(); 4];
        for (k, rk) in r.iter_mut().enumerate() {
            for (j, pj) in self.p.iter().enumerate() {
                *rk += q.p[k ^ j] * *pj;
            }
        }
        Distribution4 { p: r }
    }

    /// Total variation distance.
    pub fn tv_distance(&self, other: &Distribution4<T>) -> T {
        let two = T::from_f64(2.0);
        self.p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (*a - *b).abs())
            .sum::<T>()
            / two
    }

    /// Sample a symbol index.
    pub fn sample(&self, rng: &mut impl Rng) -> usize {
        let draw = T::from_f64(rng.gen::<f64>());
        let mut acc = T::zero();
        for (idx, &v) in self.p.iter().enumerate() {
            acc += v;
            if draw < acc {
                return idx;
            }
        }
        3
    }

    /// Walsh-Hadamard transform: hat(s) = sum_t (-1)^{s.t} p_t.
    fn walsh(&self) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for (s, o) in out.iter_mut().enumerate() {
            for (t, &v) in self.p.iter().enumerate() {
                let sign = if (s & t).count_ones() % 2 == 1 {
                    -T::one()
                } else {
                    T::one()
                };
                *o += sign * v;
            }
        }
        out
    }
}

/// Solve r = M(q) p for the receiver's distribution q given the sender's p
/// and the class statistics the inspector should see. The XOR convolution
/// diagonalizes under the Walsh transform, so each spectral component of q
/// is the ratio of the corresponding components; a vanishing denominator
/// with a non-vanishing numerator (or any negative entry) means no valid q
/// exists.
pub fn solve_innocence<T: Real>(
    p: &Distribution4<T>,
    target_r: &Distribution4<T>,
) -> Option<Distribution4<T>> {
    let ph = p.walsh();
    let rh = target_r.walsh();
    let tol = T::from_f64(1e-9);
    let mut qh = [T::zero(); 4];
    for s in 0..4 {
        if ph[s].abs() <= tol {
            if rh[s].abs() > tol {
                return None;
            }
            qh[s] = T::zero();
        } else {
            qh[s] = rh[s] / ph[s];
        }
    }
    // the transform is self-inverse up to 1/4
    let quarter = T::from_f64(0.25);
    let mut q = [T::zero(); 4];
    for (t, qt) in q.iter_mut().enumerate() {
        for (s, &v) in qh.iter().enumerate() {
            let sign = if (s & t).count_ones() % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            *qt += sign * v;
        }
        *qt *= quarter;
    }
    let neg_tol = T::from_f64(crate::PROB_TOL);
    for v in &mut q {
        if *v < -neg_tol {
            return None;
        }
        if *v < T::zero() {
            *v = T::zero();
        }
    }
    let dist = Distribution4::new(q).ok()?;
    // confirm the clamped solution still reproduces the target
    if p.mix(&dist).tv_distance(target_r) > T::from_f64(1e-7) {
        return None;
    }
    Some(dist)
}

/// Symbol encoding table: sender choices per symbol plus the receiver's
/// degenerate counterpart on his own qubits.
#[derive(Debug, Clone)]
pub struct ErrorAlphabet {
    alice: [Vec<PauliOperator>; 4],
    bob: [PauliOperator; 4],
}

impl ErrorAlphabet {
    pub fn new(
        code: &StabilizerCode,
        alice: [Vec<PauliOperator>; 4],
        bob: [PauliOperator; 4],
    ) -> Result<Self> {
        let sender_mask = code.ownership().complement();
        if alice[0].len() != 1 || !alice[0][0].is_identity_pattern() {
            return Err(Error::Config("symbol 00 must map to exactly {I}".into()));
        }
        if !bob[0].is_identity_pattern() {
            return Err(Error::Config("receiver symbol 00 must map to I".into()));
        }
        for (sym, choices) in alice.iter().enumerate() {
            if choices.is_empty() {
                return Err(Error::Config(format!(
                    "symbol {sym:02b} has no sender choice"
                )));
            }
            for c in choices {
                if !sender_mask.covers(c) {
                    return Err(Error::Config(format!(
                        "sender error {c} touches receiver-held qubits"
                    )));
                }
            }
        }
        for b in &bob {
            if !code.ownership().covers(b) {
                return Err(Error::Config(format!(
                    "receiver error {b} leaves the ownership mask"
                )));
            }
        }
        Ok(ErrorAlphabet { alice, bob })
    }

    /// The shipped table for the nine-qubit code: 00 -> I, 01 -> {Z1, Z2},
    /// 10 -> {Z4, Z5}, 11 -> {Z7, Z8}; receiver counterparts I, Z3, Z6, Z9.
    pub fn shor_table(code: &StabilizerCode) -> Result<Self> {
        let n = code.n();
        let pp = |s: &str| PauliOperator::parse_product(s, n);
        Self::new(
            code,
            [
                vec![PauliOperator::identity(n)],
                vec![pp("Z1")?, pp("Z2")?],
                vec![pp("Z4")?, pp("Z5")?],
                vec![pp("Z7")?, pp("Z8")?],
            ],
            [PauliOperator::identity(n), pp("Z3")?, pp("Z6")?, pp("Z9")?],
        )
    }

    pub fn alice_choices(&self, symbol: usize) -> &[PauliOperator] {
        &self.alice[symbol & 3]
    }

    pub fn bob_counterpart(&self, symbol: usize) -> &PauliOperator {
        &self.bob[symbol & 3]
    }

    /// Flattened sender alphabet (each operator once).
    pub fn alice_flat(&self) -> Vec<PauliOperator> {
        let mut out = Vec::new();
        for choices in &self.alice {
            for c in choices {
                if !out.iter().any(|o: &PauliOperator| o.same_pattern(c)) {
                    out.push(c.clone());
                }
            }
        }
        out
    }

    pub fn bob_all(&self) -> &[PauliOperator; 4] {
        &self.bob
    }
}

/// What the inspector reports after seizing the register.
#[derive(Debug, Clone, Serialize)]
pub struct EveReport {
    /// Symbol index of the inferred minimal-weight error class.
    pub class_symbol: u8,
    /// Canonical minimal-weight representative of that class.
    pub canonical_error: PauliOperator,
    /// Logical word read after undoing the representative.
    pub word: u8,
    pub syndrome: Syndrome,
}

/// Per-trial record of the full encode / randomize / inspect pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub alice_symbol: u8,
    pub alice_error: PauliOperator,
    pub bob_symbol: u8,
    pub bob_error: PauliOperator,
    pub eve_class: u8,
    pub eve_word: u8,
}

/// Aggregate of an empirical innocence run.
#[derive(Debug, Clone, Serialize)]
pub struct InnocenceReport {
    pub trials: u64,
    pub empirical: [f64; 4],
    pub analytic: [f64; 4],
    pub tv_distance: f64,
    pub records: Vec<TrialRecord>,
}

/// Driver bundling the code, the alphabet and cached codewords.
pub struct DegenerateProtocol {
    code: StabilizerCode,
    alphabet: ErrorAlphabet,
    codewords: [StateVector; 2],
    labels: Vec<String>,
}

impl DegenerateProtocol {
    pub fn new(code: StabilizerCode, alphabet: ErrorAlphabet) -> Result<Self> {
        if code.k() != 1 {
            return Err(Error::Config(format!(
                "symbol signalling drives a single logical qubit, `{}` has k = {}",
                code.name(),
                code.k()
            )));
        }
        let codewords = [code.codeword(&[0])?, code.codeword(&[1])?];
        let labels = code.block_labels();
        Ok(DegenerateProtocol {
            code,
            alphabet,
            codewords,
            labels,
        })
    }

    /// The shipped instance on the nine-qubit entanglement-assisted code.
    pub fn shor() -> Result<Self> {
        let code = crate::codes::find_code("shor_ea")?;
        let alphabet = ErrorAlphabet::shor_table(&code)?;
        Self::new(code, alphabet)
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn alphabet(&self) -> &ErrorAlphabet {
        &self.alphabet
    }

    pub fn codeword(&self, w: u8) -> &StateVector {
        &self.codewords[(w & 1) as usize]
    }

    fn block(&self) -> Vec<&str> {
        self.labels.iter().map(|s| s.as_str()).collect()
    }

    /// Canonical representative the decoder associates with each symbol.
    pub fn class_representative(&self, symbol: usize) -> &PauliOperator {
        &self.alphabet.alice_choices(symbol)[0]
    }

    fn symbol_of_xtype_bits(&self, s7: u8, s8: u8) -> u8 {
        match (s7, s8) {
            (0, 0) => 0b00,
            (1, 0) => 0b01,
            (1, 1) => 0b10,
            _ => 0b11,
        }
    }

    /// Deterministic syndrome readout from generator expectations.
    fn read_syndrome(&self, s: &StateVector) -> Result<Syndrome> {
        let block = self.block();
        let mut bits = Vec::with_capacity(self.code.generators().len());
        for g in self.code.generators() {
            let v = s.expectation_pauli(g, &block)?;
            if (v.abs() - 1.0).abs() > crate::AMP_TOL {
                return Err(Error::NotEigenstate {
                    operator: g.to_letter_string(),
                    value: v,
                });
            }
            bits.push(u8::from(v < 0.0));
        }
        Ok(Syndrome::new(bits))
    }

    fn read_word(&self, s: &StateVector) -> Result<u8> {
        let v = s.expectation_pauli(&self.code.logical_z()[0], &self.block())?;
        if (v.abs() - 1.0).abs() > crate::AMP_TOL {
            return Err(Error::NotEigenstate {
                operator: self.code.logical_z()[0].to_letter_string(),
                value: v,
            });
        }
        Ok(u8::from(v < 0.0))
    }

    /// Sender side: pick one of the symbol's errors uniformly and apply it
    /// to the cover codeword.
    pub fn encode_secret(
        &self,
        symbol: usize,
        w: u8,
        rng: &mut impl Rng,
    ) -> Result<(StateVector, PauliOperator)> {
        let choices = self.alphabet.alice_choices(symbol);
        let pick = rng.gen_range(0..choices.len());
        self.encode_secret_with(symbol, w, pick)
    }

    /// Deterministic variant: apply the `choice`-th error of the symbol.
    pub fn encode_secret_with(
        &self,
        symbol: usize,
        w: u8,
        choice: usize,
    ) -> Result<(StateVector, PauliOperator)> {
        let choices = self.alphabet.alice_choices(symbol);
        let e = choices
            .get(choice)
            .ok_or_else(|| Error::Config(format!("symbol {symbol:02b} has no choice {choice}")))?;
        let mut sv = self.codewords[(w & 1) as usize].clone();
        sv.apply_pauli(e, &self.block())?;
        Ok((sv, e.clone()))
    }

    /// Receiver in normal mode: syndrome readout, symbol from the X-type
    /// generator pattern, word from the logical-Z expectation after undoing
    /// the class representative.
    pub fn decode_normal(&self, s: &StateVector) -> Result<(u8, u8)> {
        let syndrome = self.read_syndrome(s)?;
        let bits = syndrome.bits();
        let m = bits.len();
        if bits[..m - 2].iter().any(|&b| b != 0) {
            return Err(Error::Uncorrectable {
                syndrome: bits.to_vec(),
            });
        }
        let symbol = self.symbol_of_xtype_bits(bits[m - 2], bits[m - 1]);
        let mut undone = s.clone();
        undone.apply_pauli(
            &self.class_representative(symbol as usize).inverse(),
            &self.block(),
        )?;
        let word = self.read_word(&undone)?;
        Ok((symbol, word))
    }

    /// Receiver under challenge: sample a symbol from q and apply its
    /// counterpart error on the receiver-held qubits.
    pub fn challenge_randomize(
        &self,
        s: &StateVector,
        q: &Distribution4<f64>,
        rng: &mut impl Rng,
    ) -> Result<(StateVector, PauliOperator, u8)> {
        let symbol = q.sample(rng);
        let e = self.alphabet.bob_counterpart(symbol);
        let mut out = s.clone();
        out.apply_pauli(e, &self.block())?;
        Ok((out, e.clone(), symbol as u8))
    }

    /// The inspector's passive strategy: full syndrome measurement followed
    /// by minimal-weight interpretation.
    pub fn eve_infer(&self, s: &StateVector) -> Result<EveReport> {
        let syndrome = self.read_syndrome(s)?;
        let bits = syndrome.bits();
        let m = bits.len();
        if bits[..m - 2].iter().any(|&b| b != 0) {
            return Err(Error::DecodeFailure(format!(
                "state outside the modeled dephasing span (syndrome {bits:?})"
            )));
        }
        let class = self.symbol_of_xtype_bits(bits[m - 2], bits[m - 1]);
        let canonical = self.class_representative(class as usize).clone();
        let mut undone = s.clone();
        undone.apply_pauli(&canonical.inverse(), &self.block())?;
        let word = self.read_word(&undone)?;
        Ok(EveReport {
            class_symbol: class,
            canonical_error: canonical,
            word,
            syndrome,
        })
    }

    /// Full pipeline over many seeded trials; per-trial substreams keep the
    /// result independent of any execution interleaving.
    pub fn empirical_innocence_run(
        &self,
        p: &Distribution4<f64>,
        q: &Distribution4<f64>,
        trials: u64,
        seed: u64,
        cover_w: u8,
    ) -> Result<InnocenceReport> {
        if trials == 0 {
            return Err(Error::Config("need at least one trial".into()));
        }
        let mut counts = [0u64; 4];
        let mut records = Vec::with_capacity(trials as usize);
        for trial in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let alice_symbol = p.sample(&mut rng);
            let (state, alice_error) = self.encode_secret(alice_symbol, cover_w, &mut rng)?;
            let (state, bob_error, bob_symbol) = self.challenge_randomize(&state, q, &mut rng)?;
            let report = self.eve_infer(&state)?;
            counts[report.class_symbol as usize] += 1;
            records.push(TrialRecord {
                alice_symbol: alice_symbol as u8,
                alice_error,
                bob_symbol,
                bob_error,
                eve_class: report.class_symbol,
                eve_word: report.word,
            });
        }
        let empirical: [f64; 4] = std::array::from_fn(|i| counts[i] as f64 / trials as f64);
        let analytic = p.mix(q);
        let empirical_dist = Distribution4::new(empirical)?;
        Ok(InnocenceReport {
            trials,
            empirical,
            analytic: analytic.as_array(),
            tv_distance: empirical_dist.tv_distance(&analytic),
            records,
        })
    }
}
