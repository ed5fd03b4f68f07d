//! Stabilizer code catalog: concrete codes, codeword construction,
//! syndromes, and the group-membership queries the protocols rely on
//! (stabilizer membership, normalizer membership, degenerate pair
//! classification).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Span;
use crate::pauli::{PauliLetter, PauliOperator, Phase, SupportMask};
use crate::real::Real;
use crate::state::StateVector;

/// Anticommutation pattern of an error against a code's generator list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Syndrome {
    bits: Vec<u8>,
}

impl Syndrome {
    pub fn new(bits: Vec<u8>) -> Self {
        Syndrome { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

/// Stabilizer code with fixed generators, logical operators and an
/// ownership mask marking receiver-held qubits (empty outside the
/// entanglement-assisted setting).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    d: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    ownership: SupportMask,
}

impl StabilizerCode {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        n: usize,
        k: usize,
        d: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        ownership: SupportMask,
    ) -> Result<Self> {
        let code = StabilizerCode {
            name: name.to_string(),
            n,
            k,
            d,
            generators,
            logical_x,
            logical_z,
            ownership,
        };
        code.validate()?;
        Ok(code)
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidCode {
            name: self.name.clone(),
            reason,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.d == 0 {
            return Err(self.invalid("n, k, d must be positive".into()));
        }
        if self.generators.len() != self.n - self.k {
            return Err(self.invalid(format!(
                "expected {} generators, found {}",
                self.n - self.k,
                self.generators.len()
            )));
        }
        if self.ownership.n() != self.n {
            return Err(self.invalid("ownership mask length mismatch".into()));
        }
        for op in self
            .generators
            .iter()
            .chain(&self.logical_x)
            .chain(&self.logical_z)
        {
            if op.n() != self.n {
                return Err(self.invalid(format!("operator {op} has wrong length")));
            }
        }
        for g in &self.generators {
            if !matches!(g.phase(), Phase::PlusOne | Phase::MinusOne) {
                return Err(self.invalid(format!("generator {g} is not Hermitian")));
            }
            let sq = g.multiply(g)?;
            if !(sq.is_identity_pattern() && sq.phase() == Phase::PlusOne) {
                return Err(self.invalid(format!("generator {g} does not square to +I")));
            }
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if self.generators[i].commutes_bit(&self.generators[j])? == 1 {
                    return Err(self.invalid(format!(
                        "generators {} and {} anticommute",
                        self.generators[i], self.generators[j]
                    )));
                }
            }
        }
        let span = Gf2Span::new(&self.symplectic_rows());
        if span.rank() != self.generators.len() {
            return Err(self.invalid("generators are not independent".into()));
        }
        if self.logical_x.len() != self.k || self.logical_z.len() != self.k {
            return Err(self.invalid("need k logical X and k logical Z operators".into()));
        }
        for (which, ops) in [("X", &self.logical_x), ("Z", &self.logical_z)] {
            for (i, op) in ops.iter().enumerate() {
                for g in &self.generators {
                    if op.commutes_bit(g)? == 1 {
                        return Err(self.invalid(format!(
                            "logical {which}{} anticommutes with generator {g}",
                            i + 1
                        )));
                    }
                }
            }
        }
        for i in 0..self.k {
            for j in 0..self.k {
                let bit = self.logical_x[i].commutes_bit(&self.logical_z[j])?;
                let want = u8::from(i == j);
                if bit != want {
                    return Err(self.invalid(format!(
                        "logical X{} vs Z{} commutation is wrong",
                        i + 1,
                        j + 1
                    )));
                }
                if j > i
                    && (self.logical_x[i].commutes_bit(&self.logical_x[j])? == 1
                        || self.logical_z[i].commutes_bit(&self.logical_z[j])? == 1)
                {
                    return Err(self.invalid("logical operators of like type anticommute".into()));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn ownership(&self) -> &SupportMask {
        &self.ownership
    }

    /// Weight budget the code can correct: floor((d-1)/2).
    pub fn correction_radius(&self) -> usize {
        (self.d - 1) / 2
    }

    /// Default labels `c1..cn` for states living on this code's register.
    pub fn block_labels(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("c{i}")).collect()
    }

    fn symplectic_rows(&self) -> Vec<u128> {
        self.generators.iter().map(symplectic).collect()
    }

    fn check_dim(&self, op: &PauliOperator) -> Result<()> {
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: op.n(),
            });
        }
        Ok(())
    }

    /// The codeword |w_L> for a k-bit logical word: the joint +1 eigenstate
    /// of every generator and of (-1)^{w_j} logical-Z_j, built by projector
    /// chain from the seed X^w|0..0> and normalized with the canonical
    /// global phase (lexicographically-smallest significant amplitude real
    /// positive).
    pub fn codeword<T: Real>(&self, w: &[u8]) -> Result<StateVector<T>> {
        if w.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: w.len(),
            });
        }
        let labels = self.block_labels();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let mut sv: StateVector<T> = StateVector::basis(&refs, &vec![0; self.n])?;
        for (j, &bit) in w.iter().enumerate() {
            if bit & 1 == 1 {
                sv.apply_pauli(&self.logical_x[j], &refs)?;
            }
        }
        let one = num_complex::Complex::new(T::one(), T::zero());
        for (j, &bit) in w.iter().enumerate() {
            let sign = if bit & 1 == 1 { -one } else { one };
            let mut rotated = sv.clone();
            rotated.apply_pauli(&self.logical_z[j], &refs)?;
            sv = StateVector::superpose(&[(one, &sv), (sign, &rotated)])?;
        }
        for g in &self.generators {
            let mut rotated = sv.clone();
            rotated.apply_pauli(g, &refs)?;
            sv = StateVector::superpose(&[(one, &sv), (one, &rotated)])?;
        }
        if sv.norm() < T::from_f64(1e-9) {
            return Err(self.invalid(format!("projector chain annihilated the seed for w={w:?}")));
        }
        sv.canonicalize_phase(T::from_f64(crate::AMP_TOL));
        Ok(sv)
    }

    /// Syndrome bit i = 1 iff generator i anticommutes with the error.
    pub fn syndrome_of(&self, e: &PauliOperator) -> Result<Syndrome> {
        self.check_dim(e)?;
        let bits = self
            .generators
            .iter()
            .map(|g| g.commutes_bit(e))
            .collect::<Result<Vec<u8>>>()?;
        Ok(Syndrome::new(bits))
    }

    /// Express `p`'s letter pattern as a product of generators, returning the
    /// generator indices and the phase factor with p = phase * product.
    pub fn stabilizer_decomposition(&self, p: &PauliOperator) -> Option<(Vec<usize>, Phase)> {
        if p.n() != self.n {
            return None;
        }
        let span = Gf2Span::new(&self.symplectic_rows());
        let indices = span.express(symplectic(p))?;
        let mut product = PauliOperator::identity(self.n);
        for &i in &indices {
            product = product
                .multiply(&self.generators[i])
                .expect("same register");
        }
        let q = p.multiply(&product.inverse()).expect("same register");
        debug_assert!(q.is_identity_pattern());
        Some((indices, q.phase()))
    }

    /// True iff p's pattern lies in the stabilizer group (phase ignored;
    /// use `stabilizer_decomposition` to inspect it).
    pub fn in_stabilizer_group(&self, p: &PauliOperator) -> Result<bool> {
        self.check_dim(p)?;
        Ok(self.stabilizer_decomposition(p).is_some())
    }

    /// True iff p commutes with every generator.
    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool> {
        self.check_dim(p)?;
        for g in &self.generators {
            if g.commutes_bit(p)? == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Classify a sender/receiver error pair for the entanglement-assisted
    /// erasure condition: their product must fall in the stabilizer group or
    /// in (E_A - I) * N(S).
    pub fn check_pair_condition(
        &self,
        e_a_set: &[PauliOperator],
        e_a: &PauliOperator,
        e_b: &PauliOperator,
    ) -> Result<PairClass> {
        self.check_dim(e_a)?;
        self.check_dim(e_b)?;
        if !e_a_set.iter().any(|c| c.same_pattern(e_a)) {
            return Err(Error::Config(format!(
                "error {e_a} is not in the sender alphabet"
            )));
        }
        if !self.ownership.covers(e_b) {
            return Err(Error::Config(format!(
                "receiver error {e_b} acts outside the ownership mask {}",
                self.ownership
            )));
        }
        let combined = e_b.multiply(e_a)?;
        if self.in_stabilizer_group(&combined)? {
            return Ok(PairClass::InStabilizer);
        }
        for candidate in e_a_set {
            if candidate.is_identity_pattern() {
                continue;
            }
            let normalizer_part = candidate.inverse().multiply(&combined)?;
            if self.in_normalizer(&normalizer_part)? {
                return Ok(PairClass::InEaNormalizer {
                    witness_error: candidate.clone(),
                    witness_normalizer: normalizer_part,
                });
            }
        }
        Ok(PairClass::Violation)
    }

    /// Minimum-weight coset leader table for all errors up to `max_weight`.
    pub fn coset_table(&self, max_weight: usize) -> CosetTable {
        let mut map: HashMap<Vec<u8>, PauliOperator> = HashMap::new();
        map.insert(
            vec![0; self.generators.len()],
            PauliOperator::identity(self.n),
        );
        let mut current: Vec<PauliOperator> = vec![PauliOperator::identity(self.n)];
        for _ in 0..max_weight {
            let mut next = Vec::new();
            for base in &current {
                let start = highest_position(base);
                for pos in start + 1..=self.n {
                    for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
                        let e = base
                            .multiply(&PauliOperator::single(self.n, pos, letter).unwrap())
                            .unwrap();
                        let syndrome = self.syndrome_of(&e).unwrap();
                        map.entry(syndrome.bits().to_vec())
                            .or_insert_with(|| e.clone().with_phase(Phase::PlusOne));
                        next.push(e);
                    }
                }
            }
            current = next;
        }
        CosetTable { map }
    }
}

/// Outcome of the pair-condition classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PairClass {
    InStabilizer,
    InEaNormalizer {
        witness_error: PauliOperator,
        witness_normalizer: PauliOperator,
    },
    Violation,
}

/// Syndrome -> minimum-weight error lookup.
#[derive(Debug, Clone)]
pub struct CosetTable {
    map: HashMap<Vec<u8>, PauliOperator>,
}

impl CosetTable {
    pub fn leader(&self, syndrome: &Syndrome) -> Option<&PauliOperator> {
        self.map.get(syndrome.bits())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn highest_position(p: &PauliOperator) -> usize {
    let used = p.x_bits() | p.z_bits();
    if used == 0 {
        0
    } else {
        64 - used.leading_zeros() as usize
    }
}

fn symplectic(p: &PauliOperator) -> u128 {
    (p.x_bits() as u128) | ((p.z_bits() as u128) << 64)
}

/// Serializable code description (the `codes list` wire format).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpec {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub generators: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    pub ownership: Vec<usize>,
}

impl CodeSpec {
    pub fn from_code(code: &StabilizerCode) -> Self {
        CodeSpec {
            name: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            d: code.d(),
            generators: code
                .generators()
                .iter()
                .map(|g| g.to_letter_string())
                .collect(),
            logical_x: code
                .logical_x()
                .iter()
                .map(|g| g.to_letter_string())
                .collect(),
            logical_z: code
                .logical_z()
                .iter()
                .map(|g| g.to_letter_string())
                .collect(),
            ownership: code.ownership().positions().collect(),
        }
    }

    pub fn build(&self) -> Result<StabilizerCode> {
        let parse_all = |ss: &[String]| -> Result<Vec<PauliOperator>> {
            ss.iter().map(|s| PauliOperator::parse(s, self.n)).collect()
        };
        StabilizerCode::new(
            &self.name,
            self.n,
            self.k,
            self.d,
            parse_all(&self.generators)?,
            parse_all(&self.logical_x)?,
            parse_all(&self.logical_z)?,
            SupportMask::from_positions(self.n, &self.ownership)?,
        )
    }
}

fn letters(s: &str) -> PauliOperator {
    PauliOperator::parse_letters(s).expect("static catalog string")
}

fn product(s: &str, n: usize) -> PauliOperator {
    PauliOperator::parse_product(s, n).expect("static catalog string")
}

/// The shipped codes:
///
/// * `five_qubit`: the `[[5,1,3]]` code with generators XZZXI, XIXZZ, IXZZX,
///   ZXIXZ.
/// * `shor_ea`: the nine-qubit GHZ-block code used entanglement-assisted,
///   receiver holding qubits {3,6,9}.
/// * `four_two_two`: the `[[4,2,2]]` detection code (XXXX, ZZZZ).
/// * `three_qubit_demo`: the tiny degeneracy demonstrator spanned by
///   (|000>+|111>)/sqrt(2) and (|010>+|101>)/sqrt(2).
pub fn catalog() -> Vec<StabilizerCode> {
    let five = StabilizerCode::new(
        "five_qubit",
        5,
        1,
        3,
        vec![
            letters("XZZXI"),
            letters("XIXZZ"),
            letters("IXZZX"),
            letters("ZXIXZ"),
        ],
        vec![letters("XXXXX")],
        vec![letters("ZZZZZ")],
        SupportMask::empty(5),
    )
    .expect("five_qubit catalog entry");

    let shor = StabilizerCode::new(
        "shor_ea",
        9,
        1,
        3,
        vec![
            product("Z1Z2", 9),
            product("Z2Z3", 9),
            product("Z4Z5", 9),
            product("Z5Z6", 9),
            product("Z7Z8", 9),
            product("Z8Z9", 9),
            letters("XXXXXXIII"),
            letters("IIIXXXXXX"),
        ],
        vec![product("Z1Z4Z7", 9)],
        vec![letters("XXXXXXXXX")],
        SupportMask::from_positions(9, &[3, 6, 9]).unwrap(),
    )
    .expect("shor_ea catalog entry");

    let four = StabilizerCode::new(
        "four_two_two",
        4,
        2,
        2,
        vec![letters("XXXX"), letters("ZZZZ")],
        vec![letters("XXII"), letters("XIXI")],
        vec![letters("ZIZI"), letters("ZZII")],
        SupportMask::empty(4),
    )
    .expect("four_two_two catalog entry");

    let three = StabilizerCode::new(
        "three_qubit_demo",
        3,
        1,
        1,
        vec![letters("XXX"), letters("ZIZ")],
        vec![letters("IXI")],
        vec![letters("ZZI")],
        SupportMask::empty(3),
    )
    .expect("three_qubit_demo catalog entry");

    vec![five, shor, four, three]
}

/// Catalog lookup by name.
pub fn find_code(name: &str) -> Result<StabilizerCode> {
    catalog()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::Config(format!("unknown code `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;

    type SV = StateVector<f64>;

    fn five() -> StabilizerCode {
        find_code("five_qubit").unwrap()
    }

    fn shor() -> StabilizerCode {
        find_code("shor_ea").unwrap()
    }

    #[test]
    fn catalog_loads_and_validates() {
        let cat = catalog();
        assert_eq!(cat.len(), 4);
        assert_eq!(five().generators()[1].to_letter_string(), "XIXZZ");
        assert_eq!(shor().ownership().to_string(), "{3,6,9}");
    }

    #[test]
    fn codewords_are_fixed_by_all_generators() {
        for code in catalog() {
            for w in 0..1u32 << code.k() {
                let bits: Vec<u8> = (0..code.k()).map(|j| ((w >> j) & 1) as u8).collect();
                let sv: SV = code.codeword(&bits).unwrap();
                let labels = code.block_labels();
                let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
                for g in code.generators() {
                    let v = sv.expectation_pauli(g, &refs).unwrap();
                    assert!((v - 1.0).abs() < 1e-10, "{} w={w} gen {g}", code.name());
                }
                assert!((sv.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn logical_x_maps_between_codewords_up_to_the_canonical_phase() {
        // X applied to |0_L> is a logical flip; fidelity with |1_L> is 1.
        // On shor_ea the canonical-phase codewords make it an exact vector
        // equality; on five_qubit the flipped codeword's lexicographically
        // smallest amplitude is negative, so canonicalization costs a
        // global -1.
        for (name, sign) in [("shor_ea", 1.0), ("five_qubit", -1.0)] {
            let code = find_code(name).unwrap();
            let labels = code.block_labels();
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            let mut flipped: SV = code.codeword(&[0]).unwrap();
            flipped.apply_pauli(&code.logical_x()[0], &refs).unwrap();
            let one: SV = code.codeword(&[1]).unwrap();
            assert!(flipped.fidelity(&one).unwrap() > 1.0 - 1e-12, "{name}");
            let signed =
                StateVector::superpose(&[(num_complex::Complex64::new(sign, 0.0), &one)]).unwrap();
            assert!(flipped.approx_eq(&signed, 1e-12), "{name} sign {sign}");
        }
    }

    #[test]
    fn codewords_carry_the_logical_word() {
        for code in catalog() {
            for w in 0..1u32 << code.k() {
                let bits: Vec<u8> = (0..code.k()).map(|j| ((w >> j) & 1) as u8).collect();
                let sv: SV = code.codeword(&bits).unwrap();
                let labels = code.block_labels();
                let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
                for (j, lz) in code.logical_z().iter().enumerate() {
                    let v = sv.expectation_pauli(lz, &refs).unwrap();
                    let want = if bits[j] == 1 { -1.0 } else { 1.0 };
                    assert!((v - want).abs() < 1e-10, "{} w={w} Z{}", code.name(), j + 1);
                }
            }
        }
    }

    #[test]
    fn shor_codeword_is_the_ghz_block_product() {
        let sv: SV = shor().codeword(&[0]).unwrap();
        let amp = 1.0 / (8.0f64).sqrt();
        for (word, re, im) in sv.dump() {
            let blocks = [&word[0..3], &word[3..6], &word[6..9]];
            assert!(blocks.iter().all(|b| *b == "000" || *b == "111"), "{word}");
            assert!((re - amp).abs() < 1e-12 && im.abs() < 1e-15);
        }
        assert_eq!(sv.dump().len(), 8);

        let sv1: SV = shor().codeword(&[1]).unwrap();
        for (word, re, _) in sv1.dump() {
            let ones = [&word[0..3], &word[3..6], &word[6..9]]
                .iter()
                .filter(|b| **b == "111")
                .count();
            let want = if ones % 2 == 1 { -amp } else { amp };
            assert!((re - want).abs() < 1e-12, "{word}");
        }
    }

    #[test]
    fn four_two_two_codeword_examples() {
        let code = find_code("four_two_two").unwrap();
        let sv: SV = code.codeword(&[0, 0]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.amplitude(&[0, 0, 0, 0]).unwrap().re - r).abs() < 1e-12);
        assert!((sv.amplitude(&[1, 1, 1, 1]).unwrap().re - r).abs() < 1e-12);
        assert_eq!(sv.dump().len(), 2);
    }

    #[test]
    fn three_qubit_demo_codewords() {
        let code = find_code("three_qubit_demo").unwrap();
        let sv: SV = code.codeword(&[0]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.amplitude(&[0, 0, 0]).unwrap().re - r).abs() < 1e-12);
        assert!((sv.amplitude(&[1, 1, 1]).unwrap().re - r).abs() < 1e-12);
        let sv: SV = code.codeword(&[1]).unwrap();
        assert!((sv.amplitude(&[0, 1, 0]).unwrap().re - r).abs() < 1e-12);
        assert!((sv.amplitude(&[1, 0, 1]).unwrap().re - r).abs() < 1e-12);
    }

    #[test]
    fn codeword_rejects_wrong_word_length() {
        assert!(five().codeword::<f64>(&[0, 1]).is_err());
    }

    #[test]
    fn syndrome_examples() {
        let code = five();
        let id = PauliOperator::identity(5);
        assert_eq!(code.syndrome_of(&id).unwrap().bits(), &[0, 0, 0, 0]);
        let x1 = product("X1", 5);
        assert_eq!(code.syndrome_of(&x1).unwrap().bits(), &[0, 0, 0, 1]);
        let z4 = product("Z4", 9);
        assert_eq!(
            shor().syndrome_of(&z4).unwrap().bits(),
            &[0, 0, 0, 0, 0, 0, 1, 1]
        );
    }

    #[test]
    fn syndromes_match_statevector_expectations() {
        // dual route: the symplectic syndrome must equal the eigenvalue
        // pattern read off the erroneous codeword
        let code = five();
        let sv: SV = code.codeword(&[0]).unwrap();
        let labels = code.block_labels();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        for pos in 1..=5 {
            for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
                let e = PauliOperator::single(5, pos, letter).unwrap();
                let mut erred = sv.clone();
                erred.apply_pauli(&e, &refs).unwrap();
                let syndrome = code.syndrome_of(&e).unwrap();
                for (g, &bit) in code.generators().iter().zip(syndrome.bits()) {
                    let v = erred.expectation_pauli(g, &refs).unwrap();
                    let want = if bit == 1 { -1.0 } else { 1.0 };
                    assert!((v - want).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn stabilizer_membership_examples() {
        let shor = shor();
        assert!(shor.in_stabilizer_group(&product("Z4Z6", 9)).unwrap());
        assert!(!shor.in_stabilizer_group(&product("Z4Z9", 9)).unwrap());
        let five = five();
        let s1s3 = five.generators()[0]
            .multiply(&five.generators()[2])
            .unwrap();
        assert!(five.in_stabilizer_group(&s1s3).unwrap());

        let (idx, phase) = shor.stabilizer_decomposition(&product("Z4Z6", 9)).unwrap();
        assert_eq!(idx, vec![2, 3]);
        assert_eq!(phase, Phase::PlusOne);
    }

    #[test]
    fn normalizer_membership_examples() {
        let shor = shor();
        assert!(shor.in_normalizer(&product("Z1Z4Z7", 9)).unwrap());
        assert!(!shor.in_normalizer(&product("Z1", 9)).unwrap());
        assert!(shor.in_normalizer(&PauliOperator::identity(9)).unwrap());
    }

    #[test]
    fn pair_condition_examples() {
        let shor = shor();
        let alphabet: Vec<PauliOperator> = ["I", "Z1", "Z2", "Z4", "Z5", "Z7", "Z8"]
            .iter()
            .map(|s| product(s, 9))
            .collect();
        let z4 = product("Z4", 9);
        let z6 = product("Z6", 9);
        let z9 = product("Z9", 9);
        assert_eq!(
            shor.check_pair_condition(&alphabet, &z4, &z6).unwrap(),
            PairClass::InStabilizer
        );
        match shor.check_pair_condition(&alphabet, &z4, &z9).unwrap() {
            PairClass::InEaNormalizer {
                witness_error,
                witness_normalizer,
            } => {
                assert_eq!(witness_error.to_product_string_ascii(), "Z1");
                assert_eq!(witness_normalizer.to_product_string_ascii(), "Z1Z4Z9");
            }
            other => panic!("expected EA-normalizer class, got {other:?}"),
        }
        let id = PauliOperator::identity(9);
        assert_eq!(
            shor.check_pair_condition(&alphabet, &id, &id).unwrap(),
            PairClass::InStabilizer
        );
        // receiver errors outside the ownership mask are rejected
        assert!(shor
            .check_pair_condition(&alphabet, &z4, &product("Z1", 9))
            .is_err());
    }

    #[test]
    fn five_qubit_single_errors_have_distinct_syndromes() {
        let code = five();
        let mut errors = vec![PauliOperator::identity(5)];
        for pos in 1..=5 {
            for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
                errors.push(PauliOperator::single(5, pos, letter).unwrap());
            }
        }
        for i in 0..errors.len() {
            for j in i + 1..errors.len() {
                let si = code.syndrome_of(&errors[i]).unwrap();
                let sj = code.syndrome_of(&errors[j]).unwrap();
                let degenerate = code
                    .in_stabilizer_group(&errors[i].multiply(&errors[j]).unwrap())
                    .unwrap();
                assert!(si != sj || degenerate, "{} vs {}", errors[i], errors[j]);
                // the perfect code has no degenerate single-qubit pairs
                assert_ne!(si, sj);
            }
        }
    }

    #[test]
    fn shor_single_z_errors_fall_into_three_degenerate_blocks() {
        let code = shor();
        let blocks = [[1usize, 2, 3], [4, 5, 6], [7, 8, 9]];
        for (bi, block) in blocks.iter().enumerate() {
            for (bj, other) in blocks.iter().enumerate() {
                for &i in block {
                    for &j in other {
                        if i == j {
                            continue;
                        }
                        let prod = product(&format!("Z{i}Z{j}"), 9);
                        let degenerate = code.in_stabilizer_group(&prod).unwrap();
                        let same_syndrome =
                            code.syndrome_of(&product(&format!("Z{i}"), 9)).unwrap()
                                == code.syndrome_of(&product(&format!("Z{j}"), 9)).unwrap();
                        assert_eq!(degenerate, bi == bj, "Z{i} Z{j}");
                        assert_eq!(same_syndrome, bi == bj);
                    }
                }
            }
        }
    }

    #[test]
    fn coset_table_for_the_perfect_code_is_complete() {
        let code = five();
        let table = code.coset_table(1);
        assert_eq!(table.len(), 16);
        for pos in 1..=5 {
            for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
                let e = PauliOperator::single(5, pos, letter).unwrap();
                let leader = table.leader(&code.syndrome_of(&e).unwrap()).unwrap();
                assert!(leader.same_pattern(&e));
            }
        }
    }

    #[test]
    fn code_spec_round_trips() {
        for code in catalog() {
            let spec = CodeSpec::from_code(&code);
            let rebuilt = spec.build().unwrap();
            assert_eq!(rebuilt, code);
        }
    }

    #[test]
    fn code_spec_rejects_malformed_input() {
        let mut spec = CodeSpec::from_code(&five());
        spec.generators[0] = "XQZXI".into();
        assert!(spec.build().is_err());
        let mut spec = CodeSpec::from_code(&five());
        spec.ownership = vec![9];
        assert!(spec.build().is_err());
        let mut spec = CodeSpec::from_code(&five());
        spec.logical_z.clear();
        assert!(spec.build().is_err());
    }

    #[test]
    fn invalid_codes_are_rejected() {
        // anticommuting "generators"
        let err = StabilizerCode::new(
            "bad",
            2,
            1,
            1,
            vec![letters("XI"), letters("ZI")],
            vec![letters("IX")],
            vec![letters("IZ")],
            SupportMask::empty(2),
        );
        assert!(err.is_err());
        // dependent generators
        let err = StabilizerCode::new(
            "bad",
            3,
            1,
            1,
            vec![letters("ZZI"), letters("ZZI")],
            vec![letters("XXX")],
            vec![letters("ZII")],
            SupportMask::empty(3),
        );
        assert!(err.is_err());
    }
}
