//! Phase-exact n-qubit Pauli algebra in bit-packed symplectic form.
//!
//! An operator is stored as `i^phase · X^x · Z^z` with `x`, `z` packed into
//! `u64` masks (bit j = qubit j+1) and the phase kept as an exact quarter
//! turn. Products, commutation and weights are therefore popcounts and XORs;
//! no floating point is involved anywhere in this module.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest qubit count the packed representation supports.
pub const MAX_QUBITS: usize = 64;

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

/// Exact quarter-turn phase: i^k for k in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Phase {
    #[default]
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(k: u8) -> Self {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + other.exponent())
    }

    pub fn inverse(self) -> Phase {
        Phase::from_exponent(4 - self.exponent())
    }

    /// Rendering used as a prefix of Pauli strings: "", "i", "-", "-i".
    pub fn prefix(self) -> &'static str {
        match self {
            Phase::PlusOne => "",
            Phase::PlusI => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    fn bits(self) -> (u64, u64) {
        match self {
            PauliLetter::I => (0, 0),
            PauliLetter::X => (1, 0),
            PauliLetter::Y => (1, 1),
            PauliLetter::Z => (0, 1),
        }
    }

    fn from_bits(x: u64, z: u64) -> Self {
        match (x, z) {
            (0, 0) => PauliLetter::I,
            (1, 0) => PauliLetter::X,
            (1, 1) => PauliLetter::Y,
            _ => PauliLetter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// n-qubit Pauli string with exact phase.
///
/// Internally the operator is `i^phase · Π_j X_j^{x_j} Z_j^{z_j}`; the `Y`
/// letter at a site corresponds to `x = z = 1` together with one factor of
/// `i` absorbed into the phase (`Y = iXZ`). Qubits are 1-based in every
/// rendered form and 0-based in the packed masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase_exp: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        assert!(n > 0 && n <= MAX_QUBITS, "qubit count out of range");
        PauliOperator {
            n,
            x: 0,
            z: 0,
            phase_exp: 0,
        }
    }

    /// Single-qubit letter at 1-based `position` on an `n`-qubit register.
    pub fn single(n: usize, position: usize, letter: PauliLetter) -> Result<Self> {
        if position == 0 || position > n {
            return Err(Error::Parse(format!(
                "qubit position {position} out of range 1..={n}"
            )));
        }
        let (xb, zb) = letter.bits();
        let bit = 1u64 << (position - 1);
        Ok(PauliOperator {
            n,
            x: xb * bit,
            z: zb * bit,
            phase_exp: if letter == PauliLetter::Y { 1 } else { 0 },
        })
    }

    /// Build from letters, leftmost letter = qubit 1.
    pub fn from_letters(letters: &[PauliLetter]) -> Self {
        assert!(
            !letters.is_empty() && letters.len() <= MAX_QUBITS,
            "qubit count out of range"
        );
        let mut x = 0u64;
        let mut z = 0u64;
        let mut phase = 0u8;
        for (j, letter) in letters.iter().enumerate() {
            let (xb, zb) = letter.bits();
            x |= xb << j;
            z |= zb << j;
            if *letter == PauliLetter::Y {
                phase = (phase + 1) % 4;
            }
        }
        PauliOperator {
            n: letters.len(),
            x,
            z,
            phase_exp: phase,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Packed X mask (bit j = qubit j+1 has an X or Y letter).
    pub fn x_bits(&self) -> u64 {
        self.x
    }

    /// Packed Z mask (bit j = qubit j+1 has a Z or Y letter).
    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Phase of the operator relative to the bare letter string.
    pub fn phase(&self) -> Phase {
        // stored exponent counts i's of the X^x Z^z normal form; each Y
        // letter owns one of them
        let y_count = ((self.x & self.z).count_ones() % 4) as u8;
        Phase::from_exponent((self.phase_exp + 4 - y_count) % 4)
    }

    /// Exponent of the internal `i^k X^x Z^z` normal form.
    pub fn phase_exponent(&self) -> u8 {
        self.phase_exp
    }

    pub fn letter(&self, position: usize) -> PauliLetter {
        assert!(position >= 1 && position <= self.n);
        let bit = position - 1;
        PauliLetter::from_bits((self.x >> bit) & 1, (self.z >> bit) & 1)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        let y_count = (self.x & self.z).count_ones() as u8;
        self.phase_exp = (phase.exponent() + y_count) % 4;
        self
    }

    pub fn is_identity_pattern(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Exact product `self · other` with quarter-phase tracking.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2): commuting Z^z1 past X^x2 costs
        // (-1)^{|z1 & x2|}
        let cross = (self.z & other.x).count_ones() as u8;
        Ok(PauliOperator {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase_exp: (self.phase_exp + other.phase_exp + 2 * (cross % 2)) % 4,
        })
    }

    /// Inverse (adjoint) operator; `p.multiply(&p.inverse()) == identity`.
    pub fn inverse(&self) -> PauliOperator {
        let cross = (self.z & self.x).count_ones() as u8;
        PauliOperator {
            n: self.n,
            x: self.x,
            z: self.z,
            phase_exp: (4 - self.phase_exp % 4 + 2 * (cross % 2)) % 4,
        }
    }

    /// 0 if the operators commute, 1 if they anticommute
    /// (symplectic inner product of the (x, z) vectors mod 2).
    pub fn commutes_bit(&self, other: &PauliOperator) -> Result<u8> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let s = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        Ok((s % 2) as u8)
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(self.commutes_bit(other)? == 0)
    }

    /// Same letter pattern, phase ignored.
    pub fn same_pattern(&self, other: &PauliOperator) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Letters of `self` at the 1-based coordinates where `mask` is set,
    /// identity letters included.
    pub fn support_letters(&self, mask: &SupportMask) -> Result<Vec<(usize, PauliLetter)>> {
        if mask.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: mask.n(),
            });
        }
        Ok(mask
            .positions()
            .map(|pos| (pos, self.letter(pos)))
            .collect())
    }

    pub fn letters(&self) -> Vec<PauliLetter> {
        (1..=self.n).map(|p| self.letter(p)).collect()
    }

    /// Letter-string form, e.g. `-iYZI`.
    pub fn to_letter_string(&self) -> String {
        let mut s = String::from(self.phase().prefix());
        for p in 1..=self.n {
            s.push(self.letter(p).as_char());
        }
        s
    }

    /// Subscripted product form, e.g. `Z₄Z₅`; the identity pattern renders
    /// as `I`.
    pub fn to_product_string(&self) -> String {
        self.product_string(true)
    }

    /// ASCII product form, e.g. `Z4Z5`.
    pub fn to_product_string_ascii(&self) -> String {
        self.product_string(false)
    }

    fn product_string(&self, subscript: bool) -> String {
        let mut s = String::from(self.phase().prefix());
        if self.is_identity_pattern() {
            s.push('I');
            return s;
        }
        for p in 1..=self.n {
            let letter = self.letter(p);
            if letter == PauliLetter::I {
                continue;
            }
            s.push(letter.as_char());
            if subscript {
                for d in p.to_string().chars() {
                    s.push(SUBSCRIPTS[d.to_digit(10).unwrap() as usize]);
                }
            } else {
                s.push_str(&p.to_string());
            }
        }
        s
    }

    /// Parse a letter string such as `XZZXI` or `-iYZ`.
    pub fn parse_letters(s: &str) -> Result<PauliOperator> {
        let (phase, rest) = split_phase_prefix(s.trim());
        let mut letters = Vec::new();
        for c in rest.chars() {
            let letter = PauliLetter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("invalid Pauli letter `{c}` in `{s}`")))?;
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string `{s}`")));
        }
        if letters.len() > MAX_QUBITS {
            return Err(Error::Parse(format!(
                "Pauli string `{s}` longer than {MAX_QUBITS} qubits"
            )));
        }
        Ok(Self::from_letters(&letters).with_phase(phase))
    }

    /// Parse a positioned product such as `Z₄Z₅`, `Z4Z9` or `I` against a
    /// register of `n` qubits. Repeated positions multiply out exactly.
    pub fn parse_product(s: &str, n: usize) -> Result<PauliOperator> {
        let (phase, rest) = split_phase_prefix(s.trim());
        if rest == "I" {
            return Ok(PauliOperator::identity(n).with_phase(phase));
        }
        let mut op = PauliOperator::identity(n);
        let mut chars = rest.chars().peekable();
        let mut any = false;
        while let Some(c) = chars.next() {
            let letter = PauliLetter::from_char(c)
                .filter(|l| *l != PauliLetter::I)
                .ok_or_else(|| {
                    Error::Parse(format!("expected Pauli letter X/Y/Z in `{s}`, found `{c}`"))
                })?;
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if let Some(v) = subscript_value(d) {
                    digits.push_str(&v.to_string());
                    chars.next();
                } else if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            if digits.is_empty() {
                return Err(Error::Parse(format!(
                    "missing qubit index after `{c}` in `{s}`"
                )));
            }
            let pos: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad qubit index `{digits}` in `{s}`")))?;
            op = op.multiply(&PauliOperator::single(n, pos, letter)?)?;
            any = true;
        }
        if !any {
            return Err(Error::Parse(format!("empty Pauli product `{s}`")));
        }
        let current = op.phase();
        Ok(op.with_phase(current.times(phase)))
    }

    /// Parse either grammar: a bare letter string when the body is all
    /// letters of the right length, a positioned product otherwise.
    pub fn parse(s: &str, n: usize) -> Result<PauliOperator> {
        let (_, rest) = split_phase_prefix(s.trim());
        let all_letters = !rest.is_empty() && rest.chars().all(|c| "IXYZ".contains(c));
        if all_letters && rest.len() == n {
            Self::parse_letters(s)
        } else if all_letters && rest == "I" {
            Ok(PauliOperator::identity(n))
        } else {
            Self::parse_product(s, n)
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_product_string())
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_letter_string())
    }
}

fn split_phase_prefix(s: &str) -> (Phase, &str) {
    let s = s.strip_prefix('+').unwrap_or(s);
    for (prefix, phase) in [
        ("-i", Phase::MinusI),
        ("−i", Phase::MinusI),
        ("i", Phase::PlusI),
        ("-", Phase::MinusOne),
        ("−", Phase::MinusOne),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            return (phase, rest);
        }
    }
    (Phase::PlusOne, s)
}

fn subscript_value(c: char) -> Option<u32> {
    SUBSCRIPTS.iter().position(|&s| s == c).map(|v| v as u32)
}

/// n-bit coordinate mask: doubles as an ownership mask over a register and
/// as the coordinate selector of the phase-bit split.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SupportMask {
    n: usize,
    #[serde(serialize_with = "serialize_bits")]
    bits: u64,
}

fn serialize_bits<S: Serializer>(bits: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let positions: Vec<usize> = (0..64)
        .filter(|j| bits >> j & 1 == 1)
        .map(|j| j + 1)
        .collect();
    positions.serialize(s)
}

impl SupportMask {
    pub fn empty(n: usize) -> Self {
        assert!(n > 0 && n <= MAX_QUBITS);
        SupportMask { n, bits: 0 }
    }

    /// Mask from 1-based positions.
    pub fn from_positions(n: usize, positions: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &p in positions {
            if p == 0 || p > n {
                return Err(Error::InvalidMask(format!(
                    "position {p} out of range 1..={n}"
                )));
            }
            bits |= 1 << (p - 1);
        }
        Ok(SupportMask { n, bits })
    }

    /// Mask from a bit string such as `00011` (leftmost char = qubit 1).
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let n = s.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidMask(format!("bad mask length {n}")));
        }
        let mut bits = 0u64;
        for (j, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << j,
                _ => return Err(Error::InvalidMask(format!("bad mask char `{c}`"))),
            }
        }
        Ok(SupportMask { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn popcount(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, position: usize) -> bool {
        position >= 1 && position <= self.n && (self.bits >> (position - 1)) & 1 == 1
    }

    /// 1-based set positions in increasing order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |p| self.contains(*p))
    }

    pub fn complement(&self) -> SupportMask {
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        SupportMask {
            n: self.n,
            bits: all & !self.bits,
        }
    }

    /// True when `op` acts as identity outside this mask.
    pub fn covers(&self, op: &PauliOperator) -> bool {
        op.n() == self.n && (op.x_bits() | op.z_bits()) & !self.bits == 0
    }

    pub fn to_bit_string(&self) -> String {
        (1..=self.n)
            .map(|p| if self.contains(p) { '1' } else { '0' })
            .collect()
    }

    /// Inner product `mask · v` mod 2 with a basis word given as packed bits
    /// (bit j = qubit j+1).
    pub fn dot_word(&self, word: u64) -> u8 {
        ((self.bits & word).count_ones() % 2) as u8
    }
}

impl fmt::Display for SupportMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let positions: Vec<String> = self.positions().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", positions.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse_letters(s).unwrap()
    }

    #[test]
    fn single_qubit_x_times_z_is_minus_i_y() {
        let prod = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(prod.to_letter_string(), "-iY");
        assert_eq!(prod.phase(), Phase::MinusI);
    }

    #[test]
    fn disjoint_supports_compose_without_phase() {
        let prod = p("IZ").multiply(&p("ZI")).unwrap();
        assert_eq!(prod.to_letter_string(), "ZZ");
        assert_eq!(prod.phase(), Phase::PlusOne);
    }

    #[test]
    fn adjacent_zz_generators_close_under_product() {
        let a = PauliOperator::parse_product("Z7Z8", 9).unwrap();
        let b = PauliOperator::parse_product("Z8Z9", 9).unwrap();
        let prod = a.multiply(&b).unwrap();
        assert_eq!(prod.to_product_string_ascii(), "Z7Z9");
        assert_eq!(prod.phase(), Phase::PlusOne);
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(p("X").commutes_bit(&p("Z")).unwrap(), 1);
        assert_eq!(p("XX").commutes_bit(&p("ZZ")).unwrap(), 0);
        let s1 = p("XZZXI");
        let zz = PauliOperator::parse_product("Z4Z5", 5).unwrap();
        assert_eq!(zz.commutes_bit(&s1).unwrap(), 1);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(p("X").commutes_bit(&p("XX")).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(PauliOperator::parse_product("Z9Z4", 9).unwrap().weight(), 2);
        assert_eq!(p("XZZXI").weight(), 4);
    }

    #[test]
    fn support_letters_match_positions() {
        let q = SupportMask::from_bit_string("1001").unwrap();
        let got = p("IXYX").support_letters(&q).unwrap();
        assert_eq!(got, vec![(1, PauliLetter::I), (4, PauliLetter::X)]);
        let got = p("ZXIZ").support_letters(&q).unwrap();
        assert_eq!(got, vec![(1, PauliLetter::Z), (4, PauliLetter::Z)]);
        let empty = SupportMask::empty(4);
        assert!(p("IXYX").support_letters(&empty).unwrap().is_empty());
    }

    #[test]
    fn support_letter_count_equals_mask_popcount() {
        let q = SupportMask::from_bit_string("10110").unwrap();
        assert_eq!(p("XZZXI").support_letters(&q).unwrap().len(), q.popcount());
    }

    #[test]
    fn every_pauli_squares_to_plus_or_minus_identity() {
        for s in ["X", "Y", "Z", "XZZXI", "-iYZ", "iYY"] {
            let op = p(s);
            let sq = op.multiply(&op).unwrap();
            assert!(sq.is_identity_pattern(), "{s}");
            assert!(matches!(sq.phase(), Phase::PlusOne | Phase::MinusOne));
        }
    }

    #[test]
    fn inverse_multiplies_to_identity() {
        for s in ["X", "Y", "iY", "-iXZY", "XZZXI", "-ZYX"] {
            let op = p(s);
            let prod = op.multiply(&op.inverse()).unwrap();
            assert!(prod.is_identity_pattern());
            assert_eq!(prod.phase(), Phase::PlusOne, "{s}");
        }
    }

    #[test]
    fn quarter_phases_form_a_group() {
        for k in 0..4u8 {
            let phase = Phase::from_exponent(k);
            assert_eq!(phase.times(phase.inverse()), Phase::PlusOne);
            assert_eq!(phase.exponent(), k);
        }
        assert_eq!(Phase::PlusI.times(Phase::PlusI), Phase::MinusOne);
        assert_eq!(Phase::MinusI.inverse(), Phase::PlusI);
    }

    #[test]
    fn repeated_positions_in_a_product_multiply_out() {
        let op = PauliOperator::parse_product("Z4Z4", 5).unwrap();
        assert!(op.is_identity_pattern());
        assert_eq!(op.phase(), Phase::PlusOne);
        // X then Z on the same site composes with the tracked phase
        let op = PauliOperator::parse_product("X2Z2", 5).unwrap();
        assert_eq!(op.to_product_string_ascii(), "-iY2");
    }

    #[test]
    fn rendering_round_trips() {
        for s in ["XZZXI", "-iYZ", "iY", "-ZZ", "IIIII"] {
            let op = p(s);
            assert_eq!(
                PauliOperator::parse_letters(&op.to_letter_string()).unwrap(),
                op
            );
            assert_eq!(
                PauliOperator::parse_product(&op.to_product_string(), op.n()).unwrap(),
                op
            );
            assert_eq!(
                PauliOperator::parse_product(&op.to_product_string_ascii(), op.n()).unwrap(),
                op
            );
        }
        let zz = PauliOperator::parse_product("Z4Z5", 5).unwrap();
        assert_eq!(zz.to_product_string(), "Z₄Z₅");
        assert_eq!(PauliOperator::parse("Z₄Z₅", 5).unwrap(), zz);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(PauliOperator::parse_letters("XQZ").is_err());
        assert!(PauliOperator::parse_letters("").is_err());
        assert!(PauliOperator::parse_product("Z0", 5).is_err());
        assert!(PauliOperator::parse_product("Z6", 5).is_err());
        assert!(PauliOperator::parse_product("Z", 5).is_err());
    }

    #[test]
    fn mask_helpers() {
        let m = SupportMask::from_positions(9, &[3, 6, 9]).unwrap();
        assert_eq!(m.to_bit_string(), "001001001");
        assert_eq!(m.to_string(), "{3,6,9}");
        assert_eq!(m.popcount(), 3);
        assert!(m.covers(&PauliOperator::parse_product("Z3Z9", 9).unwrap()));
        assert!(!m.covers(&PauliOperator::parse_product("Z1", 9).unwrap()));
        assert_eq!(m.complement().to_bit_string(), "110110110");
        assert!(SupportMask::from_positions(4, &[5]).is_err());
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(move |(letters, phase)| {
            let letters: Vec<PauliLetter> = letters
                .into_iter()
                .map(|v| match v {
                    0 => PauliLetter::I,
                    1 => PauliLetter::X,
                    2 => PauliLetter::Y,
                    _ => PauliLetter::Z,
                })
                .collect();
            PauliOperator::from_letters(&letters).with_phase(Phase::from_exponent(phase))
        })
    }

    proptest! {
        #[test]
        fn commutation_is_symmetric(a in arb_pauli(7), b in arb_pauli(7)) {
            prop_assert_eq!(a.commutes_bit(&b).unwrap(), b.commutes_bit(&a).unwrap());
        }

        #[test]
        fn product_order_differs_by_commutator_sign(a in arb_pauli(6), b in arb_pauli(6)) {
            let ab = a.multiply(&b).unwrap();
            let ba = b.multiply(&a).unwrap();
            prop_assert!(ab.same_pattern(&ba));
            let expected = if a.commutes_bit(&b).unwrap() == 0 {
                ba.phase()
            } else {
                ba.phase().times(Phase::MinusOne)
            };
            prop_assert_eq!(ab.phase(), expected);
        }

        #[test]
        fn weight_is_subadditive(a in arb_pauli(8), b in arb_pauli(8)) {
            let prod = a.multiply(&b).unwrap();
            prop_assert!(prod.weight() <= a.weight() + b.weight());
        }

        #[test]
        fn letter_string_round_trip(a in arb_pauli(9)) {
            let s = a.to_letter_string();
            prop_assert_eq!(PauliOperator::parse_letters(&s).unwrap(), a);
        }

        #[test]
        fn inverse_law_holds_everywhere(a in arb_pauli(10)) {
            let prod = a.multiply(&a.inverse()).unwrap();
            prop_assert!(prod.is_identity_pattern());
            prop_assert_eq!(prod.phase(), Phase::PlusOne);
        }
    }

    #[test]
    fn multiplication_is_associative_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=16);
            let mut ops = Vec::new();
            for _ in 0..3 {
                let letters: Vec<PauliLetter> = (0..n)
                    .map(|_| match rng.gen_range(0..4) {
                        0 => PauliLetter::I,
                        1 => PauliLetter::X,
                        2 => PauliLetter::Y,
                        _ => PauliLetter::Z,
                    })
                    .collect();
                ops.push(
                    PauliOperator::from_letters(&letters)
                        .with_phase(Phase::from_exponent(rng.gen_range(0..4))),
                );
            }
            let left = ops[0].multiply(&ops[1]).unwrap().multiply(&ops[2]).unwrap();
            let right = ops[0].multiply(&ops[1].multiply(&ops[2]).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}
