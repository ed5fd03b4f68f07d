//! Dense statevector engine for up to 16 labeled qubits.
//!
//! Amplitudes are `Complex<T>` with the scalar chosen by the caller; every
//! protocol in this crate instantiates `T = f64`. Qubits are addressed by
//! unique string labels; label order fixes tensor position, with the first
//! label on the most significant bit so printed basis words read left to
//! right.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::real::Real;

/// Hard cap on register size; exactness over scale.
pub const MAX_STATE_QUBITS: usize = 16;

/// Gate set used by the protocols.
#[derive(Debug, Clone)]
pub enum Gate {
    H,
    X,
    Z,
    /// targets: [control, target]
    Cnot,
    /// targets: [control, target]; phase -1 on |11>
    Cphase,
    /// targets: [control, block...]; applies the full Pauli string to the
    /// block when the control qubit is |1>
    ControlledPauli(PauliOperator),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    labels: Vec<String>,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Computational basis state over the given labels.
    pub fn basis(labels: &[&str], word: &[u8]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        check_labels(&labels)?;
        if word.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                got: word.len(),
            });
        }
        let n = labels.len();
        let mut idx = 0usize;
        for &b in word {
            idx = (idx << 1) | (b as usize & 1);
        }
        let mut amps = vec![Complex::zero(); 1 << n];
        amps[idx] = Complex::one();
        Ok(StateVector { labels, amps })
    }

    /// Basis state with default labels `q1..qn`.
    pub fn prepare(n: usize, word: &[u8]) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        Self::basis(&refs, word)
    }

    /// Single qubit `a|0> + b|1>`, normalized.
    pub fn qubit(label: &str, a: Complex<T>, b: Complex<T>) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm.is_zero() {
            return Err(Error::Domain("zero qubit state".into()));
        }
        Ok(StateVector {
            labels: vec![label.to_string()],
            amps: vec![a / norm, b / norm],
        })
    }

    /// The Bell state (|00> + |11>)/sqrt(2) over two labels.
    pub fn bell_phi_plus(a: &str, b: &str) -> Result<Self> {
        let half = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
        let mut s = Self::basis(&[a, b], &[0, 0])?;
        s.amps[0] = Complex::new(half, T::zero());
        s.amps[3] = Complex::new(half, T::zero());
        Ok(s)
    }

    /// Build directly from labels and raw amplitudes (length must be 2^n).
    pub fn from_amplitudes(labels: &[&str], amps: Vec<Complex<T>>) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        check_labels(&labels)?;
        if amps.len() != 1 << labels.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << labels.len(),
                got: amps.len(),
            });
        }
        Ok(StateVector { labels, amps })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, word: &[u8]) -> Result<Complex<T>> {
        if word.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        let mut idx = 0usize;
        for &b in word {
            idx = (idx << 1) | (b as usize & 1);
        }
        Ok(self.amps[idx])
    }

    /// Tensor product; label sets must be disjoint.
    pub fn tensor(&self, other: &StateVector<T>) -> Result<StateVector<T>> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        check_labels(&labels)?;
        let mut amps = vec![Complex::zero(); self.amps.len() * other.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * other.amps.len() + j] = *a * *b;
            }
        }
        Ok(StateVector { labels, amps })
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if !n.is_zero() {
            let inv = T::one() / n;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_same_labels(other)?;
        let mut acc = Complex::zero();
        for (a, b) in self.amps.iter().zip(&other.amps) {
            acc += a.conj() * *b;
        }
        Ok(acc)
    }

    /// |<self|other>|^2.
    pub fn fidelity(&self, other: &StateVector<T>) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Exact (phase-sensitive) amplitude comparison.
    pub fn approx_eq(&self, other: &StateVector<T>, tol: T) -> bool {
        self.labels == other.labels
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (*a - *b).norm() <= tol)
    }

    /// Complex linear combination of same-register states; not normalized.
    pub fn superpose(terms: &[(Complex<T>, &StateVector<T>)]) -> Result<StateVector<T>> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Domain("empty superposition".into()))?
            .1;
        let mut amps = vec![Complex::zero(); first.amps.len()];
        for (coeff, sv) in terms {
            first.check_same_labels(sv)?;
            for (acc, a) in amps.iter_mut().zip(&sv.amps) {
                *acc += *coeff * *a;
            }
        }
        Ok(StateVector {
            labels: first.labels.clone(),
            amps,
        })
    }

    fn check_same_labels(&self, other: &StateVector<T>) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::Config(format!(
                "label mismatch: {:?} vs {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }

    fn position_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn positions_of(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut seen = Vec::with_capacity(labels.len());
        for &l in labels {
            let p = self.position_of(l)?;
            if seen.contains(&p) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            seen.push(p);
        }
        Ok(seen)
    }

    fn bit_mask(&self, position: usize) -> usize {
        1 << (self.n() - 1 - position)
    }

    /// Apply a gate to the listed target labels.
    pub fn apply_gate(&mut self, gate: &Gate, targets: &[&str]) -> Result<()> {
        match gate {
            Gate::H => {
                let q = self.single_target(targets)?;
                let h = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
                self.apply_single(q, |a0, a1| ((a0 + a1) * h, (a0 - a1) * h));
            }
            Gate::X => {
                let q = self.single_target(targets)?;
                self.apply_single(q, |a0, a1| (a1, a0));
            }
            Gate::Z => {
                let q = self.single_target(targets)?;
                self.apply_single(q, |a0, a1| (a0, -a1));
            }
            Gate::Cnot => {
                let pos = self.positions_of(targets)?;
                if pos.len() != 2 {
                    return Err(Error::Config("CNOT takes [control, target]".into()));
                }
                let (cm, tm) = (self.bit_mask(pos[0]), self.bit_mask(pos[1]));
                for idx in 0..self.amps.len() {
                    if idx & cm != 0 && idx & tm == 0 {
                        self.amps.swap(idx, idx | tm);
                    }
                }
            }
            Gate::Cphase => {
                let pos = self.positions_of(targets)?;
                if pos.len() != 2 {
                    return Err(Error::Config("CPHASE takes [control, target]".into()));
                }
                let (cm, tm) = (self.bit_mask(pos[0]), self.bit_mask(pos[1]));
                for (idx, a) in self.amps.iter_mut().enumerate() {
                    if idx & cm != 0 && idx & tm != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::ControlledPauli(p) => {
                if targets.len() != p.n() + 1 {
                    return Err(Error::Config(format!(
                        "controlled-Pauli takes [control] + {} block labels",
                        p.n()
                    )));
                }
                let control = self.positions_of(&targets[..1])?[0];
                let cm = self.bit_mask(control);
                // reuse the plain Pauli kernel, gated on the control bit
                let block: Vec<&str> = targets[1..].to_vec();
                self.pauli_kernel(p, &block, Some(cm))?;
            }
        }
        Ok(())
    }

    fn single_target(&self, targets: &[&str]) -> Result<usize> {
        if targets.len() != 1 {
            return Err(Error::Config("gate takes exactly one target".into()));
        }
        self.position_of(targets[0])
    }

    fn apply_single(
        &mut self,
        position: usize,
        f: impl Fn(Complex<T>, Complex<T>) -> (Complex<T>, Complex<T>),
    ) {
        let mask = self.bit_mask(position);
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let (a0, a1) = (self.amps[idx], self.amps[idx | mask]);
                let (b0, b1) = f(a0, a1);
                self.amps[idx] = b0;
                self.amps[idx | mask] = b1;
            }
        }
    }

    /// Apply an n'-qubit Pauli string to a block of labels, phase included.
    pub fn apply_pauli(&mut self, p: &PauliOperator, block: &[&str]) -> Result<()> {
        self.pauli_kernel(p, block, None)
    }

    fn pauli_kernel(
        &mut self,
        p: &PauliOperator,
        block: &[&str],
        control: Option<usize>,
    ) -> Result<()> {
        if block.len() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                got: block.len(),
            });
        }
        let pos = self.positions_of(block)?;
        if let Some(cm) = control {
            if pos.iter().any(|&q| self.bit_mask(q) == cm) {
                return Err(Error::DuplicateLabel("control overlaps block".into()));
            }
        }
        let mut x_mask = 0usize;
        let mut z_mask = 0usize;
        for (j, &q) in pos.iter().enumerate() {
            if p.x_bits() >> j & 1 == 1 {
                x_mask |= self.bit_mask(q);
            }
            if p.z_bits() >> j & 1 == 1 {
                z_mask |= self.bit_mask(q);
            }
        }
        let phase = phase_value::<T>(p.phase_exponent());
        let mut out = vec![Complex::zero(); self.amps.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            if control.is_some_and(|cm| idx & cm == 0) {
                out[idx] += *amp;
                continue;
            }
            let sign = if (idx & z_mask).count_ones() % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            out[idx ^ x_mask] += *amp * phase * sign;
        }
        self.amps = out;
        Ok(())
    }

    /// Re <s|P|s> over a block of labels.
    pub fn expectation_pauli(&self, p: &PauliOperator, block: &[&str]) -> Result<T> {
        if block.len() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                got: block.len(),
            });
        }
        let pos = self.positions_of(block)?;
        let mut x_mask = 0usize;
        let mut z_mask = 0usize;
        for (j, &q) in pos.iter().enumerate() {
            if p.x_bits() >> j & 1 == 1 {
                x_mask |= self.bit_mask(q);
            }
            if p.z_bits() >> j & 1 == 1 {
                z_mask |= self.bit_mask(q);
            }
        }
        let phase = phase_value::<T>(p.phase_exponent());
        let mut acc = Complex::zero();
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let sign = if (idx & z_mask).count_ones() % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            acc += self.amps[idx ^ x_mask].conj() * *amp * phase * sign;
        }
        Ok(acc.re)
    }

    /// Projective measurement of one qubit; outcome 0 maps to the +1
    /// eigenstate (|0> in Z, |+> in X). The post-state is renormalized.
    pub fn measure(
        &mut self,
        label: &str,
        basis: MeasurementBasis,
        rng: &mut impl Rng,
    ) -> Result<u8> {
        match basis {
            MeasurementBasis::Z => self.measure_z(label, rng),
            MeasurementBasis::X => {
                self.apply_gate(&Gate::H, &[label])?;
                let outcome = self.measure_z(label, rng)?;
                self.apply_gate(&Gate::H, &[label])?;
                Ok(outcome)
            }
        }
    }

    fn measure_z(&mut self, label: &str, rng: &mut impl Rng) -> Result<u8> {
        let q = self.position_of(label)?;
        let mask = self.bit_mask(q);
        let mut p1 = T::zero();
        for (idx, a) in self.amps.iter().enumerate() {
            if idx & mask != 0 {
                p1 += a.norm_sqr();
            }
        }
        let draw = T::from_f64(rng.gen::<f64>());
        let outcome = u8::from(draw < p1);
        let keep_mask_value = if outcome == 1 { mask } else { 0 };
        let p_keep = if outcome == 1 { p1 } else { T::one() - p1 };
        let inv = T::one() / p_keep.sqrt();
        for (idx, a) in self.amps.iter_mut().enumerate() {
            if idx & mask == keep_mask_value {
                *a *= inv;
            } else {
                *a = Complex::zero();
            }
        }
        Ok(outcome)
    }

    /// Replace a k-qubit block by an n'-qubit block via the isometry whose
    /// basis images are given (`images[x]` is the image of `|x>` on fresh
    /// labels). Output label order: image labels, then the remaining labels.
    pub fn encode_block(
        &self,
        block: &[&str],
        images: &[StateVector<T>],
    ) -> Result<StateVector<T>> {
        let k = block.len();
        if images.len() != 1 << k {
            return Err(Error::Config(format!(
                "need {} images for a {k}-qubit block",
                1 << k
            )));
        }
        for img in images {
            images[0].check_same_labels(img)?;
        }
        let block_pos = self.positions_of(block)?;
        let rest_pos = self.rest_positions(&block_pos);
        let mut labels: Vec<String> = images[0].labels.clone();
        labels.extend(rest_pos.iter().map(|&p| self.labels[p].clone()));
        check_labels(&labels)?;
        if labels.len() > MAX_STATE_QUBITS {
            return Err(Error::TooManyQubits(labels.len()));
        }
        let img_dim = images[0].amps.len();
        let rest_dim = 1usize << rest_pos.len();
        let mut amps = vec![Complex::zero(); img_dim * rest_dim];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let x = self.extract_bits(idx, &block_pos);
            let r = self.extract_bits(idx, &rest_pos);
            for (y, img_amp) in images[x].amps.iter().enumerate() {
                if img_amp.is_zero() {
                    continue;
                }
                amps[y * rest_dim + r] += *img_amp * *amp;
            }
        }
        Ok(StateVector { labels, amps })
    }

    /// Adjoint of `encode_block`: contract the image block back down to k
    /// fresh logical labels. The result is unnormalized when the state has
    /// any component outside the image span.
    pub fn decode_block(
        &self,
        images: &[StateVector<T>],
        out_labels: &[&str],
    ) -> Result<StateVector<T>> {
        let k = out_labels.len();
        if images.len() != 1 << k {
            return Err(Error::Config(format!(
                "need {} images for a {k}-qubit block",
                1 << k
            )));
        }
        let block: Vec<&str> = images[0].labels.iter().map(|s| s.as_str()).collect();
        let block_pos = self.positions_of(&block)?;
        let rest_pos = self.rest_positions(&block_pos);
        let mut labels: Vec<String> = out_labels.iter().map(|s| s.to_string()).collect();
        labels.extend(rest_pos.iter().map(|&p| self.labels[p].clone()));
        check_labels(&labels)?;
        let rest_dim = 1usize << rest_pos.len();
        let mut amps = vec![Complex::zero(); (1 << k) * rest_dim];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let y = self.extract_bits(idx, &block_pos);
            let r = self.extract_bits(idx, &rest_pos);
            for (x, img) in images.iter().enumerate() {
                let coeff = img.amps[y].conj();
                if coeff.is_zero() {
                    continue;
                }
                amps[x * rest_dim + r] += coeff * *amp;
            }
        }
        Ok(StateVector { labels, amps })
    }

    fn rest_positions(&self, block_pos: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|p| !block_pos.contains(p)).collect()
    }

    fn extract_bits(&self, idx: usize, positions: &[usize]) -> usize {
        let mut sub = 0usize;
        for &p in positions {
            sub = (sub << 1) | usize::from(idx & self.bit_mask(p) != 0);
        }
        sub
    }

    /// Reduced density matrix over the kept labels, row-major (2^m)^2.
    pub fn reduced_density(&self, keep: &[&str]) -> Result<Vec<Complex<T>>> {
        let keep_pos = self.positions_of(keep)?;
        let rest_pos = self.rest_positions(&keep_pos);
        let dim = 1usize << keep_pos.len();
        let rest_dim = 1usize << rest_pos.len();
        let mut grouped = vec![Complex::zero(); dim * rest_dim];
        for (idx, amp) in self.amps.iter().enumerate() {
            let s = self.extract_bits(idx, &keep_pos);
            let r = self.extract_bits(idx, &rest_pos);
            grouped[s * rest_dim + r] = *amp;
        }
        let mut rho = vec![Complex::zero(); dim * dim];
        for s in 0..dim {
            for s2 in 0..dim {
                let mut acc = Complex::zero();
                for r in 0..rest_dim {
                    acc += grouped[s * rest_dim + r] * grouped[s2 * rest_dim + r].conj();
                }
                rho[s * dim + s2] = acc;
            }
        }
        Ok(rho)
    }

    /// Tr(rho^2) of the reduced state on the kept labels.
    pub fn block_purity(&self, keep: &[&str]) -> Result<T> {
        let rho = self.reduced_density(keep)?;
        let dim = (rho.len() as f64).sqrt() as usize;
        let mut acc = T::zero();
        for i in 0..dim {
            for j in 0..dim {
                acc += (rho[i * dim + j] * rho[j * dim + i]).re;
            }
        }
        Ok(acc)
    }

    /// <phi| rho |phi> where rho is the reduced state on phi's labels.
    pub fn block_fidelity(&self, phi: &StateVector<T>) -> Result<T> {
        let keep: Vec<&str> = phi.labels.iter().map(|s| s.as_str()).collect();
        let rho = self.reduced_density(&keep)?;
        let dim = phi.amps.len();
        let mut acc = Complex::zero();
        for i in 0..dim {
            for j in 0..dim {
                acc += phi.amps[i].conj() * rho[i * dim + j] * phi.amps[j];
            }
        }
        Ok(acc.re)
    }

    /// Pull out a block that is in a pure product state with the rest.
    pub fn extract_block(&self, block: &[&str], tol: T) -> Result<StateVector<T>> {
        let purity = self.block_purity(block)?;
        if (T::one() - purity).abs() > tol {
            return Err(Error::DecodeFailure(format!(
                "block {:?} is entangled with the remainder (purity {purity})",
                block
            )));
        }
        let block_pos = self.positions_of(block)?;
        let rest_pos = self.rest_positions(&block_pos);
        let dim = 1usize << block_pos.len();
        let rest_dim = 1usize << rest_pos.len();
        // state is (block) x (rest); slice along the heaviest rest index
        let mut weights = vec![T::zero(); rest_dim];
        let mut grouped = vec![Complex::zero(); dim * rest_dim];
        for (idx, amp) in self.amps.iter().enumerate() {
            let s = self.extract_bits(idx, &block_pos);
            let r = self.extract_bits(idx, &rest_pos);
            grouped[s * rest_dim + r] = *amp;
            weights[r] += amp.norm_sqr();
        }
        let best = (0..rest_dim)
            .max_by(|a, b| weights[*a].partial_cmp(&weights[*b]).unwrap())
            .unwrap();
        let scale = T::one() / weights[best].sqrt();
        let amps: Vec<Complex<T>> = (0..dim)
            .map(|s| grouped[s * rest_dim + best] * scale)
            .collect();
        Ok(StateVector {
            labels: block_pos.iter().map(|&p| self.labels[p].clone()).collect(),
            amps,
        })
    }

    /// Same state on renamed qubits (order preserved).
    pub fn relabeled(&self, new_labels: &[&str]) -> Result<StateVector<T>> {
        if new_labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: new_labels.len(),
            });
        }
        let labels: Vec<String> = new_labels.iter().map(|s| s.to_string()).collect();
        check_labels(&labels)?;
        Ok(StateVector {
            labels,
            amps: self.amps.clone(),
        })
    }

    /// Same state with qubits permuted into the given label order.
    pub fn reordered(&self, order: &[&str]) -> Result<StateVector<T>> {
        let pos = self.positions_of(order)?;
        if pos.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: pos.len(),
            });
        }
        let mut amps = vec![Complex::zero(); self.amps.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            let new_idx = self.extract_bits(idx, &pos);
            amps[new_idx] = *amp;
        }
        Ok(StateVector {
            labels: order.iter().map(|s| s.to_string()).collect(),
            amps,
        })
    }

    /// Stable dump of the significant amplitudes: (basis word, re, im) in
    /// basis order, entries below 1e-12 suppressed.
    pub fn dump(&self) -> Vec<(String, T, T)> {
        let cutoff = T::from_f64(1e-12);
        let n = self.n();
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .map(|(idx, a)| {
                let word: String = (0..n)
                    .map(|q| {
                        if idx & (1 << (n - 1 - q)) != 0 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect();
                (word, a.re, a.im)
            })
            .collect()
    }

    /// Basis words in the support (as packed bits, qubit 1 = bit 0），used by
    /// the splitting logic.
    pub fn support_words(&self, tol: T) -> Vec<u64> {
        let n = self.n();
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(idx, _)| {
                let mut word = 0u64;
                for q in 0..n {
                    if idx & (1 << (n - 1 - q)) != 0 {
                        word |= 1 << q;
                    }
                }
                word
            })
            .collect()
    }

    /// Scale so the lexicographically-smallest significant amplitude is real
    /// positive; normalizes the vector too.
    pub fn canonicalize_phase(&mut self, tol: T) {
        self.normalize();
        if let Some(first) = self.amps.iter().find(|a| a.norm() > tol) {
            let rot = first.conj() / first.norm();
            for a in &mut self.amps {
                *a *= rot;
            }
        }
    }

    /// Expectation-based readout of a deterministic qubit: Some(bit) when
    /// the qubit is 1e-10-close to a basis state of the given measurement
    /// basis.
    pub fn deterministic_bit(&self, label: &str, basis: MeasurementBasis) -> Result<Option<u8>> {
        let op = match basis {
            MeasurementBasis::Z => PauliOperator::parse_letters("Z").unwrap(),
            MeasurementBasis::X => PauliOperator::parse_letters("X").unwrap(),
        };
        let v = self.expectation_pauli(&op, &[label])?;
        let tol = T::from_f64(crate::AMP_TOL);
        if (v - T::one()).abs() < tol {
            Ok(Some(0))
        } else if (v + T::one()).abs() < tol {
            Ok(Some(1))
        } else {
            Ok(None)
        }
    }
}

/// Measurement basis for single-qubit readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementBasis {
    Z,
    X,
}

fn phase_value<T: Real>(exponent: u8) -> Complex<T> {
    match exponent % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_STATE_QUBITS {
        return Err(Error::TooManyQubits(labels.len()));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}
