//! Small dense GF(2) linear algebra over u128 rows.
//!
//! Symplectic (x|z) vectors of up to 64 qubits pack into one u128, so group
//! membership and decomposition reduce to Gaussian elimination here.

/// Row-reduced span of a set of GF(2) vectors, with enough bookkeeping to
/// express a target vector as a combination of the original inputs.
#[derive(Debug, Clone)]
pub struct Gf2Span {
    /// (reduced row, combination of input rows that produced it)
    rows: Vec<(u128, u128)>,
}

impl Gf2Span {
    pub fn new(vectors: &[u128]) -> Self {
        let mut rows: Vec<(u128, u128)> = Vec::new();
        for (idx, &v) in vectors.iter().enumerate() {
            let mut row = v;
            let mut combo = 1u128 << idx;
            // eliminate against existing pivots
            for &(r, c) in &rows {
                if let Some(pivot) = leading_bit(r) {
                    if row >> pivot & 1 == 1 {
                        row ^= r;
                        combo ^= c;
                    }
                }
            }
            if row != 0 {
                rows.push((row, combo));
                rows.sort_by_key(|&(r, _)| std::cmp::Reverse(leading_bit(r).unwrap()));
            }
        }
        Gf2Span { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, target: u128) -> bool {
        self.reduce(target).0 == 0
    }

    /// Indices of input vectors whose XOR equals `target`, if it lies in the
    /// span.
    pub fn express(&self, target: u128) -> Option<Vec<usize>> {
        let (residue, combo) = self.reduce(target);
        if residue != 0 {
            return None;
        }
        Some((0..128).filter(|i| combo >> i & 1 == 1).collect())
    }

    fn reduce(&self, target: u128) -> (u128, u128) {
        let mut row = target;
        let mut combo = 0u128;
        for &(r, c) in &self.rows {
            if let Some(pivot) = leading_bit(r) {
                if row >> pivot & 1 == 1 {
                    row ^= r;
                    combo ^= c;
                }
            }
        }
        (row, combo)
    }
}

fn leading_bit(v: u128) -> Option<u32> {
    if v == 0 {
        None
    } else {
        Some(127 - v.leading_zeros())
    }
}
