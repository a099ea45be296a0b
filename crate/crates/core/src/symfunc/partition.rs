use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::SymfuncError;

/// Integer partition (Young diagram) labelling an irreducible representation
/// of `U(d)`.
///
/// Parts are stored weakly decreasing with trailing zeros stripped, so two
/// partitions compare equal iff their diagrams coincide.
///
/// The total order is graded lexicographic: smaller weight first, and within
/// one weight the lexicographically larger part sequence first, e.g.
/// `∅ < (1) < (2) < (1,1) < (3) < (2,1) < (1,1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SymfuncError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymfuncError::NotAPartition(parts));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single row `(n)`, the bosonic `n`-particle sector.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// Single column `(1^n)`, the fermionic `n`-particle sector.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `l(λ)`, the number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with the convention `λ_i = 0` past the length (0-based index).
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to exactly `len` entries.
    ///
    /// Panics if `len < l(λ)`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        assert!(len >= self.length(), "cannot pad {self} to length {len}");
        let mut out = self.parts.clone();
        out.resize(len, 0);
        out
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Dimension of the `U(d)` irrep `V_λ`, i.e. `s_λ(1,...,1)`, from the
    /// hook-content formula. Zero when `l(λ) > d`.
    pub fn dimension(&self, d: usize) -> BigInt {
        if self.length() > d {
            return BigInt::from(0);
        }
        let conj = self.conjugate();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let content = d as i64 + j as i64 - i as i64;
                let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
                num *= content;
                den *= hook as i64;
            }
        }
        num / den
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions with `|λ| ≤ max_weight` and `l(λ) ≤ max_length`, in graded
/// lexicographic order.
pub fn enumerate_partitions(max_weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for w in 0..=max_weight {
        fill(w, w, max_length, &mut current, &mut out);
    }
    out
}

// Emits partitions of `remaining` with parts ≤ `cap` in lexicographically
// decreasing order.
fn fill(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        current.push(p);
        fill(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}
