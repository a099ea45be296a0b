use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::ClassifyError;

/// The `±` of a statistics label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatisticsKind {
    /// `[...]₋`: `χ₁ = Q₋`, finite occupation.
    FermionicLike,
    /// `[...]₊`: `χ₁ = 1/Q₊`, unbounded occupation.
    BosonicLike,
}

impl StatisticsKind {
    pub fn sign_char(self) -> char {
        match self {
            StatisticsKind::FermionicLike => '-',
            StatisticsKind::BosonicLike => '+',
        }
    }
}

/// A statistics label `[q_0, q_1, ..., q_deg]±` with every `q_s ≥ 1`,
/// `deg ≥ 1`, and `q_0 = 1` for the bosonic-like kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatisticsSpec {
    kind: StatisticsKind,
    q: Vec<u64>,
}

impl StatisticsSpec {
    pub fn new(kind: StatisticsKind, q: Vec<u64>) -> Result<Self, ClassifyError> {
        if q.len() < 2 {
            return Err(ClassifyError::InvalidSpec(
                "order must be at least one (two or more coefficients)".into(),
            ));
        }
        if let Some(pos) = q.iter().position(|&c| c == 0) {
            return Err(ClassifyError::InvalidSpec(format!("coefficient q_{pos} is zero")));
        }
        if kind == StatisticsKind::BosonicLike && q[0] != 1 {
            return Err(ClassifyError::InvalidSpec(
                "bosonic-like statistics require q_0 = 1".into(),
            ));
        }
        Ok(StatisticsSpec { kind, q })
    }

    pub fn fermionic(q: &[u64]) -> Result<Self, ClassifyError> {
        Self::new(StatisticsKind::FermionicLike, q.to_vec())
    }

    pub fn bosonic(q: &[u64]) -> Result<Self, ClassifyError> {
        Self::new(StatisticsKind::BosonicLike, q.to_vec())
    }

    /// Ordinary fermions `[1,1]₋`.
    pub fn fermions() -> Self {
        StatisticsSpec { kind: StatisticsKind::FermionicLike, q: vec![1, 1] }
    }

    /// Ordinary bosons `[1,1]₊`.
    pub fn bosons() -> Self {
        StatisticsSpec { kind: StatisticsKind::BosonicLike, q: vec![1, 1] }
    }

    pub fn kind(&self) -> StatisticsKind {
        self.kind
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    /// Degree of `Q±`, the order of the statistics.
    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    pub fn is_fermionic(&self) -> bool {
        self.kind == StatisticsKind::FermionicLike
    }

    /// `q_0 = 1`.
    pub fn has_unique_vacuum(&self) -> bool {
        self.q[0] == 1
    }

    /// `Some(q)` for labels `[1, q]±`.
    pub fn order_one_parameter(&self) -> Option<u64> {
        (self.q.len() == 2 && self.q[0] == 1).then_some(self.q[1])
    }

    /// `Q±` with the alternating sign pattern applied, lowest degree first.
    pub fn polynomial(&self) -> Vec<BigInt> {
        self.q
            .iter()
            .enumerate()
            .map(|(s, &c)| match self.kind {
                StatisticsKind::BosonicLike if s % 2 == 1 => -BigInt::from(c),
                _ => BigInt::from(c),
            })
            .collect()
    }

    /// Wire form `q0,q1,...:±`.
    pub fn wire_label(&self) -> String {
        let coeffs: Vec<String> = self.q.iter().map(u64::to_string).collect();
        format!("{}:{}", coeffs.join(","), self.kind.sign_char())
    }
}

impl fmt::Display for StatisticsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.q.iter().map(u64::to_string).collect();
        write!(f, "[{}]{}", coeffs.join(","), self.kind.sign_char())
    }
}

impl FromStr for StatisticsSpec {
    type Err = ClassifyError;

    /// Parses `1,2:-` / `1,1:+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassifyError::InvalidLabel(s.to_string());
        let (coeffs, sign) = s.trim().rsplit_once(':').ok_or_else(bad)?;
        let kind = match sign.trim() {
            "-" => StatisticsKind::FermionicLike,
            "+" => StatisticsKind::BosonicLike,
            _ => return Err(bad()),
        };
        let q = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        StatisticsSpec::new(kind, q)
    }
}
