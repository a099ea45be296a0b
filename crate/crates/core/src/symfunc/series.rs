use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SymfuncError;

/// Exact coefficient sequence `a_0, a_1, ..., a_K` of a single-mode
/// character, indexed by power of `x`.
///
/// A series is either finite (coefficients past `K` are zero) or a truncation
/// of an infinite series, in which case `K` is a horizon and any request for
/// `a_n` with `n > K` is an error rather than an implicit zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSeries {
    coeffs: Vec<BigInt>,
    truncated: bool,
}

impl IntegerSeries {
    /// Finite series. Trailing zeros are dropped; `a_0` must be positive.
    pub fn finite(coeffs: Vec<BigInt>) -> Result<Self, SymfuncError> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self::checked(coeffs, false)
    }

    /// First `K + 1` coefficients of an infinite series, `K = coeffs.len() - 1`.
    pub fn truncated(coeffs: Vec<BigInt>) -> Result<Self, SymfuncError> {
        Self::checked(coeffs, true)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, SymfuncError> {
        Self::finite(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn truncated_from_i64s(coeffs: &[i64]) -> Result<Self, SymfuncError> {
        Self::truncated(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn checked(coeffs: Vec<BigInt>, truncated: bool) -> Result<Self, SymfuncError> {
        match coeffs.first() {
            Some(a0) if a0.is_positive() => Ok(IntegerSeries { coeffs, truncated }),
            _ => Err(SymfuncError::NonPositiveLeading),
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Largest stored index `K`.
    pub fn horizon(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_n`, zero for negative `n` and for `n > K` on finite series.
    pub fn get(&self, n: i64) -> Result<BigInt, SymfuncError> {
        if n < 0 {
            return Ok(BigInt::zero());
        }
        match self.coeffs.get(n as usize) {
            Some(c) => Ok(c.clone()),
            None if self.truncated => Err(SymfuncError::InsufficientSeries {
                required: n as usize,
                horizon: self.horizon(),
            }),
            None => Ok(BigInt::zero()),
        }
    }

    /// Fails unless every `a_n` with `n ≤ required` is known.
    pub fn require(&self, required: usize) -> Result<(), SymfuncError> {
        if self.truncated && required > self.horizon() {
            Err(SymfuncError::InsufficientSeries { required, horizon: self.horizon() })
        } else {
            Ok(())
        }
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// `a_0 = 1`, which forces a unique vacuum.
    pub fn is_monic_at_zero(&self) -> bool {
        self.coeffs[0].is_one()
    }
}

impl fmt::Display for IntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        if self.truncated {
            f.write_str(",...")?;
        }
        f.write_str(")")
    }
}
