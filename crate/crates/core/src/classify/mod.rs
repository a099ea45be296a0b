//! Validity, irreducibility and single-mode data of a statistics label.
//!
//! A label `[q_0, ..., q_deg]±` is valid when `Q₋` has only negative real
//! roots (fermionic-like) or `Q₊` only positive real roots (bosonic-like).
//! Both are decided exactly with Sturm sequences over the rationals.

mod poly;
mod spec;
mod tp;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::symfunc::{IntegerSeries, SymfuncError};

pub use poly::{
    distinct_real_roots, is_reducible_over_z, real_roots_with_multiplicity, RatPoly, RootCount,
    FACTORIZATION_DEGREE_BOUND,
};
pub use spec::{StatisticsKind, StatisticsSpec};
pub use tp::{
    default_window, totally_positive_upto, totally_positive_window, MinorWitness,
    TotalPositivity, MAX_TP_ORDER,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("cannot parse statistics label {0:?}; expected e.g. `1,2:-`")]
    InvalidLabel(String),
    #[error("malformed statistics label: {0}")]
    InvalidSpec(String),
    #[error("{} is not a valid statistics: {}", .0.label, .0.failure_reason.as_deref().unwrap_or(""))]
    Invalid(Box<ClassificationReport>),
    #[error("factorization bound exceeded: degree {degree} > {FACTORIZATION_DEGREE_BOUND}")]
    FactorizationBound { degree: usize },
    #[error("total positivity order {order} exceeds the resource guard {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("bosonic-like character needs horizon ≥ {degree}, got {horizon}")]
    HorizonTooSmall { horizon: usize, degree: usize },
    #[error("internal error: valid statistics produced negative coefficient a_{index}")]
    NegativeCoefficient { index: usize },
    #[error("excitation spectrum too large to list ({0} states)")]
    SpectrumTooLarge(BigInt),
    #[error(transparent)]
    Series(#[from] SymfuncError),
}

/// Maximal occupation `p` of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxOccupation {
    Finite(u64),
    Infinite,
}

/// Real roots of `Q±` by sign, counted with multiplicity, plus the number
/// of distinct real roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootsSummary {
    pub degree: usize,
    pub distinct_real: usize,
    pub negative: usize,
    pub positive: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub label: String,
    pub kind: StatisticsKind,
    pub valid: bool,
    /// `None` when the degree exceeds [`FACTORIZATION_DEGREE_BOUND`].
    pub irreducible: Option<bool>,
    pub order: usize,
    pub max_occupation: MaxOccupation,
    /// `q_0 = 1`. Valid fermionic-like labels with `q_0 > 1` have a
    /// degenerate vacuum.
    pub unique_vacuum: bool,
    pub roots: RootsSummary,
    pub failure_reason: Option<String>,
}

/// `Q±` with its sign pattern (lowest degree first).
pub fn build_polynomial(spec: &StatisticsSpec) -> Vec<BigInt> {
    spec.polynomial()
}

/// `Q₋(1) - 1` for fermionic-like labels.
pub fn max_occupation(spec: &StatisticsSpec) -> MaxOccupation {
    if spec.is_fermionic() {
        MaxOccupation::Finite(spec.q().iter().sum::<u64>() - 1)
    } else {
        MaxOccupation::Infinite
    }
}

pub fn is_valid_statistics(spec: &StatisticsSpec) -> ClassificationReport {
    let q = build_polynomial(spec);
    let p = RatPoly::from_ints(&q);
    let degree = spec.order();
    let counted = real_roots_with_multiplicity(&p);
    let distinct = distinct_real_roots(&p);
    let roots = RootsSummary {
        degree,
        distinct_real: distinct.negative + distinct.positive,
        negative: counted.negative,
        positive: counted.positive,
    };
    let (valid, failure_reason) = match spec.kind() {
        StatisticsKind::FermionicLike if counted.negative == degree => (true, None),
        StatisticsKind::BosonicLike if counted.positive == degree => (true, None),
        StatisticsKind::FermionicLike => (
            false,
            Some(format!(
                "Q₋ has {} of {degree} roots real and negative; the rest are {}",
                counted.negative,
                missing_roots(degree - counted.negative, counted.positive)
            )),
        ),
        StatisticsKind::BosonicLike => (
            false,
            Some(format!(
                "Q₊ has {} of {degree} roots real and positive; the rest are {}",
                counted.positive,
                missing_roots(degree - counted.positive, counted.negative)
            )),
        ),
    };
    ClassificationReport {
        label: spec.to_string(),
        kind: spec.kind(),
        valid,
        irreducible: is_reducible_over_z(&q).map(|r| !r),
        order: degree,
        max_occupation: max_occupation(spec),
        unique_vacuum: spec.has_unique_vacuum(),
        roots,
        failure_reason,
    }
}

fn missing_roots(missing: usize, wrong_sign: usize) -> String {
    let complex = missing - wrong_sign;
    match (complex, wrong_sign) {
        (c, 0) => format!("{c} complex"),
        (0, w) => format!("{w} of the wrong sign"),
        (c, w) => format!("{c} complex and {w} of the wrong sign"),
    }
}

/// `true` iff `Q±` does not split into two non-constant integral factors.
pub fn is_irreducible_statistics(spec: &StatisticsSpec) -> Result<bool, ClassifyError> {
    is_reducible_over_z(&build_polynomial(spec))
        .map(|r| !r)
        .ok_or(ClassifyError::FactorizationBound { degree: spec.order() })
}

fn require_valid(spec: &StatisticsSpec) -> Result<ClassificationReport, ClassifyError> {
    let report = is_valid_statistics(spec);
    if report.valid {
        Ok(report)
    } else {
        Err(ClassifyError::Invalid(Box::new(report)))
    }
}

/// The character series `Q₋` or `1/Q₊` without any validity check; for
/// invalid labels the coefficients may be negative. Bosonic-like series are
/// truncated at `horizon`.
pub fn character_series(
    spec: &StatisticsSpec,
    horizon: usize,
) -> Result<IntegerSeries, ClassifyError> {
    let q = build_polynomial(spec);
    if spec.is_fermionic() {
        return Ok(IntegerSeries::finite(q)?);
    }
    if horizon < spec.order() {
        return Err(ClassifyError::HorizonTooSmall { horizon, degree: spec.order() });
    }
    // Σ_{j ≤ min(n, deg)} Q₊[j] a_{n-j} = [n = 0] with Q₊[0] = 1.
    let mut a: Vec<BigInt> = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        let mut acc = if n == 0 { BigInt::from(1) } else { BigInt::zero() };
        for j in 1..=n.min(spec.order()) {
            acc -= &q[j] * &a[n - j];
        }
        a.push(acc);
    }
    Ok(IntegerSeries::truncated(a)?)
}

/// Single-mode character of a valid label: `Q₋`, or the first `horizon + 1`
/// coefficients of `1/Q₊`.
pub fn single_mode_character(
    spec: &StatisticsSpec,
    horizon: usize,
) -> Result<IntegerSeries, ClassifyError> {
    require_valid(spec)?;
    let series = character_series(spec, horizon)?;
    if let Some(index) = series.coeffs().iter().position(Signed::is_negative) {
        return Err(ClassifyError::NegativeCoefficient { index });
    }
    Ok(series)
}

const SPECTRUM_LIMIT: u64 = 1 << 24;

/// Excitation values `f_0 ≤ f_1 ≤ ...`: value `s` repeated `a_s` times.
/// For bosonic-like labels only values `≤ cutoff` are listed; the cutoff is
/// ignored for fermionic-like labels.
pub fn excitation_spectrum(
    spec: &StatisticsSpec,
    cutoff: usize,
) -> Result<Vec<u32>, ClassifyError> {
    let horizon = cutoff.max(spec.order());
    let series = single_mode_character(spec, horizon)?;
    let limit = if spec.is_fermionic() { series.horizon() } else { cutoff };
    let total: BigInt = series.coeffs()[..=limit].iter().sum();
    if total > BigInt::from(SPECTRUM_LIMIT) {
        return Err(ClassifyError::SpectrumTooLarge(total));
    }
    let mut out = Vec::new();
    for (s, a) in series.coeffs()[..=limit].iter().enumerate() {
        let count = a.to_usize().expect("bounded by SPECTRUM_LIMIT");
        out.extend(std::iter::repeat_n(s as u32, count));
    }
    Ok(out)
}
