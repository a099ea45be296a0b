//! Exact symmetric-function kernel.
//!
//! Partitions, semistandard tableaux, Schur polynomials and the Toeplitz
//! minors `det(a_{λ_i-μ_j-i+j})` that give the Schur expansion of a product
//! of single-mode characters `∏_k χ₁(x_k) = Σ_λ c_λ s_λ(x)`.

mod bareiss;
mod partition;
mod schur;
mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use bareiss::{det_bigint, det_small};
pub(crate) use bareiss::det_i128;
pub use partition::{enumerate_partitions, Partition};
pub use schur::{
    for_each_ssyt_type, schur_eval, schur_eval_tableaux, schur_monomials, ssyt_count,
    COINCIDENCE_THRESHOLD,
};
pub use series::IntegerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymfuncError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotAPartition(Vec<u32>),
    #[error("series must start with a positive coefficient a_0")]
    NonPositiveLeading,
    #[error("insufficient series length: need a_{required}, horizon is {horizon}")]
    InsufficientSeries { required: usize, horizon: usize },
    #[error("{modes} modes cannot hold a partition of length {length}")]
    TooFewModes { modes: usize, length: usize },
    #[error("oracle resource guard exceeded: {0}")]
    OracleLimit(String),
}

/// Toeplitz minor `det(a_{λ_i − μ_j − i + j})_{1≤i,j≤d}`, exactly.
pub fn toeplitz_minor(
    a: &IntegerSeries,
    lambda: &Partition,
    mu: &Partition,
    d: usize,
) -> Result<BigInt, SymfuncError> {
    let length = lambda.length().max(mu.length());
    if d < length {
        return Err(SymfuncError::TooFewModes { modes: d, length });
    }
    let lp = lambda.padded(d);
    let mp = mu.padded(d);
    if d > 0 {
        let top = lp[0] as i64 - mp[d - 1] as i64 + d as i64 - 1;
        if top >= 0 {
            a.require(top as usize)?;
        }
    }
    let mut entries = Vec::with_capacity(d * d);
    for (i, &l) in lp.iter().enumerate() {
        for (j, &m) in mp.iter().enumerate() {
            let idx = l as i64 - m as i64 - i as i64 + j as i64;
            entries.push(a.get(idx)?);
        }
    }
    Ok(det_entries(entries, d))
}

fn det_entries(entries: Vec<BigInt>, d: usize) -> BigInt {
    let small: Option<Vec<i128>> = entries.iter().map(ToPrimitive::to_i128).collect();
    match small {
        Some(m) => det_small(&m, d),
        None => {
            let mut it = entries.into_iter();
            det_bigint((0..d).map(|_| it.by_ref().take(d).collect()).collect())
        }
    }
}

/// Schur expansion coefficients `c_λ` of `∏_{k=1}^d χ₁(x_k)` for every
/// `λ` with `l(λ) ≤ d` and `|λ| ≤ max_weight`, via Toeplitz minors.
/// Zero coefficients are omitted.
pub fn schur_expand_product(
    a: &IntegerSeries,
    d: usize,
    max_weight: u32,
) -> Result<BTreeMap<Partition, BigInt>, SymfuncError> {
    let mut out = BTreeMap::new();
    let empty = Partition::empty();
    for lambda in enumerate_partitions(max_weight, d) {
        let c = toeplitz_minor(a, &lambda, &empty, d)?;
        if !c.is_zero() {
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// Size limits for [`schur_expand_oracle`].
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_modes: usize,
    pub max_weight: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_modes: 3, max_weight: 6 }
    }
}

/// Brute-force counterpart of [`schur_expand_product`]: multiplies the
/// truncated factors out as polynomials, then peels off Schur polynomials
/// greedily by lexicographically leading monomial.
pub fn schur_expand_oracle(
    a: &IntegerSeries,
    d: usize,
    max_weight: u32,
) -> Result<BTreeMap<Partition, BigInt>, SymfuncError> {
    schur_expand_oracle_with(a, d, max_weight, OracleLimits::default())
}

pub fn schur_expand_oracle_with(
    a: &IntegerSeries,
    d: usize,
    max_weight: u32,
    limits: OracleLimits,
) -> Result<BTreeMap<Partition, BigInt>, SymfuncError> {
    if d > limits.max_modes || max_weight > limits.max_weight {
        return Err(SymfuncError::OracleLimit(format!(
            "d={d}, max_weight={max_weight} exceeds d≤{}, weight≤{}",
            limits.max_modes, limits.max_weight
        )));
    }
    a.require(max_weight as usize)?;
    let w = max_weight as usize;

    let mut poly: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    poly.insert(vec![0; d], BigInt::from(1));
    for k in 0..d {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (expo, coeff) in &poly {
            let deg: u32 = expo.iter().sum();
            for s in 0..=(w - deg as usize) {
                let a_s = a.get(s as i64)?;
                if a_s.is_zero() {
                    continue;
                }
                let mut e = expo.clone();
                e[k] += s as u32;
                *next.entry(e).or_insert_with(BigInt::zero) += coeff * &a_s;
            }
        }
        next.retain(|_, c| !c.is_zero());
        poly = next;
    }

    let mut out = BTreeMap::new();
    // BTreeMap order on exponent vectors is lexicographic; the greatest key
    // of a given degree is the leading monomial, hence a partition.
    for deg in (0..=max_weight).rev() {
        loop {
            let leading = poly
                .iter()
                .rev()
                .find(|(e, _)| e.iter().sum::<u32>() == deg)
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((expo, coeff)) = leading else { break };
            let lambda = Partition::new(expo).map_err(|e| {
                SymfuncError::OracleLimit(format!("product is not symmetric: {e}"))
            })?;
            for (mono, kostka) in schur_monomials(&lambda, d) {
                let entry = poly.entry(mono).or_insert_with(BigInt::zero);
                *entry -= &coeff * BigInt::from(kostka);
            }
            poly.retain(|_, c| !c.is_zero());
            out.insert(lambda, coeff);
        }
    }
    Ok(out)
}
