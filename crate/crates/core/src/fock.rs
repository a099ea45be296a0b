//! Fock basis, excitation bookkeeping and the decomposition of the `d`-mode
//! Fock space into `U(d)` irreducible sectors.
//!
//! For order-one labels `[1,α]₋` / `[1,β]₊` every occupation `n` of a mode
//! splits into an ordinary occupation `k` and an auxiliary label `z`
//! (fermionic: `n = k + z`; bosonic: `n = (β^k − 1)/(β − 1) + z` with `z`
//! written as `k` base-`β` digits). [`map_l`] performs that split on all
//! modes and collects the auxiliary labels in mode order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive};
use thiserror::Error;

use crate::classify::{
    excitation_spectrum, is_valid_statistics, single_mode_character, ClassificationReport,
    ClassifyError, MaxOccupation, StatisticsSpec,
};
use crate::symfunc::{schur_expand_product, Partition, SymfuncError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
    #[error("occupation {occupation} in mode {mode} exceeds the maximum {max}")]
    OccupationOutOfRange { mode: usize, occupation: u64, max: u64 },
    #[error("expected {expected} modes, got {got}")]
    ModeCountMismatch { expected: usize, got: usize },
    #[error("{0} is outside the order-one, unique-vacuum class [1,q]±")]
    UnsupportedStatistics(String),
    #[error("malformed auxiliary labels: {0}")]
    MalformedLabels(String),
    #[error("fermionic-like sector N={n} does not exist on {d} modes")]
    SectorOutOfRange { n: usize, d: usize },
    #[error("internal error: negative multiplicity {value} for {partition}")]
    NegativeMultiplicity { partition: Partition, value: BigInt },
}

/// `|n_1, ..., n_d⟩`.
///
/// Ordered colexicographically (last mode most significant), which is the
/// order every basis in this crate is listed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccupationState(Vec<u64>);

impl OccupationState {
    pub fn new(occupations: Vec<u64>) -> Self {
        OccupationState(occupations)
    }

    pub fn vacuum(d: usize) -> Self {
        OccupationState(vec![0; d])
    }

    pub fn occupations(&self) -> &[u64] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }
}

impl Ord for OccupationState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for OccupationState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "|{}⟩", s.join(","))
    }
}

impl From<Vec<u64>> for OccupationState {
    fn from(v: Vec<u64>) -> Self {
        OccupationState(v)
    }
}

/// Ordinary occupations `k_s` plus the auxiliary label of every occupied
/// mode, in mode order. Fermionic-like labels are one digit `z < α`;
/// bosonic-like labels are `k_s` base-`β` digits, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledState {
    pub ordinary: Vec<u64>,
    pub aux: Vec<Vec<u64>>,
}

impl LabeledState {
    /// Ordinary occupations with every auxiliary digit zero.
    pub fn with_zero_labels(spec: &StatisticsSpec, ordinary: Vec<u64>) -> Self {
        let aux = ordinary
            .iter()
            .filter(|&&k| k > 0)
            .map(|&k| if spec.is_fermionic() { vec![0] } else { vec![0; k as usize] })
            .collect();
        LabeledState { ordinary, aux }
    }
}

/// `c_λ` for every sector of `F_d` with `|λ| ≤ max_weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorDecomposition {
    pub spec: StatisticsSpec,
    pub d: usize,
    pub max_weight: u32,
    pub entries: BTreeMap<Partition, BigInt>,
    /// `Σ c_λ dim V_λ = Q₋(1)^d`, checked for fermionic-like labels when
    /// `max_weight` covers the whole space; `None` otherwise.
    pub dimension_check: Option<bool>,
}

impl SectorDecomposition {
    pub fn multiplicity(&self, lambda: &Partition) -> BigInt {
        self.entries.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.values().all(|c| *c <= BigInt::from(1))
    }
}

fn require_valid(spec: &StatisticsSpec) -> Result<ClassificationReport, FockError> {
    let report = is_valid_statistics(spec);
    if report.valid {
        Ok(report)
    } else {
        Err(ClassifyError::Invalid(Box::new(report)).into())
    }
}

/// Single-mode excitation values `f_n`: the full list for fermionic-like
/// labels, and every `n` with `f_n ≤ cutoff` for bosonic-like ones.
pub fn mode_excitations(spec: &StatisticsSpec, cutoff: usize) -> Result<Vec<u32>, FockError> {
    Ok(excitation_spectrum(spec, cutoff)?)
}

/// `f_n` for a single occupation.
pub fn excitation_of(spec: &StatisticsSpec, n: u64) -> Result<u32, FockError> {
    if let MaxOccupation::Finite(p) = crate::classify::max_occupation(spec) {
        if n > p {
            return Err(FockError::OccupationOutOfRange { mode: 0, occupation: n, max: p });
        }
        let f = mode_excitations(spec, 0)?;
        return Ok(f[n as usize]);
    }
    let mut horizon = spec.order().max(8);
    loop {
        let series = single_mode_character(spec, horizon)?;
        let mut seen = BigInt::from(0);
        for (s, a) in series.coeffs().iter().enumerate() {
            seen += a;
            if seen > BigInt::from(n) {
                return Ok(s as u32);
            }
        }
        horizon *= 2;
    }
}

/// Every basis state of `F_d`: occupations up to `p` for fermionic-like
/// labels, total excitation `≤ excitation_cutoff` for bosonic-like ones.
/// Colexicographic order.
pub fn enumerate_basis(
    spec: &StatisticsSpec,
    d: usize,
    excitation_cutoff: usize,
) -> Result<Vec<OccupationState>, FockError> {
    require_valid(spec)?;
    let f = mode_excitations(spec, excitation_cutoff)?;
    let budget = if spec.is_fermionic() { usize::MAX } else { excitation_cutoff };
    let mut out = Vec::new();
    let mut current = vec![0u64; d];
    fn rec(
        mode: usize,
        budget: usize,
        f: &[u32],
        current: &mut Vec<u64>,
        out: &mut Vec<OccupationState>,
    ) {
        if mode == 0 {
            out.push(OccupationState(current.clone()));
            return;
        }
        for (n, &fn_) in f.iter().enumerate() {
            if fn_ as usize > budget {
                continue;
            }
            current[mode - 1] = n as u64;
            rec(mode - 1, budget - fn_ as usize, f, current, out);
        }
        current[mode - 1] = 0;
    }
    rec(d, budget, &f, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// Basis states with total excitation exactly `n`, colex order.
pub fn sector_basis(
    spec: &StatisticsSpec,
    d: usize,
    n: usize,
) -> Result<Vec<OccupationState>, FockError> {
    let f = mode_excitations(spec, n)?;
    Ok(enumerate_basis(spec, d, n)?
        .into_iter()
        .filter(|s| s.0.iter().map(|&k| f[k as usize] as usize).sum::<usize>() == n)
        .collect())
}

/// Total excitation `Σ_k f_{n_k}`.
pub fn excitation_number(spec: &StatisticsSpec, state: &OccupationState) -> Result<u32, FockError> {
    state
        .0
        .iter()
        .enumerate()
        .map(|(mode, &n)| {
            excitation_of(spec, n).map_err(|e| match e {
                FockError::OccupationOutOfRange { occupation, max, .. } => {
                    FockError::OccupationOutOfRange { mode, occupation, max }
                }
                e => e,
            })
        })
        .sum()
}

/// `E = Σ_k ε_k f_{n_k}`.
pub fn state_energy(
    spec: &StatisticsSpec,
    state: &OccupationState,
    energies: &[f64],
) -> Result<f64, FockError> {
    if energies.len() != state.modes() {
        return Err(FockError::ModeCountMismatch { expected: state.modes(), got: energies.len() });
    }
    let mut e = 0.0;
    for (&n, &eps) in state.0.iter().zip(energies) {
        e += eps * excitation_of(spec, n)? as f64;
    }
    Ok(e)
}

/// Multiplicities `c_λ` of `F_d = ⊕ c_λ V_λ` for `|λ| ≤ max_weight`.
pub fn decompose(
    spec: &StatisticsSpec,
    d: usize,
    max_weight: u32,
) -> Result<SectorDecomposition, FockError> {
    require_valid(spec)?;
    // Minors for |λ| ≤ W on d modes read a_n up to n = W + d - 1.
    let series = single_mode_character(spec, max_weight as usize + d)?;
    let entries = schur_expand_product(&series, d, max_weight)?;
    if let Some((partition, value)) = entries.iter().find(|(_, c)| c.is_negative()) {
        return Err(FockError::NegativeMultiplicity {
            partition: partition.clone(),
            value: value.clone(),
        });
    }
    let full = spec.is_fermionic() && max_weight as usize >= d * spec.order();
    let dimension_check = full.then(|| {
        let total: BigInt = entries.iter().map(|(l, c)| c * l.dimension(d)).sum();
        let q1: u64 = spec.q().iter().sum();
        total == BigInt::from(q1).pow(d as u32)
    });
    Ok(SectorDecomposition { spec: spec.clone(), d, max_weight, entries, dimension_check })
}

fn order_one(spec: &StatisticsSpec) -> Result<u64, FockError> {
    spec.order_one_parameter()
        .ok_or_else(|| FockError::UnsupportedStatistics(spec.to_string()))
}

/// The single sector `(1^N, α^N)` for `[1,α]₋` or `((N), β^N)` for
/// `[1,β]₊` carrying total excitation `N`.
pub fn order_one_prediction(
    spec: &StatisticsSpec,
    d: usize,
    n: usize,
) -> Result<(Partition, BigInt), FockError> {
    let q = order_one(spec)?;
    let multiplicity = BigInt::from(q).pow(n as u32);
    if spec.is_fermionic() {
        if n > d {
            return Err(FockError::SectorOutOfRange { n, d });
        }
        Ok((Partition::column(n), multiplicity))
    } else {
        Ok((Partition::row(n as u32), multiplicity))
    }
}

/// `L_d`: splits each occupation into ordinary occupation and auxiliary label.
pub fn map_l(spec: &StatisticsSpec, state: &OccupationState) -> Result<LabeledState, FockError> {
    let q = order_one(spec)?;
    let mut ordinary = Vec::with_capacity(state.modes());
    let mut aux = Vec::new();
    for (mode, &n) in state.0.iter().enumerate() {
        if spec.is_fermionic() {
            if n > q {
                return Err(FockError::OccupationOutOfRange { mode, occupation: n, max: q });
            }
            if n == 0 {
                ordinary.push(0);
            } else {
                ordinary.push(1);
                aux.push(vec![n - 1]);
            }
        } else {
            let (k, z) = split_bosonic(n, q);
            ordinary.push(k);
            if k > 0 {
                aux.push(to_digits(z, q, k as usize));
            }
        }
    }
    Ok(LabeledState { ordinary, aux })
}

/// Inverse of [`map_l`].
pub fn map_l_inverse(
    spec: &StatisticsSpec,
    labeled: &LabeledState,
) -> Result<OccupationState, FockError> {
    let q = order_one(spec)?;
    let occupied = labeled.ordinary.iter().filter(|&&k| k > 0).count();
    if labeled.aux.len() != occupied {
        return Err(FockError::MalformedLabels(format!(
            "{occupied} occupied modes but {} labels",
            labeled.aux.len()
        )));
    }
    let mut labels = labeled.aux.iter();
    let mut out = Vec::with_capacity(labeled.ordinary.len());
    for (mode, &k) in labeled.ordinary.iter().enumerate() {
        if k == 0 {
            out.push(0);
            continue;
        }
        let label = labels.next().expect("counted above");
        if let Some(&bad) = label.iter().find(|&&z| z >= q) {
            return Err(FockError::MalformedLabels(format!(
                "digit {bad} in mode {mode} is not below {q}"
            )));
        }
        if spec.is_fermionic() {
            if k != 1 {
                return Err(FockError::OccupationOutOfRange { mode, occupation: k, max: 1 });
            }
            if label.len() != 1 {
                return Err(FockError::MalformedLabels(format!(
                    "mode {mode} needs a single label, got {}",
                    label.len()
                )));
            }
            out.push(1 + label[0]);
        } else {
            if label.len() as u64 != k {
                return Err(FockError::MalformedLabels(format!(
                    "mode {mode} with k={k} needs {k} digits, got {}",
                    label.len()
                )));
            }
            let offset = geometric_offset(q, k)
                .ok_or_else(|| FockError::MalformedLabels(format!("mode {mode} overflows")))?;
            let z = label
                .iter()
                .try_fold(0u64, |acc, &digit| acc.checked_mul(q)?.checked_add(digit))
                .ok_or_else(|| FockError::MalformedLabels(format!("mode {mode} overflows")))?;
            out.push(offset + z);
        }
    }
    Ok(OccupationState(out))
}

/// `Σ_{j<k} β^j`, the first occupation with `k` bosonic excitations.
fn geometric_offset(beta: u64, k: u64) -> Option<u64> {
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..k {
        total = total.checked_add(power)?;
        power = power.checked_mul(beta)?;
    }
    Some(total)
}

fn split_bosonic(n: u64, beta: u64) -> (u64, u64) {
    let mut k = 0u64;
    let mut start = 0u64;
    let mut block = 1u64;
    while n >= start + block {
        start += block;
        block = block.saturating_mul(beta);
        k += 1;
    }
    (k, n - start)
}

fn to_digits(mut z: u64, base: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0; len];
    for slot in digits.iter_mut().rev() {
        if base > 1 {
            *slot = z % base;
            z /= base;
        }
    }
    digits
}

/// `dim V_λ` as `u64`, for tests and reports.
pub fn irrep_dimension(lambda: &Partition, d: usize) -> u64 {
    lambda.dimension(d).to_u64().expect("dimension fits in u64")
}
