//! Explicit `U(d)` action on excitation sectors of the Fock space.
//!
//! Ordinary fermions act through `N × N` minors of `g`, ordinary bosons
//! through permanents. Order-one transtatistics inherit the ordinary action
//! by conjugating with the `L_d` basis bijection, leaving the auxiliary
//! register untouched. Total excitation is conserved, so evolution runs
//! sector by sector.

mod permanent;
mod unitary;

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::classify::StatisticsSpec;
use crate::fock::{self, excitation_number, map_l, FockError, OccupationState};

pub use permanent::permanent;
pub use unitary::{unitarity_deviation, ModeUnitary, UNITARITY_TOLERANCE};

/// Default bound on the bosonic sector size handled by [`bosonic_rep`].
pub const DEFAULT_MAX_BOSONIC_N: usize = 8;

/// Tolerance on `Σ|amplitude|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("sector N={n} exceeds the permanent resource guard N ≤ {limit}")]
    SectorTooLarge { n: usize, limit: usize },
    #[error("fermionic sector N={n} does not exist on {d} modes")]
    SectorOutOfRange { n: usize, d: usize },
    #[error("state is not normalized (Σ|a|² = {0})")]
    NotNormalized(f64),
    #[error("state has {got} modes, unitary acts on {expected}")]
    ModeCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// A representation matrix on one excitation sector, with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorMatrix {
    pub basis: Vec<OccupationState>,
    pub matrix: DMatrix<Complex64>,
}

impl SectorMatrix {
    pub fn index_of(&self, state: &OccupationState) -> Option<usize> {
        self.basis.iter().position(|s| s == state)
    }
}

/// Complex amplitudes over Fock basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    pub basis: Vec<OccupationState>,
    pub amplitudes: Vec<Complex64>,
}

impl AmplitudeVector {
    pub fn basis_state(state: OccupationState) -> Self {
        AmplitudeVector { basis: vec![state], amplitudes: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Amplitude on `state` (zero when absent).
    pub fn amplitude(&self, state: &OccupationState) -> Complex64 {
        self.basis
            .iter()
            .position(|s| s == state)
            .map_or(Complex64::new(0.0, 0.0), |i| self.amplitudes[i])
    }
}

fn binary_states(d: usize, n: usize) -> Vec<OccupationState> {
    let mut out: Vec<OccupationState> = (0u64..1 << d)
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| OccupationState::new((0..d).map(|k| (m >> k) & 1).collect()))
        .collect();
    out.sort();
    out
}

fn bosonic_states(d: usize, n: usize) -> Vec<OccupationState> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; d];
    fn rec(mode: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<OccupationState>) {
        if mode + 1 == cur.len() {
            cur[mode] = left;
            out.push(OccupationState::new(cur.clone()));
            return;
        }
        for k in 0..=left {
            cur[mode] = k;
            rec(mode + 1, left - k, cur, out);
        }
    }
    if d == 0 {
        return out;
    }
    rec(0, n as u64, &mut cur, &mut out);
    out.sort();
    out
}

fn occupied_modes(state: &OccupationState) -> Vec<usize> {
    state
        .occupations()
        .iter()
        .enumerate()
        .flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize))
        .collect()
}

/// Antisymmetric power: basis = `N`-subsets of modes (colex), entry =
/// `det g[S, T]`.
pub fn fermionic_rep(g: &ModeUnitary, n: usize) -> Result<SectorMatrix, DynamicsError> {
    let d = g.modes();
    if n > d {
        return Err(DynamicsError::SectorOutOfRange { n, d });
    }
    let basis = binary_states(d, n);
    let modes: Vec<Vec<usize>> = basis.iter().map(occupied_modes).collect();
    let dim = basis.len();
    let m = g.matrix();
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        DMatrix::from_fn(n, n, |i, j| m[(modes[r][i], modes[c][j])]).determinant()
    });
    Ok(SectorMatrix { basis, matrix })
}

/// Symmetric power with the default resource guard.
pub fn bosonic_rep(g: &ModeUnitary, n: usize) -> Result<SectorMatrix, DynamicsError> {
    bosonic_rep_with_limit(g, n, DEFAULT_MAX_BOSONIC_N)
}

/// Symmetric power: basis = occupation vectors summing to `N` (colex),
/// entry `⟨m|Δ(g)|n⟩ = per(g[m|n]) / sqrt(∏ m_i! ∏ n_j!)`.
pub fn bosonic_rep_with_limit(
    g: &ModeUnitary,
    n: usize,
    limit: usize,
) -> Result<SectorMatrix, DynamicsError> {
    if n > limit {
        return Err(DynamicsError::SectorTooLarge { n, limit });
    }
    let basis = bosonic_states(g.modes(), n);
    let modes: Vec<Vec<usize>> = basis.iter().map(occupied_modes).collect();
    let norms: Vec<f64> = basis
        .iter()
        .map(|s| s.occupations().iter().map(|&k| factorial(k)).product::<f64>())
        .collect();
    let dim = basis.len();
    let m = g.matrix();
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        let sub = DMatrix::from_fn(n, n, |i, j| m[(modes[r][i], modes[c][j])]);
        permanent(&sub) / (norms[r] * norms[c]).sqrt()
    });
    Ok(SectorMatrix { basis, matrix })
}

fn factorial(k: u64) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `Δ(g) = L_d^{-1} (Δ_ordinary(g) ⊗ 1_A) L_d` on the excitation-`N`
/// sector of an order-one label `[1,q]±`.
pub fn transtat_rep(
    spec: &StatisticsSpec,
    g: &ModeUnitary,
    n: usize,
) -> Result<SectorMatrix, DynamicsError> {
    if spec.order_one_parameter().is_none() {
        return Err(FockError::UnsupportedStatistics(spec.to_string()).into());
    }
    let d = g.modes();
    if spec.is_fermionic() && n > d {
        return Err(DynamicsError::SectorOutOfRange { n, d });
    }
    let ordinary = if spec.is_fermionic() { fermionic_rep(g, n)? } else { bosonic_rep(g, n)? };
    let ordinary_index: HashMap<&OccupationState, usize> =
        ordinary.basis.iter().enumerate().map(|(i, s)| (s, i)).collect();

    let basis = fock::sector_basis(spec, d, n)?;
    // The auxiliary register is the concatenation of all labels; for
    // transbosons the split into per-mode digit strings follows k.
    let mut keys = Vec::with_capacity(basis.len());
    for state in &basis {
        let labeled = map_l(spec, state)?;
        let k = ordinary_index[&OccupationState::new(labeled.ordinary)];
        let register: Vec<u64> = labeled.aux.into_iter().flatten().collect();
        keys.push((k, register));
    }
    let dim = basis.len();
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        if keys[r].1 == keys[c].1 {
            ordinary.matrix[(keys[r].0, keys[c].0)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(SectorMatrix { basis, matrix })
}

/// `|ψ_g⟩ = Δ(g)|ψ_in⟩`, applied sector by sector. The output basis is the
/// union of the full sectors touched by the input, ordered by excitation
/// and then colexicographically.
pub fn evolve(
    spec: &StatisticsSpec,
    g: &ModeUnitary,
    input: &AmplitudeVector,
) -> Result<AmplitudeVector, DynamicsError> {
    let norm = input.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(DynamicsError::NotNormalized(norm));
    }
    let mut by_sector: BTreeMap<usize, Vec<(&OccupationState, Complex64)>> = BTreeMap::new();
    for (state, &amp) in input.basis.iter().zip(&input.amplitudes) {
        if state.modes() != g.modes() {
            return Err(DynamicsError::ModeCountMismatch { expected: g.modes(), got: state.modes() });
        }
        let n = excitation_number(spec, state)? as usize;
        by_sector.entry(n).or_default().push((state, amp));
    }
    let mut out_basis = Vec::new();
    let mut out_amps = Vec::new();
    for (n, entries) in by_sector {
        let rep = transtat_rep(spec, g, n)?;
        let mut v = nalgebra::DVector::<Complex64>::zeros(rep.basis.len());
        for (state, amp) in entries {
            let i = rep.index_of(state).expect("state lies in its own sector");
            v[i] += amp;
        }
        let w = &rep.matrix * v;
        out_basis.extend(rep.basis);
        out_amps.extend(w.iter().copied());
    }
    Ok(AmplitudeVector { basis: out_basis, amplitudes: out_amps })
}

/// `p = |⟨n|ψ⟩|²`, marginalized over auxiliary labels: keys are ordinary
/// occupations `k` (which equal `n` for ordinary statistics).
pub fn detection_probabilities(
    spec: &StatisticsSpec,
    output: &AmplitudeVector,
) -> Result<BTreeMap<OccupationState, f64>, DynamicsError> {
    let norm = output.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(DynamicsError::NotNormalized(norm));
    }
    let mut out = BTreeMap::new();
    for (state, amp) in output.basis.iter().zip(&output.amplitudes) {
        let ordinary = OccupationState::new(map_l(spec, state)?.ordinary);
        *out.entry(ordinary).or_insert(0.0) += amp.norm_sqr();
    }
    Ok(out)
}

/// `Σ_basis exp(i Σ_k θ_k f_{n_k})`, restricted to total excitation
/// `≤ excitation_cutoff` for bosonic-like labels.
pub fn character_trace(
    spec: &StatisticsSpec,
    phases: &[f64],
    excitation_cutoff: usize,
) -> Result<Complex64, DynamicsError> {
    let f = fock::mode_excitations(spec, excitation_cutoff)?;
    let basis = fock::enumerate_basis(spec, phases.len(), excitation_cutoff)?;
    Ok(basis
        .iter()
        .map(|s| {
            let theta: f64 = s
                .occupations()
                .iter()
                .zip(phases)
                .map(|(&n, &t)| t * f[n as usize] as f64)
                .sum();
            Complex64::from_polar(1.0, theta)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> StatisticsSpec {
        s.parse().unwrap()
    }

    fn st(v: &[u64]) -> OccupationState {
        OccupationState::new(v.to_vec())
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn fermionic_rep_examples() {
        let bs = ModeUnitary::beam_splitter();
        let one = fermionic_rep(&bs, 1).unwrap();
        assert_eq!(one.basis, vec![st(&[1, 0]), st(&[0, 1])]);
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(one.matrix[(i, j)], bs.matrix()[(i, j)]));
            }
        }
        let two = fermionic_rep(&bs, 2).unwrap();
        assert_eq!(two.matrix.shape(), (1, 1));
        assert!(close(two.matrix[(0, 0)], Complex64::new(-1.0, 0.0)));
        assert!(fermionic_rep(&bs, 3).is_err());
    }

    #[test]
    fn bosonic_rep_hom_column() {
        let rep = bosonic_rep(&ModeUnitary::beam_splitter(), 2).unwrap();
        assert_eq!(rep.basis, vec![st(&[2, 0]), st(&[1, 1]), st(&[0, 2])]);
        let col = rep.index_of(&st(&[1, 1])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(rep.matrix[(0, col)], Complex64::new(h, 0.0)));
        assert!(close(rep.matrix[(1, col)], Complex64::new(0.0, 0.0)));
        assert!(close(rep.matrix[(2, col)], Complex64::new(-h, 0.0)));
    }

    #[test]
    fn identity_acts_trivially() {
        let id = ModeUnitary::identity(3);
        for n in 0..=3 {
            let rep = bosonic_rep(&id, n).unwrap();
            let dim = rep.basis.len();
            assert!((rep.matrix - DMatrix::identity(dim, dim)).norm() < 1e-12);
        }
        assert!(matches!(
            bosonic_rep(&id, 9),
            Err(DynamicsError::SectorTooLarge { n: 9, limit: 8 })
        ));
        assert!(bosonic_rep_with_limit(&ModeUnitary::identity(1), 9, 9).is_ok());
    }

    #[test]
    fn ordinary_fermions_reduce_to_fermionic_rep() {
        let bs = ModeUnitary::beam_splitter();
        for n in 0..=2 {
            assert_eq!(
                transtat_rep(&StatisticsSpec::fermions(), &bs, n).unwrap(),
                fermionic_rep(&bs, n).unwrap()
            );
        }
    }

    #[test]
    fn transfermion_hom_sector_is_minus_identity() {
        let rep = transtat_rep(&spec("1,2:-"), &ModeUnitary::beam_splitter(), 2).unwrap();
        assert_eq!(rep.basis.len(), 4);
        let expected = DMatrix::<Complex64>::identity(4, 4) * Complex64::new(-1.0, 0.0);
        assert!((rep.matrix - expected).norm() < 1e-12);
    }

    #[test]
    fn evolve_examples() {
        let bs = ModeUnitary::beam_splitter();
        let input = AmplitudeVector::basis_state(st(&[1, 1]));

        let out = evolve(&StatisticsSpec::bosons(), &ModeUnitary::identity(2), &input).unwrap();
        assert!(close(out.amplitude(&st(&[1, 1])), Complex64::new(1.0, 0.0)));

        let out = evolve(&StatisticsSpec::bosons(), &bs, &input).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(out.amplitude(&st(&[2, 0])), Complex64::new(h, 0.0)));
        assert!(close(out.amplitude(&st(&[0, 2])), Complex64::new(-h, 0.0)));
        assert!(close(out.amplitude(&st(&[1, 1])), Complex64::new(0.0, 0.0)));

        let out = evolve(&StatisticsSpec::fermions(), &bs, &input).unwrap();
        assert!(close(out.amplitude(&st(&[1, 1])), Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn evolve_rejects_unnormalized_input() {
        let input = AmplitudeVector { basis: vec![st(&[1, 0])], amplitudes: vec![Complex64::new(2.0, 0.0)] };
        assert!(matches!(
            evolve(&StatisticsSpec::bosons(), &ModeUnitary::beam_splitter(), &input),
            Err(DynamicsError::NotNormalized(_))
        ));
    }

    #[test]
    fn detection_examples() {
        let bs = ModeUnitary::beam_splitter();
        let input = AmplitudeVector::basis_state(st(&[1, 1]));
        let out = evolve(&StatisticsSpec::bosons(), &bs, &input).unwrap();
        let p = detection_probabilities(&StatisticsSpec::bosons(), &out).unwrap();
        assert!((p[&st(&[2, 0])] - 0.5).abs() < 1e-12);
        assert!((p[&st(&[0, 2])] - 0.5).abs() < 1e-12);
        assert!(p[&st(&[1, 1])].abs() < 1e-12);

        let out = evolve(&StatisticsSpec::fermions(), &bs, &input).unwrap();
        let p = detection_probabilities(&StatisticsSpec::fermions(), &out).unwrap();
        assert!((p[&st(&[1, 1])] - 1.0).abs() < 1e-12);

        let tf = spec("1,2:-");
        let out = evolve(&tf, &bs, &input).unwrap();
        let p = detection_probabilities(&tf, &out).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p[&st(&[1, 1])] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn character_examples() {
        let t = 0.7;
        let c = character_trace(&StatisticsSpec::fermions(), &[t], 0).unwrap();
        assert!(close(c, Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, t)));
        let c = character_trace(&spec("1,2:-"), &[0.0, 0.0], 0).unwrap();
        assert!(close(c, Complex64::new(9.0, 0.0)));
        let c = character_trace(&spec("1,2:+"), &[t], 2).unwrap();
        let expected = Complex64::new(1.0, 0.0)
            + 2.0 * Complex64::from_polar(1.0, t)
            + 4.0 * Complex64::from_polar(1.0, 2.0 * t);
        assert!(close(c, expected));
    }

    #[test]
    fn higher_order_is_unsupported() {
        assert!(matches!(
            transtat_rep(&spec("1,3,1:-"), &ModeUnitary::identity(2), 1),
            Err(DynamicsError::Fock(FockError::UnsupportedStatistics(_)))
        ));
    }
}
