//! Thermodynamics of non-interacting gases with a given statistics label.
//!
//! Units have `k_B = 1`, so temperatures are in energy units. Each mode
//! contributes `log χ₁(y)` with `y = e^{−β(ε−μ)}`, and its mean occupation is
//! the logarithmic derivative `y χ₁′(y) / χ₁(y)`. Fermionic-like characters
//! are evaluated in log space so that deep-filled modes stay finite.
//! Bosonic-like characters diverge once `y` reaches the smallest root of
//! `Q₊`, and that is reported as an error.

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{is_valid_statistics, ClassifyError, StatisticsSpec};

/// Relative margin below the convergence radius treated as divergent.
pub const DIVERGENCE_MARGIN: f64 = 1e-12;
/// Tolerance on `Σ n_i = N` when solving for `μ`.
pub const SOLVE_TOLERANCE: f64 = 1e-10;
/// Bisection iteration cap for [`solve_mu`].
pub const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermoError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("series diverges for mode {mode} (y = {y} ≥ radius {radius})")]
    Divergent { mode: usize, y: f64, radius: f64 },
    #[error("target N = {target} outside (0, {bound}]")]
    TargetOutOfRange { target: f64, bound: f64 },
    #[error("chemical potential search did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl ThermoError {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            ThermoError::Classify(_) => "invalid_statistics",
            ThermoError::Divergent { .. } => "divergence",
            ThermoError::TargetOutOfRange { .. } => "target_out_of_range",
            ThermoError::NoConvergence { .. } => "no_convergence",
            ThermoError::InvalidParams(_) => "invalid_params",
        }
    }
}

/// Single-particle mode energies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    energies: Vec<f64>,
}

impl Spectrum {
    pub fn new(energies: Vec<f64>) -> Result<Self, ThermoError> {
        if energies.is_empty() {
            return Err(ThermoError::InvalidParams("empty spectrum".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(ThermoError::InvalidParams("non-finite energy".into()));
        }
        Ok(Spectrum { energies })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn modes(&self) -> usize {
        self.energies.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    pub beta: f64,
    pub mu: f64,
}

impl EnsembleParams {
    pub fn new(beta: f64, mu: f64) -> Result<Self, ThermoError> {
        check_beta(beta)?;
        if !mu.is_finite() {
            return Err(ThermoError::InvalidParams(format!("mu must be finite, got {mu}")));
        }
        Ok(EnsembleParams { beta, mu })
    }
}

fn check_beta(beta: f64) -> Result<(), ThermoError> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(ThermoError::InvalidParams(format!("beta must be positive and finite, got {beta}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub log_z: f64,
    pub mean_n: f64,
    pub mean_e: f64,
    pub entropy: f64,
    pub occupations: Vec<f64>,
}

/// Closed-form single-mode character of a validated label.
#[derive(Debug, Clone)]
struct ModeCharacter {
    fermionic: bool,
    /// `q_s` as reals.
    q: Vec<f64>,
    /// Smallest root of `Q₊` (bosonic-like only).
    radius: f64,
}

struct ModeValue {
    log_chi: f64,
    n: f64,
}

impl ModeCharacter {
    fn new(spec: &StatisticsSpec) -> Result<Self, ThermoError> {
        let report = is_valid_statistics(spec);
        if !report.valid {
            return Err(ClassifyError::Invalid(Box::new(report)).into());
        }
        let q: Vec<f64> = spec.q().iter().map(|&x| x as f64).collect();
        let radius = match (spec.is_fermionic(), spec.order_one_parameter()) {
            (true, _) => f64::INFINITY,
            (false, Some(p)) => 1.0 / p as f64,
            (false, None) => smallest_root(&signed(&q)),
        };
        Ok(ModeCharacter { fermionic: spec.is_fermionic(), q, radius })
    }

    /// `x = β(ε − μ)`, so `y = e^{−x}`.
    fn eval(&self, x: f64, mode: usize) -> Result<ModeValue, ThermoError> {
        if self.fermionic {
            // log(q_s y^s) = log q_s − s x; softmax over s.
            let logs: Vec<f64> =
                self.q.iter().enumerate().map(|(s, &q)| q.ln() - s as f64 * x).collect();
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
            let total: f64 = weights.iter().sum();
            let n = weights.iter().enumerate().map(|(s, w)| s as f64 * w).sum::<f64>() / total;
            return Ok(ModeValue { log_chi: top + total.ln(), n });
        }
        let y = (-x).exp();
        if y >= self.radius * (1.0 - DIVERGENCE_MARGIN) {
            return Err(ThermoError::Divergent { mode, y, radius: self.radius });
        }
        let p = signed(&self.q);
        let (value, slope) = horner(&p, y);
        if value <= 0.0 {
            return Err(ThermoError::Divergent { mode, y, radius: self.radius });
        }
        Ok(ModeValue { log_chi: -value.ln(), n: -y * slope / value })
    }
}

fn signed(q: &[f64]) -> Vec<f64> {
    q.iter().enumerate().map(|(s, &c)| if s % 2 == 0 { c } else { -c }).collect()
}

/// `(p(y), p′(y))`.
fn horner(p: &[f64], y: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for &c in p.iter().rev() {
        slope = slope * y + value;
        value = value * y + c;
    }
    (value, slope)
}

/// Newton from 0 on a real-rooted polynomial with `p(0) > 0` and only
/// positive roots increases monotonically to the smallest root.
fn smallest_root(p: &[f64]) -> f64 {
    let mut y = 0.0;
    for _ in 0..400 {
        let (v, d) = horner(p, y);
        if v <= 0.0 || d == 0.0 {
            break;
        }
        let next = y - v / d;
        if next <= y {
            break;
        }
        y = next;
    }
    y
}

fn mode_values(
    ch: &ModeCharacter,
    spectrum: &Spectrum,
    beta: f64,
    mu: f64,
) -> Result<Vec<ModeValue>, ThermoError> {
    spectrum
        .energies
        .iter()
        .enumerate()
        .map(|(i, &e)| ch.eval(beta * (e - mu), i))
        .collect()
}

/// `log Z_d(β) = Σ_k log χ₁(e^{−β ε_k})`.
pub fn canonical_log_z(
    spec: &StatisticsSpec,
    spectrum: &Spectrum,
    beta: f64,
) -> Result<f64, ThermoError> {
    check_beta(beta)?;
    let ch = ModeCharacter::new(spec)?;
    Ok(mode_values(&ch, spectrum, beta, 0.0)?.iter().map(|v| v.log_chi).sum())
}

/// `log 𝒵_d = Σ_k log χ₁(e^{−β(ε_k − μ)})`.
pub fn grand_log_z(
    spec: &StatisticsSpec,
    spectrum: &Spectrum,
    params: EnsembleParams,
) -> Result<f64, ThermoError> {
    check_beta(params.beta)?;
    let ch = ModeCharacter::new(spec)?;
    Ok(mode_values(&ch, spectrum, params.beta, params.mu)?.iter().map(|v| v.log_chi).sum())
}

/// Mean excitation of a mode at energy `epsilon`.
pub fn mean_occupation(
    spec: &StatisticsSpec,
    epsilon: f64,
    params: EnsembleParams,
) -> Result<f64, ThermoError> {
    check_beta(params.beta)?;
    let ch = ModeCharacter::new(spec)?;
    Ok(ch.eval(params.beta * (epsilon - params.mu), 0)?.n)
}

/// Chemical potential with `Σ_i n_i = target_n`, by bisection.
///
/// Fermionic-like gases saturate at `d · deg Q₋`; the target may equal that
/// bound, in which case the smallest `μ` reaching it in floating point is
/// returned. Bosonic-like gases accept any positive target, with `μ`
/// confined below the divergence threshold.
pub fn solve_mu(
    spec: &StatisticsSpec,
    spectrum: &Spectrum,
    beta: f64,
    target_n: f64,
) -> Result<f64, ThermoError> {
    check_beta(beta)?;
    let ch = ModeCharacter::new(spec)?;
    let bound = if ch.fermionic {
        (spectrum.modes() * spec.order()) as f64
    } else {
        f64::INFINITY
    };
    if !(target_n > 0.0 && target_n <= bound) {
        return Err(ThermoError::TargetOutOfRange { target: target_n, bound });
    }
    // Divergence counts as "too many particles".
    let excess = |mu: f64| -> f64 {
        match mode_values(&ch, spectrum, beta, mu) {
            Ok(v) => v.iter().map(|m| m.n).sum::<f64>() - target_n,
            Err(_) => f64::INFINITY,
        }
    };
    let e_min = spectrum.energies.iter().copied().fold(f64::INFINITY, f64::min);
    let e_max = spectrum.energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (e_max - e_min).max(1.0 / beta).max(1.0);

    let mut lo = e_min - width;
    let mut step = width;
    let mut expansions = 0;
    while excess(lo) >= 0.0 {
        lo -= step;
        step *= 2.0;
        expansions += 1;
        if expansions > MAX_BISECTION_STEPS || !lo.is_finite() {
            return Err(ThermoError::NoConvergence { residual: excess(lo) });
        }
    }
    let mut hi = if ch.fermionic { e_max + width } else { e_min + ch.radius.ln() / beta };
    step = width;
    expansions = 0;
    while excess(hi) < 0.0 {
        hi += step;
        step *= 2.0;
        expansions += 1;
        if expansions > MAX_BISECTION_STEPS || !hi.is_finite() {
            return Err(ThermoError::NoConvergence { residual: excess(hi) });
        }
    }

    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (r_lo, r_hi) = (excess(lo), excess(hi));
    let (mu, residual) = if r_lo.abs() < r_hi.abs() { (lo, r_lo) } else { (hi, r_hi) };
    if residual.abs() > SOLVE_TOLERANCE {
        return Err(ThermoError::NoConvergence { residual });
    }
    Ok(mu)
}

/// Full grand-canonical report. The entropy is summed per mode as
/// `log χ₁(y_i) + β(ε_i − μ) n_i`, which is `log 𝒵 + β⟨E⟩ − βμN`.
pub fn thermo_report(
    spec: &StatisticsSpec,
    spectrum: &Spectrum,
    params: EnsembleParams,
) -> Result<ThermoReport, ThermoError> {
    check_beta(params.beta)?;
    let ch = ModeCharacter::new(spec)?;
    let values = mode_values(&ch, spectrum, params.beta, params.mu)?;
    let occupations: Vec<f64> = values.iter().map(|v| v.n).collect();
    let log_z = values.iter().map(|v| v.log_chi).sum();
    let mean_n = occupations.iter().sum();
    // −∂ log 𝒵/∂β at fixed βμ: each mode contributes ε_i y χ′/χ = ε_i n_i.
    let mean_e = spectrum.energies.iter().zip(&occupations).map(|(e, n)| e * n).sum();
    let entropy = values
        .iter()
        .zip(&spectrum.energies)
        .map(|(v, &e)| v.log_chi + params.beta * (e - params.mu) * v.n)
        .sum();
    Ok(ThermoReport { log_z, mean_n, mean_e, entropy, occupations })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    /// `None` where the bosonic series diverges.
    pub n: Option<f64>,
}

/// Mean occupation on `steps` evenly spaced energies from `lo` to `hi`
/// inclusive (a single point at `lo` when `steps == 1`).
pub fn sweep(
    spec: &StatisticsSpec,
    range: (f64, f64, usize),
    params: EnsembleParams,
) -> Result<Vec<SweepRow>, ThermoError> {
    check_beta(params.beta)?;
    let (lo, hi, steps) = range;
    if steps == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(ThermoError::InvalidParams(format!("bad sweep range {lo}:{hi}:{steps}")));
    }
    let ch = ModeCharacter::new(spec)?;
    let rows = (0..steps)
        .into_par_iter()
        .map(|i| {
            let epsilon =
                if steps == 1 { lo } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 };
            let n = ch.eval(params.beta * (epsilon - params.mu), 0).ok().map(|v| v.n);
            SweepRow { epsilon, n }
        })
        .collect();
    Ok(rows)
}

/// CSV with header `epsilon,n,flag`; divergent rows leave `n` empty.
pub fn write_sweep_csv<W: std::io::Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "epsilon,n,flag")?;
    for row in rows {
        match row.n {
            Some(n) => writeln!(out, "{},{},ok", row.epsilon, n)?,
            None => writeln!(out, "{},,divergent", row.epsilon)?,
        }
    }
    Ok(())
}
