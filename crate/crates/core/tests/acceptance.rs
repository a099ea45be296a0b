//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transtat_core::classify::{
    character_series, excitation_spectrum, is_valid_statistics, single_mode_character,
    totally_positive_upto, StatisticsKind, StatisticsSpec,
};
use transtat_core::dynamics::{
    character_trace, detection_probabilities, evolve, transtat_rep, AmplitudeVector, ModeUnitary,
};
use transtat_core::fock::{decompose, enumerate_basis, excitation_number, state_energy};
use transtat_core::symfunc::{schur_expand_oracle, schur_expand_product, IntegerSeries, Partition};
use transtat_core::thermo::{
    grand_log_z, mean_occupation, solve_mu, thermo_report, EnsembleParams, Spectrum,
};
use transtat_core::OccupationState;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn label(s: &str) -> StatisticsSpec {
    s.parse().expect("well-formed label")
}

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).expect("partition")
}

fn st(v: &[u64]) -> OccupationState {
    OccupationState::new(v.to_vec())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_runtime(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("runtime {took:?} exceeds {limit:?}"))
}

fn hom() -> Outcome {
    let start = Instant::now();
    let bs = ModeUnitary::beam_splitter();
    let input = AmplitudeVector::basis_state(st(&[1, 1]));

    let bosons = StatisticsSpec::bosons();
    let p = detection_probabilities(&bosons, &evolve(&bosons, &bs, &input).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    for (state, expected) in [(st(&[2, 0]), 0.5), (st(&[0, 2]), 0.5), (st(&[1, 1]), 0.0)] {
        let got = p.get(&state).copied().unwrap_or(0.0);
        ensure((got - expected).abs() <= 1e-12, || format!("bosons p{state} = {got}"))?;
    }
    let fermions = StatisticsSpec::fermions();
    let p = detection_probabilities(
        &fermions,
        &evolve(&fermions, &bs, &input).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let got = p.get(&st(&[1, 1])).copied().unwrap_or(0.0);
    ensure((got - 1.0).abs() <= 1e-12, || format!("fermions p|1,1⟩ = {got}"))?;
    within_runtime(start, Duration::from_secs(1))?;
    Ok("bosons bunch 0.5/0.5, fermions antibunch".into())
}

fn counterexample() -> Outcome {
    let a = IntegerSeries::from_i64s(&[1, 0, 1]).map_err(|e| e.to_string())?;
    let c = schur_expand_product(&a, 2, 4).map_err(|e| e.to_string())?;
    let got = c.get(&part(&[1, 1])).cloned().unwrap_or_default();
    ensure(got == BigInt::from(-1), || format!("c_(1,1) = {got}"))?;
    Ok("c_(1,1) = -1".into())
}

fn multiplicity_tables() -> Outcome {
    let entries = |spec: &str, w| -> Result<BTreeMap<Partition, BigInt>, String> {
        Ok(decompose(&label(spec), 2, w).map_err(|e| e.to_string())?.entries)
    };
    let big = |pairs: &[(&[u32], i64)]| -> BTreeMap<Partition, BigInt> {
        pairs.iter().map(|(p, c)| (part(p), BigInt::from(*c))).collect()
    };
    let got = entries("1,2:-", 2)?;
    let want = big(&[(&[], 1), (&[1], 2), (&[1, 1], 4)]);
    ensure(got == want, || format!("[1,2]- d=2: {got:?}"))?;
    for q in 3..=5i64 {
        let got = entries(&format!("1,{q},1:-"), 4)?;
        let want = big(&[
            (&[], 1),
            (&[1], q),
            (&[1, 1], q * q - 1),
            (&[2], 1),
            (&[2, 1], q),
            (&[2, 2], 1),
        ]);
        ensure(got == want, || format!("[1,{q},1]- d=2: {got:?}"))?;
    }
    Ok("[1,2]- and [1,q,1]- for q = 3, 4, 5".into())
}

fn order_one_decomposition() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for kind in [StatisticsKind::FermionicLike, StatisticsKind::BosonicLike] {
        for q in [2u64, 3] {
            let spec = StatisticsSpec::new(kind, vec![1, q]).map_err(|e| e.to_string())?;
            for d in 2..=4usize {
                let got = decompose(&spec, d, 4).map_err(|e| e.to_string())?.entries;
                let mut want = BTreeMap::new();
                for n in 0..=4u32 {
                    let lambda = match kind {
                        StatisticsKind::FermionicLike if n as usize <= d => {
                            Partition::column(n as usize)
                        }
                        StatisticsKind::FermionicLike => continue,
                        StatisticsKind::BosonicLike => Partition::row(n),
                    };
                    want.insert(lambda, BigInt::from(q).pow(n));
                }
                ensure(got == want, || format!("{spec} d={d}: {got:?}"))?;
                checked += 1;
            }
        }
    }
    within_runtime(start, Duration::from_secs(10))?;
    Ok(format!("{checked} (label, d) cases"))
}

fn real_roots_vs_positivity() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut total = 0;
    let mut valid = 0;
    for kind in [StatisticsKind::FermionicLike, StatisticsKind::BosonicLike] {
        let q0_max = if kind == StatisticsKind::BosonicLike { 1 } else { 5 };
        let mut labels = Vec::new();
        for q0 in 1..=q0_max {
            for q1 in 1..=5 {
                labels.push(vec![q0, q1]);
                labels.extend((1..=5).map(|q2| vec![q0, q1, q2]));
            }
        }
        for q in labels {
            let spec = StatisticsSpec::new(kind, q).map_err(|e| e.to_string())?;
            let rooted = is_valid_statistics(&spec).valid;
            let series = character_series(&spec, 12).map_err(|e| e.to_string())?;
            let tp = totally_positive_upto(&series, 4).map_err(|e| e.to_string())?.holds();
            total += 1;
            valid += rooted as usize;
            if rooted != tp {
                mismatches.push(spec.to_string());
            }
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("{} of {total} labels are real-rooted false but TP to order 4: {}", mismatches.len(), mismatches.join(", "))
    })?;
    within_runtime(start, Duration::from_secs(30))?;
    Ok(format!("{total} labels, {valid} valid"))
}

fn uniqueness() -> Outcome {
    let mut free = Vec::new();
    for kind in [StatisticsKind::FermionicLike, StatisticsKind::BosonicLike] {
        for q in 1..=4u64 {
            let spec = StatisticsSpec::new(kind, vec![1, q]).map_err(|e| e.to_string())?;
            if decompose(&spec, 2, 2).map_err(|e| e.to_string())?.is_multiplicity_free() {
                free.push(spec.to_string());
            }
        }
    }
    let want = vec![StatisticsSpec::fermions().to_string(), StatisticsSpec::bosons().to_string()];
    ensure(free == want, || format!("multiplicity-free: {free:?}"))?;
    Ok(format!("only {}", want.join(" and ")))
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `∏_k χ₁(e^{iθ_k})` keeping total excitation `≤ cutoff`, by graded
/// polynomial multiplication.
fn truncated_character_product(a: &[BigInt], thetas: &[f64], cutoff: usize) -> Complex64 {
    let mut acc = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    for &t in thetas {
        let mut next = vec![Complex64::new(0.0, 0.0); cutoff + 1];
        for (i, x) in acc.iter().enumerate() {
            for (s, c) in a.iter().enumerate().take(cutoff + 1 - i) {
                let c = c.to_f64().expect("small coefficient");
                next[i + s] += x * Complex64::from_polar(c, s as f64 * t);
            }
        }
        acc = next;
    }
    acc.iter().sum()
}

fn representations() -> Outcome {
    let specs = ["1,1:-", "1,1:+", "1,2:-", "1,2:+"].map(label);
    let (mut worst_u, mut worst_h, mut worst_c) = (0.0f64, 0.0f64, 0.0f64);
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for d in 1..=3usize {
            let g = ModeUnitary::haar(d, &mut rng);
            let h = ModeUnitary::haar(d, &mut rng);
            let gh = g.compose(&h);
            let thetas: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.2..3.2)).collect();
            let diag = ModeUnitary::phases(&thetas);
            for spec in &specs {
                let top = if spec.is_fermionic() { d } else { 3 };
                let mut trace = Complex64::new(0.0, 0.0);
                for n in 0..=top {
                    let err = |e: transtat_core::dynamics::DynamicsError| format!("{spec} N={n}: {e}");
                    let rg = transtat_rep(spec, &g, n).map_err(err)?;
                    let rh = transtat_rep(spec, &h, n).map_err(err)?;
                    let rgh = transtat_rep(spec, &gh, n).map_err(err)?;
                    let dim = rg.basis.len();
                    worst_u = worst_u
                        .max(max_abs(&(rg.matrix.adjoint() * &rg.matrix - DMatrix::identity(dim, dim))));
                    worst_h = worst_h.max(max_abs(&(&rg.matrix * &rh.matrix - &rgh.matrix)));
                    trace += transtat_rep(spec, &diag, n).map_err(err)?.matrix.trace();
                }
                let cutoff = if spec.is_fermionic() { d * spec.order() } else { 3 };
                let a = single_mode_character(spec, cutoff).map_err(|e| e.to_string())?;
                let product = truncated_character_product(a.coeffs(), &thetas, cutoff);
                let via_trace = character_trace(spec, &thetas, 3).map_err(|e| e.to_string())?;
                worst_c = worst_c.max((trace - product).norm()).max((via_trace - product).norm());
            }
        }
    }
    ensure(worst_u <= 1e-10, || format!("unitarity deviation {worst_u:e}"))?;
    ensure(worst_h <= 1e-9, || format!("homomorphism deviation {worst_h:e}"))?;
    ensure(worst_c <= 1e-9, || format!("character deviation {worst_c:e}"))?;
    Ok(format!("max deviations {worst_u:.1e} / {worst_h:.1e} / {worst_c:.1e}"))
}

fn f_numbers() -> Outcome {
    let spectrum = |s: &str, cutoff| excitation_spectrum(&label(s), cutoff).map_err(|e| e.to_string());
    for alpha in 1..=5u32 {
        let want: Vec<u32> = std::iter::once(0).chain(std::iter::repeat_n(1, alpha as usize)).collect();
        let got = spectrum(&format!("1,{alpha}:-"), 0)?;
        ensure(got == want, || format!("[1,{alpha}]-: {got:?}"))?;
    }
    for q in 2..=5u32 {
        let want: Vec<u32> = std::iter::once(0)
            .chain(std::iter::repeat_n(1, q as usize))
            .chain(std::iter::once(2))
            .collect();
        let got = spectrum(&format!("1,{q},1:-"), 0)?;
        ensure(got == want, || format!("[1,{q},1]-: {got:?}"))?;
    }
    for beta in 1..=4usize {
        let got = spectrum(&format!("1,{beta}:+"), 2)?;
        let counts: Vec<usize> = (0..=2).map(|k| got.iter().filter(|&&f| f == k).count()).collect();
        ensure(counts == vec![1, beta, beta * beta], || format!("[1,{beta}]+: {counts:?}"))?;
    }
    Ok("order-one and [1,q,1]- tables".into())
}

fn thermodynamics() -> Outcome {
    let e = |err: transtat_core::thermo::ThermoError| err.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst_mu, mut worst_s) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let d = rng.gen_range(2..=5usize);
        let energies: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..3.0)).collect();
        let spectrum = Spectrum::new(energies).map_err(e)?;
        for beta in [0.5, 1.0, 5.0] {
            for kind in ["-", "+"] {
                let n = if kind == "-" { 0.5 * d as f64 } else { 1.5 };
                let base = label(&format!("1,1:{kind}"));
                let mu1 = solve_mu(&base, &spectrum, beta, n).map_err(e)?;
                let s1 = thermo_report(&base, &spectrum, EnsembleParams::new(beta, mu1).map_err(e)?)
                    .map_err(e)?
                    .entropy;
                for q in [2u64, 3] {
                    let spec = label(&format!("1,{q}:{kind}"));
                    let ln_q = (q as f64).ln();
                    let mu = solve_mu(&spec, &spectrum, beta, n).map_err(e)?;
                    worst_mu = worst_mu.max((mu - (mu1 - ln_q / beta)).abs());
                    let s = thermo_report(&spec, &spectrum, EnsembleParams::new(beta, mu).map_err(e)?)
                        .map_err(e)?
                        .entropy;
                    worst_s = worst_s.max((s - s1 - n * ln_q).abs());
                }
            }
        }
    }
    ensure(worst_mu <= 1e-9, || format!("chemical potential shift off by {worst_mu:e}"))?;
    ensure(worst_s <= 1e-6, || format!("entropy difference off by {worst_s:e}"))?;

    let tf = label("1,2:-");
    let spectrum = Spectrum::new(vec![0.0, 1.0, 2.0]).map_err(e)?;
    let mu = solve_mu(&tf, &spectrum, 1e3, 3.0).map_err(e)?;
    let s = thermo_report(&tf, &spectrum, EnsembleParams::new(1e3, mu).map_err(e)?).map_err(e)?.entropy;
    let residual = (s - 3.0 * 2f64.ln()).abs();
    ensure(residual <= 1e-4, || format!("residual entropy {s} vs 3 ln 2"))?;

    let mut worst_q1 = 0.0f64;
    for beta in [0.3, 1.0, 4.0] {
        for x in [-3.0, -0.5, 0.0, 0.7, 2.5] {
            let p = EnsembleParams::new(beta, 0.25).map_err(e)?;
            let eps = 0.25 + x / beta;
            let fd = mean_occupation(&StatisticsSpec::fermions(), eps, p).map_err(e)?;
            worst_q1 = worst_q1.max((fd - 1.0 / (x.exp() + 1.0)).abs() / fd);
            if x > 0.0 {
                let be = mean_occupation(&StatisticsSpec::bosons(), eps, p).map_err(e)?;
                worst_q1 = worst_q1.max((be - 1.0 / x.exp_m1()).abs() / be);
            }
        }
    }
    ensure(worst_q1 <= 1e-14, || format!("q=1 recovery relative error {worst_q1:e}"))?;

    let mut worst_sum = 0.0f64;
    for spec in ["1,2:-", "1,3:-", "1,3,1:-"].map(label) {
        for energies in [vec![0.4], vec![-0.2, 0.9]] {
            let spectrum = Spectrum::new(energies.clone()).map_err(e)?;
            let p = EnsembleParams::new(1.3, 0.1).map_err(e)?;
            let log_z = grand_log_z(&spec, &spectrum, p).map_err(e)?;
            let mut z = 0.0;
            for state in enumerate_basis(&spec, energies.len(), 0).map_err(|x| x.to_string())? {
                let energy = state_energy(&spec, &state, &energies).map_err(|x| x.to_string())?;
                let k = excitation_number(&spec, &state).map_err(|x| x.to_string())? as f64;
                z += (-p.beta * (energy - p.mu * k)).exp();
            }
            worst_sum = worst_sum.max((log_z - z.ln()).abs());
        }
    }
    ensure(worst_sum <= 1e-10, || format!("state sum mismatch {worst_sum:e}"))?;
    Ok(format!(
        "μ shift {worst_mu:.1e}, ΔS {worst_s:.1e}, residual S err {residual:.1e}, state sum {worst_sum:.1e}"
    ))
}

fn oracle_agreement() -> Outcome {
    let valid = [
        "1,1:-", "1,2:-", "1,3,1:-", "2,3:-", "1,4,4:-", "1,1:+", "1,2:+", "1,3,1:+", "1,5,6:+",
    ];
    let mut series: Vec<(String, IntegerSeries)> = valid
        .iter()
        .map(|s| {
            let spec = label(s);
            (spec.to_string(), single_mode_character(&spec, 8).expect("valid label"))
        })
        .collect();
    let invalid = label("1,1,2:-");
    assert!(!is_valid_statistics(&invalid).valid);
    series.push((invalid.to_string(), character_series(&invalid, 8).map_err(|e| e.to_string())?));

    let mut negative_seen = false;
    for (name, a) in &series {
        for d in 1..=3 {
            let fast = schur_expand_product(a, d, 5).map_err(|e| e.to_string())?;
            let slow = schur_expand_oracle(a, d, 5).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("{name} d={d}: {fast:?} vs {slow:?}"))?;
            if name == &invalid.to_string() {
                negative_seen |= fast.values().any(Signed::is_negative);
            }
        }
    }
    ensure(negative_seen, || "invalid label produced no negative coefficient".into())?;
    Ok(format!("{} labels, d ≤ 3, weight ≤ 5", series.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("HOM interference", hom),
        ("1+x² counterexample", counterexample),
        ("multiplicity tables", multiplicity_tables),
        ("order-one decomposition", order_one_decomposition),
        ("real roots vs total positivity", real_roots_vs_positivity),
        ("multiplicity-free uniqueness", uniqueness),
        ("representation properties", representations),
        ("excitation tables", f_numbers),
        ("thermodynamics", thermodynamics),
        ("oracle agreement", oracle_agreement),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
