//! `transtat` command-line front end.
//!
//! Every command writes its result to standard output (JSON, or CSV where
//! requested) and diagnostics to standard error. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | other failure |
//! | 2 | unparsable arguments or label |
//! | 3 | label is not a valid statistics |
//! | 4 | matrix is not unitary |
//! | 5 | occupation out of range or malformed input state |
//! | 6 | grand-canonical series diverges |

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use transtat_core::classify::{is_valid_statistics, ClassifyError, StatisticsSpec};
use transtat_core::dynamics::{self, DynamicsError};
use transtat_core::fock::{self, FockError};
use transtat_core::symfunc::{schur_expand_oracle, SymfuncError};
use transtat_core::thermo::{self, ThermoError};
use transtat_core::{
    AmplitudeVector, LabeledState, MaxOccupation, ModeUnitary, OccupationState,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Tolerance on `g†g = 1` for matrices read from files.
pub const FILE_UNITARITY_TOLERANCE: f64 = 1e-9;

pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INVALID_STATISTICS: i32 = 3;
    pub const BAD_UNITARY: i32 = 4;
    pub const BAD_OCCUPATION: i32 = 5;
    pub const DIVERGENCE: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(name = "transtat", version, about = "Generalized quantum statistics toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validity, irreducibility and maximal occupation of a label.
    Classify(ClassifyArgs),
    /// Multiplicities of the unitary-group sectors of the d-mode Fock space.
    Decompose(DecomposeArgs),
    /// Detection probabilities after a mode unitary acts on a Fock state.
    Simulate(SimulateArgs),
    /// Grand-canonical ideal-gas thermodynamics.
    Thermo(ThermoArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Statistics label, e.g. `1,2:-`.
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub label: String,
    #[arg(long = "modes")]
    pub modes: usize,
    /// Largest partition weight; defaults to d·deg for fermionic-like labels
    /// (the whole space) and 4 otherwise.
    #[arg(long = "max-weight")]
    pub max_weight: Option<u32>,
    /// Also run the brute-force polynomial expansion and compare.
    #[arg(long = "check-oracle")]
    pub check_oracle: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub label: String,
    #[arg(long = "modes")]
    pub modes: usize,
    /// Occupations `n1,...,nd`, or ordinary occupations with auxiliary
    /// labels `k1,...,kd,aux=z1:z2` (one label per occupied mode, digits
    /// within a label separated by `.`).
    #[arg(long = "input")]
    pub input: String,
    /// `bs`, `file PATH` or `haar SEED` (also `file:PATH`, `haar:SEED`).
    #[arg(long = "unitary", num_args = 1..=2, value_names = ["KIND", "ARG"])]
    pub unitary: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ThermoArgs {
    pub label: String,
    /// Comma-separated mode energies.
    #[arg(long = "energies", allow_hyphen_values = true)]
    pub energies: Option<String>,
    #[arg(long = "beta", allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long = "mu", allow_hyphen_values = true, conflicts_with = "target_n")]
    pub mu: Option<f64>,
    /// Solve for the chemical potential giving this mean excitation.
    #[arg(long = "target-N", allow_hyphen_values = true)]
    pub target_n: Option<f64>,
    /// `lo:hi:steps`; emits `epsilon,n,flag` CSV instead of a report.
    #[arg(long = "sweep", allow_hyphen_values = true)]
    pub sweep: Option<String>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    /// Machine-readable body echoed on standard output.
    pub body: Option<Value>,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into(), body: None }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        let code = match &e {
            ClassifyError::InvalidLabel(_) | ClassifyError::InvalidSpec(_) => exit::PARSE,
            ClassifyError::Invalid(_) => exit::INVALID_STATISTICS,
            _ => exit::OTHER,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<SymfuncError> for CliError {
    fn from(e: SymfuncError) -> Self {
        CliError::new(exit::OTHER, e.to_string())
    }
}

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::Classify(c) => c.into(),
            FockError::OccupationOutOfRange { .. }
            | FockError::ModeCountMismatch { .. }
            | FockError::MalformedLabels(_)
            | FockError::SectorOutOfRange { .. } => CliError::new(exit::BAD_OCCUPATION, e.to_string()),
            other => CliError::new(exit::OTHER, other.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Fock(f) => f.into(),
            DynamicsError::NotUnitary { .. } => CliError::new(exit::BAD_UNITARY, e.to_string()),
            DynamicsError::ModeCountMismatch { .. } | DynamicsError::SectorOutOfRange { .. } => {
                CliError::new(exit::BAD_OCCUPATION, e.to_string())
            }
            other => CliError::new(exit::OTHER, other.to_string()),
        }
    }
}

impl From<ThermoError> for CliError {
    fn from(e: ThermoError) -> Self {
        let mut body = json!({ "code": e.code(), "message": e.to_string() });
        let code = match &e {
            ThermoError::Classify(c) => return c.clone().into(),
            ThermoError::Divergent { mode, .. } => {
                body["mode"] = json!(mode);
                exit::DIVERGENCE
            }
            ThermoError::InvalidParams(_) => exit::PARSE,
            ThermoError::TargetOutOfRange { .. } | ThermoError::NoConvergence { .. } => exit::OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
            body: Some(json!({ "schema_version": SCHEMA_VERSION, "error": body })),
        }
    }
}

type CmdResult = Result<(String, i32), CliError>;

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Thermo(a) => cmd_thermo(a),
    };
    match result {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            if let Some(body) = &e.body {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(body).unwrap_or_default());
            }
            let _ = writeln!(err, "transtat: {}", e.message);
            e.code
        }
    }
}

fn parse_label(text: &str) -> Result<StatisticsSpec, CliError> {
    text.parse::<StatisticsSpec>().map_err(CliError::from)
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

#[derive(Serialize)]
struct RootsOut {
    degree: usize,
    distinct_real: usize,
    negative: usize,
    positive: usize,
}

#[derive(Serialize)]
struct ClassifyOut {
    schema_version: u32,
    label: String,
    wire: String,
    kind: &'static str,
    valid: bool,
    irreducible: Option<bool>,
    order: usize,
    max_occupation: Value,
    unique_vacuum: bool,
    roots: RootsOut,
    reason: Option<String>,
}

fn kind_name(spec: &StatisticsSpec) -> &'static str {
    if spec.is_fermionic() {
        "fermionic-like"
    } else {
        "bosonic-like"
    }
}

pub fn cmd_classify(args: &ClassifyArgs) -> CmdResult {
    let spec = parse_label(&args.label)?;
    let report = is_valid_statistics(&spec);
    let out = ClassifyOut {
        schema_version: SCHEMA_VERSION,
        label: report.label.clone(),
        wire: spec.wire_label(),
        kind: kind_name(&spec),
        valid: report.valid,
        irreducible: report.irreducible,
        order: report.order,
        max_occupation: match report.max_occupation {
            MaxOccupation::Finite(p) => json!(p),
            MaxOccupation::Infinite => json!("infinite"),
        },
        unique_vacuum: report.unique_vacuum,
        roots: RootsOut {
            degree: report.roots.degree,
            distinct_real: report.roots.distinct_real,
            negative: report.roots.negative,
            positive: report.roots.positive,
        },
        reason: report.failure_reason.clone(),
    };
    let code = if report.valid { exit::OK } else { exit::INVALID_STATISTICS };
    Ok((pretty(&out), code))
}

fn big_to_json(value: &num_bigint::BigInt) -> Value {
    match value.to_i64() {
        Some(v) => json!(v),
        None => json!(value.to_string()),
    }
}

pub fn cmd_decompose(args: &DecomposeArgs) -> CmdResult {
    let spec = parse_label(&args.label)?;
    let d = args.modes;
    let max_weight = args.max_weight.unwrap_or(if spec.is_fermionic() {
        (d * spec.order()) as u32
    } else {
        4
    });
    let dec = fock::decompose(&spec, d, max_weight)?;

    let oracle = if args.check_oracle {
        let series = transtat_core::classify::single_mode_character(&spec, max_weight as usize + d)?;
        match schur_expand_oracle(&series, d, max_weight) {
            Ok(expected) => Some(json!({ "checked": true, "agrees": expected == dec.entries })),
            Err(e @ SymfuncError::OracleLimit(_)) => {
                Some(json!({ "checked": false, "reason": e.to_string() }))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let disagrees = oracle.as_ref().is_some_and(|o| o["agrees"] == json!(false));

    let text = match args.format {
        Format::Json => {
            let sectors: Vec<Value> = dec
                .entries
                .iter()
                .map(|(lambda, c)| {
                    json!({
                        "partition": lambda.parts(),
                        "display": lambda.to_string(),
                        "multiplicity": big_to_json(c),
                        "dimension": big_to_json(&lambda.dimension(d)),
                    })
                })
                .collect();
            let mut body = json!({
                "schema_version": SCHEMA_VERSION,
                "label": spec.to_string(),
                "modes": d,
                "max_weight": max_weight,
                "multiplicity_free": dec.is_multiplicity_free(),
                "dimension_check": dec.dimension_check,
                "sectors": sectors,
            });
            if let Some(o) = oracle {
                body["oracle"] = o;
            }
            pretty(&body)
        }
        Format::Csv => {
            let mut text = String::from("partition,multiplicity");
            for (lambda, c) in &dec.entries {
                text.push_str(&format!("\n\"{lambda}\",{c}"));
            }
            text
        }
    };
    Ok((text, if disagrees { exit::OTHER } else { exit::OK }))
}

/// Parsed `--input`: raw occupations, or ordinary occupations plus labels.
fn parse_input(spec: &StatisticsSpec, d: usize, text: &str) -> Result<OccupationState, CliError> {
    let bad = |msg: String| CliError::new(exit::PARSE, msg);
    let (numbers, aux) = match text.split_once("aux=") {
        Some((head, tail)) => (head.trim_end_matches(','), Some(tail)),
        None => (text, None),
    };
    let occupations: Vec<u64> = numbers
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad(format!("bad occupation {t:?} in --input"))))
        .collect::<Result<_, _>>()?;
    if occupations.len() != d {
        return Err(CliError::new(
            exit::BAD_OCCUPATION,
            format!("--input has {} occupations for {d} modes", occupations.len()),
        ));
    }
    let Some(aux) = aux else {
        return Ok(OccupationState::new(occupations));
    };
    let labels: Vec<Vec<u64>> = if aux.is_empty() {
        Vec::new()
    } else {
        aux.split(':')
            .map(|label| {
                label
                    .split('.')
                    .map(|z| z.trim().parse::<u64>().map_err(|_| bad(format!("bad label digit {z:?}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?
    };
    let labeled = LabeledState { ordinary: occupations, aux: labels };
    Ok(fock::map_l_inverse(spec, &labeled)?)
}

fn parse_unitary(parts: &[String], d: usize) -> Result<(ModeUnitary, String), CliError> {
    let bad = |msg: String| CliError::new(exit::PARSE, msg);
    let (kind, arg) = match parts {
        [one] => match one.split_once(':') {
            Some((k, a)) => (k.to_string(), Some(a.to_string())),
            None => (one.clone(), None),
        },
        [k, a] => (k.clone(), Some(a.clone())),
        _ => return Err(bad("--unitary expects bs, file PATH or haar SEED".into())),
    };
    match (kind.as_str(), arg) {
        ("bs", None) => {
            if d != 2 {
                return Err(CliError::new(
                    exit::BAD_UNITARY,
                    format!("the beam splitter acts on 2 modes, not {d}"),
                ));
            }
            Ok((ModeUnitary::beam_splitter(), "bs".into()))
        }
        ("haar", Some(seed)) => {
            let seed: u64 = seed.parse().map_err(|_| bad(format!("bad haar seed {seed:?}")))?;
            let g = ModeUnitary::haar(d, &mut ChaCha8Rng::seed_from_u64(seed));
            Ok((g, format!("haar {seed}")))
        }
        ("file", Some(path)) => {
            let g = read_unitary_file(&PathBuf::from(&path), d)?;
            Ok((g, format!("file {path}")))
        }
        (k, _) => Err(bad(format!("unknown --unitary form {k:?}"))),
    }
}

/// `d` rows of `2d` comma-separated reals, alternating real and imaginary
/// parts.
pub fn read_unitary_file(path: &std::path::Path, d: usize) -> Result<ModeUnitary, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(exit::OTHER, format!("cannot read {}: {e}", path.display())))?;
    let bad = |msg: String| CliError::new(exit::BAD_UNITARY, msg);
    let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if rows.len() != d {
        return Err(bad(format!("{} has {} rows, expected {d}", path.display(), rows.len())));
    }
    let mut entries = Vec::with_capacity(d * d);
    for (i, row) in rows.iter().enumerate() {
        let values: Vec<f64> = row
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad(format!("row {i}: bad number {t:?}"))))
            .collect::<Result<_, _>>()?;
        if values.len() != 2 * d {
            return Err(bad(format!("row {i} has {} columns, expected {}", values.len(), 2 * d)));
        }
        entries.extend(values.chunks(2).map(|c| Complex64::new(c[0], c[1])));
    }
    Ok(ModeUnitary::from_row_major(d, &entries, FILE_UNITARITY_TOLERANCE)?)
}

/// Rounds to 12 significant digits.
fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Probabilities below this are omitted from the table.
const PROBABILITY_FLOOR: f64 = 1e-12;

pub fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let spec = parse_label(&args.label)?;
    let report = is_valid_statistics(&spec);
    if !report.valid {
        return Err(ClassifyError::Invalid(Box::new(report)).into());
    }
    let d = args.modes;
    let input = parse_input(&spec, d, &args.input)?;
    fock::excitation_number(&spec, &input)?;
    let (g, unitary_name) = parse_unitary(&args.unitary, d)?;
    let output = dynamics::evolve(&spec, &g, &AmplitudeVector::basis_state(input.clone()))?;
    let probabilities = dynamics::detection_probabilities(&spec, &output)?;

    let mut table: Vec<(OccupationState, f64)> =
        probabilities.into_iter().filter(|(_, p)| *p >= PROBABILITY_FLOOR).collect();
    table.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let probabilities: Vec<Value> = table
        .iter()
        .map(|(s, p)| json!({ "occupation": s.occupations(), "probability": round12(*p) }))
        .collect();
    let amplitudes: Vec<Value> = output
        .basis
        .iter()
        .zip(&output.amplitudes)
        .filter(|(_, a)| a.norm_sqr() >= PROBABILITY_FLOOR)
        .map(|(s, a)| {
            json!({
                "occupation": s.occupations(),
                "amplitude": { "re": a.re, "im": a.im },
            })
        })
        .collect();
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "label": spec.to_string(),
        "modes": d,
        "input": input.occupations(),
        "unitary": unitary_name,
        "probabilities": probabilities,
        "amplitudes": amplitudes,
    });
    Ok((pretty(&body), exit::OK))
}

fn parse_reals(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::new(exit::PARSE, format!("bad {what} value {t:?}")))
        })
        .collect()
}

fn parse_sweep(text: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::new(exit::PARSE, format!("--sweep expects lo:hi:steps, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
        steps.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn cmd_thermo(args: &ThermoArgs) -> CmdResult {
    let spec = parse_label(&args.label)?;
    let spectrum = args
        .energies
        .as_deref()
        .map(|e| parse_reals(e, "energy").and_then(|v| Ok(thermo::Spectrum::new(v)?)))
        .transpose()?;
    let mu = match (args.mu, args.target_n) {
        (Some(mu), _) => mu,
        (None, Some(n)) => {
            let spectrum = spectrum
                .as_ref()
                .ok_or_else(|| CliError::new(exit::PARSE, "--target-N needs --energies"))?;
            thermo::solve_mu(&spec, spectrum, args.beta, n)?
        }
        (None, None) => return Err(CliError::new(exit::PARSE, "one of --mu or --target-N is required")),
    };
    let params = thermo::EnsembleParams::new(args.beta, mu)?;

    if let Some(range) = &args.sweep {
        let rows = thermo::sweep(&spec, parse_sweep(range)?, params)?;
        let mut buf = Vec::new();
        thermo::write_sweep_csv(&rows, &mut buf).expect("writing to memory");
        let text = String::from_utf8(buf).expect("ascii csv");
        return Ok((text.trim_end().to_string(), exit::OK));
    }

    let spectrum = spectrum.ok_or_else(|| CliError::new(exit::PARSE, "--energies is required"))?;
    let r = thermo::thermo_report(&spec, &spectrum, params)?;
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "label": spec.to_string(),
        "beta": args.beta,
        "mu": mu,
        "logZ": r.log_z,
        "mean_N": r.mean_n,
        "mean_E": r.mean_e,
        "entropy": r.entropy,
        "occupations": r.occupations,
    });
    Ok((pretty(&body), exit::OK))
}
