//! Command implementations for the `qexpander` binary.
//!
//! Every command returns its stdout text and exit code instead of printing,
//! so tests can drive them in-process. Exit codes: 0 success, 1 usage or
//! compute error, 2 gap inequality violated.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qexpander::cayley::{build_walk, classical_lambda2, Method};
use qexpander::channel::InstanceSummary;
use qexpander::rep::{completeness_of, left_translation_residual, qft_matrix, IrrepLabel};
use qexpander::standard::{standard_channel_lambda2, DEFAULT_MAX_N};
use qexpander::{
    list_irreps, verify_gap_inequality, ExplicitPermutations, GapOptions, GeneratorSet, GroupSpec, IrrepHandle,
    MethodChoice, PowerOptions, SpectralReport, DEFAULT_ELEMENT_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// Column order of sweep and gap CSV output.
pub const CSV_COLUMNS: [&str; 9] =
    ["trial", "irrep", "dim", "degree", "classical_lambda2", "quantum_lambda2", "margin", "holds", "error"];

/// Default inequality tolerance for `standard-gap`.
pub const STANDARD_GAP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "qexpander", version, about = "Quantum expanders from Cayley graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dense,
    #[value(alias = "iterative")]
    Iter,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Dense => MethodChoice::Dense,
            MethodArg::Iter => MethodChoice::Iterative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct NumericArgs {
    /// Slack allowed in `quantum <= classical + tol`
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for power-iteration restarts and random generator sets
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest group order that may be enumerated
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    pub cap: usize,
    /// Power-iteration budget per restart
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the classical and quantum second singular values
    Gap {
        instance: PathBuf,
        #[arg(long)]
        irrep: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Run the gap comparison over irreps and (random) generator sets
    Sweep {
        instance: PathBuf,
        /// `all` or a single irrep label
        #[arg(long, default_value = "all")]
        irrep: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Draw a fresh random generator set of this size per trial
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Check that the Fourier transform block-diagonalizes left translations
    QftCheck {
        instance: PathBuf,
        #[arg(long, default_value_t = qexpander::rep::QFT_CAP)]
        cap: usize,
    },
    /// List the irreps of the instance's group
    Irreps {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Matrix-free gap estimate for the standard irrep of S_{N+1}
    StandardGap {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = STANDARD_GAP_TOLERANCE)]
        tol: f64,
        /// Largest (N+1)! for which the classical walk is enumerated
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        /// Largest N accepted
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
}

/// Instance file contents.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub irrep: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.group.validate()?;
        Ok(file)
    }

    /// The generator set, or `None` for a template without generators.
    pub fn generator_set(&self) -> Result<Option<GeneratorSet>> {
        if self.generators.is_empty() {
            return Ok(None);
        }
        Ok(Some(GeneratorSet::parse(self.group.clone(), &self.generators)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

/// 2 when the report shows a violation, else 0.
pub fn exit_code_for(report: &SpectralReport) -> i32 {
    match report.inequality_holds {
        Some(false) => 2,
        _ => 0,
    }
}

pub fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Gap { instance, irrep, method, format, numeric } => {
            cmd_gap(&InstanceFile::load(&instance)?, irrep.as_deref(), method.into(), format, &numeric)
        }
        Command::Sweep { instance, irrep, trials, degree, method, format, numeric } => {
            let file = InstanceFile::load(&instance)?;
            cmd_sweep(&file, &irrep, trials, degree, method.into(), format, &numeric)
        }
        Command::QftCheck { instance, cap } => cmd_qft_check(&InstanceFile::load(&instance)?, cap),
        Command::Irreps { instance, cap } => cmd_irreps(&InstanceFile::load(&instance)?, cap),
        Command::StandardGap { n, degree, seed, tol, cap, max_n, max_iter } => {
            cmd_standard_gap(n, degree, seed, tol, cap, max_n, max_iter)
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn gap_options(file: &InstanceFile, method: MethodChoice, numeric: &NumericArgs) -> GapOptions {
    let seed = numeric.seed.or(file.seed).unwrap_or(0);
    GapOptions {
        method,
        tolerance: numeric.tol.or(file.tolerance).unwrap_or(qexpander::channel::DEFAULT_GAP_TOLERANCE),
        power: PowerOptions { max_iter: numeric.max_iter, ..PowerOptions::default() }.with_seed(seed),
        cap: numeric.cap,
    }
}

/// The irrep named by the flag or file, or the only nontrivial one.
fn resolve_irrep(group: &GroupSpec, explicit: Option<&str>, cap: usize) -> Result<IrrepHandle> {
    if let Some(label) = explicit {
        return Ok(IrrepHandle::parse(group, label)?);
    }
    let mut nontrivial: Vec<_> = list_irreps(group, cap)?.into_iter().filter(|h| !h.is_trivial()).collect();
    match nontrivial.len() {
        1 => Ok(nontrivial.remove(0)),
        0 => bail!("{group} has no nontrivial irrep"),
        k => bail!("{group} has {k} nontrivial irreps; choose one with --irrep"),
    }
}

pub fn cmd_gap(
    file: &InstanceFile,
    irrep: Option<&str>,
    method: MethodChoice,
    format: Format,
    numeric: &NumericArgs,
) -> Result<Output> {
    let gens = file.generator_set()?.ok_or_else(|| anyhow!("instance has no generators"))?;
    let h = resolve_irrep(&file.group, irrep.or(file.irrep.as_deref()), numeric.cap)?;
    let opts = gap_options(file, method, numeric);
    let mut report = verify_gap_inequality(&file.group, &gens, &h, &opts)?;
    report.instance.seed = numeric.seed.or(file.seed);
    let stdout = match format {
        Format::Json => json_line(&report)?,
        Format::Csv => {
            let row = SweepRow::from_report(0, &report);
            csv_text(std::slice::from_ref(&row))?
        }
    };
    Ok(Output { stdout, code: exit_code_for(&report) })
}

/// One sweep result; numeric fields are empty when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub trial: usize,
    pub irrep: String,
    pub dim: Option<usize>,
    pub degree: usize,
    pub classical_lambda2: Option<f64>,
    pub quantum_lambda2: Option<f64>,
    pub margin: Option<f64>,
    pub holds: Option<bool>,
    pub error: Option<String>,
}

impl SweepRow {
    fn from_report(trial: usize, r: &SpectralReport) -> Self {
        SweepRow {
            trial,
            irrep: r.instance.irrep.clone(),
            dim: Some(r.instance.dim),
            degree: r.instance.degree,
            classical_lambda2: r.classical_lambda2,
            quantum_lambda2: Some(r.quantum_lambda2),
            margin: r.margin(),
            holds: r.inequality_holds,
            error: None,
        }
    }

    fn failed(trial: usize, irrep: String, degree: usize, err: impl std::fmt::Display) -> Self {
        SweepRow {
            trial,
            irrep,
            dim: None,
            degree,
            classical_lambda2: None,
            quantum_lambda2: None,
            margin: None,
            holds: None,
            error: Some(err.to_string()),
        }
    }
}

fn csv_text(rows: &[SweepRow]) -> Result<String> {
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(T::to_string).unwrap_or_default()
    }
    // shortest round-trip form, same as the JSON output
    fn num(v: &Option<f64>) -> Result<String> {
        Ok(match v {
            Some(x) => serde_json::to_string(x)?,
            None => String::new(),
        })
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.irrep.clone(),
            cell(&r.dim),
            r.degree.to_string(),
            num(&r.classical_lambda2)?,
            num(&r.quantum_lambda2)?,
            num(&r.margin)?,
            cell(&r.holds),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Rows come out in (trial, irrep) order. With `degree` set, or when the
/// instance has no generators, trial `t` draws its generator set from
/// stream `t` of the seeded RNG; otherwise every trial reuses the
/// instance's generators.
pub fn cmd_sweep(
    file: &InstanceFile,
    irrep: &str,
    trials: usize,
    degree: Option<usize>,
    method: MethodChoice,
    format: Format,
    numeric: &NumericArgs,
) -> Result<Output> {
    let group = &file.group;
    let fixed = file.generator_set()?;
    let size = match (degree, &fixed) {
        (Some(d), _) => d,
        (None, Some(g)) => g.degree(),
        (None, None) => bail!("instance has no generators; pass --degree"),
    };
    if size == 0 {
        bail!("generator set size must be positive");
    }
    let irreps = if irrep == "all" {
        list_irreps(group, numeric.cap)?.into_iter().filter(|h| !h.is_trivial()).collect()
    } else {
        vec![IrrepHandle::parse(group, irrep)?]
    };
    let opts = gap_options(file, method, numeric);
    let seed = opts.power.seed;

    let mut rows = Vec::new();
    for trial in 0..trials {
        let gens = match (&fixed, degree) {
            (Some(g), None) => g.clone(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial as u64);
                GeneratorSet::random(group.clone(), size, &mut rng)?
            }
        };
        for h in &irreps {
            rows.push(match verify_gap_inequality(group, &gens, h, &opts) {
                Ok(report) => SweepRow::from_report(trial, &report),
                Err(e) => SweepRow::failed(trial, h.label().to_string(), size, e),
            });
        }
    }
    let code = if rows.iter().any(|r| r.holds == Some(false)) { 2 } else { 0 };
    let stdout = match format {
        Format::Csv => csv_text(&rows)?,
        Format::Json => rows.iter().map(json_line).collect::<Result<String>>()?,
    };
    Ok(Output { stdout, code })
}

#[derive(Debug, Serialize)]
struct QftCheckReport {
    schema: u32,
    group: String,
    order: String,
    max_residual: f64,
    worst_element: String,
    unitarity_residual: f64,
    sum_dim_squared: usize,
    complete: bool,
}

pub fn cmd_qft_check(file: &InstanceFile, cap: usize) -> Result<Output> {
    let q = qft_matrix(&file.group, cap)?;
    let mut worst = (0.0, String::new());
    for x in q.elements() {
        let r = left_translation_residual(&q, x)?;
        if worst.1.is_empty() || r > worst.0 {
            worst = (r, x.to_string());
        }
    }
    let report = QftCheckReport {
        schema: SCHEMA,
        group: file.group.to_string(),
        order: file.group.order().to_string(),
        max_residual: worst.0,
        worst_element: worst.1,
        unitarity_residual: q.unitarity_residual(),
        sum_dim_squared: q.irreps.iter().map(|h| h.dim() * h.dim()).sum(),
        complete: completeness_of(&q.irreps, &file.group),
    };
    Ok(Output::ok(json_line(&report)?))
}

#[derive(Debug, Serialize)]
struct IrrepEntry {
    label: String,
    dim: usize,
    trivial: bool,
    real: bool,
}

#[derive(Debug, Serialize)]
struct IrrepsReport {
    schema: u32,
    group: String,
    order: String,
    irreps: Vec<IrrepEntry>,
    sum_dim_squared: usize,
    complete: bool,
}

pub fn cmd_irreps(file: &InstanceFile, cap: usize) -> Result<Output> {
    let irreps = list_irreps(&file.group, cap)?;
    let report = IrrepsReport {
        schema: SCHEMA,
        group: file.group.to_string(),
        order: file.group.order().to_string(),
        irreps: irreps
            .iter()
            .map(|h| IrrepEntry {
                label: h.label().to_string(),
                dim: h.dim(),
                trivial: h.is_trivial(),
                real: h.is_real(),
            })
            .collect(),
        sum_dim_squared: irreps.iter().map(|h| h.dim() * h.dim()).sum(),
        complete: completeness_of(&irreps, &file.group),
    };
    Ok(Output::ok(json_line(&report)?))
}

/// `degree` uniform permutations of `N + 1` points drawn from `seed`.
pub fn standard_generators(n: usize, degree: usize, seed: u64) -> Result<ExplicitPermutations> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ExplicitPermutations::random(n, degree, &mut rng)?)
}

pub fn cmd_standard_gap(
    n: usize,
    degree: usize,
    seed: u64,
    tol: f64,
    cap: usize,
    max_n: usize,
    max_iter: usize,
) -> Result<Output> {
    if n < 2 {
        bail!("N must be at least 2, got {n}");
    }
    if degree == 0 {
        bail!("degree must be positive");
    }
    let oracle = standard_generators(n, degree, seed)?;
    let power = PowerOptions { max_iter, ..PowerOptions::default() }.with_seed(seed);
    let gens: Vec<usize> = (0..degree).collect();
    let quantum = standard_channel_lambda2(&oracle, &gens, &power, max_n)?;

    let group = GroupSpec::symmetric(n + 1);
    let gen_set = oracle.generator_set()?;
    let mut notes = Vec::new();
    let (classical, reason, classical_iters, classical_converged) = match group.order_within(cap) {
        Ok(_) => {
            let walk = build_walk(&group, &gen_set, cap)?;
            let c = classical_lambda2(&walk, &power)?;
            (Some(c.value), None, c.iterations, c.converged)
        }
        Err(_) => (None, Some("group not enumerable".to_string()), 0, true),
    };
    if !quantum.converged {
        notes.push("quantum power iteration did not converge".to_string());
    }
    if !classical_converged {
        notes.push("classical power iteration did not converge".to_string());
    }
    let mut report = SpectralReport {
        schema: SpectralReport::SCHEMA,
        classical_lambda2: classical,
        classical_reason: reason,
        quantum_lambda2: quantum.value,
        inequality_holds: None,
        method: Method::Iterative,
        tolerance: tol,
        iterations: quantum.iterations + classical_iters,
        converged: quantum.converged && classical_converged,
        notes,
        instance: InstanceSummary {
            group: group.to_string(),
            order: group.order().to_string(),
            generators: gen_set.to_strings(),
            irrep: IrrepLabel::Partition(qexpander::Partition::hook(n)).to_string(),
            dim: n,
            degree,
            seed: Some(seed),
        },
    };
    report.evaluate();
    Ok(Output { stdout: json_line(&report)?, code: exit_code_for(&report) })
}
