//! Command-line front end.
//!
//! Every command writes its numbers together with a [`RunManifest`] that
//! records the parsed arguments and the exact precision policy, so that
//! `casimir replay` can reproduce any output bit for bit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify_regions, critical_aspect_t0_at, find_critical_curve, linspace, normalized_convergence_profile,
    zero_force_surface, ConvergenceProfile, CurveMode, GridSpec, ProfileFamily, RegionMap, ROOT_TOL,
};
use crate::em::em_energy_finite_t;
use crate::em::em_energy_t0;
use crate::error::CasimirError;
use crate::fermion::{evaluate, parallel_plate, waveguide_finite_t, waveguide_t0, Axis, BoxGeometry, Normalization, ThermalState};
use crate::identity::{verification_grid, Identity, IdentityKind, IdentityReport, VERIFY_REL_TOL};
use crate::lattice::LatticeSum;
use crate::series::{PrecisionPolicy, SeriesValue};

/// Environment variable naming a JSON file with the default precision policy.
pub const POLICY_ENV: &str = "CASIMIR_POLICY";
pub const UNITS: &str = "natural units, hbar=c=k_B=1";
/// Identities agreeing to fewer digits fail `verify`.
pub const MIN_DIGITS: i32 = 7;

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const VERIFY_FAILED: i32 = 4;
    pub const BRACKET: i32 = 5;
}

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "casimir", version, about = "Thermal Casimir energies and forces in a rectangular box")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Relative tolerance of every series.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Maximum number of terms per series axis.
    #[arg(long, global = true)]
    pub max_index: Option<u64>,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Energy and forces at one point.
    Eval(EvalArgs),
    /// Check the lattice-sum identities numerically.
    Verify(VerifyArgs),
    /// Grid sweeps reproducing the force diagrams.
    Sweep(SweepArgs),
    /// Critical aspect ratios and lengths.
    Critical(CriticalArgs),
    /// Evaluate a single lattice sum given as JSON, e.g. '{"family":"y1","x":2}'.
    Series(SeriesArgs),
    /// Re-run the command recorded in a manifest or an output file.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Fermion,
    Em,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    /// Finite box with edges a, b, c.
    Box,
    /// Edge a infinite; per unit length.
    Waveguide,
    /// Edges a and c infinite; per unit area.
    Plate,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub field: Field,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    /// Temperature.
    #[arg(long = "T", default_value_t = 0.0)]
    pub temperature: f64,
    /// Force components to evaluate (a, b, c).
    #[arg(long = "force", visible_alias = "axis", value_delimiter = ',')]
    pub forces: Vec<Axis>,
    #[arg(long, value_enum, default_value_t = Limit::Box)]
    pub limit: Limit,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Identity name, e.g. schlomilch or three-partition-plus.
    #[arg(long)]
    pub identity: Option<IdentityKind>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    /// Run the fixed verification grid with this many tuples per identity.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Print one JSON report per line instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    /// Force signs and regions over a, c with b = 1 at T = 0.
    #[value(name = "t0-regions")]
    T0Regions,
    /// The same diagram at the temperature given by --T.
    #[value(name = "regions")]
    Regions,
    /// Sign field of f_a over a, b, c in [0.1, 2] at T = 1.
    #[value(name = "zero-surface-T1")]
    #[serde(rename = "zero-surface-T1")]
    ZeroSurfaceT1,
    /// Box (L, 1, L) normalized by the parallel plates.
    #[value(name = "plate-profile")]
    PlateProfile,
    /// Box (L, 1, 1) normalized by the waveguide.
    #[value(name = "waveguide-profile")]
    WaveguideProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub fig: Figure,
    #[arg(long, default_value_t = 3.0)]
    pub amax: f64,
    #[arg(long, default_value_t = 3.0)]
    pub cmax: f64,
    /// Points per grid axis.
    #[arg(long, default_value_t = 21)]
    pub n: usize,
    /// Temperature, overriding the preset.
    #[arg(long = "T")]
    pub temperature: Option<f64>,
    /// JSON grid file with lists a, b, c and a temperature; replaces the
    /// preset ranges. Profiles read their edges from a.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalMode {
    /// Waveguide ratio c/b at T = 0.
    AspectT0,
    /// Critical c of the waveguide versus b at fixed T.
    CCrVsB,
    /// Critical c of the waveguide versus T at fixed b.
    CCrVsT,
    /// Critical b of the box with a = c = 1 versus T.
    BCrVsT,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct CriticalArgs {
    #[arg(long, value_enum)]
    pub mode: CriticalMode,
    /// Temperature for c-cr-vs-b.
    #[arg(long = "T", default_value_t = 1.0)]
    pub temperature: f64,
    /// Short side for aspect-t0 and c-cr-vs-t.
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Sweep values, comma separated; each mode has a default.
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<f64>,
    /// Bisection tolerance in the geometric parameter.
    #[arg(long, default_value_t = ROOT_TOL)]
    pub root_tol: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SeriesArgs {
    pub sum: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// A JSON output or manifest, or a CSV whose first line holds the manifest.
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name, as given.
    pub argv: Vec<String>,
    pub params: serde_json::Value,
    pub policy: PrecisionPolicy,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub value: f64,
    pub error_bound: f64,
    pub normalization: Normalization,
    pub units: String,
}

impl OutputRecord {
    fn new(quantity: &str, v: SeriesValue, normalization: Normalization) -> Self {
        OutputRecord {
            quantity: quantity.to_string(),
            value: v.value,
            error_bound: v.error_bound,
            normalization,
            units: UNITS.to_string(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(CasimirError),
    VerifyFailed(usize),
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Compute(e) => match e {
                CasimirError::NonConvergence { .. } | CasimirError::Quadrature(_) => exit::NON_CONVERGENCE,
                CasimirError::Bracket { .. } => exit::BRACKET,
                CasimirError::Domain(_) | CasimirError::UnsupportedOrder(_) | CasimirError::InvalidPolicy(_) => {
                    exit::USAGE
                }
            },
            CliError::VerifyFailed(_) => exit::VERIFY_FAILED,
            CliError::Io { .. } => exit::IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::VerifyFailed(n) => write!(f, "{n} identity checks agreed to fewer than {MIN_DIGITS} digits"),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl From<CasimirError> for CliError {
    fn from(e: CasimirError) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_err(path, e))
}

/// The precision policy for `cli`: the file named by [`POLICY_ENV`] or the
/// default, then `--tol` and `--max-index`. Verification runs default to
/// [`VERIFY_REL_TOL`].
pub fn resolve_policy(cli: &Cli) -> CliResult<PrecisionPolicy> {
    let mut policy = match std::env::var_os(POLICY_ENV) {
        Some(path) => read_json(Path::new(&path))?,
        None => PrecisionPolicy::default(),
    };
    if matches!(cli.command, Command::Verify(_)) {
        policy.rel_tol = policy.rel_tol.min(VERIFY_REL_TOL);
    }
    if let Some(tol) = cli.tol {
        policy.rel_tol = tol;
    }
    if let Some(m) = cli.max_index {
        policy.max_index = m;
    }
    policy.validate()?;
    Ok(policy)
}

/// Parses `argv` (without the program name), runs it and returns the exit
/// code. Output goes to `--out` or `stdout`; diagnostics to `stderr`.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let full = std::iter::once("casimir".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let result = resolve_policy(&cli).and_then(|policy| execute(&cli, argv, policy, stdout, stderr));
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn execute(
    cli: &Cli,
    argv: &[String],
    policy: PrecisionPolicy,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    let start = Instant::now();
    let manifest = |command: &str| RunManifest {
        tool: "casimir".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        argv: argv.to_vec(),
        params: serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null),
        policy,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Eval(args) => {
            let records = cmd_eval(args, &policy)?;
            let doc = serde_json::json!({ "manifest": manifest("eval"), "records": records });
            emit(out, stdout, &pretty(&doc))
        }
        Command::Verify(args) => {
            let reports = cmd_verify(args, &policy)?;
            let failures = reports.iter().filter(|r| r.digits_agreed < MIN_DIGITS).count();
            let m = manifest("verify");
            let text = if args.json {
                let mut s = serde_json::to_string(&m).expect("manifest serializes") + "\n";
                for r in &reports {
                    s += &serde_json::to_string(r).expect("report serializes");
                    s.push('\n');
                }
                s
            } else {
                verify_table(&reports)
            };
            match out {
                Some(path) => {
                    let doc = serde_json::json!({ "manifest": m, "reports": reports });
                    write_file(path, &pretty(&doc))?;
                    stdout.write_all(text.as_bytes()).map_err(|e| io_err(Path::new("<stdout>"), e))?;
                }
                None => stdout.write_all(text.as_bytes()).map_err(|e| io_err(Path::new("<stdout>"), e))?,
            }
            if failures > 0 {
                return Err(CliError::VerifyFailed(failures));
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let output = cmd_sweep(args, &policy)?;
            let m = manifest("sweep");
            let text = match (args.format, &output) {
                (Format::Csv, SweepOutput::Regions(map)) => with_manifest_line(&m, &region_csv(map)),
                (Format::Csv, SweepOutput::Profile(p)) => with_manifest_line(&m, &profile_csv(p)),
                (Format::Json, SweepOutput::Regions(map)) => pretty(&serde_json::json!({ "manifest": m, "result": map })),
                (Format::Json, SweepOutput::Profile(p)) => pretty(&serde_json::json!({ "manifest": m, "result": p })),
            };
            if let SweepOutput::Profile(p) = &output {
                let _ = match p.converged_edge {
                    Some(e) => writeln!(stderr, "within 1% of the limit from edge {e}"),
                    None => writeln!(stderr, "profile did not reach 1% of the limit"),
                };
            }
            emit(out, stdout, &text)
        }
        Command::Critical(args) => {
            let result = cmd_critical(args, &policy)?;
            let doc = serde_json::json!({ "manifest": manifest("critical"), "result": result });
            emit(out, stdout, &pretty(&doc))
        }
        Command::Series(args) => {
            let sum: LatticeSum = serde_json::from_str(&args.sum).map_err(|e| CliError::Usage(format!("bad series: {e}")))?;
            let v = sum.evaluate(&policy)?;
            let doc = serde_json::json!({
                "manifest": manifest("series"),
                "series": sum,
                "value": v,
            });
            emit(out, stdout, &pretty(&doc))
        }
        Command::Replay(args) => replay(&args.path, cli.out.as_deref(), stdout, stderr),
    }
}

fn replay(path: &Path, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let manifest: RunManifest = if let Some(line) = text.strip_prefix("# ") {
        serde_json::from_str(line.lines().next().unwrap_or_default()).map_err(|e| io_err(path, e))?
    } else {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
        let m = v.get("manifest").cloned().unwrap_or(v);
        serde_json::from_value(m).map_err(|e| io_err(path, e))?
    };
    let full = std::iter::once("casimir".to_string()).chain(manifest.argv.iter().cloned());
    let mut cli = Cli::try_parse_from(full).map_err(|e| CliError::Usage(e.to_string()))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Usage("a replay manifest cannot itself be a replay".into()));
    }
    cli.out = out.map(Path::to_path_buf);
    manifest.policy.validate()?;
    execute(&cli, &manifest.argv, manifest.policy, stdout, stderr)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn with_manifest_line(m: &RunManifest, body: &str) -> String {
    format!("# {}\n{body}", serde_json::to_string(m).expect("manifest serializes"))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

fn need(value: Option<f64>, name: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

pub fn cmd_eval(args: &EvalArgs, policy: &PrecisionPolicy) -> CliResult<Vec<OutputRecord>> {
    let thermal = ThermalState::new(args.temperature)?;
    match (args.field, args.limit) {
        (Field::Fermion, Limit::Box) => {
            let g = BoxGeometry::new(need(args.a, "a")?, need(args.b, "b")?, need(args.c, "c")?)?;
            let r = evaluate(&g, &thermal, &args.forces, policy)?;
            let mut records = vec![OutputRecord::new("energy", r.energy, Normalization::Total)];
            for &axis in &args.forces {
                let f = r.force(axis).expect("requested forces are evaluated");
                records.push(OutputRecord::new(&format!("force_{axis}"), f, Normalization::Total));
            }
            Ok(records)
        }
        (Field::Fermion, Limit::Waveguide) => {
            let (b, c) = (need(args.b, "b")?, need(args.c, "c")?);
            let w = if thermal.is_zero() {
                waveguide_t0(b, c, policy)?
            } else {
                waveguide_finite_t(b, c, &thermal, policy)?
            };
            let n = Normalization::PerUnitLength;
            Ok(vec![
                OutputRecord::new("energy", w.energy, n),
                OutputRecord::new("force_b", w.force_b, n),
                OutputRecord::new("force_c", w.force_c, n),
            ])
        }
        (Field::Fermion, Limit::Plate) => {
            let p = parallel_plate(need(args.b, "b")?, &thermal, policy)?;
            let n = Normalization::PerUnitArea;
            Ok(vec![
                OutputRecord::new("energy", p.energy, n),
                OutputRecord::new("force_b", p.force, n),
            ])
        }
        (Field::Em, Limit::Box) => {
            if !args.forces.is_empty() {
                return Err(CliError::Usage("forces are not available for the electromagnetic field".into()));
            }
            let g = BoxGeometry::new(need(args.a, "a")?, need(args.b, "b")?, need(args.c, "c")?)?;
            let n = Normalization::Total;
            if thermal.is_zero() {
                return Ok(vec![OutputRecord::new("energy", em_energy_t0(&g, policy)?, n)]);
            }
            let r = em_energy_finite_t(&g, &thermal, policy)?;
            Ok(vec![
                OutputRecord::new("energy", r.f_phys, n),
                OutputRecord::new("e0_ren", r.e0_ren, n),
                OutputRecord::new("f1", r.f1, n),
                OutputRecord::new("f2", r.f2, n),
                OutputRecord::new("log_term", SeriesValue::exact(r.log_term), n),
                OutputRecord::new("delta_t_f0", r.delta_t_f0, n),
            ])
        }
        (Field::Em, _) => Err(CliError::Usage(
            "the electromagnetic field is only available for the finite box".into(),
        )),
    }
}

fn identity_from_args(kind: IdentityKind, a: &VerifyArgs) -> CliResult<Identity> {
    let params = match kind {
        IdentityKind::Schlomilch | IdentityKind::OnePartition => vec![need(a.alpha, "alpha")?],
        IdentityKind::OneSum => vec![need(a.theta, "theta")?, need(a.m, "m")?, need(a.alpha, "alpha")?],
        IdentityKind::TwoSum => vec![need(a.theta, "theta")?, need(a.sigma, "sigma")?],
        IdentityKind::TwoPartition => vec![need(a.a, "a")?, need(a.b, "b")?, need(a.alpha, "alpha")?],
        IdentityKind::ThreeSum => vec![need(a.theta, "theta")?, need(a.sigma, "sigma")?, need(a.gamma, "gamma")?],
        IdentityKind::ThreePartition | IdentityKind::ThreePartitionPlus => {
            vec![need(a.a, "a")?, need(a.b, "b")?, need(a.c, "c")?, need(a.alpha, "alpha")?]
        }
    };
    Ok(kind.with_params(&params)?)
}

pub fn cmd_verify(args: &VerifyArgs, policy: &PrecisionPolicy) -> CliResult<Vec<IdentityReport>> {
    let identities: Vec<Identity> = match (args.grid, args.identity) {
        (Some(count), kind) => {
            let kinds = kind.map(|k| vec![k]).unwrap_or_else(|| IdentityKind::ALL.to_vec());
            kinds.into_iter().flat_map(|k| verification_grid(k, count)).collect()
        }
        (None, Some(kind)) => vec![identity_from_args(kind, args)?],
        (None, None) => return Err(CliError::Usage("give --identity with its parameters, or --grid".into())),
    };
    let reports = identities
        .par_iter()
        .map(|id| id.verify(policy))
        .collect::<crate::error::Result<Vec<_>>>()?;
    Ok(reports)
}

fn verify_table(reports: &[IdentityReport]) -> String {
    let mut s = format!(
        "{:<22} {:<44} {:>24} {:>24} {:>6}\n",
        "identity", "parameters", "lhs", "rhs", "digits"
    );
    for r in reports {
        let params: Vec<String> = r.identity.params().iter().map(|p| format!("{p:.6}")).collect();
        s += &format!(
            "{:<22} {:<44} {:>24.16e} {:>24.16e} {:>6}\n",
            r.identity.kind().name(),
            params.join(","),
            r.lhs.value,
            r.rhs.value,
            r.digits_agreed
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SweepOutput {
    Regions(RegionMap),
    Profile(ConvergenceProfile),
}

pub fn cmd_sweep(args: &SweepArgs, policy: &PrecisionPolicy) -> CliResult<SweepOutput> {
    if args.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let grid: Option<GridSpec> = args.grid.as_deref().map(read_json).transpose()?;
    let temperature = |preset: f64| {
        args.temperature
            .or(grid.as_ref().map(|g| g.temperature))
            .unwrap_or(preset)
    };
    let output = match args.fig {
        Figure::T0Regions | Figure::Regions => {
            let preset_t = if args.fig == Figure::T0Regions { 0.0 } else { 1.0 };
            let thermal = ThermalState::new(temperature(preset_t))?;
            let (a, c) = match &grid {
                Some(g) => (g.a.clone(), g.c.clone()),
                None => (linspace(1.0, args.amax, args.n), linspace(1.0, args.cmax, args.n)),
            };
            SweepOutput::Regions(classify_regions(&a, &c, &thermal, policy)?)
        }
        Figure::ZeroSurfaceT1 => {
            let thermal = ThermalState::new(temperature(1.0))?;
            let (a, b, c) = match &grid {
                Some(g) => (g.a.clone(), g.b.clone(), g.c.clone()),
                None => {
                    let bc = linspace(0.1, 2.0, args.n);
                    (vec![0.5, 1.0, 1.5, 2.0], bc.clone(), bc)
                }
            };
            SweepOutput::Regions(zero_force_surface(&a, &b, &c, &thermal, policy)?)
        }
        Figure::PlateProfile | Figure::WaveguideProfile => {
            let thermal = ThermalState::new(temperature(1.0))?;
            let (family, preset_max) = if args.fig == Figure::PlateProfile {
                (ProfileFamily::PlateEdge, 3.0)
            } else {
                (ProfileFamily::WaveguideLength, 5.0)
            };
            let edges = match &grid {
                Some(g) => g.a.clone(),
                None => linspace(1.0, preset_max, args.n),
            };
            SweepOutput::Profile(normalized_convergence_profile(family, &thermal, &edges, policy)?)
        }
    };
    Ok(output)
}

fn csv_num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

/// One row per grid point: `a,b,c,T,f_a,f_b,f_c,sign_a,sign_b,sign_c,region`.
pub fn region_csv(map: &RegionMap) -> String {
    let mut s = String::from("a,b,c,T,f_a,f_b,f_c,sign_a,sign_b,sign_c,region\n");
    for r in &map.records {
        let g = r.geometry;
        let signs: Vec<&str> = r.signs.iter().map(|x| x.map(|s| s.label()).unwrap_or("")).collect();
        s += &format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            csv_num(Some(g.a)),
            csv_num(Some(g.b)),
            csv_num(Some(g.c)),
            csv_num(Some(r.temperature)),
            csv_num(r.forces[0]),
            csv_num(r.forces[1]),
            csv_num(r.forces[2]),
            signs[0],
            signs[1],
            signs[2],
            r.region.map(|x| x.label()).unwrap_or("")
        );
    }
    s
}

pub fn profile_csv(p: &ConvergenceProfile) -> String {
    let mut s = String::from("edge,T,energy_ratio,force_ratio\n");
    for pt in &p.points {
        s += &format!(
            "{},{},{},{}\n",
            csv_num(Some(pt.edge)),
            csv_num(Some(p.temperature)),
            csv_num(Some(pt.energy_ratio)),
            csv_num(Some(pt.force_ratio))
        );
    }
    s
}

pub fn cmd_critical(args: &CriticalArgs, policy: &PrecisionPolicy) -> CliResult<serde_json::Value> {
    let values = |default: Vec<f64>| if args.values.is_empty() { default } else { args.values.clone() };
    let pi = std::f64::consts::PI;
    let curve = match args.mode {
        CriticalMode::AspectT0 => {
            let r = critical_aspect_t0_at(args.b, policy)?;
            return Ok(serde_json::json!({
                "mode": "aspect_t0",
                "b": args.b,
                "ratio": r.root,
                "bracket": [r.lo, r.hi],
            }));
        }
        CriticalMode::CCrVsB => find_critical_curve(
            CurveMode::CcrVsB {
                temperature: args.temperature,
            },
            &values(linspace(0.1, 1.0, 10)),
            args.root_tol,
            policy,
        )?,
        CriticalMode::CCrVsT => find_critical_curve(
            CurveMode::CcrVsT { b: args.b },
            &values(vec![1.0, pi, 2.0 * pi]),
            args.root_tol,
            policy,
        )?,
        CriticalMode::BCrVsT => find_critical_curve(CurveMode::BcrVsT, &values(linspace(0.3, 3.0, 28)), args.root_tol, policy)?,
    };
    if curve.points.iter().all(|p| p.root.is_none()) {
        // report the widest scanned interval of the root variable
        let (lo, hi) = match args.mode {
            CriticalMode::CCrVsB => {
                let b = curve.points.iter().map(|p| p.parameter);
                (b.clone().fold(f64::INFINITY, f64::min) * 1.0001, b.fold(0.0, f64::max) * 3.0)
            }
            CriticalMode::CCrVsT => (args.b * 1.0001, args.b * 3.0),
            _ => (1.0, 4.0),
        };
        return Err(CasimirError::Bracket { lo, hi }.into());
    }
    Ok(serde_json::to_value(&curve).expect("curve serializes"))
}
