//! Command-line harness: parses an [`ExperimentConfig`], runs it against
//! the `grover_reflect` library, writes the result file atomically and
//! returns a one-line summary.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_reflect::cloning::{
    clone_quality, determinant_curve, determinant_zero, run_degraded_modified,
    write_determinant_csv, write_fidelity_csv, CloneQuality, DegradedConfig, DeterminantMethod,
};
use grover_reflect::modified::max_steps_cap;
use grover_reflect::noreflect::{
    consistency_scan, consistent_overlaps, optimize_reflection_machine, write_scan_csv,
    OptimizerConfig, ReflectionMachineProblem,
};
use grover_reflect::scaling::write_scaling_csv;
use grover_reflect::{
    compare_scaling, iteration_bound, run_modified, run_standard, Limits, RunTrace, SearchProblem,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Directory for output files when `--output` is not given. Falls back to
/// the working directory.
pub const OUTPUT_DIR_ENV: &str = "GROVER_REFLECT_OUTPUT_DIR";

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_STARTS: usize = 20;
pub const DEFAULT_DETERMINANT_GRID: usize = 200;
pub const DEFAULT_SCAN_RESOLUTION: usize = 10_000;
pub const DEFAULT_OVERLAP: f64 = 0.9;

pub const MAX_TRIALS: usize = 100_000;
pub const MAX_STARTS: usize = 10_000;
pub const MAX_GRID: usize = 1_000_000;
pub const MAX_SCAN_RESOLUTION: usize = 10_000_000;
/// Standard runs may go up to this many times the iteration bound (two
/// full periods of the success probability).
pub const STANDARD_STEP_FACTOR: usize = 4;

pub mod exit_code {
    pub const OK: i32 = 0;
    pub const RUNTIME: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const NOT_CONVERGED: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Standard,
    Modified,
    Degraded,
    NoreflectScan,
    NoreflectOptimize,
    Determinant,
    Fidelity,
    CompareScaling,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Standard => "standard",
            Command::Modified => "modified",
            Command::Degraded => "degraded",
            Command::NoreflectScan => "noreflect-scan",
            Command::NoreflectOptimize => "noreflect-optimize",
            Command::Determinant => "determinant",
            Command::Fidelity => "fidelity",
            Command::CompareScaling => "compare-scaling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    ClosedForm,
    Lu,
}

/// Control states for `noreflect-optimize`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Controls {
    /// One generic control state.
    Single,
    /// Two orthogonal basis controls.
    Orthogonal,
    /// Two controls with overlap `--overlap`.
    #[default]
    Overlap,
}

/// A fully specified experiment. Fields a command does not use stay `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub n: Option<u32>,
    pub marked: Option<usize>,
    pub max_steps: Option<usize>,
    pub trials: Option<usize>,
    pub clone_fidelity: Option<f64>,
    pub seed: u64,
    pub grid: Option<usize>,
    pub starts: Option<usize>,
    pub n_list: Option<Vec<u32>>,
    pub dims: Option<Vec<usize>>,
    pub method: Method,
    pub controls: Controls,
    pub overlap: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub limits: Limits,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            n: None,
            marked: None,
            max_steps: None,
            trials: None,
            clone_fidelity: None,
            seed: DEFAULT_SEED,
            grid: None,
            starts: None,
            n_list: None,
            dims: None,
            method: Method::default(),
            controls: Controls::default(),
            overlap: None,
            output: None,
            format: Format::default(),
            limits: Limits::default(),
        }
    }

    /// `--output`, or `<command>.<ext>` under [`OUTPUT_DIR_ENV`] or the
    /// working directory.
    pub fn output_path(&self) -> PathBuf {
        if let Some(path) = &self.output {
            return path.clone();
        }
        let dir = std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."));
        dir.join(format!("{}.{}", self.command.name(), self.format.extension()))
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid or out-of-range configuration.
    Config { field: &'static str, message: String },
    /// A size exceeds a memory or dense-matrix cap.
    Capacity(grover_reflect::Error),
    /// The optimizer stopped without converging. The result file was
    /// still written.
    NotConverged { summary: String },
    Runtime(grover_reflect::Error),
}

impl CliError {
    fn config(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Config {
            field,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => exit_code::CONFIG,
            CliError::Capacity(_) => exit_code::CAPACITY,
            CliError::NotConverged { .. } => exit_code::NOT_CONVERGED,
            CliError::Runtime(_) => exit_code::RUNTIME,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config { field, message } => write!(f, "config error: {field}: {message}"),
            CliError::Capacity(e) => write!(f, "{e}"),
            CliError::NotConverged { summary } => write!(f, "optimizer did not converge: {summary}"),
            CliError::Runtime(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<grover_reflect::Error> for CliError {
    fn from(e: grover_reflect::Error) -> Self {
        use grover_reflect::Error as E;
        match e {
            E::Capacity { .. } => CliError::Capacity(e),
            E::Io(_) | E::Csv(_) | E::Json(_) | E::Schema(_) => CliError::Runtime(e),
            E::Shape { .. } | E::Precondition(_) | E::DegeneratePlane { .. } | E::InvalidProblem(_) => {
                CliError::Config {
                    field: "problem",
                    message: e.to_string(),
                }
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub path: PathBuf,
    pub summary: String,
}

fn require<T: Copy>(value: Option<T>, field: &'static str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::config(field, "required"))
}

fn in_range(value: usize, min: usize, max: usize, field: &'static str) -> Result<usize, CliError> {
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::config(field, format!("{value} outside [{min}, {max}]")))
    }
}

fn unit_interval(value: f64, field: &'static str) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::config(field, format!("{value} outside [0, 1]")))
    }
}

fn search_problem(config: &ExperimentConfig) -> Result<SearchProblem, CliError> {
    let n = require(config.n, "--n")?;
    let dim = config.limits.check_qubits(n)?;
    let m = in_range(config.marked.unwrap_or(1), 1, dim, "--M")?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(SearchProblem::random_with_limits(n, m, &mut rng, &config.limits)?)
}

fn json_only(config: &ExperimentConfig) -> Result<(), CliError> {
    if config.format != Format::Json {
        return Err(CliError::config(
            "--format",
            format!("{} writes JSON only", config.command.name()),
        ));
    }
    Ok(())
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomically(
    path: &Path,
    contents: impl FnOnce(&mut dyn Write) -> grover_reflect::Result<()>,
) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::Builder::new()
        .prefix(".grover-reflect-")
        .tempfile_in(&dir)?;
    {
        let mut writer = BufWriter::new(tmp.as_file_mut());
        contents(&mut writer)?;
        writer.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::from(e.error))?;
    Ok(())
}

fn write_json<T: serde::Serialize + ?Sized>(writer: &mut dyn Write, value: &T) -> grover_reflect::Result<()> {
    serde_json::to_writer_pretty(&mut *writer, value)?;
    writer.write_all(b"\n")?;
    Ok(())
}

fn write_trace(path: &Path, trace: &RunTrace, format: Format) -> Result<(), CliError> {
    write_atomically(path, |w| match format {
        Format::Csv => trace.write_csv(w),
        Format::Json => trace.write_json(w),
    })
}

fn best_summary(trace: &RunTrace, label: &str) -> String {
    match trace.best() {
        Some(best) => format!("best {label}={} p={:.3}", best.step, best.success_prob),
        None => "empty trace".into(),
    }
}

/// Runs one experiment and writes its output file.
pub fn run(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let path = config.output_path();
    let summary = match config.command {
        Command::Standard => {
            let problem = search_problem(config)?;
            let cap = STANDARD_STEP_FACTOR * iteration_bound(&problem);
            if let Some(steps) = config.max_steps {
                in_range(steps, 0, cap, "--max-steps")?;
            }
            let mut trace = run_standard(&problem, config.max_steps)?;
            trace.seed = Some(config.seed);
            write_trace(&path, &trace, config.format)?;
            format!("{} ({} rows)", best_summary(&trace, "k"), trace.entries.len())
        }
        Command::Modified => {
            let problem = search_problem(config)?;
            if let Some(steps) = config.max_steps {
                in_range(steps, 0, max_steps_cap(&problem), "--max-steps")?;
            }
            let mut trace = run_modified(&problem, config.max_steps)?;
            trace.seed = Some(config.seed);
            write_trace(&path, &trace, config.format)?;
            format!("{} ({} rows)", best_summary(&trace, "l"), trace.entries.len())
        }
        Command::Degraded => {
            let problem = search_problem(config)?;
            let mut degraded = DegradedConfig::new(
                in_range(config.trials.unwrap_or(DEFAULT_TRIALS), 1, MAX_TRIALS, "--trials")?,
                config.seed,
            );
            if let Some(steps) = config.max_steps {
                degraded.max_steps = Some(in_range(steps, 0, max_steps_cap(&problem), "--max-steps")?);
            }
            if let Some(f) = config.clone_fidelity {
                degraded.clone_fidelity = Some(unit_interval(f, "--clone-fidelity")?);
            }
            let trace = run_degraded_modified(&problem, &degraded)?;
            write_trace(&path, &trace, config.format)?;
            let last = trace.last().expect("trace has step 0");
            format!(
                "mean p={:.3} +- {:.3} at l={} (F={:.4}, {} trials)",
                last.success_prob,
                last.success_prob_std.unwrap_or(0.0),
                last.step,
                trace.clone_fidelity.unwrap_or(1.0),
                degraded.trials
            )
        }
        Command::NoreflectScan => {
            let resolution = in_range(
                config.grid.unwrap_or(DEFAULT_SCAN_RESOLUTION),
                10,
                MAX_SCAN_RESOLUTION,
                "--grid",
            )?;
            let scan = consistency_scan(resolution)?;
            write_atomically(&path, |w| match config.format {
                Format::Csv => write_scan_csv(&scan, w),
                Format::Json => write_json(w, &scan),
            })?;
            let zeros = consistent_overlaps(&scan, 1e-9);
            let singular: Vec<String> = scan
                .iter()
                .filter(|p| p.singular)
                .map(|p| format!("{:.4}", p.c_abs * p.c_abs))
                .collect();
            format!(
                "consistent |c| = {:?}; singular |c|^2 = [{}]",
                zeros,
                singular.join(", ")
            )
        }
        Command::NoreflectOptimize => {
            json_only(config)?;
            let starts = in_range(config.starts.unwrap_or(DEFAULT_STARTS), 1, MAX_STARTS, "--starts")?;
            let problem = match config.controls {
                Controls::Single => ReflectionMachineProblem::single_control(2)?,
                Controls::Orthogonal => ReflectionMachineProblem::orthogonal_controls(2)?,
                Controls::Overlap => ReflectionMachineProblem::with_overlap(
                    2,
                    unit_interval(config.overlap.unwrap_or(DEFAULT_OVERLAP), "--overlap")?,
                )?,
            };
            let optimizer = OptimizerConfig {
                starts,
                seed: config.seed,
                ..OptimizerConfig::default()
            };
            let best = optimize_reflection_machine(&problem, &optimizer)?;
            let summary = best.summary();
            write_atomically(&path, |w| write_json(w, &summary))?;
            let line = format!(
                "best residual={:.6e} over {} starts (start {}, converged={})",
                best.best_residual, best.starts, best.best_start, best.converged
            );
            if !best.converged {
                return Err(CliError::NotConverged { summary: line });
            }
            line
        }
        Command::Determinant => {
            let n_list = config.n_list.clone().unwrap_or_else(|| vec![5, 7, 9]);
            if n_list.is_empty() {
                return Err(CliError::config("--n-list", "empty"));
            }
            if config.marked.is_some_and(|m| m != 1) {
                return Err(CliError::config("--M", "the state family is defined for M = 1 only"));
            }
            let grid = in_range(config.grid.unwrap_or(DEFAULT_DETERMINANT_GRID), 50, MAX_GRID, "--grid")?;
            let method = match config.method {
                Method::ClosedForm => DeterminantMethod::ClosedForm,
                Method::Lu => DeterminantMethod::Lu,
            };
            let rows = determinant_curve(&n_list, grid, method, &config.limits)?;
            write_atomically(&path, |w| match config.format {
                Format::Csv => write_determinant_csv(&rows, w),
                Format::Json => write_json(w, &rows),
            })?;
            let zeros: Vec<String> = n_list
                .iter()
                .map(|&n| format!("n={n}: {:.6}", determinant_zero(1 << n)))
                .collect();
            let end = rows.last().map(|r| r.det_signed).unwrap_or(f64::NAN);
            format!("zero at phi = {}; det(pi/2) = {end:.3}", zeros.join(", "))
        }
        Command::Fidelity => {
            let dims = match (&config.dims, &config.n_list) {
                (Some(_), Some(_)) => {
                    return Err(CliError::config("--dims", "give either --dims or --n-list"));
                }
                (Some(d), None) => d.clone(),
                (None, Some(list)) => list
                    .iter()
                    .map(|&n| config.limits.check_qubits(n))
                    .collect::<Result<_, _>>()?,
                (None, None) => (1..=20).map(|n| 1usize << n).collect(),
            };
            if dims.is_empty() {
                return Err(CliError::config("--dims", "empty"));
            }
            let rows: Vec<CloneQuality> = dims
                .iter()
                .map(|&d| clone_quality(d))
                .collect::<Result<_, _>>()?;
            write_atomically(&path, |w| match config.format {
                Format::Csv => write_fidelity_csv(&rows, w),
                Format::Json => write_json(w, &rows),
            })?;
            let (first, last) = (rows[0], rows[rows.len() - 1]);
            format!(
                "F({})={:.6} ... F({})={:.6}",
                first.dim, first.fidelity, last.dim, last.fidelity
            )
        }
        Command::CompareScaling => {
            let n_list = config.n_list.clone().unwrap_or_else(|| (2..=16).collect());
            if n_list.is_empty() {
                return Err(CliError::config("--n-list", "empty"));
            }
            let m = config.marked.unwrap_or(1);
            if m == 0 {
                return Err(CliError::config("--M", "must be >= 1"));
            }
            let rows = compare_scaling(n_list.iter().copied(), m, &config.limits)?;
            write_atomically(&path, |w| match config.format {
                Format::Csv => write_scaling_csv(&rows, w),
                Format::Json => write_json(w, &rows),
            })?;
            let last = rows[rows.len() - 1];
            format!(
                "n={}: standard best k={}, modified best l={} (r_mod={:.3})",
                last.n, last.standard_best_step, last.modified_best_step, last.r_mod
            )
        }
    };
    Ok(Outcome { path, summary })
}

// ---------------------------------------------------------------------------
// Argument parsing

#[derive(Debug, Parser)]
#[command(name = "grover-reflect", version, about = "Grover search and reflection-about-the-current-state experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file. Defaults to `<command>.<ext>` in $GROVER_REFLECT_OUTPUT_DIR
    /// or the working directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of qubits; N = 2^n.
    #[arg(long)]
    pub n: u32,
    /// Number of marked items, drawn from the seeded generator.
    #[arg(long = "M", default_value_t = 1)]
    pub marked: usize,
    /// Run exactly this many steps instead of stopping at the best one.
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DegradedArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Squared overlap of the reflection axis with the current state.
    /// Defaults to the universal 1 -> 2 cloner fidelity (N+3)/(2(N+1)).
    #[arg(long)]
    pub clone_fidelity: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Number of grid intervals on |c| in [0, 1].
    #[arg(long, default_value_t = DEFAULT_SCAN_RESOLUTION)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_enum, default_value_t = Controls::Overlap)]
    pub controls: Controls,
    /// Overlap of the two controls for `--controls overlap`.
    #[arg(long, default_value_t = DEFAULT_OVERLAP)]
    pub overlap: f64,
    #[arg(long, default_value_t = DEFAULT_STARTS)]
    pub starts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DeterminantArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [5u32, 7, 9])]
    pub n_list: Vec<u32>,
    /// Points on [0, pi/2], both ends included.
    #[arg(long, default_value_t = DEFAULT_DETERMINANT_GRID)]
    pub grid: usize,
    #[arg(long = "M", default_value_t = 1)]
    pub marked: usize,
    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    pub method: Method,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Qubit counts; N = 2^n. Defaults to 1..=20.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<u32>>,
    /// Explicit dimensions N, need not be powers of two.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    /// Qubit counts. Defaults to 2..=16.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<u32>>,
    #[arg(long = "M", default_value_t = 1)]
    pub marked: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Standard Grover iteration.
    Standard(SearchArgs),
    /// Reflection about a copy of the current state.
    Modified(SearchArgs),
    /// Modified search with approximately cloned reflection axes.
    Degraded(DegradedArgs),
    /// Consistency of a universal reflection machine over |<chi'|chi>|.
    NoreflectScan(ScanArgs),
    /// Best achievable reflection machine on two qubits of dimension 2.
    NoreflectOptimize(OptimizeArgs),
    /// Linear-independence determinant of the intermediate search states.
    Determinant(DeterminantArgs),
    /// Fidelity of the optimal universal 1 -> 2 cloner.
    Fidelity(FidelityArgs),
    /// Best-step counts of both searches across register sizes.
    CompareScaling(ScalingArgs),
}

impl From<CliCommand> for ExperimentConfig {
    fn from(command: CliCommand) -> Self {
        let search = |c: Command, a: SearchArgs| ExperimentConfig {
            n: Some(a.n),
            marked: Some(a.marked),
            max_steps: a.max_steps,
            seed: a.seed,
            output: a.out.output,
            format: a.out.format,
            ..ExperimentConfig::new(c)
        };
        match command {
            CliCommand::Standard(a) => search(Command::Standard, a),
            CliCommand::Modified(a) => search(Command::Modified, a),
            CliCommand::Degraded(a) => ExperimentConfig {
                trials: Some(a.trials),
                clone_fidelity: a.clone_fidelity,
                ..search(Command::Degraded, a.search)
            },
            CliCommand::NoreflectScan(a) => ExperimentConfig {
                grid: Some(a.grid),
                output: a.out.output,
                format: a.out.format,
                ..ExperimentConfig::new(Command::NoreflectScan)
            },
            CliCommand::NoreflectOptimize(a) => ExperimentConfig {
                controls: a.controls,
                overlap: Some(a.overlap),
                starts: Some(a.starts),
                seed: a.seed,
                output: a.output,
                format: a.format,
                ..ExperimentConfig::new(Command::NoreflectOptimize)
            },
            CliCommand::Determinant(a) => ExperimentConfig {
                n_list: Some(a.n_list),
                grid: Some(a.grid),
                marked: Some(a.marked),
                method: a.method,
                output: a.out.output,
                format: a.out.format,
                ..ExperimentConfig::new(Command::Determinant)
            },
            CliCommand::Fidelity(a) => ExperimentConfig {
                n_list: a.n_list,
                dims: a.dims,
                output: a.out.output,
                format: a.out.format,
                ..ExperimentConfig::new(Command::Fidelity)
            },
            CliCommand::CompareScaling(a) => ExperimentConfig {
                n_list: a.n_list,
                marked: Some(a.marked),
                output: a.out.output,
                format: a.out.format,
                ..ExperimentConfig::new(Command::CompareScaling)
            },
        }
    }
}

/// Parses `args` (including the program name) into a config.
pub fn parse_args<I, T>(args: I) -> Result<ExperimentConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map(|cli| cli.command.into())
}
