mod config;
mod output;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hocus::cases::{instantiate_case, reference_solution, CASE_NAMES};
use hocus::driver::{
    convergence_study, extrema_count, field_error, simulate, to_primitive, Norm, RunOutcome, RunSettings, TimeStep,
};
use hocus::integrator::Variant;
use hocus::SolverError;
use rayon::prelude::*;

use config::{grid_for, usage, ResolvedRun, RunConfig};
use output::{slice_csv, write_field, Slice};
use report::{ConvergenceReport, RunReport};

#[derive(Parser, Debug)]
#[command(name = "hocus", version, about = "Run and compare finite-volume schemes on benchmark cases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one case and write the final field and a JSON report.
    Run(RunArgs),
    /// Measure L1 errors and observed orders over a list of grid sizes.
    Convergence(ConvergenceArgs),
    /// Run several schemes on one case and tabulate a metric as CSV.
    Compare(CompareArgs),
    /// Run a JSON array of run configurations on a thread pool (HOCUS_THREADS caps it).
    Batch(BatchArgs),
    /// List case and scheme names.
    List,
}

#[derive(Args, Debug)]
struct RunFlags {
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    /// Switches to adaptive CFL stepping even for cases that default to dt ~ dx^2.
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// HLLC or GLF.
    #[arg(long)]
    riemann: Option<String>,
    /// MP5 limiter constant.
    #[arg(long)]
    alpha: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    snapshot_every: Option<usize>,
}

impl From<RunFlags> for RunConfig {
    fn from(f: RunFlags) -> Self {
        RunConfig {
            case: f.case,
            scheme: f.scheme,
            nx: f.nx,
            ny: f.ny,
            cfl: f.cfl,
            t_end: f.t_end,
            riemann: f.riemann,
            alpha: f.alpha,
            out: f.out,
            snapshot_every: f.snapshot_every,
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// JSON file with any of the flag names (snake_case) as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    #[arg(long)]
    case: String,
    #[arg(long, default_value = "HOCUS6")]
    scheme: String,
    /// Comma-separated cell counts per direction.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Step size as a multiple of dx^2.
    #[arg(long, default_value_t = 0.1)]
    dt_factor: f64,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    #[value(name = "l1_vs_reference", alias = "l1")]
    L1VsReference,
    #[value(name = "l2_vs_reference", alias = "l2")]
    L2VsReference,
    /// Strict local extrema of the density along the middle row.
    #[value(name = "extrema_count")]
    ExtremaCount,
    /// Density max minus min over --window.
    #[value(name = "amplitude")]
    Amplitude,
    /// Writes the middle-row density slice per scheme; the value column holds the path.
    #[value(name = "slice")]
    Slice,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    case: String,
    #[arg(long, value_delimiter = ',', required = true)]
    schemes: Vec<String>,
    #[arg(long, value_enum, default_value = "l1_vs_reference")]
    metric: Metric,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    /// x interval for the amplitude metric, as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    window: Option<Vec<f64>>,
    /// Table destination (stdout when absent); slice files go next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// JSON array of run configurations.
    file: PathBuf,
    /// Root directory for runs that do not name their own output directory.
    #[arg(long, default_value = "hocus-out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Convergence(args) => convergence_command(args),
        Command::Compare(args) => compare_command(args),
        Command::Batch(args) => batch_command(args),
        Command::List => {
            list_command();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Some runs of a batch failed; carries the most severe exit code among them.
#[derive(Debug)]
struct BatchFailed {
    code: u8,
    failed: usize,
}

impl std::fmt::Display for BatchFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} batch run(s) failed", self.failed)
    }
}

impl std::error::Error for BatchFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(batch) = err.downcast_ref::<BatchFailed>() {
        return batch.code;
    }
    match err.downcast_ref::<SolverError>() {
        Some(e) if e.is_numerical() => 3,
        Some(SolverError::Io(_)) | None => 1,
        Some(_) => 2,
    }
}

fn title(run: &ResolvedRun, t: f64) -> String {
    format!("hocus {} {} t={t}", run.case.name, run.settings.scheme.variant.name())
}

/// Runs one resolved configuration, writing snapshots, the final field and
/// `report.json` into its output directory.
fn execute(run: &ResolvedRun) -> anyhow::Result<RunReport> {
    let physics = run.case.physics;
    let mut outputs = Vec::new();
    let outcome = simulate(&run.case, &run.grid, &run.settings, |step, t, q| {
        let prim = to_primitive(q, &physics)?;
        let stem = format!("snapshot_{step:06}");
        outputs.extend(write_field(&run.out, &stem, &run.grid, &physics, &prim, &title(run, t))?);
        Ok(())
    })?;
    let prim = outcome.primitive_field()?;
    let written = write_field(&run.out, "final", &run.grid, &physics, &prim, &title(run, outcome.time))
        .with_context(|| format!("writing into {}", run.out.display()))?;
    outputs.extend(written);
    let report_path = run.out.join("report.json");
    outputs.push(report_path.clone());
    let report = RunReport::new(run, &outcome, outputs);
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)
        .with_context(|| format!("writing {}", report_path.display()))?;
    Ok(report)
}

fn run_command(args: RunArgs) -> anyhow::Result<()> {
    let base = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let run = base.overridden_by(args.flags.into()).resolve()?;
    let report = execute(&run)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn convergence_command(args: ConvergenceArgs) -> anyhow::Result<()> {
    let case = instantiate_case(&args.case)?;
    let variant: Variant = args.scheme.parse()?;
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return Err(usage("sizes must be positive"));
    }
    if !(args.dt_factor > 0.0) {
        return Err(usage("dt factor must be positive"));
    }
    let time_step = TimeStep::DxSquared(args.dt_factor);
    let points = convergence_study(&case, variant, &args.sizes, time_step)?;
    let report = ConvergenceReport::new(case.name, variant.name(), time_step, &points);
    let json = serde_json::to_string_pretty(&report)?;
    if let Some(path) = &args.out {
        std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{json}");
    Ok(())
}

fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("HOCUS_THREADS") {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("HOCUS_THREADS must be a positive integer, got `{value}`")))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn compare_command(args: CompareArgs) -> anyhow::Result<()> {
    let case = instantiate_case(&args.case)?;
    let variants: Vec<Variant> = args.schemes.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let grid = grid_for(&case, args.nx, args.ny)?;
    let t_end = args.t_end.unwrap_or(case.t_end);
    let reference = match args.metric {
        Metric::L1VsReference | Metric::L2VsReference => Some(reference_solution(&case, &grid, t_end)?),
        _ => None,
    };
    let window = match args.window.as_deref() {
        Some([lo, hi]) if lo < hi => (*lo, *hi),
        Some(_) => return Err(usage("window needs lo < hi")),
        None => (f64::NEG_INFINITY, f64::INFINITY),
    };
    let slice_dir = args.out.as_deref().and_then(Path::parent).unwrap_or(Path::new(".")).to_path_buf();

    let outcomes: Vec<RunOutcome> = thread_pool()?.install(|| {
        variants
            .par_iter()
            .map(|&v| simulate(&case, &grid, &RunSettings { t_end, ..RunSettings::for_case(&case, v) }, |_, _, _| Ok(())))
            .collect::<Result<_, _>>()
    })?;

    let mut table = String::from("scheme,metric,value,steps,wall_time_s\n");
    for (variant, outcome) in variants.iter().zip(&outcomes) {
        let prim = outcome.primitive_field()?;
        let mid = grid.ny() as isize / 2;
        let value = match args.metric {
            Metric::L1VsReference => format!("{:.14e}", field_error(&prim, reference.as_ref().unwrap(), 0, Norm::L1)),
            Metric::L2VsReference => format!("{:.14e}", field_error(&prim, reference.as_ref().unwrap(), 0, Norm::L2)),
            Metric::ExtremaCount => extrema_count(&prim, 0, mid).to_string(),
            Metric::Amplitude => {
                let row = prim.interior_row(0, mid);
                let inside = (0..row.len())
                    .filter(|&i| (window.0..=window.1).contains(&grid.x().center(i as isize)))
                    .map(|i| row[i]);
                let (lo, hi) = inside.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
                format!("{:.14e}", hi - lo)
            }
            Metric::Slice => {
                std::fs::create_dir_all(&slice_dir)?;
                let path = slice_dir.join(format!("{}_{}_slice.csv", case.name, variant.name().to_ascii_lowercase()));
                let csv = if grid.is_2d() {
                    slice_csv(&grid, &case.physics, &prim, Slice::Row(mid))
                } else {
                    output::field_csv(&grid, &case.physics, &prim)
                };
                std::fs::write(&path, csv)?;
                path.display().to_string()
            }
        };
        let metric = args.metric.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        writeln!(
            table,
            "{},{metric},{value},{},{:.3}",
            variant.name(),
            outcome.steps,
            outcome.wall_time.as_secs_f64()
        )?;
    }
    match &args.out {
        Some(path) => std::fs::write(path, &table).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{table}"),
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct BatchEntry {
    config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<RunReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn batch_command(args: BatchArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let configs: Vec<RunConfig> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", args.file.display())))?;
    let runs: Vec<ResolvedRun> = configs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut run = c.resolve()?;
            if c.out.is_none() {
                run.out = args.out.join(format!("{k:03}-{}", run.out.file_name().unwrap().to_string_lossy()));
            }
            Ok(run)
        })
        .collect::<anyhow::Result<_>>()?;

    let results: Vec<anyhow::Result<RunReport>> = thread_pool()?.install(|| runs.par_iter().map(execute).collect());

    let mut worst = 0;
    let mut failed = 0;
    let mut entries = Vec::new();
    for (config, result) in configs.into_iter().zip(results) {
        match result {
            Ok(report) => entries.push(BatchEntry { config, report: Some(report), error: None }),
            Err(err) => {
                worst = worst.max(exit_code(&err));
                failed += 1;
                entries.push(BatchEntry { config, report: None, error: Some(format!("{err:#}")) });
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&entries)?);
    if failed > 0 {
        return Err(BatchFailed { code: worst, failed }.into());
    }
    Ok(())
}

fn list_command() {
    println!("cases:");
    for name in CASE_NAMES {
        match instantiate_case(name) {
            Ok(case) => {
                let grid = match case.ny {
                    Some(ny) => format!("{}x{ny}", case.nx),
                    None => case.nx.to_string(),
                };
                println!("  {name:<22} grid {grid:<10} t_end {}", case.t_end);
            }
            Err(err) => println!("  {name:<22} {err}"),
        }
    }
    println!("schemes:");
    for variant in Variant::ALL {
        println!("  {}", variant.name());
    }
}
