//! Command-line harness: `run` one experiment, `compare` methods across
//! step sizes, or `sweep` random cubic boundary data.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stiefel_cubics::charts::ChartManifold;
use stiefel_cubics::harness::{
    self, benchmark, default_h_list, emit_csv, emit_plot_csv, emit_sweep_csv, emit_trajectory_csv,
    mean_error, parse_jet_values, render_log_error_table, run_comparison, run_experiment,
    run_sweep, ExperimentConfig,
};
use stiefel_cubics::trajectory::Method;
use stiefel_cubics::Error;

#[derive(Parser)]
#[command(
    name = "stiefel-cubics",
    about = "Geometric cubic polynomials on Stiefel manifolds: de Casteljau generator, symplectic integrators, and their comparison against an RK4 reference",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its trajectory as CSV plot data.
    Run(RunArgs),
    /// Compare gcp/initial-point/midpoint against the benchmark over a list
    /// of step sizes; writes the error table as CSV.
    Compare(CompareArgs),
    /// Audit random cubic boundary-data instances (seeded) and report the
    /// boundary-condition errors of each.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonConfig {
    /// Configuration file in `key = value` form (flags override it).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Manifold: `sphere` or `st32`.
    #[arg(long)]
    manifold: Option<String>,
    /// Time step; mutually consistent with --steps (steps × h = 1).
    #[arg(long)]
    h: Option<f64>,
    /// Number of time steps.
    #[arg(long)]
    steps: Option<usize>,
    /// Initial jet as 4m comma-separated values: q, q̇, q̈, q⁽³⁾.
    #[arg(long)]
    jet: Option<String>,
    /// Seed for randomized subcommands.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonConfig,
    /// Method: `gcp`, `initial-point`, `midpoint`, or `rk4`.
    #[arg(long)]
    method: Option<String>,
    /// Also write per-sample `t,error` rows against the benchmark.
    #[arg(long)]
    errors: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonConfig,
    /// Comma-separated list of step sizes (default 0.1,0.05,0.025,0.0125).
    #[arg(long)]
    h_list: Option<String>,
    /// Embed wall-clock runtimes in the CSV (breaks byte-reproducibility).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonConfig,
    /// Number of random instances.
    #[arg(long, default_value_t = 50)]
    count: usize,
}

fn build_config(common: &CommonConfig, method: Option<&str>) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::from_key_values(&std::fs::read_to_string(path)?)?,
        None => {
            let manifold = parse_manifold(common.manifold.as_deref().unwrap_or("sphere"))?;
            ExperimentConfig::defaults(manifold, Method::Gcp)
        }
    };
    if let Some(name) = &common.manifold {
        let manifold = parse_manifold(name)?;
        if manifold != cfg.manifold {
            cfg.manifold = manifold;
            cfg.jet = harness::default_jet(manifold);
        }
    }
    if let Some(name) = method {
        cfg.method = Method::parse(name).ok_or_else(|| Error::InvalidConfig {
            context: format!("unknown method `{name}`"),
        })?;
    }
    let explicit_h = common.h.is_some();
    let explicit_steps = common.steps.is_some();
    if let Some(h) = common.h {
        cfg.h = h;
    }
    if let Some(steps) = common.steps {
        cfg.steps = steps;
    }
    harness::reconcile_grid(&mut cfg, explicit_h, explicit_steps)?;
    if let Some(jet) = &common.jet {
        let values: Vec<f64> = jet
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::InvalidConfig {
                context: format!("invalid jet `{jet}`"),
            })?;
        cfg.jet = parse_jet_values(cfg.manifold, &values)?;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_manifold(name: &str) -> Result<ChartManifold, Error> {
    ChartManifold::parse(name).ok_or_else(|| Error::InvalidConfig {
        context: format!("unknown manifold `{name}` (expected `sphere` or `st32`)"),
    })
}

fn write_or_print(path: Option<&PathBuf>, contents: &str) -> std::io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode, Error> {
    let cfg = build_config(&args.common, args.method.as_deref())?;
    let trajectory = run_experiment(&cfg)?;
    write_or_print(cfg.out.as_ref(), &emit_trajectory_csv(&trajectory))?;

    // error summary against the reference trajectory on the run's grid
    let bench = benchmark(cfg.manifold, &cfg.jet, cfg.total_time)?;
    let stride = (cfg.h / stiefel_cubics::tol::H_REF).round() as usize;
    if stride >= 1 && (stride as f64 * stiefel_cubics::tol::H_REF - cfg.h).abs() < 1e-9 {
        let report = mean_error(&trajectory, &bench.subsample(stride))?;
        eprintln!(
            "{} on {}: mean error {:.6e}, relative {:.4}%",
            cfg.method,
            cfg.manifold,
            report.mean_error,
            report.relative_error * 100.0
        );
        if let Some(path) = &args.errors {
            std::fs::write(path, emit_plot_csv(&report))?;
        }
    } else if args.errors.is_some() {
        return Err(Error::GridMismatch {
            context: format!("h = {} is not resolvable on the reference grid", cfg.h),
        });
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: &CompareArgs) -> Result<ExitCode, Error> {
    let cfg = build_config(&args.common, None)?;
    let h_list = match &args.h_list {
        Some(list) => list
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidConfig {
                context: format!("invalid h list `{list}`"),
            })?,
        None => default_h_list(),
    };
    let table = run_comparison(cfg.manifold, &h_list, &cfg.jet)?;

    let mut failed = false;
    for (cell, error) in table.failures() {
        failed = true;
        eprintln!("cell ({}, h = {}) failed: {error}", cell.method, cell.h);
    }
    for report in table.reports() {
        eprintln!(
            "{:>14}  h = {:<8} mean {:.6e}  relative {:.4}%  runtime {:.2} ms",
            report.method.to_string(),
            report.h,
            report.mean_error,
            report.relative_error * 100.0,
            report.runtime.as_secs_f64() * 1e3
        );
    }
    eprintln!();
    eprint!("{}", render_log_error_table(&table));

    let reports: Vec<_> = table.reports().collect();
    write_or_print(cfg.out.as_ref(), &emit_csv(&reports, args.timings))?;
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode, Error> {
    let cfg = build_config(&args.common, None)?;
    let rows = run_sweep(cfg.manifold, args.count, cfg.seed);
    let mut failed = false;
    for (instance, outcome) in &rows {
        if let Err(error) = outcome {
            failed = true;
            eprintln!("instance {instance} failed: {error}");
        }
    }
    write_or_print(cfg.out.as_ref(), &emit_sweep_csv(&rows))?;
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
