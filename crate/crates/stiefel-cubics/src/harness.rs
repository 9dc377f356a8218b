//! Experiment harness: benchmark generation, method comparisons, error
//! reports, and CSV output for the command-line tool.
//!
//! An experiment fixes a manifold, an initial jet (position, velocity,
//! acceleration, jerk in chart coordinates) and a time grid. The benchmark
//! trajectory integrates the Hamiltonian flow with RK4 at a fine reference
//! step; its endpoints provide the boundary data that every method must
//! reproduce. The geometric cubic (`gcp`) interpolates that boundary data
//! directly, while the retraction-based integrators reach it by shooting.
//! Errors are mean Frobenius distances between embedded frames on a shared
//! time grid, reported both raw and relative to the manifold diameter.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::charts::{ChartManifold, ChartPhaseState};
use crate::decasteljau::{build_cubic, eval_cubic, CubicBoundaryData, CubicCurve};
use crate::error::{Error, Result};
use crate::matcore::orthonormality_defect;
use crate::symplectic::{momenta_from_jet, rk4_reference, shoot_bvp, DiscretizationScheme};
use crate::tol;
use crate::trajectory::{JetPoint, Method, TrajectoryRecord};

/// Absolute tolerance when deciding that two time grids coincide.
const TAU_GRID: f64 = 1e-9;

/// One experiment: manifold, method, grid, initial jet.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub manifold: ChartManifold,
    pub method: Method,
    /// Time step; `steps * h = total_time`.
    pub h: f64,
    pub steps: usize,
    pub jet: JetPoint,
    /// Seed for randomized sweeps (unused by deterministic runs).
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub total_time: f64,
}

/// The initial jet of the reproduction experiments: position, velocity,
/// acceleration and jerk in chart coordinates.
pub fn default_jet(manifold: ChartManifold) -> JetPoint {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    match manifold {
        ChartManifold::Sphere => JetPoint {
            q: vec![FRAC_PI_2, PI],
            dq: vec![0.1, 0.2],
            ddq: vec![1.0, 0.5],
            dddq: vec![0.1, 0.2],
        },
        ChartManifold::St32 => JetPoint {
            q: vec![FRAC_PI_4, PI, PI],
            dq: vec![0.1, 0.1, 0.05],
            ddq: vec![1.0, 0.3, 0.5],
            dddq: vec![0.1, 0.1, 0.05],
        },
    }
}

/// The h grid of the error-table experiments.
pub fn default_h_list() -> Vec<f64> {
    vec![1.0 / 10.0, 1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0]
}

impl ExperimentConfig {
    /// One-second run at N = 100 steps with the default jet.
    pub fn defaults(manifold: ChartManifold, method: Method) -> Self {
        Self {
            manifold,
            method,
            h: 0.01,
            steps: 100,
            jet: default_jet(manifold),
            seed: 0,
            out: None,
            total_time: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidConfig {
                context: format!("time step must be positive, got {}", self.h),
            });
        }
        if self.steps == 0 {
            return Err(Error::InvalidConfig {
                context: "step count must be positive".to_string(),
            });
        }
        if (self.steps as f64 * self.h - self.total_time).abs() > 1e-9 {
            return Err(Error::InvalidConfig {
                context: format!(
                    "steps × h must equal the total time: {} × {} ≠ {}",
                    self.steps, self.h, self.total_time
                ),
            });
        }
        let m = self.manifold.coord_dim();
        for (name, block) in [
            ("jet position", &self.jet.q),
            ("jet velocity", &self.jet.dq),
            ("jet acceleration", &self.jet.ddq),
            ("jet jerk", &self.jet.dddq),
        ] {
            if block.len() != m {
                return Err(Error::InvalidConfig {
                    context: format!("{name} must have {m} entries, got {}", block.len()),
                });
            }
        }
        // reject configurations that start inside a chart exclusion zone
        self.manifold.check_bounds(&self.jet.q)?;
        Ok(())
    }

    /// Parses the plain `key = value` configuration format. Unknown keys are
    /// rejected; missing keys keep the defaults for the given manifold.
    ///
    /// Keys: `manifold`, `method`, `h`, `steps`, `jet` (comma-separated
    /// q, q̇, q̈, q⁽³⁾ blocks, 4m values), `seed`, `out`, `total_time`.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut manifold = ChartManifold::Sphere;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::InvalidConfig {
                context: format!("line {}: expected `key = value`, got `{line}`", lineno + 1),
            })?;
            entries.push((key.trim().to_string(), value.trim().to_string(), lineno + 1));
        }
        // manifold first: it fixes the jet dimensions of the defaults
        for (key, value, lineno) in &entries {
            if key == "manifold" {
                manifold = ChartManifold::parse(value).ok_or_else(|| Error::InvalidConfig {
                    context: format!("line {lineno}: unknown manifold `{value}`"),
                })?;
            }
        }
        let mut cfg = ExperimentConfig::defaults(manifold, Method::Gcp);
        let mut explicit_h = false;
        let mut explicit_steps = false;
        for (key, value, lineno) in entries {
            let bad = |what: &str| Error::InvalidConfig {
                context: format!("line {lineno}: invalid {what} `{value}`"),
            };
            match key.as_str() {
                "manifold" => {}
                "method" => cfg.method = Method::parse(&value).ok_or_else(|| bad("method"))?,
                "h" => {
                    cfg.h = value.parse().map_err(|_| bad("time step"))?;
                    explicit_h = true;
                }
                "steps" => {
                    cfg.steps = value.parse().map_err(|_| bad("step count"))?;
                    explicit_steps = true;
                }
                "jet" => {
                    let values: Vec<f64> = value
                        .split(',')
                        .map(|v| v.trim().parse::<f64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad("jet"))?;
                    cfg.jet = parse_jet_values(manifold, &values)?;
                }
                "seed" => cfg.seed = value.parse().map_err(|_| bad("seed"))?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "total_time" => cfg.total_time = value.parse().map_err(|_| bad("total time"))?,
                other => {
                    return Err(Error::InvalidConfig {
                        context: format!("line {lineno}: unknown key `{other}`"),
                    })
                }
            }
        }
        reconcile_grid(&mut cfg, explicit_h, explicit_steps)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Splits a flat list of 4m values into the four jet blocks.
pub fn parse_jet_values(manifold: ChartManifold, values: &[f64]) -> Result<JetPoint> {
    let m = manifold.coord_dim();
    if values.len() != 4 * m {
        return Err(Error::InvalidConfig {
            context: format!(
                "jet for {} needs 4·{m} = {} comma-separated values, got {}",
                manifold,
                4 * m,
                values.len()
            ),
        });
    }
    Ok(JetPoint {
        q: values[0..m].to_vec(),
        dq: values[m..2 * m].to_vec(),
        ddq: values[2 * m..3 * m].to_vec(),
        dddq: values[3 * m..4 * m].to_vec(),
    })
}

/// Makes `h`, `steps` and `total_time` consistent after partial overrides:
/// whichever of `h`/`steps` was given wins, the other is derived.
pub fn reconcile_grid(cfg: &mut ExperimentConfig, explicit_h: bool, explicit_steps: bool) -> Result<()> {
    match (explicit_h, explicit_steps) {
        (true, false) => {
            let steps = cfg.total_time / cfg.h;
            if (steps - steps.round()).abs() > 1e-6 || steps < 0.5 {
                return Err(Error::InvalidConfig {
                    context: format!("total time {} is not a multiple of h = {}", cfg.total_time, cfg.h),
                });
            }
            cfg.steps = steps.round() as usize;
        }
        (false, true) => {
            cfg.h = cfg.total_time / cfg.steps as f64;
        }
        _ => {}
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Running experiments
// ---------------------------------------------------------------------------

/// The reference trajectory of an experiment: momenta matching the initial
/// jet, integrated by RK4 at the reference step [`tol::H_REF`].
pub fn benchmark(manifold: ChartManifold, jet: &JetPoint, total_time: f64) -> Result<TrajectoryRecord> {
    let (pq, pdq) = momenta_from_jet(manifold, &jet.q, &jet.dq, &jet.ddq, &jet.dddq)?;
    let s0 = ChartPhaseState::new(&jet.q, &jet.dq, &pq, &pdq)?;
    let n_ref = (total_time / tol::H_REF).round() as usize;
    rk4_reference(manifold, tol::H_REF, n_ref, &s0)
}

/// Boundary data for the cubic generator, read off a benchmark trajectory.
///
/// Velocities are rescaled by the total time because the cubic is
/// parameterized on [0, 1].
pub fn boundary_data_from_benchmark(
    manifold: ChartManifold,
    bench: &TrajectoryRecord,
) -> Result<CubicBoundaryData> {
    let states = bench.states.as_ref().ok_or_else(|| Error::InvalidConfig {
        context: "benchmark trajectory carries no chart states".to_string(),
    })?;
    let first = states.first().ok_or_else(|| Error::InvalidConfig {
        context: "benchmark trajectory is empty".to_string(),
    })?;
    let last = states.last().unwrap();
    let total_time = *bench.times.last().unwrap() - bench.times[0];
    let s0 = manifold.embed(first.q())?;
    let v0 = manifold.pushforward(first.q(), first.dq())?.scale(total_time);
    let s3 = manifold.embed(last.q())?;
    let v3 = manifold.pushforward(last.q(), last.dq())?.scale(total_time);
    CubicBoundaryData::new(s0, v0, s3, v3)
}

/// Builds the cubic for an experiment's boundary data.
pub fn build_experiment_cubic(manifold: ChartManifold, bench: &TrajectoryRecord) -> Result<CubicCurve> {
    build_cubic(&boundary_data_from_benchmark(manifold, bench)?)
}

/// Samples a cubic on an arbitrary time grid (normalized by the total time).
pub fn sample_cubic_on_times(curve: &CubicCurve, times: &[f64], h: f64) -> Result<TrajectoryRecord> {
    let total_time = *times.last().unwrap() - times[0];
    let mut points = Vec::with_capacity(times.len());
    for &t in times {
        points.push(eval_cubic(curve, (t - times[0]) / total_time)?);
    }
    Ok(TrajectoryRecord {
        method: Method::Gcp,
        h,
        n_steps: times.len() - 1,
        times: times.to_vec(),
        points,
        states: None,
        jets: None,
    })
}

/// Runs one experiment end to end and returns the produced trajectory.
///
/// The benchmark is regenerated internally to provide boundary data; the
/// shooting methods are seeded with the benchmark's initial momenta.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<TrajectoryRecord> {
    cfg.validate()?;
    let bench = benchmark(cfg.manifold, &cfg.jet, cfg.total_time)?;
    let times: Vec<f64> = (0..=cfg.steps).map(|j| j as f64 * cfg.h).collect();
    match cfg.method {
        Method::Gcp => {
            let curve = build_experiment_cubic(cfg.manifold, &bench)?;
            sample_cubic_on_times(&curve, &times, cfg.h)
        }
        Method::InitialPoint | Method::MidPoint => {
            let scheme = if cfg.method == Method::InitialPoint {
                DiscretizationScheme::InitialPoint
            } else {
                DiscretizationScheme::MidPoint
            };
            shoot_to_benchmark(scheme, cfg.manifold, cfg.h, cfg.steps, &bench)
        }
        Method::Rk4 => {
            let states = bench.states.as_ref().unwrap();
            rk4_reference(cfg.manifold, cfg.h, cfg.steps, &states[0])
        }
    }
}

/// Shooting run against benchmark boundary data, seeded with the
/// benchmark's own initial momenta.
pub fn shoot_to_benchmark(
    scheme: DiscretizationScheme,
    manifold: ChartManifold,
    h: f64,
    steps: usize,
    bench: &TrajectoryRecord,
) -> Result<TrajectoryRecord> {
    let states = bench.states.as_ref().ok_or_else(|| Error::InvalidConfig {
        context: "benchmark trajectory carries no chart states".to_string(),
    })?;
    let first = &states[0];
    let last = states.last().unwrap();
    shoot_bvp(
        scheme,
        manifold,
        h,
        steps,
        first.q(),
        first.dq(),
        last.q(),
        last.dq(),
        Some((first.pq(), first.pdq())),
    )
}

// ---------------------------------------------------------------------------
// Error reports
// ---------------------------------------------------------------------------

/// Mean Frobenius error between two trajectories on a shared grid.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub method: Method,
    pub manifold: ChartManifold,
    pub h: f64,
    pub steps: usize,
    /// Mean over samples of ‖A_j - B_j‖_F.
    pub mean_error: f64,
    /// `mean_error` divided by the manifold diameter.
    pub relative_error: f64,
    pub diameter: f64,
    /// Per-sample (t, ‖A_j - B_j‖_F) rows.
    pub per_sample: Vec<(f64, f64)>,
    pub runtime: Duration,
}

fn manifold_of_record(record: &TrajectoryRecord) -> Result<ChartManifold> {
    match record.points.first().map(|p| (p.n(), p.k())) {
        Some((3, 1)) => Ok(ChartManifold::Sphere),
        Some((3, 2)) => Ok(ChartManifold::St32),
        other => Err(Error::DimensionMismatch {
            context: format!("no chart manifold matches frame shape {other:?}"),
        }),
    }
}

/// Compares two trajectories sample by sample. Their time grids must agree;
/// the relative error divides by the manifold diameter.
pub fn mean_error(a: &TrajectoryRecord, b: &TrajectoryRecord) -> Result<ErrorReport> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch {
            context: format!("{} vs {} samples", a.len(), b.len()),
        });
    }
    if a.is_empty() {
        return Err(Error::GridMismatch {
            context: "empty trajectories".to_string(),
        });
    }
    for (ta, tb) in a.times.iter().zip(&b.times) {
        if (ta - tb).abs() > TAU_GRID {
            return Err(Error::GridMismatch {
                context: format!("times {ta} and {tb} differ"),
            });
        }
    }
    let manifold = manifold_of_record(a)?;
    let mut per_sample = Vec::with_capacity(a.len());
    let mut total = 0.0;
    for j in 0..a.len() {
        let err = (a.points[j].matrix() - b.points[j].matrix()).norm();
        per_sample.push((a.times[j], err));
        total += err;
    }
    let mean = total / a.len() as f64;
    let diameter = manifold.diameter();
    Ok(ErrorReport {
        method: a.method,
        manifold,
        h: a.h,
        steps: a.n_steps,
        mean_error: mean,
        relative_error: mean / diameter,
        diameter,
        per_sample,
        runtime: Duration::ZERO,
    })
}

/// One (method, h) cell of a comparison table.
#[derive(Debug)]
pub struct ComparisonCell {
    pub method: Method,
    pub h: f64,
    pub steps: usize,
    pub outcome: Result<ErrorReport>,
}

/// The full method-versus-step-size table for one manifold.
#[derive(Debug)]
pub struct ComparisonTable {
    pub manifold: ChartManifold,
    pub cells: Vec<ComparisonCell>,
}

impl ComparisonTable {
    pub fn reports(&self) -> impl Iterator<Item = &ErrorReport> {
        self.cells.iter().filter_map(|c| c.outcome.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&ComparisonCell, &Error)> {
        self.cells.iter().filter_map(|c| c.outcome.as_ref().err().map(|e| (c, e)))
    }

    pub fn report_for(&self, method: Method, h: f64) -> Option<&ErrorReport> {
        self.cells
            .iter()
            .find(|c| c.method == method && (c.h - h).abs() < 1e-12)
            .and_then(|c| c.outcome.as_ref().ok())
    }
}

/// Runs the error-comparison experiment: the cubic generator once against
/// the full benchmark grid, and both shooting integrators at every h. The
/// cubic has no h dependence, so its row repeats across the table.
/// Per-cell failures are recorded without aborting the run.
pub fn run_comparison(manifold: ChartManifold, h_list: &[f64], jet: &JetPoint) -> Result<ComparisonTable> {
    let total_time = 1.0;
    let bench = benchmark(manifold, jet, total_time)?;

    let gcp_start = Instant::now();
    let gcp_outcome = build_experiment_cubic(manifold, &bench)
        .and_then(|curve| sample_cubic_on_times(&curve, &bench.times, bench.h))
        .and_then(|trajectory| mean_error(&trajectory, &bench));
    let gcp_runtime = gcp_start.elapsed();
    let gcp_report = gcp_outcome.map(|mut report| {
        report.runtime = gcp_runtime;
        report
    });

    let mut cells = Vec::new();
    for &h in h_list {
        let steps_f = total_time / h;
        let steps = steps_f.round() as usize;
        let stride = (h / tol::H_REF).round() as usize;
        let grid_ok = (steps_f - steps_f.round()).abs() < 1e-9
            && (stride as f64 * tol::H_REF - h).abs() < TAU_GRID;

        // the h-independent cubic row, repeated for table completeness
        cells.push(ComparisonCell {
            method: Method::Gcp,
            h,
            steps,
            outcome: match &gcp_report {
                Ok(report) => Ok(ErrorReport {
                    h,
                    steps,
                    ..report.clone()
                }),
                Err(e) => Err(Error::InvalidConfig {
                    context: format!("cubic construction failed: {e}"),
                }),
            },
        });

        for scheme in [DiscretizationScheme::InitialPoint, DiscretizationScheme::MidPoint] {
            let outcome = if grid_ok {
                let start = Instant::now();
                let outcome = shoot_to_benchmark(scheme, manifold, h, steps, &bench)
                    .and_then(|trajectory| mean_error(&trajectory, &bench.subsample(stride)));
                outcome.map(|mut report| {
                    report.runtime = start.elapsed();
                    report
                })
            } else {
                Err(Error::InvalidConfig {
                    context: format!("h = {h} does not divide the unit interval on the reference grid"),
                })
            };
            cells.push(ComparisonCell {
                method: scheme.method(),
                h,
                steps,
                outcome,
            });
        }
    }
    Ok(ComparisonTable { manifold, cells })
}

// ---------------------------------------------------------------------------
// Randomized boundary-data sweeps
// ---------------------------------------------------------------------------

/// Boundary-condition audit of one random cubic instance.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub instance: usize,
    /// ‖γ(0) - S₀‖_F
    pub start_error: f64,
    /// ‖γ(1) - S₃‖_F
    pub end_error: f64,
    /// ‖γ̇(0) - V₀‖_F
    pub v0_error: f64,
    /// ‖γ̇(1) - V₃‖_F
    pub v3_error: f64,
    /// max over 101 samples of the orthonormality defect
    pub max_orth_defect: f64,
}

/// Builds `count` random well-posed cubics (seeded) and audits the boundary
/// conditions of each. Per-instance failures are recorded, not fatal.
pub fn run_sweep(manifold: ChartManifold, count: usize, seed: u64) -> Vec<(usize, Result<SweepRow>)> {
    use rand::SeedableRng;
    let (n, k) = manifold.frame_shape();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|instance| {
            let data = CubicBoundaryData::random(&mut rng, n, k);
            let audit = (|| -> Result<SweepRow> {
                let curve = build_cubic(&data)?;
                let start_error = eval_cubic(&curve, 0.0)?.distance(&data.s0);
                let end_error = eval_cubic(&curve, 1.0)?.distance(&data.s3);
                let v0 = crate::decasteljau::eval_cubic_velocity(&curve, 0.0)?;
                let v3 = crate::decasteljau::eval_cubic_velocity(&curve, 1.0)?;
                let v0_error = (v0.matrix() - data.v0.matrix()).norm();
                let v3_error = (v3.matrix() - data.v3.matrix()).norm();
                let mut max_orth_defect: f64 = 0.0;
                for j in 0..=100 {
                    let point = eval_cubic(&curve, j as f64 / 100.0)?;
                    max_orth_defect = max_orth_defect.max(orthonormality_defect(point.matrix()));
                }
                Ok(SweepRow {
                    instance,
                    start_error,
                    end_error,
                    v0_error,
                    v3_error,
                    max_orth_defect,
                })
            })();
            (instance, audit)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

/// Formats a float with 12 significant digits, scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

pub const REPORT_CSV_HEADER: &str = "method,manifold,h,N,mean_error,relative_error,runtime_ms";

/// Serializes error reports as CSV. When `include_runtime` is false the
/// runtime column carries zeros so that identical configurations produce
/// byte-identical files.
pub fn emit_csv(reports: &[&ErrorReport], include_runtime: bool) -> String {
    let mut out = String::new();
    out.push_str(REPORT_CSV_HEADER);
    out.push('\n');
    for report in reports {
        let runtime_ms = if include_runtime {
            report.runtime.as_secs_f64() * 1e3
        } else {
            0.0
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            report.method,
            report.manifold,
            fmt_float(report.h),
            report.steps,
            fmt_float(report.mean_error),
            fmt_float(report.relative_error),
            fmt_float(runtime_ms),
        );
    }
    out
}

/// One parsed row of the report CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub manifold: ChartManifold,
    pub h: f64,
    pub steps: usize,
    pub mean_error: f64,
    pub relative_error: f64,
    pub runtime_ms: f64,
}

/// Parses the report CSV format back into rows.
pub fn parse_report_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::InvalidConfig {
        context: "empty CSV".to_string(),
    })?;
    if header != REPORT_CSV_HEADER {
        return Err(Error::InvalidConfig {
            context: format!("unexpected CSV header `{header}`"),
        });
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::InvalidConfig {
                context: format!("row {}: expected 7 fields, got {}", lineno + 2, fields.len()),
            });
        }
        let bad = |what: &str| Error::InvalidConfig {
            context: format!("row {}: invalid {what}", lineno + 2),
        };
        rows.push(ReportRow {
            method: Method::parse(fields[0]).ok_or_else(|| bad("method"))?,
            manifold: ChartManifold::parse(fields[1]).ok_or_else(|| bad("manifold"))?,
            h: fields[2].parse().map_err(|_| bad("h"))?,
            steps: fields[3].parse().map_err(|_| bad("N"))?,
            mean_error: fields[4].parse().map_err(|_| bad("mean_error"))?,
            relative_error: fields[5].parse().map_err(|_| bad("relative_error"))?,
            runtime_ms: fields[6].parse().map_err(|_| bad("runtime_ms"))?,
        });
    }
    Ok(rows)
}

/// Per-sample `t,error` plot data for one report.
pub fn emit_plot_csv(report: &ErrorReport) -> String {
    let mut out = String::from("t,error\n");
    for (t, err) in &report.per_sample {
        let _ = writeln!(out, "{},{}", fmt_float(*t), fmt_float(*err));
    }
    out
}

/// Trajectory plot data: time plus the embedded frame entries in row-major
/// order (a11, a12, a21, …).
pub fn emit_trajectory_csv(record: &TrajectoryRecord) -> String {
    let mut out = String::from("t");
    if let Some(first) = record.points.first() {
        for i in 0..first.n() {
            for j in 0..first.k() {
                let _ = write!(out, ",a{}{}", i + 1, j + 1);
            }
        }
    }
    out.push('\n');
    for (idx, point) in record.points.iter().enumerate() {
        let _ = write!(out, "{}", fmt_float(record.times[idx]));
        for i in 0..point.n() {
            for j in 0..point.k() {
                let _ = write!(out, ",{}", fmt_float(point.matrix()[(i, j)]));
            }
        }
        out.push('\n');
    }
    out
}

pub const SWEEP_CSV_HEADER: &str =
    "instance,status,start_error,end_error,v0_error,v3_error,max_orth_defect";

/// Serializes sweep audits; failed instances carry the error text in the
/// status column and empty metric fields.
pub fn emit_sweep_csv(rows: &[(usize, Result<SweepRow>)]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for (instance, outcome) in rows {
        match outcome {
            Ok(row) => {
                let _ = writeln!(
                    out,
                    "{},ok,{},{},{},{},{}",
                    instance,
                    fmt_float(row.start_error),
                    fmt_float(row.end_error),
                    fmt_float(row.v0_error),
                    fmt_float(row.v3_error),
                    fmt_float(row.max_orth_defect),
                );
            }
            Err(e) => {
                let message = e.to_string().replace(',', ";");
                let _ = writeln!(out, "{instance},error: {message},,,,,");
            }
        }
    }
    out
}

/// Human-readable table with log10 errors, one row per h.
pub fn render_log_error_table(table: &ComparisonTable) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "log10 mean error on {} (columns: gcp, initial-point, midpoint)",
        table.manifold
    );
    let _ = writeln!(out, "{:>10} {:>12} {:>14} {:>12}", "h", "gcp", "initial-point", "midpoint");
    let mut h_values: Vec<f64> = Vec::new();
    for cell in &table.cells {
        if !h_values.iter().any(|h| (h - cell.h).abs() < 1e-12) {
            h_values.push(cell.h);
        }
    }
    for h in h_values {
        let fmt_cell = |method: Method| -> String {
            table
                .report_for(method, h)
                .map(|r| format!("{:.4}", r.mean_error.log10()))
                .unwrap_or_else(|| "failed".to_string())
        };
        let _ = writeln!(
            out,
            "{:>10.5} {:>12} {:>14} {:>12}",
            h,
            fmt_cell(Method::Gcp),
            fmt_cell(Method::InitialPoint),
            fmt_cell(Method::MidPoint),
        );
    }
    out
}
