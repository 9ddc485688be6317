//! Simulation driver, error measurement and CSV/JSON artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::flux::Primitive;
use crate::grid::{fill_ghosts, FieldArray, UniformGrid};
use crate::problems::{ProblemId, ProblemSpec, ReferenceSolution};
use crate::reconstruction::BranchStats;
use crate::scalar::{lit, Real};
use crate::spatial::SpatialOperator;
use crate::time::{compute_dt, step, Integrator, RkWorkspace, TimeStepLaw};
use crate::weights::{Scheme, WeightParams};

const MAX_STEPS: u64 = 50_000_000;
const REFERENCE_VERSION: u32 = 1;

/// User-facing run configuration; unset fields take the preset value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problem: String,
    pub scheme: Scheme,
    pub n: Option<usize>,
    pub ny: Option<usize>,
    pub t_final: Option<f64>,
    pub theta: Option<f64>,
    pub gamma_exp: Option<f64>,
    pub eps: Option<f64>,
    pub eps_zero: Option<f64>,
    pub s2_max: Option<f64>,
    pub cfl: Option<f64>,
    pub law: Option<TimeStepLaw>,
    pub integrator: Option<Integrator>,
    /// Component-wise instead of characteristic reconstruction.
    pub componentwise: bool,
    pub out: Option<PathBuf>,
    pub deterministic: bool,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            problem: "sod".into(),
            scheme: Scheme::H,
            n: None,
            ny: None,
            t_final: None,
            theta: None,
            gamma_exp: None,
            eps: None,
            eps_zero: None,
            s2_max: None,
            cfl: None,
            law: None,
            integrator: None,
            componentwise: false,
            out: None,
            deterministic: true,
            workers: None,
        }
    }
}

/// Configuration checked against its preset.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub spec: ProblemSpec,
    pub params: WeightParams,
    pub n: usize,
    pub ny: Option<usize>,
    pub t_final: f64,
    pub law: TimeStepLaw,
    pub integrator: Integrator,
    pub characteristic: bool,
}

impl RunConfig {
    pub fn for_problem(problem: &str, scheme: Scheme) -> Self {
        RunConfig {
            problem: problem.into(),
            scheme,
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SolverError::InvalidArgument(format!("config: {e}")))
    }

    pub fn resolve(&self) -> Result<ResolvedRun> {
        let spec = ProblemId::parse(&self.problem)?.spec();
        let bad = |m: String| Err(SolverError::InvalidArgument(m));
        let params = WeightParams {
            theta: self.theta.unwrap_or(spec.theta),
            gamma_exp: self.gamma_exp.unwrap_or(4.0),
            scheme: self.scheme,
            eps: self.eps,
            ..Default::default()
        };
        let params = WeightParams {
            eps_zero: self.eps_zero.unwrap_or(params.eps_zero),
            s2_max: self.s2_max.unwrap_or(params.s2_max),
            ..params
        };
        if let Err(m) = params.validate() {
            return bad(m);
        }
        let n = self.n.unwrap_or(spec.n);
        if self.ny.is_some() && !spec.is_2d() {
            return bad(format!("{} is one-dimensional; ny does not apply", spec.name));
        }
        let t_final = self.t_final.unwrap_or(spec.t_final);
        if !(t_final > 0.0 && t_final.is_finite()) {
            return bad(format!("t_final must be positive, got {t_final}"));
        }
        let law = match (self.law, self.cfl) {
            (Some(_), Some(_)) => return bad("give either a time-step law or a CFL number, not both".into()),
            (Some(l), None) => l,
            (None, Some(c)) => TimeStepLaw::Cfl(c),
            (None, None) => spec.law,
        };
        match law {
            TimeStepLaw::Cfl(c) if !(c > 0.0 && c <= 1.0) => return bad(format!("cfl must lie in (0, 1], got {c}")),
            TimeStepLaw::FixedPower(e) if !(e > 0.0) => return bad(format!("time-step exponent must be positive, got {e}")),
            _ => {}
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        let run = ResolvedRun {
            spec,
            params,
            n,
            ny: self.ny.or_else(|| spec.ny_for(n)),
            t_final,
            law,
            integrator: self.integrator.unwrap_or(spec.integrator),
            characteristic: !self.componentwise,
        };
        run.spec.grid::<f64>(run.n, run.ny)?;
        Ok(run)
    }

    /// Runs `f` on a pool with the configured number of workers.
    pub fn with_pool<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        match self.workers {
            None => Ok(f()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| SolverError::InvalidArgument(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

impl ResolvedRun {
    pub fn stem(&self) -> String {
        format!("{}_{}_{}", self.spec.name, self.params.scheme.name(), self.n)
    }

    pub fn grid<T: Real>(&self) -> Result<UniformGrid<T>> {
        self.spec.grid(self.n, self.ny)
    }
}

/// Step at which a run stopped early.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub step: u64,
    pub t: f64,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DtStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// Final state of a simulation.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub grid: UniformGrid<T>,
    pub q: FieldArray<T>,
    pub t: f64,
    pub steps: u64,
    pub dt: DtStats,
    pub stats: BranchStats,
    pub wall_seconds: f64,
    /// Interior totals `sum q dV` at the start and end.
    pub initial_totals: Vec<f64>,
    pub final_totals: Vec<f64>,
    pub failure: Option<Failure>,
}

impl<T: Real> Outcome<T> {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    /// Largest relative change of any conserved total.
    pub fn conservation_drift(&self) -> f64 {
        self.initial_totals
            .iter()
            .zip(&self.final_totals)
            .map(|(a, b)| (a - b).abs() / a.abs().max(1e-300))
            .fold(0.0, f64::max)
    }

    /// Smallest density and pressure over interior cells.
    pub fn min_density_pressure(&self, gamma: f64) -> (f64, f64) {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        for iy in self.grid.y_interior() {
            for ix in self.grid.x_interior() {
                let c: Vec<f64> = self.q.cell(ix, iy).iter().map(|v| v.to_f64().unwrap()).collect();
                if c.len() < 3 {
                    lo.0 = lo.0.min(c[0]);
                    continue;
                }
                let w = Primitive::from_conserved(&c, gamma);
                lo = (lo.0.min(w.rho), lo.1.min(w.p));
            }
        }
        lo
    }
}

/// Time-marches a resolved run to its final time.
pub fn simulate<T: Real>(run: &ResolvedRun) -> Result<Outcome<T>> {
    let grid = run.grid::<T>()?;
    let model = run.spec.flux_model::<T>();
    let bcs = run.spec.boundaries::<T>();
    let mut op = SpatialOperator::new(model, run.params);
    op.characteristic = run.characteristic;
    let mut q = run.spec.initial_field(&grid)?;
    let to64 = |v: Vec<T>| v.into_iter().map(|x| x.to_f64().unwrap()).collect::<Vec<_>>();
    let initial_totals = to64(q.interior_totals(&grid));
    let mut ws = RkWorkspace::new(&q);
    let mut stats = BranchStats::default();
    let t_final: T = lit(run.t_final);
    let mut t = T::zero();
    let mut steps = 0u64;
    let mut dt_sum = 0.0;
    let mut dt_min = f64::INFINITY;
    let mut dt_max: f64 = 0.0;
    let mut failure = None;
    let start = Instant::now();
    while t < t_final {
        let attempt = (|| {
            let dt = compute_dt(&q, &grid, &model, run.law, t, t_final)?;
            if !(dt > T::zero()) {
                return Err(SolverError::InvalidArgument(format!("time step collapsed to {dt:?}")));
            }
            let mut rhs = |u: &mut FieldArray<T>, s: T, out: &mut FieldArray<T>| -> Result<()> {
                fill_ghosts(u, &grid, &bcs, s)?;
                stats.merge(&op.evaluate(u, &grid, out)?);
                Ok(())
            };
            step(run.integrator, &mut q, t, dt, &mut ws, &mut rhs)?;
            Ok(dt)
        })();
        match attempt {
            Ok(dt) => {
                t = if dt == t_final - t { t_final } else { t + dt };
                steps += 1;
                let d = dt.to_f64().unwrap();
                dt_sum += d;
                dt_min = dt_min.min(d);
                dt_max = dt_max.max(d);
            }
            Err(e) => {
                failure = Some(Failure {
                    step: steps + 1,
                    t: t.to_f64().unwrap(),
                    message: e.to_string(),
                });
                break;
            }
        }
        if steps >= MAX_STEPS {
            failure = Some(Failure {
                step: steps,
                t: t.to_f64().unwrap(),
                message: "step limit reached".into(),
            });
            break;
        }
    }
    let wall_seconds = start.elapsed().as_secs_f64();
    if failure.is_none() {
        fill_ghosts(&mut q, &grid, &bcs, t)?;
    }
    let final_totals = to64(q.interior_totals(&grid));
    Ok(Outcome {
        grid,
        q,
        t: t.to_f64().unwrap(),
        steps,
        dt: DtStats {
            min: if steps > 0 { dt_min } else { 0.0 },
            max: dt_max,
            mean: if steps > 0 { dt_sum / steps as f64 } else { 0.0 },
        },
        stats,
        wall_seconds,
        initial_totals,
        final_totals,
        failure,
    })
}

/// Density (or scalar) at interior cell centres, row-major with x fastest.
pub fn density<T: Real>(o: &Outcome<T>) -> Vec<f64> {
    let mut v = Vec::with_capacity(o.grid.interior_cells());
    for iy in o.grid.y_interior() {
        for ix in o.grid.x_interior() {
            v.push(o.q.cell(ix, iy)[0].to_f64().unwrap());
        }
    }
    v
}

/// Interior cell centres in the order of [`density`].
pub fn centers<T: Real>(grid: &UniformGrid<T>) -> Vec<(f64, f64)> {
    let ys: Vec<f64> = match grid.y {
        Some(a) => (0..a.n).map(|j| a.center(j).to_f64().unwrap()).collect(),
        None => vec![0.0],
    };
    let mut v = Vec::with_capacity(grid.interior_cells());
    for &y in &ys {
        for i in 0..grid.x.n {
            v.push((grid.x.center(i).to_f64().unwrap(), y));
        }
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub l1: f64,
    pub linf: f64,
}

/// L1 error normalized by the domain measure (`dV sum |e| / |domain|`,
/// i.e. the mean absolute error on a uniform grid) and `Linf = max |e|`.
pub fn error_norms(numerical: &[f64], reference: &[f64]) -> ErrorNorms {
    let mut l1 = 0.0;
    let mut linf: f64 = 0.0;
    for (a, b) in numerical.iter().zip(reference) {
        let e = (a - b).abs();
        l1 += e;
        linf = linf.max(e);
    }
    ErrorNorms {
        l1: l1 / numerical.len().max(1) as f64,
        linf,
    }
}

static REFERENCE_LOCK: Mutex<()> = Mutex::new(());

/// Reference density at the given points, or `None` when the problem has
/// none. Fine-grid references are cached under `cache_dir`.
pub fn reference_density(spec: &ProblemSpec, t: f64, points: &[(f64, f64)], cache_dir: Option<&Path>) -> Result<Option<Vec<f64>>> {
    match spec.reference {
        ReferenceSolution::None => Ok(None),
        ReferenceSolution::FineGridSelf { scheme, n } => {
            let (xs, rho) = fine_reference(spec, scheme, n, t, cache_dir)?;
            Ok(Some(points.iter().map(|&(x, _)| interpolate(&xs, &rho, x)).collect()))
        }
        _ => points.iter().map(|&(x, y)| spec.exact_density(x, y, t)).collect::<Result<Vec<_>>>().map(Some),
    }
}

fn reference_header(spec: &ProblemSpec, scheme: Scheme, n: usize, t: f64) -> String {
    format!(
        "# weno-reference v{REFERENCE_VERSION} problem={} scheme={} n={n} t_final={t:e}",
        spec.name,
        scheme.name()
    )
}

fn fine_reference(spec: &ProblemSpec, scheme: Scheme, n: usize, t: f64, cache_dir: Option<&Path>) -> Result<(Vec<f64>, Vec<f64>)> {
    let _guard = REFERENCE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let header = reference_header(spec, scheme, n, t);
    let path = cache_dir.map(|d| d.join(format!("reference_{}_{}_{n}.csv", spec.name, scheme.name())));
    if let Some(p) = &path {
        if let Ok(text) = fs::read_to_string(p) {
            if let Some(parsed) = parse_reference(&text, &header) {
                return Ok(parsed);
            }
        }
    }
    let cfg = RunConfig {
        problem: spec.name.into(),
        scheme,
        n: Some(n),
        t_final: Some(t),
        ..Default::default()
    };
    let run = cfg.resolve()?;
    let o = simulate::<f64>(&run)?;
    if let Some(f) = o.failure {
        return Err(SolverError::InvalidArgument(format!("reference run failed at step {}: {}", f.step, f.message)));
    }
    let xs: Vec<f64> = centers(&o.grid).into_iter().map(|c| c.0).collect();
    let rho = density(&o);
    if let Some(p) = &path {
        let mut text = header.clone();
        text.push_str("\n# x, rho\n");
        for (x, r) in xs.iter().zip(&rho) {
            let _ = writeln!(text, "{x:.16e},{r:.16e}");
        }
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = p.with_extension("csv.tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, p)?;
    }
    Ok((xs, rho))
}

fn parse_reference(text: &str, header: &str) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut lines = text.lines();
    if lines.next()? != header {
        return None;
    }
    let (mut xs, mut rho) = (Vec::new(), Vec::new());
    for l in lines.filter(|l| !l.starts_with('#')) {
        let (a, b) = l.split_once(',')?;
        xs.push(a.trim().parse().ok()?);
        rho.push(b.trim().parse().ok()?);
    }
    (!xs.is_empty()).then_some((xs, rho))
}

/// Piecewise-linear interpolation, constant beyond the end points.
pub fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|&v| v < x);
    if k == 0 {
        ys[0]
    } else if k == xs.len() {
        ys[k - 1]
    } else {
        let w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
        ys[k - 1] + w * (ys[k] - ys[k - 1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub problem: String,
    pub scheme: Scheme,
    pub n: usize,
    pub ny: Option<usize>,
    pub t_final: f64,
    pub t_reached: f64,
    pub steps: u64,
    pub dt: DtStats,
    pub branches: BranchStats,
    pub wall_seconds: f64,
    pub conservation_drift: f64,
    pub min_density: f64,
    pub min_pressure: Option<f64>,
    pub density_error: Option<ErrorNorms>,
    pub failure: Option<Failure>,
    pub workers: Option<usize>,
    pub deterministic: bool,
}

/// Files written by [`run`].
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub report: RunSummary,
}

/// Final-state table: coordinates, conserved and primitive variables.
pub fn solution_csv<T: Real>(spec: &ProblemSpec, o: &Outcome<T>) -> String {
    let two_d = o.grid.y.is_some();
    let mut s = String::new();
    let cols = match (spec.ncomp(), two_d) {
        (1, _) => "x, q",
        (3, _) => "x, rho, rho*u, E, rho, u, p",
        _ => "x, y, rho, rho*u, rho*v, E, rho, u, v, p",
    };
    let _ = writeln!(
        s,
        "# {} t={:e} steps={} | {cols} | nondimensional units",
        spec.name, o.t, o.steps
    );
    let centres = centers(&o.grid);
    let per_row = o.grid.x.n;
    for (k, (iy, ix)) in o.grid.y_interior().flat_map(|iy| o.grid.x_interior().map(move |ix| (iy, ix))).enumerate() {
        if two_d && k > 0 && k % per_row == 0 {
            s.push('\n');
        }
        let (x, y) = centres[k];
        let c: Vec<f64> = o.q.cell(ix, iy).iter().map(|v| v.to_f64().unwrap()).collect();
        let _ = write!(s, "{x:.16e}");
        if two_d {
            let _ = write!(s, ",{y:.16e}");
        }
        for v in &c {
            let _ = write!(s, ",{v:.16e}");
        }
        if c.len() > 1 {
            let w = Primitive::from_conserved(&c, spec.gamma);
            let prim: &[f64] = if two_d { &[w.rho, w.u, w.v, w.p] } else { &[w.rho, w.u, w.p] };
            for v in prim {
                let _ = write!(s, ",{v:.16e}");
            }
        }
        s.push('\n');
    }
    s
}

/// Runs one simulation and writes `<problem>_<SCHEME>_<n>.csv` plus a JSON
/// summary into the output directory. A run that stops early still writes
/// its summary, then returns the failure.
pub fn run(cfg: &RunConfig) -> Result<RunArtifacts> {
    let resolved = cfg.resolve()?;
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out)?;
    let o = cfg.with_pool(|| simulate::<f64>(&resolved))??;
    let spec = resolved.spec;
    let stem = resolved.stem();
    let csv = out.join(format!("{stem}.csv"));
    fs::write(&csv, solution_csv(&spec, &o))?;
    let density_error = if o.completed() {
        let pts = centers(&o.grid);
        reference_density(&spec, o.t, &pts, Some(&out))?.map(|r| error_norms(&density(&o), &r))
    } else {
        None
    };
    let (min_density, min_p) = o.min_density_pressure(spec.gamma);
    let report = RunSummary {
        problem: spec.name.into(),
        scheme: resolved.params.scheme,
        n: resolved.n,
        ny: o.grid.y.map(|a| a.n),
        t_final: resolved.t_final,
        t_reached: o.t,
        steps: o.steps,
        dt: o.dt,
        branches: o.stats,
        wall_seconds: o.wall_seconds,
        conservation_drift: o.conservation_drift(),
        min_density,
        min_pressure: (spec.ncomp() > 1).then_some(min_p),
        density_error,
        failure: o.failure.clone(),
        workers: cfg.workers,
        deterministic: cfg.deterministic,
    };
    let summary = out.join(format!("{stem}.json"));
    let json = serde_json::to_string_pretty(&report).map_err(|e| SolverError::Io(e.to_string()))?;
    fs::write(&summary, json + "\n")?;
    if let Some(f) = &report.failure {
        return Err(SolverError::InvalidArgument(format!(
            "run stopped at step {} (t = {}): {}; summary in {}",
            f.step,
            f.t,
            f.message,
            summary.display()
        )));
    }
    Ok(RunArtifacts { csv, summary, report })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    pub order_l1: Option<f64>,
    pub order_linf: Option<f64>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub problem: String,
    pub scheme: Scheme,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn row(&self, n: usize) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# {} {} | n, L1, L1 order, Linf, Linf order, seconds\n", self.problem, self.scheme.name());
        let o = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(s, "{},{:.6e},{},{:.6e},{},{:.3}", r.n, r.l1, o(r.order_l1), r.linf, o(r.order_linf), r.wall_seconds);
        }
        s
    }
}

fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// Error table under refinement with RK4 and `dt = dx^1.5`; orders are given
/// only between consecutive resolutions in ratio 2.
pub fn convergence(base: &RunConfig, ns: &[usize]) -> Result<ErrorReport> {
    let spec = ProblemId::parse(&base.problem)?.spec();
    if spec.reference != ReferenceSolution::Analytic {
        return Err(SolverError::MissingReference(spec.name.into()));
    }
    let mut rows: Vec<ErrorRow> = Vec::new();
    for &n in ns {
        let cfg = RunConfig {
            n: Some(n),
            ny: None,
            law: Some(TimeStepLaw::convergence()),
            cfl: None,
            integrator: Some(Integrator::Rk4),
            ..base.clone()
        };
        let run = cfg.resolve()?;
        let (norms, wall) = base.with_pool(|| measure(&run))??;
        let prev = rows.last().filter(|p| p.n * 2 == n);
        rows.push(ErrorRow {
            n,
            l1: norms.l1,
            linf: norms.linf,
            order_l1: prev.map(|p| order(p.l1, norms.l1)),
            order_linf: prev.map(|p| order(p.linf, norms.linf)),
            wall_seconds: wall,
        });
    }
    Ok(ErrorReport {
        problem: spec.name.into(),
        scheme: base.scheme,
        rows,
    })
}

fn measure(run: &ResolvedRun) -> Result<(ErrorNorms, f64)> {
    let o = simulate::<f64>(run)?;
    if let Some(f) = o.failure {
        return Err(SolverError::InvalidArgument(format!("{} stopped at step {}: {}", run.stem(), f.step, f.message)));
    }
    let r = reference_density(&run.spec, o.t, &centers(&o.grid), None)?.ok_or_else(|| SolverError::MissingReference(run.spec.name.into()))?;
    Ok((error_norms(&density(&o), &r), o.wall_seconds))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRow {
    pub scheme: Scheme,
    pub n: usize,
    pub wall_seconds: f64,
    pub linf: f64,
}

/// One timed run per scheme and resolution; time excludes reference
/// evaluation and output.
pub fn efficiency(base: &RunConfig, schemes: &[Scheme], ns: &[usize]) -> Result<Vec<EfficiencyRow>> {
    let mut rows = Vec::new();
    for &scheme in schemes {
        for &n in ns {
            let cfg = RunConfig {
                scheme,
                n: Some(n),
                ny: None,
                ..base.clone()
            };
            let run = cfg.resolve()?;
            let (norms, wall) = base.with_pool(|| measure(&run))??;
            rows.push(EfficiencyRow {
                scheme,
                n,
                wall_seconds: wall,
                linf: norms.linf,
            });
        }
    }
    Ok(rows)
}

pub fn efficiency_csv(rows: &[EfficiencyRow]) -> String {
    let mut s = String::from("# scheme, n, wall seconds, Linf density error\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{:.6},{:.6e}", r.scheme.name(), r.n, r.wall_seconds, r.linf);
    }
    s
}

/// Several schemes on one grid.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub problem: String,
    pub schemes: Vec<Scheme>,
    pub points: Vec<(f64, f64)>,
    pub two_d: bool,
    pub profiles: Vec<Vec<f64>>,
    pub reference: Option<Vec<f64>>,
    pub errors: Vec<Option<ErrorNorms>>,
    pub outcomes: Vec<(BranchStats, Option<Failure>)>,
}

impl Comparison {
    pub fn error(&self, scheme: Scheme) -> Option<ErrorNorms> {
        self.schemes.iter().position(|&s| s == scheme).and_then(|k| self.errors[k])
    }

    /// Shared abscissa, one density column per scheme, then the reference
    /// and the pointwise error of each scheme when a reference exists.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("# ");
        s.push_str(if self.two_d { "x, y" } else { "x" });
        for sc in &self.schemes {
            let _ = write!(s, ", rho_{}", sc.name());
        }
        if self.reference.is_some() {
            s.push_str(", rho_ref");
            for sc in &self.schemes {
                let _ = write!(s, ", err_{}", sc.name());
            }
        }
        s.push_str(" | nondimensional units\n");
        for (k, &(x, y)) in self.points.iter().enumerate() {
            let _ = write!(s, "{x:.16e}");
            if self.two_d {
                let _ = write!(s, ",{y:.16e}");
            }
            for p in &self.profiles {
                let _ = write!(s, ",{:.16e}", p[k]);
            }
            if let Some(r) = &self.reference {
                let _ = write!(s, ",{:.16e}", r[k]);
                for p in &self.profiles {
                    let _ = write!(s, ",{:.16e}", p[k] - r[k]);
                }
            }
            s.push('\n');
        }
        s
    }
}

pub fn compare(base: &RunConfig, schemes: &[Scheme]) -> Result<Comparison> {
    let mut profiles = Vec::new();
    let mut outcomes = Vec::new();
    let mut points = Vec::new();
    let mut two_d = false;
    let mut t = 0.0;
    let mut spec = None;
    for &scheme in schemes {
        let run = RunConfig { scheme, ..base.clone() }.resolve()?;
        let o = base.with_pool(|| simulate::<f64>(&run))??;
        points = centers(&o.grid);
        two_d = o.grid.y.is_some();
        t = o.t;
        spec = Some(run.spec);
        profiles.push(density(&o));
        outcomes.push((o.stats, o.failure));
    }
    let spec = spec.ok_or_else(|| SolverError::InvalidArgument("no schemes given".into()))?;
    let reference = if outcomes.iter().all(|o| o.1.is_none()) {
        reference_density(&spec, t, &points, base.out.as_deref())?
    } else {
        None
    };
    let errors = profiles
        .iter()
        .zip(&outcomes)
        .map(|(p, o)| match (&reference, &o.1) {
            (Some(r), None) => Some(error_norms(p, r)),
            _ => None,
        })
        .collect();
    Ok(Comparison {
        problem: spec.name.into(),
        schemes: schemes.to_vec(),
        points,
        two_d,
        profiles,
        reference,
        errors,
        outcomes,
    })
}
