//! Declarative convergence studies and the analysis suite: configuration,
//! dof budget guard, tables and provenance output.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::assembly::{Discretization, PressureKind};
use crate::cases::{case_setup, custom_case, CaseId, CaseSetup, CustomCase};
use crate::error::{Error, Result};
use crate::error_analysis::{compute_errors, ErrorNorms, ErrorOptions, ErrorTable};
use crate::lab::{run_suite, LabConfig, LabReport};
use crate::mesh::{build_uniform_simplicial_mesh, BoxDomain, TimePartition};
use crate::solver::{march_with, SlabStats, SolverOptions};

/// Whether the 3D (pentatope) path is compiled in.
pub const THREE_D: bool = cfg!(feature = "pentatope");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// `(ns[i], n[i])` pairs; both lists have the same length.
    #[default]
    Diagonal,
    /// Every combination of `ns` and `n`.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub ns: Vec<usize>,
    pub n: Vec<usize>,
    pub mode: GridMode,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { ns: vec![8, 16, 32], n: vec![8, 16, 32], mode: GridMode::Diagonal }
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<(usize, usize)> {
        match self.mode {
            GridMode::Diagonal => self.ns.iter().copied().zip(self.n.iter().copied()).collect(),
            GridMode::Full => self.ns.iter().flat_map(|&a| self.n.iter().map(move |&b| (a, b))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Nothing is written when unset.
    pub dir: Option<PathBuf>,
    /// File name prefix, defaults to the case name.
    pub prefix: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub case: CaseId,
    /// Spatial dimension; must agree with the case when given.
    pub dim: Option<usize>,
    pub grid: GridSpec,
    pub r: usize,
    pub q: usize,
    pub pressure: PressureKind,
    pub theta: f64,
    /// Coefficients of the `custom` case; rejected for built-in cases,
    /// whose constants are fixed.
    pub overrides: Option<CustomCase>,
    pub solver: SolverOptions,
    pub errors: ErrorOptions,
    pub output: OutputConfig,
    pub seed: u64,
    pub lab: LabConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let disc = Discretization::default();
        Self {
            case: CaseId::Disk2dSmooth,
            dim: None,
            grid: GridSpec::default(),
            r: disc.r,
            q: disc.q,
            pressure: PressureKind::Xfem,
            theta: 0.05,
            overrides: None,
            solver: SolverOptions::default(),
            errors: ErrorOptions::default(),
            output: OutputConfig::default(),
            seed: LabConfig::default().seed,
            lab: LabConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    pub fn discretization(&self) -> Discretization {
        Discretization { r: self.r, q: self.q, pressure: self.pressure, theta: self.theta }
    }

    pub fn setup(&self) -> Result<CaseSetup> {
        let setup = match (self.case, &self.overrides) {
            (CaseId::Custom, Some(c)) => custom_case(c)?,
            (id, None) => case_setup(id)?,
            (id, Some(_)) => return Err(Error::Config(format!("case {id} has fixed coefficients; overrides apply to 'custom' only"))),
        };
        Ok(setup)
    }

    pub fn validate(&self) -> Result<()> {
        self.discretization().validate()?;
        let pts = self.grid.points();
        if pts.is_empty() || pts.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::Config("grid needs at least one (N_S, N) pair with positive entries".into()));
        }
        if self.grid.mode == GridMode::Diagonal && self.grid.ns.len() != self.grid.n.len() {
            return Err(Error::Config("diagonal grid needs as many N_S as N values".into()));
        }
        let dim = match (self.case, &self.overrides) {
            (CaseId::Custom, Some(c)) => c.dim,
            (CaseId::Custom, None) => CustomCase::default().dim,
            (id, _) if id.is_3d() => 3,
            _ => 2,
        };
        if let Some(d) = self.dim {
            if d != dim {
                return Err(Error::Config(format!("case {} is {dim}D, config says {d}D", self.case)));
            }
        }
        if dim == 3 && !THREE_D {
            return Err(Error::Unsupported("3D cases need the 'pentatope' feature".into()));
        }
        if self.case != CaseId::Custom && self.overrides.is_some() {
            return Err(Error::Config(format!("case {} has fixed coefficients; overrides apply to 'custom' only", self.case)));
        }
        self.lab.validate()
    }
}

/// Upper bound on the unknowns of one slab: P2 velocity, P1 pressure with
/// every node duplicated for XFEM, plus the mean constraints.
pub fn estimate_slab_dofs(domain: &BoxDomain, ns: usize, q: usize, pressure: PressureKind) -> usize {
    let dim = domain.dim();
    let cells: Vec<usize> = (0..dim).map(|a| ((domain.upper[a] - domain.lower[a]) * ns as f64).round() as usize).collect();
    let p2: usize = cells.iter().map(|c| 2 * c + 1).product();
    let p1: usize = cells.iter().map(|c| c + 1).product();
    let copies = if pressure == PressureKind::Xfem { 2 } else { 1 };
    (q + 1) * (dim * p2 + copies * p1 + 1)
}

/// One `(N_S, N)` grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub ns: usize,
    pub n: usize,
    pub errors: ErrorNorms,
    pub max_residual: f64,
    pub max_divergence: f64,
    pub max_slab_dofs: usize,
    pub max_enriched_nodes: usize,
    pub solve_seconds: f64,
    pub error_seconds: f64,
    pub slabs: Vec<SlabStats>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub config: ExperimentConfig,
    pub runs: Vec<RunRecord>,
    pub velocity_l2h1: ErrorTable,
    pub velocity_l2l2: ErrorTable,
    pub pressure_l2l2: ErrorTable,
}

impl ConvergenceReport {
    pub fn tables(&self) -> [&ErrorTable; 3] {
        [&self.velocity_l2h1, &self.velocity_l2l2, &self.pressure_l2l2]
    }

    pub fn to_markdown(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "# {} ({:?} pressure, r = {}, q = {}, theta = {})\n\n",
            c.case, c.pressure, c.r, c.q, c.theta
        );
        for t in self.tables() {
            s += &t.to_markdown();
            s += "\n";
        }
        s += "| N_S | N | max slab dofs | enriched | residual | div | solve [s] |\n|---|---|---|---|---|---|---|\n";
        for r in &self.runs {
            s += &format!(
                "| {} | {} | {} | {} | {:.2e} | {:.2e} | {:.1} |\n",
                r.ns, r.n, r.max_slab_dofs, r.max_enriched_nodes, r.max_residual, r.max_divergence, r.solve_seconds
            );
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct Provenance<'a> {
    package: &'static str,
    version: &'static str,
    unix_time: u64,
    threads: usize,
    three_d: bool,
    config: &'a ExperimentConfig,
    runs: &'a [RunRecord],
}

/// `"velocity L2(H1)"` -> `"velocity_l2_h1"`
fn table_slug(t: &ErrorTable) -> String {
    t.title
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_ascii_lowercase)
        .collect::<Vec<_>>()
        .join("_")
}

fn write_outputs(rep: &ConvergenceReport) -> Result<Vec<PathBuf>> {
    let Some(dir) = &rep.config.output.dir else { return Ok(Vec::new()) };
    fs::create_dir_all(dir)?;
    let prefix = rep.config.output.prefix.clone().unwrap_or_else(|| format!("{}_{:?}", rep.config.case, rep.config.pressure).to_lowercase());
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        let p = dir.join(name);
        fs::write(&p, text)?;
        written.push(p);
        Ok(())
    };
    for t in rep.tables() {
        put(format!("{prefix}_{}.csv", table_slug(t)), t.to_csv())?;
    }
    put(format!("{prefix}_summary.md"), rep.to_markdown())?;
    let prov = Provenance {
        package: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        unix_time: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        threads: rayon::current_num_threads(),
        three_d: THREE_D,
        config: &rep.config,
        runs: &rep.runs,
    };
    let json = serde_json::to_string_pretty(&prov).map_err(|e| Error::Config(e.to_string()))?;
    put(format!("{prefix}_provenance.json"), json)?;
    Ok(written)
}

/// Marches and measures errors on every grid point. Refuses up front if any
/// point would exceed the slab dof budget.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    run_convergence_with(cfg, |_, _, _| {})
}

/// [`run_convergence`] with a progress callback `(ns, n, slab stats)`.
pub fn run_convergence_with(cfg: &ExperimentConfig, mut progress: impl FnMut(usize, usize, &SlabStats)) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let setup = cfg.setup()?;
    let dim = setup.dim();
    let points = cfg.grid.points();
    for &(ns, _) in &points {
        let est = estimate_slab_dofs(&setup.domain, ns, cfg.q, cfg.pressure);
        if est > cfg.solver.max_dofs {
            return Err(Error::Budget(format!(
                "N_S = {ns} needs up to {est} unknowns per slab ({dim}D, q = {}), budget is {}",
                cfg.q, cfg.solver.max_dofs
            )));
        }
    }
    let mut ns_axis = cfg.grid.ns.clone();
    let mut n_axis = cfg.grid.n.clone();
    for axis in [&mut ns_axis, &mut n_axis] {
        axis.sort_unstable();
        axis.dedup();
    }
    let mut tables = [
        ErrorTable::new("velocity L2(H1)", ns_axis.clone(), n_axis.clone()),
        ErrorTable::new("velocity L2(L2)", ns_axis.clone(), n_axis.clone()),
        ErrorTable::new("pressure L2(L2)", ns_axis, n_axis),
    ];
    let disc = cfg.discretization();
    let ls = setup.level_set().clone();
    let mut runs = Vec::with_capacity(points.len());
    for (ns, n) in points {
        let mesh = Arc::new(build_uniform_simplicial_mesh(&setup.domain, ns)?);
        let tp = TimePartition::uniform(setup.t_final, n)?;
        let t0 = Instant::now();
        let sol = march_with(mesh, &tp, &setup.coefficients, &disc, &cfg.solver, |s| progress(ns, n, s))?;
        let solve_seconds = t0.elapsed().as_secs_f64();
        let t1 = Instant::now();
        let errors = compute_errors(&sol, &setup.exact, ls.as_ref(), &cfg.errors);
        let error_seconds = t1.elapsed().as_secs_f64();
        tables[0].set(ns, n, errors.velocity_l2h1);
        tables[1].set(ns, n, errors.velocity_l2l2);
        tables[2].set(ns, n, errors.pressure_l2l2);
        let slabs = sol.stats();
        runs.push(RunRecord {
            ns,
            n,
            errors,
            max_residual: sol.max_residual(),
            max_divergence: sol.max_divergence_residual(),
            max_slab_dofs: slabs.iter().map(|s| s.velocity_dofs + s.pressure_dofs).max().unwrap_or(0),
            max_enriched_nodes: slabs.iter().map(|s| s.enriched_nodes).max().unwrap_or(0),
            solve_seconds,
            error_seconds,
            slabs,
        });
    }
    let [velocity_l2h1, velocity_l2l2, pressure_l2l2] = tables;
    let rep = ConvergenceReport { config: cfg.clone(), runs, velocity_l2h1, velocity_l2l2, pressure_l2l2 };
    write_outputs(&rep)?;
    Ok(rep)
}

/// Runs every analysis-lab check; the report lists failures, the caller
/// decides the exit status.
pub fn run_analysis_suite(cfg: &ExperimentConfig) -> Result<LabReport> {
    let lab = LabConfig { seed: cfg.seed, ..cfg.lab.clone() };
    let rep = run_suite(&lab)?;
    if let Some(dir) = &cfg.output.dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("analysis_report.txt"), rep.to_text())?;
        let json = serde_json::to_string_pretty(&rep).map_err(|e| Error::Config(e.to_string()))?;
        fs::write(dir.join("analysis_report.json"), json)?;
    }
    Ok(rep)
}
