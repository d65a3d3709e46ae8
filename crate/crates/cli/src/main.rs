use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stfem::assembly::PressureKind;
use stfem::cases::CaseId;
use stfem::experiment::{run_analysis_suite, run_convergence_with, ExperimentConfig, GridMode, GridSpec};

/// Divergence residual allowed on every slab, relative to `||u_h||_inf`.
const DIV_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PressureArg {
    Standard,
    Xfem,
}

/// Space-time unfitted FEM convergence studies and analysis checks.
#[derive(Debug, Parser)]
#[command(name = "stfem", version)]
struct Args {
    /// TOML experiment config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// paper3d_case1, paper3d_case2, disk2d_smooth, disk2d_kink, poly2d or custom.
    #[arg(long)]
    case: Option<String>,
    /// Grid points `NSxN`, comma separated (`8x8,16x16`); a bare `8` means `8x8`.
    #[arg(long)]
    grid: Option<String>,
    /// Run every combination of the N_S and N values given in --grid.
    #[arg(long)]
    full_grid: bool,
    #[arg(long, value_enum)]
    pressure_space: Option<PressureArg>,
    /// Small-cut threshold of the enriched pressure space.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Refuse runs whose slabs exceed this many unknowns.
    #[arg(long)]
    max_dofs: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Run the analysis suite instead of a convergence study.
    #[arg(long)]
    analysis: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Print the effective config as TOML and exit.
    #[arg(long)]
    dump_config: bool,
}

fn parse_grid(s: &str, full: bool) -> Result<GridSpec, String> {
    let mut pairs = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = item.split_once(['x', 'X']).unwrap_or((item, item));
        let ns = a.trim().parse::<usize>().map_err(|e| format!("bad N_S in '{item}': {e}"))?;
        let n = b.trim().parse::<usize>().map_err(|e| format!("bad N in '{item}': {e}"))?;
        pairs.push((ns, n));
    }
    if pairs.is_empty() {
        return Err("empty grid".into());
    }
    if full {
        let mut ns: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut n: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        for v in [&mut ns, &mut n] {
            v.sort_unstable();
            v.dedup();
        }
        Ok(GridSpec { ns, n, mode: GridMode::Full })
    } else {
        Ok(GridSpec { ns: pairs.iter().map(|p| p.0).collect(), n: pairs.iter().map(|p| p.1).collect(), mode: GridMode::Diagonal })
    }
}

fn build_config(args: &Args) -> Result<ExperimentConfig, String> {
    let mut cfg = match &args.config {
        Some(p) => ExperimentConfig::load(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(c) = &args.case {
        cfg.case = c.parse::<CaseId>().map_err(|e| e.to_string())?;
    }
    if let Some(g) = &args.grid {
        cfg.grid = parse_grid(g, args.full_grid)?;
    }
    if let Some(p) = args.pressure_space {
        cfg.pressure = match p {
            PressureArg::Standard => PressureKind::Standard,
            PressureArg::Xfem => PressureKind::Xfem,
        };
    }
    if let Some(t) = args.theta {
        cfg.theta = t;
    }
    if let Some(d) = &args.out_dir {
        cfg.output.dir = Some(d.clone());
    }
    if let Some(m) = args.max_dofs {
        cfg.solver.max_dofs = m;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(args: &Args) -> Result<bool, String> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| e.to_string())?;
    }
    let cfg = build_config(args)?;
    if args.dump_config {
        print!("{}", cfg.to_toml().map_err(|e| e.to_string())?);
        return Ok(true);
    }
    if args.analysis {
        let rep = run_analysis_suite(&cfg).map_err(|e| e.to_string())?;
        print!("{}", rep.to_text());
        let failed = rep.failures();
        if !failed.is_empty() {
            eprintln!("{} analysis check(s) failed", failed.len());
        }
        return Ok(failed.is_empty());
    }
    let rep = run_convergence_with(&cfg, |ns, n, s| {
        eprintln!(
            "N_S={ns} N={n} slab {}: {} + {} dofs, residual {:.1e}, {:.1}s",
            s.index,
            s.velocity_dofs,
            s.pressure_dofs,
            s.residual,
            s.assembly_seconds + s.solve_seconds
        );
    })
    .map_err(|e| e.to_string())?;
    for t in rep.tables() {
        println!("{}", t.to_text());
    }
    let mut ok = true;
    for r in &rep.runs {
        if !(r.max_divergence <= DIV_TOL) {
            eprintln!("N_S={} N={}: divergence residual {:.2e} exceeds {DIV_TOL:.0e}", r.ns, r.n, r.max_divergence);
            ok = false;
        }
    }
    if let Some(d) = &cfg.output.dir {
        eprintln!("tables and provenance written to {}", d.display());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
