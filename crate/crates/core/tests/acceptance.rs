//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! (unaffected by output capture) and fails if any criterion fails.
//! The convergence studies take several minutes on one core.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stfem::assembly::PressureKind;
use stfem::cases::{case_setup, CaseId};
use stfem::error_analysis::eoc;
use stfem::experiment::{run_convergence, ConvergenceReport, ExperimentConfig, GridMode, GridSpec};
use stfem::geom::{decompose_prism, DiscreteLevelSet, Plane};
use stfem::lab::{run_suite, LabConfig};
use stfem::mesh::{build_uniform_simplicial_mesh, BoxDomain, TimePartition};
use stfem::spaces::SlabGeometry;
use stfem::Phase;

struct Ledger {
    failed: Vec<String>,
    max_div: f64,
}

impl Ledger {
    fn line(&mut self, id: &str, ok: bool, msg: String) {
        let text = format!("[{}] criterion {id}: {msg}\n", if ok { "PASS" } else { "FAIL" });
        let _ = std::io::stderr().write_all(text.as_bytes());
        if !ok {
            self.failed.push(id.to_string());
        }
    }

    fn note(&self, msg: String) {
        let _ = std::io::stderr().write_all(format!("       {msg}\n").as_bytes());
    }
}

fn out_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn study(ledger: &mut Ledger, case: CaseId, pressure: PressureKind, grid: &[usize]) -> ConvergenceReport {
    let cfg = ExperimentConfig {
        case,
        pressure,
        grid: GridSpec { ns: grid.to_vec(), n: grid.to_vec(), mode: GridMode::Diagonal },
        output: stfem::experiment::OutputConfig { dir: Some(out_dir()), prefix: None },
        ..Default::default()
    };
    let t = Instant::now();
    let rep = run_convergence(&cfg).unwrap_or_else(|e| panic!("{case} {pressure:?}: {e}"));
    ledger.note(format!("{case} {pressure:?} {grid:?}: {:.0} s", t.elapsed().as_secs_f64()));
    for r in &rep.runs {
        ledger.note(format!(
            "  N_S = {:>2}, N = {:>2}: |u|_L2H1 {:.5}  |p|_L2L2 {:.5}  residual {:.1e}  div {:.1e}",
            r.ns, r.n, r.errors.velocity_l2h1, r.errors.pressure_l2l2, r.max_residual, r.max_divergence
        ));
        ledger.max_div = ledger.max_div.max(r.max_divergence);
    }
    rep
}

/// Order between the two finest diagonal entries.
fn finest_eoc(rep: &ConvergenceReport, f: impl Fn(&stfem::error_analysis::ErrorNorms) -> f64) -> f64 {
    let r = &rep.runs;
    eoc(f(&r[r.len() - 2].errors), f(&r[r.len() - 1].errors)).unwrap_or(f64::NAN)
}

fn in_range(v: f64, lo: f64, hi: f64) -> bool {
    v >= lo && v <= hi
}

fn interface_measure(ns: usize) -> f64 {
    let setup = case_setup(CaseId::Disk2dSmooth).unwrap();
    let ls = setup.level_set().clone();
    let mesh = build_uniform_simplicial_mesh(&setup.domain, ns).unwrap();
    let tp = TimePartition::uniform(setup.t_final, ns).unwrap();
    tp.slabs().map(|s| SlabGeometry::new(&mesh, s, ls.as_ref()).unwrap().cuts.values().map(|c| c.interface_measure()).sum::<f64>()).sum()
}

#[test]
fn acceptance() {
    let mut l = Ledger { failed: Vec::new(), max_div: 0.0 };

    // 1. order arithmetic against printed values
    let e1 = eoc(0.24844, 0.12573).unwrap();
    let e2 = eoc(0.04318, 0.01047).unwrap();
    l.line("1", (e1 - 0.98264).abs() <= 1e-4 && in_range(e2, 2.03, 2.06), format!("eoc = {e1:.5} (0.98264 +- 1e-4), {e2:.5} in [2.03, 2.06]"));

    // 5. solution inside the discrete space
    let poly = study(&mut l, CaseId::Poly2d, PressureKind::Standard, &[2, 3]);
    let worst = poly.runs.iter().map(|r| r.errors.velocity_l2h1.max(r.errors.velocity_l2l2).max(r.errors.pressure_l2l2)).fold(0.0, f64::max);
    l.line("5", worst <= 1e-9, format!("largest error {worst:.2e} <= 1e-9"));

    // 7. geometry kernel
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let meshes = [
        build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 2).unwrap(),
        build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap(), 1).unwrap(),
    ];
    let (mut worst_vol, mut cut_count) = (0.0f64, 0usize);
    for i in 0..10_000 {
        let mesh = &meshes[i % 2];
        let d = mesh.dim();
        let slab = stfem::mesh::SpaceTimeSlab { index: 0, t0: 0.0, t1: rng.gen_range(0.05..1.0) };
        let ls = Plane { a: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(), b: rng.gen_range(-1.0..1.0), c: rng.gen_range(-1.0..1.0) };
        let dls = DiscreteLevelSet::interpolate(mesh, &slab, &ls).unwrap();
        let e = rng.gen_range(0..mesh.num_simplices());
        let cut = decompose_prism(mesh, &slab, &dls, e).unwrap();
        if !cut.parts[0].is_empty() && !cut.parts[1].is_empty() {
            cut_count += 1;
        }
        let whole = slab.prism_measure(mesh, e);
        worst_vol = worst_vol.max(((cut.part_measure(Phase::Pos) + cut.part_measure(Phase::Neg)) - whole).abs() / whole);
    }
    let meas: Vec<f64> = [4, 8, 16, 32].iter().map(|&n| (interface_measure(n) - std::f64::consts::PI).abs()).collect();
    let meas_eoc = eoc(meas[2], meas[3]).unwrap_or(f64::NAN);
    l.note(format!("interface measure errors {:?}", meas.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>()));
    l.line(
        "7",
        worst_vol <= 1e-12 && in_range(meas_eoc, 1.8, 2.2),
        format!("cut volume rel. error {worst_vol:.1e} <= 1e-12 over 10^4 level sets ({cut_count} cut); interface measure EOC {meas_eoc:.3} in [1.8, 2.2]"),
    );

    // 8. analysis lab
    let t = Instant::now();
    let lab = run_suite(&LabConfig::default()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let find = |prefix: &str| lab.checks.iter().find(|c| c.name.starts_with(prefix)).unwrap_or_else(|| panic!("no check {prefix}"));
    let picks = ["c_s(1,1)", "discrete inf-sup", "Piola divergence", "|u' - u_dot| <= C |u|", "Galerkin ODE vs"];
    let mut ok8 = secs < 60.0 && lab.infsup.len() >= 5 && lab.checks.iter().find(|c| c.name.contains("family")).map(|c| c.detail.starts_with("100 ")).unwrap_or(false);
    for p in picks {
        let c = find(p);
        ok8 &= c.passed;
        l.note(format!("{}: {:.3e} (bound {:.3e}) {}", c.name, c.value, c.bound, if c.passed { "ok" } else { "FAILED" }));
    }
    for r in &lab.infsup {
        l.note(format!("inf-sup {:.4} >= c_s {:.4} (gamma {}, Gamma {})", r.value, r.c_s, r.gamma, r.big_gamma));
    }
    let others: Vec<&str> = lab.failures().iter().map(|c| c.name.as_str()).collect();
    l.line("8", ok8, format!("{} inf-sup configurations, {secs:.1} s < 60 s; other failing lab checks: {others:?}", lab.infsup.len()));

    // 2, 4. XFEM convergence on the smooth disk
    let xfem = study(&mut l, CaseId::Disk2dSmooth, PressureKind::Xfem, &[8, 16, 32]);
    let v_eoc = finest_eoc(&xfem, |e| e.velocity_l2h1);
    l.line("2", in_range(v_eoc, 1.7, 2.3), format!("disk2d_smooth velocity L2(H1) EOC {v_eoc:.3} in [1.7, 2.3]"));
    let p_eoc = finest_eoc(&xfem, |e| e.pressure_l2l2);
    l.line("4", in_range(p_eoc, 1.2, 2.2), format!("disk2d_smooth XFEM pressure EOC {p_eoc:.3} in [1.2, 2.2]"));

    // 3. standard pressure on the same grids
    let std = study(&mut l, CaseId::Disk2dSmooth, PressureKind::Standard, &[8, 16, 32]);
    let s_eoc = finest_eoc(&std, |e| e.pressure_l2l2);
    let (p_std, p_x) = (std.runs[2].errors.pressure_l2l2, xfem.runs[2].errors.pressure_l2l2);
    l.line(
        "3",
        p_std >= 3.0 * p_x && in_range(s_eoc, 0.3, 0.7),
        format!("finest pressure error standard {p_std:.4} vs XFEM {p_x:.4} (ratio {:.1} >= 3); standard EOC {s_eoc:.3} in [0.3, 0.7]", p_std / p_x),
    );

    // 10. kink across the interface
    let kink = study(&mut l, CaseId::Disk2dKink, PressureKind::Xfem, &[8, 16, 32]);
    let k_eoc = finest_eoc(&kink, |e| e.velocity_l2h1);
    l.line("10", in_range(k_eoc, 0.3, 1.2) && k_eoc < v_eoc, format!("disk2d_kink velocity EOC {k_eoc:.3} in [0.3, 1.2] and below smooth {v_eoc:.3}"));

    // 9. coarsest 3D corner
    #[cfg(feature = "pentatope")]
    {
        let p3 = study(&mut l, CaseId::Paper3dCase1, PressureKind::Xfem, &[4]);
        let v = p3.runs[0].errors.velocity_l2h1;
        let rel = (v - 0.29649) / 0.29649;
        l.line("9", rel.abs() <= 0.25, format!("paper3d_case1 (4,4) velocity L2(H1) {v:.5} vs 0.29649: {:+.1}% (within 25%)", 100.0 * rel));
    }
    #[cfg(not(feature = "pentatope"))]
    l.line("9", true, "waived: built without the 'pentatope' feature".into());

    // 6. divergence on every run above
    l.line("6", l.max_div <= 1e-9, format!("max ||B u||_inf / ||u||_inf over all runs {:.2e} <= 1e-9", l.max_div));

    assert!(l.failed.is_empty(), "failed criteria: {:?}", l.failed);
}
