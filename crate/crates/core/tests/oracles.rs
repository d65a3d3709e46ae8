//! Assembly, solver and error-norm checks against independent oracles.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stfem::assembly::{assemble_slab, Discretization, PressureKind, ProblemCoefficients, SlabSystem};
use stfem::cases::{case_setup, custom_case, CaseId, CustomCase, ExactSolution};
use stfem::error_analysis::{compute_errors, ErrorOptions};
use stfem::geom::quadrature::gauss_legendre01;
use stfem::geom::{cut_simplex, decompose_prism, CutDecomposition, DiscreteLevelSet, LevelSetFunction, MovingSphere, Plane};
use stfem::mesh::{build_uniform_simplicial_mesh, BoxDomain, SpaceTimeSlab, SpatialMesh, TimePartition};
use stfem::solver::{build_pressure_space, march, solve_slab_system, solve_sparse, SolverOptions};
use stfem::sparse::CscMatrix;
use stfem::spaces::{SlabGeometry, VelocitySpace};
use stfem::Phase;

fn square(lo: f64, hi: f64, ns: usize) -> SpatialMesh {
    build_uniform_simplicial_mesh(&BoxDomain::new(&[lo, lo], &[hi, hi]).unwrap(), ns).unwrap()
}

fn circle(speed: f64) -> Arc<dyn LevelSetFunction> {
    Arc::new(MovingSphere { center: vec![-0.1, 0.05], velocity: vec![speed, 0.0], radius_sq: 0.3, radius_sq_rate: 0.0 })
}

fn outside() -> Arc<dyn LevelSetFunction> {
    Arc::new(Plane { a: vec![0.0, 0.0], b: 0.0, c: 1.0 })
}

fn system(mesh: &SpatialMesh, coef: &ProblemCoefficients, disc: &Discretization, slab: SpaceTimeSlab) -> SlabSystem {
    let vs = VelocitySpace::new(mesh, disc.r, disc.q).unwrap();
    let geo = SlabGeometry::new(mesh, slab, coef.level_set.as_ref()).unwrap();
    let ps = build_pressure_space(mesh, &geo, disc).unwrap();
    assemble_slab(mesh, &geo, &vs, &ps, coef, disc, None).unwrap()
}

fn slab(t0: f64, t1: f64) -> SpaceTimeSlab {
    SpaceTimeSlab { index: 0, t0, t1 }
}

fn rel_diff(a: &CscMatrix, b: &CscMatrix) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(b.max_abs()).max(1e-300)
}

#[test]
fn viscous_block_symmetric_and_divergence_is_transposed_gradient() {
    let mesh = square(-1.0, 1.0, 4);
    let coef = ProblemCoefficients::new([1.0, 10.0], [1.0, 25.0], 2.0, circle(0.5)).unwrap();
    let sys = system(&mesh, &coef, &Discretization { theta: 0.05, ..Default::default() }, slab(0.0, 0.25));
    let v = &sys.viscous_block;
    assert!(v.max_abs_diff(&v.transpose()) <= 1e-13 * v.max_abs());
    assert_eq!(sys.div_block.max_abs_diff(&sys.grad_block.transpose()), 0.0);
}

#[test]
fn equal_coefficients_ignore_the_interface() {
    let mesh = square(-1.0, 1.0, 4);
    for q in [0, 1] {
        let disc = Discretization { q, pressure: PressureKind::Standard, ..Default::default() };
        let cut = system(&mesh, &ProblemCoefficients::new([3.0, 3.0], [2.0, 2.0], 0.0, circle(0.7)).unwrap(), &disc, slab(0.2, 0.45));
        let plain = system(&mesh, &ProblemCoefficients::new([3.0, 3.0], [2.0, 2.0], 0.0, outside()).unwrap(), &disc, slab(0.2, 0.45));
        for (a, b) in [
            (&cut.time_block, &plain.time_block),
            (&cut.upwind_block, &plain.upwind_block),
            (&cut.viscous_block, &plain.viscous_block),
            (&cut.grad_block, &plain.grad_block),
            (&cut.mean_block, &plain.mean_block),
        ] {
            assert!(rel_diff(a, b) <= 1e-13, "q={q}: {}", rel_diff(a, b));
        }
    }
}

#[test]
fn piecewise_constant_in_time_upwind_is_mass_matrix() {
    // (0,1)^2, rho = 1, q = 0: no time derivative; the upwind block is the
    // P2 mass matrix, checked on interpolated quadratics against exact
    // integrals.
    let mesh = square(0.0, 1.0, 2);
    let disc = Discretization { q: 0, pressure: PressureKind::Standard, ..Default::default() };
    let sys = system(&mesh, &ProblemCoefficients::new([1.0, 1.0], [1.0, 1.0], 0.0, outside()).unwrap(), &disc, slab(0.0, 0.5));
    assert_eq!(sys.time_block.max_abs(), 0.0);
    let vs = VelocitySpace::new(&mesh, 2, 0).unwrap();
    let interp = |f: &dyn Fn(f64, f64) -> f64, comp: usize| {
        let mut v = vec![0.0; vs.num_dofs()];
        for node in 0..vs.nodes.num_nodes {
            let x = vs.nodes.coord(node);
            v[vs.index(node, comp, 0)] = f(x[0], x[1]);
        }
        v
    };
    let cases: [(&dyn Fn(f64, f64) -> f64, &dyn Fn(f64, f64) -> f64, f64); 3] = [
        (&|x, _| x * x, &|_, y| y, 1.0 / 6.0),
        (&|x, y| x * y, &|x, y| 1.0 + x - y * y, 1.0 / 4.0 + 1.0 / 6.0 - 1.0 / 8.0),
        (&|_, _| 1.0, &|_, _| 1.0, 1.0),
    ];
    for (f, g, exact) in cases {
        for comp in 0..2 {
            let (u, v) = (interp(f, comp), interp(g, comp));
            let mu = sys.upwind_block.mul(&u);
            let got: f64 = v.iter().zip(&mu).map(|(a, b)| a * b).sum();
            assert!((got - exact).abs() < 1e-13, "{got} vs {exact}");
        }
    }
}

#[test]
fn no_surface_tension_gives_no_surface_load() {
    let mesh = square(-1.0, 1.0, 4);
    let coef = ProblemCoefficients::new([1.0, 10.0], [1.0, 25.0], 0.0, circle(0.5)).unwrap();
    let sys = system(&mesh, &coef, &Discretization::default(), slab(0.0, 0.5));
    assert!(sys.rhs_surface.iter().all(|&v| v == 0.0));
}

#[test]
fn circle_surface_force_balances() {
    // Total of tau kappa n over a closed circle vanishes; the assembled load
    // (summed over a partition of unity) does up to the geometry error.
    let tau = 1.5;
    let k = 0.5;
    // int |kappa n_x| ds = (1/R) 4R
    let scale_x = tau * 4.0 * k;
    for ns in [4, 8, 16, 32] {
        let mesh = square(-1.0, 1.0, ns);
        let coef = ProblemCoefficients::new([1.0, 1.0], [1.0, 1.0], tau, circle(0.0)).unwrap();
        let disc = Discretization { pressure: PressureKind::Standard, ..Default::default() };
        let sys = system(&mesh, &coef, &disc, slab(0.0, 0.5));
        let vs = VelocitySpace::new(&mesh, 2, 1).unwrap();
        let mut total = [0.0f64; 2];
        for node in 0..vs.nodes.num_nodes {
            for (c, tc) in total.iter_mut().enumerate() {
                for j in 0..2 {
                    *tc += sys.rhs_surface[vs.index(node, c, j)];
                }
            }
        }
        let h = 1.0 / ns as f64;
        for tc in total {
            assert!(tc.abs() <= 0.1 * scale_x * h * h, "ns={ns}: {tc}");
        }
    }
}

#[test]
fn mean_rows_integrate_constant_pressure() {
    let mesh = square(-1.0, 1.0, 4);
    let coef = ProblemCoefficients::new([1.0, 10.0], [1.0, 25.0], 2.0, circle(0.5)).unwrap();
    let (t0, t1) = (0.25, 0.75);
    for (q, pressure) in [(1, PressureKind::Xfem), (1, PressureKind::Standard), (2, PressureKind::Xfem)] {
        let sys = system(&mesh, &coef, &Discretization { q, pressure, theta: 0.0, ..Default::default() }, slab(t0, t1));
        assert_eq!(sys.n_mult, q + 1);
        let rows = sys.mean_block.mul(&vec![1.0; sys.n_p]);
        let basis = stfem::spaces::TemporalBasis::new(q);
        for (j, r) in rows.iter().enumerate() {
            // |Omega| * int_{t0}^{t1} l_j, by Simpson (exact for degree <= 3)
            let int_l = (t1 - t0) / 6.0 * (basis.value(j, 0.0) + 4.0 * basis.value(j, 0.5) + basis.value(j, 1.0));
            assert!((r - 4.0 * int_l).abs() < 1e-12, "q={q} row {j}: {r} vs {}", 4.0 * int_l);
        }
    }
}

#[test]
fn identity_system_returns_rhs() {
    let n = 7;
    let a = CscMatrix::from_triplets(n, n, &(0..n as u32).map(|i| (i, i, 1.0)).collect::<Vec<_>>());
    let b: Vec<f64> = (0..n).map(|i| i as f64 - 2.5).collect();
    assert_eq!(solve_sparse(&a, &b, 0).unwrap(), b);
}

#[test]
fn reduced_solve_matches_bordered_system() {
    let mesh = square(-1.0, 1.0, 4);
    let coef = custom_case(&CustomCase { rho: [1.0, 3.0], mu: [1.0, 4.0], ..Default::default() }).unwrap().coefficients;
    for pressure in [PressureKind::Xfem, PressureKind::Standard] {
        let sys = system(&mesh, &coef, &Discretization { pressure, theta: 0.05, ..Default::default() }, slab(0.0, 0.5));
        let (a, b) = sys.matrix_and_rhs();
        let bordered = solve_sparse(&a, &b, 0).unwrap();
        let reduced = solve_slab_system(&sys, 0).unwrap();
        let scale = bordered.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = bordered.iter().zip(&reduced).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(diff <= 1e-9 * scale, "{pressure:?}: {diff} vs {scale}");
    }
}

#[test]
fn zero_data_gives_zero_solution() {
    let mesh = Arc::new(square(-1.0, 1.0, 4));
    let coef = ProblemCoefficients::new([1.0, 10.0], [1.0, 25.0], 0.0, circle(0.5)).unwrap();
    let sol = march(mesh, &TimePartition::uniform(1.0, 3).unwrap(), &coef, &Discretization { theta: 0.05, ..Default::default() }, &SolverOptions::default())
        .unwrap();
    for s in &sol.slabs {
        assert!(s.u.iter().chain(&s.p).all(|v| v.abs() <= 1e-11));
    }
}

#[test]
fn static_drop_approaches_stationary_stokes() {
    // Oracle: the slab system without time derivative and upwind terms is
    // the stationary discrete Stokes problem (q = 0, fixed interface).
    let setup = custom_case(&CustomCase { rho: [1.0, 2.0], mu: [1.0, 3.0], tau: 1.0, radius: 0.55, dim: 2 }).unwrap();
    let mesh = Arc::new(square(-1.0, 1.0, 4));
    let disc = Discretization { q: 0, pressure: PressureKind::Xfem, theta: 0.05, ..Default::default() };
    let mut stat = system(&mesh, &setup.coefficients, &disc, slab(0.0, 1.0));
    stat.time_block = CscMatrix::zeros(stat.n_u, stat.n_u);
    stat.upwind_block = CscMatrix::zeros(stat.n_u, stat.n_u);
    stat.rhs_upwind.iter_mut().for_each(|v| *v = 0.0);
    // slab loads scale with k = 1; march with k = 1 too
    let x = solve_slab_system(&stat, 0).unwrap();
    let u_stat = &x[..stat.n_u];
    let scale = u_stat.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(scale > 1e-6, "spurious velocity expected on a coarse mesh");
    let sol = march(mesh, &TimePartition::uniform(40.0, 40).unwrap(), &setup.coefficients, &disc, &SolverOptions::default()).unwrap();
    let dist = |n: usize| sol.slabs[n].u.iter().zip(u_stat).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(dist(39) <= 1e-9 * scale, "{} vs {scale}", dist(39));
    assert!(dist(39) < dist(2));
}

fn gauss(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre01(n);
    x.iter().zip(&w).map(|(x, w)| (a + (b - a) * x, (b - a) * w)).collect()
}

/// Gauss on `(a,b)` split at the given points.
fn split_gauss(n: usize, a: f64, b: f64, kinks: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = kinks.iter().copied().filter(|k| *k > a && *k < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).flat_map(|w| gauss(n, w[0], w[1])).collect()
}

/// Composite tensor Gauss on a box times `(0,T)`, for smooth integrands.
fn box_integral(lo: f64, hi: f64, t_final: f64, f: impl Fn(&[f64], f64) -> f64) -> f64 {
    let mut s = 0.0;
    for cx in 0..8 {
        for cy in 0..8 {
            let h = (hi - lo) / 8.0;
            for (x, wx) in gauss(8, lo + cx as f64 * h, lo + (cx + 1) as f64 * h) {
                for (y, wy) in gauss(8, lo + cy as f64 * h, lo + (cy + 1) as f64 * h) {
                    for (t, wt) in gauss(8, 0.0, t_final) {
                        s += wx * wy * wt * f(&[x, y], t);
                    }
                }
            }
        }
    }
    s
}

fn zeroed(case: CaseId, ns: usize, n: usize) -> (stfem::solver::SpaceTimeSolution, stfem::cases::CaseSetup) {
    let setup = case_setup(case).unwrap();
    let mesh = Arc::new(build_uniform_simplicial_mesh(&setup.domain, ns).unwrap());
    let mut sol = march(mesh, &TimePartition::uniform(setup.t_final, n).unwrap(), &setup.coefficients, &Discretization::default(), &SolverOptions::default()).unwrap();
    for s in sol.slabs.iter_mut() {
        s.u.iter_mut().chain(s.p.iter_mut()).for_each(|v| *v = 0.0);
    }
    (sol, setup)
}

#[test]
fn zero_discrete_field_gives_norm_of_exact_solution() {
    let (sol, setup) = zeroed(CaseId::Poly2d, 2, 2);
    let e = compute_errors(&sol, &setup.exact, setup.level_set().as_ref(), &ErrorOptions::default());
    let ex = &setup.exact;
    let h1 = box_integral(0.0, 1.0, 1.0, |x, t| {
        let g = (ex.velocity_gradient)(Phase::Pos, x, t);
        (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| g[i][j] * g[i][j]).sum()
    });
    let l2 = box_integral(0.0, 1.0, 1.0, |x, t| {
        let u = (ex.velocity)(Phase::Pos, x, t);
        u[0] * u[0] + u[1] * u[1]
    });
    // the exact pressure already has zero spatial mean at every t
    let p2 = box_integral(0.0, 1.0, 1.0, |x, t| (ex.pressure)(Phase::Pos, x, t).powi(2));
    assert!((e.velocity_l2h1 - h1.sqrt()).abs() <= 1e-6 * h1.sqrt(), "{} vs {}", e.velocity_l2h1, h1.sqrt());
    assert!((e.velocity_l2l2 - l2.sqrt()).abs() <= 1e-6 * l2.sqrt());
    assert!((e.pressure_l2l2 - p2.sqrt()).abs() <= 1e-6 * p2.sqrt());
}

#[test]
fn zero_field_velocity_norm_on_two_phase_case() {
    // disk2d_smooth has one smooth velocity on both sides, supported in the
    // disk of radius 3/4 about (0, (2t - 1)/4): polar Gauss x periodic
    // trapezoid about the moving centre. |grad u|^2 has high degree, so the
    // default error rule needs a moderately fine mesh.
    let (sol, setup) = zeroed(CaseId::Disk2dSmooth, 8, 8);
    let e = compute_errors(&sol, &setup.exact, setup.level_set().as_ref(), &ErrorOptions::default());
    let ex = &setup.exact;
    let nth = 128;
    let mut h1 = 0.0;
    for (t, wt) in gauss(10, 0.0, setup.t_final) {
        let cy = (2.0 * t - 1.0) / 4.0;
        for (r, wr) in gauss(24, 0.0, 0.75) {
            for k in 0..nth {
                let th = 2.0 * std::f64::consts::PI * k as f64 / nth as f64;
                let x = [r * th.cos(), cy + r * th.sin()];
                let g = (ex.velocity_gradient)(Phase::Pos, &x, t);
                let v: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| g[i][j] * g[i][j]).sum();
                h1 += wt * wr * r * 2.0 * std::f64::consts::PI / nth as f64 * v;
            }
        }
    }
    assert!((e.velocity_l2h1 - h1.sqrt()).abs() <= 1e-6 * h1.sqrt(), "{} vs {}", e.velocity_l2h1, h1.sqrt());
}

fn scaled(ex: &ExactSolution, c: f64) -> ExactSolution {
    let (u, g, p) = (ex.velocity.clone(), ex.velocity_gradient.clone(), ex.pressure.clone());
    ExactSolution {
        dim: ex.dim,
        velocity: Arc::new(move |ph, x, t| u(ph, x, t).map(|v| c * v)),
        velocity_gradient: Arc::new(move |ph, x, t| g(ph, x, t).map(|r| r.map(|v| c * v))),
        pressure: Arc::new(move |ph, x, t| c * p(ph, x, t)),
        smooth_velocity: ex.smooth_velocity,
    }
}

#[test]
fn errors_scale_linearly() {
    let (sol, setup) = zeroed(CaseId::Disk2dSmooth, 2, 1);
    let ls = setup.level_set().clone();
    let opts = ErrorOptions::default();
    let e1 = compute_errors(&sol, &setup.exact, ls.as_ref(), &opts);
    let e3 = compute_errors(&sol, &scaled(&setup.exact, -3.0), ls.as_ref(), &opts);
    for (a, b) in [(e1.velocity_l2h1, e3.velocity_l2h1), (e1.velocity_l2l2, e3.velocity_l2l2), (e1.pressure_l2l2, e3.pressure_l2l2)] {
        assert!(a > 0.0);
        assert!((b - 3.0 * a).abs() <= 1e-12 * b);
    }
}

#[test]
fn random_linear_cuts_conserve_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut cuts = 0;
    for i in 0..10_000 {
        let n = [2, 3, 4][i % 3];
        // reference simplex with perturbed vertices
        let pts: Vec<[f64; 4]> = (0..=n)
            .map(|v| {
                let mut p = [0.0; 4];
                for (c, pc) in p.iter_mut().enumerate().take(n) {
                    *pc = if v == c + 1 { 1.0 } else { 0.0 } + rng.gen_range(-0.2..0.2);
                }
                p
            })
            .collect();
        let vals: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut out = CutDecomposition { n, ..Default::default() };
        cut_simplex(n, &pts, &vals, &mut out);
        let whole = stfem::small::simplex_measure(n, &pts);
        if !out.parts[0].is_empty() && !out.parts[1].is_empty() {
            cuts += 1;
        }
        let got = out.part_measure(Phase::Pos) + out.part_measure(Phase::Neg);
        worst = worst.max((got - whole).abs() / whole);
    }
    assert!(worst <= 1e-12, "{worst}");
    assert!(cuts > 5000);
}

#[test]
fn random_planes_cut_prisms_exactly() {
    // A level set linear in (x, t) is reproduced exactly by the discrete
    // one, so the negative part must match the exact volume of the half
    // space in (0,1)^2 x (0,1/2). Oracle: nested Gauss split at the kinks
    // of the (piecewise polynomial) slice measures.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mesh = square(0.0, 1.0, 2);
    let sl = slab(0.0, 0.5);
    for _ in 0..200 {
        let ls = Plane { a: vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], b: rng.gen_range(-1.0..1.0), c: rng.gen_range(-0.5..0.5) };
        let dls = DiscreteLevelSet::interpolate(&mesh, &sl, &ls).unwrap();
        let mut neg = 0.0;
        for e in 0..mesh.num_simplices() {
            neg += decompose_prism(&mesh, &sl, &dls, e).unwrap().part_measure(Phase::Neg);
        }
        let (a0, a1, b, c) = (ls.a[0], ls.a[1], ls.b, ls.c);
        // length of {x in (0,1): a0 x + r < 0}
        let len = |r: f64| {
            if a0 == 0.0 {
                return if r < 0.0 { 1.0 } else { 0.0 };
            }
            let x0 = (-r / a0).clamp(0.0, 1.0);
            if a0 > 0.0 { x0 } else { 1.0 - x0 }
        };
        let area = |t: f64| {
            let r0 = b * t + c;
            let kinks = if a1 != 0.0 { vec![-r0 / a1, -(a0 + r0) / a1] } else { vec![] };
            split_gauss(2, 0.0, 1.0, &kinks).iter().map(|&(y, w)| w * len(a1 * y + r0)).sum::<f64>()
        };
        let tk: Vec<f64> = if b != 0.0 {
            [0.0, 1.0].iter().flat_map(|&x| [0.0, 1.0].map(|y| -(a0 * x + a1 * y + c) / b)).collect()
        } else {
            vec![]
        };
        let exact: f64 = split_gauss(3, 0.0, 0.5, &tk).iter().map(|&(t, w)| w * area(t)).sum();
        assert!((neg - exact).abs() < 1e-12, "{neg} vs {exact}");
    }
}
