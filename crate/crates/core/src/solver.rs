//! Slab-by-slab direct solution and evaluation of the discrete solution.

use std::sync::Arc;
use std::time::Instant;

use faer::prelude::SpSolver;
use faer::sparse::{SparseColMat, SymbolicSparseColMat};
use serde::{Deserialize, Serialize};

use crate::assembly::{assemble_slab, Discretization, PressureKind, ProblemCoefficients, SlabSystem};
use crate::error::{Error, Result};
use crate::mesh::{ElementGeometry, SpaceTimeSlab, SpatialMesh, TimePartition};
use crate::spaces::{lagrange_basis, PressureSpace, SlabGeometry, VelocitySpace};
use crate::sparse::CscMatrix;
use crate::Phase;

/// Sparse LU solve of `A x = b`. Fails with [`Error::Singular`] when the
/// factorization breaks down or produces non-finite values.
pub fn solve_sparse(a: &CscMatrix, b: &[f64], slab: usize) -> Result<Vec<f64>> {
    let n = a.nrows;
    if a.ncols != n || b.len() != n {
        return Err(Error::InvalidInput("solve_sparse needs a square system".into()));
    }
    let sym = SymbolicSparseColMat::<usize>::new_checked(n, n, a.col_ptr.clone(), None, a.row_idx.clone());
    let mat = SparseColMat::<usize, f64>::new(sym, a.values.clone());
    let lu = mat.as_ref().sp_lu().map_err(|e| Error::Singular {
        slab,
        hint: format!("LU failed ({e:?}); try a small-cut threshold theta > 0"),
    })?;
    let mut x = faer::Col::<f64>::from_fn(n, |i| b[i]);
    lu.solve_in_place(x.as_mut());
    let x: Vec<f64> = (0..n).map(|i| x[i]).collect();
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::Singular { slab, hint: format!("non-finite pivot near unknown {i}; try a small-cut threshold theta > 0") });
    }
    Ok(x)
}

/// Solves the bordered slab system `[A G; D 0; 0 M] (u, p, l)` without
/// factorizing the dense multiplier rows.
///
/// Summing the divergence rows of one temporal mode annihilates every free
/// velocity column (the pressure groups of a mode form a partition of
/// unity), so `l` follows from a `(q+1)x(q+1)` compatibility system. The
/// remaining singular system is solved with one pressure dof per mode
/// pinned to zero, and the mean constraint is restored by adding a constant
/// per mode. Returns the full bordered unknown vector.
pub fn solve_slab_system(sys: &SlabSystem, slab: usize) -> Result<Vec<f64>> {
    let (nu, np, nm) = (sys.n_u, sys.n_p, sys.n_mult);
    let ng = np / nm;
    let (a, b) = sys.matrix_and_rhs();
    // s[j][k] = sum of M[k][g] over the groups g of mode j
    let mut s = nalgebra::DMatrix::<f64>::zeros(nm, nm);
    for (k, g, v) in sys.mean_block.iter() {
        s[(g / ng, k)] += v;
    }
    let flux = nalgebra::DVector::from_fn(nm, |j, _| b[nu + j * ng..nu + (j + 1) * ng].iter().sum::<f64>());
    let s_lu = s.clone().lu();
    let lambda = s_lu.solve(&flux).ok_or_else(|| Error::Singular { slab, hint: "degenerate pressure mean functional".into() })?;
    let pins: Vec<usize> = (0..nm).map(|j| nu + j * ng).collect();
    let mut is_pin = vec![false; nu + np];
    for &i in &pins {
        is_pin[i] = true;
    }
    let mut trip = Vec::with_capacity(a.nnz());
    for (r, c, v) in a.iter() {
        if r < nu + np && c < nu + np && !is_pin[r] && !is_pin[c] {
            trip.push((r as u32, c as u32, v));
        }
    }
    trip.extend(pins.iter().map(|&i| (i as u32, i as u32, 1.0)));
    let pinned = CscMatrix::from_triplets(nu + np, nu + np, &trip);
    let mut rhs = b[..nu + np].to_vec();
    for (k, g, v) in sys.mean_block.iter() {
        rhs[nu + g] -= v * lambda[k];
    }
    for &i in &pins {
        rhs[i] = 0.0;
    }
    let mut x = solve_sparse(&pinned, &rhs, slab)?;
    let mut mp = nalgebra::DVector::<f64>::zeros(nm);
    for (k, g, v) in sys.mean_block.iter() {
        mp[k] -= v * x[nu + g];
    }
    let shift = s.transpose().lu().solve(&mp).ok_or_else(|| Error::Singular { slab, hint: "degenerate pressure mean functional".into() })?;
    for j in 0..nm {
        for v in &mut x[nu + j * ng..nu + (j + 1) * ng] {
            *v += shift[j];
        }
    }
    x.extend(lambda.iter());
    Ok(x)
}

/// `||A x - b||_inf / ||b||_inf` (absolute when `b = 0`).
pub fn relative_residual(a: &CscMatrix, x: &[f64], b: &[f64]) -> f64 {
    let mut r = a.mul(x);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri -= bi;
    }
    let rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let bn = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if bn > 0.0 {
        rn / bn
    } else {
        rn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Bound on the relative residual of every slab solve.
    pub residual_tol: f64,
    /// Refuse slabs with more unknowns than this.
    pub max_dofs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { residual_tol: 1e-9, max_dofs: 2_000_000 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SlabStats {
    pub index: usize,
    pub velocity_dofs: usize,
    pub pressure_dofs: usize,
    pub enriched_nodes: usize,
    pub cut_prisms: usize,
    pub nnz: usize,
    pub residual: f64,
    /// `||B u||_inf / ||u||_inf`.
    pub divergence: f64,
    pub assembly_seconds: f64,
    pub solve_seconds: f64,
}

/// Solution on one slab.
#[derive(Debug, Clone)]
pub struct SlabSolution {
    pub geometry: SlabGeometry,
    pub pressure_space: PressureSpace,
    pub u: Vec<f64>,
    pub p: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub stats: SlabStats,
}

impl SlabSolution {
    pub fn slab(&self) -> SpaceTimeSlab {
        self.geometry.slab
    }
}

/// Which pressure branch to evaluate at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSelection {
    /// Sign of the analytic level set.
    Analytic,
    /// Sign of the discrete (piecewise linear) level set.
    Discrete,
}

/// Discrete velocity/pressure over all slabs.
#[derive(Debug, Clone)]
pub struct SpaceTimeSolution {
    pub mesh: Arc<SpatialMesh>,
    pub partition: TimePartition,
    pub disc: Discretization,
    pub velocity_space: VelocitySpace,
    pub slabs: Vec<SlabSolution>,
}

/// Spatial field of one slab's velocity at relative time `tau`, laid out
/// `comp * nodes + node`.
pub fn velocity_trace(vs: &VelocitySpace, u: &[f64], tau: f64) -> Vec<f64> {
    let ms = vs.mode_size();
    let mut out = vec![0.0; ms];
    for j in 0..vs.time.len() {
        let l = vs.time.value(j, tau);
        if l == 0.0 {
            continue;
        }
        for (o, v) in out.iter_mut().zip(&u[j * ms..(j + 1) * ms]) {
            *o += l * v;
        }
    }
    out
}

/// Marches over all slabs of `partition`. Errors carry the slab index.
pub fn march(
    mesh: Arc<SpatialMesh>,
    partition: &TimePartition,
    coef: &ProblemCoefficients,
    disc: &Discretization,
    opts: &SolverOptions,
) -> Result<SpaceTimeSolution> {
    march_with(mesh, partition, coef, disc, opts, |_| {})
}

/// [`march`] with a callback after every slab (progress logging).
pub fn march_with(
    mesh: Arc<SpatialMesh>,
    partition: &TimePartition,
    coef: &ProblemCoefficients,
    disc: &Discretization,
    opts: &SolverOptions,
    mut progress: impl FnMut(&SlabStats),
) -> Result<SpaceTimeSolution> {
    disc.validate()?;
    coef.validate()?;
    if mesh.dim() == 3 && !cfg!(feature = "pentatope") {
        return Err(Error::Unsupported("3D space-time prisms need the 'pentatope' feature".into()));
    }
    let vs = VelocitySpace::new(&mesh, disc.r, disc.q)?;
    let mut slabs: Vec<SlabSolution> = Vec::with_capacity(partition.num_slabs());
    let mut prev: Option<Vec<f64>> = None;
    for slab in partition.slabs() {
        let sol = solve_one_slab(&mesh, slab, &vs, coef, disc, opts, prev.as_deref())?;
        prev = Some(velocity_trace(&vs, &sol.u, 1.0));
        progress(&sol.stats);
        slabs.push(sol);
    }
    Ok(SpaceTimeSolution { mesh, partition: partition.clone(), disc: *disc, velocity_space: vs, slabs })
}

fn annotate(slab: usize, e: Error) -> Error {
    match e {
        Error::Geometry(m) => Error::Geometry(format!("slab {slab}: {m}")),
        Error::InvalidInput(m) => Error::InvalidInput(format!("slab {slab}: {m}")),
        other => other,
    }
}

pub fn build_pressure_space(mesh: &SpatialMesh, geo: &SlabGeometry, disc: &Discretization) -> Result<PressureSpace> {
    match disc.pressure {
        PressureKind::Standard => PressureSpace::standard(mesh, disc.q),
        PressureKind::Xfem => PressureSpace::xfem(mesh, &geo.slab, &geo.classes, &geo.cuts, disc.q, disc.theta),
    }
}

/// Geometry, spaces and assembled system of one slab.
pub fn setup_slab(
    mesh: &SpatialMesh,
    slab: SpaceTimeSlab,
    vs: &VelocitySpace,
    coef: &ProblemCoefficients,
    disc: &Discretization,
    prev: Option<&[f64]>,
) -> Result<(SlabGeometry, PressureSpace, SlabSystem)> {
    let geo = SlabGeometry::new(mesh, slab, coef.level_set.as_ref())?;
    let ps = build_pressure_space(mesh, &geo, disc)?;
    let sys = assemble_slab(mesh, &geo, vs, &ps, coef, disc, prev)?;
    Ok((geo, ps, sys))
}

fn solve_one_slab(
    mesh: &SpatialMesh,
    slab: SpaceTimeSlab,
    vs: &VelocitySpace,
    coef: &ProblemCoefficients,
    disc: &Discretization,
    opts: &SolverOptions,
    prev: Option<&[f64]>,
) -> Result<SlabSolution> {
    let n = slab.index;
    let t0 = Instant::now();
    let geo = SlabGeometry::new(mesh, slab, coef.level_set.as_ref()).map_err(|e| annotate(n, e))?;
    let ps = build_pressure_space(mesh, &geo, disc).map_err(|e| annotate(n, e))?;
    let size = vs.num_dofs() + ps.num_dofs() + vs.time.len();
    if size > opts.max_dofs {
        return Err(Error::Budget(format!("slab {n} has {size} unknowns, budget is {}", opts.max_dofs)));
    }
    let sys = assemble_slab(mesh, &geo, vs, &ps, coef, disc, prev).map_err(|e| annotate(n, e))?;
    let assembly_seconds = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let x = solve_slab_system(&sys, n)?;
    let solve_seconds = t1.elapsed().as_secs_f64();
    let (a, b) = sys.matrix_and_rhs();
    let residual = relative_residual(&a, &x, &b);
    if !(residual <= opts.residual_tol) {
        return Err(Error::Residual { slab: n, residual, tol: opts.residual_tol });
    }
    let (nu, np) = (sys.n_u, sys.n_p);
    let u = x[..nu].to_vec();
    let p = x[nu..nu + np].to_vec();
    let multipliers = x[nu + np..].to_vec();
    let stats = SlabStats {
        index: n,
        velocity_dofs: nu,
        pressure_dofs: np,
        enriched_nodes: ps.num_enriched(),
        cut_prisms: geo.num_cut(),
        nnz: a.nnz(),
        residual,
        divergence: divergence_residual(&sys, &u),
        assembly_seconds,
        solve_seconds,
    };
    Ok(SlabSolution { geometry: geo, pressure_space: ps, u, p, multipliers, stats })
}

/// `||B u||_inf / ||u||_inf` for the slab's divergence block.
pub fn divergence_residual(sys: &SlabSystem, u: &[f64]) -> f64 {
    let bu = sys.div_block.mul(u);
    let num = bu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let den = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

impl SpaceTimeSolution {
    pub fn dim(&self) -> usize {
        self.mesh.dim()
    }

    pub fn max_divergence_residual(&self) -> f64 {
        self.slabs.iter().fold(0.0, |m, s| m.max(s.stats.divergence))
    }

    pub fn max_residual(&self) -> f64 {
        self.slabs.iter().fold(0.0, |m, s| m.max(s.stats.residual))
    }

    pub fn stats(&self) -> Vec<SlabStats> {
        self.slabs.iter().map(|s| s.stats.clone()).collect()
    }

    /// Velocity in simplex `e` with barycentrics `lambda` on slab `n` at time `t`.
    pub fn velocity_in(&self, n: usize, e: usize, lambda: &[f64], t: f64) -> ([f64; 3], [[f64; 3]; 3]) {
        self.velocity_with(n, e, &self.mesh.geometry(e), lambda, t)
    }

    /// [`Self::velocity_in`] with the element geometry supplied by the caller.
    pub fn velocity_with(&self, n: usize, e: usize, g: &ElementGeometry, lambda: &[f64], t: f64) -> ([f64; 3], [[f64; 3]; 3]) {
        let vs = &self.velocity_space;
        let d = self.dim();
        let slab = self.slabs[n].slab();
        let tau = (t - slab.t0) / slab.k();
        let nodes = vs.nodes.element_nodes(e);
        let nloc = nodes.len();
        let mut nv = [0.0; 10];
        let mut ng = [[0.0; 3]; 10];
        lagrange_basis(d, vs.nodes.degree, lambda, &g.grad_lambda, &mut nv[..nloc], &mut ng[..nloc]);
        let u = &self.slabs[n].u;
        let mut val = [0.0; 3];
        let mut grad = [[0.0; 3]; 3];
        for j in 0..vs.time.len() {
            let l = vs.time.value(j, tau);
            for c in 0..d {
                for a in 0..nloc {
                    let coef = l * u[vs.index(nodes[a], c, j)];
                    val[c] += coef * nv[a];
                    for k in 0..d {
                        grad[c][k] += coef * ng[a][k];
                    }
                }
            }
        }
        (val, grad)
    }

    /// Pressure branch `phase` in simplex `e` on slab `n` at time `t`.
    pub fn pressure_in(&self, n: usize, e: usize, lambda: &[f64], t: f64, phase: Phase) -> f64 {
        let s = &self.slabs[n];
        let ps = &s.pressure_space;
        let slab = s.slab();
        let tau = (t - slab.t0) / slab.k();
        let verts = self.mesh.simplex(e);
        let mut p = 0.0;
        for j in 0..ps.time.len() {
            let l = ps.time.value(j, tau);
            for (m, &v) in verts.iter().enumerate() {
                p += l * lambda[m] * s.p[ps.index(ps.node_group[v][phase as usize], j)];
            }
        }
        p
    }

    fn locate(&self, x: &[f64], t: f64) -> Option<(usize, usize, [f64; 4])> {
        let n = self.partition.slab_of(t)?;
        let (e, lam) = self.mesh.locate(x)?;
        Some((n, e, lam))
    }

    /// `u_h(x, t)`; `None` outside the space-time domain.
    pub fn velocity(&self, x: &[f64], t: f64) -> Option<[f64; 3]> {
        let (n, e, lam) = self.locate(x, t)?;
        Some(self.velocity_in(n, e, &lam, t).0)
    }

    pub fn velocity_gradient(&self, x: &[f64], t: f64) -> Option<[[f64; 3]; 3]> {
        let (n, e, lam) = self.locate(x, t)?;
        Some(self.velocity_in(n, e, &lam, t).1)
    }

    /// `p_h(x, t)` on the side of `x` chosen by `side`.
    pub fn pressure(&self, x: &[f64], t: f64, side: SideSelection, ls: &dyn crate::geom::LevelSetFunction) -> Option<f64> {
        let (n, e, lam) = self.locate(x, t)?;
        let phase = match side {
            SideSelection::Analytic => Phase::of(ls.value(x, t)),
            SideSelection::Discrete => self.slabs[n].geometry.phase_at(&self.mesh, e, &lam, t),
        };
        Some(self.pressure_in(n, e, &lam, t, phase))
    }
}
