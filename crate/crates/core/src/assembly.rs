//! Per-slab assembly of the space-time saddle-point system
//!
//! ```text
//! [ A   G   0  ] [u]   [f]
//! [ B   0   C^T] [p] = [0]
//! [ 0   C   0  ] [l]   [0]
//! ```
//!
//! `A` collects `rho du/dt`, the upwind jump at `t_{n-1}`, `(mu D u, D v)`
//! and (optionally) `rho (w . grad u)`; `G = -(p, div v)`, `B = -(q, div u)`;
//! `C` enforces a zero spatial mean of the pressure for every temporal mode.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geom::{self, LevelSetFunction, QuadOrder};
use crate::mesh::{SpaceTimeSlab, SpatialMesh};
use crate::sparse::{CscMatrix, Triplet};
use crate::spaces::{lagrange_basis, PressureSpace, SlabGeometry, VelocitySpace};
use crate::Phase;

pub type VectorField = Arc<dyn Fn(&[f64], f64) -> [f64; 3] + Send + Sync>;
pub type PhaseVectorField = Arc<dyn Fn(Phase, &[f64], f64) -> [f64; 3] + Send + Sync>;

/// Material data and forcing of the interface problem.
#[derive(Clone)]
pub struct ProblemCoefficients {
    /// Densities `[phase 1 (phi > 0), phase 2 (phi < 0)]`.
    pub rho: [f64; 2],
    pub mu: [f64; 2],
    /// Surface tension coefficient.
    pub tau: f64,
    pub level_set: Arc<dyn LevelSetFunction>,
    /// Volume force per phase.
    pub forcing: Option<PhaseVectorField>,
    /// Extra interface load `h` (manufactured solutions whose stress jump is
    /// not exactly `-tau kappa n`).
    pub interface_load: Option<VectorField>,
    /// Velocity on the boundary; homogeneous when absent.
    pub dirichlet: Option<VectorField>,
    /// Transport field `w`; adds `rho (w . grad u, v)` when present.
    pub convection: Option<VectorField>,
}

impl fmt::Debug for ProblemCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemCoefficients")
            .field("rho", &self.rho)
            .field("mu", &self.mu)
            .field("tau", &self.tau)
            .field("forcing", &self.forcing.is_some())
            .field("interface_load", &self.interface_load.is_some())
            .field("dirichlet", &self.dirichlet.is_some())
            .field("convection", &self.convection.is_some())
            .finish()
    }
}

impl ProblemCoefficients {
    pub fn new(rho: [f64; 2], mu: [f64; 2], tau: f64, level_set: Arc<dyn LevelSetFunction>) -> Result<Self> {
        let c = Self { rho, mu, tau, level_set, forcing: None, interface_load: None, dirichlet: None, convection: None };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rho.iter().chain(&self.mu).all(|v| *v > 0.0 && v.is_finite()) {
            return invalid("densities and viscosities must be positive");
        }
        if !(self.tau >= 0.0) || !self.tau.is_finite() {
            return invalid("surface tension must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PressureKind {
    Standard,
    Xfem,
}

/// Polynomial degrees and pressure space choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    /// Velocity degree in space (pressure uses `r - 1`, only `r = 2` is supported).
    pub r: usize,
    /// Degree in time.
    pub q: usize,
    pub pressure: PressureKind,
    /// Small-cut threshold for the XFEM space.
    pub theta: f64,
}

impl Default for Discretization {
    fn default() -> Self {
        Self { r: 2, q: 1, pressure: PressureKind::Xfem, theta: 0.0 }
    }
}

impl Discretization {
    pub fn validate(&self) -> Result<()> {
        if self.r != 2 {
            return invalid("only P2/P1 (r = 2) velocity/pressure pairs are implemented");
        }
        if self.q > 3 {
            return invalid("temporal degree q must be at most 3");
        }
        if !(0.0..1.0).contains(&self.theta) {
            return invalid("theta must lie in [0, 1)");
        }
        Ok(())
    }

    /// Exact for every bilinear integrand on uncut prisms (`2r` in space,
    /// `2q + 1` in time); cut pieces get the total degree of `rho du/dt . v`.
    pub fn assembly_order(&self) -> QuadOrder {
        QuadOrder { space: 2 * self.r, time: 2 * self.q + 1, cut: 2 * self.r + (2 * self.q).max(1) - 1 }
    }
}

/// The assembled blocks of one slab. Velocity rows/cols come first, then
/// pressure, then one mean multiplier per temporal mode.
#[derive(Debug, Clone)]
pub struct SlabSystem {
    pub slab: SpaceTimeSlab,
    pub n_u: usize,
    pub n_p: usize,
    pub n_mult: usize,
    pub time_block: CscMatrix,
    pub upwind_block: CscMatrix,
    pub viscous_block: CscMatrix,
    pub convection_block: Option<CscMatrix>,
    /// `-(p, div v)`: velocity rows, pressure columns.
    pub grad_block: CscMatrix,
    /// `-(q, div u)`: pressure rows, velocity columns.
    pub div_block: CscMatrix,
    /// `(p, l_j)`: multiplier rows, pressure columns.
    pub mean_block: CscMatrix,
    pub rhs_body: Vec<f64>,
    pub rhs_surface: Vec<f64>,
    pub rhs_upwind: Vec<f64>,
    /// Velocity dofs fixed by boundary data, with their values.
    pub dirichlet: Vec<(usize, f64)>,
}

impl SlabSystem {
    pub fn size(&self) -> usize {
        self.n_u + self.n_p + self.n_mult
    }

    pub fn velocity_block(&self) -> CscMatrix {
        let mut trip: Vec<Triplet> = Vec::new();
        let blocks = [Some(&self.time_block), Some(&self.upwind_block), Some(&self.viscous_block), self.convection_block.as_ref()];
        for b in blocks.into_iter().flatten() {
            trip.extend(b.iter().map(|(r, c, v)| (r as u32, c as u32, v)));
        }
        CscMatrix::from_triplets(self.n_u, self.n_u, &trip)
    }

    pub fn velocity_rhs(&self) -> Vec<f64> {
        (0..self.n_u).map(|i| self.rhs_body[i] + self.rhs_surface[i] + self.rhs_upwind[i]).collect()
    }

    /// Full bordered matrix and right-hand side with the boundary dofs
    /// replaced by identity rows and eliminated from all other rows.
    pub fn matrix_and_rhs(&self) -> (CscMatrix, Vec<f64>) {
        let n = self.size();
        let (nu, np) = (self.n_u, self.n_p);
        let mut fixed = vec![None; nu];
        for &(i, v) in &self.dirichlet {
            fixed[i] = Some(v);
        }
        let mut rhs = vec![0.0; n];
        rhs[..nu].copy_from_slice(&self.velocity_rhs());
        let mut trip: Vec<Triplet> = Vec::with_capacity(self.viscous_block.nnz() + 2 * self.grad_block.nnz() + nu);
        let blocks = [Some(&self.time_block), Some(&self.upwind_block), Some(&self.viscous_block), self.convection_block.as_ref()];
        for b in blocks.into_iter().flatten() {
            for (r, c, v) in b.iter() {
                if fixed[r].is_some() {
                    continue;
                }
                match fixed[c] {
                    Some(g) => rhs[r] -= v * g,
                    None => trip.push((r as u32, c as u32, v)),
                }
            }
        }
        for (r, c, v) in self.grad_block.iter() {
            if fixed[r].is_none() {
                trip.push((r as u32, (nu + c) as u32, v));
            }
        }
        for (r, c, v) in self.div_block.iter() {
            match fixed[c] {
                Some(g) => rhs[nu + r] -= v * g,
                None => trip.push(((nu + r) as u32, c as u32, v)),
            }
        }
        for (r, c, v) in self.mean_block.iter() {
            trip.push(((nu + np + r) as u32, (nu + c) as u32, v));
            trip.push(((nu + c) as u32, (nu + np + r) as u32, v));
        }
        for (i, f) in fixed.iter().enumerate() {
            if let Some(g) = f {
                trip.push((i as u32, i as u32, 1.0));
                rhs[i] = *g;
            }
        }
        (CscMatrix::from_triplets(n, n, &trip), rhs)
    }
}

struct Ctx<'a> {
    mesh: &'a SpatialMesh,
    geo: &'a SlabGeometry,
    vs: &'a VelocitySpace,
    ps: &'a PressureSpace,
    coef: &'a ProblemCoefficients,
    prev: Option<&'a [f64]>,
    order: QuadOrder,
    r: usize,
    d: usize,
    nloc: usize,
    nt: usize,
}

impl Ctx<'_> {
    fn nu_loc(&self) -> usize {
        self.nloc * self.d * self.nt
    }

    fn np_loc(&self) -> usize {
        (self.d + 1) * self.nt
    }

    fn ui(&self, mode: usize, comp: usize, a: usize) -> usize {
        (mode * self.d + comp) * self.nloc + a
    }
}

#[derive(Default)]
struct Local {
    u_dofs: Vec<u32>,
    p_dofs: [Vec<u32>; 2],
    active: [bool; 2],
    time: Vec<f64>,
    visc: Vec<f64>,
    upwind: Vec<f64>,
    conv: Vec<f64>,
    grad: [Vec<f64>; 2],
    mean: [Vec<f64>; 2],
    f_body: Vec<f64>,
    f_surf: Vec<f64>,
    f_upw: Vec<f64>,
}

struct Basis {
    n: [f64; 10],
    gn: [[f64; 3]; 10],
    lam: [f64; 4],
    l: [f64; 4],
    dl: [f64; 4],
}

fn basis_at(ctx: &Ctx, g: &crate::mesh::ElementGeometry, x: &[f64], tau: f64, k: f64) -> Basis {
    let lam = g.barycentric(x);
    let mut b = Basis { n: [0.0; 10], gn: [[0.0; 3]; 10], lam, l: [0.0; 4], dl: [0.0; 4] };
    lagrange_basis(ctx.d, ctx.r, &lam, &g.grad_lambda, &mut b.n, &mut b.gn);
    for i in 0..ctx.nt {
        b.l[i] = ctx.vs.time.value(i, tau);
        b.dl[i] = ctx.vs.time.derivative(i, tau) / k;
    }
    b
}

fn local_prism(ctx: &Ctx, e: usize) -> Local {
    let (d, nloc, nt) = (ctx.d, ctx.nloc, ctx.nt);
    let (nu, np) = (ctx.nu_loc(), ctx.np_loc());
    let slab = ctx.geo.slab;
    let k = slab.k();
    let g = ctx.mesh.geometry(e);
    let nodes = ctx.vs.nodes.element_nodes(e);
    let verts = ctx.mesh.simplex(e);
    let mut lc = Local {
        u_dofs: (0..nt)
            .flat_map(|i| (0..d).flat_map(move |c| (0..nloc).map(move |a| (i, c, a))))
            .map(|(i, c, a)| ctx.vs.index(nodes[a], c, i) as u32)
            .collect(),
        time: vec![0.0; nu * nu],
        visc: vec![0.0; nu * nu],
        upwind: vec![0.0; nu * nu],
        conv: if ctx.coef.convection.is_some() { vec![0.0; nu * nu] } else { Vec::new() },
        f_body: vec![0.0; nu],
        f_surf: vec![0.0; nu],
        f_upw: vec![0.0; nu],
        ..Default::default()
    };
    for ph in Phase::BOTH {
        let p = ph as usize;
        lc.p_dofs[p] = (0..nt)
            .flat_map(|j| (0..=d).map(move |m| (j, m)))
            .map(|(j, m)| ctx.ps.index(ctx.ps.node_group[verts[m]][p], j) as u32)
            .collect();
        let pts = ctx.geo.quadrature(ctx.mesh, e, ph, ctx.order);
        if pts.is_empty() {
            continue;
        }
        lc.active[p] = true;
        lc.grad[p] = vec![0.0; nu * np];
        lc.mean[p] = vec![0.0; nt * np];
        let (rho, mu) = (ctx.coef.rho[p], ctx.coef.mu[p]);
        for pt in &pts {
            let b = basis_at(ctx, &g, &pt.x[..d], (pt.t - slab.t0) / k, k);
            let w = pt.w;
            let mut nn = [[0.0; 10]; 10];
            let mut kk = [[0.0; 10]; 10];
            for a in 0..nloc {
                for bb in 0..nloc {
                    nn[a][bb] = b.n[a] * b.n[bb];
                    kk[a][bb] = (0..d).map(|c| b.gn[a][c] * b.gn[bb][c]).sum();
                }
            }
            for i in 0..nt {
                for j in 0..nt {
                    let ct = w * rho * b.l[i] * b.dl[j];
                    let cv = w * mu * b.l[i] * b.l[j];
                    for c in 0..d {
                        for ec in 0..d {
                            for a in 0..nloc {
                                let row = ctx.ui(i, c, a) * nu;
                                let col0 = ctx.ui(j, ec, 0);
                                let ga = b.gn[a][ec];
                                for bb in 0..nloc {
                                    let mut v = 2.0 * cv * b.gn[bb][c] * ga;
                                    if c == ec {
                                        v += 2.0 * cv * kk[a][bb];
                                        lc.time[row + col0 + bb] += ct * nn[a][bb];
                                    }
                                    lc.visc[row + col0 + bb] += v;
                                }
                            }
                        }
                    }
                }
            }
            if let Some(wf) = &ctx.coef.convection {
                let wv = wf(&pt.x[..d], pt.t);
                let mut wg = [0.0; 10];
                for bb in 0..nloc {
                    wg[bb] = (0..d).map(|c| wv[c] * b.gn[bb][c]).sum();
                }
                for i in 0..nt {
                    for j in 0..nt {
                        let cc = w * rho * b.l[i] * b.l[j];
                        for c in 0..d {
                            for a in 0..nloc {
                                let row = ctx.ui(i, c, a) * nu;
                                let col0 = ctx.ui(j, c, 0);
                                for bb in 0..nloc {
                                    lc.conv[row + col0 + bb] += cc * b.n[a] * wg[bb];
                                }
                            }
                        }
                    }
                }
            }
            for i in 0..nt {
                for j in 0..nt {
                    let cp = -w * b.l[i] * b.l[j];
                    for c in 0..d {
                        for a in 0..nloc {
                            let row = ctx.ui(i, c, a) * np;
                            for m in 0..=d {
                                lc.grad[p][row + j * (d + 1) + m] += cp * b.lam[m] * b.gn[a][c];
                            }
                        }
                    }
                    let cm = w * b.l[i] * b.l[j];
                    for m in 0..=d {
                        lc.mean[p][i * np + j * (d + 1) + m] += cm * b.lam[m];
                    }
                }
            }
            if let Some(f) = &ctx.coef.forcing {
                let gv = f(ph, &pt.x[..d], pt.t);
                for i in 0..nt {
                    for c in 0..d {
                        for a in 0..nloc {
                            lc.f_body[ctx.ui(i, c, a)] += w * b.l[i] * b.n[a] * gv[c];
                        }
                    }
                }
            }
        }
    }
    if let Some(cut) = ctx.geo.cuts.get(&e) {
        let ls = &ctx.coef.level_set;
        for sp in geom::interface_quadrature(cut, ctx.order.cut) {
            let ds = sp.ds_dt();
            if ds == 0.0 {
                continue;
            }
            let x = &sp.x[..d];
            let kappa = ls.curvature(x, sp.t);
            let n = ls.normal(x, sp.t);
            let h = ctx.coef.interface_load.as_ref().map(|h| h(x, sp.t)).unwrap_or([0.0; 3]);
            let b = basis_at(ctx, &g, x, (sp.t - slab.t0) / k, k);
            for i in 0..nt {
                for c in 0..d {
                    let force = -ctx.coef.tau * kappa * n[c] + h[c];
                    for a in 0..nloc {
                        lc.f_surf[ctx.ui(i, c, a)] += ds * b.l[i] * b.n[a] * force;
                    }
                }
            }
        }
    }
    // jump term at t_{n-1}: (rho u(t+), v(t+)) and the previous trace on the right
    let bottom: Vec<f64> = verts.iter().map(|&v| ctx.geo.dls.bottom[v]).collect();
    for ph in Phase::BOTH {
        let rho = ctx.coef.rho[ph as usize];
        for pt in geom::simplex_quadrature(ctx.mesh, e, &bottom, slab.t0, ph, 2 * ctx.r) {
            let b = basis_at(ctx, &g, &pt.x[..d], 0.0, k);
            let mut uprev = [0.0; 3];
            if let Some(prev) = ctx.prev {
                let nn = ctx.vs.nodes.num_nodes;
                for c in 0..d {
                    uprev[c] = (0..nloc).map(|a| b.n[a] * prev[c * nn + nodes[a]]).sum();
                }
            }
            for i in 0..nt {
                for c in 0..d {
                    for a in 0..nloc {
                        let row = ctx.ui(i, c, a);
                        let wa = pt.w * rho * b.l[i] * b.n[a];
                        lc.f_upw[row] += wa * uprev[c];
                        for j in 0..nt {
                            let col0 = ctx.ui(j, c, 0);
                            for bb in 0..nloc {
                                lc.upwind[row * nu + col0 + bb] += wa * b.l[j] * b.n[bb];
                            }
                        }
                    }
                }
            }
        }
    }
    lc
}

/// Assembles slab `geo.slab` given the previous slab's velocity at `t_{n-1}`
/// (`prev`, one spatial field laid out `comp * nodes + node`; `None` = zero).
pub fn assemble_slab(
    mesh: &SpatialMesh,
    geo: &SlabGeometry,
    vs: &VelocitySpace,
    ps: &PressureSpace,
    coef: &ProblemCoefficients,
    disc: &Discretization,
    prev: Option<&[f64]>,
) -> Result<SlabSystem> {
    coef.validate()?;
    disc.validate()?;
    if coef.level_set.dim() != mesh.dim() {
        return invalid("level set dimension does not match the mesh");
    }
    if let Some(p) = prev {
        if p.len() != vs.mode_size() {
            return invalid("previous trace has the wrong length");
        }
    }
    let d = mesh.dim();
    let ctx = Ctx {
        mesh,
        geo,
        vs,
        ps,
        coef,
        prev,
        order: disc.assembly_order(),
        r: disc.r,
        d,
        nloc: vs.nodes.nodes_per_element(),
        nt: vs.time.len(),
    };
    let ne = mesh.num_simplices();
    let locals: Vec<Local> = (0..ne).into_par_iter().with_min_len(64).map(|e| local_prism(&ctx, e)).collect();

    let (n_u, n_p, n_mult) = (vs.num_dofs(), ps.num_dofs(), vs.time.len());
    let (nu, np) = (ctx.nu_loc(), ctx.np_loc());
    let square = |pick: &dyn Fn(&Local) -> &Vec<f64>| {
        let mut trip: Vec<Triplet> = Vec::new();
        for lc in &locals {
            let m = pick(lc);
            if m.is_empty() {
                continue;
            }
            for r in 0..nu {
                for c in 0..nu {
                    let v = m[r * nu + c];
                    if v != 0.0 {
                        trip.push((lc.u_dofs[r], lc.u_dofs[c], v));
                    }
                }
            }
        }
        CscMatrix::from_triplets(n_u, n_u, &trip)
    };
    let time_block = square(&|l| &l.time);
    let viscous_block = square(&|l| &l.visc);
    let upwind_block = square(&|l| &l.upwind);
    let convection_block = coef.convection.as_ref().map(|_| square(&|l| &l.conv));

    let mut gtrip: Vec<Triplet> = Vec::new();
    let mut dtrip: Vec<Triplet> = Vec::new();
    let mut mtrip: Vec<Triplet> = Vec::new();
    let mut rhs_body = vec![0.0; n_u];
    let mut rhs_surface = vec![0.0; n_u];
    let mut rhs_upwind = vec![0.0; n_u];
    for lc in &locals {
        for p in 0..2 {
            if !lc.active[p] {
                continue;
            }
            for r in 0..nu {
                for s in 0..np {
                    let v = lc.grad[p][r * np + s];
                    if v != 0.0 {
                        gtrip.push((lc.u_dofs[r], lc.p_dofs[p][s], v));
                        dtrip.push((lc.p_dofs[p][s], lc.u_dofs[r], v));
                    }
                }
            }
            for j in 0..ctx.nt {
                for s in 0..np {
                    let v = lc.mean[p][j * np + s];
                    if v != 0.0 {
                        mtrip.push((j as u32, lc.p_dofs[p][s], v));
                    }
                }
            }
        }
        for r in 0..nu {
            let i = lc.u_dofs[r] as usize;
            rhs_body[i] += lc.f_body[r];
            rhs_surface[i] += lc.f_surf[r];
            rhs_upwind[i] += lc.f_upw[r];
        }
    }
    drop(locals);

    let mut dirichlet = Vec::new();
    let slab = geo.slab;
    for node in 0..vs.nodes.num_nodes {
        if !vs.nodes.is_boundary(node) {
            continue;
        }
        for j in 0..vs.time.len() {
            let t = slab.t0 + vs.time.nodes[j] * slab.k();
            let val = coef.dirichlet.as_ref().map(|f| f(vs.nodes.coord(node), t)).unwrap_or([0.0; 3]);
            for c in 0..d {
                dirichlet.push((vs.index(node, c, j), val[c]));
            }
        }
    }
    dirichlet.sort_by_key(|p| p.0);

    Ok(SlabSystem {
        slab,
        n_u,
        n_p,
        n_mult,
        time_block,
        upwind_block,
        viscous_block,
        convection_block,
        grad_block: CscMatrix::from_triplets(n_u, n_p, &gtrip),
        div_block: CscMatrix::from_triplets(n_p, n_u, &dtrip),
        mean_block: CscMatrix::from_triplets(n_mult, n_p, &mtrip),
        rhs_body,
        rhs_surface,
        rhs_upwind,
        dirichlet,
    })
}
