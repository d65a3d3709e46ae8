//! Discrete level sets on space-time prisms, cut decompositions and the
//! quadrature rules built on them.

pub mod levelset;
pub mod quadrature;

use crate::error::{Error, Result};
use crate::mesh::{SpaceTimeSlab, SpatialMesh};
use crate::small::{self, MAXN};
use crate::Phase;
pub use levelset::{FnLevelSet, LevelSetFunction, MovingSphere, Plane};
pub use quadrature::{line_rule, simplex_rule, QuadOrder, SimplexRule};

/// Relative snapping tolerance for nodal level-set values.
pub const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrismClass {
    Neg,
    Pos,
    Cut,
}

impl PrismClass {
    pub fn phase(self) -> Option<Phase> {
        match self {
            PrismClass::Neg => Some(Phase::Neg),
            PrismClass::Pos => Some(Phase::Pos),
            PrismClass::Cut => None,
        }
    }
}

/// Nodal values of `phi` at the bottom and top of one slab. Inside a prism
/// the field is the bilinear (space x time) interpolant; interfaces are
/// taken from its piecewise-linear restriction to the staircase simplices
/// (see [`DiscreteLevelSet::eval_linearized`]).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLevelSet {
    pub t0: f64,
    pub t1: f64,
    pub bottom: Vec<f64>,
    pub top: Vec<f64>,
}

impl DiscreteLevelSet {
    pub fn interpolate(mesh: &SpatialMesh, slab: &SpaceTimeSlab, ls: &dyn LevelSetFunction) -> Result<Self> {
        if ls.dim() != mesh.dim() {
            return Err(Error::InvalidInput("level set and mesh dimensions differ".into()));
        }
        let nv = mesh.num_vertices();
        let mut bottom = Vec::with_capacity(nv);
        let mut top = Vec::with_capacity(nv);
        for v in 0..nv {
            let x = mesh.vertex(v);
            let (b, t) = (ls.value(x, slab.t0), ls.value(x, slab.t1));
            if !b.is_finite() || !t.is_finite() {
                return Err(Error::InvalidInput(format!("level set is not finite at vertex {v}")));
            }
            bottom.push(b);
            top.push(t);
        }
        Ok(Self { t0: slab.t0, t1: slab.t1, bottom, top })
    }

    /// Snapped nodal values of the prism over `e`, in the simplex's local vertex order.
    pub fn prism_values(&self, mesh: &SpatialMesh, e: usize) -> ([f64; 4], [f64; 4]) {
        let s = mesh.simplex(e);
        let (mut b, mut t) = ([0.0; 4], [0.0; 4]);
        let mut scale = 0.0f64;
        for (i, &v) in s.iter().enumerate() {
            b[i] = self.bottom[v];
            t[i] = self.top[v];
            scale = scale.max(b[i].abs()).max(t[i].abs());
        }
        let tol = SNAP * scale;
        for i in 0..s.len() {
            if b[i].abs() <= tol {
                b[i] = 0.0;
            }
            if t[i].abs() <= tol {
                t[i] = 0.0;
            }
        }
        (b, t)
    }

    pub fn classify(&self, mesh: &SpatialMesh, e: usize) -> PrismClass {
        let (b, t) = self.prism_values(mesh, e);
        let n = mesh.dim() + 1;
        let vals = b[..n].iter().chain(&t[..n]);
        let (mut pos, mut neg, mut zero) = (false, false, false);
        for &v in vals {
            if v > 0.0 {
                pos = true;
            } else if v < 0.0 {
                neg = true;
            } else {
                zero = true;
            }
        }
        match (pos, neg, zero) {
            (true, false, false) => PrismClass::Pos,
            (false, true, false) => PrismClass::Neg,
            _ => PrismClass::Cut,
        }
    }

    /// Bilinear interpolant at barycentric `lambda`, relative time `tau` in `[0,1]`.
    pub fn eval_bilinear(&self, mesh: &SpatialMesh, e: usize, lambda: &[f64], tau: f64) -> f64 {
        mesh.simplex(e)
            .iter()
            .enumerate()
            .map(|(i, &v)| lambda[i] * ((1.0 - tau) * self.bottom[v] + tau * self.top[v]))
            .sum()
    }

    /// Piecewise-linear interpolant on the staircase split of the prism; its
    /// zero set is the discrete interface used by every cut routine.
    pub fn eval_linearized(&self, mesh: &SpatialMesh, e: usize, lambda: &[f64], tau: f64) -> f64 {
        let s = mesh.simplex(e);
        let d = mesh.dim();
        let order = sorted_local(s);
        // tail sums S_m = sum_{i >= m} lambda_{order_i}
        let mut tail = [0.0; MAXN + 1];
        for m in (0..=d).rev() {
            tail[m] = tail[m + 1] + lambda[order[m]];
        }
        let k = (0..=d).find(|&k| tau >= tail[d - k + 1] - 1e-15 && tau <= tail[d - k] + 1e-15).unwrap_or(d);
        let j = d - k;
        let mut v = 0.0;
        for (i, &li) in order[..=d].iter().enumerate() {
            let g = s[li];
            if i < j {
                v += lambda[li] * self.bottom[g];
            } else if i > j {
                v += lambda[li] * self.top[g];
            } else {
                v += (tail[j] - tau) * self.bottom[g] + (tau - tail[j + 1]) * self.top[g];
            }
        }
        v
    }
}

/// Local vertex positions ordered by global vertex index.
fn sorted_local(s: &[usize]) -> [usize; 4] {
    let mut order = [0, 1, 2, 3];
    let n = s.len();
    order[..n].sort_by_key(|&i| s[i]);
    order
}

/// A flat interface piece with its unit normal `grad phi_h / |grad phi_h|`
/// (space-time for prisms, spatial for fixed-time cuts).
#[derive(Debug, Clone)]
pub struct Facet {
    pub verts: Vec<[f64; 4]>,
    pub normal: [f64; 4],
}

/// Sub-simplices of each sign plus interface facets of one cut cell.
/// Points live in `R^n`; for space-time cells the last coordinate is `t`.
#[derive(Debug, Clone, Default)]
pub struct CutDecomposition {
    pub n: usize,
    pub parts: [Vec<Vec<[f64; 4]>>; 2],
    pub facets: Vec<Facet>,
}

impl CutDecomposition {
    pub fn part_measure(&self, phase: Phase) -> f64 {
        self.parts[phase as usize].iter().map(|s| small::simplex_measure(self.n, s)).sum()
    }

    /// `int_S ds dt` for space-time cells (weights by the spatial part of the normal).
    pub fn interface_measure(&self) -> f64 {
        let d = self.n - 1;
        self.facets
            .iter()
            .map(|f| small::simplex_measure(self.n, &f.verts) * small::norm(d, &f.normal[..d]))
            .sum()
    }
}

/// Splits the simplex `pts` (`n + 1` points in `R^n`, values already
/// snapped) along the zero set of its linear interpolant.
pub fn cut_simplex(n: usize, pts: &[[f64; 4]], vals: &[f64], out: &mut CutDecomposition) {
    out.n = n;
    let normal = linear_gradient(n, pts, vals).map(|g| {
        let l = small::norm(n, &g);
        let mut u = [0.0; 4];
        for c in 0..n {
            u[c] = g[c] / l;
        }
        u
    });
    let mut stack: Vec<Vec<([f64; 4], f64)>> = vec![pts.iter().copied().zip(vals.iter().copied()).collect()];
    while let Some(s) = stack.pop() {
        let ip = s.iter().position(|p| p.1 > 0.0);
        let im = s.iter().position(|p| p.1 < 0.0);
        match (ip, im) {
            (Some(i), Some(j)) => {
                let (pi, vi) = s[i];
                let (pj, vj) = s[j];
                let a = vi / (vi - vj);
                let mut z = [0.0; 4];
                for c in 0..n {
                    z[c] = pi[c] + a * (pj[c] - pi[c]);
                }
                let mut s1 = s.clone();
                s1[j] = (z, 0.0);
                let mut s2 = s;
                s2[i] = (z, 0.0);
                stack.push(s1);
                stack.push(s2);
            }
            (None, Some(_)) => {
                let zeros: Vec<[f64; 4]> = s.iter().filter(|p| p.1 == 0.0).map(|p| p.0).collect();
                if zeros.len() == n {
                    if let Some(normal) = normal {
                        out.facets.push(Facet { verts: zeros, normal });
                    }
                }
                out.parts[Phase::Neg as usize].push(s.iter().map(|p| p.0).collect());
            }
            (Some(_), None) => out.parts[Phase::Pos as usize].push(s.iter().map(|p| p.0).collect()),
            // identically zero: assign to phase 1
            (None, None) => out.parts[Phase::Pos as usize].push(s.iter().map(|p| p.0).collect()),
        }
    }
}

/// Gradient of the affine function through `(pts[i], vals[i])`.
fn linear_gradient(n: usize, pts: &[[f64; 4]], vals: &[f64]) -> Option<[f64; 4]> {
    let mut m = [[0.0; MAXN]; MAXN];
    let mut b = [0.0; MAXN];
    for r in 0..n {
        for c in 0..n {
            m[r][c] = pts[r + 1][c] - pts[0][c];
        }
        b[r] = vals[r + 1] - vals[0];
    }
    small::solve(n, &mut m, &mut b)?;
    let mut g = [0.0; 4];
    g[..n].copy_from_slice(&b[..n]);
    (small::norm(n, &g) > 0.0).then_some(g)
}

/// Physical vertices `(x, t)` of the staircase simplices of a prism.
pub fn staircase(mesh: &SpatialMesh, slab: &SpaceTimeSlab, e: usize) -> Vec<Vec<([f64; 4], usize, bool)>> {
    let d = mesh.dim();
    let s = mesh.simplex(e);
    let order = sorted_local(s);
    let vert = |li: usize, top: bool| {
        let mut p = [0.0; 4];
        p[..d].copy_from_slice(mesh.vertex(s[li]));
        p[d] = if top { slab.t1 } else { slab.t0 };
        (p, li, top)
    };
    (0..=d)
        .map(|k| {
            let j = d - k;
            let mut v: Vec<_> = (0..=j).map(|i| vert(order[i], false)).collect();
            v.extend((j..=d).map(|i| vert(order[i], true)));
            v
        })
        .collect()
}

/// Cut decomposition of the prism over `e` by the discrete interface.
pub fn decompose_prism(mesh: &SpatialMesh, slab: &SpaceTimeSlab, dls: &DiscreteLevelSet, e: usize) -> Result<CutDecomposition> {
    let n = mesh.dim() + 1;
    let (b, t) = dls.prism_values(mesh, e);
    let mut out = CutDecomposition { n, ..Default::default() };
    for simplex in staircase(mesh, slab, e) {
        let pts: Vec<[f64; 4]> = simplex.iter().map(|v| v.0).collect();
        let vals: Vec<f64> = simplex.iter().map(|&(_, li, top)| if top { t[li] } else { b[li] }).collect();
        cut_simplex(n, &pts, &vals, &mut out);
    }
    let total = slab.prism_measure(mesh, e);
    let got = out.part_measure(Phase::Neg) + out.part_measure(Phase::Pos);
    if (got - total).abs() > 1e-10 * total {
        return Err(Error::Geometry(format!("cut of prism {e} lost volume: {got} vs {total}")));
    }
    Ok(out)
}

/// Cut of spatial simplex `e` by the linear interpolant of `vals` (one value
/// per local vertex), e.g. the discrete interface at a slab boundary.
pub fn decompose_simplex(mesh: &SpatialMesh, e: usize, vals: &[f64]) -> CutDecomposition {
    let d = mesh.dim();
    let s = mesh.simplex(e);
    let scale = vals[..=d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let snapped: Vec<f64> = vals[..=d].iter().map(|&v| if v.abs() <= SNAP * scale { 0.0 } else { v }).collect();
    let pts: Vec<[f64; 4]> = s
        .iter()
        .map(|&v| {
            let mut p = [0.0; 4];
            p[..d].copy_from_slice(mesh.vertex(v));
            p
        })
        .collect();
    let mut out = CutDecomposition { n: d, ..Default::default() };
    cut_simplex(d, &pts, &snapped, &mut out);
    out
}

/// A weighted point `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StPoint {
    pub x: [f64; 3],
    pub t: f64,
    pub w: f64,
}

/// A point on a space-time interface facet. `w` is the facet measure
/// element `d sigma`; `w * |nu_x|` is the `ds dt` weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub x: [f64; 3],
    pub t: f64,
    pub w: f64,
    pub nu: [f64; 4],
    pub dim: usize,
}

impl SurfacePoint {
    pub fn nu_x_norm(&self) -> f64 {
        small::norm(self.dim, &self.nu[..self.dim])
    }

    pub fn ds_dt(&self) -> f64 {
        self.w * self.nu_x_norm()
    }

    /// Spatial unit normal of the discrete interface (zero if `nu` is purely temporal).
    pub fn n_gamma(&self) -> [f64; 3] {
        let l = self.nu_x_norm();
        let mut n = [0.0; 3];
        if l > 0.0 {
            for c in 0..self.dim {
                n[c] = self.nu[c] / l;
            }
        }
        n
    }
}

fn map_simplex(n: usize, verts: &[[f64; 4]], rule: &SimplexRule, scale: f64, time_axis: Option<usize>, out: &mut Vec<StPoint>) {
    for (q, &w) in rule.points.iter().zip(&rule.weights) {
        let mut p = verts[0];
        for i in 0..rule.n {
            for c in 0..n {
                p[c] += q[i] * (verts[i + 1][c] - verts[0][c]);
            }
        }
        let mut x = [0.0; 3];
        let t = match time_axis {
            Some(ta) => {
                x[..ta].copy_from_slice(&p[..ta]);
                p[ta]
            }
            None => {
                x[..n].copy_from_slice(&p[..n]);
                0.0
            }
        };
        out.push(StPoint { x, t, w: w * scale });
    }
}

fn simplex_scale(n: usize, verts: &[[f64; 4]]) -> f64 {
    small::simplex_measure(n, verts) * small::factorial(verts.len() - 1)
}

/// Points of the `phase` part of the prism over `e`. Uncut prisms use a
/// Gauss(time) x simplex(space) tensor rule; cut pieces a simplex rule of
/// total degree `order.cut`.
pub fn prism_quadrature(
    mesh: &SpatialMesh,
    slab: &SpaceTimeSlab,
    e: usize,
    class: PrismClass,
    cut: Option<&CutDecomposition>,
    phase: Phase,
    order: QuadOrder,
) -> Vec<StPoint> {
    let d = mesh.dim();
    let mut out = Vec::new();
    match class.phase() {
        Some(p) if p != phase => {}
        Some(_) => {
            let g = mesh.geometry(e);
            let rule = simplex_rule(d, order.space);
            let lr = line_rule(order.time);
            let scale = g.volume * small::factorial(d) * slab.k();
            for (tq, tw) in lr.0.iter().zip(&lr.1) {
                let t = slab.t0 + tq * slab.k();
                for (q, w) in rule.points.iter().zip(&rule.weights) {
                    let mut lam = [0.0; 4];
                    lam[1..=d].copy_from_slice(&q[..d]);
                    lam[0] = 1.0 - q[..d].iter().sum::<f64>();
                    out.push(StPoint { x: g.point(&lam), t, w: w * tw * scale });
                }
            }
        }
        None => {
            let cut = cut.expect("cut prism needs its decomposition");
            let rule = simplex_rule(d + 1, order.cut);
            for s in &cut.parts[phase as usize] {
                map_simplex(d + 1, s, &rule, simplex_scale(d + 1, s), Some(d), &mut out);
            }
        }
    }
    out
}

/// Rule of total degree `degree` mapped to the space-time simplex `verts`
/// (`n + 1` points in `R^n`, time is the last coordinate).
pub fn spacetime_simplex_points(n: usize, verts: &[[f64; 4]], degree: usize, out: &mut Vec<StPoint>) {
    let rule = simplex_rule(n, degree);
    map_simplex(n, verts, &rule, simplex_scale(n, verts), Some(n - 1), out);
}

/// Points on the interface facets of a cut prism.
pub fn interface_quadrature(cut: &CutDecomposition, degree: usize) -> Vec<SurfacePoint> {
    let n = cut.n;
    let d = n - 1;
    let rule = simplex_rule(n - 1, degree);
    let mut pts = Vec::new();
    let mut out = Vec::new();
    for f in &cut.facets {
        pts.clear();
        map_simplex(n, &f.verts, &rule, simplex_scale(n, &f.verts), Some(d), &mut pts);
        out.extend(pts.iter().map(|p| SurfacePoint { x: p.x, t: p.t, w: p.w, nu: f.normal, dim: d }));
    }
    out
}

/// Points of the `phase` part of spatial simplex `e` at time `t`, cut by the
/// linear interpolant of `vals` when they change sign.
pub fn simplex_quadrature(mesh: &SpatialMesh, e: usize, vals: &[f64], t: f64, phase: Phase, degree: usize) -> Vec<StPoint> {
    let d = mesh.dim();
    let scale = vals[..=d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = |v: f64| if v.abs() <= SNAP * scale { 0 } else if v > 0.0 { 1 } else { -1 };
    let has_pos = vals[..=d].iter().any(|&v| sign(v) > 0);
    let has_neg = vals[..=d].iter().any(|&v| sign(v) < 0);
    let whole = match (has_pos, has_neg) {
        (true, true) => None,
        (false, true) => Some(Phase::Neg),
        _ => Some(Phase::Pos),
    };
    let rule = simplex_rule(d, degree);
    let mut out = Vec::new();
    match whole {
        Some(p) if p != phase => {}
        Some(_) => {
            let g = mesh.geometry(e);
            let s = g.volume * small::factorial(d);
            for (q, w) in rule.points.iter().zip(&rule.weights) {
                let mut lam = [0.0; 4];
                lam[1..=d].copy_from_slice(&q[..d]);
                lam[0] = 1.0 - q[..d].iter().sum::<f64>();
                out.push(StPoint { x: g.point(&lam), t, w: w * s });
            }
        }
        None => {
            let cut = decompose_simplex(mesh, e, vals);
            for s in &cut.parts[phase as usize] {
                map_simplex(d, s, &rule, simplex_scale(d, s), None, &mut out);
            }
            for p in &mut out {
                p.t = t;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_uniform_simplicial_mesh, BoxDomain, TimePartition};

    fn single_triangle_prism() -> (SpatialMesh, SpaceTimeSlab) {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 1).unwrap();
        let p = TimePartition::uniform(1.0, 1).unwrap();
        (m, p.slab(0))
    }

    fn dls_from(mesh: &SpatialMesh, e: usize, b: &[f64], t: &[f64]) -> DiscreteLevelSet {
        let mut bottom = vec![1.0; mesh.num_vertices()];
        let mut top = vec![1.0; mesh.num_vertices()];
        for (i, &v) in mesh.simplex(e).iter().enumerate() {
            bottom[v] = b[i];
            top[v] = t[i];
        }
        DiscreteLevelSet { t0: 0.0, t1: 1.0, bottom, top }
    }

    #[test]
    fn classification_examples() {
        let (m, _) = single_triangle_prism();
        assert_eq!(dls_from(&m, 0, &[1.0; 3], &[1.0; 3]).classify(&m, 0), PrismClass::Pos);
        let eps = 1e-3;
        assert_eq!(dls_from(&m, 0, &[-1.0; 3], &[-eps; 3]).classify(&m, 0), PrismClass::Neg);
        assert_eq!(dls_from(&m, 0, &[-1.0, 1.0, 1.0], &[1.0; 3]).classify(&m, 0), PrismClass::Cut);
        assert_eq!(dls_from(&m, 0, &[0.0, 1.0, 1.0], &[1.0; 3]).classify(&m, 0), PrismClass::Cut);
    }

    /// phi = t - 1/2 cuts the unit prism into two halves with a flat
    /// interface of zero spatial normal.
    #[test]
    fn horizontal_cut() {
        let (m, slab) = single_triangle_prism();
        let dls = dls_from(&m, 0, &[-0.5; 3], &[0.5; 3]);
        let cut = decompose_prism(&m, &slab, &dls, 0).unwrap();
        let vol = slab.prism_measure(&m, 0);
        assert!((cut.part_measure(Phase::Neg) - vol / 2.0).abs() < 1e-14);
        assert!((cut.part_measure(Phase::Pos) - vol / 2.0).abs() < 1e-14);
        let area: f64 = cut.facets.iter().map(|f| small::simplex_measure(3, &f.verts)).sum();
        assert!((area - 0.5).abs() < 1e-14, "{area}");
        assert!(cut.interface_measure().abs() < 1e-15);
        for f in &cut.facets {
            assert!((f.normal[2] - 1.0).abs() < 1e-14);
        }
    }

    /// A vertical plane x = 1/2 through the prism over the lower triangle:
    /// the interface is the segment {x = 1/2, 0 <= y <= 1/2} times (0,1).
    #[test]
    fn vertical_plane_cut() {
        let (m, slab) = single_triangle_prism();
        let ls = Plane { a: vec![1.0, 0.0], b: 0.0, c: -0.5 };
        let dls = DiscreteLevelSet::interpolate(&m, &slab, &ls).unwrap();
        let e = 0; // (0,0),(1,0),(1,1)
        let cut = decompose_prism(&m, &slab, &dls, e).unwrap();
        assert!((cut.part_measure(Phase::Neg) - 0.125).abs() < 1e-14);
        assert!((cut.part_measure(Phase::Pos) - 0.375).abs() < 1e-14);
        assert!((cut.interface_measure() - 0.5).abs() < 1e-14);
        for f in &cut.facets {
            assert!((f.normal[0] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn linearized_matches_nodes_and_bilinear_on_edges() {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap(), 1).unwrap();
        let p = TimePartition::uniform(1.0, 1).unwrap();
        let ls = MovingSphere { center: vec![0.3, 0.2, 0.1], velocity: vec![0.2, 0.0, 0.3], radius_sq: 0.3, radius_sq_rate: 0.1 };
        let dls = DiscreteLevelSet::interpolate(&m, &p.slab(0), &ls).unwrap();
        for e in 0..m.num_simplices() {
            for i in 0..4 {
                let mut l = [0.0; 4];
                l[i] = 1.0;
                for tau in [0.0, 0.3, 1.0] {
                    let a = dls.eval_linearized(&m, e, &l, tau);
                    let b = dls.eval_bilinear(&m, e, &l, tau);
                    assert!((a - b).abs() < 1e-14);
                }
            }
            // both agree on bottom and top faces
            let l = [0.1, 0.2, 0.3, 0.4];
            for tau in [0.0, 1.0] {
                assert!((dls.eval_linearized(&m, e, &l, tau) - dls.eval_bilinear(&m, e, &l, tau)).abs() < 1e-14);
            }
        }
    }

    /// The linearized interpolant vanishes at the facets of the decomposition.
    #[test]
    fn facets_lie_on_linearized_zero_set() {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[-1.0, -1.0], &[1.0, 1.0]).unwrap(), 4).unwrap();
        let part = TimePartition::uniform(1.0, 3).unwrap();
        let ls = MovingSphere { center: vec![0.0, -0.25], velocity: vec![0.0, 0.5], radius_sq: 0.25, radius_sq_rate: 0.0 };
        for slab in part.slabs() {
            let dls = DiscreteLevelSet::interpolate(&m, &slab, &ls).unwrap();
            for e in 0..m.num_simplices() {
                if dls.classify(&m, e) != PrismClass::Cut {
                    continue;
                }
                let cut = decompose_prism(&m, &slab, &dls, e).unwrap();
                let g = m.geometry(e);
                for f in &cut.facets {
                    for v in &f.verts {
                        let l = g.barycentric(&v[..2]);
                        let tau = (v[2] - slab.t0) / slab.k();
                        assert!(dls.eval_linearized(&m, e, &l, tau).abs() < 1e-12);
                    }
                }
            }
        }
    }
}
