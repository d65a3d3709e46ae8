//! Structured simplicial meshes of boxes, uniform time partitions and
//! space-time slabs built from them.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::small::{self, MAXN};

/// Axis-aligned box `prod_i (lower_i, upper_i)` in 2 or 3 dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: &[f64], upper: &[f64]) -> Result<Self> {
        if lower.len() != upper.len() || !(2..=3).contains(&lower.len()) {
            return invalid("box domain must have matching bounds in 2 or 3 dimensions");
        }
        if lower.iter().zip(upper).any(|(l, u)| !(u > l) || !l.is_finite() || !u.is_finite()) {
            return invalid("box domain needs lower < upper on every axis");
        }
        Ok(Self { lower: lower.to_vec(), upper: upper.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).product()
    }
}

/// Which box face a boundary facet lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxFace {
    pub axis: usize,
    pub upper: bool,
}

#[derive(Debug, Clone)]
pub struct BoundaryFacet {
    pub vertices: Vec<usize>,
    pub face: BoxFace,
}

/// Per-simplex affine data: vertices, volume and barycentric gradients.
#[derive(Debug, Clone, Copy)]
pub struct ElementGeometry {
    pub dim: usize,
    pub vertices: [[f64; 3]; 4],
    pub volume: f64,
    /// `grad_lambda[i]` is the (constant) gradient of barycentric coordinate `i`.
    pub grad_lambda: [[f64; 3]; 4],
}

impl ElementGeometry {
    /// Barycentric coordinates of `x`.
    pub fn barycentric(&self, x: &[f64]) -> [f64; 4] {
        let d = self.dim;
        let mut l = [0.0; 4];
        let mut s = 0.0;
        for i in 1..=d {
            let mut v = 0.0;
            for c in 0..d {
                v += self.grad_lambda[i][c] * (x[c] - self.vertices[0][c]);
            }
            l[i] = v;
            s += v;
        }
        l[0] = 1.0 - s;
        l
    }

    pub fn point(&self, lambda: &[f64]) -> [f64; 3] {
        let mut p = [0.0; 3];
        for i in 0..=self.dim {
            for c in 0..self.dim {
                p[c] += lambda[i] * self.vertices[i][c];
            }
        }
        p
    }
}

/// Conforming simplicial mesh of a box: each cube of side `h = 1/N_S` is
/// split into `d!` simplices sharing its main diagonal.
#[derive(Debug, Clone)]
pub struct SpatialMesh {
    dim: usize,
    domain: BoxDomain,
    cells: [usize; 3],
    h: f64,
    ns: usize,
    coords: Vec<f64>,
    simplices: Vec<usize>,
    boundary: Vec<BoundaryFacet>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshSummary {
    pub dim: usize,
    pub ns: usize,
    pub h: f64,
    pub cells_per_axis: Vec<usize>,
    pub vertices: usize,
    pub simplices: usize,
    pub boundary_facets: usize,
    pub volume: f64,
}

pub fn build_uniform_simplicial_mesh(domain: &BoxDomain, ns: usize) -> Result<SpatialMesh> {
    if ns == 0 {
        return invalid("N_S must be positive");
    }
    let dim = domain.dim();
    let h = 1.0 / ns as f64;
    let mut cells = [1usize; 3];
    for a in 0..dim {
        let n = (domain.upper[a] - domain.lower[a]) * ns as f64;
        let r = n.round();
        if (n - r).abs() > 1e-9 || r < 1.0 {
            return invalid(format!(
                "box extent {} on axis {a} is not a multiple of h = 1/{ns}",
                domain.upper[a] - domain.lower[a]
            ));
        }
        cells[a] = r as usize;
    }
    let nv = |a: usize| cells[a] + 1;
    let vid = |i: usize, j: usize, k: usize| i + nv(0) * (j + nv(1) * k);
    let nz = if dim == 3 { nv(2) } else { 1 };
    let mut coords = Vec::with_capacity(nv(0) * nv(1) * nz * dim);
    for k in 0..nz {
        for j in 0..nv(1) {
            for i in 0..nv(0) {
                let idx = [i, j, k];
                for a in 0..dim {
                    coords.push(domain.lower[a] + idx[a] as f64 * h);
                }
            }
        }
    }
    let mut simplices = Vec::new();
    let cz = if dim == 3 { cells[2] } else { 1 };
    for k in 0..cz {
        for j in 0..cells[1] {
            for i in 0..cells[0] {
                if dim == 2 {
                    let (v00, v10, v01, v11) = (vid(i, j, 0), vid(i + 1, j, 0), vid(i, j + 1, 0), vid(i + 1, j + 1, 0));
                    simplices.extend_from_slice(&[v00, v10, v11, v00, v11, v01]);
                } else {
                    for perm in PERMS3 {
                        let mut p = [i, j, k];
                        let mut tet = [vid(i, j, k), 0, 0, 0];
                        for (s, &ax) in perm.iter().enumerate() {
                            p[ax] += 1;
                            tet[s + 1] = vid(p[0], p[1], p[2]);
                        }
                        simplices.extend_from_slice(&tet);
                    }
                }
            }
        }
    }
    let mut mesh = SpatialMesh { dim, domain: domain.clone(), cells, h, ns, coords, simplices, boundary: Vec::new() };
    mesh.orient();
    mesh.boundary = mesh.find_boundary();
    Ok(mesh)
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl SpatialMesh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn ns(&self) -> usize {
        self.ns
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len() / (self.dim + 1)
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn simplex(&self, e: usize) -> &[usize] {
        let n = self.dim + 1;
        &self.simplices[e * n..(e + 1) * n]
    }

    pub fn boundary_facets(&self) -> &[BoundaryFacet] {
        &self.boundary
    }

    pub fn is_boundary_point(&self, x: &[f64]) -> bool {
        let tol = 1e-12 * self.h;
        (0..self.dim).any(|a| (x[a] - self.domain.lower[a]).abs() <= tol || (x[a] - self.domain.upper[a]).abs() <= tol)
    }

    pub fn geometry(&self, e: usize) -> ElementGeometry {
        let d = self.dim;
        let s = self.simplex(e);
        let mut vertices = [[0.0; 3]; 4];
        for (i, &v) in s.iter().enumerate() {
            vertices[i][..d].copy_from_slice(self.vertex(v));
        }
        // rows of J^{-1} are the gradients of lambda_1..lambda_d
        let mut grad_lambda = [[0.0; 3]; 4];
        let mut jac = [[0.0; MAXN]; MAXN];
        for r in 0..d {
            for c in 0..d {
                jac[r][c] = vertices[c + 1][r] - vertices[0][r];
            }
        }
        let det = small::det(d, &jac);
        for i in 0..d {
            // solve J^T g = e_i
            let mut jt = [[0.0; MAXN]; MAXN];
            for r in 0..d {
                for c in 0..d {
                    jt[r][c] = jac[c][r];
                }
            }
            let mut b = [0.0; MAXN];
            b[i] = 1.0;
            small::solve(d, &mut jt, &mut b).expect("degenerate mesh simplex");
            grad_lambda[i + 1][..d].copy_from_slice(&b[..d]);
        }
        for c in 0..d {
            grad_lambda[0][c] = -(1..=d).map(|i| grad_lambda[i][c]).sum::<f64>();
        }
        ElementGeometry { dim: d, vertices, volume: det.abs() / small::factorial(d), grad_lambda }
    }

    /// The simplex containing `x` (ties resolved towards the lowest index)
    /// together with the barycentric coordinates of `x` in it.
    pub fn locate(&self, x: &[f64]) -> Option<(usize, [f64; 4])> {
        let d = self.dim;
        let mut cell = [0usize; 3];
        for a in 0..d {
            let s = (x[a] - self.domain.lower[a]) / self.h;
            if !(s >= -1e-9 && s <= self.cells[a] as f64 + 1e-9) {
                return None;
            }
            cell[a] = (s.floor().max(0.0) as usize).min(self.cells[a] - 1);
        }
        let per_cell = if d == 2 { 2 } else { 6 };
        let lin = cell[0] + self.cells[0] * (cell[1] + self.cells[1] * cell[2]);
        let mut best: Option<(usize, [f64; 4], f64)> = None;
        for e in lin * per_cell..(lin + 1) * per_cell {
            let l = self.geometry(e).barycentric(x);
            let m = l[..=d].iter().copied().fold(f64::INFINITY, f64::min);
            if best.map_or(true, |b| m > b.2 + 1e-14) {
                best = Some((e, l, m));
            }
        }
        best.filter(|b| b.2 >= -1e-9).map(|b| (b.0, b.1))
    }

    pub fn summary(&self) -> MeshSummary {
        MeshSummary {
            dim: self.dim,
            ns: self.ns,
            h: self.h,
            cells_per_axis: self.cells[..self.dim].to_vec(),
            vertices: self.num_vertices(),
            simplices: self.num_simplices(),
            boundary_facets: self.boundary.len(),
            volume: self.domain.volume(),
        }
    }

    fn orient(&mut self) {
        let d = self.dim;
        for e in 0..self.num_simplices() {
            let s = self.simplex(e).to_vec();
            let mut jac = [[0.0; MAXN]; MAXN];
            for r in 0..d {
                for c in 0..d {
                    jac[r][c] = self.vertex(s[c + 1])[r] - self.vertex(s[0])[r];
                }
            }
            if small::det(d, &jac) < 0.0 {
                self.simplices.swap(e * (d + 1) + d - 1, e * (d + 1) + d);
            }
        }
    }

    fn find_boundary(&self) -> Vec<BoundaryFacet> {
        let d = self.dim;
        let mut out = Vec::new();
        for e in 0..self.num_simplices() {
            let s = self.simplex(e);
            for skip in 0..=d {
                let face: Vec<usize> = (0..=d).filter(|&i| i != skip).map(|i| s[i]).collect();
                'axes: for axis in 0..d {
                    for (upper, bound) in [(false, self.domain.lower[axis]), (true, self.domain.upper[axis])] {
                        if face.iter().all(|&v| (self.vertex(v)[axis] - bound).abs() <= 1e-12 * self.h) {
                            out.push(BoundaryFacet { vertices: face.clone(), face: BoxFace { axis, upper } });
                            break 'axes;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Uniform partition `0 = t_0 < ... < t_N = T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimePartition {
    pub t_final: f64,
    pub nodes: Vec<f64>,
}

impl TimePartition {
    pub fn uniform(t_final: f64, n: usize) -> Result<Self> {
        if n == 0 || !(t_final > 0.0) || !t_final.is_finite() {
            return invalid("time partition needs N >= 1 and T > 0");
        }
        let nodes = (0..=n).map(|i| if i == n { t_final } else { t_final * i as f64 / n as f64 }).collect();
        Ok(Self { t_final, nodes })
    }

    pub fn num_slabs(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn slab(&self, n: usize) -> SpaceTimeSlab {
        SpaceTimeSlab { index: n, t0: self.nodes[n], t1: self.nodes[n + 1] }
    }

    pub fn slabs(&self) -> impl Iterator<Item = SpaceTimeSlab> + '_ {
        (0..self.num_slabs()).map(|n| self.slab(n))
    }

    /// Slab whose half-open interval `(t_{n}, t_{n+1}]` contains `t`;
    /// `t = 0` belongs to the first slab.
    pub fn slab_of(&self, t: f64) -> Option<usize> {
        if !(t >= self.nodes[0] && t <= self.t_final) {
            return None;
        }
        let n = self.nodes.partition_point(|&s| s < t);
        Some(n.saturating_sub(1).min(self.num_slabs() - 1))
    }
}

/// `Omega x (t0, t1]`; its prisms are `simplex x (t0, t1]`, one per simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeSlab {
    pub index: usize,
    pub t0: f64,
    pub t1: f64,
}

impl SpaceTimeSlab {
    pub fn k(&self) -> f64 {
        self.t1 - self.t0
    }

    /// Space-time measure of the prism over simplex `e`.
    pub fn prism_measure(&self, mesh: &SpatialMesh, e: usize) -> f64 {
        mesh.geometry(e).volume * self.k()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn unit_square() -> BoxDomain {
        BoxDomain::new(&[0.0, 0.0], &[1.0, 1.0]).unwrap()
    }

    #[test]
    fn one_cell_square() {
        let m = build_uniform_simplicial_mesh(&unit_square(), 1).unwrap();
        assert_eq!(m.num_vertices(), 4);
        assert_eq!(m.num_simplices(), 2);
        assert_eq!(m.boundary_facets().len(), 4);
    }

    #[test]
    fn volumes_sum_to_box() {
        for (dom, ns) in [
            (BoxDomain::new(&[-1.0, -1.0], &[1.0, 1.0]).unwrap(), 4),
            (BoxDomain::new(&[-1.0, -1.0, -0.75], &[1.0, 1.0, 1.75]).unwrap(), 4),
        ] {
            let m = build_uniform_simplicial_mesh(&dom, ns).unwrap();
            let total: f64 = (0..m.num_simplices()).map(|e| m.geometry(e).volume).sum();
            assert!((total - dom.volume()).abs() < 1e-12 * dom.volume());
            for e in 0..m.num_simplices() {
                assert!(m.geometry(e).volume > 0.0);
            }
        }
    }

    #[test]
    fn sphere_box_cube_count() {
        let dom = BoxDomain::new(&[-1.0, -1.0, -0.75], &[1.0, 1.0, 1.75]).unwrap();
        let m = build_uniform_simplicial_mesh(&dom, 4).unwrap();
        assert_eq!(m.num_simplices(), 8 * 8 * 10 * 6);
    }

    #[test]
    fn rejects_incommensurate_box() {
        let dom = BoxDomain::new(&[0.0, 0.0], &[1.1, 1.0]).unwrap();
        assert!(build_uniform_simplicial_mesh(&dom, 4).is_err());
        assert!(build_uniform_simplicial_mesh(&unit_square(), 0).is_err());
    }

    /// Interior facets are shared by exactly two simplices, boundary facets by one.
    #[test]
    fn facet_multiplicities() {
        for dom in [unit_square(), BoxDomain::new(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap()] {
            let m = build_uniform_simplicial_mesh(&dom, 3).unwrap();
            let d = m.dim();
            let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
            for e in 0..m.num_simplices() {
                let s = m.simplex(e);
                for skip in 0..=d {
                    let mut f: Vec<usize> = (0..=d).filter(|&i| i != skip).map(|i| s[i]).collect();
                    f.sort();
                    *count.entry(f).or_default() += 1;
                }
            }
            let mut bnd: Vec<Vec<usize>> = m
                .boundary_facets()
                .iter()
                .map(|b| {
                    let mut v = b.vertices.clone();
                    v.sort();
                    v
                })
                .collect();
            bnd.sort();
            let mut once: Vec<Vec<usize>> = count.iter().filter(|(_, &c)| c == 1).map(|(f, _)| f.clone()).collect();
            once.sort();
            assert_eq!(bnd, once);
            assert!(count.values().all(|&c| c == 1 || c == 2));
            // 2 * 3^(d-1) * 2d boundary facets for (d-1)! splits of each face square
            let expected = if d == 2 { 4 * 3 } else { 6 * 9 * 2 };
            assert_eq!(bnd.len(), expected);
        }
    }

    #[test]
    fn locate_finds_containing_simplex() {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[-1.0, -1.0, -1.0], &[1.0, 1.0, 1.0]).unwrap(), 2).unwrap();
        for x in [[0.1, -0.3, 0.77], [-1.0, -1.0, -1.0], [1.0, 1.0, 1.0], [0.25, 0.25, 0.25]] {
            let (e, l) = m.locate(&x).unwrap();
            let p = m.geometry(e).point(&l);
            for c in 0..3 {
                assert!((p[c] - x[c]).abs() < 1e-12);
            }
            assert!(l.iter().all(|&v| v >= -1e-12));
        }
        assert!(m.locate(&[1.5, 0.0, 0.0]).is_none());
    }

    #[test]
    fn time_partition() {
        let p = TimePartition::uniform(1.0, 4).unwrap();
        assert_eq!(p.nodes, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p.slab_of(0.0), Some(0));
        assert_eq!(p.slab_of(0.25), Some(0));
        assert_eq!(p.slab_of(0.2500001), Some(1));
        assert_eq!(p.slab_of(1.0), Some(3));
        assert!(TimePartition::uniform(1.0, 0).is_err());
        let s = p.slab(2);
        assert_eq!((s.t0, s.t1), (0.5, 0.75));
    }
}
