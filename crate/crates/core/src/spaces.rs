//! Lagrange spaces on the spatial mesh, the temporal basis on a slab, and
//! the (optionally XFEM-enriched) space-time pressure space.

use std::collections::HashMap;

use crate::error::{invalid, Result};
use crate::geom::{self, CutDecomposition, DiscreteLevelSet, PrismClass, QuadOrder};
use crate::mesh::{SpaceTimeSlab, SpatialMesh};
use crate::Phase;

/// Continuous Lagrange nodes of degree 1 or 2 on a simplicial mesh.
/// Local node order: vertices, then edges `(0,1), (0,2), .., (d-1,d)`.
#[derive(Debug, Clone)]
pub struct NodeMap {
    pub degree: usize,
    pub dim: usize,
    pub num_nodes: usize,
    local: Vec<usize>,
    per_elem: usize,
    coords: Vec<[f64; 3]>,
    boundary: Vec<bool>,
}

impl NodeMap {
    pub fn new(mesh: &SpatialMesh, degree: usize) -> Result<Self> {
        if !(1..=2).contains(&degree) {
            return invalid(format!("Lagrange degree {degree} not supported (1 or 2)"));
        }
        let d = mesh.dim();
        let nv = mesh.num_vertices();
        let per_elem = local_count(d, degree);
        let mut coords: Vec<[f64; 3]> = (0..nv)
            .map(|v| {
                let mut p = [0.0; 3];
                p[..d].copy_from_slice(mesh.vertex(v));
                p
            })
            .collect();
        let mut local = Vec::with_capacity(per_elem * mesh.num_simplices());
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        for e in 0..mesh.num_simplices() {
            let s = mesh.simplex(e);
            local.extend_from_slice(s);
            if degree == 2 {
                for i in 0..=d {
                    for j in i + 1..=d {
                        let key = (s[i].min(s[j]), s[i].max(s[j]));
                        let next = coords.len();
                        let id = *edges.entry(key).or_insert(next);
                        if id == next {
                            let mut p = [0.0; 3];
                            for c in 0..d {
                                p[c] = 0.5 * (coords[key.0][c] + coords[key.1][c]);
                            }
                            coords.push(p);
                        }
                        local.push(id);
                    }
                }
            }
        }
        let boundary = coords.iter().map(|p| mesh.is_boundary_point(&p[..d])).collect();
        Ok(Self { degree, dim: d, num_nodes: coords.len(), local, per_elem, coords, boundary })
    }

    pub fn nodes_per_element(&self) -> usize {
        self.per_elem
    }

    pub fn element_nodes(&self, e: usize) -> &[usize] {
        &self.local[e * self.per_elem..(e + 1) * self.per_elem]
    }

    pub fn coord(&self, node: usize) -> &[f64] {
        &self.coords[node][..self.dim]
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary[node]
    }
}

pub fn local_count(d: usize, degree: usize) -> usize {
    match degree {
        1 => d + 1,
        _ => (d + 1) * (d + 2) / 2,
    }
}

/// Values and gradients of the local Lagrange basis at barycentric `lambda`.
/// `grad_lambda` are the barycentric gradients of the element.
pub fn lagrange_basis(d: usize, degree: usize, lambda: &[f64], grad_lambda: &[[f64; 3]; 4], val: &mut [f64], grad: &mut [[f64; 3]]) {
    match degree {
        1 => {
            for i in 0..=d {
                val[i] = lambda[i];
                grad[i] = grad_lambda[i];
            }
        }
        _ => {
            for i in 0..=d {
                val[i] = lambda[i] * (2.0 * lambda[i] - 1.0);
                let f = 4.0 * lambda[i] - 1.0;
                for c in 0..d {
                    grad[i][c] = f * grad_lambda[i][c];
                }
            }
            let mut k = d + 1;
            for i in 0..=d {
                for j in i + 1..=d {
                    val[k] = 4.0 * lambda[i] * lambda[j];
                    for c in 0..d {
                        grad[k][c] = 4.0 * (lambda[j] * grad_lambda[i][c] + lambda[i] * grad_lambda[j][c]);
                    }
                    k += 1;
                }
            }
        }
    }
}

/// Lagrange basis of degree `q` on right Radau points of `[0,1]`
/// (for `q = 1`: 1/3 and 1), so the last function is the trace at `t_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalBasis {
    pub q: usize,
    pub nodes: Vec<f64>,
}

impl TemporalBasis {
    pub fn new(q: usize) -> Self {
        let mut nodes = if q == 0 { Vec::new() } else { geom::quadrature::gauss_jacobi01(q, 1.0).0 };
        nodes.push(1.0);
        Self { q, nodes }
    }

    pub fn len(&self) -> usize {
        self.q + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, j: usize, tau: f64) -> f64 {
        let tj = self.nodes[j];
        self.nodes.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &tm)| (tau - tm) / (tj - tm)).product()
    }

    /// Derivative with respect to `tau`.
    pub fn derivative(&self, j: usize, tau: f64) -> f64 {
        let tj = self.nodes[j];
        let mut s = 0.0;
        for (m, &tm) in self.nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut p = 1.0 / (tj - tm);
            for (l, &tl) in self.nodes.iter().enumerate() {
                if l != j && l != m {
                    p *= (tau - tl) / (tj - tl);
                }
            }
            s += p;
        }
        s
    }
}

/// Space-time velocity dofs on one slab: `d` components of the P_r spatial
/// nodes times `q + 1` temporal modes. Index `(mode * d + comp) * nodes + node`.
#[derive(Debug, Clone)]
pub struct VelocitySpace {
    pub nodes: NodeMap,
    pub time: TemporalBasis,
}

impl VelocitySpace {
    pub fn new(mesh: &SpatialMesh, r: usize, q: usize) -> Result<Self> {
        Ok(Self { nodes: NodeMap::new(mesh, r)?, time: TemporalBasis::new(q) })
    }

    pub fn num_dofs(&self) -> usize {
        self.nodes.num_nodes * self.nodes.dim * self.time.len()
    }

    pub fn index(&self, node: usize, comp: usize, mode: usize) -> usize {
        (mode * self.nodes.dim + comp) * self.nodes.num_nodes + node
    }

    /// Dofs per temporal mode (one spatial field of all components).
    pub fn mode_size(&self) -> usize {
        self.nodes.num_nodes * self.nodes.dim
    }
}

/// A pressure basis "group": spatial P1 node restricted to one phase, or
/// unrestricted (`side == None`). Each group carries `q + 1` temporal modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PressureGroup {
    pub node: usize,
    pub side: Option<Phase>,
}

/// Pressure space on one slab: standard P1 x P_q, or its XFEM extension
/// where nodes whose support meets both phases carry one copy per phase.
#[derive(Debug, Clone)]
pub struct PressureSpace {
    pub nodes: NodeMap,
    pub time: TemporalBasis,
    pub groups: Vec<PressureGroup>,
    /// `node_group[node][phase]`: group active for `node` inside `phase`.
    pub node_group: Vec<[usize; 2]>,
    /// Per node: measures of its support inside each phase (XFEM only).
    pub support_measure: Vec<[f64; 2]>,
}

impl PressureSpace {
    pub fn standard(mesh: &SpatialMesh, q: usize) -> Result<Self> {
        let nodes = NodeMap::new(mesh, 1)?;
        let groups = (0..nodes.num_nodes).map(|node| PressureGroup { node, side: None }).collect();
        let node_group = (0..nodes.num_nodes).map(|n| [n, n]).collect();
        Ok(Self { support_measure: Vec::new(), nodes, time: TemporalBasis::new(q), groups, node_group })
    }

    /// XFEM space for one slab. A node is duplicated when its support
    /// intersects both phases with positive measure; with `theta > 0` the
    /// smaller side is dropped (merged back) if below `theta` times the support.
    pub fn xfem(
        mesh: &SpatialMesh,
        slab: &SpaceTimeSlab,
        classes: &[PrismClass],
        cuts: &HashMap<usize, CutDecomposition>,
        q: usize,
        theta: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&theta) {
            return invalid("small-cut threshold theta must lie in [0, 1)");
        }
        let nodes = NodeMap::new(mesh, 1)?;
        let mut meas = vec![[0.0f64; 2]; nodes.num_nodes];
        for e in 0..mesh.num_simplices() {
            let m = match classes[e] {
                PrismClass::Pos => [slab.prism_measure(mesh, e), 0.0],
                PrismClass::Neg => [0.0, slab.prism_measure(mesh, e)],
                PrismClass::Cut => {
                    let c = &cuts[&e];
                    [c.part_measure(Phase::Pos), c.part_measure(Phase::Neg)]
                }
            };
            for &v in mesh.simplex(e) {
                meas[v][0] += m[0];
                meas[v][1] += m[1];
            }
        }
        let mut groups = Vec::with_capacity(nodes.num_nodes);
        let mut node_group = Vec::with_capacity(nodes.num_nodes);
        for (node, m) in meas.iter().enumerate() {
            let total = m[0] + m[1];
            let both = m[0] > geom::SNAP * total && m[1] > geom::SNAP * total;
            let small = m[0].min(m[1]) < theta * total;
            if both && !small {
                let g = groups.len();
                groups.push(PressureGroup { node, side: Some(Phase::Pos) });
                groups.push(PressureGroup { node, side: Some(Phase::Neg) });
                node_group.push([g, g + 1]);
            } else {
                let g = groups.len();
                groups.push(PressureGroup { node, side: None });
                node_group.push([g, g]);
            }
        }
        Ok(Self { nodes, time: TemporalBasis::new(q), groups, node_group, support_measure: meas })
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn num_dofs(&self) -> usize {
        self.groups.len() * self.time.len()
    }

    pub fn index(&self, group: usize, mode: usize) -> usize {
        mode * self.groups.len() + group
    }

    pub fn num_enriched(&self) -> usize {
        self.groups.iter().filter(|g| g.side == Some(Phase::Neg)).count()
    }
}

/// Discrete level set, prism classes and cut decompositions of one slab.
#[derive(Debug, Clone)]
pub struct SlabGeometry {
    pub slab: SpaceTimeSlab,
    pub dls: DiscreteLevelSet,
    pub classes: Vec<PrismClass>,
    pub cuts: HashMap<usize, CutDecomposition>,
}

impl SlabGeometry {
    pub fn new(mesh: &SpatialMesh, slab: SpaceTimeSlab, ls: &dyn geom::LevelSetFunction) -> Result<Self> {
        let dls = DiscreteLevelSet::interpolate(mesh, &slab, ls)?;
        let classes: Vec<PrismClass> = (0..mesh.num_simplices()).map(|e| dls.classify(mesh, e)).collect();
        let mut cuts = HashMap::new();
        for (e, c) in classes.iter().enumerate() {
            if *c == PrismClass::Cut {
                cuts.insert(e, geom::decompose_prism(mesh, &slab, &dls, e)?);
            }
        }
        Ok(Self { slab, dls, classes, cuts })
    }

    pub fn num_cut(&self) -> usize {
        self.cuts.len()
    }

    /// Phase of a point of prism `e` by the discrete interface.
    pub fn phase_at(&self, mesh: &SpatialMesh, e: usize, lambda: &[f64], t: f64) -> Phase {
        match self.classes[e].phase() {
            Some(p) => p,
            None => Phase::of(self.dls.eval_linearized(mesh, e, lambda, (t - self.slab.t0) / self.slab.k())),
        }
    }

    pub fn quadrature(&self, mesh: &SpatialMesh, e: usize, phase: Phase, order: QuadOrder) -> Vec<geom::StPoint> {
        geom::prism_quadrature(mesh, &self.slab, e, self.classes[e], self.cuts.get(&e), phase, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::MovingSphere;
    use crate::mesh::{build_uniform_simplicial_mesh, BoxDomain, TimePartition};

    #[test]
    fn node_counts() {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 2).unwrap();
        assert_eq!(NodeMap::new(&m, 1).unwrap().num_nodes, 9);
        assert_eq!(NodeMap::new(&m, 2).unwrap().num_nodes, 25);
        let m3 = build_uniform_simplicial_mesh(&BoxDomain::new(&[0.0; 3], &[1.0; 3]).unwrap(), 2).unwrap();
        assert_eq!(NodeMap::new(&m3, 2).unwrap().num_nodes, 125);
        assert!(NodeMap::new(&m, 3).is_err());
    }

    #[test]
    fn lagrange_is_nodal_and_partitions_unity() {
        for d in [2usize, 3] {
            let dom = BoxDomain::new(&vec![0.0; d], &vec![1.0; d]).unwrap();
            let m = build_uniform_simplicial_mesh(&dom, 1).unwrap();
            for deg in [1, 2] {
                let nm = NodeMap::new(&m, deg).unwrap();
                let g = m.geometry(0);
                let nloc = nm.nodes_per_element();
                let (mut v, mut gr) = (vec![0.0; nloc], vec![[0.0; 3]; nloc]);
                for (a, &node) in nm.element_nodes(0).iter().enumerate() {
                    let l = g.barycentric(nm.coord(node));
                    lagrange_basis(d, deg, &l, &g.grad_lambda, &mut v, &mut gr);
                    for b in 0..nloc {
                        assert!((v[b] - if a == b { 1.0 } else { 0.0 }).abs() < 1e-13);
                    }
                }
                let l = [0.1, 0.2, 0.3, 0.4 - if d == 2 { 0.4 } else { 0.0 }];
                let l = if d == 2 { [0.2, 0.3, 0.5, 0.0] } else { l };
                lagrange_basis(d, deg, &l, &g.grad_lambda, &mut v, &mut gr);
                assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-14);
                for c in 0..d {
                    assert!(gr.iter().map(|g| g[c]).sum::<f64>().abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn temporal_basis() {
        let b = TemporalBasis::new(1);
        assert!((b.nodes[0] - 1.0 / 3.0).abs() < 1e-15 && b.nodes[1] == 1.0);
        assert!((b.value(0, 0.0) - 1.5).abs() < 1e-14);
        assert!((b.value(1, 0.0) + 0.5).abs() < 1e-14);
        for tau in [0.0, 0.2, 0.7, 1.0] {
            assert!((b.value(0, tau) + b.value(1, tau) - 1.0).abs() < 1e-14);
            assert!((b.derivative(0, tau) + 1.5).abs() < 1e-14);
        }
        let b2 = TemporalBasis::new(2);
        // right Radau points: (4 -+ sqrt 6)/10 and 1
        assert!((b2.nodes[0] - (4.0 - 6f64.sqrt()) / 10.0).abs() < 1e-14);
        assert!((b2.nodes[1] - (4.0 + 6f64.sqrt()) / 10.0).abs() < 1e-14);
        let h = 1e-6;
        for j in 0..3 {
            let fd = (b2.value(j, 0.4 + h) - b2.value(j, 0.4 - h)) / (2.0 * h);
            assert!((fd - b2.derivative(j, 0.4)).abs() < 1e-7);
        }
        assert_eq!(TemporalBasis::new(0).value(0, 0.3), 1.0);
    }

    fn disk_geometry(ns: usize) -> (SpatialMesh, SlabGeometry) {
        let m = build_uniform_simplicial_mesh(&BoxDomain::new(&[-1.0, -1.0], &[1.0, 1.0]).unwrap(), ns).unwrap();
        let ls = MovingSphere { center: vec![0.0, -0.25], velocity: vec![0.0, 0.5], radius_sq: 0.25, radius_sq_rate: 0.0 };
        let slab = TimePartition::uniform(1.0, 4).unwrap().slab(1);
        let g = SlabGeometry::new(&m, slab, &ls).unwrap();
        (m, g)
    }

    #[test]
    fn xfem_enriches_exactly_nodes_touching_cut_prisms() {
        let (m, g) = disk_geometry(4);
        let p = PressureSpace::xfem(&m, &g.slab, &g.classes, &g.cuts, 1, 0.0).unwrap();
        let std = PressureSpace::standard(&m, 1).unwrap();
        assert!(p.num_enriched() > 0);
        assert_eq!(p.num_groups(), std.num_groups() + p.num_enriched());
        for (node, gr) in p.node_group.iter().enumerate() {
            let m = p.support_measure[node];
            let split = gr[0] != gr[1];
            assert_eq!(split, m[0] > 0.0 && m[1] > 0.0, "node {node}: {m:?}");
        }
        // far-away node is unrestricted
        let (e, _) = m.locate(&[0.95, 0.95]).unwrap();
        let v = m.simplex(e)[0];
        assert_eq!(p.groups[p.node_group[v][0]].side, None);
    }

    #[test]
    fn small_cut_filter_never_removes_both_sides() {
        let (m, g) = disk_geometry(4);
        let base = PressureSpace::xfem(&m, &g.slab, &g.classes, &g.cuts, 1, 0.0).unwrap();
        let mut last = base.num_enriched();
        for theta in [0.01, 0.1, 0.3, 0.49, 0.9] {
            let p = PressureSpace::xfem(&m, &g.slab, &g.classes, &g.cuts, 1, theta).unwrap();
            assert!(p.num_enriched() <= last);
            last = p.num_enriched();
            for gr in &p.node_group {
                assert!(gr[0] < p.num_groups() && gr[1] < p.num_groups());
            }
        }
        assert_eq!(last, 0);
        assert!(PressureSpace::xfem(&m, &g.slab, &g.classes, &g.cuts, 1, 1.0).is_err());
    }
}
