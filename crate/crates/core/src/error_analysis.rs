//! Space-time error norms, orders of convergence and convergence tables.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cases::ExactSolution;
use crate::error::{Error, Result};
use crate::geom::{self, line_rule, simplex_rule, CutDecomposition, LevelSetFunction, StPoint};
use crate::mesh::{SpaceTimeSlab, SpatialMesh};
use crate::solver::{SideSelection, SpaceTimeSolution};
use crate::Phase;

/// Estimated order of convergence for a halving of the mesh parameter.
/// `None` unless both errors are positive and finite.
pub fn eoc(e_coarse: f64, e_fine: f64) -> Option<f64> {
    (e_coarse > 0.0 && e_fine > 0.0 && e_coarse.is_finite() && e_fine.is_finite()).then(|| (e_coarse / e_fine).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorOptions {
    /// Exactness in space / time of the tensor rule on prisms away from the interface.
    pub space_degree: usize,
    pub time_degree: usize,
    /// Total degree on the pieces of prisms near the analytic interface;
    /// the manufactured fields are of high polynomial degree there.
    pub cut_degree: usize,
    /// Longest-edge bisections of the space-time simplices near the interface.
    pub refine_depth: usize,
    pub side: SideSelection,
}

impl Default for ErrorOptions {
    fn default() -> Self {
        Self { space_degree: 6, time_degree: 5, cut_degree: 8, refine_depth: 4, side: SideSelection::Analytic }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    /// `||grad(u - u_h)||` over the space-time domain.
    pub velocity_l2h1: f64,
    pub velocity_l2l2: f64,
    /// `||p - p_h||` with the spatial mean of the difference removed at every time.
    pub pressure_l2l2: f64,
}

/// A quadrature point with its phase by the analytic level set.
#[derive(Debug, Clone, Copy)]
pub struct PhasePoint {
    pub p: StPoint,
    pub phase: Phase,
}

fn sign_phase(v: f64) -> Phase {
    Phase::of(v)
}

fn st_diam_sq(n: usize, verts: &[[f64; 4]]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            m = m.max((0..n).map(|c| (verts[i][c] - verts[j][c]).powi(2)).sum());
        }
    }
    m
}

fn phi_at(ls: &dyn LevelSetFunction, n: usize, p: &[f64; 4]) -> f64 {
    ls.value(&p[..n - 1], p[n - 1])
}

/// Recursive longest-edge bisection of a space-time simplex against the
/// analytic level set; leaves are cut by the linear interpolant of `phi`.
fn refine_simplex(
    ls: &dyn LevelSetFunction,
    n: usize,
    verts: Vec<[f64; 4]>,
    vals: Vec<f64>,
    depth: usize,
    curv: f64,
    degree: usize,
    out: &mut Vec<PhasePoint>,
) {
    let pos = vals.iter().any(|&v| v > 0.0);
    let neg = vals.iter().any(|&v| v < 0.0);
    let diam2 = st_diam_sq(n, &verts);
    let near = (pos && neg) || vals.iter().any(|v| v.abs() <= curv * diam2);
    if depth > 0 && near {
        let (mut bi, mut bj, mut bl) = (0, 1, -1.0);
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                let l: f64 = (0..n).map(|c| (verts[i][c] - verts[j][c]).powi(2)).sum();
                if l > bl {
                    (bi, bj, bl) = (i, j, l);
                }
            }
        }
        let mut m = [0.0; 4];
        for c in 0..n {
            m[c] = 0.5 * (verts[bi][c] + verts[bj][c]);
        }
        let vm = phi_at(ls, n, &m);
        for drop in [bi, bj] {
            let mut v = verts.clone();
            let mut f = vals.clone();
            v[drop] = m;
            f[drop] = vm;
            refine_simplex(ls, n, v, f, depth - 1, curv, degree, out);
        }
        return;
    }
    let mut pts = Vec::new();
    if pos && neg {
        let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let snapped: Vec<f64> = vals.iter().map(|&v| if v.abs() <= geom::SNAP * scale { 0.0 } else { v }).collect();
        let mut cut = CutDecomposition { n, ..Default::default() };
        geom::cut_simplex(n, &verts, &snapped, &mut cut);
        for ph in Phase::BOTH {
            for s in &cut.parts[ph as usize] {
                pts.clear();
                geom::spacetime_simplex_points(n, s, degree, &mut pts);
                out.extend(pts.iter().map(|&p| PhasePoint { p, phase: ph }));
            }
        }
    } else {
        geom::spacetime_simplex_points(n, &verts, degree, &mut pts);
        // a leaf without a sign change may still graze the interface
        for &p in &pts {
            let phase = if near { sign_phase(ls.value(&p.x[..n - 1], p.t)) } else if neg { Phase::Neg } else { Phase::Pos };
            out.push(PhasePoint { p, phase });
        }
    }
}

/// Quadrature points of the prism over `e` tagged with the analytic phase.
pub fn error_points(mesh: &SpatialMesh, slab: &SpaceTimeSlab, e: usize, ls: &dyn LevelSetFunction, opts: &ErrorOptions) -> Vec<PhasePoint> {
    let d = mesh.dim();
    let g = mesh.geometry(e);
    let s = mesh.simplex(e);
    let mut vals = Vec::with_capacity(2 * (d + 1));
    for &v in s {
        vals.push(ls.value(mesh.vertex(v), slab.t0));
        vals.push(ls.value(mesh.vertex(v), slab.t1));
    }
    let mut centre = [0.0; 3];
    for &v in s {
        for c in 0..d {
            centre[c] += mesh.vertex(v)[c] / (d + 1) as f64;
        }
    }
    let tm = 0.5 * (slab.t0 + slab.t1);
    let h = ls.hessian(&centre[..d], tm);
    let hn: f64 = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| h[i][j] * h[i][j]).sum::<f64>().sqrt();
    // generous bound on the second derivatives in (x, t)
    let curv = hn + 2.0;
    let mut diam2 = slab.k() * slab.k();
    for i in 0..=d {
        for j in i + 1..=d {
            diam2 = diam2.max(
                slab.k() * slab.k() + (0..d).map(|c| (mesh.vertex(s[i])[c] - mesh.vertex(s[j])[c]).powi(2)).sum::<f64>(),
            );
        }
    }
    let pos = vals.iter().any(|&v| v > 0.0);
    let neg = vals.iter().any(|&v| v < 0.0);
    let near = (pos && neg) || vals.iter().any(|v| v.abs() <= curv * diam2);
    let mut out = Vec::new();
    if !near {
        let phase = if neg { Phase::Neg } else { Phase::Pos };
        let rule = simplex_rule(d, opts.space_degree);
        let lr = line_rule(opts.time_degree);
        let scale = g.volume * crate::small::factorial(d) * slab.k();
        for (tq, tw) in lr.0.iter().zip(&lr.1) {
            let t = slab.t0 + tq * slab.k();
            for (q, w) in rule.points.iter().zip(&rule.weights) {
                let mut lam = [0.0; 4];
                lam[1..=d].copy_from_slice(&q[..d]);
                lam[0] = 1.0 - q[..d].iter().sum::<f64>();
                out.push(PhasePoint { p: StPoint { x: g.point(&lam), t, w: w * tw * scale }, phase });
            }
        }
        return out;
    }
    let n = d + 1;
    for simplex in geom::staircase(mesh, slab, e) {
        let verts: Vec<[f64; 4]> = simplex.iter().map(|v| v.0).collect();
        let vals: Vec<f64> = verts.iter().map(|p| phi_at(ls, n, p)).collect();
        refine_simplex(ls, n, verts, vals, opts.refine_depth, curv, opts.cut_degree, &mut out);
    }
    out
}

/// Legendre polynomial `P_m(2 tau - 1)`, `m <= 3`.
fn legendre01(m: usize, tau: f64) -> f64 {
    let s = 2.0 * tau - 1.0;
    match m {
        0 => 1.0,
        1 => s,
        2 => 0.5 * (3.0 * s * s - 1.0),
        _ => 0.5 * (5.0 * s * s * s - 3.0 * s),
    }
}

const MEAN_MODES: usize = 4;

/// Velocity and pressure errors of `sol` against `exact`.
pub fn compute_errors(sol: &SpaceTimeSolution, exact: &ExactSolution, ls: &dyn LevelSetFunction, opts: &ErrorOptions) -> ErrorNorms {
    let mesh = &*sol.mesh;
    let d = mesh.dim();
    let vol = mesh.domain().volume();
    let (mut gsum, mut usum, mut psum) = (0.0, 0.0, 0.0);
    for (n, s) in sol.slabs.iter().enumerate() {
        let slab = s.slab();
        let k = slab.k();
        let parts: Vec<[f64; 3 + MEAN_MODES]> = (0..mesh.num_simplices())
            .into_par_iter()
            .with_min_len(32)
            .map(|e| {
                let g = mesh.geometry(e);
                let mut acc = [0.0; 3 + MEAN_MODES];
                for pp in error_points(mesh, &slab, e, ls, opts) {
                    let PhasePoint { p, phase } = pp;
                    let x = &p.x[..d];
                    let lam = g.barycentric(x);
                    let (uh, guh) = sol.velocity_with(n, e, &g, &lam, p.t);
                    let u = (exact.velocity)(phase, x, p.t);
                    let gu = (exact.velocity_gradient)(phase, x, p.t);
                    let mut eg = 0.0;
                    let mut eu = 0.0;
                    for i in 0..d {
                        eu += (u[i] - uh[i]).powi(2);
                        for j in 0..d {
                            eg += (gu[i][j] - guh[i][j]).powi(2);
                        }
                    }
                    let side = match opts.side {
                        SideSelection::Analytic => phase,
                        SideSelection::Discrete => s.geometry.phase_at(mesh, e, &lam, p.t),
                    };
                    let ep = (exact.pressure)(phase, x, p.t) - sol.pressure_in(n, e, &lam, p.t, side);
                    acc[0] += p.w * eg;
                    acc[1] += p.w * eu;
                    acc[2] += p.w * ep * ep;
                    let tau = (p.t - slab.t0) / k;
                    for m in 0..MEAN_MODES {
                        acc[3 + m] += p.w * ep * legendre01(m, tau);
                    }
                }
                acc
            })
            .collect();
        let mut tot = [0.0; 3 + MEAN_MODES];
        for a in &parts {
            for (t, v) in tot.iter_mut().zip(a) {
                *t += v;
            }
        }
        gsum += tot[0];
        usum += tot[1];
        // remove the best approximation of the spatial mean by a cubic in time
        let mut p2 = tot[2];
        for m in 0..MEAN_MODES {
            let norm = vol * k / (2 * m + 1) as f64;
            p2 -= tot[3 + m] * tot[3 + m] / norm;
        }
        psum += p2.max(0.0);
    }
    ErrorNorms { velocity_l2h1: gsum.sqrt(), velocity_l2l2: usum.sqrt(), pressure_l2l2: psum.sqrt() }
}

/// `||u - u_h||_{L2 x H1}`.
pub fn error_l2h1(sol: &SpaceTimeSolution, exact: &ExactSolution, ls: &dyn LevelSetFunction, opts: &ErrorOptions) -> f64 {
    compute_errors(sol, exact, ls, opts).velocity_l2h1
}

/// `||p - p_h||_{L2 x L2}` modulo the spatial mean.
pub fn error_l2l2_pressure(sol: &SpaceTimeSolution, exact: &ExactSolution, ls: &dyn LevelSetFunction, opts: &ErrorOptions) -> f64 {
    compute_errors(sol, exact, ls, opts).pressure_l2l2
}

/// Errors indexed by spatial (`N_S`, rows) and temporal (`N`, columns) resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTable {
    pub title: String,
    pub ns: Vec<usize>,
    pub n: Vec<usize>,
    /// `values[row][col]`, `None` where the grid point was not run.
    pub values: Vec<Vec<Option<f64>>>,
}

fn fmt_value(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:.5e}")
    } else {
        format!("{v:.5}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_value).unwrap_or_default()
}

impl ErrorTable {
    pub fn new(title: impl Into<String>, ns: Vec<usize>, n: Vec<usize>) -> Self {
        let values = vec![vec![None; n.len()]; ns.len()];
        Self { title: title.into(), ns, n, values }
    }

    pub fn set(&mut self, ns: usize, n: usize, v: f64) {
        if let (Some(i), Some(j)) = (self.ns.iter().position(|&a| a == ns), self.n.iter().position(|&a| a == n)) {
            self.values[i][j] = Some(v);
        }
    }

    pub fn get(&self, ns: usize, n: usize) -> Option<f64> {
        let i = self.ns.iter().position(|&a| a == ns)?;
        let j = self.n.iter().position(|&a| a == n)?;
        self.values[i][j]
    }

    /// Spatial orders from the last column; entry `i` pairs rows `i - 1` and `i`.
    pub fn eoc_s(&self) -> Vec<Option<f64>> {
        let Some(last) = self.n.len().checked_sub(1) else { return Vec::new() };
        (0..self.ns.len())
            .map(|i| if i == 0 { None } else { eoc(self.values[i - 1][last]?, self.values[i][last]?) })
            .collect()
    }

    /// Temporal orders from the last row.
    pub fn eoc_t(&self) -> Vec<Option<f64>> {
        let Some(last) = self.ns.len().checked_sub(1) else { return Vec::new() };
        (0..self.n.len())
            .map(|j| if j == 0 { None } else { eoc(self.values[last][j - 1]?, self.values[last][j]?) })
            .collect()
    }

    /// Orders along the diagonal `(N_S, N) = (a, a)`; entry `i` pairs `ns[i-1]` and `ns[i]`.
    pub fn eoc_diagonal(&self) -> Vec<Option<f64>> {
        (0..self.ns.len())
            .map(|i| {
                if i == 0 {
                    return None;
                }
                eoc(self.get(self.ns[i - 1], self.ns[i - 1])?, self.get(self.ns[i], self.ns[i])?)
            })
            .collect()
    }

    /// CSV: header `NS,<N...>,EOC_S`, one row per `N_S`, final `EOC_T` row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("NS");
        for n in &self.n {
            let _ = write!(s, ",{n}");
        }
        s.push_str(",EOC_S\n");
        let es = self.eoc_s();
        for (i, ns) in self.ns.iter().enumerate() {
            let _ = write!(s, "{ns}");
            for v in &self.values[i] {
                let _ = write!(s, ",{}", fmt_opt(*v));
            }
            let _ = writeln!(s, ",{}", fmt_opt(es[i]));
        }
        s.push_str("EOC_T");
        for v in self.eoc_t() {
            let _ = write!(s, ",{}", fmt_opt(v));
        }
        s.push_str(",\n");
        s
    }

    /// Inverse of [`Self::to_csv`] (values at printed precision).
    pub fn from_csv(title: &str, text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Config(format!("error table csv: {m}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split(',').collect();
        if head.len() < 2 || head[0] != "NS" || head[head.len() - 1] != "EOC_S" {
            return Err(bad("bad header"));
        }
        let n: Vec<usize> = head[1..head.len() - 1].iter().map(|v| v.parse().map_err(|_| bad("bad N"))).collect::<Result<_>>()?;
        let mut ns = Vec::new();
        let mut values = Vec::new();
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells[0] == "EOC_T" {
                break;
            }
            if cells.len() != n.len() + 2 {
                return Err(bad("ragged row"));
            }
            ns.push(cells[0].parse().map_err(|_| bad("bad N_S"))?);
            let row = cells[1..=n.len()]
                .iter()
                .map(|c| if c.is_empty() { Ok(None) } else { c.parse::<f64>().map(Some).map_err(|_| bad("bad value")) })
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        Ok(Self { title: title.to_string(), ns, n, values })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("**{}**\n\n| N_S\\N |", self.title);
        for n in &self.n {
            let _ = write!(s, " {n} |");
        }
        s.push_str(" EOC_S |\n|---|");
        for _ in 0..=self.n.len() {
            s.push_str("---|");
        }
        s.push('\n');
        let es = self.eoc_s();
        for (i, ns) in self.ns.iter().enumerate() {
            let _ = write!(s, "| {ns} |");
            for v in &self.values[i] {
                let _ = write!(s, " {} |", fmt_opt(*v));
            }
            let _ = writeln!(s, " {} |", fmt_opt(es[i]));
        }
        s.push_str("| EOC_T |");
        for v in self.eoc_t() {
            let _ = write!(s, " {} |", fmt_opt(v));
        }
        s.push_str("  |\n");
        s
    }

    /// Fixed-width text rendering.
    pub fn to_text(&self) -> String {
        let w = 12;
        let mut s = format!("{}\n{:>7}", self.title, "N_S\\N");
        for n in &self.n {
            let _ = write!(s, "{n:>w$}");
        }
        let _ = writeln!(s, "{:>w$}", "EOC_S");
        let es = self.eoc_s();
        for (i, ns) in self.ns.iter().enumerate() {
            let _ = write!(s, "{ns:>7}");
            for v in &self.values[i] {
                let _ = write!(s, "{:>w$}", fmt_opt(*v));
            }
            let _ = writeln!(s, "{:>w$}", fmt_opt(es[i]));
        }
        let _ = write!(s, "{:>7}", "EOC_T");
        for v in self.eoc_t() {
            let _ = write!(s, "{:>w$}", fmt_opt(v));
        }
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Velocity errors with the enriched pressure space, as printed.
    fn printed_table() -> ErrorTable {
        let rows = [
            [0.29649, 0.20900, 0.19753, 0.19552, 0.19510, 0.19507],
            [0.18572, 0.06802, 0.04699, 0.04390, 0.04332, 0.04318],
            [0.17339, 0.04718, 0.01736, 0.01154, 0.01064, 0.01047],
            [0.17604, 0.04423, 0.01326, 0.00525, 0.00306, 0.00267],
        ];
        let mut t = ErrorTable::new("velocity", vec![4, 8, 16, 32], vec![4, 8, 16, 32, 64, 128]);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                t.set(t.ns[i], t.n[j], *v);
            }
        }
        t
    }

    #[test]
    fn eoc_arithmetic() {
        assert!((eoc(0.24844, 0.12573).unwrap() - 0.98264).abs() < 1e-4);
        let e = eoc(0.04318, 0.01047).unwrap();
        assert!((2.03..=2.06).contains(&e), "{e}");
        assert_eq!(eoc(0.3, 0.3), Some(0.0));
        assert!((eoc(4.0 * 0.7, 0.7).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(eoc(0.0, 1.0), None);
        assert_eq!(eoc(1.0, -1.0), None);
        assert_eq!(eoc(f64::NAN, 1.0), None);
    }

    #[test]
    fn printed_orders_recomputed() {
        let t = printed_table();
        let es: Vec<f64> = t.eoc_s().into_iter().flatten().collect();
        for (got, want) in es.iter().zip([2.17546, 2.04410, 1.97412]) {
            assert!((got - want).abs() < 0.01, "{got} vs {want}");
        }
        let et: Vec<f64> = t.eoc_t().into_iter().flatten().collect();
        for (got, want) in et.iter().zip([1.99289, 1.73737, 1.33761, 0.77615, 0.20161]) {
            assert!((got - want).abs() < 0.01, "{got} vs {want}");
        }
    }

    #[test]
    fn csv_round_trip_and_layout() {
        let mut t = ErrorTable::new("p", vec![2, 4], vec![1, 2]);
        t.set(2, 1, 0.5);
        t.set(2, 2, 0.25);
        t.set(4, 1, 0.125);
        t.set(4, 2, 3.0e-6);
        let csv = t.to_csv();
        assert!(csv.starts_with("NS,1,2,EOC_S\n"));
        assert!(csv.trim_end().lines().last().unwrap().starts_with("EOC_T,"));
        let back = ErrorTable::from_csv("p", &csv).unwrap();
        assert_eq!(back.ns, t.ns);
        assert_eq!(back.n, t.n);
        for (a, b) in back.values.iter().flatten().zip(t.values.iter().flatten()) {
            let (a, b) = (a.unwrap(), b.unwrap());
            // 5 decimals, or 5 significant digits below 1e-4
            assert!((a - b).abs() <= 5e-6 * b.abs().max(1e-300).min(1.0));
        }
        assert!(t.to_text().contains("N_S\\N"));
        assert!(t.to_markdown().contains("| N_S\\N |"));
        assert!(t.to_text().trim_end().lines().last().unwrap().trim_start().starts_with("EOC_T"));
        assert!(ErrorTable::from_csv("p", "N,1\n").is_err());
    }

    #[test]
    fn missing_entries_leave_blank_orders() {
        let mut t = ErrorTable::new("v", vec![4, 8], vec![4]);
        t.set(8, 4, 0.1);
        assert_eq!(t.eoc_s(), vec![None, None]);
        assert!(t.to_csv().contains("4,,"));
    }
}
