//! Quadrature checks of the partial integration identity, the trace
//! ratio and the Garding-type bound on `int a(u, u_dot)`.

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::galerkin::composite_points;
use super::piola::{CellularFlow, Flow2d, Mat2, Vec2};
use super::stgrid::StGrid1d;
use crate::geom::quadrature::gauss_legendre01;

/// Tensor Gauss points on `(a,b)` split into `cells` pieces.
fn line_points(a: f64, b: f64, cells: usize, npts: usize) -> Vec<(f64, f64)> {
    composite_points(cells, npts).into_iter().map(|(x, w)| (a + (b - a) * x, (b - a) * w)).collect()
}

/// `rho = 1`, `w = 0`, `u = t sin(pi x)` on `(0,1)x(0,T)`: both sides of
/// `|u(T)|^2 - |u(0)|^2 = 2 (u_t, u)`; returns the absolute residual.
pub fn partint_static(t_final: f64) -> f64 {
    let xs = line_points(0.0, 1.0, 4, 8);
    let ts = line_points(0.0, t_final, 2, 8);
    let u = |x: f64, t: f64| t * (PI * x).sin();
    let lhs: f64 = xs.iter().map(|&(x, w)| w * u(x, t_final).powi(2)).sum();
    let rhs: f64 = 2.0 * ts.iter().map(|&(t, wt)| xs.iter().map(|&(x, w)| wt * w * (PI * x).sin() * u(x, t)).sum::<f64>()).sum::<f64>();
    (lhs - rhs).abs()
}

/// Rigid rotation of the unit disk with `rho = 1`: `w . n = 0` on the
/// boundary, so `|u(te)|^2 - |u(t0)|^2 = 2 (u_dot, u)` on `(t0,te)`.
pub fn partint_rotation(t0: f64, te: f64) -> (f64, f64) {
    let u = |x: f64, y: f64, t: f64| [x * x + t * y, (t * x).sin() * y + 1.0];
    let ut = |x: f64, y: f64, t: f64| [y, x * (t * x).cos() * y];
    let grad = |x: f64, y: f64, t: f64| [[2.0 * x, t], [t * (t * x).cos() * y, (t * x).sin()]];
    let (rs, rw) = gauss_legendre01(16);
    let nth = 96;
    let ts = line_points(t0, te, 2, 10);
    let mut space = Vec::new();
    for (r, w) in rs.iter().zip(&rw) {
        for k in 0..nth {
            let th = 2.0 * PI * k as f64 / nth as f64;
            space.push((r * th.cos(), r * th.sin(), w * r * 2.0 * PI / nth as f64));
        }
    }
    let norm2 = |t: f64| space.iter().map(|&(x, y, w)| w * { let v = u(x, y, t); v[0] * v[0] + v[1] * v[1] }).sum::<f64>();
    let lhs = norm2(te) - norm2(t0);
    let mut rhs = 0.0;
    for &(t, wt) in &ts {
        for &(x, y, w) in &space {
            let (v, d, g) = (u(x, y, t), ut(x, y, t), grad(x, y, t));
            let wv = [-y, x];
            let mat = [d[0] + g[0][0] * wv[0] + g[0][1] * wv[1], d[1] + g[1][0] * wv[0] + g[1][1] * wv[1]];
            rhs += 2.0 * wt * w * (mat[0] * v[0] + mat[1] * v[1]);
        }
    }
    ((lhs - rhs).abs(), lhs.abs())
}

/// Two-phase `rho` across `x = x0 + c t` transported by `w = c` in 1D,
/// `u = sin(pi x)(1 + t + x t^2)`. `aligned` integrates exactly along the
/// interface; otherwise composite Gauss on an `n x n` grid ignores it.
pub fn partint_two_phase(n: usize, aligned: bool) -> f64 {
    let (rho, x0, c, te) = ([1.0, 4.0], 0.3, 0.4, 1.0);
    let grid = StGrid1d { nx: n, nt: n, t_final: te, x0, speed: c };
    let u = |x: f64, t: f64| (PI * x).sin() * (1.0 + t + x * t * t);
    let mat = |x: f64, t: f64| {
        let ut = (PI * x).sin() * (1.0 + 2.0 * x * t);
        let ux = PI * (PI * x).cos() * (1.0 + t + x * t * t) + (PI * x).sin() * t * t;
        ut + c * ux
    };
    let rho_at = |x: f64, t: f64| rho[grid.phase(x, t) as usize];
    let rhs: f64 = if aligned {
        grid.points(8).iter().map(|q| 2.0 * q.w * rho[q.phase as usize] * mat(q.x, q.t) * u(q.x, q.t)).sum()
    } else {
        let xs = line_points(0.0, 1.0, n, 3);
        let ts = line_points(0.0, te, n, 3);
        ts.iter().map(|&(t, wt)| xs.iter().map(|&(x, w)| 2.0 * wt * w * rho_at(x, t) * mat(x, t) * u(x, t)).sum::<f64>()).sum()
    };
    let lhs_at = |t: f64| -> f64 {
        let s = x0 + c * t;
        if aligned {
            line_points(0.0, s, 2, 8).iter().map(|&(x, w)| w * rho[1] * u(x, t).powi(2)).sum::<f64>()
                + line_points(s, 1.0, 2, 8).iter().map(|&(x, w)| w * rho[0] * u(x, t).powi(2)).sum::<f64>()
        } else {
            line_points(0.0, 1.0, n, 3).iter().map(|&(x, w)| w * rho_at(x, t) * u(x, t).powi(2)).sum()
        }
    };
    (lhs_at(te) - lhs_at(0.0) - rhs).abs()
}

/// Smooth 1D family member `u = sum_k a_k(t) sin(k pi x)`, `a_k` quadratic.
#[derive(Debug, Clone)]
pub struct SineField {
    pub coef: Vec<[f64; 3]>,
}

impl SineField {
    pub fn random<R: Rng>(rng: &mut R, modes: usize) -> Self {
        SineField { coef: (0..modes).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect() }
    }

    pub fn scaled(&self, s: f64) -> Self {
        SineField { coef: self.coef.iter().map(|c| [s * c[0], s * c[1], s * c[2]]).collect() }
    }

    /// `(u, u_t, u_x)`
    pub fn eval(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let mut out = (0.0, 0.0, 0.0);
        for (k, c) in self.coef.iter().enumerate() {
            let kp = (k + 1) as f64 * PI;
            let (s, co) = ((kp * x).sin(), (kp * x).cos());
            let a = c[0] + c[1] * t + c[2] * t * t;
            out.0 += a * s;
            out.1 += (c[1] + 2.0 * c[2] * t) * s;
            out.2 += a * kp * co;
        }
        out
    }
}

/// Dual norm squared `l^T G^{-1} l` for the test space of `grid`, using
/// the Kronecker structure `G = M_t (x) K_x` (block diagonal `M_t`).
pub fn dual_norm_sq(grid: &StGrid1d, l: &[f64]) -> f64 {
    let ns = grid.nsp();
    let h = grid.hx();
    // tridiagonal K_x = (1/h) tridiag(-1, 2, -1): Thomas algorithm per column
    let solve_k = |b: &mut [f64]| {
        let n = b.len();
        let (a, d) = (-1.0 / h, 2.0 / h);
        let mut c = vec![0.0; n];
        c[0] = a / d;
        b[0] /= d;
        for i in 1..n {
            let m = d - a * c[i - 1];
            c[i] = a / m;
            b[i] = (b[i] - a * b[i - 1]) / m;
        }
        for i in (0..n - 1).rev() {
            b[i] -= c[i] * b[i + 1];
        }
    };
    let ht = grid.ht();
    let mt_inv = Matrix2::new(2.0, 1.0, 1.0, 2.0).scale(ht / 6.0).try_inverse().expect("2x2 mass");
    let mut total = 0.0;
    for k in 0..grid.nt {
        let mut c0: Vec<f64> = l[(2 * k) * ns..(2 * k + 1) * ns].to_vec();
        let mut c1: Vec<f64> = l[(2 * k + 1) * ns..(2 * k + 2) * ns].to_vec();
        let (r0, r1) = (c0.clone(), c1.clone());
        solve_k(&mut c0);
        solve_k(&mut c1);
        for i in 0..ns {
            let y0 = mt_inv[(0, 0)] * c0[i] + mt_inv[(0, 1)] * c1[i];
            let y1 = mt_inv[(1, 0)] * c0[i] + mt_inv[(1, 1)] * c1[i];
            total += r0[i] * y0 + r1[i] * y1;
        }
    }
    total
}

/// Trace ratio `sup_t |u(t)| / (|u|_X^2 + |rho u_dot|_{X_h'}^2)^{1/2}` for
/// the two-phase translating model on `grid`.
pub fn trace_ratio(grid: &StGrid1d, rho: [f64; 2], u: &SineField) -> f64 {
    let ns = grid.nsp();
    let mut l = vec![0.0; 2 * grid.nt * ns];
    let mut xnorm = 0.0;
    let (mut sx, mut tv) = (Vec::new(), Vec::new());
    for q in grid.points(10) {
        let (_, ut, ux) = u.eval(q.x, q.t);
        xnorm += q.w * ux * ux;
        let f = rho[q.phase as usize] * (ut + grid.speed * ux);
        grid.space_shapes(&q, &mut sx);
        grid.test_time_shapes(&q, &mut tv);
        for &(ti, tval, _) in &tv {
            for &(xi, xval, _) in &sx {
                l[ti * ns + xi] += q.w * f * tval * xval;
            }
        }
    }
    let dual = dual_norm_sq(grid, &l);
    let xs = composite_points(16, 6);
    let sup = (0..=400)
        .map(|k| {
            let t = grid.t_final * k as f64 / 400.0;
            xs.iter().map(|&(x, w)| w * u.eval(x, t).0.powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    sup / (xnorm + dual).sqrt()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStudy {
    pub coarse: (usize, usize),
    pub max_ratio_coarse: f64,
    pub max_ratio_fine: f64,
    pub relative_change: f64,
    pub homogeneity_defect: f64,
    pub all_finite: bool,
}

pub fn trace_ratio_study<R: Rng>(rng: &mut R, members: usize, nx: usize, nt: usize) -> TraceStudy {
    let (rho, x0, speed) = ([1.0, 5.0], 0.35, 0.3);
    let coarse = StGrid1d { nx, nt, t_final: 1.0, x0, speed };
    let fine = StGrid1d { nx: 2 * nx, nt: 2 * nt, ..coarse };
    let fields: Vec<SineField> = (0..members).map(|_| SineField::random(rng, 3)).collect();
    let rc: Vec<f64> = fields.iter().map(|u| trace_ratio(&coarse, rho, u)).collect();
    let rf: Vec<f64> = fields.iter().map(|u| trace_ratio(&fine, rho, u)).collect();
    let mc = rc.iter().cloned().fold(0.0, f64::max);
    let mf = rf.iter().cloned().fold(0.0, f64::max);
    let hom = (trace_ratio(&coarse, rho, &fields[0].scaled(2.0)) - rc[0]).abs() / rc[0];
    TraceStudy {
        coarse: (nx, nt),
        max_ratio_coarse: mc,
        max_ratio_fine: mf,
        relative_change: (mf - mc).abs() / mc,
        homogeneity_defect: hom,
        all_finite: rc.iter().chain(&rf).all(|r| r.is_finite()),
    }
}

/// Member of the Garding family: `u = t (1 - t) (c0 sin(a pi x) sin(b pi y),
/// c1 sin(c pi x) sin(d pi y))`, zero on the boundary and at `t = 0, 1`.
#[derive(Debug, Clone, Copy)]
pub struct ModeField {
    pub c: [f64; 2],
    pub k: [[f64; 2]; 2],
}

impl ModeField {
    pub fn random<R: Rng>(rng: &mut R, kmax: usize) -> Self {
        let mut k = || rng.gen_range(1..=kmax) as f64;
        let k = [[k(), k()], [k(), k()]];
        ModeField { c: [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], k }
    }

    fn value(&self, x: Vec2, t: f64) -> Vec2 {
        let g = t * (1.0 - t);
        Vec2::new(
            g * self.c[0] * (self.k[0][0] * PI * x[0]).sin() * (self.k[0][1] * PI * x[1]).sin(),
            g * self.c[1] * (self.k[1][0] * PI * x[0]).sin() * (self.k[1][1] * PI * x[1]).sin(),
        )
    }

    fn grad(&self, x: Vec2, t: f64) -> Mat2 {
        let g = t * (1.0 - t);
        let row = |i: usize| {
            let (a, b) = (self.k[i][0] * PI, self.k[i][1] * PI);
            [g * self.c[i] * a * (a * x[0]).cos() * (b * x[1]).sin(), g * self.c[i] * b * (a * x[0]).sin() * (b * x[1]).cos()]
        };
        let (r0, r1) = (row(0), row(1));
        Mat2::new(r0[0], r0[1], r1[0], r1[1])
    }

    fn material(&self, flow: &dyn Flow2d, x: Vec2, t: f64) -> Vec2 {
        let g = t * (1.0 - t);
        let dg = 1.0 - 2.0 * t;
        self.value(x, t) * (dg / g) + self.grad(x, t) * flow.w(x, t)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GardingCheck {
    pub members: usize,
    /// `max(0, -min_u int a(u,u_dot) / |u|_X^2)` at two quadrature levels
    pub m_coarse: f64,
    pub m_fine: f64,
    /// `4 mu_max sup |grad w|_2`
    pub m_bound: f64,
}

/// Garding-type check of `int a(t; u, u_dot) >= -M |u|_X^2` for
/// `a = int mu D(u):D(v)`, `D = grad + grad^T`, steady cellular flow and
/// `mu` constant along streamlines.
pub fn garding_check<R: Rng>(rng: &mut R, members: usize, kmax: usize, cells: usize) -> GardingCheck {
    let flow = CellularFlow { amp: 1.0, growth: 0.0 };
    let mu = |x: Vec2| 1.0 + 2.0 * PI * flow.stream(x, 0.0);
    let fields: Vec<ModeField> = (0..members).map(|_| ModeField::random(rng, kmax)).collect();
    let level = |cells: usize| -> f64 {
        let xs = composite_points(cells, 4);
        let ts = composite_points(2, 5);
        let h = 1e-5;
        let mut worst = f64::INFINITY;
        for u in &fields {
            let (mut a, mut xn) = (0.0, 0.0);
            for &(t, wt) in &ts {
                for &(x, wx) in &xs {
                    for &(y, wy) in &xs {
                        let p = Vec2::new(x, y);
                        let w = wt * wx * wy;
                        let g = u.grad(p, t);
                        let mut gd = Mat2::zeros();
                        for j in 0..2 {
                            let mut e = Vec2::zeros();
                            e[j] = h;
                            let d = (u.material(&flow, p + e, t) - u.material(&flow, p - e, t)) / (2.0 * h);
                            gd.set_column(j, &d);
                        }
                        let (du, dd) = (g + g.transpose(), gd + gd.transpose());
                        a += w * mu(p) * du.component_mul(&dd).sum();
                        xn += w * g.norm_squared();
                    }
                }
            }
            worst = worst.min(a / xn);
        }
        (-worst).max(0.0)
    };
    let mut gmax: f64 = 0.0;
    for i in 0..=40 {
        for j in 0..=40 {
            let p = Vec2::new(i as f64 / 40.0, j as f64 / 40.0);
            let s = DMatrix::from_column_slice(2, 2, flow.grad_w(p, 0.0).as_slice()).singular_values()[0];
            gmax = gmax.max(s);
        }
    }
    GardingCheck { members, m_coarse: level(cells), m_fine: level(2 * cells), m_bound: 4.0 * (1.0 + 2.0) * gmax }
}
