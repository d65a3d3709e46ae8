//! Lagrangian flows of 2D velocity fields and the Piola transform
//! `(P z)(y) = J(x) z(x) / det J(x)`, `y = Psi(x)`.

use nalgebra::{Matrix2, Vector2};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;
pub type Mat2 = Matrix2<f64>;

pub trait Flow2d: Send + Sync {
    fn w(&self, x: Vec2, t: f64) -> Vec2;
    /// `[i][j] = d w_i / d x_j`
    fn grad_w(&self, x: Vec2, t: f64) -> Mat2;
}

/// Divergence-free cellular flow on the unit square, vanishing on the
/// boundary: `w = curl psi`, `psi = a(t) sin^2(pi x) sin^2(pi y) / pi`,
/// `a(t) = amp (1 + growth t)`.
#[derive(Debug, Clone, Copy)]
pub struct CellularFlow {
    pub amp: f64,
    pub growth: f64,
}

impl CellularFlow {
    fn a(&self, t: f64) -> f64 {
        self.amp * (1.0 + self.growth * t)
    }

    /// The stream function; constant along trajectories of a steady flow.
    pub fn stream(&self, x: Vec2, t: f64) -> f64 {
        self.a(t) * (PI * x[0]).sin().powi(2) * (PI * x[1]).sin().powi(2) / PI
    }
}

impl Flow2d for CellularFlow {
    fn w(&self, x: Vec2, t: f64) -> Vec2 {
        let a = self.a(t);
        let (sx, sy) = ((PI * x[0]).sin(), (PI * x[1]).sin());
        Vec2::new(a * sx * sx * (2.0 * PI * x[1]).sin(), -a * (2.0 * PI * x[0]).sin() * sy * sy)
    }

    fn grad_w(&self, x: Vec2, t: f64) -> Mat2 {
        let a = self.a(t);
        let (sx, sy) = ((PI * x[0]).sin(), (PI * x[1]).sin());
        let s2 = (2.0 * PI * x[0]).sin() * (2.0 * PI * x[1]).sin();
        Mat2::new(
            a * PI * s2,
            2.0 * PI * a * sx * sx * (2.0 * PI * x[1]).cos(),
            -2.0 * PI * a * (2.0 * PI * x[0]).cos() * sy * sy,
            -a * PI * s2,
        )
    }
}

/// Rigid rotation with angular speed `omega` about `center`.
#[derive(Debug, Clone, Copy)]
pub struct Rotation {
    pub omega: f64,
    pub center: [f64; 2],
}

impl Flow2d for Rotation {
    fn w(&self, x: Vec2, _t: f64) -> Vec2 {
        Vec2::new(-self.omega * (x[1] - self.center[1]), self.omega * (x[0] - self.center[0]))
    }

    fn grad_w(&self, _x: Vec2, _t: f64) -> Mat2 {
        Mat2::new(0.0, -self.omega, self.omega, 0.0)
    }
}

/// Default integration step of the flow ODE.
pub const FLOW_DT: f64 = 1e-3;

/// `(Phi(y,t), J Phi_t(y))` by RK4 on `Phi' = w(Phi)`, `J' = grad w J`
/// with `steps` uniform steps from 0 to `t`.
pub fn flow_with_steps(flow: &dyn Flow2d, y: Vec2, t: f64, steps: usize) -> (Vec2, Mat2) {
    let mut x = y;
    let mut j = Mat2::identity();
    if steps == 0 || t == 0.0 {
        return (x, j);
    }
    let h = t / steps as f64;
    let f = |x: Vec2, j: Mat2, s: f64| (flow.w(x, s), flow.grad_w(x, s) * j);
    for k in 0..steps {
        let s = k as f64 * h;
        let (a1, b1) = f(x, j, s);
        let (a2, b2) = f(x + a1 * (0.5 * h), j + b1 * (0.5 * h), s + 0.5 * h);
        let (a3, b3) = f(x + a2 * (0.5 * h), j + b2 * (0.5 * h), s + 0.5 * h);
        let (a4, b4) = f(x + a3 * h, j + b3 * h, s + h);
        x += (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
        j += (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0);
    }
    (x, j)
}

fn steps_for(t: f64) -> usize {
    (t.abs() / FLOW_DT).ceil().max(1.0) as usize
}

pub fn flow(flow: &dyn Flow2d, y: Vec2, t: f64) -> (Vec2, Mat2) {
    flow_with_steps(flow, y, t, steps_for(t))
}

/// `Phi_t^{-1}(x)`: backward integration from time `t` to 0.
pub fn inverse_flow(flow: &dyn Flow2d, x: Vec2, t: f64) -> Vec2 {
    let steps = steps_for(t);
    if t == 0.0 {
        return x;
    }
    let h = -t / steps as f64;
    let mut y = x;
    for k in 0..steps {
        let s = t + k as f64 * h;
        let a1 = flow.w(y, s);
        let a2 = flow.w(y + a1 * (0.5 * h), s + 0.5 * h);
        let a3 = flow.w(y + a2 * (0.5 * h), s + 0.5 * h);
        let a4 = flow.w(y + a3 * h, s + h);
        y += (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
    }
    y
}

/// `P_Psi z = J z / det J` at one point; rejects near-singular Jacobians.
pub fn piola_apply(jac: &Mat2, z: Vec2) -> Result<Vec2> {
    let det = jac.determinant();
    if det.abs() < 1e-12 {
        return Err(Error::InvalidInput(format!("Piola map with |det J| = {:.2e}", det.abs())));
    }
    Ok(jac * z / det)
}

/// `A(x,t) = J Phi_t^{-1}(x) / det J Phi_t^{-1}(x)` from `J Phi_t(y)`.
pub fn matrix_a(j_phi: &Mat2) -> Result<Mat2> {
    let det = j_phi.determinant();
    let inv = j_phi.try_inverse().ok_or_else(|| Error::InvalidInput("singular flow Jacobian".into()))?;
    if det.abs() < 1e-12 {
        return Err(Error::InvalidInput("degenerate flow Jacobian".into()));
    }
    Ok(inv * det)
}

/// `R = A^{-1} A_dot = (div w) I - grad w` at `(x,t)`.
pub fn matrix_r(flow: &dyn Flow2d, x: Vec2, t: f64) -> Mat2 {
    let g = flow.grad_w(x, t);
    Mat2::identity() * g.trace() - g
}

/// Vector field with analytic value, gradient `[i][j] = d u_i/d x_j` and
/// time derivative.
pub trait Field2d {
    fn value(&self, x: Vec2, t: f64) -> Vec2;
    fn grad(&self, x: Vec2, t: f64) -> Mat2;
    fn dt(&self, x: Vec2, t: f64) -> Vec2;

    /// Material derivative `du/dt + (grad u) w`.
    fn material(&self, flow: &dyn Flow2d, x: Vec2, t: f64) -> Vec2 {
        self.dt(x, t) + self.grad(x, t) * flow.w(x, t)
    }
}

/// `(1 + g t) (a0 sin(k0.x + p0), a1 cos(k1.x + p1))`
#[derive(Debug, Clone, Copy)]
pub struct TrigField {
    pub amp: [f64; 2],
    pub k: [[f64; 2]; 2],
    pub phase: [f64; 2],
    pub growth: f64,
}

impl TrigField {
    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        let mut r = |a: f64, b: f64| rng.gen_range(a..b);
        TrigField {
            amp: [r(-1.0, 1.0), r(-1.0, 1.0)],
            k: [[r(-4.0, 4.0), r(-4.0, 4.0)], [r(-4.0, 4.0), r(-4.0, 4.0)]],
            phase: [r(0.0, 6.3), r(0.0, 6.3)],
            growth: r(-0.5, 2.0),
        }
    }

    fn args(&self, x: Vec2) -> [f64; 2] {
        [
            self.k[0][0] * x[0] + self.k[0][1] * x[1] + self.phase[0],
            self.k[1][0] * x[0] + self.k[1][1] * x[1] + self.phase[1],
        ]
    }
}

impl Field2d for TrigField {
    fn value(&self, x: Vec2, t: f64) -> Vec2 {
        let a = self.args(x);
        (1.0 + self.growth * t) * Vec2::new(self.amp[0] * a[0].sin(), self.amp[1] * a[1].cos())
    }

    fn grad(&self, x: Vec2, t: f64) -> Mat2 {
        let a = self.args(x);
        let (c0, s1) = (self.amp[0] * a[0].cos(), -self.amp[1] * a[1].sin());
        (1.0 + self.growth * t) * Mat2::new(c0 * self.k[0][0], c0 * self.k[0][1], s1 * self.k[1][0], s1 * self.k[1][1])
    }

    fn dt(&self, x: Vec2, _t: f64) -> Vec2 {
        let a = self.args(x);
        self.growth * Vec2::new(self.amp[0] * a[0].sin(), self.amp[1] * a[1].cos())
    }
}

/// Samples of the transport along one trajectory needed for `u'`.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub x: Vec2,
    pub t: f64,
    pub h: f64,
    /// `(Phi_s(y), A(Phi_s(y), s))` at `s = t - h, t + h`
    pub minus: (Vec2, Mat2),
    pub plus: (Vec2, Mat2),
    pub a_inv: Mat2,
}

pub fn sample_trajectory(fl: &dyn Flow2d, x: Vec2, t: f64, h: f64) -> Result<TrajectorySample> {
    let y = inverse_flow(fl, x, t);
    let steps = steps_for(t + h);
    let (xm, jm) = flow_with_steps(fl, y, t - h, steps);
    let (xp, jp) = flow_with_steps(fl, y, t + h, steps);
    let (_, j0) = flow_with_steps(fl, y, t, steps);
    let a0 = matrix_a(&j0)?;
    let a_inv = a0.try_inverse().ok_or_else(|| Error::InvalidInput("singular Piola matrix".into()))?;
    Ok(TrajectorySample { x, t, h, minus: (xm, matrix_a(&jm)?), plus: (xp, matrix_a(&jp)?), a_inv })
}

/// `u' = P^{-1} d/dt (P u)` by central differences along the trajectory.
pub fn piola_material_derivative(u: &dyn Field2d, s: &TrajectorySample) -> Vec2 {
    let pu_p = s.plus.1 * u.value(s.plus.0, s.t + s.h);
    let pu_m = s.minus.1 * u.value(s.minus.0, s.t - s.h);
    s.a_inv * (pu_p - pu_m) / (2.0 * s.h)
}
