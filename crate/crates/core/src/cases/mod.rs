//! Built-in test problems with known solutions.
//!
//! The closed forms in [`generated`] come from `scripts/gen_manufactured.py`.

pub mod generated;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assembly::{PhaseVectorField, ProblemCoefficients, VectorField};
use crate::error::{Error, Result};
use crate::geom::{LevelSetFunction, MovingSphere, Plane};
use crate::mesh::BoxDomain;
use crate::Phase;

use generated as g;

pub type PhaseFn<T> = Arc<dyn Fn(Phase, &[f64], f64) -> T + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    /// Moving sphere, smooth velocity, discontinuous pressure (3D).
    Paper3dCase1,
    /// Moving sphere, velocity with a kink across the interface (3D).
    Paper3dCase2,
    /// Moving circle, smooth velocity, discontinuous pressure.
    Disk2dSmooth,
    /// Moving circle, velocity with a kink across the interface.
    Disk2dKink,
    /// Single phase, solution inside the discrete space.
    Poly2d,
    /// Static drop (`u = 0`, pressure jump `tau kappa`) with free coefficients.
    Custom,
}

impl CaseId {
    pub const ALL: [CaseId; 6] =
        [CaseId::Paper3dCase1, CaseId::Paper3dCase2, CaseId::Disk2dSmooth, CaseId::Disk2dKink, CaseId::Poly2d, CaseId::Custom];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Paper3dCase1 => "paper3d_case1",
            CaseId::Paper3dCase2 => "paper3d_case2",
            CaseId::Disk2dSmooth => "disk2d_smooth",
            CaseId::Disk2dKink => "disk2d_kink",
            CaseId::Poly2d => "poly2d",
            CaseId::Custom => "custom",
        }
    }

    pub fn is_3d(self) -> bool {
        matches!(self, CaseId::Paper3dCase1 | CaseId::Paper3dCase2)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Config(format!("unknown case '{s}'")))
    }
}

/// Phase-wise exact velocity, velocity gradient (`[i][j] = d u_i / d x_j`) and pressure.
#[derive(Clone)]
pub struct ExactSolution {
    pub dim: usize,
    pub velocity: PhaseFn<[f64; 3]>,
    pub velocity_gradient: PhaseFn<[[f64; 3]; 3]>,
    pub pressure: PhaseFn<f64>,
    /// Velocity smooth across the interface.
    pub smooth_velocity: bool,
}

impl fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactSolution").field("dim", &self.dim).field("smooth_velocity", &self.smooth_velocity).finish()
    }
}

/// Free parameters of the `custom` case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomCase {
    pub dim: usize,
    pub rho: [f64; 2],
    pub mu: [f64; 2],
    pub tau: f64,
    pub radius: f64,
}

impl Default for CustomCase {
    fn default() -> Self {
        Self { dim: 2, rho: [1.0, 10.0], mu: [1.0, 5.0], tau: 2.0, radius: 0.5 }
    }
}

/// Everything needed to run a case.
#[derive(Debug, Clone)]
pub struct CaseSetup {
    pub id: CaseId,
    pub domain: BoxDomain,
    pub t_final: f64,
    pub coefficients: ProblemCoefficients,
    pub exact: ExactSolution,
}

impl CaseSetup {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn level_set(&self) -> &Arc<dyn LevelSetFunction> {
        &self.coefficients.level_set
    }
}

fn vec3(v: &[f64]) -> [f64; 3] {
    let mut o = [0.0; 3];
    o[..v.len()].copy_from_slice(v);
    o
}

fn mat3(v: &[f64], d: usize) -> [[f64; 3]; 3] {
    let mut o = [[0.0; 3]; 3];
    for i in 0..d {
        for j in 0..d {
            o[i][j] = v[i * d + j];
        }
    }
    o
}

/// Squared distance to the drop centre `(0, (2t - 1)/4)` of the 2D cases.
fn disk_s(x: &[f64], t: f64) -> f64 {
    let cy = (2.0 * t - 1.0) / 4.0;
    x[0] * x[0] + (x[1] - cy).powi(2)
}

const DISK_SUPPORT: f64 = 9.0 / 16.0;

fn disk_level_set() -> Arc<dyn LevelSetFunction> {
    Arc::new(MovingSphere { center: vec![0.0, -0.25], velocity: vec![0.0, 0.5], radius_sq: 0.25, radius_sq_rate: 0.0 })
}

fn sphere_level_set() -> Arc<dyn LevelSetFunction> {
    Arc::new(MovingSphere { center: vec![0.0; 3], velocity: vec![0.0, 0.0, 1.0], radius_sq: 0.5, radius_sq_rate: 0.0 })
}

fn disk2d_smooth() -> Result<CaseSetup> {
    let mut coef = ProblemCoefficients::new([1.0, 10.0], [1.0, 5.0], 2.0, disk_level_set())?;
    let inside = |x: &[f64], t: f64| disk_s(x, t) < DISK_SUPPORT;
    coef.forcing = Some(Arc::new(move |ph, x: &[f64], t| {
        if !inside(x, t) {
            return [0.0; 3];
        }
        vec3(&match ph {
            Phase::Pos => g::disk_smooth_g_pos(x[0], x[1], t),
            Phase::Neg => g::disk_smooth_g_neg(x[0], x[1], t),
        })
    }));
    let exact = ExactSolution {
        dim: 2,
        velocity: Arc::new(move |_, x: &[f64], t| if inside(x, t) { vec3(&g::disk_smooth_u(x[0], x[1], t)) } else { [0.0; 3] }),
        velocity_gradient: Arc::new(move |_, x: &[f64], t| {
            if inside(x, t) {
                mat3(&g::disk_smooth_grad_u(x[0], x[1], t), 2)
            } else {
                [[0.0; 3]; 3]
            }
        }),
        pressure: Arc::new(|ph, x: &[f64], t| match ph {
            Phase::Pos => g::disk_smooth_p_pos(x[0], x[1], t)[0],
            Phase::Neg => g::disk_smooth_p_neg(x[0], x[1], t)[0],
        }),
        smooth_velocity: true,
    };
    Ok(CaseSetup { id: CaseId::Disk2dSmooth, domain: BoxDomain::new(&[-1.0, -1.0], &[1.0, 1.0])?, t_final: 1.0, coefficients: coef, exact })
}

fn disk2d_kink() -> Result<CaseSetup> {
    let mut coef = ProblemCoefficients::new([1.0, 5.0], [1.0, 2.0], 2.0, disk_level_set())?;
    let inside = |x: &[f64], t: f64| disk_s(x, t) < DISK_SUPPORT;
    coef.forcing = Some(Arc::new(move |ph, x: &[f64], t| {
        vec3(&match ph {
            Phase::Pos if inside(x, t) => g::disk_kink_g_pos(x[0], x[1], t),
            Phase::Pos => [0.0; 2],
            Phase::Neg => g::disk_kink_g_neg(x[0], x[1], t),
        })
    }));
    let exact = ExactSolution {
        dim: 2,
        velocity: Arc::new(move |ph, x: &[f64], t| {
            vec3(&match ph {
                Phase::Pos if inside(x, t) => g::disk_kink_u_pos(x[0], x[1], t),
                Phase::Pos => [0.0; 2],
                Phase::Neg => g::disk_kink_u_neg(x[0], x[1], t),
            })
        }),
        velocity_gradient: Arc::new(move |ph, x: &[f64], t| {
            mat3(
                &match ph {
                    Phase::Pos if inside(x, t) => g::disk_kink_grad_u_pos(x[0], x[1], t),
                    Phase::Pos => [0.0; 4],
                    Phase::Neg => g::disk_kink_grad_u_neg(x[0], x[1], t),
                },
                2,
            )
        }),
        pressure: Arc::new(|ph, x: &[f64], t| match ph {
            Phase::Pos => g::disk_kink_p_pos(x[0], x[1], t)[0],
            Phase::Neg => g::disk_kink_p_neg(x[0], x[1], t)[0],
        }),
        smooth_velocity: false,
    };
    Ok(CaseSetup { id: CaseId::Disk2dKink, domain: BoxDomain::new(&[-1.0, -1.0], &[1.0, 1.0])?, t_final: 1.0, coefficients: coef, exact })
}

type Sphere<const N: usize> = fn(f64, f64, f64, f64) -> [f64; N];

struct SphereFns {
    u: [Sphere<3>; 2],
    grad: [Sphere<9>; 2],
    p: [Sphere<1>; 2],
    g: [Sphere<3>; 2],
    h: Sphere<3>,
}

fn paper3d(id: CaseId, rho: [f64; 2], mu: [f64; 2], f: SphereFns, smooth: bool) -> Result<CaseSetup> {
    let f = Arc::new(f);
    let mut coef = ProblemCoefficients::new(rho, mu, 2.0, sphere_level_set())?;
    let ff = f.clone();
    coef.forcing = Some(Arc::new(move |ph: Phase, x: &[f64], t: f64| (ff.g[ph as usize])(x[0], x[1], x[2], t)) as PhaseVectorField);
    let ff = f.clone();
    coef.interface_load = Some(Arc::new(move |x: &[f64], t: f64| (ff.h)(x[0], x[1], x[2], t)) as VectorField);
    let ff = f.clone();
    coef.dirichlet = Some(Arc::new(move |x: &[f64], t: f64| (ff.u[0])(x[0], x[1], x[2], t)) as VectorField);
    let (f1, f2, f3) = (f.clone(), f.clone(), f);
    let exact = ExactSolution {
        dim: 3,
        velocity: Arc::new(move |ph: Phase, x: &[f64], t: f64| (f1.u[ph as usize])(x[0], x[1], x[2], t)),
        velocity_gradient: Arc::new(move |ph: Phase, x: &[f64], t: f64| mat3(&(f2.grad[ph as usize])(x[0], x[1], x[2], t), 3)),
        pressure: Arc::new(move |ph: Phase, x: &[f64], t: f64| (f3.p[ph as usize])(x[0], x[1], x[2], t)[0]),
        smooth_velocity: smooth,
    };
    let domain = BoxDomain::new(&[-1.0, -1.0, -0.75], &[1.0, 1.0, 1.75])?;
    Ok(CaseSetup { id, domain, t_final: 1.0, coefficients: coef, exact })
}

/// `u = t (x^2 + y, x - 2xy)`, `p = (1 + t)(x - y)` on the unit square with
/// `rho = 2`, `mu = 3`: P2 in space, P1 in time, divergence free, zero mean
/// pressure and `u(0) = 0`.
fn poly2d() -> Result<CaseSetup> {
    let (rho, mu) = (2.0, 3.0);
    let far: Arc<dyn LevelSetFunction> = Arc::new(Plane { a: vec![0.0, 0.0], b: 0.0, c: 1.0 });
    let mut coef = ProblemCoefficients::new([rho; 2], [mu; 2], 0.0, far)?;
    let u = |x: &[f64], t: f64| [t * (x[0] * x[0] + x[1]), t * (x[0] - 2.0 * x[0] * x[1]), 0.0];
    coef.forcing = Some(Arc::new(move |_, x: &[f64], t| {
        let dudt = [x[0] * x[0] + x[1], x[0] - 2.0 * x[0] * x[1]];
        // div(2 mu D(u)) = (4 mu t, 0); grad p = (1 + t)(1, -1)
        [rho * dudt[0] - 4.0 * mu * t + (1.0 + t), rho * dudt[1] - (1.0 + t), 0.0]
    }));
    coef.dirichlet = Some(Arc::new(move |x: &[f64], t| u(x, t)));
    let exact = ExactSolution {
        dim: 2,
        velocity: Arc::new(move |_, x: &[f64], t| u(x, t)),
        velocity_gradient: Arc::new(|_, x: &[f64], t| {
            let mut m = [[0.0; 3]; 3];
            m[0][0] = 2.0 * t * x[0];
            m[0][1] = t;
            m[1][0] = t * (1.0 - 2.0 * x[1]);
            m[1][1] = -2.0 * t * x[0];
            m
        }),
        pressure: Arc::new(|_, x: &[f64], t| (1.0 + t) * (x[0] - x[1])),
        smooth_velocity: true,
    };
    Ok(CaseSetup { id: CaseId::Poly2d, domain: BoxDomain::new(&[0.0, 0.0], &[1.0, 1.0])?, t_final: 1.0, coefficients: coef, exact })
}

/// Static drop of radius `radius` centred at the origin of `(-1,1)^d`.
pub fn custom_case(c: &CustomCase) -> Result<CaseSetup> {
    if c.dim != 2 && c.dim != 3 {
        return Err(Error::Config("custom case dimension must be 2 or 3".into()));
    }
    if !(c.radius > 0.0 && c.radius < 1.0) {
        return Err(Error::Config("custom drop radius must lie in (0, 1)".into()));
    }
    let d = c.dim;
    let ls: Arc<dyn LevelSetFunction> =
        Arc::new(MovingSphere { center: vec![0.0; d], velocity: vec![0.0; d], radius_sq: c.radius * c.radius, radius_sq_rate: 0.0 });
    let coef = ProblemCoefficients::new(c.rho, c.mu, c.tau, ls)?;
    let jump = c.tau * (d as f64 - 1.0) / c.radius;
    let exact = ExactSolution {
        dim: d,
        velocity: Arc::new(|_, _, _| [0.0; 3]),
        velocity_gradient: Arc::new(|_, _, _| [[0.0; 3]; 3]),
        pressure: Arc::new(move |ph, _, _| if ph == Phase::Neg { jump } else { 0.0 }),
        smooth_velocity: true,
    };
    let domain = BoxDomain::new(&vec![-1.0; d], &vec![1.0; d])?;
    Ok(CaseSetup { id: CaseId::Custom, domain, t_final: 1.0, coefficients: coef, exact })
}

/// Built-in case by id (`custom` with default parameters).
pub fn case_setup(id: CaseId) -> Result<CaseSetup> {
    match id {
        CaseId::Disk2dSmooth => disk2d_smooth(),
        CaseId::Disk2dKink => disk2d_kink(),
        CaseId::Paper3dCase1 => paper3d(
            id,
            [1.0, 10.0],
            [1.0, 25.0],
            SphereFns {
                u: [g::sphere_smooth_u_pos, g::sphere_smooth_u_neg],
                grad: [g::sphere_smooth_grad_u_pos, g::sphere_smooth_grad_u_neg],
                p: [g::sphere_smooth_p_pos, g::sphere_smooth_p_neg],
                g: [g::sphere_smooth_g_pos, g::sphere_smooth_g_neg],
                h: g::sphere_smooth_h,
            },
            true,
        ),
        CaseId::Paper3dCase2 => paper3d(
            id,
            [1.0, 5.0],
            [1.0, 2.0],
            SphereFns {
                u: [g::sphere_kink_u_pos, g::sphere_kink_u_neg],
                grad: [g::sphere_kink_grad_u_pos, g::sphere_kink_grad_u_neg],
                p: [g::sphere_kink_p_pos, g::sphere_kink_p_neg],
                g: [g::sphere_kink_g_pos, g::sphere_kink_g_neg],
                h: g::sphere_kink_h,
            },
            false,
        ),
        CaseId::Poly2d => poly2d(),
        CaseId::Custom => custom_case(&CustomCase::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(case: &CaseSetup, pts: &[(Vec<f64>, f64)]) {
        // exact gradient vs central differences, phase by analytic sign
        let ls = case.level_set();
        for (x, t) in pts {
            let ph = Phase::of(ls.value(x, *t));
            let gr = (case.exact.velocity_gradient)(ph, x, *t);
            for j in 0..case.dim() {
                let (mut xp, mut xm) = (x.clone(), x.clone());
                xp[j] += 1e-6;
                xm[j] -= 1e-6;
                let (up, um) = ((case.exact.velocity)(ph, &xp, *t), (case.exact.velocity)(ph, &xm, *t));
                for i in 0..case.dim() {
                    let fd = (up[i] - um[i]) / 2e-6;
                    assert!((fd - gr[i][j]).abs() < 1e-5 * (1.0 + fd.abs()), "{} d{i}/d{j}: {fd} vs {}", case.id, gr[i][j]);
                }
            }
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let pts2 = vec![(vec![0.1, 0.2], 0.3), (vec![-0.4, -0.1], 0.7), (vec![0.3, 0.55], 0.9)];
        fd_check(&case_setup(CaseId::Disk2dSmooth).unwrap(), &pts2);
        fd_check(&case_setup(CaseId::Disk2dKink).unwrap(), &pts2);
        fd_check(&case_setup(CaseId::Poly2d).unwrap(), &pts2);
        let pts3 = vec![(vec![0.1, 0.2, 0.3], 0.3), (vec![-0.6, 0.4, 1.1], 0.8)];
        fd_check(&case_setup(CaseId::Paper3dCase1).unwrap(), &pts3);
        fd_check(&case_setup(CaseId::Paper3dCase2).unwrap(), &pts3);
    }

    #[test]
    fn velocities_are_divergence_free() {
        for id in [CaseId::Disk2dSmooth, CaseId::Disk2dKink, CaseId::Poly2d, CaseId::Paper3dCase1, CaseId::Paper3dCase2] {
            let c = case_setup(id).unwrap();
            let x: Vec<f64> = [0.21, -0.13, 0.4][..c.dim()].to_vec();
            for ph in Phase::BOTH {
                let gr = (c.exact.velocity_gradient)(ph, &x, 0.45);
                let div: f64 = (0..c.dim()).map(|i| gr[i][i]).sum();
                assert!(div.abs() < 1e-12, "{id}: div = {div}");
            }
        }
    }

    #[test]
    fn sphere_case1_velocity_and_pressure() {
        // spot values of the published closed forms
        let c = case_setup(CaseId::Paper3dCase1).unwrap();
        let (x, y, z, t) = (0.3, -0.2, 0.5, 0.4f64);
        let s = (2.0 * t).sin();
        let u = (c.exact.velocity)(Phase::Neg, &[x, y, z], t);
        assert!((u[0] - s * (x * x + 5.0 * y * y - 10.0 * t * z + 5.0 * z * z) * y / 5.0).abs() < 1e-14);
        assert!((u[2] - s * 0.8 * (t - z) * x * y).abs() < 1e-14);
        let p = (c.exact.pressure)(Phase::Neg, &[x, y, z], t);
        assert!((p - (96.0 / 5.0 * s * x * y + 2.0 * 2f64.sqrt())).abs() < 1e-13);
        assert_eq!((c.exact.pressure)(Phase::Pos, &[x, y, z], t), 0.0);
    }

    #[test]
    fn kink_case_continuous_across_interface() {
        let c = case_setup(CaseId::Disk2dKink).unwrap();
        let t = 0.6;
        let cy = (2.0 * t - 1.0) / 4.0;
        for k in 0..8 {
            let th = k as f64 * 0.7;
            let x = [0.5 * th.cos(), cy + 0.5 * th.sin()];
            let (a, b) = ((c.exact.velocity)(Phase::Pos, &x, t), (c.exact.velocity)(Phase::Neg, &x, t));
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn case_ids_parse() {
        for id in CaseId::ALL {
            assert_eq!(id.name().parse::<CaseId>().unwrap(), id);
        }
        assert!("nope".parse::<CaseId>().is_err());
    }
}
