//! Discrete inf-sup constant of `b(u,v) = <rho u_dot, v> + int a(t;u,v)` on
//! small tensor spaces, compared with `c_s = sqrt(2) gamma / (2 (1 + Gamma^2))`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::stgrid::StGrid1d;
use crate::error::{Error, Result};

/// Largest dense problem accepted.
pub const MAX_DENSE_DIM: usize = 2000;

/// `sqrt(2) gamma / (2 (1 + Gamma^2))`; `gamma <= Gamma` is implied by the
/// ellipticity and continuity conditions, anything else is inconsistent.
pub fn c_s(gamma: f64, big_gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !big_gamma.is_finite() {
        return Err(Error::Config(format!("ellipticity constant must be positive, got {gamma}")));
    }
    if gamma > big_gamma {
        return Err(Error::Config(format!(
            "inconsistent constants: ellipticity {gamma} exceeds continuity {big_gamma}"
        )));
    }
    Ok(2f64.sqrt() * gamma / (2.0 * (1.0 + big_gamma * big_gamma)))
}

/// Scalar model on `(0,1) x (0,T)`: `rho`, `mu` piecewise constant across the
/// moving point `x0 + speed t`, transported by `w = speed` (so
/// `rho_dot = 0`); `mu` is multiplied by `mu_late` for `t > T/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfSupConfig {
    pub nx: usize,
    pub nt: usize,
    pub t_final: f64,
    /// `[outer (right), inner (left)]`
    pub rho: [f64; 2],
    pub mu: [f64; 2],
    pub mu_late: f64,
    pub x0: f64,
    pub speed: f64,
}

impl Default for InfSupConfig {
    fn default() -> Self {
        Self { nx: 6, nt: 4, t_final: 1.0, rho: [1.0, 1.0], mu: [1.0, 1.0], mu_late: 1.0, x0: 0.4, speed: 0.2 }
    }
}

impl InfSupConfig {
    pub fn grid(&self) -> StGrid1d {
        StGrid1d { nx: self.nx, nt: self.nt, t_final: self.t_final, x0: self.x0, speed: self.speed }
    }

    pub fn mu_at(&self, phase: crate::Phase, t: f64) -> f64 {
        let f = if t > 0.5 * self.t_final { self.mu_late } else { 1.0 };
        self.mu[phase as usize] * f
    }

    /// Ellipticity / continuity constants of `a(t;u,v) = int mu u' v'`
    /// with respect to `|.|_1`.
    pub fn constants(&self) -> (f64, f64) {
        let vals = [self.mu[0], self.mu[1], self.mu[0] * self.mu_late, self.mu[1] * self.mu_late];
        (vals.iter().cloned().fold(f64::INFINITY, f64::min), vals.iter().cloned().fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfSupReport {
    pub config: InfSupConfig,
    pub gamma: f64,
    pub big_gamma: f64,
    pub c_s: f64,
    pub value: f64,
    pub trial_dim: usize,
    pub test_dim: usize,
    pub holds: bool,
}

/// Dense matrices of the model: trial/test `X` Grams, `C_ij = <rho u_dot_j, v_i>`
/// and `A_ij = int a(t; u_j, v_i)`.
pub struct InfSupMatrices {
    pub x_trial: DMatrix<f64>,
    pub x_test: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub a: DMatrix<f64>,
}

pub fn assemble(cfg: &InfSupConfig) -> Result<InfSupMatrices> {
    if cfg.nx < 2 || cfg.nt < 1 || !(cfg.t_final > 0.0) {
        return Err(Error::InvalidInput("need nx >= 2, nt >= 1, T > 0".into()));
    }
    if cfg.rho.iter().chain(&cfg.mu).chain([&cfg.mu_late]).any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidInput("coefficients must be positive".into()));
    }
    let g = cfg.grid();
    let ns = g.nsp();
    let (nu, nv) = (cfg.nt * ns, 2 * cfg.nt * ns);
    if nv > MAX_DENSE_DIM {
        return Err(Error::Budget(format!("dense inf-sup problem of dimension {nv} exceeds {MAX_DENSE_DIM}")));
    }
    let mut m = InfSupMatrices {
        x_trial: DMatrix::zeros(nu, nu),
        x_test: DMatrix::zeros(nv, nv),
        c: DMatrix::zeros(nv, nu),
        a: DMatrix::zeros(nv, nu),
    };
    let (mut sx, mut tu, mut tv) = (Vec::new(), Vec::new(), Vec::new());
    // integrands are at most degree 2 in (x,t) on each piece
    for q in g.points(2) {
        g.space_shapes(&q, &mut sx);
        g.trial_time_shapes(&q, &mut tu);
        g.test_time_shapes(&q, &mut tv);
        let rho = cfg.rho[q.phase as usize];
        let mu = cfg.mu_at(q.phase, q.t);
        for &(ti, tval, tdt) in &tu {
            for &(xi, xval, xdx) in &sx {
                let j = ti * ns + xi;
                let (u_t, u_x) = (tdt * xval, tval * xdx);
                for &(tk, kval, _) in &tu {
                    for &(xk, _, kdx) in &sx {
                        m.x_trial[(tk * ns + xk, j)] += q.w * kval * kdx * u_x;
                    }
                }
                for &(vi, vval, _) in &tv {
                    for &(yi, yval, ydx) in &sx {
                        let i = vi * ns + yi;
                        let (v, v_x) = (vval * yval, vval * ydx);
                        m.c[(i, j)] += q.w * rho * (u_t + cfg.speed * u_x) * v;
                        m.a[(i, j)] += q.w * mu * u_x * v_x;
                    }
                }
            }
        }
        for &(vi, vval, _) in &tv {
            for &(yi, _, ydx) in &sx {
                for &(wi, wval, _) in &tv {
                    for &(zi, _, zdx) in &sx {
                        m.x_test[(vi * ns + yi, wi * ns + zi)] += q.w * vval * ydx * wval * zdx;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `inf_u sup_v b(u,v) / (||u||_V ||v||_X)` with
/// `||u||_V^2 = ||u||_X^2 + ||rho u_dot||_{X_h'}^2`, by a dense symmetric
/// generalized eigenproblem.
pub fn infsup_estimate(cfg: &InfSupConfig) -> Result<InfSupReport> {
    let (gamma, big_gamma) = cfg.constants();
    let cs = c_s(gamma, big_gamma)?;
    let m = assemble(cfg)?;
    let value = discrete_infsup(&m)?;
    Ok(InfSupReport {
        config: *cfg,
        gamma,
        big_gamma,
        c_s: cs,
        value,
        trial_dim: m.x_trial.nrows(),
        test_dim: m.x_test.nrows(),
        holds: value >= cs - 1e-10,
    })
}

pub fn discrete_infsup(m: &InfSupMatrices) -> Result<f64> {
    let chol_v = m.x_test.clone().cholesky().ok_or_else(|| Error::InvalidInput("test Gram not SPD".into()))?;
    let b = &m.c + &m.a;
    let gc = chol_v.solve(&m.c);
    let gb = chol_v.solve(&b);
    let n = &m.x_trial + m.c.transpose() * gc;
    let s = b.transpose() * gb;
    let chol_n = n.cholesky().ok_or_else(|| Error::InvalidInput("trial V-Gram not SPD".into()))?;
    // L^{-1} S L^{-T}
    let l = chol_n.l();
    let y = l.solve_lower_triangular(&s).ok_or_else(|| Error::InvalidInput("singular factor".into()))?;
    let z = l.solve_lower_triangular(&y.transpose()).ok_or_else(|| Error::InvalidInput("singular factor".into()))?;
    let sym = (&z + z.transpose()) * 0.5;
    let ev = SymmetricEigen::new(sym).eigenvalues;
    let min = ev.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(min.max(0.0).sqrt())
}

/// The small configurations checked by the analysis suite.
pub fn standard_configs() -> Vec<InfSupConfig> {
    let base = InfSupConfig::default();
    vec![
        InfSupConfig { speed: 0.0, ..base },
        InfSupConfig { rho: [1.0, 10.0], ..base },
        InfSupConfig { mu: [1.0, 5.0], ..base },
        InfSupConfig { rho: [2.0, 0.5], mu: [0.5, 2.0], nx: 8, nt: 5, ..base },
        InfSupConfig { mu_late: 3.0, t_final: 2.0, ..base },
        InfSupConfig { nx: 10, nt: 8, rho: [1.0, 3.0], mu: [2.0, 1.0], speed: -0.3, x0: 0.7, ..base },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_constants_give_sqrt2_over_4() {
        assert!((c_s(1.0, 1.0).unwrap() - 2f64.sqrt() / 4.0).abs() < 1e-16);
        assert!((c_s(1.0, 1.0).unwrap() - 0.353553).abs() < 1e-6);
    }

    #[test]
    fn inconsistent_constants_rejected() {
        assert!(matches!(c_s(2.0, 1.0), Err(Error::Config(_))));
        assert!(c_s(0.0, 1.0).is_err());
    }

    #[test]
    fn scaling_the_form_rescales_the_bound() {
        let (g, gg, s) = (0.7, 2.5, 3.0);
        let direct = c_s(s * g, s * gg).unwrap();
        let formula = c_s(g, gg).unwrap() * s * (1.0 + gg * gg) / (1.0 + s * s * gg * gg);
        assert!((direct - formula).abs() < 1e-15);
    }

    #[test]
    fn stationary_unit_form_meets_bound() {
        let r = infsup_estimate(&InfSupConfig { speed: 0.0, ..Default::default() }).unwrap();
        assert!(r.value >= 0.353553 - 1e-10, "{r:?}");
    }

    #[test]
    fn trial_space_energy_is_nonnegative() {
        // <rho u_dot, u> = |rho^{1/2} u(T)|^2 / 2 >= 0 discretely for u in
        // the trial space (the test space contains it).
        let cfg = InfSupConfig { rho: [1.0, 7.0], ..Default::default() };
        let m = assemble(&cfg).unwrap();
        let ns = cfg.nx - 1;
        // embed trial -> test: continuous hat at node k = L1 on (k-1) and L0 on k
        let mut e = DMatrix::zeros(2 * cfg.nt * ns, cfg.nt * ns);
        for k in 0..cfg.nt {
            for i in 0..ns {
                e[((2 * k + 1) * ns + i, k * ns + i)] = 1.0;
                if k + 1 < cfg.nt {
                    e[((2 * (k + 1)) * ns + i, k * ns + i)] = 1.0;
                }
            }
        }
        let form = e.transpose() * &m.c;
        let sym = (&form + form.transpose()) * 0.5;
        let min = SymmetricEigen::new(sym).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min > -1e-12, "{min}");
    }

    #[test]
    fn dense_guard() {
        let cfg = InfSupConfig { nx: 80, nt: 20, ..Default::default() };
        assert!(matches!(assemble(&cfg), Err(Error::Budget(_))));
    }
}
