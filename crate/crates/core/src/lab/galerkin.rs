//! Galerkin ODE systems `M(t) g' + B(t) g = F(t)`, `g(0) = 0`.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result};
use crate::geom::quadrature::gauss_legendre01;

pub type MatrixFn = Box<dyn Fn(f64) -> DMatrix<f64> + Send + Sync>;
pub type VectorFn = Box<dyn Fn(f64) -> DVector<f64> + Send + Sync>;

pub struct GalerkinSystem {
    pub m: usize,
    /// rho-weighted mass matrix, must stay SPD.
    pub mass: MatrixFn,
    /// convection + a-form
    pub stiffness: MatrixFn,
    pub load: VectorFn,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
}

fn rhs(sys: &GalerkinSystem, t: f64, g: &DVector<f64>) -> Result<DVector<f64>> {
    let m = (sys.mass)(t);
    let asym = (&m - m.transpose()).amax();
    if asym > 1e-12 * m.amax().max(1.0) {
        return invalid(format!("mass matrix not symmetric at t = {t} (defect {asym:.2e})"));
    }
    let chol = match m.cholesky() {
        Some(c) => c,
        None => return invalid(format!("mass matrix not positive definite at t = {t}")),
    };
    let r = (sys.load)(t) - (sys.stiffness)(t) * g;
    Ok(chol.solve(&r))
}

/// Classical RK4 on `[0, t_final]` with `steps` uniform steps. The mass
/// matrix is checked for symmetry and positive definiteness at every stage.
pub fn galerkin_ode_solve(sys: &GalerkinSystem, t_final: f64, steps: usize) -> Result<Trajectory> {
    if steps == 0 || !(t_final > 0.0) {
        return invalid("need steps > 0 and t_final > 0");
    }
    let h = t_final / steps as f64;
    let mut g = DVector::zeros(sys.m);
    let mut out = Trajectory { times: vec![0.0], states: vec![g.clone()] };
    for k in 0..steps {
        let t = k as f64 * h;
        let k1 = rhs(sys, t, &g)?;
        let k2 = rhs(sys, t + 0.5 * h, &(&g + &k1 * (0.5 * h)))?;
        let k3 = rhs(sys, t + 0.5 * h, &(&g + &k2 * (0.5 * h)))?;
        let k4 = rhs(sys, t + h, &(&g + &k3 * h))?;
        g += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        out.times.push(t + h);
        out.states.push(g.clone());
    }
    Ok(out)
}

/// RK4 with step-doubling error control; returns the accepted trajectory.
pub fn galerkin_ode_solve_adaptive(sys: &GalerkinSystem, t_final: f64, tol: f64) -> Result<Trajectory> {
    let step = |t: f64, g: &DVector<f64>, h: f64| -> Result<DVector<f64>> {
        let k1 = rhs(sys, t, g)?;
        let k2 = rhs(sys, t + 0.5 * h, &(g + &k1 * (0.5 * h)))?;
        let k3 = rhs(sys, t + 0.5 * h, &(g + &k2 * (0.5 * h)))?;
        let k4 = rhs(sys, t + h, &(g + &k3 * h))?;
        Ok(g + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
    };
    let mut t = 0.0;
    let mut h = t_final / 16.0;
    let mut g = DVector::zeros(sys.m);
    let mut out = Trajectory { times: vec![0.0], states: vec![g.clone()] };
    while t < t_final {
        h = h.min(t_final - t);
        let full = step(t, &g, h)?;
        let half = step(t + 0.5 * h, &step(t, &g, 0.5 * h)?, 0.5 * h)?;
        let err = (&full - &half).amax() / 15.0;
        if err <= tol || h < 1e-12 * t_final {
            t += h;
            g = &half + (&half - &full) / 15.0;
            out.times.push(t);
            out.states.push(g.clone());
        }
        let fac = if err > 0.0 { 0.9 * (tol / err).powf(0.2) } else { 4.0 };
        h *= fac.clamp(0.2, 4.0);
    }
    Ok(out)
}

/// 1D sine-basis Galerkin system on `(0,1)`: `psi_k = sin(k pi x)`,
/// `M_ij = (rho psi_j, psi_i)`, `B_ij = (mu psi_j', psi_i')`,
/// `F_i = (f, psi_i)`. Coefficients are integrated with composite Gauss
/// rules on `cells` subintervals.
pub fn sine_system<R, U, F>(m: usize, rho: R, mu: U, f: F, cells: usize) -> GalerkinSystem
where
    R: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    U: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    let pts = composite_points(cells, 8);
    let pts = std::sync::Arc::new(pts);
    let (p1, p2, p3) = (pts.clone(), pts.clone(), pts);
    let mass = Box::new(move |t: f64| {
        DMatrix::from_fn(m, m, |i, j| p1.iter().map(|&(x, w)| w * rho(x, t) * sine(i, x) * sine(j, x)).sum())
    });
    let stiffness = Box::new(move |t: f64| {
        DMatrix::from_fn(m, m, |i, j| p2.iter().map(|&(x, w)| w * mu(x, t) * dsine(i, x) * dsine(j, x)).sum())
    });
    let load = Box::new(move |t: f64| DVector::from_fn(m, |i, _| p3.iter().map(|&(x, w)| w * f(x, t) * sine(i, x)).sum()));
    GalerkinSystem { m, mass, stiffness, load }
}

pub fn sine(i: usize, x: f64) -> f64 {
    ((i + 1) as f64 * std::f64::consts::PI * x).sin()
}

pub fn dsine(i: usize, x: f64) -> f64 {
    let k = (i + 1) as f64 * std::f64::consts::PI;
    k * (k * x).cos()
}

/// Composite Gauss points on `(0,1)`.
pub fn composite_points(cells: usize, npts: usize) -> Vec<(f64, f64)> {
    let (xs, ws) = gauss_legendre01(npts);
    let h = 1.0 / cells as f64;
    (0..cells).flat_map(|c| xs.iter().zip(&ws).map(move |(x, w)| ((c as f64 + x) * h, w * h)).collect::<Vec<_>>()).collect()
}

/// `(||u||_X, ||F||_{X'})` along the trajectory (trapezoidal rule in time),
/// with `X` seminorm `|.|_1` and the dual norm of the load in the Galerkin
/// space. Entry `k` integrates over `[0, t_k]`.
pub fn energy_history(sys: &GalerkinSystem, traj: &Trajectory) -> Vec<(f64, f64)> {
    let m = sys.m;
    let k1 = DMatrix::from_fn(m, m, |i, j| if i == j { 0.5 * ((i + 1) as f64 * std::f64::consts::PI).powi(2) } else { 0.0 });
    let k1_inv = k1.clone().try_inverse().expect("diagonal stiffness");
    let dens: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, g)| {
            let f = (sys.load)(t);
            ((g.transpose() * &k1 * g)[0], (f.transpose() * &k1_inv * &f)[0])
        })
        .collect();
    let mut acc = (0.0, 0.0);
    let mut out = vec![(0.0, 0.0)];
    for k in 1..dens.len() {
        let h = traj.times[k] - traj.times[k - 1];
        acc.0 += 0.5 * h * (dens[k].0 + dens[k - 1].0);
        acc.1 += 0.5 * h * (dens[k].1 + dens[k - 1].1);
        out.push((acc.0.sqrt(), acc.1.sqrt()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(b: f64, f: f64) -> GalerkinSystem {
        GalerkinSystem {
            m: 1,
            mass: Box::new(|_| DMatrix::from_element(1, 1, 1.0)),
            stiffness: Box::new(move |_| DMatrix::from_element(1, 1, b)),
            load: Box::new(move |_| DVector::from_element(1, f)),
        }
    }

    #[test]
    fn relaxation_ode_matches_closed_form() {
        let tr = galerkin_ode_solve(&scalar(1.0, 1.0), 1.0, 1000).unwrap();
        let err = tr.times.iter().zip(&tr.states).map(|(t, g)| (g[0] - (1.0 - (-t).exp())).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-8, "{err}");
        let ad = galerkin_ode_solve_adaptive(&scalar(1.0, 1.0), 1.0, 1e-11).unwrap();
        let last = ad.states.last().unwrap()[0];
        assert!((last - (1.0 - (-1.0f64).exp())).abs() < 1e-9);
    }

    #[test]
    fn zero_load_stays_zero() {
        let tr = galerkin_ode_solve(&scalar(3.0, 0.0), 2.0, 50).unwrap();
        assert!(tr.states.iter().all(|g| g[0] == 0.0));
    }

    #[test]
    fn indefinite_mass_rejected() {
        let mut s = scalar(1.0, 1.0);
        s.mass = Box::new(|t| DMatrix::from_element(1, 1, 0.5 - t));
        assert!(galerkin_ode_solve(&s, 1.0, 10).is_err());
    }

    #[test]
    fn sine_system_single_phase_is_diagonal() {
        let s = sine_system(4, |_, _| 2.0, |_, _| 1.0, |_, _| 0.0, 16);
        let m = (s.mass)(0.3);
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((m[(i, j)] - e).abs() < 1e-12);
            }
        }
    }
}
