//! Analytic level-set functions `phi(x, t)`; the interface is `phi = 0`,
//! phase 2 (drop) is `phi < 0`.

use std::fmt;
use std::sync::Arc;

pub trait LevelSetFunction: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64], t: f64) -> f64;

    /// Spatial gradient. Defaults to central differences.
    fn gradient(&self, x: &[f64], t: f64) -> [f64; 3] {
        let mut g = [0.0; 3];
        let eps = 1e-6;
        for c in 0..self.dim() {
            let mut p = [x[0], x[1], if x.len() > 2 { x[2] } else { 0.0 }];
            p[c] += eps;
            let fp = self.value(&p[..self.dim()], t);
            p[c] -= 2.0 * eps;
            let fm = self.value(&p[..self.dim()], t);
            g[c] = (fp - fm) / (2.0 * eps);
        }
        g
    }

    /// Spatial Hessian. Defaults to central differences of the gradient.
    fn hessian(&self, x: &[f64], t: f64) -> [[f64; 3]; 3] {
        let mut h = [[0.0; 3]; 3];
        let eps = 1e-5;
        for c in 0..self.dim() {
            let mut p = [x[0], x[1], if x.len() > 2 { x[2] } else { 0.0 }];
            p[c] += eps;
            let gp = self.gradient(&p[..self.dim()], t);
            p[c] -= 2.0 * eps;
            let gm = self.gradient(&p[..self.dim()], t);
            for r in 0..self.dim() {
                h[r][c] = (gp[r] - gm[r]) / (2.0 * eps);
            }
        }
        h
    }

    /// Unit normal `grad phi / |grad phi|`, pointing from phase 2 into phase 1.
    fn normal(&self, x: &[f64], t: f64) -> [f64; 3] {
        let g = self.gradient(x, t);
        let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if n == 0.0 {
            return [0.0; 3];
        }
        [g[0] / n, g[1] / n, g[2] / n]
    }

    /// Mean curvature `div(grad phi / |grad phi|)` (sum of principal curvatures).
    fn curvature(&self, x: &[f64], t: f64) -> f64 {
        let d = self.dim();
        let g = self.gradient(x, t);
        let h = self.hessian(x, t);
        let g2: f64 = (0..d).map(|i| g[i] * g[i]).sum();
        if g2 == 0.0 {
            return 0.0;
        }
        let lap: f64 = (0..d).map(|i| h[i][i]).sum();
        let ghg: f64 = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| g[i] * h[i][j] * g[j]).sum();
        (lap * g2 - ghg) / g2.powf(1.5)
    }
}

/// `|x - c0 - v t|^2 - (r2 + a t)`: a translating sphere whose squared
/// radius changes linearly in time.
#[derive(Debug, Clone, PartialEq)]
pub struct MovingSphere {
    pub center: Vec<f64>,
    pub velocity: Vec<f64>,
    pub radius_sq: f64,
    pub radius_sq_rate: f64,
}

impl MovingSphere {
    pub fn center_at(&self, t: f64) -> [f64; 3] {
        let mut c = [0.0; 3];
        for i in 0..self.center.len() {
            c[i] = self.center[i] + self.velocity[i] * t;
        }
        c
    }

    pub fn radius_at(&self, t: f64) -> f64 {
        (self.radius_sq + self.radius_sq_rate * t).sqrt()
    }
}

impl LevelSetFunction for MovingSphere {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        let c = self.center_at(t);
        (0..self.dim()).map(|i| (x[i] - c[i]).powi(2)).sum::<f64>() - self.radius_sq - self.radius_sq_rate * t
    }

    fn gradient(&self, x: &[f64], t: f64) -> [f64; 3] {
        let c = self.center_at(t);
        let mut g = [0.0; 3];
        for i in 0..self.dim() {
            g[i] = 2.0 * (x[i] - c[i]);
        }
        g
    }

    fn hessian(&self, _x: &[f64], _t: f64) -> [[f64; 3]; 3] {
        let mut h = [[0.0; 3]; 3];
        for i in 0..self.dim() {
            h[i][i] = 2.0;
        }
        h
    }
}

/// `a . x + b t + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub a: Vec<f64>,
    pub b: f64,
    pub c: f64,
}

impl LevelSetFunction for Plane {
    fn dim(&self) -> usize {
        self.a.len()
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        (0..self.dim()).map(|i| self.a[i] * x[i]).sum::<f64>() + self.b * t + self.c
    }

    fn gradient(&self, _x: &[f64], _t: f64) -> [f64; 3] {
        let mut g = [0.0; 3];
        g[..self.dim()].copy_from_slice(&self.a);
        g
    }

    fn hessian(&self, _x: &[f64], _t: f64) -> [[f64; 3]; 3] {
        [[0.0; 3]; 3]
    }
}

/// Level set given by a closure (derivatives by finite differences).
pub struct FnLevelSet {
    pub dim: usize,
    pub f: Arc<dyn Fn(&[f64], f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for FnLevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnLevelSet").field("dim", &self.dim).finish()
    }
}

impl LevelSetFunction for FnLevelSet {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        (self.f)(x, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_curvature_and_normal() {
        let s = MovingSphere { center: vec![0.0, 0.0, 0.0], velocity: vec![0.0, 0.0, 1.0], radius_sq: 0.5, radius_sq_rate: 0.0 };
        let r = 0.5f64.sqrt();
        let x = [r, 0.0, 0.3];
        assert!(s.value(&x, 0.3).abs() < 1e-15);
        assert!((s.curvature(&x, 0.3) - 2.0 / r).abs() < 1e-12);
        let n = s.normal(&x, 0.3);
        assert!((n[0] - 1.0).abs() < 1e-15);
        let c = MovingSphere { center: vec![0.0, -0.25], velocity: vec![0.0, 0.5], radius_sq: 0.25, radius_sq_rate: 0.0 };
        assert!((c.curvature(&[0.0, 0.75], 1.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn finite_difference_defaults_match() {
        let s = MovingSphere { center: vec![0.1, -0.2], velocity: vec![0.3, 0.0], radius_sq: 0.25, radius_sq_rate: 0.25 };
        let arc = Arc::new(s.clone());
        let f = FnLevelSet { dim: 2, f: Arc::new(move |x, t| arc.value(x, t)) };
        let x = [0.4, 0.1];
        let (g1, g2) = (s.gradient(&x, 0.7), f.gradient(&x, 0.7));
        assert!((g1[0] - g2[0]).abs() < 1e-8 && (g1[1] - g2[1]).abs() < 1e-8);
        assert!((s.curvature(&x, 0.7) - f.curvature(&x, 0.7)).abs() < 1e-4);
    }
}
