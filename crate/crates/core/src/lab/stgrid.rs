//! Space-time grid on `(0,1) x (0,T)` with a straight moving interface
//! `x = x0 + speed * t`, used by the small dense studies.

use crate::geom::quadrature::simplex_rule;
use crate::Phase;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StGrid1d {
    pub nx: usize,
    pub nt: usize,
    pub t_final: f64,
    pub x0: f64,
    pub speed: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct StPoint1d {
    pub x: f64,
    pub t: f64,
    pub w: f64,
    pub phase: Phase,
    pub cx: usize,
    pub ct: usize,
}

/// `(index, value, derivative)`
pub type Shape = (usize, f64, f64);

impl StGrid1d {
    pub fn hx(&self) -> f64 {
        1.0 / self.nx as f64
    }

    pub fn ht(&self) -> f64 {
        self.t_final / self.nt as f64
    }

    /// `Neg` to the left of the interface.
    pub fn phase(&self, x: f64, t: f64) -> Phase {
        if x < self.x0 + self.speed * t {
            Phase::Neg
        } else {
            Phase::Pos
        }
    }

    /// Quadrature on every cell, split exactly along the interface; exact
    /// for polynomials of total degree `degree` on each piece.
    pub fn points(&self, degree: usize) -> Vec<StPoint1d> {
        let rule = simplex_rule(2, degree);
        let (hx, ht) = (self.hx(), self.ht());
        let mut out = Vec::new();
        for ct in 0..self.nt {
            for cx in 0..self.nx {
                let (xa, ta) = (cx as f64 * hx, ct as f64 * ht);
                let rect = [[xa, ta], [xa + hx, ta], [xa + hx, ta + ht], [xa, ta + ht]];
                for (sign, phase) in [(1.0, Phase::Pos), (-1.0, Phase::Neg)] {
                    let poly = clip(&rect, |p| sign * (p[0] - self.x0 - self.speed * p[1]));
                    for k in 1..poly.len().saturating_sub(1) {
                        let (a, b, c) = (poly[0], poly[k], poly[k + 1]);
                        let det = ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs();
                        if det == 0.0 {
                            continue;
                        }
                        for (p, &w) in rule.points.iter().zip(&rule.weights) {
                            let x = a[0] + p[0] * (b[0] - a[0]) + p[1] * (c[0] - a[0]);
                            let t = a[1] + p[0] * (b[1] - a[1]) + p[1] * (c[1] - a[1]);
                            out.push(StPoint1d { x, t, w: w * det, phase, cx, ct });
                        }
                    }
                }
            }
        }
        out
    }

    /// Number of interior spatial hat functions.
    pub fn nsp(&self) -> usize {
        self.nx - 1
    }

    /// Interior P1 hats on cell `cx`.
    pub fn space_shapes(&self, q: &StPoint1d, out: &mut Vec<Shape>) {
        out.clear();
        let h = self.hx();
        let s = q.x / h - q.cx as f64;
        if q.cx > 0 {
            out.push((q.cx - 1, 1.0 - s, -1.0 / h));
        }
        if q.cx + 1 < self.nx {
            out.push((q.cx, s, 1.0 / h));
        }
    }

    /// Continuous P1 in time vanishing at `t = 0`: one function per node
    /// `1..=nt`.
    pub fn trial_time_shapes(&self, q: &StPoint1d, out: &mut Vec<Shape>) {
        out.clear();
        let h = self.ht();
        let s = q.t / h - q.ct as f64;
        if q.ct > 0 {
            out.push((q.ct - 1, 1.0 - s, -1.0 / h));
        }
        out.push((q.ct, s, 1.0 / h));
    }

    /// Discontinuous P1 in time, two end-point Lagrange functions per interval.
    pub fn test_time_shapes(&self, q: &StPoint1d, out: &mut Vec<Shape>) {
        out.clear();
        let h = self.ht();
        let s = q.t / h - q.ct as f64;
        out.push((2 * q.ct, 1.0 - s, -1.0 / h));
        out.push((2 * q.ct + 1, s, 1.0 / h));
    }
}

/// Sutherland-Hodgman clip of a convex polygon to `{f >= 0}` for affine `f`.
fn clip(poly: &[[f64; 2]], f: impl Fn(&[f64; 2]) -> f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fa, fb) = (f(&a), f(&b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let s = fa / (fa - fb);
            out.push([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]);
        }
    }
    out
}
