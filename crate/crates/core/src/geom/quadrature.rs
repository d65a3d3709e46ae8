//! Gauss rules: Gauss-Jacobi on `[0,1]` via Golub-Welsch, and collapsed
//! (Duffy) product rules on simplices of any dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

/// `m`-point Gauss rule for `int_0^1 f(x) (1-x)^alpha dx`, exact for degree `2m-1`.
pub fn gauss_jacobi01(m: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let (a, b) = (alpha, 0.0f64);
    let mut j = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        j[(k, k)] = if k == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
        if k + 1 < m {
            let n = kf + 1.0;
            let s = 2.0 * n + a + b;
            let off = (4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0))).sqrt();
            j[(k, k + 1)] = off;
            j[(k + 1, k)] = off;
        }
    }
    // int_{-1}^{1} (1-x)^a dx = 2^{a+1}/(a+1); mapping to [0,1] divides by 2^{a+1}
    let mu0 = 1.0 / (a + 1.0);
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| ((eig.eigenvalues[i] + 1.0) / 2.0, mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs.into_iter().unzip()
}

pub fn gauss_legendre01(m: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_jacobi01(m, 0.0)
}

/// Rule on the reference simplex `{xi >= 0, sum xi <= 1}` in `R^n`;
/// weights sum to `1/n!`.
#[derive(Debug, Clone)]
pub struct SimplexRule {
    pub n: usize,
    pub degree: usize,
    pub points: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
}

impl SimplexRule {
    fn build(n: usize, degree: usize) -> Self {
        if n == 0 {
            return Self { n, degree, points: vec![[0.0; 4]], weights: vec![1.0] };
        }
        let m = degree / 2 + 1;
        let lines: Vec<_> = (0..n).map(|i| gauss_jacobi01(m, (n - 1 - i) as f64)).collect();
        let mut points = Vec::with_capacity(m.pow(n as u32));
        let mut weights = Vec::with_capacity(points.capacity());
        let mut idx = vec![0usize; n];
        loop {
            let mut p = [0.0; 4];
            let mut w = 1.0;
            let mut rest = 1.0;
            for i in 0..n {
                let (ref xs, ref ws) = lines[i];
                p[i] = rest * xs[idx[i]];
                rest *= 1.0 - xs[idx[i]];
                w *= ws[idx[i]];
            }
            points.push(p);
            weights.push(w);
            let mut k = n;
            loop {
                if k == 0 {
                    return Self { n, degree, points, weights };
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Cached simplex rule of dimension `n` exact for total degree `degree`.
pub fn simplex_rule(n: usize, degree: usize) -> Arc<SimplexRule> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SimplexRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard.entry((n, degree)).or_insert_with(|| Arc::new(SimplexRule::build(n, degree))).clone()
}

/// Cached Gauss-Legendre rule on `[0,1]` exact for `degree`.
pub fn line_rule(degree: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard.entry(degree).or_insert_with(|| Arc::new(gauss_legendre01(degree / 2 + 1))).clone()
}

/// Polynomial exactness requested for a space-time integrand: degree
/// `space` in `x` and `time` in `t` on uncut prisms; cut pieces use a
/// simplex rule of total degree `cut`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    pub space: usize,
    pub time: usize,
    pub cut: usize,
}

impl QuadOrder {
    /// Tensor degrees with `cut = space + time`.
    pub fn new(space: usize, time: usize) -> Self {
        Self { space, time, cut: space + time }
    }

    pub fn with_cut(self, cut: usize) -> Self {
        Self { cut, ..self }
    }

    pub fn total(&self) -> usize {
        self.cut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_three_points() {
        let (x, w) = gauss_legendre01(3);
        let s = (0.6f64).sqrt() / 2.0;
        let want = [0.5 - s, 0.5, 0.5 + s];
        for i in 0..3 {
            assert!((x[i] - want[i]).abs() < 1e-14);
        }
        assert!((w[1] - 4.0 / 9.0).abs() < 1e-14);
        assert!((w[0] - 5.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        // int_0^1 x^k (1-x)^a dx = k! a! / (k+a+1)!
        for a in 0..4 {
            for m in 1..6 {
                let (x, w) = gauss_jacobi01(m, a as f64);
                for k in 0..2 * m {
                    let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                    let want = crate::small::factorial(k) * crate::small::factorial(a)
                        / crate::small::factorial(k + a + 1);
                    assert!((got - want).abs() < 1e-13 * want.max(1e-3), "a={a} m={m} k={k}");
                }
            }
        }
    }

    /// `int_simplex prod x_i^{k_i} = prod k_i! / (n + sum k)!`.
    #[test]
    fn simplex_monomials_exact() {
        for n in 1..=4 {
            for deg in 0..=7 {
                let rule = simplex_rule(n, deg);
                assert!(rule.weights.iter().all(|&w| w > 0.0));
                let mut exps = vec![0usize; n];
                loop {
                    let tot: usize = exps.iter().sum();
                    if tot <= deg {
                        let got: f64 = rule
                            .points
                            .iter()
                            .zip(&rule.weights)
                            .map(|(p, w)| w * (0..n).map(|i| p[i].powi(exps[i] as i32)).product::<f64>())
                            .sum();
                        let want = exps.iter().map(|&k| crate::small::factorial(k)).product::<f64>()
                            / crate::small::factorial(n + tot);
                        assert!((got - want).abs() < 1e-14, "n={n} deg={deg} exps={exps:?}");
                    }
                    let mut k = 0;
                    loop {
                        if k == n {
                            break;
                        }
                        exps[k] += 1;
                        if exps[k] <= deg {
                            break;
                        }
                        exps[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
            }
        }
    }
}
