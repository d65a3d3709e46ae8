//! Dense kernels for the tiny systems that show up per element
//! (at most 5x5: a space-time simplex in 3+1 dimensions).

pub const MAXN: usize = 5;

/// Solves `a x = b` in place (first `n` rows/cols) by partial pivoting.
/// Returns the determinant, or `None` if the matrix is numerically singular.
pub fn solve(n: usize, a: &mut [[f64; MAXN]; MAXN], b: &mut [f64; MAXN]) -> Option<f64> {
    let mut det = 1.0;
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(0.0f64, |m, (i, j)| m.max(a[i][j].abs()));
    if scale == 0.0 {
        return None;
    }
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-14 * scale {
            return None;
        }
        if p != c {
            a.swap(p, c);
            b.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f != 0.0 {
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    for c in (0..n).rev() {
        let mut s = b[c];
        for k in c + 1..n {
            s -= a[c][k] * b[k];
        }
        b[c] = s / a[c][c];
    }
    Some(det)
}

/// Determinant of the leading `n x n` block.
pub fn det(n: usize, a: &[[f64; MAXN]; MAXN]) -> f64 {
    let mut m = *a;
    let mut b = [0.0; MAXN];
    solve(n, &mut m, &mut b).unwrap_or(0.0)
}

/// `k`-dimensional measure of the simplex spanned by `pts[0..=k]` in `R^n`
/// (`|det| / n!` when `k = n`, else square root of the Gram determinant
/// over `k!`; the latter loses half the digits on slivers).
pub fn simplex_measure(n: usize, pts: &[[f64; 4]]) -> f64 {
    let k = pts.len() - 1;
    if k == n && k > 0 {
        let mut m = [[0.0; MAXN]; MAXN];
        for i in 0..k {
            for c in 0..n {
                m[i][c] = pts[i + 1][c] - pts[0][c];
            }
        }
        return det(k, &m).abs() / factorial(k);
    }
    let mut g = [[0.0; MAXN]; MAXN];
    for i in 0..k {
        for j in 0..=i {
            let mut s = 0.0;
            for c in 0..n {
                s += (pts[i + 1][c] - pts[0][c]) * (pts[j + 1][c] - pts[0][c]);
            }
            g[i][j] = s;
            g[j][i] = s;
        }
    }
    let d = if k == 0 { 1.0 } else { det(k, &g) };
    d.max(0.0).sqrt() / factorial(k)
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn dot(n: usize, a: &[f64], b: &[f64]) -> f64 {
    (0..n).map(|i| a[i] * b[i]).sum()
}

pub fn norm(n: usize, a: &[f64]) -> f64 {
    dot(n, a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_pivoted_system() {
        let mut a = [[0.0; MAXN]; MAXN];
        a[0] = [0.0, 2.0, 1.0, 0.0, 0.0];
        a[1] = [1.0, 1.0, 0.0, 0.0, 0.0];
        a[2] = [3.0, 0.0, 1.0, 0.0, 0.0];
        let mut b = [3.0, 2.0, 4.0, 0.0, 0.0];
        let d = solve(3, &mut a, &mut b).unwrap();
        assert!((d - (-5.0)).abs() < 1e-14, "{d}");
        for (got, want) in b.iter().zip([1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn measures() {
        let tri = [[0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]];
        assert!((simplex_measure(2, &tri) - 0.5).abs() < 1e-15);
        // unit right triangle lifted into 3D keeps its area
        let tri3 = [[0.0, 0.0, 5.0, 0.0], [1.0, 0.0, 5.0, 0.0], [0.0, 1.0, 5.0, 0.0]];
        assert!((simplex_measure(3, &tri3) - 0.5).abs() < 1e-15);
        let seg = [[0.0, 0.0, 0.0, 0.0], [3.0, 4.0, 0.0, 0.0]];
        assert!((simplex_measure(2, &seg) - 5.0).abs() < 1e-15);
    }
}
