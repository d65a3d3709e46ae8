//! Compressed sparse column storage assembled from (row, col, value) triplets.

/// CSC matrix with sorted, duplicate-free row indices per column.
#[derive(Debug, Clone, PartialEq)]
pub struct CscMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub col_ptr: Vec<usize>,
    pub row_idx: Vec<usize>,
    pub values: Vec<f64>,
}

pub type Triplet = (u32, u32, f64);

impl CscMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, col_ptr: vec![0; ncols + 1], row_idx: Vec::new(), values: Vec::new() }
    }

    /// Sums duplicates; entries are summed in input order, so the result is
    /// deterministic for a deterministic triplet sequence.
    pub fn from_triplets(nrows: usize, ncols: usize, trip: &[Triplet]) -> Self {
        let mut col_ptr = vec![0usize; ncols + 1];
        for &(r, c, _) in trip {
            debug_assert!((r as usize) < nrows && (c as usize) < ncols);
            col_ptr[c as usize + 1] += 1;
        }
        for c in 0..ncols {
            col_ptr[c + 1] += col_ptr[c];
        }
        let mut next = col_ptr.clone();
        let mut rows = vec![0u32; trip.len()];
        let mut vals = vec![0.0; trip.len()];
        for &(r, c, v) in trip {
            let p = &mut next[c as usize];
            rows[*p] = r;
            vals[*p] = v;
            *p += 1;
        }
        let mut out_ptr = vec![0usize; ncols + 1];
        let mut row_idx = Vec::with_capacity(trip.len() / 2);
        let mut values = Vec::with_capacity(trip.len() / 2);
        let mut perm: Vec<usize> = Vec::new();
        for c in 0..ncols {
            let (a, b) = (col_ptr[c], col_ptr[c + 1]);
            perm.clear();
            perm.extend(a..b);
            // stable: equal rows keep input order
            perm.sort_by_key(|&i| rows[i]);
            let mut last: Option<u32> = None;
            for &i in &perm {
                if last == Some(rows[i]) {
                    *values.last_mut().unwrap() += vals[i];
                } else {
                    row_idx.push(rows[i] as usize);
                    values.push(vals[i]);
                    last = Some(rows[i]);
                }
            }
            out_ptr[c + 1] = row_idx.len();
        }
        Self { nrows, ncols, col_ptr: out_ptr, row_idx, values }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let rows = &self.row_idx[self.col_ptr[c]..self.col_ptr[c + 1]];
        match rows.binary_search(&r) {
            Ok(i) => self.values[self.col_ptr[c] + i],
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.ncols).flat_map(move |c| {
            (self.col_ptr[c]..self.col_ptr[c + 1]).map(move |i| (self.row_idx[i], c, self.values[i]))
        })
    }

    /// `y += alpha * A x`.
    pub fn mul_add(&self, alpha: f64, x: &[f64], y: &mut [f64]) {
        for c in 0..self.ncols {
            let xc = alpha * x[c];
            if xc == 0.0 {
                continue;
            }
            for i in self.col_ptr[c]..self.col_ptr[c + 1] {
                y[self.row_idx[i]] += self.values[i] * xc;
            }
        }
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.nrows];
        self.mul_add(1.0, x, &mut y);
        y
    }

    pub fn transpose(&self) -> Self {
        let trip: Vec<Triplet> = self.iter().map(|(r, c, v)| (c as u32, r as u32, v)).collect();
        Self::from_triplets(self.ncols, self.nrows, &trip)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.ncols]; self.nrows];
        for (r, c, v) in self.iter() {
            d[r][c] = v;
        }
        d
    }

    /// Largest absolute entry of `A - B` (same shape).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let trip: Vec<Triplet> = self
            .iter()
            .map(|(r, c, v)| (r as u32, c as u32, v))
            .chain(other.iter().map(|(r, c, v)| (r as u32, c as u32, -v)))
            .collect();
        Self::from_triplets(self.nrows, self.ncols, &trip).values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Matrix Market coordinate text (1-based indices, full precision).
    pub fn write_coo<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
        writeln!(w, "{} {} {}", self.nrows, self.ncols, self.nnz())?;
        for (r, c, v) in self.iter() {
            writeln!(w, "{} {} {:e}", r + 1, c + 1, v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_duplicates_and_sorts() {
        let a = CscMatrix::from_triplets(3, 2, &[(2, 0, 1.0), (0, 0, 2.0), (2, 0, 3.0), (1, 1, -1.0)]);
        assert_eq!(a.col_ptr, vec![0, 2, 3]);
        assert_eq!(a.row_idx, vec![0, 2, 1]);
        assert_eq!(a.values, vec![2.0, 4.0, -1.0]);
        assert_eq!(a.get(2, 0), 4.0);
        assert_eq!(a.get(1, 0), 0.0);
        assert_eq!(a.mul(&[1.0, 2.0]), vec![2.0, -2.0, 4.0]);
        let t = a.transpose();
        assert_eq!(t.get(0, 2), 4.0);
        assert_eq!(t.transpose(), a);
        assert_eq!(a.max_abs_diff(&a), 0.0);
    }

    #[test]
    fn coo_text_round_trips_values() {
        let a = CscMatrix::from_triplets(2, 3, &[(1, 2, 0.1), (0, 0, -3.5)]);
        let mut buf = Vec::new();
        a.write_coo(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "2 3 2");
        let mut trip = Vec::new();
        for l in &lines[2..] {
            let f: Vec<&str> = l.split_whitespace().collect();
            trip.push((f[0].parse::<u32>().unwrap() - 1, f[1].parse::<u32>().unwrap() - 1, f[2].parse::<f64>().unwrap()));
        }
        assert_eq!(CscMatrix::from_triplets(2, 3, &trip), a);
    }
}
