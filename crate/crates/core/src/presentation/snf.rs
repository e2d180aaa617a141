use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn try_from_rows(rows: Vec<Vec<i64>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        rows.iter().all(|r| r.len() == cols).then(|| Self::from_rows(rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Bilinear pairing `xᵀ · self · y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        assert!(x.len() == self.rows && y.len() == self.cols, "vector length mismatch");
        let mut total = 0;
        for i in 0..self.rows {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.cols {
                total += x[i] * self.get(i, j) * y[j];
            }
        }
        total
    }

    /// `self` acting on a column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: i64) {
        for j in 0..self.cols {
            let v = self.get(source, j);
            self.data[target * self.cols + j] += factor * v;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: i64) {
        for i in 0..self.rows {
            let v = self.get(i, source);
            self.data[i * self.cols + target] += factor * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.d.diagonal_entries().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = d.get(i, j).abs();
            if a != 0 && best.is_none_or(|(_, _, b)| a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_nonzero(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t) / pivot;
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = d.get(t, j) / pivot;
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t, pivot.abs());
                for i in t + 1..r {
                    let a = d.get(i, t).abs();
                    if a != 0 && a < best.2 {
                        best = (i, t, a);
                    }
                }
                for j in t + 1..c {
                    let a = d.get(t, j).abs();
                    if a != 0 && a < best.2 {
                        best = (t, j, a);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| d.get(i, j) % pivot != 0));
            match offender {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Determinant by fraction-free Gaussian elimination. Panics if not square.
pub fn determinant(m: &IntMatrix) -> i128 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U M V = D for {m}");
        assert_eq!(determinant(&s.u).abs(), 1);
        assert_eq!(determinant(&s.v).abs(), 1);
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(s.d, IntMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn zero_row_vector() {
        let s = check(&IntMatrix::zeros(1, 3));
        assert_eq!(s.d, IntMatrix::zeros(1, 3));
    }

    #[test]
    fn negative_and_rectangular() {
        let s = check(&IntMatrix::from_rows(vec![vec![-4, 6, 2], vec![2, -2, 8]]));
        assert_eq!(s.d.diagonal_entries(), vec![2, 2]);
        let s = check(&IntMatrix::from_rows(vec![vec![0, 0], vec![0, -5], vec![0, 0]]));
        assert_eq!(s.d.diagonal_entries(), vec![5, 0]);
    }

    #[test]
    fn empty_matrices() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&IntMatrix::from_rows(vec![vec![2, 1], vec![7, 4]])), 1);
        assert_eq!(determinant(&IntMatrix::from_rows(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]])), -2);
    }
}
