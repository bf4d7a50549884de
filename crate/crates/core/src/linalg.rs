//! Small exact linear algebra over a [`Scalar`] field.

use std::fmt;

use crate::scalar::Scalar;

/// A square matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.data[i * n + j].clone();
                    out.data[i * n + j] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.n)
            .map(|i| dot(&self.data[i * self.n..(i + 1) * self.n], v))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn determinant(&self) -> F {
        determinant(self.rows())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.n.max(1)))
            .finish()
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn scale<F: Scalar>(a: &[F], k: &F) -> Vec<F> {
    a.iter().map(|x| x.clone() * k.clone()).collect()
}

pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn neg<F: Scalar>(a: &[F]) -> Vec<F> {
    a.iter().map(|x| -x.clone()).collect()
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce<F: Scalar>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let m = rows.len();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        rows[r] = scale(&rows[r], &inv);
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                let scaled = scale(&rows[r], &k);
                rows[i] = sub(&rows[i], &scaled);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank<F: Scalar>(rows: &[Vec<F>]) -> usize {
    let mut rows = rows.to_vec();
    row_reduce(&mut rows).len()
}

/// A basis of `{x : rows · x = 0}`.
pub fn nullspace<F: Scalar>(rows: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut rows = rows.to_vec();
    let pivots = row_reduce(&mut rows);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![F::zero(); cols];
        x[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -rows[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

pub fn determinant<F: Scalar>(mut rows: Vec<Vec<F>>) -> F {
    let n = rows.len();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let pivot = rows[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if !rows[i][c].is_zero() {
                let k = rows[i][c].clone() / pivot.clone();
                let scaled = scale(&rows[c], &k);
                rows[i] = sub(&rows[i], &scaled);
            }
        }
    }
    det
}

/// Solves `Σ λ_i columns[i] = target` when the columns are independent.
pub fn solve_in_span<F: Scalar>(columns: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let k = columns.len();
    let n = target.len();
    let mut rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut r: Vec<F> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| rows[i][k].clone()).collect())
}
