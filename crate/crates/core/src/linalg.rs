//! Dense and sparse exact linear algebra over the Gaussian rationals.

use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as Q;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &self[(r, j)];
                    self[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ x : self · x = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::domain("matrix is singular"));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        Ok(det)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Q> {
        let sub = Matrix::from_rows(
            rows.iter().map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect()).collect(),
        )?;
        if rows.is_empty() {
            return Ok(Q::one());
        }
        sub.det()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

pub type SparseVec = BTreeMap<usize, Q>;

pub fn sparse_axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    for (k, v) in x {
        let d = a * v;
        let e = y.entry(*k).or_insert_with(Q::zero);
        *e += &d;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Hermitian product `Σ conj(a_i) b_i` with optional diagonal weights.
pub fn sparse_inner(a: &SparseVec, b: &SparseVec, weight: impl Fn(usize) -> Q) -> Q {
    let mut acc = Q::zero();
    let (small, large, flip) = if a.len() <= b.len() { (a, b, false) } else { (b, a, true) };
    for (k, x) in small {
        if let Some(y) = large.get(k) {
            let t = if flip { &y.conj() * x } else { &x.conj() * y };
            acc += &(&t * &weight(*k));
        }
    }
    acc
}

/// Incrementally maintained fully reduced echelon basis of a subspace of
/// sparse vectors. Each stored row has a distinct pivot coordinate, and its
/// entry at every other row's pivot is zero, so coordinates of a member of
/// the span are read off at the pivots.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: BTreeMap<usize, usize>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (&p, &row) in &self.pivot_row {
            if let Some(c) = r.get(&p).cloned() {
                sparse_axpy(&mut r, &(-c), &self.rows[row]);
            }
        }
        r
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("leading entry is nonzero");
        let r: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        for row in &mut self.rows {
            if let Some(c) = row.get(&p).cloned() {
                sparse_axpy(row, &(-c), &r);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` in the stored rows, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(Q::zero)).collect();
        let mut check = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            if !c.is_zero() {
                sparse_axpy(&mut check, &(-c.clone()), row);
            }
        }
        check.is_empty().then_some(coords)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det().unwrap(), Q::from_int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
        let p = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(p.det().unwrap(), Q::from_int(-1));
    }

    #[test]
    fn minor_of_rows_and_cols() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(a.minor(&[0, 2], &[1, 2]).unwrap(), Q::from_int(2 * 10 - 3 * 8));
    }

    #[test]
    fn echelon_span_coordinates() {
        let mut s = EchelonSpan::new();
        let v1: SparseVec = [(0, Q::from_int(1)), (2, Q::from_int(1))].into_iter().collect();
        let v2: SparseVec = [(1, Q::from_int(2)), (2, Q::from_int(1))].into_iter().collect();
        assert!(s.insert(&v1));
        assert!(s.insert(&v2));
        let mut sum = v1.clone();
        sparse_axpy(&mut sum, &Q::from_int(3), &v2);
        assert!(!s.insert(&sum));
        let c = s.coordinates(&sum).unwrap();
        let mut back = SparseVec::new();
        for (row, x) in s.rows().iter().zip(&c) {
            sparse_axpy(&mut back, x, row);
        }
        assert_eq!(back, sum);
        let e2: SparseVec = [(2, Q::from_int(1))].into_iter().collect();
        assert!(s.coordinates(&e2).is_none());
    }
}
