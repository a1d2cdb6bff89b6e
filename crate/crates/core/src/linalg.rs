//! Dense exact linear algebra: row reduction, kernels, solving, subspaces.
//!
//! Subspaces are carried as lists of row vectors; `span_basis` gives the
//! reduced echelon basis, which is canonical and so comparable with `==`.

use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b;
                        out[(i, j)] = out[(i, j)].clone() + &t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &S) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = S::one() / &self[(r, c)];
            for j in c..self.cols {
                let v = self[(r, j)].clone() * &inv;
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
                    let t = f.clone() * &self[(r, j)];
                    self[(i, j)] = self[(i, j)].clone() - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
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
        self.rref().1.len()
    }

    /// Basis of {v : self·v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of {u : u·self = 0}.
    pub fn left_nullspace(&self) -> Vec<Vec<S>> {
        self.transpose().nullspace()
    }

    /// One solution of self·x = b, if any.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Canonical basis (reduced echelon rows) of the span of `vecs` in S^dim.
pub fn span_basis<S: Scalar>(vecs: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vecs.to_vec(), dim).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_dim<S: Scalar>(vecs: &[Vec<S>], dim: usize) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vecs.to_vec(), dim).rank()
}

pub fn in_span<S: Scalar>(basis: &[Vec<S>], v: &[S], dim: usize) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(&all, dim) == span_dim(basis, dim)
}

pub fn subspace_sum<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    span_basis(&all, dim)
}

/// Intersection of two spans, via the kernel of [A; −B]ᵀ.
pub fn subspace_intersection<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    let a = span_basis(a, dim);
    let b = span_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut rows = a.clone();
    rows.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_rows(rows, dim).transpose();
    let kernel = m.nullspace();
    let vecs: Vec<Vec<S>> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![S::zero(); dim];
            for (coef, row) in k.iter().zip(&a) {
                if coef.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() + &(coef.clone() * y);
                }
            }
            v
        })
        .collect();
    span_basis(&vecs, dim)
}

/// Annihilator {u : u·v = 0 for all v in span}.
pub fn annihilator<S: Scalar>(vecs: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    if vecs.is_empty() {
        return (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
    }
    Matrix::from_rows(vecs.to_vec(), dim).nullspace()
}

pub fn same_span<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], dim: usize) -> bool {
    span_basis(a, dim) == span_basis(b, dim)
}

/// A subspace of S^dim held by its reduced echelon basis.
///
/// Coordinates along the basis are the pivot entries; quotient coordinates
/// are the non-pivot entries after reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    pub ambient: usize,
    pub basis: Vec<Vec<S>>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(vecs: &[Vec<S>], ambient: usize) -> Self {
        if vecs.is_empty() || ambient == 0 {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(vecs.to_vec(), ambient).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    /// v minus its component along the basis, read at the pivots.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - &(c.clone() * y);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of v (assumed inside) along the basis.
    pub fn coords(&self, v: &[S]) -> Vec<S> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_p[i]).collect()
    }

    /// Coordinates of the class of v in the quotient, along the standard
    /// vectors at non-pivot positions.
    pub fn quotient_coords(&self, v: &[S]) -> Vec<S> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i].clone()).collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(&all, self.ambient)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::span(&subspace_intersection(&self.basis, &other.basis, self.ambient), self.ambient)
    }

    /// Orthogonal complement for the standard pairing.
    pub fn perp(&self) -> Self {
        Self::span(&annihilator(&self.basis, self.ambient), self.ambient)
    }

    /// Preimage of a quotient subspace (given in quotient coordinates).
    pub fn lift(&self, quotient_sub: &Self) -> Self {
        let comp = self.complement_indices();
        let mut vecs = self.basis.clone();
        for q in &quotient_sub.basis {
            let mut v = vec![S::zero(); self.ambient];
            for (c, &i) in q.iter().zip(&comp) {
                v[i] = c.clone();
            }
            vecs.push(v);
        }
        Self::span(&vecs, self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        let c = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), c)
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.nullspace();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| *x == q(0)));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[q(0), q(1)]).is_none());
        assert_eq!(m(&[&[4]]).inverse().unwrap()[(0, 0)], qf(1, 4));
    }

    #[test]
    fn subspaces() {
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let b = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let i = subspace_intersection(&a, &b, 3);
        assert_eq!(i, vec![vec![q(0), q(1), q(0)]]);
        assert_eq!(subspace_sum(&a, &b, 3).len(), 3);
        assert_eq!(annihilator(&a, 3), vec![vec![q(0), q(0), q(1)]]);
        assert!(in_span(&a, &[q(3), q(-1), q(0)], 3));
    }
}
