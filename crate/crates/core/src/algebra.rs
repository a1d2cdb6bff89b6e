//! Finite-dimensional associative algebras by structure constants, with the
//! radical filtration. Used for endomorphism algebras of projective generators.

use crate::linalg::{span_basis, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis is linearly dependent")]
    Dependent,
    #[error("product of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra<S> {
    pub dim: usize,
    /// mult[i][j] = coordinates of b_i b_j.
    pub mult: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> FiniteAlgebra<S> {
    /// From a basis of concrete elements, a product and a flattening into
    /// coordinates of some ambient space.
    pub fn from_basis<T>(
        basis: &[T],
        product: impl Fn(&T, &T) -> T,
        flatten: impl Fn(&T) -> Vec<S>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let flat: Vec<Vec<S>> = basis.iter().map(&flatten).collect();
        let amb = flat.first().map_or(0, |v| v.len());
        let cols = Matrix::from_fn(amb, n, |r, c| flat[c][r].clone());
        if n > 0 && cols.rank() < n {
            return Err(AlgebraError::Dependent);
        }
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = flatten(&product(&basis[i], &basis[j]));
                mult[i][j] = cols.solve(&p).ok_or(AlgebraError::NotClosed(i, j))?;
            }
        }
        Ok(FiniteAlgebra { dim: n, mult })
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a.clone() * b;
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o = o.clone() + &(c.clone() * m);
                }
            }
        }
        out
    }

    /// Left multiplication by b_i as a matrix.
    fn left(&self, i: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |r, c| self.mult[i][c][r].clone())
    }

    fn trace(m: &Matrix<S>) -> S {
        (0..m.rows()).fold(S::zero(), |s, i| s + &m[(i, i)])
    }

    /// Jacobson radical as the kernel of the trace form tr(L_{xy}); valid in
    /// characteristic zero.
    pub fn radical(&self) -> Vec<Vec<S>> {
        let n = self.dim;
        if n == 0 {
            return Vec::new();
        }
        let tr: Vec<S> = (0..n).map(|k| Self::trace(&self.left(k))).collect();
        let gram = Matrix::from_fn(n, n, |i, j| self.mult[i][j].iter().zip(&tr).fold(S::zero(), |s, (a, t)| s + &(a.clone() * t)));
        gram.nullspace()
    }

    /// rad^k for k = 0, 1, … until it vanishes; dims are the radical layers.
    pub fn radical_powers(&self) -> Vec<Vec<Vec<S>>> {
        let n = self.dim;
        let id: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
        let rad = span_basis(&self.radical(), n);
        let mut out = vec![id, rad.clone()];
        let mut cur = rad.clone();
        while !cur.is_empty() {
            let prods: Vec<Vec<S>> = cur.iter().flat_map(|a| rad.iter().map(move |b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            let next = span_basis(&prods, n);
            if next.len() == cur.len() {
                // nilpotency failed; cannot happen for a radical
                break;
            }
            out.push(next.clone());
            cur = next;
        }
        out.pop();
        out
    }

    /// Dimensions of rad^k / rad^{k+1}.
    pub fn graded_dims(&self) -> Vec<usize> {
        let p = self.radical_powers();
        let mut dims: Vec<usize> = p.windows(2).map(|w| w[0].len() - w[1].len()).collect();
        if let Some(last) = p.last() {
            dims.push(last.len());
        }
        dims.retain(|&d| d > 0);
        dims
    }

    /// Whether xy = 0 for all x, y in the span of `a`.
    pub fn squares_to_zero(&self, a: &[Vec<S>]) -> bool {
        a.iter().all(|x| a.iter().all(|y| self.mul(x, y).iter().all(|c| c.is_zero())))
    }

    pub fn contains(&self, space: &[Vec<S>], x: &[S]) -> bool {
        Subspace::span(space, self.dim).contains(x)
    }
}
