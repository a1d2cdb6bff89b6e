//! Chevalley bases from a faithful representation.
//!
//! The simple generators act on the fundamental module L(ω₁), built by the
//! layer construction. Root vectors for nonsimple β = γ + α_i (i minimal):
//! e_β = [e_i, e_γ]/(p+1), f_β = −[f_i, f_γ]/(p+1), where p is the largest
//! integer with γ − pα_i a root. Structure constants are then read off
//! the matrix brackets and checked to be integers.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cat_o::construct::irreducible;
use crate::cat_o::module::WeightModule;
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, Weight};
use crate::scalar::Scalar;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    F(usize),
    H(usize),
    E(usize),
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    /// bracket[a][b] = [x_a, x_b] as sparse integer combination.
    pub bracket: Vec<Vec<Vec<(usize, i64)>>>,
    /// Matrices of the basis in the defining representation.
    pub rep: Vec<Matrix<Q>>,
}

impl LieAlgebra {
    pub fn new(rs: &RootSystem) -> LieAlgebra {
        let r = rs.rank;
        let mut omega = vec![0; r];
        omega[0] = 1;
        let l: WeightModule<Q> = irreducible(&rs.cartan, &omega, None);
        let (ei, fi) = full_generators(&l);
        let n = l.total_dim();
        let hi: Vec<Matrix<Q>> = (0..r)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                let mut off = 0;
                for (w, &d) in l.weights.iter().zip(&l.dims) {
                    for k in 0..d {
                        m[(off + k, off + k)] = Q::from_int(w[i]);
                    }
                    off += d;
                }
                m
            })
            .collect();
        let m = rs.num_positive();
        let mut e: Vec<Option<Matrix<Q>>> = vec![None; m];
        let mut f: Vec<Option<Matrix<Q>>> = vec![None; m];
        for (k, beta) in rs.positive_roots.iter().enumerate() {
            if let Some(i) = (0..r).find(|&i| *beta == rs.simple_root(i)) {
                e[k] = Some(ei[i].clone());
                f[k] = Some(fi[i].clone());
                continue;
            }
            let (i, g, p) = root_recipe(rs, k).expect("nonsimple root has a simple predecessor");
            let inv = Q::from_frac(1, p + 1);
            let eg = e[g].as_ref().unwrap();
            let fg = f[g].as_ref().unwrap();
            e[k] = Some(commutator(&ei[i], eg).scale(&inv));
            f[k] = Some(commutator(&fi[i], fg).scale(&-inv));
        }
        let mut rep: Vec<Matrix<Q>> = f.into_iter().map(Option::unwrap).collect();
        rep.extend(hi);
        rep.extend(e.into_iter().map(Option::unwrap));

        let dim = rep.len();
        let flat: Vec<Vec<Q>> = rep.iter().map(flatten).collect();
        // a set of matrix positions on which the basis is independent
        let (_, pos) = Matrix::from_rows(flat.clone(), n * n).rref();
        let sq = Matrix::from_fn(dim, dim, |row, col| flat[col][pos[row]].clone());
        let sq_inv = sq.inverse().expect("basis independent");
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = flatten(&commutator(&rep[a], &rep[b]));
                let rhs: Vec<Q> = pos.iter().map(|&p| c[p].clone()).collect();
                let coef = sq_inv.mul_vec(&rhs);
                // verify the expansion on every entry
                let mut back = vec![Q::zero(); n * n];
                for (k, x) in coef.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (y, z) in back.iter_mut().zip(&flat[k]) {
                        *y = y.clone() + &(x.clone() * z);
                    }
                }
                assert_eq!(back, c, "bracket outside the span of the basis");
                bracket[a][b] = coef
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.to_i64().expect("integral structure constant")))
                    .collect();
            }
        }
        LieAlgebra { rs: rs.clone(), bracket, rep }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_roots(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn dim(&self) -> usize {
        2 * self.num_roots() + self.rank()
    }

    pub fn f(&self, k: usize) -> usize {
        k
    }

    pub fn h(&self, i: usize) -> usize {
        self.num_roots() + i
    }

    pub fn e(&self, k: usize) -> usize {
        self.num_roots() + self.rank() + k
    }

    pub fn kind(&self, a: usize) -> Basis {
        let (m, r) = (self.num_roots(), self.rank());
        if a < m {
            Basis::F(a)
        } else if a < m + r {
            Basis::H(a - m)
        } else {
            Basis::E(a - m - r)
        }
    }

    /// Position of α_i among the positive roots.
    pub fn simple_index(&self, i: usize) -> usize {
        self.rs.root_index(&self.rs.simple_root(i)).unwrap()
    }

    /// Weight of a basis element, fundamental coordinates.
    pub fn weight(&self, a: usize) -> Weight {
        match self.kind(a) {
            Basis::F(k) => self.rs.root_weight(&self.rs.positive_roots[k]).into_iter().map(|x| -x).collect(),
            Basis::H(_) => vec![0; self.rank()],
            Basis::E(k) => self.rs.root_weight(&self.rs.positive_roots[k]),
        }
    }

    pub fn mono_weight(&self, mono: &[u32]) -> Weight {
        let mut w = vec![0; self.rank()];
        for (a, &k) in mono.iter().enumerate() {
            if k > 0 {
                for (x, y) in w.iter_mut().zip(self.weight(a)) {
                    *x += k as i64 * y;
                }
            }
        }
        w
    }

    pub fn name(&self, a: usize) -> String {
        match self.kind(a) {
            Basis::F(k) => format!("f{}", root_label(&self.rs.positive_roots[k])),
            Basis::H(i) => format!("h{}", i + 1),
            Basis::E(k) => format!("e{}", root_label(&self.rs.positive_roots[k])),
        }
    }

    /// Bracket of two sparse combinations.
    pub fn bracket_vec<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa.clone() * yb;
                for &(k, n) in &self.bracket[a][b] {
                    out[k] = out[k].clone() + &(c.clone() * S::from_int(n));
                }
            }
        }
        out
    }

    pub fn unit<S: Scalar>(&self, a: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[a] = S::one();
        v
    }

    /// N_{α,β} with [e_α, e_β] = N e_{α+β}; zero when α+β is not a root.
    pub fn n_coefficient(&self, a: usize, b: usize) -> i64 {
        let sum: Vec<i64> = self.rs.positive_roots[a].iter().zip(&self.rs.positive_roots[b]).map(|(x, y)| x + y).collect();
        let Some(c) = self.rs.root_index(&sum) else { return 0 };
        let target = self.e(c);
        self.bracket[self.e(a)][self.e(b)].iter().find(|(k, _)| *k == target).map_or(0, |x| x.1)
    }

    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                // antisymmetry
                let ab: Vec<BigRational> = self.bracket_vec(&self.unit(a), &self.unit(b));
                let ba: Vec<BigRational> = self.bracket_vec(&self.unit(b), &self.unit(a));
                if ab.iter().zip(&ba).any(|(x, y)| x.clone() + y != Q::zero()) {
                    return false;
                }
                for c in 0..d {
                    let uc: Vec<Q> = self.unit(c);
                    let bc = self.bracket_vec(&self.unit(b), &uc);
                    let ca = self.bracket_vec(&uc, &self.unit(a));
                    let t1 = self.bracket_vec(&self.unit(a), &bc);
                    let t2 = self.bracket_vec(&self.unit(b), &ca);
                    let t3 = self.bracket_vec(&uc, &ab);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x.clone() + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// e_β (or f_β when `positive` is false) as a noncommutative polynomial in
    /// the simple generators; words are operator products, leftmost applied last.
    pub fn root_word(&self, k: usize, positive: bool) -> Vec<(Vec<usize>, Q)> {
        let Some((i, g, p)) = root_recipe(&self.rs, k) else {
            let i = (0..self.rank()).find(|&i| self.simple_index(i) == k).expect("simple root");
            return vec![(vec![i], Q::from_int(1))];
        };
        let inv = if positive { Q::from_frac(1, p + 1) } else { Q::from_frac(-1, p + 1) };
        let mut out: Vec<(Vec<usize>, Q)> = Vec::new();
        for (w, c) in self.root_word(g, positive) {
            let mut left = vec![i];
            left.extend(&w);
            let mut right = w.clone();
            right.push(i);
            out.push((left, c.clone() * &inv));
            out.push((right, -(c * &inv)));
        }
        out
    }

    /// Coroot h_β as a combination of the h_i.
    pub fn coroot(&self, k: usize) -> Vec<Q> {
        let beta = &self.rs.positive_roots[k];
        let db = self.rs.inner(beta, beta) / 2;
        (0..self.rank()).map(|i| Q::from_frac(beta[i] * self.rs.symmetrizer[i], db)).collect()
    }
}

pub fn root_label(beta: &[i64]) -> String {
    let parts: Vec<String> = beta
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("{}", i + 1) } else { format!("{}*{}", c, i + 1) })
        .collect();
    format!("[{}]", parts.join("+"))
}

/// For nonsimple β_k: (i, γ, p) with β = γ + α_i, i minimal, and p the
/// largest integer with γ − pα_i a root.
pub fn root_recipe(rs: &RootSystem, k: usize) -> Option<(usize, usize, i64)> {
    let beta = &rs.positive_roots[k];
    if (0..rs.rank).any(|i| *beta == rs.simple_root(i)) {
        return None;
    }
    let (i, g) = (0..rs.rank).find_map(|i| {
        let mut gamma = beta.clone();
        gamma[i] -= 1;
        rs.root_index(&gamma).map(|g| (i, g))
    })?;
    let mut p = 0;
    let mut c = rs.positive_roots[g].clone();
    loop {
        c[i] -= 1;
        if rs.root_index(&c).is_some() {
            p += 1;
        } else {
            break;
        }
    }
    Some((i, g, p))
}

fn commutator(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    a.mul(b).sub(&b.mul(a))
}

fn flatten(m: &Matrix<Q>) -> Vec<Q> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Full matrices of e_i and f_i on a complete module, weights in stored order.
pub fn full_generators<S: Scalar>(l: &WeightModule<S>) -> (Vec<Matrix<S>>, Vec<Matrix<S>>) {
    let n = l.total_dim();
    let mut offs = Vec::new();
    let mut acc = 0;
    for &d in &l.dims {
        offs.push(acc);
        acc += d;
    }
    let build = |g: crate::cat_o::module::Gen| -> Matrix<S> {
        let mut m = Matrix::zeros(n, n);
        for wi in 0..l.weights.len() {
            let t = l.target(g, &l.weights[wi]);
            let (Some(ti), Some(mx)) = (l.idx(&t), l.matrix(g, wi)) else { continue };
            for a in 0..mx.rows() {
                for b in 0..mx.cols() {
                    m[(offs[ti] + a, offs[wi] + b)] = mx[(a, b)].clone();
                }
            }
        }
        m
    };
    use crate::cat_o::module::Gen;
    let e = (0..l.rank()).map(|i| build(Gen::E(i))).collect();
    let f = (0..l.rank()).map(|i| build(Gen::F(i))).collect();
    (e, f)
}
