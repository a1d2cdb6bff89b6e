//! Both regular actions of g on functions on the big cell
//! g = exp(x_m f_m)…exp(x_1 f_1) · z^h · exp(y_1 e_1)…exp(y_m e_m),
//! roots ordered by height (index 0 lowest).
//!
//! Right action: g e^{tξ} = n₋ t e^{tξ'} n₊ with ξ' = Ad(n₊)ξ; split ξ' by
//! triangular parts, absorb the n₊ part into n₊ from the left, the h part
//! into the torus, and carry the n₋ part through t (rescaling by z^{-β})
//! into n₋ from the right. The left action is the mirror image with
//! ξ'' = Ad(n₋⁻¹)ξ. Everything is exact modulo t², and absorbing into n₊
//! (resp. n₋) means solving against a Maurer–Cartan matrix that is
//! unitriangular in height order, so the solve stays polynomial.

use crate::bigcell::diffop::{Deriv, DiffOp};
use crate::bigcell::poly::Poly;
use crate::enveloping::chevalley::{root_label, Basis, LieAlgebra};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A Lie algebra element with polynomial coefficients.
pub type LieVec<S> = Vec<Poly<S>>;

pub struct BigCell<S> {
    pub lie: LieAlgebra,
    pub m: usize,
    pub r: usize,
    /// (∂_{y_k} n₊) n₊⁻¹, e-components.
    mc_plus: Vec<Vec<Poly<S>>>,
    /// n₋⁻¹ ∂_{x_k} n₋, f-components.
    mc_minus: Vec<Vec<Poly<S>>>,
    /// ρ_side(x_a) for every basis element a.
    left: Vec<DiffOp<S>>,
    right: Vec<DiffOp<S>>,
}

impl<S: Scalar> BigCell<S> {
    pub fn new(lie: &LieAlgebra) -> Self {
        let m = lie.num_roots();
        let r = lie.rank();
        let mut cell = BigCell { lie: lie.clone(), m, r, mc_plus: Vec::new(), mc_minus: Vec::new(), left: vec![], right: vec![] };
        cell.mc_plus = (0..m)
            .map(|k| {
                let mut v = cell.unit(lie.e(k));
                for j in (0..k).rev() {
                    v = cell.exp_ad(lie.e(j), &Poly::y(m, r, j), &v);
                }
                cell.components(&v, Basis::E(0))
            })
            .collect();
        cell.mc_minus = (0..m)
            .map(|k| {
                let mut v = cell.unit(lie.f(k));
                for j in (0..k).rev() {
                    v = cell.exp_ad(lie.f(j), &Poly::x(m, r, j).neg(), &v);
                }
                cell.components(&v, Basis::F(0))
            })
            .collect();
        let d = lie.dim();
        cell.right = (0..d).map(|a| cell.compute(Side::Right, a)).collect();
        cell.left = (0..d).map(|a| cell.compute(Side::Left, a)).collect();
        cell
    }

    pub fn names(&self) -> Vec<String> {
        self.lie.rs.positive_roots.iter().map(|b| root_label(b)).collect()
    }

    fn unit(&self, a: usize) -> LieVec<S> {
        let mut v = vec![Poly::zero(self.m, self.r); self.lie.dim()];
        v[a] = Poly::one(self.m, self.r);
        v
    }

    /// [c·x_a, v].
    fn ad(&self, a: usize, c: &Poly<S>, v: &LieVec<S>) -> LieVec<S> {
        let mut out = vec![Poly::zero(self.m, self.r); self.lie.dim()];
        for (b, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let cp = c.mul(p);
            for &(k, n) in &self.lie.bracket[a][b] {
                out[k] = out[k].add(&cp.scale(&S::from_int(n)));
            }
        }
        out
    }

    /// exp(ad(c·x_a)) v for a root vector x_a (ad-nilpotent).
    fn exp_ad(&self, a: usize, c: &Poly<S>, v: &LieVec<S>) -> LieVec<S> {
        let mut out = v.clone();
        let mut term = v.clone();
        let mut j = 1;
        loop {
            term = self.ad(a, c, &term);
            if term.iter().all(|p| p.is_zero()) {
                break;
            }
            let inv = S::from_frac(1, j);
            term = term.iter().map(|p| p.scale(&inv)).collect();
            for (o, t) in out.iter_mut().zip(&term) {
                *o = o.add(t);
            }
            j += 1;
        }
        out
    }

    /// Components along e_k (kind E) or f_k (kind F).
    fn components(&self, v: &LieVec<S>, kind: Basis) -> Vec<Poly<S>> {
        (0..self.m)
            .map(|k| match kind {
                Basis::E(_) => v[self.lie.e(k)].clone(),
                _ => v[self.lie.f(k)].clone(),
            })
            .collect()
    }

    /// Solve Σ_k c_k col_k = η for a unitriangular Maurer–Cartan matrix.
    fn solve_mc(mc: &[Vec<Poly<S>>], eta: &[Poly<S>]) -> Vec<Poly<S>> {
        let m = eta.len();
        let mut c: Vec<Poly<S>> = Vec::with_capacity(m);
        for k in 0..m {
            let mut v = eta[k].clone();
            for (l, cl) in c.iter().enumerate() {
                if !cl.is_zero() && !mc[l][k].is_zero() {
                    v = v.sub(&cl.mul(&mc[l][k]));
                }
            }
            c.push(v);
        }
        c
    }

    fn compute(&self, side: Side, a: usize) -> DiffOp<S> {
        let (m, r) = (self.m, self.r);
        let lie = &self.lie;
        let mut xi = self.unit(a);
        let sign = match side {
            Side::Right => {
                // Ad(n₊) = Ad(A_1)…Ad(A_m)
                for j in (0..m).rev() {
                    xi = self.exp_ad(lie.e(j), &Poly::y(m, r, j), &xi);
                }
                S::one()
            }
            Side::Left => {
                // Ad(n₋⁻¹) = Ad(B_1⁻¹)…Ad(B_m⁻¹)
                for j in (0..m).rev() {
                    xi = self.exp_ad(lie.f(j), &Poly::x(m, r, j).neg(), &xi);
                }
                -S::one()
            }
        };
        let mut op = DiffOp::zero(m, r);
        for i in 0..r {
            op.add_term(Deriv::Zd(i), xi[lie.h(i)].scale(&sign));
        }
        let rescale = |k: usize, p: &Poly<S>| {
            let mu: Vec<i64> = lie.rs.root_weight(&lie.rs.positive_roots[k]).into_iter().map(|x| -x).collect();
            p.mul(&Poly::z(m, r, &mu)).scale(&sign)
        };
        let (eplus, fminus): (Vec<Poly<S>>, Vec<Poly<S>>) = match side {
            Side::Right => {
                let e: Vec<Poly<S>> = (0..m).map(|k| xi[lie.e(k)].clone()).collect();
                let f: Vec<Poly<S>> = (0..m).map(|k| rescale(k, &xi[lie.f(k)])).collect();
                (e, f)
            }
            Side::Left => {
                let e: Vec<Poly<S>> = (0..m).map(|k| rescale(k, &xi[lie.e(k)])).collect();
                let f: Vec<Poly<S>> = (0..m).map(|k| xi[lie.f(k)].scale(&sign)).collect();
                (e, f)
            }
        };
        for (k, c) in Self::solve_mc(&self.mc_plus, &eplus).into_iter().enumerate() {
            op.add_term(Deriv::Dy(k), c);
        }
        for (k, c) in Self::solve_mc(&self.mc_minus, &fminus).into_iter().enumerate() {
            op.add_term(Deriv::Dx(k), c);
        }
        op
    }

    /// ρ_side of basis element a (ordering as in [`LieAlgebra`]).
    pub fn op(&self, side: Side, a: usize) -> &DiffOp<S> {
        match side {
            Side::Left => &self.left[a],
            Side::Right => &self.right[a],
        }
    }

    pub fn e(&self, side: Side, i: usize) -> &DiffOp<S> {
        self.op(side, self.lie.e(self.lie.simple_index(i)))
    }

    pub fn f(&self, side: Side, i: usize) -> &DiffOp<S> {
        self.op(side, self.lie.f(self.lie.simple_index(i)))
    }

    pub fn h(&self, side: Side, i: usize) -> &DiffOp<S> {
        self.op(side, self.lie.h(i))
    }

    /// ρ_side of a Lie algebra element given by coefficients.
    pub fn op_of(&self, side: Side, coeffs: &[S]) -> DiffOp<S> {
        let mut out = DiffOp::zero(self.m, self.r);
        for (a, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.op(side, a).scale(c));
            }
        }
        out
    }

    pub fn poly_one(&self) -> Poly<S> {
        Poly::one(self.m, self.r)
    }
}

/// Outcome of the exact operator identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub brackets_left: bool,
    pub brackets_right: bool,
    pub serre_left: bool,
    pub serre_right: bool,
    pub commute: bool,
    pub transposition: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.brackets_left && self.brackets_right && self.serre_left && self.serre_right && self.commute && self.transposition
    }
}

/// The basis element corresponding to x_a under the transpose e_β ↔ f_β.
pub fn transpose_index(lie: &LieAlgebra, a: usize) -> usize {
    match lie.kind(a) {
        Basis::E(k) => lie.f(k),
        Basis::F(k) => lie.e(k),
        Basis::H(_) => a,
    }
}

pub fn check_relations<S: Scalar>(cell: &BigCell<S>) -> RelationReport {
    let lie = &cell.lie;
    let d = lie.dim();
    let brackets = |side: Side| {
        (0..d).all(|a| {
            (0..d).all(|b| {
                let lhs = cell.op(side, a).commutator(cell.op(side, b));
                let coeffs: Vec<S> = lie.bracket_vec(&lie.unit::<S>(a), &lie.unit::<S>(b));
                lhs == cell.op_of(side, &coeffs)
            })
        })
    };
    let serre = |side: Side| {
        let r = lie.rank();
        (0..r).all(|i| {
            (0..r).filter(|&j| j != i).all(|j| {
                let n = 1 - lie.rs.cartan[i][j];
                let mut ok = true;
                for (x, y) in [(cell.e(side, i), cell.e(side, j)), (cell.f(side, i), cell.f(side, j))] {
                    let mut t = y.clone();
                    for _ in 0..n {
                        t = x.commutator(&t);
                    }
                    ok &= t.is_zero();
                }
                ok
            })
        })
    };
    let commute = (0..d).all(|a| (0..d).all(|b| cell.op(Side::Left, a).commutator(cell.op(Side::Right, b)).is_zero()));
    let transposition = (0..d).all(|a| *cell.op(Side::Left, transpose_index(lie, a)) == cell.op(Side::Right, a).transpose().scale(&-S::one()));
    RelationReport {
        brackets_left: brackets(Side::Left),
        brackets_right: brackets(Side::Right),
        serre_left: serre(Side::Left),
        serre_right: serre(Side::Right),
        commute,
        transposition,
    }
}
