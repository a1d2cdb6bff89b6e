//! The left Whittaker equation on the big cell and the induced action on
//! C[P] ⊗ C[y].
//!
//! τ(x) solves ρ₁(f_i)τ = −η_i τ and ρ₁(f_β)τ = 0 (β nonsimple) with
//! τ(0) = 1. Since ∂x_i τ = η_i τ and ∂x_β τ = 0, substituting ψ = φ(y, z)τ(x)
//! into ρ₂ replaces ∂x_i by η_i and drops ∂x_β.

use crate::bigcell::action::{BigCell, Side};
use crate::bigcell::diffop::{Deriv, DiffOp};
use crate::bigcell::poly::{PMono, Poly};
use crate::enveloping::chevalley::root_recipe;
use crate::enveloping::{Enveloping, PbwElement};
use crate::linalg::Matrix;
use crate::matrixel::functional::PbwDomain;
use crate::scalar::Scalar;
use crate::whittaker::space::WhittakerError;

/// Power-series solution up to x-height `depth`.
pub fn tau<S: Scalar>(cell: &BigCell<S>, eta: &[S], depth: i64) -> Result<Poly<S>, WhittakerError> {
    let (m, r) = (cell.m, cell.r);
    let dom = PbwDomain::new(&cell.lie, depth);
    let monos = dom.root_parts();
    let n = monos.len();
    let height = |a: &[u32]| -> i64 { a.iter().zip(&dom.heights).map(|(&k, h)| k as i64 * h).sum() };
    let pos: std::collections::HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let xmono = |a: &[u32]| PMono { x: a.to_vec(), z: vec![0; r], y: vec![0; m] };
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();
    // τ(0) = 1
    let mut first = vec![S::zero(); n];
    first[pos[&vec![0u32; m]]] = S::one();
    rows.push(first);
    rhs.push(S::one());
    for k in 0..m {
        let op = cell.op(Side::Left, cell.lie.f(k));
        let shift = dom.heights[k];
        let simple = (0..r).find(|&i| cell.lie.simple_index(i) == k);
        let mut cols: Vec<Poly<S>> = Vec::with_capacity(n);
        for a in &monos {
            let mut img = op.apply(&Poly::term(xmono(a), S::one()));
            if let Some(i) = simple {
                img = img.add(&Poly::term(xmono(a), eta[i].clone()));
            }
            if img.terms.keys().any(|t| t.z.iter().any(|&e| e != 0) || t.y.iter().any(|&e| e != 0)) {
                return Err(WhittakerError::Unsupported("left lowering operator leaves C[x]".into()));
            }
            cols.push(img);
        }
        // coefficients of height ≤ D − ht β are fully determined
        for b in monos.iter().filter(|b| height(b) <= depth - shift) {
            let row: Vec<S> = cols.iter().map(|c| c.coeff(&xmono(b))).collect();
            rows.push(row);
            rhs.push(S::zero());
        }
    }
    let a = Matrix::from_rows(rows, n);
    if a.rank() < n {
        return Err(WhittakerError::Unsupported("Whittaker equation not uniquely solvable".into()));
    }
    let sol = a.solve(&rhs).ok_or_else(|| WhittakerError::Unsupported("Whittaker equation inconsistent".into()))?;
    let mut out = Poly::zero(m, r);
    for (a, c) in monos.iter().zip(sol) {
        out.add_term(xmono(a), c);
    }
    Ok(out)
}

/// exp(Σ η_i x_{α_i}) truncated at x-height `depth`; the closed form.
pub fn exp_simple<S: Scalar>(cell: &BigCell<S>, eta: &[S], depth: i64) -> Poly<S> {
    let (m, r) = (cell.m, cell.r);
    let mut out = Poly::one(m, r);
    for i in 0..r {
        let k = cell.lie.simple_index(i);
        let mut series = Poly::zero(m, r);
        let mut term = Poly::one(m, r);
        for j in 0..=depth {
            series = series.add(&term);
            term = term.mul(&Poly::x(m, r, k)).scale(&(eta[i].clone() / S::from_int(j + 1)));
        }
        out = out.mul(&series);
    }
    let heights: Vec<i64> = cell.lie.rs.positive_roots.iter().map(|b| cell.lie.rs.height(b)).collect();
    out.terms.retain(|mono, _| mono.x.iter().zip(&heights).map(|(&a, h)| a as i64 * h).sum::<i64>() <= depth);
    out
}

/// ϱ(x_a) for every basis element, acting on functions of (z, y).
#[derive(Clone, Debug)]
pub struct RealizedAction<S> {
    pub eta: Vec<S>,
    pub ops: Vec<DiffOp<S>>,
}

fn substitute<S: Scalar>(cell: &BigCell<S>, op: &DiffOp<S>, eta: &[S]) -> Result<DiffOp<S>, WhittakerError> {
    let mut out = DiffOp::zero(cell.m, cell.r);
    for (d, c) in &op.terms {
        match *d {
            Deriv::Dx(k) => {
                if let Some(i) = (0..cell.r).find(|&i| cell.lie.simple_index(i) == k) {
                    out.add_term(Deriv::Id, c.scale(&eta[i]));
                }
            }
            other => out.add_term(other, c.clone()),
        }
    }
    let has_x = out.terms.iter().any(|(d, c)| matches!(d, Deriv::Dx(_)) || c.terms.keys().any(|t| t.x.iter().any(|&a| a != 0)));
    if has_x {
        return Err(WhittakerError::Unsupported("substituted operator still depends on x".into()));
    }
    Ok(out)
}

impl<S: Scalar> RealizedAction<S> {
    /// Simple generators by substitution; nonsimple root vectors by the same
    /// commutator recursion as the Chevalley basis.
    pub fn new(cell: &BigCell<S>, eta: &[S]) -> Result<Self, WhittakerError> {
        let lie = &cell.lie;
        let d = lie.dim();
        let mut ops: Vec<Option<DiffOp<S>>> = vec![None; d];
        for i in 0..cell.r {
            let k = lie.simple_index(i);
            ops[lie.e(k)] = Some(substitute(cell, cell.e(Side::Right, i), eta)?);
            ops[lie.f(k)] = Some(substitute(cell, cell.f(Side::Right, i), eta)?);
            ops[lie.h(i)] = Some(substitute(cell, cell.h(Side::Right, i), eta)?);
        }
        for k in 0..cell.m {
            let Some((i, g, p)) = root_recipe(&lie.rs, k) else { continue };
            let ki = lie.simple_index(i);
            let inv = S::from_frac(1, p + 1);
            let e = ops[lie.e(ki)].as_ref().unwrap().commutator(ops[lie.e(g)].as_ref().unwrap()).scale(&inv);
            let f = ops[lie.f(ki)].as_ref().unwrap().commutator(ops[lie.f(g)].as_ref().unwrap()).scale(&-inv);
            ops[lie.e(k)] = Some(e);
            ops[lie.f(k)] = Some(f);
        }
        Ok(RealizedAction { eta: eta.to_vec(), ops: ops.into_iter().map(Option::unwrap).collect() })
    }

    pub fn e(&self, cell: &BigCell<S>, i: usize) -> &DiffOp<S> {
        &self.ops[cell.lie.e(cell.lie.simple_index(i))]
    }

    pub fn f(&self, cell: &BigCell<S>, i: usize) -> &DiffOp<S> {
        &self.ops[cell.lie.f(cell.lie.simple_index(i))]
    }

    pub fn h(&self, cell: &BigCell<S>, i: usize) -> &DiffOp<S> {
        &self.ops[cell.lie.h(i)]
    }

    /// ϱ(u)φ for a PBW element, factors applied right to left.
    pub fn apply_pbw(&self, x: &PbwElement<S>, phi: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero(phi.m, phi.r);
        for (mono, c) in &x.terms {
            let mut cur = phi.clone();
            for a in (0..mono.len()).rev() {
                for _ in 0..mono[a] {
                    cur = self.ops[a].apply(&cur);
                }
            }
            out = out.add(&cur.scale(c));
        }
        out
    }

    /// Every bracket [ϱ(a), ϱ(b)] = ϱ([a, b]) and the Serre relations, exactly.
    pub fn check_relations(&self, cell: &BigCell<S>) -> bool {
        let lie = &cell.lie;
        let d = lie.dim();
        let brackets = (0..d).all(|a| {
            (0..d).all(|b| {
                let lhs = self.ops[a].commutator(&self.ops[b]);
                let mut rhs = DiffOp::zero(cell.m, cell.r);
                for &(k, n) in &lie.bracket[a][b] {
                    rhs = rhs.add(&self.ops[k].scale(&S::from_int(n)));
                }
                lhs == rhs
            })
        });
        let r = cell.r;
        let serre = (0..r).all(|i| {
            (0..r).filter(|&j| j != i).all(|j| {
                let n = 1 - lie.rs.cartan[i][j];
                [(self.e(cell, i), self.e(cell, j)), (self.f(cell, i), self.f(cell, j))].iter().all(|(x, y)| {
                    let mut t = (*y).clone();
                    for _ in 0..n {
                        t = x.commutator(&t);
                    }
                    t.is_zero()
                })
            })
        });
        brackets && serre
    }

    /// ρ₂(a)(φ·τ) = (ϱ(a)φ)·τ up to x-height `depth`, for every basis element.
    pub fn factorizes(&self, cell: &BigCell<S>, phi: &Poly<S>, depth: i64) -> Result<bool, WhittakerError> {
        let t = tau(cell, &self.eta, depth + 1)?;
        let heights: Vec<i64> = cell.lie.rs.positive_roots.iter().map(|b| cell.lie.rs.height(b)).collect();
        let cut = |p: Poly<S>| -> Poly<S> {
            let mut p = p;
            p.terms.retain(|mono, _| mono.x.iter().zip(&heights).map(|(&a, h)| a as i64 * h).sum::<i64>() <= depth);
            p
        };
        let psi = phi.mul(&t);
        Ok((0..cell.lie.dim()).all(|a| {
            let lhs = cut(cell.op(Side::Right, a).apply(&psi));
            let rhs = cut(self.ops[a].apply(phi).mul(&t));
            lhs == rhs
        }))
    }
}

/// ϱ(Ω) with the quadratic Casimir of `env`.
pub fn casimir_op<S: Scalar>(act: &RealizedAction<S>, env: &Enveloping, phi: &Poly<S>) -> Poly<S> {
    act.apply_pbw(&env.casimir::<S>(), phi)
}
