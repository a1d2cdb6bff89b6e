//! ϑ: functions on the big cell → U(g)*, ϑ(ψ)(u) = (ρ₂(u)ψ)(e).

use crate::bigcell::action::{BigCell, Side};
use crate::bigcell::poly::Poly;
use crate::enveloping::Mono;
use crate::matrixel::functional::{Functional, PbwDomain};
use crate::scalar::Scalar;

/// (ρ₂(u)ψ)(e) for one normal-ordered monomial, applying every factor.
/// Slow but literal; the oracle for [`theta_map`].
pub fn theta_eval<S: Scalar>(cell: &BigCell<S>, psi: &Poly<S>, u: &Mono) -> S {
    let mut cur = psi.clone();
    for a in (0..u.len()).rev() {
        for _ in 0..u[a] {
            cur = cell.op(Side::Right, a).apply(&cur);
            if cur.is_zero() {
                return S::zero();
            }
        }
    }
    cur.at_identity()
}

fn drop_y<S: Scalar>(p: &Poly<S>) -> Poly<S> {
    let mut out = Poly::zero(p.m, p.r);
    for (mono, c) in &p.terms {
        if mono.y.iter().all(|&k| k == 0) {
            out.add_term(mono.clone(), c.clone());
        }
    }
    out
}

/// ϑ(ψ) on the depth-D domain.
///
/// Only E-parts matching the y-weight of a term and F-parts matching its
/// x-weight contribute. Lowering operators never decrease the y-height, so
/// y-terms are dropped after the E-part; on y-free functions ρ₂(h_i) is
/// z_i∂z_i, so the Cartan part is a product of exponents.
pub fn theta_map<S: Scalar>(cell: &BigCell<S>, psi: &Poly<S>, depth: i64) -> Functional<S> {
    let dom = PbwDomain::new(&cell.lie, depth);
    let (m, r) = (cell.m, cell.r);
    let mut out = Functional::zero(&dom);
    let parts = dom.root_parts();
    let hs = dom.h_parts();
    let wt = |k: &[u32]| -> Vec<i64> {
        let mut w = vec![0; r];
        for (j, &a) in k.iter().enumerate() {
            for (x, b) in w.iter_mut().zip(&dom.root_weights[j]) {
                *x += a as i64 * b;
            }
        }
        w
    };
    let apply_part = |p: &Poly<S>, part: &[u32], base: usize| -> Poly<S> {
        let mut cur = p.clone();
        for k in (0..m).rev() {
            for _ in 0..part[k] {
                cur = drop_y(&cell.op(Side::Right, base + k).apply(&cur));
            }
        }
        cur
    };
    let e_base = cell.lie.e(0);
    let f_base = cell.lie.f(0);
    for (mono, coef) in &psi.terms {
        let term = Poly::term(mono.clone(), coef.clone());
        let ywt = wt(&mono.y);
        let xwt = wt(&mono.x);
        for c in parts.iter().filter(|c| wt(c) == ywt) {
            let mut after_e = term.clone();
            for k in (0..m).rev() {
                for _ in 0..c[k] {
                    after_e = cell.op(Side::Right, e_base + k).apply(&after_e);
                }
            }
            let after_e = drop_y(&after_e);
            if after_e.is_zero() {
                continue;
            }
            for a in parts.iter().filter(|a| wt(a) == xwt) {
                // each y-free term x^a' z^μ contributes with its own H-weight μ
                for (tm, tc) in &after_e.terms {
                    let val = apply_part(&Poly::term(tm.clone(), tc.clone()), a, f_base).at_identity();
                    if val.is_zero() {
                        continue;
                    }
                    for h in &hs {
                        let hv = h.iter().zip(&tm.z).fold(S::one(), |acc, (&b, &x)| acc * S::from_int(x).pow(b));
                        out.add_at(dom.assemble(a, h, c), val.clone() * &hv);
                    }
                }
            }
        }
    }
    out
}

/// Basis monomials x^a z^μ y^c with ht(a), ht(c) ≤ depth and μ from `zs`.
pub fn cell_monomials<S: Scalar>(cell: &BigCell<S>, depth: i64, zs: &[Vec<i64>]) -> Vec<crate::bigcell::poly::PMono> {
    let dom = PbwDomain::new(&cell.lie, depth);
    let parts = dom.root_parts();
    let mut out = Vec::new();
    for a in &parts {
        for mu in zs {
            for c in &parts {
                out.push(crate::bigcell::poly::PMono { x: a.clone(), z: mu.clone(), y: c.clone() });
            }
        }
    }
    out
}

/// (rank of ϑ on the span of `monos`, number of monomials). ϑ preserves the
/// (x-weight, y-weight) grading, so ranks are taken per graded piece.
pub fn theta_rank<S: Scalar>(cell: &BigCell<S>, monos: &[crate::bigcell::poly::PMono], depth: i64) -> (usize, usize) {
    use std::collections::BTreeMap;
    let dom = PbwDomain::new(&cell.lie, depth);
    let wt = |k: &[u32]| -> Vec<i64> {
        let mut w = vec![0; cell.r];
        for (j, &a) in k.iter().enumerate() {
            for (x, b) in w.iter_mut().zip(&dom.root_weights[j]) {
                *x += a as i64 * b;
            }
        }
        w
    };
    let mut groups: BTreeMap<(Vec<i64>, Vec<i64>), Vec<Functional<S>>> = BTreeMap::new();
    for mono in monos {
        let f = theta_map(cell, &Poly::term(mono.clone(), S::one()), depth);
        groups.entry((wt(&mono.x), wt(&mono.y))).or_default().push(f);
    }
    let mut rank = 0;
    for fs in groups.values() {
        let mut support: Vec<Mono> = fs.iter().flat_map(|f| f.values.keys().cloned()).collect();
        support.sort();
        support.dedup();
        let rows: Vec<Vec<S>> = fs.iter().map(|f| f.to_vec(&support)).collect();
        rank += crate::linalg::span_dim(&rows, support.len());
    }
    (rank, monos.len())
}
