//! The correction polynomials p, q, r, s: everything in the simple-root
//! operators beyond the standard sl2 part.
//!
//! Read off ρ₂ and compared against ρ₁ (x ↔ y, overall sign). The torus
//! factor multiplying the ∂x_i term of ρ₂(f_i) is z^{-α_i}, which is z_i^{-2}
//! only in rank one.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bigcell::action::{BigCell, Side};
use crate::bigcell::diffop::{Deriv, DiffOp};
use crate::bigcell::poly::Poly;
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BigCellError {
    #[error("operator {0} does not have the expected shape: {1}")]
    Shape(String, String),
    #[error("left and right tables disagree for {0}")]
    Mismatch(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Keyed by (simple index i, root index β).
pub type Table<S> = BTreeMap<(usize, usize), Poly<S>>;

#[derive(Clone, Debug)]
pub struct StructureTables<S> {
    pub p: Table<S>,
    pub q: Table<S>,
    pub r: Table<S>,
    pub s: Table<S>,
}

impl<S: Scalar> StructureTables<S> {
    pub fn to_json(&self, cell: &BigCell<S>) -> Value {
        let names = cell.names();
        let t = |tab: &Table<S>| -> Value {
            tab.iter()
                .map(|((i, b), p)| json!({"i": i + 1, "beta": names[*b], "poly": p.render(&names)}))
                .collect::<Vec<_>>()
                .into()
        };
        json!({"p": t(&self.p), "q": t(&self.q), "r": t(&self.r), "s": t(&self.s)})
    }
}

fn is_simple<S: Scalar>(cell: &BigCell<S>, k: usize) -> Option<usize> {
    (0..cell.r).find(|&i| cell.lie.simple_index(i) == k)
}

pub fn structure_polynomials<S: Scalar>(cell: &BigCell<S>) -> Result<StructureTables<S>, BigCellError> {
    let (m, r) = (cell.m, cell.r);
    let names = cell.names();
    let mut tabs = StructureTables { p: Table::new(), q: Table::new(), r: Table::new(), s: Table::new() };
    let one = Poly::<S>::one(m, r);
    for i in 0..r {
        let ai = cell.lie.simple_index(i);
        let alpha: Vec<i64> = cell.lie.rs.root_weight(&cell.lie.rs.positive_roots[ai]);
        let neg_alpha: Vec<i64> = alpha.iter().map(|x| -x).collect();
        let yi = Poly::<S>::y(m, r, ai);

        // ρ₂(e_i) = ∂y_i + Σ_{β∉Π} p_{i,β}(y) ∂y_β
        let mut std_e = DiffOp::single(Deriv::Dy(ai), one.clone());
        for k in 0..m {
            if is_simple(cell, k).is_none() {
                let c = cell.e(Side::Right, i).coeff(Deriv::Dy(k));
                if !c.is_zero() {
                    std_e.add_term(Deriv::Dy(k), c.clone());
                    tabs.p.insert((i, k), c);
                }
            }
        }
        expect(cell.e(Side::Right, i), &std_e, &format!("rho2(e{})", i + 1), &names)?;

        // ρ₂(h_i) = z_i∂z_i − 2y_i∂y_i + Σ_{β≠α_i} q_{i,β}(y) ∂y_β
        let mut std_h = DiffOp::single(Deriv::Zd(i), one.clone());
        std_h.add_term(Deriv::Dy(ai), yi.scale(&S::from_int(-2)));
        for k in 0..m {
            if k != ai {
                let c = cell.h(Side::Right, i).coeff(Deriv::Dy(k));
                if !c.is_zero() {
                    std_h.add_term(Deriv::Dy(k), c.clone());
                    tabs.q.insert((i, k), c);
                }
            }
        }
        expect(cell.h(Side::Right, i), &std_h, &format!("rho2(h{})", i + 1), &names)?;

        // ρ₂(f_i) = −y_i²∂y_i + y_i z_i∂z_i + z^{-α_i}∂x_i + Σ r ∂y_β + z^{-α_i} Σ_{β∉Π} s(x) ∂x_β
        let zinv = Poly::<S>::z(m, r, &neg_alpha);
        let zpos = Poly::<S>::z(m, r, &alpha);
        let fi = cell.f(Side::Right, i);
        let mut std_f = DiffOp::single(Deriv::Dy(ai), yi.mul(&yi).neg());
        std_f.add_term(Deriv::Zd(i), yi.clone());
        std_f.add_term(Deriv::Dx(ai), zinv.clone());
        for k in 0..m {
            if k != ai {
                let c = fi.coeff(Deriv::Dy(k));
                if !c.is_zero() {
                    std_f.add_term(Deriv::Dy(k), c.clone());
                    tabs.r.insert((i, k), c);
                }
            }
            if is_simple(cell, k).is_none() {
                let c = fi.coeff(Deriv::Dx(k));
                if !c.is_zero() {
                    std_f.add_term(Deriv::Dx(k), c.clone());
                    let s = c.mul(&zpos);
                    if s.terms.keys().any(|mono| mono.z.iter().any(|&e| e != 0)) {
                        return Err(BigCellError::Shape(format!("rho2(f{})", i + 1), "s depends on z".into()));
                    }
                    tabs.s.insert((i, k), s);
                }
            }
        }
        expect(fi, &std_f, &format!("rho2(f{})", i + 1), &names)?;

        // mirror: ρ₁ uses the same polynomials in x, with opposite signs
        let mut l_f = DiffOp::single(Deriv::Dx(ai), one.neg());
        let mut l_h = DiffOp::single(Deriv::Zd(i), one.neg());
        l_h.add_term(Deriv::Dx(ai), Poly::x(m, r, ai).scale(&S::from_int(2)));
        let xi = Poly::<S>::x(m, r, ai);
        let mut l_e = DiffOp::single(Deriv::Dx(ai), xi.mul(&xi));
        l_e.add_term(Deriv::Zd(i), xi.neg());
        l_e.add_term(Deriv::Dy(ai), zinv.neg());
        for ((ti, k), p) in &tabs.p {
            if *ti == i {
                l_f.add_term(Deriv::Dx(*k), p.transpose().neg());
            }
        }
        for ((ti, k), p) in &tabs.q {
            if *ti == i {
                l_h.add_term(Deriv::Dx(*k), p.transpose().neg());
            }
        }
        for ((ti, k), p) in &tabs.r {
            if *ti == i {
                l_e.add_term(Deriv::Dx(*k), p.transpose().neg());
            }
        }
        for ((ti, k), p) in &tabs.s {
            if *ti == i {
                l_e.add_term(Deriv::Dy(*k), p.transpose().mul(&zinv).neg());
            }
        }
        for (op, want, name) in [
            (cell.f(Side::Left, i), &l_f, "rho1(f)"),
            (cell.h(Side::Left, i), &l_h, "rho1(h)"),
            (cell.e(Side::Left, i), &l_e, "rho1(e)"),
        ] {
            if op != want {
                return Err(BigCellError::Mismatch(format!("{name}{}", i + 1)));
            }
        }
    }
    Ok(tabs)
}

fn expect<S: Scalar>(got: &DiffOp<S>, want: &DiffOp<S>, name: &str, names: &[String]) -> Result<(), BigCellError> {
    if got == want {
        Ok(())
    } else {
        Err(BigCellError::Shape(name.into(), got.sub(want).render(names)))
    }
}
