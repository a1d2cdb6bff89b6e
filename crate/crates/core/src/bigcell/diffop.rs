//! First-order differential operators with coefficients in the big-cell
//! polynomial ring.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bigcell::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Deriv {
    /// Multiplication by the coefficient.
    Id,
    Dx(usize),
    /// z_i ∂/∂z_i.
    Zd(usize),
    Dy(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<S> {
    pub m: usize,
    pub r: usize,
    pub terms: BTreeMap<Deriv, Poly<S>>,
}

impl<S: Scalar> DiffOp<S> {
    pub fn zero(m: usize, r: usize) -> Self {
        DiffOp { m, r, terms: BTreeMap::new() }
    }

    pub fn single(d: Deriv, coef: Poly<S>) -> Self {
        let mut op = Self::zero(coef.m, coef.r);
        op.add_term(d, coef);
        op
    }

    pub fn add_term(&mut self, d: Deriv, coef: Poly<S>) {
        let cur = self.terms.remove(&d).unwrap_or_else(|| Poly::zero(self.m, self.r));
        let n = cur.add(&coef);
        if !n.is_zero() {
            self.terms.insert(d, n);
        }
    }

    pub fn coeff(&self, d: Deriv) -> Poly<S> {
        self.terms.get(&d).cloned().unwrap_or_else(|| Poly::zero(self.m, self.r))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, p) in &o.terms {
            out.add_term(*d, p.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (d, p) in &self.terms {
            out.add_term(*d, p.scale(c));
        }
        out
    }

    /// Derivation part only (drops the multiplication term).
    fn derive(&self, f: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero(self.m, self.r);
        for (d, c) in &self.terms {
            let df = match *d {
                Deriv::Id => continue,
                Deriv::Dx(k) => f.dx(k),
                Deriv::Dy(k) => f.dy(k),
                Deriv::Zd(i) => f.zd(i),
            };
            if !df.is_zero() {
                out = out.add(&c.mul(&df));
            }
        }
        out
    }

    pub fn apply(&self, f: &Poly<S>) -> Poly<S> {
        let mut out = self.derive(f);
        if let Some(c) = self.terms.get(&Deriv::Id) {
            out = out.add(&c.mul(f));
        }
        out
    }

    /// [A, B], again first order.
    pub fn commutator(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (d, b) in &o.terms {
            out.add_term(*d, self.derive(b));
        }
        for (d, a) in &self.terms {
            out.add_term(*d, o.derive(a).neg());
        }
        out
    }

    /// Exchange x and y (the transposition of the big cell).
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (d, c) in &self.terms {
            let nd = match *d {
                Deriv::Dx(k) => Deriv::Dy(k),
                Deriv::Dy(k) => Deriv::Dx(k),
                other => other,
            };
            out.add_term(nd, c.transpose());
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let ds = deriv_name(*d, names);
                let cs = c.render(names);
                match (ds.is_empty(), c.terms.len()) {
                    (true, _) => format!("({cs})"),
                    (false, 1) if cs == "1" => ds,
                    (false, 1) if cs == "-1" => format!("-{ds}"),
                    _ => format!("({cs})*{ds}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let monos: Vec<Value> = c
                    .terms
                    .iter()
                    .map(|(m, v)| json!({"x": m.x, "z": m.z, "y": m.y, "coeff": v.to_exact_string()}))
                    .collect();
                json!({"derivation": deriv_name(*d, names), "coeff_monomials": monos})
            })
            .collect();
        Value::Array(terms)
    }
}

pub fn deriv_name(d: Deriv, names: &[String]) -> String {
    match d {
        Deriv::Id => String::new(),
        Deriv::Dx(k) => format!("d/dx{}", names[k]),
        Deriv::Dy(k) => format!("d/dy{}", names[k]),
        Deriv::Zd(i) => format!("z{}*d/dz{}", i + 1, i + 1),
    }
}
