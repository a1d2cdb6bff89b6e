//! Polynomials in x_β, Laurent monomials z^μ (μ ∈ P in fundamental
//! coordinates) and y_β.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PMono {
    pub x: Vec<u32>,
    pub z: Vec<i64>,
    pub y: Vec<u32>,
}

impl PMono {
    pub fn one(m: usize, r: usize) -> Self {
        PMono { x: vec![0; m], z: vec![0; r], y: vec![0; m] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        PMono {
            x: self.x.iter().zip(&o.x).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&o.y).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    pub m: usize,
    pub r: usize,
    pub terms: BTreeMap<PMono, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(m: usize, r: usize) -> Self {
        Poly { m, r, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, r: usize, c: S) -> Self {
        Self::term(PMono::one(m, r), c)
    }

    pub fn one(m: usize, r: usize) -> Self {
        Self::constant(m, r, S::one())
    }

    pub fn term(mono: PMono, c: S) -> Self {
        let (m, r) = (mono.x.len(), mono.z.len());
        let mut p = Self::zero(m, r);
        p.add_term(mono, c);
        p
    }

    pub fn x(m: usize, r: usize, k: usize) -> Self {
        let mut mono = PMono::one(m, r);
        mono.x[k] = 1;
        Self::term(mono, S::one())
    }

    pub fn y(m: usize, r: usize, k: usize) -> Self {
        let mut mono = PMono::one(m, r);
        mono.y[k] = 1;
        Self::term(mono, S::one())
    }

    pub fn z(m: usize, r: usize, mu: &[i64]) -> Self {
        let mut mono = PMono::one(m, r);
        mono.z = mu.to_vec();
        Self::term(mono, S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: PMono, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v = v.clone() + &c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.r);
        }
        Poly { m: self.m, r: self.r, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.mul(b), x.clone() * y);
            }
        }
        out
    }

    pub fn mul_mono(&self, mono: &PMono) -> Self {
        Poly { m: self.m, r: self.r, terms: self.terms.iter().map(|(k, v)| (k.mul(mono), v.clone())).collect() }
    }

    pub fn dx(&self, k: usize) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (mono, c) in &self.terms {
            if mono.x[k] > 0 {
                let mut n = mono.clone();
                n.x[k] -= 1;
                out.add_term(n, c.clone() * S::from_int(mono.x[k] as i64));
            }
        }
        out
    }

    pub fn dy(&self, k: usize) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (mono, c) in &self.terms {
            if mono.y[k] > 0 {
                let mut n = mono.clone();
                n.y[k] -= 1;
                out.add_term(n, c.clone() * S::from_int(mono.y[k] as i64));
            }
        }
        out
    }

    /// z_i ∂/∂z_i.
    pub fn zd(&self, i: usize) -> Self {
        let mut out = Self::zero(self.m, self.r);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.clone() * S::from_int(mono.z[i]));
        }
        out
    }

    /// Value at the identity: x = y = 0, z = 1.
    pub fn at_identity(&self) -> S {
        let mut s = S::zero();
        for (mono, c) in &self.terms {
            if mono.x.iter().all(|&a| a == 0) && mono.y.iter().all(|&a| a == 0) {
                s = s + c;
            }
        }
        s
    }

    /// Swap the x and y variables.
    pub fn transpose(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (PMono { x: k.y.clone(), z: k.z.clone(), y: k.x.clone() }, v.clone()))
            .collect();
        Poly { m: self.m, r: self.r, terms }
    }

    pub fn coeff(&self, mono: &PMono) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    /// Human-readable form with variable names from `xn`/`yn` (one per root).
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (k, &a) in mono.x.iter().enumerate() {
                push_power(&mut factors, &format!("x{}", names[k]), a as i64);
            }
            for (k, &a) in mono.z.iter().enumerate() {
                push_power(&mut factors, &format!("z{}", k + 1), a);
            }
            for (k, &a) in mono.y.iter().enumerate() {
                push_power(&mut factors, &format!("y{}", names[k]), a as i64);
            }
            let cs = c.to_exact_string();
            let body = factors.join("*");
            let piece = match (body.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => body,
                (false, "-1") => format!("-{body}"),
                _ => format!("{cs}*{body}"),
            };
            if i > 0 {
                if let Some(rest) = piece.strip_prefix('-') {
                    let _ = write!(out, " - {rest}");
                } else {
                    let _ = write!(out, " + {piece}");
                }
            } else {
                out.push_str(&piece);
            }
        }
        out
    }
}

fn push_power(f: &mut Vec<String>, v: &str, a: i64) {
    match a {
        0 => {}
        1 => f.push(v.to_string()),
        _ => f.push(format!("{v}^{a}")),
    }
}
