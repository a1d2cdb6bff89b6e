//! Truncated elements of U(g)*: values on normal-ordered PBW monomials
//! F^a H^b E^c with ht(a) ≤ D, ht(c) ≤ D and |b| ≤ D.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::enveloping::chevalley::LieAlgebra;
use crate::enveloping::{Enveloping, Mono, PbwElement};
use crate::rootsys::Weight;
use crate::scalar::{binomial, Scalar};

/// Which monomials a truncated functional sees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwDomain {
    pub m: usize,
    pub r: usize,
    pub depth: i64,
    pub heights: Vec<i64>,
    /// Weight (fundamental coordinates) of each positive root.
    pub root_weights: Vec<Weight>,
}

impl PbwDomain {
    pub fn new(lie: &LieAlgebra, depth: i64) -> Self {
        let rs = &lie.rs;
        PbwDomain {
            m: lie.num_roots(),
            r: lie.rank(),
            depth,
            heights: rs.positive_roots.iter().map(|b| rs.height(b)).collect(),
            root_weights: rs.positive_roots.iter().map(|b| rs.root_weight(b)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.m + self.r
    }

    pub fn f_height(&self, u: &[u32]) -> i64 {
        u[..self.m].iter().zip(&self.heights).map(|(&a, h)| a as i64 * h).sum()
    }

    pub fn e_height(&self, u: &[u32]) -> i64 {
        u[self.m + self.r..].iter().zip(&self.heights).map(|(&a, h)| a as i64 * h).sum()
    }

    pub fn h_degree(&self, u: &[u32]) -> i64 {
        u[self.m..self.m + self.r].iter().map(|&a| a as i64).sum()
    }

    pub fn contains(&self, u: &[u32]) -> bool {
        self.f_height(u) <= self.depth && self.e_height(u) <= self.depth && self.h_degree(u) <= self.depth
    }

    /// ad-weight of a monomial: wt(E-part) − wt(F-part).
    pub fn weight(&self, u: &[u32]) -> Weight {
        let mut w = vec![0; self.r];
        for k in 0..self.m {
            let d = u[self.m + self.r + k] as i64 - u[k] as i64;
            for (x, b) in w.iter_mut().zip(&self.root_weights[k]) {
                *x += d * b;
            }
        }
        w
    }

    /// Exponent vectors over the positive roots with total height ≤ depth.
    pub fn root_parts(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.m]];
        for k in 0..self.m {
            let mut next = Vec::new();
            for v in &out {
                let used: i64 = v.iter().zip(&self.heights).map(|(&a, h)| a as i64 * h).sum();
                let mut w = v.clone();
                let mut u = used;
                while u <= self.depth {
                    next.push(w.clone());
                    w[k] += 1;
                    u += self.heights[k];
                }
            }
            out = next;
        }
        out
    }

    pub fn h_parts(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.r]];
        for i in 0..self.r {
            let mut next = Vec::new();
            for v in &out {
                let used: i64 = v.iter().map(|&a| a as i64).sum();
                for b in 0..=(self.depth - used) {
                    let mut w = v.clone();
                    w[i] = b as u32;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    pub fn assemble(&self, f: &[u32], h: &[u32], e: &[u32]) -> Mono {
        let mut u = f.to_vec();
        u.extend_from_slice(h);
        u.extend_from_slice(e);
        u
    }

    /// Every monomial of the domain.
    pub fn monomials(&self) -> Vec<Mono> {
        let roots = self.root_parts();
        let hs = self.h_parts();
        let mut out = Vec::new();
        for f in &roots {
            for h in &hs {
                for e in &roots {
                    out.push(self.assemble(f, h, e));
                }
            }
        }
        out
    }

    /// Monomials whose ad-weight is `w`.
    pub fn monomials_of_weight(&self, w: &[i64]) -> Vec<Mono> {
        self.monomials().into_iter().filter(|u| self.weight(u) == w).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Functional<S> {
    pub domain: PbwDomain,
    /// Nonzero values only.
    pub values: BTreeMap<Mono, S>,
}

impl<S: Scalar> Functional<S> {
    pub fn zero(domain: &PbwDomain) -> Self {
        Functional { domain: domain.clone(), values: BTreeMap::new() }
    }

    /// The counit: 1 ↦ 1, every other monomial ↦ 0.
    pub fn unit(domain: &PbwDomain) -> Self {
        let mut f = Self::zero(domain);
        f.set(vec![0; domain.dim()], S::one());
        f
    }

    /// e^μ: H^b ↦ Π μ_i^{b_i}, zero off the Cartan part.
    pub fn exponential(domain: &PbwDomain, mu: &[i64]) -> Self {
        let mut f = Self::zero(domain);
        let zero = vec![0u32; domain.m];
        for h in domain.h_parts() {
            let v = h.iter().zip(mu).fold(S::one(), |acc, (&b, &x)| acc * S::from_int(x).pow(b));
            f.set(domain.assemble(&zero, &h, &zero), v);
        }
        f
    }

    pub fn get(&self, u: &[u32]) -> S {
        self.values.get(u).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, u: Mono, v: S) {
        if v.is_zero() {
            self.values.remove(&u);
        } else {
            self.values.insert(u, v);
        }
    }

    pub fn add_at(&mut self, u: Mono, v: S) {
        let cur = self.get(&u);
        self.set(u, cur + &v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (u, v) in &o.values {
            out.add_at(u.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.domain);
        for (u, v) in &self.values {
            out.set(u.clone(), v.clone() * c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    /// Value on a PBW element; `None` if it reaches outside the domain.
    pub fn eval(&self, x: &PbwElement<S>) -> Option<S> {
        let mut s = S::zero();
        for (u, c) in &x.terms {
            if !self.domain.contains(u) {
                return None;
            }
            s = s + &(self.get(u) * c);
        }
        Some(s)
    }

    /// Value on a word in the basis (normal-ordered first).
    pub fn eval_word(&self, env: &Enveloping, word: &[usize]) -> Option<S> {
        self.eval(&env.normal_form(word))
    }

    /// Dual of the coproduct: (φψ)(x^k) = Σ_j Π binom(k, j) φ(x^j) ψ(x^{k−j}).
    pub fn convolve(&self, o: &Self) -> Self {
        assert_eq!(self.domain, o.domain, "convolution needs a common domain");
        let mut out = Self::zero(&self.domain);
        for (j, a) in &self.values {
            for (l, b) in &o.values {
                let k: Mono = j.iter().zip(l).map(|(x, y)| x + y).collect();
                if !self.domain.contains(&k) {
                    continue;
                }
                let c = k.iter().zip(j).fold(1i64, |acc, (&kk, &jj)| acc * binomial(kk, jj));
                out.add_at(k, a.clone() * b * &S::from_int(c));
            }
        }
        out
    }

    /// The same functional on a smaller domain.
    pub fn restrict(&self, target: &PbwDomain) -> Self {
        let values = self.values.iter().filter(|(u, _)| target.contains(u)).map(|(u, v)| (u.clone(), v.clone())).collect();
        Functional { domain: target.clone(), values }
    }

    /// (R_x φ)(u) = φ(u x) on `target`; `None` if some u x leaves the domain.
    /// R is a left action: R_x R_y = R_{xy}.
    pub fn right_act(&self, env: &Enveloping, x: &Mono, target: &PbwDomain) -> Option<Self> {
        let mut out = Self::zero(target);
        for u in target.monomials() {
            let mut s = S::zero();
            for (m, c) in env.mul_mono(&u, x) {
                if !self.domain.contains(&m) {
                    return None;
                }
                let v = self.get(&m);
                if !v.is_zero() {
                    s = s + &(v * &S::from_bigint(&c));
                }
            }
            out.set(u, s);
        }
        Some(out)
    }

    pub fn to_vec(&self, monos: &[Mono]) -> Vec<S> {
        monos.iter().map(|u| self.get(u)).collect()
    }

    pub fn to_json(&self) -> Value {
        let vals: Vec<Value> = self.values.iter().map(|(u, v)| json!({"mono": u, "value": v.to_exact_string()})).collect();
        json!({"depth": self.domain.depth, "values": vals})
    }
}
