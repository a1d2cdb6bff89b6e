//! U(g): Chevalley basis, PBW normal forms, coproduct, Casimir elements.

pub mod chevalley;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use chevalley::{Basis, LieAlgebra};

use crate::rootsys::{RootSystem, Weight};
use crate::scalar::Scalar;
use crate::Q;

/// Exponent vector over the ordered basis f_β (ascending height), h_i, e_β.
pub type Mono = Vec<u32>;

/// Linear combination of normal-ordered monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwElement<S> {
    pub terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> PbwElement<S> {
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new() }
    }

    pub fn from_mono(m: Mono, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(S::zero);
        *entry = entry.clone() + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub struct Enveloping {
    pub lie: LieAlgebra,
    /// x_j · (normal monomial) in normal form, integer coefficients.
    cache: Mutex<HashMap<(usize, Mono), Vec<(Mono, BigInt)>>>,
}

impl Enveloping {
    pub fn new(rs: &RootSystem) -> Enveloping {
        Self::from_lie(LieAlgebra::new(rs))
    }

    pub fn from_lie(lie: LieAlgebra) -> Enveloping {
        Enveloping { lie, cache: Mutex::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn one_mono(&self) -> Mono {
        vec![0; self.dim()]
    }

    pub fn gen_mono(&self, a: usize) -> Mono {
        let mut m = self.one_mono();
        m[a] = 1;
        m
    }

    pub fn generator<S: Scalar>(&self, a: usize) -> PbwElement<S> {
        PbwElement::from_mono(self.gen_mono(a), S::one())
    }

    pub fn one<S: Scalar>(&self) -> PbwElement<S> {
        PbwElement::from_mono(self.one_mono(), S::one())
    }

    /// x_j · m by the rewrite x_j x_k = x_k x_j + [x_j, x_k] for k < j.
    pub fn mul_gen_mono(&self, j: usize, m: &Mono) -> Vec<(Mono, BigInt)> {
        if let Some(v) = self.cache.lock().unwrap().get(&(j, m.clone())) {
            return v.clone();
        }
        let first = m.iter().position(|&x| x > 0);
        let result = match first {
            Some(k) if k < j => {
                let mut rest = m.clone();
                rest[k] -= 1;
                let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
                for (t, c) in self.mul_gen_mono(j, &rest) {
                    for (u, d) in self.mul_gen_mono(k, &t) {
                        *acc.entry(u).or_insert_with(BigInt::zero) += &c * &d;
                    }
                }
                for &(l, n) in &self.lie.bracket[j][k] {
                    for (u, d) in self.mul_gen_mono(l, &rest) {
                        *acc.entry(u).or_insert_with(BigInt::zero) += d * n;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
            _ => {
                let mut out = m.clone();
                out[j] += 1;
                vec![(out, BigInt::one())]
            }
        };
        self.cache.lock().unwrap().insert((j, m.clone()), result.clone());
        result
    }

    /// Normal form of m₁ · m₂ for normal monomials.
    pub fn mul_mono(&self, m1: &Mono, m2: &Mono) -> Vec<(Mono, BigInt)> {
        let mut cur: BTreeMap<Mono, BigInt> = BTreeMap::from([(m2.clone(), BigInt::one())]);
        for a in (0..m1.len()).rev() {
            for _ in 0..m1[a] {
                let mut next: BTreeMap<Mono, BigInt> = BTreeMap::new();
                for (t, c) in &cur {
                    for (u, d) in self.mul_gen_mono(a, t) {
                        *next.entry(u).or_insert_with(BigInt::zero) += c * d;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                cur = next;
            }
        }
        cur.into_iter().collect()
    }

    pub fn mul<S: Scalar>(&self, x: &PbwElement<S>, y: &PbwElement<S>) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let c = c1.clone() * c2;
                for (u, d) in self.mul_mono(m1, m2) {
                    out.add_term(u, c.clone() * S::from_bigint(&d));
                }
            }
        }
        out
    }

    /// Normal form of a word of basis elements.
    pub fn normal_form<S: Scalar>(&self, word: &[usize]) -> PbwElement<S> {
        let mut acc = self.one::<S>();
        for &a in word.iter().rev() {
            acc = self.mul(&self.generator(a), &acc);
        }
        acc
    }

    /// Normal form of an arbitrary (possibly unordered) product of elements.
    pub fn product<S: Scalar>(&self, factors: &[PbwElement<S>]) -> PbwElement<S> {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator<S: Scalar>(&self, x: &PbwElement<S>, y: &PbwElement<S>) -> PbwElement<S> {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// All monomials in the f's with total height of weight ≤ depth, ascending.
    pub fn nminus_monomials(&self, depth: i64) -> Vec<Mono> {
        let m = self.lie.num_roots();
        let heights: Vec<i64> = self.lie.rs.positive_roots.iter().map(|b| b.iter().sum()).collect();
        let mut out = Vec::new();
        let mut cur = self.one_mono();
        fn rec(k: usize, left: i64, heights: &[i64], cur: &mut Mono, out: &mut Vec<Mono>) {
            if k == heights.len() {
                out.push(cur.clone());
                return;
            }
            let mut a = 0;
            while a * heights[k] <= left {
                cur[k] = a as u32;
                rec(k + 1, left - a * heights[k], heights, cur, out);
                a += 1;
            }
            cur[k] = 0;
        }
        rec(0, depth, &heights[..m], &mut cur, &mut out);
        out.sort_by_key(|mo| (mo.iter().zip(&heights).map(|(&x, h)| x as i64 * h).sum::<i64>(), mo.clone()));
        out
    }

    /// x · (F^a v_λ) in M_λ, as n₋ monomials with coefficients.
    pub fn act_on_highest(&self, x: usize, mono: &Mono, lambda: &[i64]) -> Vec<(Mono, BigRational)> {
        let m = self.lie.num_roots();
        let r = self.lie.rank();
        let mut out: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (u, c) in self.mul_gen_mono(x, mono) {
            if u[m + r..].iter().any(|&k| k > 0) {
                continue;
            }
            let mut coef = BigRational::from_integer(c);
            for i in 0..r {
                coef *= Scalar::pow(&BigRational::from_int(lambda[i]), u[m + i]);
            }
            if coef.is_zero() {
                continue;
            }
            let mut f = u.clone();
            for k in f[m..].iter_mut() {
                *k = 0;
            }
            *out.entry(f).or_insert_with(BigRational::zero) += coef;
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Δ(x^k) = Σ_j Π binom(k_i, j_i) x^j ⊗ x^{k−j}.
    pub fn coproduct(&self, mono: &Mono) -> Vec<(Mono, Mono, i64)> {
        let mut out = vec![(Vec::new(), Vec::new(), 1i64)];
        for &k in mono {
            let mut next = Vec::new();
            for (a, b, c) in &out {
                for j in 0..=k {
                    let mut a2: Mono = a.clone();
                    a2.push(j);
                    let mut b2: Mono = b.clone();
                    b2.push(k - j);
                    next.push((a2, b2, c * crate::scalar::binomial(k, j)));
                }
            }
            out = next;
        }
        out
    }

    /// Quadratic Casimir Σ (G⁻¹)_{ij} h_i h_j + Σ_β d_β (e_β f_β + f_β e_β),
    /// G_{ij} = a_{ij}/d_j. For sl2 this is 2FE + H + H²/2.
    pub fn casimir<S: Scalar>(&self) -> PbwElement<S> {
        let r = self.lie.rank();
        let rs = &self.lie.rs;
        let g = crate::linalg::Matrix::from_fn(r, r, |i, j| Q::from_frac(rs.cartan[i][j], rs.symmetrizer[j]));
        let gi = g.inverse().unwrap();
        let mut out = PbwElement::zero();
        for i in 0..r {
            for j in 0..r {
                let hh = self.normal_form::<S>(&[self.lie.h(i), self.lie.h(j)]);
                out = out.add(&hh.scale(&S::from_rational(&gi[(i, j)])));
            }
        }
        for (k, beta) in rs.positive_roots.iter().enumerate() {
            let d = S::from_frac(rs.inner(beta, beta), 2);
            let ef = self.normal_form::<S>(&[self.lie.e(k), self.lie.f(k)]);
            let fe = self.normal_form::<S>(&[self.lie.f(k), self.lie.e(k)]);
            out = out.add(&ef.add(&fe).scale(&d));
        }
        out
    }

    /// Eigenvalue of the quadratic Casimir on M_λ, (λ, λ + 2ρ).
    pub fn central_char(&self, lambda: &[i64]) -> Q {
        let c = self.casimir::<Q>();
        let hw: Vec<(Mono, BigRational)> = c
            .terms
            .iter()
            .flat_map(|(mono, coef)| {
                let m = self.lie.num_roots();
                let r = self.lie.rank();
                if mono[m + r..].iter().any(|&k| k > 0) || mono[..m].iter().any(|&k| k > 0) {
                    return None;
                }
                let mut v = coef.clone();
                for i in 0..r {
                    v *= Scalar::pow(&Q::from_int(lambda[i]), mono[m + i]);
                }
                Some((mono.clone(), v))
            })
            .collect();
        hw.into_iter().fold(Q::zero(), |a, (_, v)| a + v)
    }

    pub fn weight_of(&self, mono: &Mono) -> Weight {
        self.lie.mono_weight(mono)
    }

    pub fn render<S: Scalar>(&self, x: &PbwElement<S>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(a, &k)| if k == 1 { self.lie.name(a) } else { format!("{}^{}", self.lie.name(a), k) })
                    .collect();
                let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
                format!("{}*{}", c.to_exact_string(), body)
            })
            .collect();
        parts.join(" + ")
    }
}

/// χ_λ(Ω) = (λ² + 2λ)/2 for sl2.
pub fn central_char_sl2(lambda: i64) -> Q {
    Q::from_frac(lambda * lambda + 2 * lambda, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations() {
        let env = Enveloping::new(&RootSystem::new("A1").unwrap());
        let (f, h, e) = (env.lie.f(0), env.lie.h(0), env.lie.e(0));
        assert_eq!(env.lie.bracket[e][f], vec![(h, 1)]);
        assert_eq!(env.lie.bracket[h][e], vec![(e, 2)]);
        assert_eq!(env.lie.bracket[h][f], vec![(f, -2)]);
        let lhs = env.normal_form::<Q>(&[e, f, f]);
        let rhs = env
            .normal_form::<Q>(&[f, f, e])
            .add(&env.normal_form::<Q>(&[f, h]).scale(&Q::from_int(2)))
            .sub(&env.normal_form::<Q>(&[f]).scale(&Q::from_int(2)));
        assert_eq!(lhs, rhs);
        let c = env.casimir::<Q>();
        assert_eq!(env.render(&c), "1*h1 + 1/2*h1^2 + 2*f[1]*e[1]");
        for l in [-4, -1, 0, 2] {
            assert_eq!(env.central_char(&[l]), central_char_sl2(l));
        }
    }

    #[test]
    fn chevalley_bases_are_integral() {
        for l in ["A2", "B2", "G2", "A3"] {
            let lie = LieAlgebra::new(&RootSystem::new(l).unwrap());
            assert!(lie.jacobi_holds(), "{l}");
        }
    }
}
