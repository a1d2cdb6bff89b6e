//! Exact arithmetic in the cyclotomic field Q(q), q a primitive ℓ-th root of unity.
//!
//! Elements are rational polynomials in `q` reduced modulo the ℓ-th cyclotomic
//! polynomial, so the representation is canonical. A value that never met a
//! field (built from `zero()`, `one()` or an integer) is a plain rational and
//! adopts the field of whatever it is combined with.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    pub order: u32,
    /// Monic cyclotomic polynomial, ascending coefficients.
    pub phi: Vec<i64>,
}

impl CycloField {
    pub fn new(order: u32) -> Arc<CycloField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        Arc::new(CycloField { order, phi: cyclotomic_poly(order) })
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// q^k for any integer k.
    pub fn q_pow(self: &Arc<Self>, k: i64) -> Cyclo {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Cyclo::reduce(coeffs, Some(self.clone()))
    }

    pub fn q(self: &Arc<Self>) -> Cyclo {
        self.q_pow(1)
    }
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd] / den[dd];
        quo[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

/// Φ_n via x^n − 1 = Π_{d | n} Φ_d.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

#[derive(Clone)]
pub struct Cyclo {
    coeffs: Vec<BigRational>,
    field: Option<Arc<CycloField>>,
}

impl Cyclo {
    fn reduce(mut coeffs: Vec<BigRational>, field: Option<Arc<CycloField>>) -> Cyclo {
        if let Some(f) = &field {
            let n = f.degree();
            while coeffs.len() > n {
                let top = coeffs.pop().unwrap();
                if top.is_zero() {
                    continue;
                }
                let k = coeffs.len() - n;
                for j in 0..n {
                    let c = f.phi[j];
                    if c != 0 {
                        coeffs[k + j] -= &top * BigRational::from_integer(c.into());
                    }
                }
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Cyclo { coeffs, field }
    }

    pub fn from_rational(r: BigRational) -> Cyclo {
        Cyclo::reduce(vec![r], None)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn field(&self) -> Option<&Arc<CycloField>> {
        self.field.as_ref()
    }

    fn join(a: &Option<Arc<CycloField>>, b: &Option<Arc<CycloField>>) -> Option<Arc<CycloField>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert_eq!(x.order, y.order, "mixing cyclotomic fields of different order");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    pub fn inverse(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in cyclotomic field");
        let Some(f) = &self.field else {
            return Cyclo::from_rational(BigRational::one() / &self.coeffs[0]);
        };
        if self.coeffs.len() == 1 {
            return Cyclo::reduce(vec![BigRational::one() / &self.coeffs[0]], Some(f.clone()));
        }
        // Solve self * b = 1 in the power basis.
        let n = f.degree();
        let mut m = Matrix::<BigRational>::zeros(n, n);
        for j in 0..n {
            let mut basis = vec![BigRational::zero(); j + 1];
            basis[j] = BigRational::one();
            let col = self.clone() * Cyclo::reduce(basis, Some(f.clone()));
            for (i, c) in col.coeffs.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let sol = m.solve(&rhs).expect("nonzero cyclotomic element is invertible");
        Cyclo::reduce(sol, Some(f.clone()))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo { coeffs: Vec::new(), field: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo { coeffs: vec![BigRational::one()], field: None }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), field: self.field }
    }
}

impl<'a> Add<&'a Cyclo> for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        let field = Cyclo::join(&self.field, &rhs.field);
        let mut coeffs = self.coeffs;
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        Cyclo::reduce(coeffs, field)
    }
}

impl<'a> Sub<&'a Cyclo> for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Cyclo> for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        let field = Cyclo::join(&self.field, &rhs.field);
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Cyclo::reduce(coeffs, field)
    }
}

impl<'a> Div<&'a Cyclo> for Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &'a Cyclo) -> Cyclo {
        let field = Cyclo::join(&self.field, &rhs.field);
        let mut inv = rhs.inverse();
        if inv.field.is_none() {
            inv.field = field;
        }
        self * &inv
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo { <Cyclo as $tr<&Cyclo>>::$m(self, &rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Scalar for Cyclo {
    fn from_int(n: i64) -> Self {
        Cyclo::from_rational(BigRational::from_integer(n.into()))
    }

    fn from_bigint(n: &num_bigint::BigInt) -> Self {
        Cyclo::from_rational(BigRational::from_integer(n.clone()))
    }

    fn from_rational(r: &BigRational) -> Self {
        Cyclo::from_rational(r.clone())
    }

    fn to_exact_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_exact_string();
            parts.push(match k {
                0 => cs,
                1 => format!("{cs}*q"),
                _ => format!("{cs}*q^{k}"),
            });
        }
        parts.join(" + ")
    }

    fn to_i64(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => self.coeffs[0].to_i64(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
    }

    #[test]
    fn root_of_unity_relations() {
        for ell in [3u32, 5, 7, 9] {
            let f = CycloField::new(ell);
            let q = f.q();
            assert_eq!(q.pow(ell), Cyclo::one());
            for k in 1..ell {
                assert_ne!(q.pow(k), Cyclo::one());
            }
            let inv = Cyclo::one() / q.clone();
            assert_eq!(inv, f.q_pow(-1));
            let d = q.clone() - &inv;
            assert_eq!((d.clone() / d.clone()), Cyclo::one());
        }
    }
}
