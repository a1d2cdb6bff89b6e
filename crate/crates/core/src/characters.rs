//! Formal characters over the Weyl denominator, their truncations, and block
//! combinatorics (composition multiplicities, Verma flags, Cartan matrices).

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::kl::KlTable;
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, Weight};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Weight),
    #[error("weight {0:?} is not strictly antidominant")]
    NotAntidominant(Weight),
    #[error("adding characters with different denominators")]
    DenominatorMismatch,
}

/// Σ n_μ e^μ, divided by Π_{β>0}(1 − e^{−β}) when `denominator` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalCharacter {
    pub numerator: BTreeMap<Weight, i64>,
    pub denominator: bool,
}

/// A depth-truncated view: weights μ ≤ anchor with ht(anchor − μ) ≤ depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedCharacter {
    pub anchor: Weight,
    pub depth: i64,
    pub mults: BTreeMap<Weight, i64>,
}

impl TruncatedCharacter {
    pub fn get(&self, w: &[i64]) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "anchor": self.anchor,
            "depth": self.depth,
            "terms": self.mults.iter().map(|(w, m)| serde_json::json!({"weight": w, "mult": m})).collect::<Vec<_>>(),
        })
    }
}

impl FormalCharacter {
    pub fn zero(denominator: bool) -> Self {
        FormalCharacter { numerator: BTreeMap::new(), denominator }
    }

    pub fn monomial(w: Weight, denominator: bool) -> Self {
        FormalCharacter { numerator: BTreeMap::from([(w, 1)]), denominator }
    }

    fn clean(mut self) -> Self {
        self.numerator.retain(|_, v| *v != 0);
        self
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        if self.denominator != other.denominator {
            return Err(CharacterError::DenominatorMismatch);
        }
        let mut n = self.numerator.clone();
        for (w, c) in &other.numerator {
            *n.entry(w.clone()).or_insert(0) += c;
        }
        Ok(FormalCharacter { numerator: n, denominator: self.denominator }.clean())
    }

    pub fn scale(&self, k: i64) -> Self {
        let n = self.numerator.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        FormalCharacter { numerator: n, denominator: self.denominator }.clean()
    }

    /// Product with a finite character.
    pub fn mul_finite(&self, finite: &Self) -> Self {
        assert!(!finite.denominator, "second factor must be finite");
        let mut n: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, x) in &self.numerator {
            for (b, y) in &finite.numerator {
                let w: Weight = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *n.entry(w).or_insert(0) += x * y;
            }
        }
        FormalCharacter { numerator: n, denominator: self.denominator }.clean()
    }

    /// Exact equality by clearing denominators.
    pub fn equals(&self, other: &Self, rs: &RootSystem) -> bool {
        match (self.denominator, other.denominator) {
            (a, b) if a == b => self.numerator == other.numerator,
            (true, false) => other.mul_finite(&weyl_denominator(rs)).numerator == self.numerator,
            (false, true) => self.mul_finite(&weyl_denominator(rs)).numerator == other.numerator,
            _ => unreachable!(),
        }
    }

    /// Highest numerator weight for the height order; every other numerator
    /// weight must lie below it.
    pub fn top_weight(&self, rs: &RootSystem) -> Option<Weight> {
        let top = self
            .numerator
            .keys()
            .max_by(|a, b| weight_height(rs, a).cmp(&weight_height(rs, b)).then(a.cmp(b)))?
            .clone();
        Some(top)
    }

    pub fn truncate(&self, rs: &RootSystem, depth: i64) -> TruncatedCharacter {
        let anchor = self.top_weight(rs).unwrap_or_else(|| vec![0; rs.rank]);
        self.truncate_at(rs, &anchor, depth)
    }

    pub fn truncate_at(&self, rs: &RootSystem, anchor: &[i64], depth: i64) -> TruncatedCharacter {
        let mut mults: BTreeMap<Weight, i64> = BTreeMap::new();
        let kostant = if self.denominator { kostant_table(rs, depth) } else { HashMap::from([(vec![0; rs.rank], 1)]) };
        for (l, n) in &self.numerator {
            for (gamma, k) in &kostant {
                let gw = rs.root_weight(gamma);
                let mu: Weight = l.iter().zip(&gw).map(|(a, b)| a - b).collect();
                if in_box(rs, anchor, &mu, depth) {
                    *mults.entry(mu).or_insert(0) += n * k;
                }
            }
        }
        mults.retain(|_, v| *v != 0);
        TruncatedCharacter { anchor: anchor.to_vec(), depth, mults }
    }
}

/// Π_{β>0}(1 − e^{−β}).
pub fn weyl_denominator(rs: &RootSystem) -> FormalCharacter {
    let mut acc = FormalCharacter::monomial(vec![0; rs.rank], false);
    for b in &rs.positive_roots {
        let nb: Weight = rs.root_weight(b).into_iter().map(|x| -x).collect();
        let mut f = FormalCharacter::monomial(vec![0; rs.rank], false);
        f.numerator.insert(nb, -1);
        acc = acc.mul_finite(&f);
    }
    acc
}

/// Simple-root coordinates of a weight in the root lattice, if it is one.
pub fn root_coords(rs: &RootSystem, w: &[i64]) -> Option<Vec<i64>> {
    let inv = rs.basis_change().inverse().expect("Cartan matrix invertible");
    let v: Vec<BigRational> = w.iter().map(|&x| BigRational::from_int(x)).collect();
    inv.mul_vec(&v).iter().map(|c| c.to_i64()).collect()
}

/// ⟨λ, ρ^∨⟩ scaled to an integer-comparable rational.
fn weight_height(rs: &RootSystem, w: &[i64]) -> BigRational {
    let inv = rs.basis_change().inverse().expect("Cartan matrix invertible");
    let v: Vec<BigRational> = w.iter().map(|&x| BigRational::from_int(x)).collect();
    inv.mul_vec(&v).into_iter().fold(BigRational::zero(), |a, b| a + b)
}

/// anchor − μ ∈ Q₊ with height ≤ depth.
pub fn in_box(rs: &RootSystem, anchor: &[i64], mu: &[i64], depth: i64) -> bool {
    let diff: Weight = anchor.iter().zip(mu).map(|(a, b)| a - b).collect();
    match root_coords(rs, &diff) {
        Some(c) => c.iter().all(|&x| x >= 0) && c.iter().sum::<i64>() <= depth,
        None => false,
    }
}

/// Kostant partition function on Q₊ up to height `depth`, keyed by
/// simple-root coordinates.
pub fn kostant_table(rs: &RootSystem, depth: i64) -> HashMap<Vec<i64>, i64> {
    let mut table: HashMap<Vec<i64>, i64> = HashMap::from([(vec![0; rs.rank], 1)]);
    for b in &rs.positive_roots {
        let hb: i64 = b.iter().sum();
        let mut next = HashMap::new();
        for (g, c) in &table {
            let hg: i64 = g.iter().sum();
            let mut k = 0;
            while hg + k * hb <= depth {
                let key: Vec<i64> = g.iter().zip(b).map(|(x, y)| x + k * y).collect();
                *next.entry(key).or_insert(0) += c;
                k += 1;
            }
        }
        table = next;
    }
    table
}

pub fn verma_char(l: &[i64]) -> FormalCharacter {
    FormalCharacter::monomial(l.to_vec(), true)
}

pub fn weyl_char(rs: &RootSystem, l: &[i64]) -> Result<FormalCharacter, CharacterError> {
    if !rs.is_dominant(l) {
        return Err(CharacterError::NotDominant(l.to_vec()));
    }
    let od = rs.orbit_data(l);
    let mut acc = FormalCharacter::zero(true);
    for (p, &w) in od.orbit.iter().zip(&od.coset_reps) {
        let sign = if rs.length(w) % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&verma_char(p).scale(sign))?;
    }
    Ok(acc)
}

/// ch P_λ for strictly antidominant λ: the sum of the Verma characters in the orbit.
pub fn big_proj_char(rs: &RootSystem, l: &[i64]) -> Result<FormalCharacter, CharacterError> {
    if !rs.is_strictly_antidominant(l) {
        return Err(CharacterError::NotAntidominant(l.to_vec()));
    }
    let od = rs.orbit_data(l);
    let mut acc = FormalCharacter::zero(true);
    for p in &od.orbit {
        acc = acc.add(&verma_char(p))?;
    }
    Ok(acc)
}

/// Weyl dimension formula, Π (λ+ρ, β)/(ρ, β).
pub fn weyl_dimension(rs: &RootSystem, l: &[i64]) -> BigRational {
    let lr: Vec<i64> = l.iter().map(|x| x + 1).collect();
    let mut num = BigRational::from_int(1);
    for b in &rs.positive_roots {
        // (μ, β) = Σ_i b_i d_i ⟨μ, h_i⟩
        let p = |m: &[i64]| -> i64 { (0..rs.rank).map(|i| b[i] * rs.symmetrizer[i] * m[i]).sum() };
        num = num * BigRational::from_frac(p(&lr), p(&rs.rho()));
    }
    num
}

/// Block data of a strictly antidominant weight: orbit, multiplicities, Cartan matrix.
#[derive(Clone, Debug, Serialize)]
pub struct BlockCombinatorics {
    pub lambda: Weight,
    /// Minimal coset representatives, (length, word) order; index 0 is λ itself.
    pub reps: Vec<usize>,
    pub weights: Vec<Weight>,
    /// mult[y][x] = [M_{y·λ} : L_{x·λ}].
    pub mult: Vec<Vec<i64>>,
    /// cartan[x][y] = [P_{x·λ} : L_{y·λ}].
    pub cartan: Vec<Vec<i64>>,
}

/// [M_{y·λ} : L_{x·λ}] = P_{w∘y, w∘x}(1) for λ strictly antidominant and
/// x, y minimal coset representatives.
pub fn mult_verma_simple(rs: &RootSystem, kl: &KlTable, x: usize, y: usize) -> i64 {
    let w0 = rs.longest();
    kl.poly(rs.mul(w0, y), rs.mul(w0, x)).iter().sum()
}

pub fn block_combinatorics(rs: &RootSystem, kl: &KlTable, l: &[i64]) -> Result<BlockCombinatorics, CharacterError> {
    if !rs.is_strictly_antidominant(l) {
        return Err(CharacterError::NotAntidominant(l.to_vec()));
    }
    let od = rs.orbit_data(l);
    let n = od.coset_reps.len();
    let mult: Vec<Vec<i64>> = (0..n)
        .map(|y| (0..n).map(|x| mult_verma_simple(rs, kl, od.coset_reps[x], od.coset_reps[y])).collect())
        .collect();
    let cartan = (0..n)
        .map(|x| (0..n).map(|y| (0..n).map(|w| mult[w][x] * mult[w][y]).sum()).collect())
        .collect();
    Ok(BlockCombinatorics { lambda: l.to_vec(), reps: od.coset_reps, weights: od.orbit, mult, cartan })
}

impl BlockCombinatorics {
    /// (P_{x·λ} : M_{y·λ}) by BGG reciprocity.
    pub fn verma_flag(&self, x: usize, y: usize) -> i64 {
        self.mult[y][x]
    }

    pub fn cartan_symmetric(&self) -> bool {
        let n = self.cartan.len();
        (0..n).all(|i| (0..n).all(|j| self.cartan[i][j] == self.cartan[j][i]))
    }

    pub fn cartan_matrix(&self) -> Matrix<BigRational> {
        let n = self.cartan.len();
        Matrix::from_fn(n, n, |i, j| BigRational::from_int(self.cartan[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verma_truncations() {
        let a1 = RootSystem::new("A1").unwrap();
        let t = verma_char(&[0]).truncate(&a1, 3);
        assert_eq!(t.mults, BTreeMap::from([(vec![0], 1), (vec![-2], 1), (vec![-4], 1), (vec![-6], 1)]));
        let a2 = RootSystem::new("A2").unwrap();
        let t = verma_char(&[0, 0]).truncate(&a2, 4);
        assert_eq!(t.get(&[-1, -1]), 2);
        assert_eq!(t.get(&[0, 0]), 1);
    }

    #[test]
    fn weyl_characters() {
        let a1 = RootSystem::new("A1").unwrap();
        let c = weyl_char(&a1, &[2]).unwrap();
        let t = c.truncate(&a1, 10);
        assert_eq!(t.mults, BTreeMap::from([(vec![2], 1), (vec![0], 1), (vec![-2], 1)]));
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(weyl_char(&a2, &[1, 1]).unwrap().truncate(&a2, 10).total(), 8);
        assert!(weyl_char(&a1, &[-1]).is_err());
    }

    #[test]
    fn big_projective_sl2() {
        let a1 = RootSystem::new("A1").unwrap();
        let p = big_proj_char(&a1, &[-4]).unwrap();
        let expect = verma_char(&[-4]).add(&verma_char(&[2])).unwrap();
        assert!(p.equals(&expect, &a1));
        assert!(big_proj_char(&a1, &[0]).is_err());
    }
}
