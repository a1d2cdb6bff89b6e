//! Whittaker vectors in the weight completion of a truncated module.
//!
//! v = Σ_w v_w over weights of level ≤ D. For a character on n₊ the
//! equations read e_i v_{t−α_i} = η_i v_t for every target t, and
//! e_β v_{t−β} = 0 for nonsimple β; for n₋ swap e ↔ f and the sign of the
//! shift. Equations whose source lies deeper than D are dropped, so what is
//! computed is the projection of the completed solution space; its dimension
//! is certified by comparing D with D+1.

use std::collections::BTreeMap;

use crate::cat_o::module::{Gen, WeightModule};
use crate::enveloping::chevalley::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::matrixel::elements::root_matrix;
use crate::rootsys::Weight;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerCharacter<S> {
    pub eta: Vec<S>,
    /// true: a character of U(n₊) (η(e_i) = η_i); false: of U(n₋).
    pub positive: bool,
}

impl<S: Scalar> WhittakerCharacter<S> {
    pub fn plus(eta: Vec<S>) -> Self {
        WhittakerCharacter { eta, positive: true }
    }

    pub fn minus(eta: Vec<S>) -> Self {
        WhittakerCharacter { eta, positive: false }
    }

    pub fn nonsingular(&self) -> bool {
        self.eta.iter().all(|x| !x.is_zero())
    }
}

/// A vector of the completion, known on all weights of level ≤ depth.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletedVector<S> {
    pub depth: i64,
    pub comps: BTreeMap<Weight, Vec<S>>,
}

impl<S: Scalar> CompletedVector<S> {
    pub fn truncate(&self, v: &WeightModule<S>, depth: i64) -> Self {
        let comps = self.comps.iter().filter(|(w, _)| level(v, w) <= depth).map(|(w, x)| (w.clone(), x.clone())).collect();
        CompletedVector { depth, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|x| x.iter().all(|c| c.is_zero()))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WhittakerError {
    #[error("Whittaker dimension not stable: {lo} at depth {depth}, {hi} at depth {next}; increase depth")]
    Unstable { depth: i64, next: i64, lo: usize, hi: usize },
    #[error("module is truncated at depth {have}, need {need}")]
    TooShallow { have: i64, need: i64 },
    #[error("{0}")]
    Unsupported(String),
}

/// Distance from the truncation anchors (0 for untruncated modules).
pub fn level<S: Scalar>(v: &WeightModule<S>, w: &[i64]) -> i64 {
    v.boxes.iter().filter(|b| b.depth.is_some()).map(|b| b.level(w).unwrap_or(i64::MAX)).max().unwrap_or(0)
}

fn module_depth<S: Scalar>(v: &WeightModule<S>) -> Option<i64> {
    v.boxes.iter().filter_map(|b| b.depth).min()
}

/// Solutions at one depth. With `finite`, components of top level must vanish
/// (genuine vectors of V rather than of its completion).
pub fn whittaker_truncated<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    chi: &WhittakerCharacter<S>,
    finite: bool,
    depth: i64,
) -> Vec<CompletedVector<S>> {
    let unknowns: Vec<(usize, Weight)> =
        v.weights.iter().enumerate().filter(|(_, w)| level(v, w) <= depth).map(|(i, w)| (i, w.clone())).collect();
    let mut offs: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut n = 0;
    for (i, w) in &unknowns {
        offs.insert(w.clone(), n);
        n += v.dims[*i];
    }
    let r = lie.rank();
    let sign = if chi.positive { 1 } else { -1 };
    let mut rows: Vec<Vec<S>> = Vec::new();
    let inside = |w: &[i64]| offs.contains_key(w);
    for (ti, t) in &unknowns {
        let dt = v.dims[*ti];
        // simple generators
        for i in 0..r {
            let g = if chi.positive { Gen::E(i) } else { Gen::F(i) };
            let a = v.alpha(i);
            let s: Weight = t.iter().zip(&a).map(|(x, y)| x - sign * y).collect();
            let mut block: Option<(usize, Matrix<S>)> = None;
            if inside(&s) {
                let si = v.idx(&s).unwrap();
                match v.matrix(g, si) {
                    Some(m) => block = Some((offs[&s], m.clone())),
                    None if v.knows(t) => {}
                    None => continue,
                }
            } else if v.idx(&s).is_some() || !v.knows(&s) {
                continue;
            }
            for row in 0..dt {
                let mut eq = vec![S::zero(); n];
                if let Some((o, m)) = &block {
                    for c in 0..m.cols() {
                        eq[o + c] = m[(row, c)].clone();
                    }
                }
                eq[offs[t] + row] = eq[offs[t] + row].clone() - &chi.eta[i];
                rows.push(eq);
            }
        }
        // nonsimple root vectors act by zero
        for k in 0..lie.num_roots() {
            if lie.rs.height(&lie.rs.positive_roots[k]) == 1 {
                continue;
            }
            let bw = lie.rs.root_weight(&lie.rs.positive_roots[k]);
            let s: Weight = t.iter().zip(&bw).map(|(x, y)| x - sign * y).collect();
            if !inside(&s) {
                continue;
            }
            let Ok(Some((_, m))) = root_matrix(v, lie, k, chi.positive, &s) else { continue };
            for row in 0..dt {
                let mut eq = vec![S::zero(); n];
                for c in 0..m.cols() {
                    eq[offs[&s] + c] = m[(row, c)].clone();
                }
                rows.push(eq);
            }
        }
        if finite && level(v, t) == depth {
            for row in 0..dt {
                let mut eq = vec![S::zero(); n];
                eq[offs[t] + row] = S::one();
                rows.push(eq);
            }
        }
    }
    let sol = if rows.is_empty() { Subspace::full(n).basis } else { Matrix::from_rows(rows, n).nullspace() };
    sol.into_iter()
        .map(|x| {
            let comps = unknowns
                .iter()
                .map(|(i, w)| {
                    let o = offs[w];
                    (w.clone(), x[o..o + v.dims[*i]].to_vec())
                })
                .collect();
            CompletedVector { depth, comps }
        })
        .collect()
}

/// Solutions with a D / D+1 stability certificate. The module must be
/// truncated at depth ≥ D+1 (or not at all).
pub fn whittaker_space<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    chi: &WhittakerCharacter<S>,
    finite: bool,
    depth: i64,
) -> Result<Vec<CompletedVector<S>>, WhittakerError> {
    if let Some(have) = module_depth(v) {
        if have < depth + 1 {
            return Err(WhittakerError::TooShallow { have, need: depth + 1 });
        }
    }
    let lo = whittaker_truncated(v, lie, chi, finite, depth);
    let hi = whittaker_truncated(v, lie, chi, finite, depth + 1);
    if lo.len() != hi.len() {
        return Err(WhittakerError::Unstable { depth, next: depth + 1, lo: lo.len(), hi: hi.len() });
    }
    // the deeper solutions restrict onto the shallower ones
    let flat = |c: &CompletedVector<S>| -> Vec<S> { c.comps.values().flatten().cloned().collect() };
    let amb = lo.first().map(|c| flat(c).len()).unwrap_or(0);
    let span_lo = Subspace::span(&lo.iter().map(flat).collect::<Vec<_>>(), amb);
    let span_hi = Subspace::span(&hi.iter().map(|c| flat(&c.truncate(v, depth))).collect::<Vec<_>>(), amb);
    if !lo.is_empty() && span_lo != span_hi {
        return Err(WhittakerError::Unstable { depth, next: depth + 1, lo: lo.len(), hi: span_hi.dim() });
    }
    Ok(lo)
}
