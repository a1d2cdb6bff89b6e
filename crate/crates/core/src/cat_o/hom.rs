//! Intertwiners between truncated modules.
//!
//! Unknowns are the blocks φ_μ : V[μ] → W[μ] for μ inside W's box; each
//! generator gives φ_{μ+wt g} g_V − g_W φ_μ = 0 whenever every map in it is
//! known. Dimensions are certified by recomputing one level deeper.

use std::collections::BTreeMap;

use crate::cat_o::module::WeightModule;
use crate::linalg::Matrix;
use crate::rootsys::Weight;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<S> {
    /// Blocks dim W[μ] × dim V[μ]; absent blocks are zero.
    pub blocks: BTreeMap<Weight, Matrix<S>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatOError {
    #[error("{what} not stable: {lo} at depth {depth}, {hi} at depth {next}; increase depth")]
    Unstable { what: &'static str, depth: i64, next: i64, lo: usize, hi: usize },
    #[error("weight {0} is not antidominant")]
    NotAntidominant(i64),
}

impl<S: Scalar> ModuleMap<S> {
    pub fn zero() -> Self {
        ModuleMap { blocks: BTreeMap::new() }
    }

    pub fn identity(v: &WeightModule<S>) -> Self {
        let blocks = v.weights.iter().zip(&v.dims).map(|(w, &d)| (w.clone(), Matrix::identity(d))).collect();
        ModuleMap { blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    pub fn block(&self, w: &[i64]) -> Option<&Matrix<S>> {
        self.blocks.get(w)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut blocks = BTreeMap::new();
        for (w, b) in &other.blocks {
            if let Some(a) = self.blocks.get(w) {
                if a.cols() == b.rows() {
                    blocks.insert(w.clone(), a.mul(b));
                }
            }
        }
        ModuleMap { blocks }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        for (w, b) in &other.blocks {
            let nb = match blocks.get(w) {
                Some(a) => a.add(b),
                None => b.clone(),
            };
            blocks.insert(w.clone(), nb);
        }
        ModuleMap { blocks }
    }

    pub fn scale(&self, c: &S) -> Self {
        ModuleMap { blocks: self.blocks.iter().map(|(w, m)| (w.clone(), m.scale(c))).collect() }
    }

    /// Blocks restricted to weights satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&[i64]) -> bool) -> Self {
        ModuleMap { blocks: self.blocks.iter().filter(|(w, _)| keep(w)).map(|(w, m)| (w.clone(), m.clone())).collect() }
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(|m| m.rank()).sum()
    }

    pub fn flatten(&self) -> Vec<S> {
        self.blocks.values().flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).to_vec())).collect()
    }
}

/// Basis of the intertwiners V → W visible on the truncations.
pub fn hom_truncated<S: Scalar>(v: &WeightModule<S>, w: &WeightModule<S>) -> Vec<ModuleMap<S>> {
    // unknown blocks
    let mut offs: BTreeMap<Weight, (usize, usize, usize)> = BTreeMap::new();
    let mut n = 0;
    for (vi, mu) in v.weights.iter().enumerate() {
        if !w.in_box(mu) {
            continue;
        }
        let dw = w.dim_at(mu);
        if dw == 0 {
            continue;
        }
        offs.insert(mu.clone(), (n, dw, v.dims[vi]));
        n += dw * v.dims[vi];
    }
    // φ_μ is determined (possibly zero) when W[μ] is known or V[μ] = 0 for sure
    let determined = |mu: &[i64]| w.knows(mu) || (v.knows(mu) && v.dim_at(mu) == 0);
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (vi, mu) in v.weights.iter().enumerate() {
        if !determined(mu) {
            continue;
        }
        for g in v.gens() {
            let t = v.target(g, mu);
            if !(v.known(g, mu) && determined(&t)) {
                continue;
            }
            // W's action out of μ must be known too
            if w.dim_at(mu) > 0 && !w.known(g, mu) {
                continue;
            }
            let dt_w = w.dim_at(&t);
            if dt_w == 0 {
                continue;
            }
            let dv = v.dims[vi];
            let gv = v.matrix(g, vi);
            let gw = w.idx(mu).and_then(|wi| w.matrix(g, wi));
            for a in 0..dt_w {
                for b in 0..dv {
                    let mut row = vec![S::zero(); n];
                    let mut nonzero = false;
                    // φ_t g_V
                    if let (Some(gv), Some(&(o, _, dvt))) = (gv, offs.get(&t)) {
                        for c in 0..dvt {
                            let x = &gv[(c, b)];
                            if !x.is_zero() {
                                row[o + a * dvt + c] = row[o + a * dvt + c].clone() + x;
                                nonzero = true;
                            }
                        }
                    }
                    // − g_W φ_μ
                    if let (Some(gw), Some(&(o, dwm, _))) = (gw, offs.get(mu)) {
                        for c in 0..dwm {
                            let x = &gw[(a, c)];
                            if !x.is_zero() {
                                row[o + c * dv + b] = row[o + c * dv + b].clone() - x;
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
    } else {
        Matrix::from_rows(rows, n).nullspace()
    };
    kernel
        .into_iter()
        .map(|vec| {
            let blocks = offs
                .iter()
                .map(|(mu, &(o, dw, dv))| (mu.clone(), Matrix::from_fn(dw, dv, |a, b| vec[o + a * dv + b].clone())))
                .collect();
            ModuleMap { blocks }
        })
        .collect()
}

/// hom with a two-depth stability certificate; `build(d)` returns (V, W) at depth d.
pub fn hom_space<S: Scalar>(
    build: impl Fn(i64) -> (WeightModule<S>, WeightModule<S>),
    depth: i64,
) -> Result<Vec<ModuleMap<S>>, CatOError> {
    let (v, w) = build(depth);
    let lo = hom_truncated(&v, &w);
    let (v1, w1) = build(depth + 1);
    let hi = hom_truncated(&v1, &w1).len();
    if lo.len() != hi {
        return Err(CatOError::Unstable { what: "hom dimension", depth, next: depth + 1, lo: lo.len(), hi });
    }
    Ok(lo)
}

/// Whether φ intertwines wherever both sides are known.
pub fn is_intertwiner<S: Scalar>(phi: &ModuleMap<S>, v: &WeightModule<S>, w: &WeightModule<S>) -> bool {
    for (vi, mu) in v.weights.iter().enumerate() {
        let Some(p) = phi.block(mu) else { continue };
        for g in v.gens() {
            let t = v.target(g, mu);
            let Some(pt) = phi.block(&t) else { continue };
            let (Some(gv), Some(wi)) = (v.matrix(g, vi), w.idx(mu)) else { continue };
            let Some(gw) = w.matrix(g, wi) else { continue };
            if !pt.mul(gv).sub(&gw.mul(p)).is_zero() {
                return false;
            }
        }
    }
    true
}
