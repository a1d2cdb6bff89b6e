//! Socle and radical series of truncated modules over products of sl2's.
//!
//! A singular vector v of weight μ generates a simple module iff, for every
//! factor i with μ_i ≥ 0, f_i^{μ_i+1} v = 0. That criterion is only right
//! for rank-one factors, which is all this file is used for.

use std::collections::BTreeMap;

use crate::cat_o::hom::CatOError;
use crate::cat_o::module::{Gen, Sub, WeightModule};
use crate::linalg::{Matrix, Subspace};
use crate::rootsys::Weight;
use crate::scalar::Scalar;

/// Highest-weight vectors of simple submodules, per weight.
pub fn simple_vectors<S: Scalar>(v: &WeightModule<S>) -> Sub<S> {
    let sing = v.singular();
    sing.into_iter()
        .enumerate()
        .map(|(wi, s)| {
            let mu = &v.weights[wi];
            let mut rows: Vec<Vec<S>> = Vec::new();
            for i in 0..v.rank() {
                if mu[i] < 0 {
                    continue;
                }
                let word = vec![Gen::F(i); (mu[i] + 1) as usize];
                // unknown powers (leaving the box) impose nothing
                if let Some((_, m)) = v.word_matrix(&word, mu) {
                    rows.extend(m.row_vecs());
                }
            }
            if rows.is_empty() || s.dim() == 0 {
                return s;
            }
            let d = v.dims[wi];
            let k = Subspace::span(&Matrix::from_rows(rows, d).nullspace(), d);
            s.intersect(&k)
        })
        .collect()
}

pub fn socle<S: Scalar>(v: &WeightModule<S>) -> Sub<S> {
    v.generate(&simple_vectors(v))
}

/// Preimage in V of a submodule `qs` of `q = V / sub`.
pub fn lift_sub<S: Scalar>(v: &WeightModule<S>, sub: &Sub<S>, q: &WeightModule<S>, qs: &Sub<S>) -> Sub<S> {
    v.weights
        .iter()
        .zip(sub)
        .map(|(w, s)| match q.idx(w) {
            Some(qi) => s.lift(&qs[qi]),
            None => s.clone(),
        })
        .collect()
}

pub fn sub_dim<S>(s: &Sub<S>) -> usize {
    s.iter().map(|x| x.basis.len()).sum()
}

/// 0 = S_0 ⊂ S_1 ⊂ … ⊂ S_n = V with S_{k+1}/S_k = soc(V/S_k).
/// Stops early (without reaching V) after `max_len` steps.
pub fn socle_series<S: Scalar>(v: &WeightModule<S>, max_len: usize) -> Vec<Sub<S>> {
    let mut series = vec![v.zero_sub()];
    let total = v.total_dim();
    while sub_dim(series.last().unwrap()) < total && series.len() <= max_len {
        let cur = series.last().unwrap();
        let q = v.quotient(cur);
        let s = socle(&q);
        if sub_dim(&s) == 0 {
            break;
        }
        series.push(lift_sub(v, cur, &q, &s));
    }
    series
}

/// Simple constituents of each socle layer: highest weight → multiplicity,
/// keeping only weights accepted by `trust`.
pub fn socle_layers<S: Scalar>(
    v: &WeightModule<S>,
    max_len: usize,
    trust: impl Fn(&[i64]) -> bool,
) -> Vec<BTreeMap<Weight, usize>> {
    let series = socle_series(v, max_len);
    series
        .windows(2)
        .map(|pair| {
            let q = v.quotient(&pair[0]);
            let sv = simple_vectors(&q);
            let mut layer = BTreeMap::new();
            for (wi, s) in sv.iter().enumerate() {
                let mu = &q.weights[wi];
                if s.dim() > 0 && trust(mu) {
                    *layer.entry(mu.clone()).or_insert(0) += s.dim();
                }
            }
            layer
        })
        .collect()
}

/// rad^k V = (soc^k V^c)^⊥, listed from V = rad^0 downward.
pub fn radical_series<S: Scalar>(v: &WeightModule<S>, max_len: usize) -> Vec<Sub<S>> {
    let dual = v.contragredient();
    socle_series(&dual, max_len).iter().map(|s| s.iter().map(|x| x.perp()).collect()).collect()
}

pub fn same_sub<S: Scalar>(a: &Sub<S>, b: &Sub<S>) -> bool {
    a.iter().zip(b).all(|(x, y)| x.dim() == y.dim() && x.contains_space(y))
}

/// Socle and radical series coincide (reversed), restricted to weights
/// accepted by `trust`.
pub fn is_rigid<S: Scalar>(v: &WeightModule<S>, max_len: usize, trust: impl Fn(&[i64]) -> bool) -> bool {
    let soc = socle_series(v, max_len);
    let rad = radical_series(v, max_len);
    if soc.len() != rad.len() {
        return false;
    }
    let n = soc.len() - 1;
    (0..=n).all(|k| {
        let (a, b) = (&soc[k], &rad[n - k]);
        (0..v.weights.len()).filter(|&wi| trust(&v.weights[wi])).all(|wi| {
            a[wi].dim() == b[wi].dim() && a[wi].contains_space(&b[wi])
        })
    })
}

/// Loewy layers of an sl2-type module, top layer first, each a list of
/// (highest weight, multiplicity). Only constituents whose highest weight
/// lies two levels above the bottom of the box are counted, and the result
/// must agree with the one computed a level deeper.
pub fn loewy_series_sl2<S: Scalar>(
    build: impl Fn(i64) -> WeightModule<S>,
    depth: i64,
) -> Result<Vec<Vec<(Weight, usize)>>, CatOError> {
    let run = |d: i64| {
        let v = build(d);
        let boxes = v.boxes.clone();
        let trust = move |w: &[i64]| boxes.iter().all(|b| b.depth.is_none() || b.level(w).is_some_and(|h| h <= depth - 2));
        let mut layers: Vec<Vec<(Weight, usize)>> =
            socle_layers(&v, (2 * d + 2) as usize, trust).into_iter().map(|l| l.into_iter().collect()).collect();
        layers.reverse();
        layers
    };
    let lo = run(depth);
    let hi = run(depth + 1);
    if lo != hi {
        let count = |l: &Vec<Vec<(Weight, usize)>>| l.iter().flatten().map(|x| x.1).sum();
        return Err(CatOError::Unstable { what: "Loewy series", depth, next: depth + 1, lo: count(&lo), hi: count(&hi) });
    }
    Ok(lo)
}
