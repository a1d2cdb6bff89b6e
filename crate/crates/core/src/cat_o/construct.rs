//! Highest-weight modules: simple quotients by the layer construction,
//! Verma modules via PBW monomials, and their duals.

use std::collections::{BTreeMap, HashMap};

use crate::cat_o::module::{FactorBox, Gen, ModuleData, WeightModule};
use crate::enveloping::{Enveloping, Mono};
use crate::linalg::{Matrix, Subspace};
use crate::rootsys::Weight;
use crate::scalar::Scalar;

/// L_λ truncated at `depth` (or complete when `depth` is `None`, which needs
/// λ dominant).
///
/// Layer k is spanned by f_i applied to layer k−1, modulo the vectors whose
/// e-images all vanish; e_j f_i b = f_i e_j b + δ_ij ⟨wt b, h_i⟩ b gives
/// those images from data already built.
pub fn irreducible<S: Scalar>(cartan: &[Vec<i64>], lambda: &[i64], depth: Option<i64>) -> WeightModule<S> {
    let r = cartan.len();
    assert!(depth.is_some() || lambda.iter().all(|&x| x >= 0), "complete simple module needs a dominant weight");
    let alpha = |i: usize| -> Weight { (0..r).map(|k| cartan[k][i]).collect() };
    let shift = |w: &[i64], i: usize, s: i64| -> Weight { w.iter().zip(alpha(i)).map(|(a, b)| a + s * b).collect() };

    let mut spaces: BTreeMap<Weight, usize> = BTreeMap::from([(lambda.to_vec(), 1)]);
    let mut action: HashMap<(Gen, Weight), Matrix<S>> = HashMap::new();
    let mut level: Vec<Weight> = vec![lambda.to_vec()];
    let mut k = 0;
    while !level.is_empty() && depth.is_none_or(|d| k < d) {
        k += 1;
        // candidates grouped by target weight, deterministic order
        let mut cands: BTreeMap<Weight, Vec<(usize, Weight, usize)>> = BTreeMap::new();
        for nu in &level {
            for i in 0..r {
                for b in 0..spaces[nu] {
                    cands.entry(shift(nu, i, -1)).or_default().push((i, nu.clone(), b));
                }
            }
        }
        let mut next = Vec::new();
        for (mu, list) in cands {
            let ups: Vec<(usize, Weight, usize)> = (0..r)
                .filter_map(|j| {
                    let t = shift(&mu, j, 1);
                    spaces.get(&t).map(|&d| (j, t, d))
                })
                .collect();
            let total: usize = ups.iter().map(|u| u.2).sum();
            let images: Vec<Vec<S>> = list
                .iter()
                .map(|(i, nu, b)| {
                    let mut img = Vec::with_capacity(total);
                    for (j, t, d) in &ups {
                        let mut blk = vec![S::zero(); *d];
                        // f_i (e_j v_b)
                        let up = shift(nu, *j, 1);
                        if let (Some(em), Some(fm)) =
                            (action.get(&(Gen::E(*j), nu.clone())), action.get(&(Gen::F(*i), up.clone())))
                        {
                            let ev = em.col(*b);
                            let fv = fm.mul_vec(&ev);
                            for (x, y) in blk.iter_mut().zip(fv) {
                                *x = x.clone() + &y;
                            }
                        }
                        if i == j {
                            debug_assert_eq!(t, nu);
                            blk[*b] = blk[*b].clone() + &S::from_int(nu[*i]);
                        }
                        img.extend(blk);
                    }
                    img
                })
                .collect();
            let mut span = Subspace::zero(total);
            let mut kept = Vec::new();
            for (c, img) in images.iter().enumerate() {
                if !span.contains(img) {
                    span = span.sum(&Subspace::span(std::slice::from_ref(img), total));
                    kept.push(c);
                }
            }
            if kept.is_empty() {
                continue;
            }
            let dim = kept.len();
            spaces.insert(mu.clone(), dim);
            // e_j on the new weight space
            let mut off = 0;
            for (j, t, d) in &ups {
                let m = Matrix::from_fn(*d, dim, |row, col| images[kept[col]][off + row].clone());
                action.insert((Gen::E(*j), mu.clone()), m);
                let _ = t;
                off += d;
            }
            // f_i into it: express each candidate image in the kept ones
            let basis = Matrix::from_fn(total, dim, |row, col| images[kept[col]][row].clone());
            let mut fcols: BTreeMap<(usize, Weight), Vec<(usize, Vec<S>)>> = BTreeMap::new();
            for ((i, nu, b), img) in list.iter().zip(&images) {
                let c = basis.solve(img).expect("candidate lies in the span of the kept images");
                fcols.entry((*i, nu.clone())).or_default().push((*b, c));
            }
            for ((i, nu), cols) in fcols {
                let src = spaces[&nu];
                let mut m = Matrix::zeros(dim, src);
                for (b, c) in cols {
                    for (row, x) in c.into_iter().enumerate() {
                        m[(row, b)] = x;
                    }
                }
                action.insert((Gen::F(i), nu), m);
            }
            next.push(mu);
        }
        level = next;
    }
    let boxes = vec![FactorBox::new(0, cartan, vec![lambda.to_vec()], depth, true)];
    WeightModule::from_data(ModuleData { cartan: cartan.to_vec(), spaces, action, boxes })
}

/// M_λ truncated at height `depth`, basis the ordered PBW monomials of U(n₋).
pub fn verma<S: Scalar>(env: &Enveloping, lambda: &[i64], depth: i64) -> WeightModule<S> {
    let lie = &env.lie;
    let r = lie.rank();
    let cartan = lie.rs.cartan.clone();
    // monomials in the f's by weight
    let mut by_weight: BTreeMap<Weight, Vec<Mono>> = BTreeMap::new();
    for mono in env.nminus_monomials(depth) {
        let w: Weight = lambda.iter().zip(lie.mono_weight(&mono)).map(|(a, b)| a + b).collect();
        by_weight.entry(w).or_default().push(mono);
    }
    let spaces: BTreeMap<Weight, usize> = by_weight.iter().map(|(w, v)| (w.clone(), v.len())).collect();
    let pos: HashMap<Mono, usize> =
        by_weight.values().flat_map(|v| v.iter().enumerate().map(|(i, m)| (m.clone(), i))).collect();
    let mut action = HashMap::new();
    for (w, monos) in &by_weight {
        for i in 0..r {
            for (g, x) in [(Gen::E(i), lie.e(lie.simple_index(i))), (Gen::F(i), lie.f(lie.simple_index(i)))] {
                let sgn = if matches!(g, Gen::E(_)) { 1 } else { -1 };
                let t: Weight = w.iter().zip(lie.rs.alpha(i)).map(|(a, b)| a + sgn * b).collect();
                let Some(tm) = by_weight.get(&t) else { continue };
                let mut m = Matrix::<S>::zeros(tm.len(), monos.len());
                for (c, mono) in monos.iter().enumerate() {
                    for (res, coef) in env.act_on_highest(x, mono, lambda) {
                        let row = pos[&res];
                        m[(row, c)] = m[(row, c)].clone() + &S::from_rational(&coef);
                    }
                }
                action.insert((g, w.clone()), m);
            }
        }
    }
    let boxes = vec![FactorBox::new(0, &cartan, vec![lambda.to_vec()], Some(depth), true)];
    WeightModule::from_data(ModuleData { cartan, spaces, action, boxes })
}

/// M_λ^c: the contragredient dual of the Verma module.
pub fn contragredient_verma<S: Scalar>(env: &Enveloping, lambda: &[i64], depth: i64) -> WeightModule<S> {
    verma::<S>(env, lambda, depth).contragredient()
}

/// sl2 Verma module in the basis v_k = f^k v, without the PBW machinery.
pub fn verma_sl2<S: Scalar>(lambda: i64, depth: i64) -> WeightModule<S> {
    let cartan = vec![vec![2]];
    let mut spaces = BTreeMap::new();
    let mut action = HashMap::new();
    for k in 0..=depth {
        let w = vec![lambda - 2 * k];
        spaces.insert(w.clone(), 1);
        if k < depth {
            action.insert((Gen::F(0), w.clone()), Matrix::from_rows(vec![vec![S::one()]], 1));
        }
        if k > 0 {
            // e f^k v = k(λ − k + 1) f^{k−1} v
            action.insert((Gen::E(0), w), Matrix::from_rows(vec![vec![S::from_int(k * (lambda - k + 1))]], 1));
        }
    }
    let boxes = vec![FactorBox::new(0, &cartan, vec![vec![lambda]], Some(depth), true)];
    WeightModule::from_data(ModuleData { cartan, spaces, action, boxes })
}

/// Finite-dimensional sl2 simple L(n), n ≥ 0, complete.
pub fn simple_sl2_finite<S: Scalar>(n: i64) -> WeightModule<S> {
    assert!(n >= 0);
    let cartan = vec![vec![2]];
    let mut spaces = BTreeMap::new();
    let mut action = HashMap::new();
    for k in 0..=n {
        let w = vec![n - 2 * k];
        spaces.insert(w.clone(), 1);
        if k < n {
            action.insert((Gen::F(0), w.clone()), Matrix::from_rows(vec![vec![S::one()]], 1));
        }
        if k > 0 {
            action.insert((Gen::E(0), w), Matrix::from_rows(vec![vec![S::from_int(k * (n - k + 1))]], 1));
        }
    }
    let boxes = vec![FactorBox::complete(0, &cartan)];
    WeightModule::from_data(ModuleData { cartan, spaces, action, boxes })
}
