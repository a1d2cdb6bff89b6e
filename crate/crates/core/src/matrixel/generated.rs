//! The module (1 ⊗ U(g))φ generated by a functional under R_x φ(u) = φ(ux),
//! at sl2.
//!
//! For a right weight vector φ, V[ν + 2k] is spanned by R_{F^a E^c} φ with
//! c − a = k. Words with a, c ≤ L are evaluated on a domain 2L + 1 levels
//! smaller than φ's; the extra level lets e and f act once more.

use std::collections::{BTreeMap, HashMap};

use crate::cat_o::module::{FactorBox, Gen, ModuleData, WeightModule};
use crate::cat_o::sl2::{casimir_block, central_character, generalized_kernel};
use crate::enveloping::Enveloping;
use crate::linalg::{span_basis, Matrix};
use crate::matrixel::block::{sl2, BlockError};
use crate::matrixel::elements::matrix_element;
use crate::matrixel::functional::{Functional, PbwDomain};
use crate::matrixel::MatrixelError;
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GeneratedModule<S> {
    /// Right weight of φ.
    pub weight: i64,
    pub top: i64,
    pub module: WeightModule<S>,
    /// Φ_{ε⊗φ} = φ where ε is evaluation at 1, on V[μ*].
    pub reproduces: bool,
}

impl<S: Scalar> GeneratedModule<S> {
    /// The Casimir has the single generalized eigenvalue χ_λ on every weight
    /// space where it is computable.
    pub fn in_block(&self, lambda: i64) -> bool {
        let (n, d) = central_character(lambda);
        let c = S::from_frac(n, d);
        (0..self.module.weights.len()).all(|wi| match casimir_block(&self.module, wi) {
            Some(m) => generalized_kernel(&m, &c).len() == self.module.dims[wi],
            None => true,
        })
    }
}

fn unsupported<T>(msg: &str) -> Result<T, BlockError> {
    Err(BlockError::Matrixel(MatrixelError::Unsupported(msg.to_string())))
}

/// Coordinates of `v` along the rows `basis`.
fn coords<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    Matrix::from_fn(v.len(), basis.len(), |r, c| basis[c][r].clone()).solve(v)
}

pub fn functional_generated_module<S: Scalar>(phi: &Functional<S>, span: i64) -> Result<GeneratedModule<S>, BlockError> {
    let lie = sl2();
    if phi.domain != PbwDomain::new(&lie, phi.domain.depth) {
        return unsupported("generated modules are computed for sl2 only");
    }
    let env = Enveloping::new(&RootSystem::new("A1").expect("A1"));
    let l = span;
    let depth = phi.domain.depth;
    let df = depth - 2 * l - 1;
    if df < 1 {
        return unsupported("functional domain too small for the requested span");
    }
    let small = PbwDomain::new(&lie, df);
    let big = PbwDomain::new(&lie, df + 1);
    // right weight
    let hd = PbwDomain::new(&lie, depth - 1);
    let rh = phi.right_act(&env, &vec![0, 1, 0], &hd).expect("domain shrinks by one");
    let base = phi.restrict(&hd);
    let Some((u0, v0)) = base.values.iter().next() else { return unsupported("zero functional") };
    let nu_s = rh.get(u0) / v0;
    let Some(nu) = nu_s.to_i64() else { return unsupported("not an integral weight vector") };
    if rh != base.scale(&nu_s) {
        return unsupported("not a right weight vector");
    }
    // spanning vectors per level k
    let monos = big.monomials();
    let mut groups: BTreeMap<i64, Vec<Vec<S>>> = BTreeMap::new();
    for a in 0..=l {
        for c in 0..=l {
            let g = phi.right_act(&env, &vec![a as u32, 0, c as u32], &big).expect("domain large enough");
            groups.entry(c - a).or_default().push(g.to_vec(&monos));
        }
    }
    let bases: BTreeMap<i64, Vec<Vec<S>>> = groups.iter().map(|(k, v)| (*k, span_basis(v, monos.len()))).collect();
    if !bases[&l].is_empty() {
        return unsupported("E-orbit not exhausted; increase span");
    }
    let cmax = (0..l).rev().find(|k| !bases[k].is_empty()).expect("φ itself is nonzero");
    let kept: Vec<i64> = (cmax - l..=cmax).collect();
    // basis functionals and their restrictions
    let as_functional = |v: &[S]| -> Functional<S> {
        let mut f = Functional::zero(&big);
        for (u, x) in monos.iter().zip(v) {
            f.set(u.clone(), x.clone());
        }
        f
    };
    let small_monos = small.monomials();
    let mut restricted: BTreeMap<i64, Vec<Vec<S>>> = BTreeMap::new();
    for &k in &kept {
        let r: Vec<Vec<S>> = bases[&k].iter().map(|v| as_functional(v).restrict(&small).to_vec(&small_monos)).collect();
        if span_basis(&r, small_monos.len()).len() != r.len() {
            return unsupported("restriction not injective; increase depth");
        }
        restricted.insert(k, r);
    }
    let cartan = vec![vec![2]];
    let mut spaces = BTreeMap::new();
    let mut action = HashMap::new();
    for &k in &kept {
        let w = vec![nu + 2 * k];
        spaces.insert(w.clone(), bases[&k].len());
        for (g, mono, t) in [(Gen::E(0), vec![0u32, 0, 1], k + 1), (Gen::F(0), vec![1u32, 0, 0], k - 1)] {
            if t < cmax - l {
                continue;
            }
            let mut cols = Vec::new();
            for v in &bases[&k] {
                let img = as_functional(v).right_act(&env, &mono, &small).expect("one level to spare").to_vec(&small_monos);
                let target: &[Vec<S>] = restricted.get(&t).map_or(&[], |x| x);
                match coords(target, &img) {
                    Some(x) => cols.push(x),
                    None => return unsupported("generated span not closed; increase span"),
                }
            }
            let rows = restricted.get(&t).map_or(0, |x| x.len());
            if rows > 0 && !cols.is_empty() {
                action.insert((g, w.clone()), Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone()));
            }
        }
    }
    let top = nu + 2 * cmax;
    let boxes = vec![FactorBox::new(0, &cartan, vec![vec![top]], Some(l), true)];
    let module = WeightModule::from_data(ModuleData { cartan, spaces, action, boxes });
    // ε lives on V[μ*] with μ* − ν the ad-weight of φ's support
    let kstar = phi.values.keys().next().map(|u| u[2] as i64 - u[0] as i64).expect("nonzero");
    let Some(bstar) = bases.get(&kstar).filter(|_| kept.contains(&kstar)) else {
        return unsupported("left weight outside the computed range; increase span");
    };
    let one = vec![0u32; 3];
    let at_one = monos.iter().position(|u| *u == one).expect("domain contains 1");
    let eps: Vec<S> = bstar.iter().map(|v| v[at_one].clone()).collect();
    let own = coords(&bases[&0], &phi.restrict(&big).to_vec(&monos)).expect("φ lies in its own span");
    let dm = l.min(df);
    let back = matrix_element(&module, &lie, (&[nu + 2 * kstar], &eps), (&[nu], &own), dm)?;
    let reproduces = back == phi.restrict(&PbwDomain::new(&lie, dm));
    Ok(GeneratedModule { weight: nu, top, module, reproduces })
}
