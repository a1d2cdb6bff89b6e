//! Block decomposition of the big-cell functions for sl2 by the Casimir, and
//! the flag-variety quotients z^λ·C[x], z^λ·C[y].

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::bigcell::action::{BigCell, Side};
use crate::bigcell::diffop::DiffOp;
use crate::bigcell::poly::{PMono, Poly};
use crate::bigcell::structure::BigCellError;
use crate::cat_o::module::{FactorBox, Gen, ModuleData, WeightModule};
use crate::cat_o::sl2::generalized_kernel;
use crate::characters::verma_char;
use crate::linalg::{Matrix, Subspace};
use crate::rootsys::{RootSystem, Weight};
use crate::scalar::Scalar;

/// ρ(Ω)ψ = 2ρ(f)ρ(e)ψ + ρ(h)ψ + ρ(h)²ψ/2 for sl2.
pub fn casimir_apply<S: Scalar>(cell: &BigCell<S>, side: Side, psi: &Poly<S>) -> Poly<S> {
    let (e, f, h) = (cell.e(side, 0), cell.f(side, 0), cell.h(side, 0));
    let hp = h.apply(psi);
    f.apply(&e.apply(psi)).scale(&S::from_int(2)).add(&hp).add(&h.apply(&hp).scale(&S::from_frac(1, 2)))
}

/// Matrix of an operator on the span of `basis`; `None` if it leaves it.
pub fn op_matrix<S: Scalar>(basis: &[PMono], apply: impl Fn(&Poly<S>) -> Poly<S>) -> Option<Matrix<S>> {
    let pos: HashMap<&PMono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    let mut out = Matrix::zeros(n, n);
    for (c, mono) in basis.iter().enumerate() {
        let img = apply(&Poly::term(mono.clone(), S::one()));
        for (m, v) in &img.terms {
            let r = *pos.get(m)?;
            out[(r, c)] = v.clone();
        }
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct BlockTable {
    pub lambda: i64,
    pub depth: i64,
    /// (σ, τ) → dimension of the block component.
    pub dims: BTreeMap<(i64, i64), usize>,
    /// Same from Σ_w ch(M*_{w·λ} ⊗ M_{w·λ}).
    pub expected: BTreeMap<(i64, i64), usize>,
    /// Full truncated space per bidegree.
    pub full: BTreeMap<(i64, i64), usize>,
}

impl BlockTable {
    pub fn matches(&self) -> bool {
        self.dims == self.expected
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .dims
            .iter()
            .map(|(&(s, t), &d)| json!({"sigma": s, "tau": t, "dim": d, "expected": self.expected[&(s, t)], "full": self.full[&(s, t)]}))
            .collect();
        json!({"lambda": self.lambda, "depth": self.depth, "matches": self.matches(), "bidegrees": rows})
    }
}

/// Monomials x^a z^m y^c of bidegree (σ, τ) = (m − 2a, m − 2c) with a, c ≤ depth.
pub fn bidegree_basis(sigma: i64, tau: i64, depth: i64) -> Vec<PMono> {
    (0..=depth)
        .filter_map(|a| {
            let m = sigma + 2 * a;
            let c2 = m - tau;
            (c2 >= 0 && c2 % 2 == 0 && c2 / 2 <= depth).then(|| PMono { x: vec![a as u32], z: vec![m], y: vec![(c2 / 2) as u32] })
        })
        .collect()
}

/// Generalized eigenspace of both Casimirs for χ_λ, per bidegree.
pub fn block_component_sl2<S: Scalar>(cell: &BigCell<S>, lambda: i64, depth: i64) -> Result<BlockTable, BigCellError> {
    if cell.r != 1 {
        return Err(BigCellError::Unsupported("block decomposition by the Casimir needs sl2".into()));
    }
    if lambda > -1 {
        return Err(BigCellError::Unsupported(format!("{lambda} is not strictly antidominant")));
    }
    let rs = RootSystem::new("A1").expect("A1");
    let top = -lambda - 2;
    let chi = S::from_frac(lambda * lambda + 2 * lambda, 2);
    // truncated Verma characters of the orbit, the oracle side
    let orbit: Vec<i64> = if top == lambda { vec![lambda] } else { vec![lambda, top] };
    let tv: Vec<(i64, BTreeMap<i64, i64>)> = orbit
        .iter()
        .map(|&mu| {
            let t = verma_char(&[mu]).truncate_at(&rs, &[mu], depth);
            (mu, t.mults.iter().map(|(w, &k)| (w[0], k)).collect())
        })
        .collect();
    let mut table = BlockTable { lambda, depth, dims: BTreeMap::new(), expected: BTreeMap::new(), full: BTreeMap::new() };
    let lo = lambda - 2 * depth;
    for sigma in (lo..=top).step_by(2) {
        for tau in (lo..=top).step_by(2) {
            let basis = bidegree_basis(sigma, tau, depth);
            let n = basis.len();
            let o2 = op_matrix(&basis, |p| casimir_apply(cell, Side::Right, p))
                .ok_or_else(|| BigCellError::Unsupported("Casimir left the bidegree space".into()))?;
            let o1 = op_matrix(&basis, |p| casimir_apply(cell, Side::Left, p))
                .ok_or_else(|| BigCellError::Unsupported("Casimir left the bidegree space".into()))?;
            let k2 = Subspace::span(&generalized_kernel(&o2, &chi), n);
            let k1 = Subspace::span(&generalized_kernel(&o1, &chi), n);
            let dim = k1.intersect(&k2).dim();
            let exp: i64 = tv.iter().map(|(_, ch)| ch.get(&sigma).unwrap_or(&0) * ch.get(&tau).unwrap_or(&0)).sum();
            table.dims.insert((sigma, tau), dim);
            table.expected.insert((sigma, tau), exp as usize);
            table.full.insert((sigma, tau), n);
        }
    }
    Ok(table)
}

/// Build a weight module from operators acting on a span of monomials.
/// Each basis monomial must be a weight vector; `ops` gives e_i, f_i.
pub fn module_from_ops<S: Scalar>(
    cartan: &[Vec<i64>],
    basis: &[(Weight, PMono)],
    e: &[&DiffOp<S>],
    f: &[&DiffOp<S>],
    boxes: Vec<FactorBox>,
) -> WeightModule<S> {
    let mut by_w: BTreeMap<Weight, Vec<PMono>> = BTreeMap::new();
    for (w, m) in basis {
        by_w.entry(w.clone()).or_default().push(m.clone());
    }
    let pos: HashMap<PMono, (Weight, usize)> =
        by_w.iter().flat_map(|(w, ms)| ms.iter().enumerate().map(move |(i, m)| (m.clone(), (w.clone(), i)))).collect();
    let spaces: BTreeMap<Weight, usize> = by_w.iter().map(|(w, v)| (w.clone(), v.len())).collect();
    let r = cartan.len();
    let mut action = HashMap::new();
    for (w, ms) in &by_w {
        for i in 0..r {
            for (g, op, sgn) in [(Gen::E(i), e[i], 1i64), (Gen::F(i), f[i], -1)] {
                let t: Weight = (0..r).map(|k| w[k] + sgn * cartan[k][i]).collect();
                let Some(&td) = spaces.get(&t) else { continue };
                let mut mat = Matrix::<S>::zeros(td, ms.len());
                for (c, mono) in ms.iter().enumerate() {
                    let img = op.apply(&Poly::term(mono.clone(), S::one()));
                    for (m, v) in &img.terms {
                        // terms outside the span are the lower filtration piece
                        if let Some((tw, row)) = pos.get(m) {
                            debug_assert_eq!(tw, &t);
                            mat[(*row, c)] = v.clone();
                        }
                    }
                }
                action.insert((g, w.clone()), mat);
            }
        }
    }
    WeightModule::from_data(ModuleData { cartan: cartan.to_vec(), spaces, action, boxes })
}

/// Monomial exponent vectors with Σ k_β ht(β) ≤ depth.
pub fn root_monomials(rs: &RootSystem, depth: i64) -> Vec<Vec<u32>> {
    let m = rs.num_positive();
    let mut out = vec![vec![0u32; m]];
    for k in 0..m {
        let h = rs.height(&rs.positive_roots[k]);
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().enumerate().map(|(j, &a)| a as i64 * rs.height(&rs.positive_roots[j])).sum();
            let mut w = v.clone();
            let mut u = used;
            while u <= depth {
                next.push(w.clone());
                w[k] += 1;
                u += h;
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagReport {
    pub lambda: Weight,
    pub depth: i64,
    /// z^λ C[y] under ρ₂: character of M_λ and a single highest-weight line.
    pub y_character: bool,
    pub y_singular_top_only: bool,
    /// z^λ C[x] under ρ₁: character of the restricted dual, single lowest-weight line.
    pub x_character: bool,
    pub x_lowest_only: bool,
    pub x_f_locally_nilpotent: bool,
    pub relations: bool,
}

impl FlagReport {
    pub fn pass(&self) -> bool {
        self.y_character && self.y_singular_top_only && self.x_character && self.x_lowest_only && self.x_f_locally_nilpotent && self.relations
    }
}

/// The modules on z^λ·C[y] (ρ₂) and z^λ·C[x] (ρ₁), truncated by height.
pub fn flag_modules<S: Scalar>(cell: &BigCell<S>, lambda: &[i64], depth: i64) -> (WeightModule<S>, WeightModule<S>) {
    let rs = &cell.lie.rs;
    let (m, r) = (cell.m, cell.r);
    let monos = root_monomials(rs, depth);
    let shift = |k: &[u32], sign: i64, base: &[i64]| -> Weight {
        let mut w = base.to_vec();
        for (j, &a) in k.iter().enumerate() {
            let bw = rs.root_weight(&rs.positive_roots[j]);
            for i in 0..r {
                w[i] += sign * a as i64 * bw[i];
            }
        }
        w
    };
    let ybasis: Vec<(Weight, PMono)> =
        monos.iter().map(|c| (shift(c, -1, lambda), PMono { x: vec![0; m], z: lambda.to_vec(), y: c.clone() })).collect();
    let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
    let xbasis: Vec<(Weight, PMono)> =
        monos.iter().map(|a| (shift(a, 1, &neg), PMono { x: a.clone(), z: lambda.to_vec(), y: vec![0; m] })).collect();
    let es = |side| (0..r).map(|i| cell.e(side, i)).collect::<Vec<_>>();
    let fs = |side| (0..r).map(|i| cell.f(side, i)).collect::<Vec<_>>();
    let ybox = vec![FactorBox::new(0, &rs.cartan, vec![lambda.to_vec()], Some(depth), true)];
    let xbox = vec![FactorBox::new(0, &rs.cartan, vec![neg.clone()], Some(depth), false)];
    let ymod = module_from_ops(&rs.cartan, &ybasis, &es(Side::Right), &fs(Side::Right), ybox);
    let xmod = module_from_ops(&rs.cartan, &xbasis, &es(Side::Left), &fs(Side::Left), xbox);
    (ymod, xmod)
}

pub fn flag_quotient_check<S: Scalar>(cell: &BigCell<S>, lambda: &[i64], depth: i64) -> FlagReport {
    let rs = &cell.lie.rs;
    let (ymod, xmod) = flag_modules(cell, lambda, depth);
    let expect = verma_char(lambda).truncate_at(rs, lambda, depth);
    let ych: BTreeMap<Weight, i64> = ymod.character();
    let y_character = ych == expect.mults.iter().filter(|(_, &v)| v != 0).map(|(w, &v)| (w.clone(), v)).collect();
    let xch: BTreeMap<Weight, i64> = xmod.character().into_iter().map(|(w, d)| (w.iter().map(|x| -x).collect(), d)).collect();
    let x_character = xch == ych;
    let neg: Weight = lambda.iter().map(|x| -x).collect();
    let ysing = ymod.singular_vectors();
    let y_singular_top_only = ysing.len() == 1 && ysing[0].0 == lambda;
    // lowest-weight vectors: killed by every f (the raising direction of an up box)
    let xlow = xmod.singular_vectors();
    let x_lowest_only = xlow.len() == 1 && xlow[0].0 == neg;
    let x_f_locally_nilpotent = (0..cell.r).all(|i| {
        xmod.weights.iter().all(|w| {
            let lvl = xmod.boxes[0].level(w).unwrap_or(0);
            let word = vec![Gen::F(i); (lvl + 1) as usize];
            match xmod.word_matrix(&word, w) {
                Some((_, mat)) => mat.is_zero(),
                None => true,
            }
        })
    });
    let relations = ymod.check_relations() && xmod.check_relations();
    FlagReport {
        lambda: lambda.to_vec(),
        depth,
        y_character,
        y_singular_top_only,
        x_character,
        x_lowest_only,
        x_f_locally_nilpotent,
        relations,
    }
}
