//! Blocks of matrix elements at sl2, computed per bidegree (μ*, ν): the
//! weights of v* and v. Every space below is finite-dimensional.
//!
//! Constituents L_x* ⊗ L_y are read off a dimension table by peeling
//! characters from the top, so all multiplicities are derived from spans
//! actually computed.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::cat_o::construct::{simple_sl2_finite, verma_sl2};
use crate::cat_o::hom::{hom_space, CatOError, ModuleMap};
use crate::cat_o::loewy::is_rigid;
use crate::cat_o::sl2::{big_projective_sl2, casimir_block};
use crate::cat_o::WeightModule;
use crate::enveloping::chevalley::LieAlgebra;
use crate::enveloping::Mono;
use crate::linalg::{span_basis, Matrix, Subspace};
use crate::matrixel::elements::{matrix_elements_between, MatrixelError};
use crate::matrixel::functional::Functional;
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;

pub type Bidegree = (i64, i64);
/// (x, y) ↦ multiplicity of L_x* ⊗ L_y.
pub type Constituents = BTreeMap<(i64, i64), usize>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BlockError {
    #[error(transparent)]
    Matrixel(#[from] MatrixelError),
    #[error(transparent)]
    CatO(#[from] CatOError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("weight {0} is not antidominant")]
    NotAntidominant(i64),
    #[error("character does not decompose into simple constituents at {0:?}")]
    Indecomposable(Bidegree),
}

pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(&RootSystem::new("A1").expect("A1"))
}

/// s·λ = −λ − 2.
pub fn reflect(lambda: i64) -> i64 {
    -lambda - 2
}

fn check_antidominant(lambda: i64) -> Result<(), BlockError> {
    if lambda > -1 {
        return Err(BlockError::NotAntidominant(lambda));
    }
    Ok(())
}

/// Highest weights in the block, top first.
pub fn block_weights(lambda: i64) -> Vec<i64> {
    let s = reflect(lambda);
    if s == lambda {
        vec![lambda]
    } else {
        vec![s, lambda]
    }
}

/// Bidegrees with both weights at most `levels` steps below the top.
pub fn bidegrees(lambda: i64, levels: i64) -> Vec<Bidegree> {
    let top = reflect(lambda);
    let ws: Vec<i64> = (0..=levels).map(|k| top - 2 * k).collect();
    ws.iter().flat_map(|&a| ws.iter().map(move |&b| (a, b))).collect()
}

/// dim L_x[μ]: finite for x ≥ 0, Verma-like otherwise.
pub fn simple_dim(x: i64, mu: i64) -> usize {
    let ok = mu <= x && (x - mu) % 2 == 0 && (x < 0 || mu >= -x);
    ok as usize
}

pub fn verma_dim(x: i64, mu: i64) -> usize {
    (mu <= x && (x - mu) % 2 == 0) as usize
}

/// Σ_w dim M_{w·λ}[μ*] · dim M_{w·λ}[ν].
pub fn predicted_dims(lambda: i64, levels: i64) -> BTreeMap<Bidegree, usize> {
    bidegrees(lambda, levels)
        .into_iter()
        .map(|(a, b)| ((a, b), block_weights(lambda).iter().map(|&w| verma_dim(w, a) * verma_dim(w, b)).sum()))
        .collect()
}

/// Peel Σ m_{xy} ch L_x ⊗ ch L_y off a table, maximal bidegrees first.
pub fn peel(table: &BTreeMap<Bidegree, usize>) -> Result<Constituents, BlockError> {
    let mut rest: BTreeMap<Bidegree, i64> = table.iter().map(|(k, &v)| (*k, v as i64)).collect();
    let mut out = Constituents::new();
    loop {
        let top = rest.iter().filter(|(_, &v)| v != 0).map(|(k, _)| *k).max_by_key(|&(a, b)| (a + b, a));
        let Some((x, y)) = top else { break };
        let m = rest[&(x, y)];
        if m < 0 {
            return Err(BlockError::Indecomposable((x, y)));
        }
        *out.entry((x, y)).or_insert(0) += m as usize;
        for ((a, b), v) in rest.iter_mut() {
            *v -= m * (simple_dim(x, *a) * simple_dim(y, *b)) as i64;
        }
    }
    Ok(out)
}

/// One-sided version: [V : L_x] from a weight → dim table.
pub fn peel_module(dims: &BTreeMap<i64, usize>) -> Result<BTreeMap<i64, usize>, BlockError> {
    let mut rest: BTreeMap<i64, i64> = dims.iter().map(|(k, &v)| (*k, v as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some(x) = rest.iter().filter(|(_, &v)| v != 0).map(|(k, _)| *k).max() {
        let m = rest[&x];
        if m < 0 {
            return Err(BlockError::Indecomposable((x, x)));
        }
        out.insert(x, m as usize);
        for (a, v) in rest.iter_mut() {
            *v -= m * simple_dim(x, *a) as i64;
        }
    }
    Ok(out)
}

/// Monomial support and coordinate rows of a family of functionals.
pub fn functional_rows<S: Scalar>(fs: &[Functional<S>]) -> (Vec<Mono>, Vec<Vec<S>>) {
    let mut support: Vec<Mono> = fs.iter().flat_map(|f| f.values.keys().cloned()).collect();
    support.sort();
    support.dedup();
    let rows = fs.iter().map(|f| f.to_vec(&support)).collect();
    (support, rows)
}

/// Span of the matrix elements of several modules, per bidegree.
#[derive(Clone, Debug)]
pub struct MatrixElementSpace<S> {
    pub lambda: i64,
    pub depth: i64,
    pub provenance: Vec<String>,
    /// Row-reduced coordinates over the listed support, per bidegree.
    pub spaces: BTreeMap<Bidegree, (Vec<Mono>, Vec<Vec<S>>)>,
}

impl<S: Scalar> MatrixElementSpace<S> {
    pub fn span_of(
        lambda: i64,
        levels: i64,
        modules: &[(String, WeightModule<S>)],
    ) -> Result<Self, BlockError> {
        let lie = sl2();
        let mut spaces = BTreeMap::new();
        for (a, b) in bidegrees(lambda, levels) {
            let mut fs = Vec::new();
            for (_, v) in modules {
                if v.idx(&[a]).is_some() && v.idx(&[b]).is_some() {
                    fs.extend(matrix_elements_between(v, &lie, &[a], &[b], levels)?);
                }
            }
            let (support, rows) = functional_rows(&fs);
            let basis = span_basis(&rows, support.len());
            spaces.insert((a, b), (support, basis));
        }
        Ok(MatrixElementSpace { lambda, depth: levels, provenance: modules.iter().map(|m| m.0.clone()).collect(), spaces })
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.spaces.iter().map(|(k, (_, b))| (*k, b.len())).collect()
    }

    /// Whether every space of `self` lies in the matching space of `other`.
    pub fn contained_in(&self, other: &Self) -> bool {
        self.spaces.iter().all(|(k, (sup, basis))| {
            let Some((osup, obasis)) = other.spaces.get(k) else { return basis.is_empty() };
            let pos: BTreeMap<&Mono, usize> = osup.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let space = Subspace::span(obasis, osup.len());
            basis.iter().all(|v| {
                let mut w = vec![S::zero(); osup.len()];
                for (m, c) in sup.iter().zip(v) {
                    if c.is_zero() {
                        continue;
                    }
                    match pos.get(m) {
                        Some(&i) => w[i] = c.clone(),
                        None => return false,
                    }
                }
                space.contains(&w)
            })
        })
    }
}

fn table_json(t: &BTreeMap<Bidegree, usize>) -> Value {
    Value::Array(t.iter().map(|((a, b), d)| json!([a, b, d])).collect())
}

fn constituents_json(c: &Constituents) -> Value {
    Value::Array(c.iter().map(|((x, y), m)| json!({"dual": x, "module": y, "mult": m})).collect())
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub lambda: i64,
    pub depth: i64,
    pub dims: BTreeMap<Bidegree, usize>,
    pub predicted: BTreeMap<Bidegree, usize>,
    pub constituents: Constituents,
    /// [P_y : L_x] from the characters of the projectives.
    pub reciprocity: Constituents,
    /// Σ_{x,y} dim Hom(P_x, P_y).
    pub hom_total: usize,
}

impl BlockReport {
    pub fn total(&self) -> usize {
        self.constituents.values().sum()
    }

    pub fn pass(&self) -> bool {
        self.dims == self.predicted && self.constituents == self.reciprocity && self.total() == self.hom_total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "depth": self.depth,
            "dims": table_json(&self.dims),
            "predicted": table_json(&self.predicted),
            "constituents": constituents_json(&self.constituents),
            "reciprocity": constituents_json(&self.reciprocity),
            "total": self.total(),
            "hom_total": self.hom_total,
            "pass": self.pass(),
        })
    }
}

/// P_x for x in the block: the big projective at the antidominant end,
/// the Verma module at a dominant one.
fn projective<S: Scalar>(lambda: i64, x: i64, depth: i64) -> Result<WeightModule<S>, BlockError> {
    if x == lambda {
        Ok(big_projective_sl2(lambda, depth)?)
    } else {
        Ok(verma_sl2(x, depth))
    }
}

fn dims_of<S: Scalar>(v: &WeightModule<S>) -> BTreeMap<i64, usize> {
    v.weights.iter().zip(&v.dims).map(|(w, &d)| (w[0], d)).collect()
}

/// The block M_λ spanned by matrix elements of P_λ.
pub fn block_space<S: Scalar>(lambda: i64, depth: i64) -> Result<(MatrixElementSpace<S>, BlockReport), BlockError> {
    check_antidominant(lambda)?;
    let p = big_projective_sl2::<S>(lambda, depth)?;
    let space = MatrixElementSpace::span_of(lambda, depth, &[(format!("P({lambda})"), p)])?;
    let dims = space.dims();
    let constituents = peel(&dims)?;
    // [P_y : L_x], counting only constituents with highest weight in the box
    let top = reflect(lambda);
    let mut reciprocity = Constituents::new();
    let mut hom_total = 0;
    for &y in &block_weights(lambda) {
        let py = projective::<S>(lambda, y, depth + 2)?;
        for (x, m) in peel_module(&dims_of(&py))? {
            if top - x <= 2 * depth && m > 0 {
                reciprocity.insert((x, y), m);
            }
        }
        for &x in &block_weights(lambda) {
            let maps = hom_space(|d| (projective::<S>(lambda, x, d).unwrap(), projective::<S>(lambda, y, d).unwrap()), depth)?;
            hom_total += maps.len();
        }
    }
    let report = BlockReport { lambda, depth, predicted: predicted_dims(lambda, depth), dims, constituents, reciprocity, hom_total };
    Ok((space, report))
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub lambda: i64,
    pub depth: i64,
    /// bidegree → (dim ker Φ, dim J, equal as subspaces)
    pub rows: BTreeMap<Bidegree, (usize, usize, bool)>,
    pub constituents: Constituents,
}

impl KernelReport {
    pub fn equal(&self) -> bool {
        self.rows.values().all(|r| r.2)
    }

    pub fn constituent_count(&self) -> usize {
        self.constituents.values().sum()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            self.rows.iter().map(|((a, b), (k, j, e))| json!({"bidegree": [a, b], "ker": k, "J": j, "equal": e})).collect();
        json!({
            "lambda": self.lambda,
            "depth": self.depth,
            "rows": rows,
            "equal": self.equal(),
            "constituents": constituents_json(&self.constituents),
            "constituent_count": self.constituent_count(),
        })
    }
}

/// X ↦ Aᵀ X − X Bᵀ on row-major d*×d matrices, applied to every unit matrix.
fn twisted_differences<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Vec<Vec<S>> {
    let (ds, d) = (a.rows(), b.rows());
    let mut out = Vec::new();
    for i in 0..ds {
        for j in 0..d {
            let mut x = Matrix::zeros(ds, d);
            x[(i, j)] = S::one();
            let y = a.transpose().mul(&x).sub(&x.mul(&b.transpose()));
            out.push((0..ds).flat_map(|r| y.row(r).to_vec()).collect());
        }
    }
    out
}

/// ker Φ on P* ⊗ P against J = ⟨z*v* ⊗ v − v* ⊗ zv⟩ with z running over
/// powers of the Casimir.
pub fn kernel_vs_ideal_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<KernelReport, BlockError> {
    check_antidominant(lambda)?;
    let lie = sl2();
    let p = big_projective_sl2::<S>(lambda, depth)?;
    let omega = |w: i64| -> Matrix<S> { casimir_block(&p, p.idx(&[w]).unwrap()).expect("raising operator known") };
    let mut rows = BTreeMap::new();
    let mut kdims = BTreeMap::new();
    for (a, b) in bidegrees(lambda, depth) {
        let (ds, d) = (p.dim_at(&[a]), p.dim_at(&[b]));
        let n = ds * d;
        let fs = matrix_elements_between(&p, &lie, &[a], &[b], depth)?;
        let (support, frows) = functional_rows(&fs);
        // columns of Φ are the functionals
        let phi = Matrix::from_fn(support.len(), n, |r, c| frows[c][r].clone());
        let ker = Subspace::span(&if support.is_empty() { Subspace::full(n).basis } else { phi.nullspace() }, n);
        let mut gens = Vec::new();
        let (oa, ob) = (omega(a), omega(b));
        let (mut pa, mut pb) = (oa.clone(), ob.clone());
        for _ in 0..2 {
            gens.extend(twisted_differences(&pa, &pb));
            pa = pa.mul(&oa);
            pb = pb.mul(&ob);
        }
        let j = Subspace::span(&gens, n);
        let equal = ker == j;
        kdims.insert((a, b), ker.dim());
        rows.insert((a, b), (ker.dim(), j.dim(), equal));
    }
    Ok(KernelReport { lambda, depth, rows, constituents: peel(&kdims)? })
}

#[derive(Clone, Debug)]
pub struct LoewyReport {
    pub lambda: i64,
    pub depth: i64,
    /// Modules whose matrix elements span each filtration step.
    pub modules: Vec<Vec<String>>,
    /// Constituents of M^{(k)} / M^{(k−1)}, bottom layer first.
    pub layers: Vec<Constituents>,
    /// The top step equals the block space.
    pub exhausts: bool,
    pub nested: bool,
    /// Socle and radical series of P_λ coincide.
    pub projective_rigid: bool,
}

impl LoewyReport {
    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.values().sum()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "depth": self.depth,
            "modules": self.modules,
            "layers": self.layers.iter().map(constituents_json).collect::<Vec<_>>(),
            "layer_dims": self.layer_dims(),
            "exhausts": self.exhausts,
            "nested": self.nested,
            "projective_rigid": self.projective_rigid,
        })
    }
}

/// M^{(k)}: matrix elements of modules of Loewy length ≤ k.
pub fn loewy_filtration_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<LoewyReport, BlockError> {
    check_antidominant(lambda)?;
    let s = reflect(lambda);
    let mut steps: Vec<Vec<(String, WeightModule<S>)>> = vec![vec![(format!("L({lambda})"), verma_sl2(lambda, depth))]];
    if s != lambda {
        steps[0].push((format!("L({s})"), simple_sl2_finite(s)));
        let m = verma_sl2::<S>(s, depth);
        steps.push(vec![(format!("M({s})"), m.clone()), (format!("M({s})^c"), m.contragredient())]);
        steps.push(vec![(format!("P({lambda})"), big_projective_sl2(lambda, depth)?)]);
    }
    let mut acc: Vec<(String, WeightModule<S>)> = Vec::new();
    let mut spaces = Vec::new();
    let mut modules = Vec::new();
    for step in steps {
        acc.extend(step);
        modules.push(acc.iter().map(|m| m.0.clone()).collect());
        spaces.push(MatrixElementSpace::span_of(lambda, depth, &acc)?);
    }
    let nested = spaces.windows(2).all(|w| w[0].contained_in(&w[1]));
    let (full, _) = block_space::<S>(lambda, depth)?;
    let last = spaces.last().unwrap();
    let exhausts = last.contained_in(&full) && full.contained_in(last);
    let mut layers = Vec::new();
    let mut prev: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for sp in &spaces {
        let d = sp.dims();
        let diff: BTreeMap<Bidegree, usize> = d.iter().map(|(k, &v)| (*k, v - prev.get(k).copied().unwrap_or(0))).collect();
        layers.push(peel(&diff)?);
        prev = d;
    }
    let p = big_projective_sl2::<S>(lambda, depth + 2)?;
    let trust_to = reflect(lambda) - 2 * depth;
    let projective_rigid = is_rigid(&p, (2 * depth + 4) as usize, |w| w[0] >= trust_to);
    Ok(LoewyReport { lambda, depth, modules, layers, exhausts, nested, projective_rigid })
}

#[derive(Clone, Debug)]
pub struct EndoReport {
    pub label: String,
    pub dim: usize,
    pub graded_dims: Vec<usize>,
    /// dim End(P_λ).
    pub end_projective: usize,
    /// The radical of End(P_λ) squares to zero.
    pub q_squared_zero: bool,
    /// Hom dims between summands, (source, target) → dim.
    pub homs: Vec<(String, String, usize)>,
}

impl EndoReport {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "dim": self.dim,
            "graded_dims": self.graded_dims,
            "end_projective": self.end_projective,
            "q_squared_zero": self.q_squared_zero,
            "homs": self.homs.iter().map(|(a, b, d)| json!({"from": a, "to": b, "dim": d})).collect::<Vec<_>>(),
        })
    }
}

/// P_λ ⊕ M_{s·λ} (just P_λ on the singular block).
pub fn generator_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<WeightModule<S>, BlockError> {
    check_antidominant(lambda)?;
    let p = big_projective_sl2::<S>(lambda, depth)?;
    let s = reflect(lambda);
    Ok(if s == lambda { p } else { p.direct_sum(&verma_sl2(s, depth)) })
}

/// A_λ = End(P_λ ⊕ M_{s·λ}) with its radical grading.
pub fn endo_algebra_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<(FiniteAlgebra<S>, Vec<ModuleMap<S>>, EndoReport), BlockError> {
    check_antidominant(lambda)?;
    let s = reflect(lambda);
    let maps = hom_space(|d| (generator_sl2::<S>(lambda, d).unwrap(), generator_sl2::<S>(lambda, d).unwrap()), depth)?;
    let alg = FiniteAlgebra::from_basis(&maps, |a, b| a.compose(b), |m| m.flatten())?;
    let end_p = hom_space(|d| (big_projective_sl2::<S>(lambda, d).unwrap(), big_projective_sl2::<S>(lambda, d).unwrap()), depth)?;
    let palg = FiniteAlgebra::from_basis(&end_p, |a, b| a.compose(b), |m| m.flatten())?;
    let q_squared_zero = palg.squares_to_zero(&palg.radical());
    let mut homs = Vec::new();
    let names = block_weights(lambda);
    for &x in &names {
        for &y in &names {
            let n = hom_space(|d| (projective::<S>(lambda, x, d).unwrap(), projective::<S>(lambda, y, d).unwrap()), depth)?.len();
            homs.push((format!("P({x})"), format!("P({y})"), n));
        }
    }
    let label = if s == lambda { format!("End P({lambda})") } else { format!("End(P({lambda}) + M({s}))") };
    let report = EndoReport { label, dim: alg.dim, graded_dims: alg.graded_dims(), end_projective: end_p.len(), q_squared_zero, homs };
    Ok((alg, maps, report))
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub lambda: i64,
    pub depth: i64,
    /// bidegree → (dim of the tensor product over A, dim of the block)
    pub rows: BTreeMap<Bidegree, (usize, usize)>,
    pub cross_terms_vanish: bool,
    pub projective_representatives: bool,
}

impl KoszulReport {
    pub fn pass(&self) -> bool {
        self.rows.values().all(|(a, b)| a == b) && self.cross_terms_vanish && self.projective_representatives
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.rows.iter().map(|((a, b), (t, m))| json!({"bidegree": [a, b], "tensor": t, "block": m})).collect();
        json!({
            "lambda": self.lambda,
            "depth": self.depth,
            "rows": rows,
            "cross_terms_vanish": self.cross_terms_vanish,
            "projective_representatives": self.projective_representatives,
            "pass": self.pass(),
        })
    }
}

/// G* ⊗_A G for G = P_λ ⊕ M_{s·λ}, per bidegree, against the block space.
pub fn koszul_tensor_check_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<KoszulReport, BlockError> {
    let (_, maps, _) = endo_algebra_sl2::<S>(lambda, depth)?;
    let g = generator_sl2::<S>(lambda, depth)?;
    let p = big_projective_sl2::<S>(lambda, depth)?;
    let (_, block) = block_space::<S>(lambda, depth)?;
    let mut rows = BTreeMap::new();
    let mut cross = true;
    let mut reps = true;
    for (a, b) in bidegrees(lambda, depth) {
        let (ds, d) = (g.dim_at(&[a]), g.dim_at(&[b]));
        let n = ds * d;
        let mut rel = Vec::new();
        for m in &maps {
            let (Some(ma), Some(mb)) = (m.block(&[a]), m.block(&[b])) else { continue };
            rel.extend(twisted_differences(ma, mb));
        }
        let rel = Subspace::span(&rel, n);
        rows.insert((a, b), (n - rel.dim(), block.dims[&(a, b)]));
        // basis vectors of G[μ] come P first, then M
        let (pa, pb) = (p.dim_at(&[a]), p.dim_at(&[b]));
        let unit = |i: usize, j: usize| -> Vec<S> {
            let mut v = vec![S::zero(); n];
            v[i * d + j] = S::one();
            v
        };
        for i in 0..ds {
            for j in 0..d {
                if (i >= pa) != (j >= pb) && !rel.contains(&unit(i, j)) {
                    cross = false;
                }
            }
        }
        let mut with_p = rel.basis.clone();
        for i in 0..pa {
            for j in 0..pb {
                with_p.push(unit(i, j));
            }
        }
        reps &= Subspace::span(&with_p, n).dim() == n;
    }
    Ok(KoszulReport { lambda, depth, rows, cross_terms_vanish: cross, projective_representatives: reps })
}
