//! Blocks of u_q(sl2): orbits, endomorphism algebras of projective generators,
//! and the matrix-element side of the dual algebra.
//!
//! Matrix elements of V restricted to the bidegree (t, s) (v* of weight t,
//! v of weight s) span the dual of S_{s,t} = span{ρ(F^a E^c)|V[s]→V[t]};
//! K only rescales these blocks, so F^a E^c suffices.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{hom, Uq, UqError, UqMap, UqModule};
use crate::algebra::FiniteAlgebra;
use crate::cyclotomic::Cyclo;
use crate::linalg::{annihilator, same_span, span_basis, Matrix};
use crate::scalar::Scalar;
use crate::Q;

pub type Bidegree = (usize, usize);
pub type Constituents = BTreeMap<(i64, i64), usize>;

/// Orbits of the dot action mod ℓ: μ ~ −μ − 2.
pub fn block_orbits(ell: usize) -> Vec<Vec<i64>> {
    let l = ell as i64;
    let mut seen = vec![false; ell];
    let mut out = Vec::new();
    for mu in 0..l {
        if seen[mu as usize] {
            continue;
        }
        let other = (-mu - 2).rem_euclid(l);
        seen[mu as usize] = true;
        seen[other as usize] = true;
        let mut o = vec![mu, other];
        o.dedup();
        out.push(o);
    }
    out
}

pub fn orbit_of(ell: usize, mu: i64) -> Vec<i64> {
    block_orbits(ell).into_iter().find(|o| o.contains(&mu)).unwrap_or_default()
}

/// ⊕ P_x over the orbit of μ.
pub fn generator(uq: &Uq, mu: i64) -> Result<UqModule, UqError> {
    let ps = orbit_of(uq.ell, mu).into_iter().map(|x| uq.projective(x)).collect::<Result<Vec<_>, _>>()?;
    UqModule::direct_sum_all(&ps).ok_or(UqError::BadWeight(mu))
}

fn chain(uq: &Uq, blocks: &[Matrix<Cyclo>], dims: &[usize], start: usize, up: bool) -> Vec<Matrix<Cyclo>> {
    let mut out = vec![Matrix::identity(dims[start])];
    let mut w = start;
    for _ in 1..uq.ell {
        let next = blocks[w].mul(out.last().expect("nonempty"));
        out.push(next);
        w = if up { uq.up(w) } else { uq.down(w) };
    }
    out
}

/// Echelon bases of the flattened S_{s,t}, keyed by (t, s).
pub fn action_spans(v: &UqModule) -> BTreeMap<Bidegree, Vec<Vec<Cyclo>>> {
    let uq = &v.uq;
    let l = uq.ell;
    let mut gens: BTreeMap<Bidegree, Vec<Vec<Cyclo>>> = BTreeMap::new();
    let fch: Vec<Vec<Matrix<Cyclo>>> = (0..l).map(|u| chain(uq, &v.f, &v.dims, u, false)).collect();
    for s in 0..l {
        if v.dims[s] == 0 {
            continue;
        }
        let ech = chain(uq, &v.e, &v.dims, s, true);
        for (c, ec) in ech.iter().enumerate() {
            let u = uq.res((s + 2 * c) as i64);
            for (a, fa) in fch[u].iter().enumerate() {
                let t = uq.res(u as i64 - 2 * a as i64);
                let m = fa.mul(ec);
                gens.entry((t, s)).or_default().push(m.row_vecs().into_iter().flatten().collect());
            }
        }
    }
    let mut out = BTreeMap::new();
    for t in 0..l {
        for s in 0..l {
            let n = v.dims[t] * v.dims[s];
            let b = gens.get(&(t, s)).map(|g| span_basis(g, n)).unwrap_or_default();
            out.insert((t, s), b);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualDims {
    pub table: BTreeMap<Bidegree, usize>,
}

impl DualDims {
    pub fn total(&self) -> usize {
        self.table.values().sum()
    }

    fn minus(&self, other: &DualDims) -> Option<DualDims> {
        let mut table = BTreeMap::new();
        for (k, v) in &self.table {
            let o = other.table.get(k).copied().unwrap_or(0);
            table.insert(*k, v.checked_sub(o)?);
        }
        Some(DualDims { table })
    }
}

/// Dimensions of the span of matrix elements of V per bidegree.
pub fn dual_dims_of(v: &UqModule) -> DualDims {
    DualDims { table: action_spans(v).into_iter().map(|(k, b)| (k, b.len())).collect() }
}

/// The block of u* containing μ, via its projective generator.
pub fn block_dual_dims(uq: &Uq, mu: i64) -> Result<DualDims, UqError> {
    Ok(dual_dims_of(&generator(uq, mu)?))
}

fn simple_char(uq: &Uq, x: i64) -> Vec<usize> {
    uq.simple(x).expect("weight in range").dims
}

/// Express a bidegree table as Σ m_{xy} ch L_x ⊗ ch L_y over the orbit.
pub fn peel_uq(uq: &Uq, orbit: &[i64], d: &DualDims) -> Result<Constituents, UqError> {
    let pairs: Vec<(i64, i64)> = orbit.iter().flat_map(|&x| orbit.iter().map(move |&y| (x, y))).collect();
    let chars: BTreeMap<i64, Vec<usize>> = orbit.iter().map(|&x| (x, simple_char(uq, x))).collect();
    let keys: Vec<Bidegree> = d.table.keys().copied().collect();
    let a = Matrix::<Q>::from_fn(keys.len(), pairs.len(), |r, c| {
        let (t, s) = keys[r];
        let (x, y) = pairs[c];
        Q::from_int((chars[&x][t] * chars[&y][s]) as i64)
    });
    if a.rank() < pairs.len() {
        return Err(UqError::Peeling);
    }
    let b: Vec<Q> = keys.iter().map(|k| Q::from_int(d.table[k] as i64)).collect();
    let m = a.solve(&b).ok_or(UqError::Peeling)?;
    let mut out = BTreeMap::new();
    for (p, x) in pairs.iter().zip(m) {
        let n = x.to_i64().filter(|n| *n >= 0).ok_or(UqError::Peeling)?;
        if n > 0 {
            out.insert(*p, n as usize);
        }
    }
    Ok(out)
}

/// Layers of the block of u* from the filtration by matrix elements of
/// simples, then baby Vermas and their duals, then projectives.
pub fn block_layers(uq: &Uq, mu: i64) -> Result<Vec<Constituents>, UqError> {
    let orbit = orbit_of(uq.ell, mu);
    let mut stages: Vec<Vec<UqModule>> = vec![Vec::new(); 3];
    for &x in &orbit {
        stages[0].push(uq.simple(x)?);
        let z = uq.baby_verma(x)?;
        stages[1].push(z.contragredient());
        stages[1].push(z);
        stages[2].push(uq.projective(x)?);
    }
    let mut acc: Vec<UqModule> = Vec::new();
    let mut prev = DualDims { table: BTreeMap::new() };
    let mut out = Vec::new();
    for st in stages {
        acc.extend(st);
        let cur = dual_dims_of(&UqModule::direct_sum_all(&acc).expect("nonempty"));
        let diff = cur.minus(&prev).ok_or(UqError::Peeling)?;
        if diff.total() > 0 {
            out.push(peel_uq(uq, &orbit, &diff)?);
        }
        prev = cur;
    }
    Ok(out)
}

pub fn layer_dim(c: &Constituents) -> usize {
    c.iter().map(|((x, y), m)| m * (*x as usize + 1) * (*y as usize + 1)).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndoReportUq {
    pub orbit: Vec<i64>,
    pub dim: usize,
    pub graded_dims: Vec<usize>,
    /// dim Hom(P_x, P_y).
    pub homs: BTreeMap<(i64, i64), usize>,
}

impl EndoReportUq {
    pub fn to_json(&self) -> Value {
        json!({
            "orbit": self.orbit,
            "dim": self.dim,
            "graded_dims": self.graded_dims,
            "homs": self.homs.iter().map(|((x, y), d)| json!({"from": x, "to": y, "dim": d})).collect::<Vec<_>>(),
        })
    }
}

/// End(⊕ P_x) over the orbit of μ, built from solved intertwiners.
pub fn endo_algebra_uq(uq: &Uq, mu: i64) -> Result<(FiniteAlgebra<Cyclo>, Vec<UqMap>, EndoReportUq), UqError> {
    let orbit = orbit_of(uq.ell, mu);
    let g = generator(uq, mu)?;
    let maps = hom(&g, &g);
    let alg = FiniteAlgebra::from_basis(&maps, |a, b| a.compose(b), |m| m.flatten()).map_err(|_| UqError::NotSubmodule)?;
    let mut homs = BTreeMap::new();
    for &x in &orbit {
        for &y in &orbit {
            homs.insert((x, y), hom(&uq.projective(x)?, &uq.projective(y)?).len());
        }
    }
    let report = EndoReportUq { orbit, dim: alg.dim, graded_dims: alg.graded_dims(), homs };
    Ok((alg, maps, report))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelReportUq {
    pub orbit: Vec<i64>,
    /// (t, s) → (dim ker Φ, dim of the relation span, equal).
    pub rows: BTreeMap<Bidegree, (usize, usize, bool)>,
}

impl KernelReportUq {
    pub fn equal(&self) -> bool {
        self.rows.values().all(|r| r.2)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orbit": self.orbit,
            "equal": self.equal(),
            "rows": self.rows.iter().map(|((t, s), (k, j, e))| json!({"bidegree": [t, s], "ker": k, "relations": j, "equal": e})).collect::<Vec<_>>(),
        })
    }
}

/// ker(P* ⊗ P → u*) against span{φa ⊗ v − φ ⊗ av : a ∈ End P} per
/// bidegree, P the projective generator of the block.
pub fn kernel_vs_relations_uq(uq: &Uq, mu: i64) -> Result<KernelReportUq, UqError> {
    let g = generator(uq, mu)?;
    let ends = hom(&g, &g);
    let spans = action_spans(&g);
    let mut rows = BTreeMap::new();
    for (&(t, s), span) in &spans {
        let (dt, ds) = (g.dims[t], g.dims[s]);
        let n = dt * ds;
        if n == 0 {
            continue;
        }
        let ker = span_basis(&annihilator(span, n), n);
        let mut rel = Vec::new();
        for a in &ends {
            let (at, as_) = (&a.blocks[t], &a.blocks[s]);
            for i in 0..dt {
                for j in 0..ds {
                    // X = E_ij ↦ a_tᵀ X − X a_sᵀ
                    let mut v = vec![Cyclo::zero(); n];
                    for k in 0..dt {
                        v[k * ds + j] = v[k * ds + j].clone() + &at[(i, k)];
                    }
                    for k in 0..ds {
                        v[i * ds + k] = v[i * ds + k].clone() - &as_[(k, j)];
                    }
                    rel.push(v);
                }
            }
        }
        let rel = span_basis(&rel, n);
        let eq = same_span(&ker, &rel, n);
        rows.insert((t, s), (ker.len(), rel.len(), eq));
    }
    Ok(KernelReportUq { orbit: orbit_of(uq.ell, mu), rows })
}

/// dim Hom(P_μ, M) = [M : L_μ] on simples, baby Vermas, their duals and
/// the projectives.
pub fn projectivity_certificate(uq: &Uq, mu: i64) -> Result<bool, UqError> {
    let p = uq.projective(mu)?;
    for x in 0..uq.ell as i64 {
        let z = uq.baby_verma(x)?;
        for m in [uq.simple(x)?, z.contragredient(), z, uq.projective(x)?] {
            let want = m.composition().get(&mu).copied().unwrap_or(0);
            if hom(&p, &m).len() != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs (x, y) with L_y in the second radical layer of P_x.
pub fn ext1_pairs(uq: &Uq) -> Result<Vec<(i64, i64)>, UqError> {
    let mut out = Vec::new();
    for x in 0..uq.ell as i64 {
        let layers = uq.projective(x)?.radical_layers();
        if let Some(l1) = layers.get(1) {
            out.extend(l1.keys().map(|&y| (x, y)));
        }
    }
    Ok(out)
}

fn constituents_json(c: &Constituents) -> Value {
    Value::Array(c.iter().map(|((x, y), m)| json!({"dual": x, "module": y, "mult": m})).collect())
}

/// Full report at ℓ: orbits, dual block dims and layers, endomorphism
/// algebras and the dimension count.
pub fn uq_report(ell: usize) -> Result<Value, UqError> {
    let uq = Uq::new(ell)?;
    let mut blocks = Vec::new();
    let mut total = 0;
    let mut count = 0;
    for orbit in block_orbits(ell) {
        let mu = orbit[0];
        let dims = block_dual_dims(&uq, mu)?;
        let layers = block_layers(&uq, mu)?;
        let (_, _, endo) = endo_algebra_uq(&uq, mu)?;
        total += dims.total();
        let mut proj = Vec::new();
        for &x in &orbit {
            let p = uq.projective(x)?;
            count += (x as usize + 1) * p.dim();
            proj.push(json!({"weight": x, "simple_dim": x + 1, "projective_dim": p.dim()}));
        }
        blocks.push(json!({
            "orbit": orbit,
            "kind": if orbit.len() == 1 { "steinberg" } else { "regular" },
            "dual_dim": dims.total(),
            "layers": layers.iter().map(|c| json!({"dim": layer_dim(c), "constituents": constituents_json(c)})).collect::<Vec<_>>(),
            "endo": endo.to_json(),
            "modules": proj,
        }));
    }
    Ok(json!({
        "ell": ell,
        "blocks": blocks,
        "dual_total": total,
        "simple_times_projective": count,
        "ell_cubed": ell.pow(3),
    }))
}
