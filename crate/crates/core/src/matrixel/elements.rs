//! Matrix-element functionals Φ_{v*⊗v}(x) = ⟨v*, x v⟩ of truncated weight modules.

use crate::cat_o::module::{Gen, WeightModule};
use crate::enveloping::chevalley::LieAlgebra;
use crate::linalg::Matrix;
use crate::matrixel::functional::{Functional, PbwDomain};
use crate::rootsys::Weight;
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatrixelError {
    #[error("module data too shallow: {0} at weight {1:?} is not determined")]
    Unknown(&'static str, Weight),
    #[error("{0}")]
    Unsupported(String),
}

/// Matrix of the root vector e_β (or f_β) out of weight w, rows indexed by
/// V[w ± β]. `Ok(None)` when the target space is known to vanish.
pub fn root_matrix<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    k: usize,
    positive: bool,
    w: &[i64],
) -> Result<Option<(Weight, Matrix<S>)>, MatrixelError> {
    let bw = lie.rs.root_weight(&lie.rs.positive_roots[k]);
    let sign = if positive { 1 } else { -1 };
    let t: Weight = w.iter().zip(&bw).map(|(a, b)| a + sign * b).collect();
    for x in [w, &t[..]] {
        if v.idx(x).is_none() {
            return if v.knows(x) { Ok(None) } else { Err(MatrixelError::Unknown("root vector", x.to_vec())) };
        }
    }
    let ti = v.idx(&t).unwrap();
    let rows = v.dims[ti];
    let cols = v.dim_at(w);
    let mut acc = Matrix::<S>::zeros(rows, cols);
    for (word, c) in lie.root_word(k, positive) {
        let gens: Vec<Gen> = word.iter().map(|&i| if positive { Gen::E(i) } else { Gen::F(i) }).collect();
        let (_, m) = v.word_matrix(&gens, w).ok_or(MatrixelError::Unknown("root vector", w.to_vec()))?;
        if m.rows() == rows {
            acc = acc.add(&m.scale(&S::from_rational(&c)));
        }
    }
    Ok(Some((t, acc)))
}

/// E^c v in normal order (highest root index applied first). `Ok(None)` for zero.
pub fn apply_e_part<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    c: &[u32],
    w: &[i64],
    vec: &[S],
) -> Result<Option<(Weight, Vec<S>)>, MatrixelError> {
    let mut cur = (w.to_vec(), vec.to_vec());
    for k in (0..c.len()).rev() {
        for _ in 0..c[k] {
            match root_matrix(v, lie, k, true, &cur.0)? {
                None => return Ok(None),
                Some((t, m)) => cur = (t, m.mul_vec(&cur.1)),
            }
        }
    }
    Ok(Some(cur))
}

/// The row vector x ↦ ⟨v*, F^a x⟩, living on V[w* + wt(a)].
pub fn pull_f_part<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    a: &[u32],
    wstar: &[i64],
    row: &[S],
) -> Result<Option<(Weight, Vec<S>)>, MatrixelError> {
    let mut cur = (wstar.to_vec(), row.to_vec());
    for (k, &ak) in a.iter().enumerate() {
        let bw = lie.rs.root_weight(&lie.rs.positive_roots[k]);
        for _ in 0..ak {
            let src: Weight = cur.0.iter().zip(&bw).map(|(x, b)| x + b).collect();
            if v.idx(&src).is_none() {
                if v.knows(&src) {
                    return Ok(None);
                }
                return Err(MatrixelError::Unknown("lowering operator", src));
            }
            match root_matrix(v, lie, k, false, &src)? {
                None => return Ok(None),
                Some((_, m)) => {
                    let next: Vec<S> = (0..m.cols())
                        .map(|j| (0..m.rows()).fold(S::zero(), |s, i| s + &(cur.1[i].clone() * &m[(i, j)])))
                        .collect();
                    cur = (src, next);
                }
            }
        }
    }
    Ok(Some(cur))
}

/// Φ_{v*⊗v} on the truncated PBW domain, by ⟨v* F^a, H^b E^c v⟩ with H acting
/// by the weight of E^c v.
pub fn matrix_element<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    vstar: (&[i64], &[S]),
    vec: (&[i64], &[S]),
    depth: i64,
) -> Result<Functional<S>, MatrixelError> {
    let dom = PbwDomain::new(lie, depth);
    let mut out = Functional::zero(&dom);
    let parts = dom.root_parts();
    let hs = dom.h_parts();
    let mut pushed = Vec::new();
    for c in &parts {
        if let Some(x) = apply_e_part(v, lie, c, vec.0, vec.1)? {
            pushed.push((c, x));
        }
    }
    let mut pulled = Vec::new();
    for a in &parts {
        if let Some(x) = pull_f_part(v, lie, a, vstar.0, vstar.1)? {
            pulled.push((a, x));
        }
    }
    for (c, (wc, xc)) in &pushed {
        for (a, (wa, ra)) in &pulled {
            if wa != wc {
                continue;
            }
            let pair = xc.iter().zip(ra).fold(S::zero(), |s, (x, y)| s + &(x.clone() * y));
            if pair.is_zero() {
                continue;
            }
            for h in &hs {
                let hv = h.iter().zip(wc).fold(S::one(), |acc, (&b, &x)| acc * S::from_int(x).pow(b));
                out.set(dom.assemble(a, h, c), pair.clone() * &hv);
            }
        }
    }
    Ok(out)
}

/// Matrix elements ⟨e_i*, x e_j⟩ for all pairs of basis vectors of V[w*] and V[w].
pub fn matrix_elements_between<S: Scalar>(
    v: &WeightModule<S>,
    lie: &LieAlgebra,
    wstar: &[i64],
    w: &[i64],
    depth: i64,
) -> Result<Vec<Functional<S>>, MatrixelError> {
    let (ds, d) = (v.dim_at(wstar), v.dim_at(w));
    let unit = |n: usize, i: usize| -> Vec<S> { (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect() };
    let mut out = Vec::new();
    for i in 0..ds {
        for j in 0..d {
            out.push(matrix_element(v, lie, (wstar, &unit(ds, i)), (w, &unit(d, j)), depth)?);
        }
    }
    Ok(out)
}
