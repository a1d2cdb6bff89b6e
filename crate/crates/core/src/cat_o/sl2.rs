//! sl2 helpers: the Casimir on weight modules and the big projective P_λ
//! cut out of M_{-1} ⊗ L(n) by its central character.

use crate::cat_o::construct::{simple_sl2_finite, verma_sl2};
use crate::cat_o::hom::CatOError;
use crate::cat_o::module::{Gen, Sub, WeightModule};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// C = 2fe + h + h²/2 on V[μ], when e out of μ and f back are known.
pub fn casimir_block<S: Scalar>(v: &WeightModule<S>, wi: usize) -> Option<Matrix<S>> {
    let mu = v.weights[wi][0];
    let d = v.dims[wi];
    let scalar = S::from_frac(mu * mu + 2 * mu, 2);
    let mut c = Matrix::identity(d).scale(&scalar);
    if !v.known(Gen::E(0), &v.weights[wi]) {
        return None;
    }
    if let Some(em) = v.matrix(Gen::E(0), wi) {
        let up = v.idx(&v.target(Gen::E(0), &v.weights[wi]))?;
        let fm = v.matrix(Gen::F(0), up)?;
        c = c.add(&fm.mul(em).scale(&S::from_int(2)));
    }
    Some(c)
}

pub fn central_character(lambda: i64) -> (i64, i64) {
    // (λ² + 2λ)/2 as a fraction
    (lambda * lambda + 2 * lambda, 2)
}

/// Generalized eigenspace ker (A − c)^d.
pub fn generalized_kernel<S: Scalar>(a: &Matrix<S>, c: &S) -> Vec<Vec<S>> {
    let d = a.rows();
    if d == 0 {
        return Vec::new();
    }
    let shifted = a.sub(&Matrix::identity(d).scale(c));
    let mut p = Matrix::identity(d);
    for _ in 0..d {
        p = p.mul(&shifted);
    }
    p.nullspace()
}

/// Generalized Casimir eigenspace for the central character of λ.
pub fn block_component<S: Scalar>(v: &WeightModule<S>, lambda: i64) -> Sub<S> {
    let (n, dd) = central_character(lambda);
    let c = S::from_frac(n, dd);
    (0..v.weights.len())
        .map(|wi| {
            let d = v.dims[wi];
            match casimir_block(v, wi) {
                Some(m) => Subspace::span(&generalized_kernel(&m, &c), d),
                None => Subspace::zero(d),
            }
        })
        .collect()
}

/// P_λ for strictly antidominant λ, truncated at depth `depth` below its
/// top weight −λ−2. Every weight space of the tensor product inside the
/// box is complete, so nothing needs trimming.
pub fn big_projective_sl2<S: Scalar>(lambda: i64, depth: i64) -> Result<WeightModule<S>, CatOError> {
    if lambda > -1 {
        return Err(CatOError::NotAntidominant(lambda));
    }
    let n = -1 - lambda;
    let m = verma_sl2::<S>(-1, depth).tensor(&simple_sl2_finite::<S>(n));
    let comp = block_component(&m, lambda);
    Ok(m.submodule(&comp))
}
