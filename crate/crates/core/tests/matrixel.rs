use std::collections::BTreeMap;

use bigproj::cat_o::construct::{simple_sl2_finite, verma_sl2};
use bigproj::cat_o::sl2::big_projective_sl2;
use bigproj::cat_o::{Gen, WeightModule};
use bigproj::enveloping::Enveloping;
use bigproj::matrixel::block::{peel, predicted_dims, sl2};
use bigproj::matrixel::*;
use bigproj::rootsys::RootSystem;
use bigproj::{Scalar, Q};

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn env() -> Enveloping {
    Enveloping::new(&RootSystem::new("A1").unwrap())
}

/// ⟨e_i*, x e_j⟩ by acting with the word letter by letter on the module.
fn direct(v: &WeightModule<Q>, word: &[usize], wstar: i64, i: usize, w: i64, j: usize) -> Q {
    let lie = sl2();
    let mut cur: (i64, Vec<Q>) = (w, (0..v.dim_at(&[w])).map(|k| if k == j { q(1) } else { q(0) }).collect());
    for &a in word.iter().rev() {
        if a == lie.h(0) {
            let c = q(cur.0);
            cur.1 = cur.1.iter().map(|x| x.clone() * &c).collect();
            continue;
        }
        let g = if a == lie.e(0) { Gen::E(0) } else { Gen::F(0) };
        let Some(wi) = v.idx(&[cur.0]) else { return q(0) };
        let t = v.target(g, &[cur.0])[0];
        match v.act(g, wi, &cur.1) {
            Some((_, x)) => cur = (t, x),
            None => return q(0),
        }
    }
    if cur.0 != wstar {
        return q(0);
    }
    cur.1[i].clone()
}

fn words(len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w: &Vec<usize>| (0..3).map(move |a| [w.clone(), vec![a]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn matrix_element_values() {
    let lie = sl2();
    let env = env();
    let (e, f, h) = (lie.e(0), lie.f(0), lie.h(0));
    // trivial module
    let l0 = simple_sl2_finite::<Q>(0);
    let phi = matrix_element(&l0, &lie, (&[0], &[q(1)]), (&[0], &[q(1)]), 4).unwrap();
    assert_eq!(phi.values.len(), 1);
    assert_eq!(phi.eval_word(&env, &[]), Some(q(1)));
    assert_eq!(phi.eval_word(&env, &[h, h]), Some(q(0)));
    // top of M_2
    let m2 = verma_sl2::<Q>(2, 6);
    let phi = matrix_element(&m2, &lie, (&[2], &[q(1)]), (&[2], &[q(1)]), 4).unwrap();
    assert_eq!(phi.eval_word(&env, &[f, e]), Some(q(0)));
    assert_eq!(phi.eval_word(&env, &[e, f]), Some(q(2)));
    // bilinearity
    let p = big_projective_sl2::<Q>(-4, 6).unwrap();
    let a = matrix_element(&p, &lie, (&[-4], &[q(1), q(0)]), (&[-6], &[q(1), q(0)]), 4).unwrap();
    let b = matrix_element(&p, &lie, (&[-4], &[q(1), q(0)]), (&[-6], &[q(0), q(1)]), 4).unwrap();
    let ab = matrix_element(&p, &lie, (&[-4], &[q(1), q(0)]), (&[-6], &[q(3), q(-2)]), 4).unwrap();
    assert_eq!(ab, a.scale(&q(3)).add(&b.scale(&q(-2))));
}

#[test]
fn factorized_formula_matches_action() {
    let lie = sl2();
    let env = env();
    let p = big_projective_sl2::<Q>(-4, 8).unwrap();
    let ws = words(4);
    for (ws_, w) in [(2, 0), (-4, -4), (0, -6), (-6, -4)] {
        let fs = matrix_elements_between(&p, &lie, &[ws_], &[w], 4).unwrap();
        let d = p.dim_at(&[w]);
        for (k, phi) in fs.iter().enumerate() {
            let (i, j) = (k / d, k % d);
            for word in &ws {
                let Some(val) = phi.eval_word(&env, word) else { continue };
                assert_eq!(val, direct(&p, word, ws_, i, w, j), "{word:?} at ({ws_},{w}) [{i},{j}]");
            }
        }
    }
}

#[test]
fn peeling_is_exact_on_products() {
    // ch L_2 ⊗ ch L_{-4} + 2 ch L_{-4} ⊗ ch L_{-4}
    let mut t = BTreeMap::new();
    for a in [2, 0, -2, -4, -6] {
        for b in [2, 0, -2, -4, -6] {
            let l2 = (a >= -2) as usize;
            let v = |x: i64| (x <= -4) as usize;
            t.insert((a, b), l2 * v(b) + 2 * v(a) * v(b));
        }
    }
    let c = peel(&t).unwrap();
    assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![((-4, -4), 2), ((2, -4), 1)]);
}

#[test]
fn block_spaces_sl2() {
    let (_, r) = block_space::<Q>(-4, 5).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    assert_eq!(r.total(), 5);
    assert_eq!(r.dims, predicted_dims(-4, 5));
    assert_eq!(r.dims[&(-4, -4)], 2);
    assert_eq!(r.dims[&(2, -4)], 1);
    let (_, r) = block_space::<Q>(-1, 5).unwrap();
    assert!(r.pass());
    assert_eq!(r.total(), 1);
    let (_, r) = block_space::<Q>(-3, 4).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    // bidegree (0, 0) of the block −2: only the finite simple reaches it
    let (_, r) = block_space::<Q>(-2, 4).unwrap();
    assert_eq!(r.dims[&(0, 0)], 1);
    assert_eq!(r.dims[&(-2, -2)], 2);
}

#[test]
fn block_dims_do_not_depend_on_depth() {
    let (_, a) = block_space::<Q>(-2, 4).unwrap();
    let (_, b) = block_space::<Q>(-2, 6).unwrap();
    for (k, v) in &a.dims {
        assert_eq!(b.dims[k], *v, "{k:?}");
    }
}

#[test]
fn kernel_is_the_ideal() {
    for l in [-2, -3] {
        let r = kernel_vs_ideal_sl2::<Q>(l, 6).unwrap();
        assert!(r.equal(), "{}", r.to_json());
        let s = -l - 2;
        let want: Vec<((i64, i64), usize)> = vec![((l, l), 2), ((l, s), 1), ((s, l), 1)];
        assert_eq!(r.constituents.clone().into_iter().collect::<Vec<_>>(), want);
        // some bidegree has a nonzero kernel
        assert!(r.rows.values().any(|x| x.0 > 0));
    }
    let r = kernel_vs_ideal_sl2::<Q>(-1, 6).unwrap();
    assert!(r.equal());
    assert!(r.rows.values().all(|x| x.0 == 0 && x.1 == 0));
}

#[test]
fn loewy_filtration() {
    let r = loewy_filtration_sl2::<Q>(-4, 5).unwrap();
    assert!(r.nested && r.exhausts && r.projective_rigid, "{}", r.to_json());
    assert_eq!(r.layers.len(), 3);
    assert_eq!(r.layer_dims(), vec![2, 2, 1]);
    let l: Vec<Vec<(i64, i64)>> = r.layers.iter().map(|x| x.keys().cloned().collect()).collect();
    assert_eq!(l, vec![vec![(-4, -4), (2, 2)], vec![(-4, 2), (2, -4)], vec![(-4, -4)]]);
    let r = loewy_filtration_sl2::<Q>(-1, 4).unwrap();
    assert_eq!(r.layers.len(), 1);
}

#[test]
fn endomorphism_algebra() {
    let (alg, _, r) = endo_algebra_sl2::<Q>(-2, 6).unwrap();
    assert_eq!(alg.dim, 5);
    assert_eq!(r.graded_dims, vec![2, 2, 1]);
    assert_eq!(r.end_projective, 2);
    assert!(r.q_squared_zero);
    // Q lies in rad² and spans it
    let pw = alg.radical_powers();
    assert_eq!(pw[2].len(), 1);
    assert!(alg.squares_to_zero(&pw[2]));
    let (alg, _, r) = endo_algebra_sl2::<Q>(-1, 6).unwrap();
    assert_eq!(alg.dim, 1);
    assert_eq!(r.graded_dims, vec![1]);
}

#[test]
fn koszul_tensor() {
    let r = koszul_tensor_check_sl2::<Q>(-2, 6).unwrap();
    assert!(r.pass(), "{}", r.to_json());
}

#[test]
fn generated_modules() {
    let lie = sl2();
    // trivial module: one-dimensional
    let l0 = simple_sl2_finite::<Q>(0);
    let phi = matrix_element(&l0, &lie, (&[0], &[q(1)]), (&[0], &[q(1)]), 7).unwrap();
    let g = functional_generated_module(&phi, 2).unwrap();
    assert_eq!(g.module.total_dim(), 1);
    assert!(g.reproduces && g.in_block(0));
    // top matrix element of M_2: f³v is singular and pairs to zero, leaving L_2
    let m2 = verma_sl2::<Q>(2, 12);
    let phi = matrix_element(&m2, &lie, (&[2], &[q(1)]), (&[2], &[q(1)]), 9).unwrap();
    let g = functional_generated_module(&phi, 3).unwrap();
    assert_eq!((g.weight, g.top), (2, 2));
    assert_eq!(g.module.character().into_iter().collect::<Vec<_>>(), vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]);
    assert!(g.reproduces && g.in_block(-4) && !g.in_block(-3));
    assert!(g.module.check_relations());
    // a matrix element from the middle of P_{-2}: weights stay in the block
    let p = big_projective_sl2::<Q>(-2, 14).unwrap();
    let phi = matrix_element(&p, &lie, (&[-2], &[q(1), q(1)]), (&[-4], &[q(0), q(1)]), 11).unwrap();
    let g = functional_generated_module(&phi, 3).unwrap();
    assert!(g.reproduces && g.in_block(-2), "{} {} {:?}", g.reproduces, g.in_block(-2), g.module.character());
    assert!(g.module.weights.iter().all(|w| (w[0] - g.weight) % 2 == 0 && w[0] <= 0));
}
