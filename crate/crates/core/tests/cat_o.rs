use std::collections::BTreeMap;

use bigproj::cat_o::construct::{simple_sl2_finite, verma_sl2};
use bigproj::cat_o::hom::{hom_space, hom_truncated, is_intertwiner, ModuleMap};
use bigproj::cat_o::loewy::{is_rigid, loewy_series_sl2, socle_layers};
use bigproj::cat_o::WeightModule;
use bigproj::cat_o::sl2::big_projective_sl2;
use bigproj::Q;

fn layers(v: &[BTreeMap<Vec<i64>, usize>]) -> Vec<Vec<(i64, usize)>> {
    v.iter().map(|l| l.iter().map(|(w, &d)| (w[0], d)).collect()).collect()
}

#[test]
fn projective_character_sl2() {
    let p = big_projective_sl2::<Q>(-4, 8).unwrap();
    // top weight 2, dims 1 down to -2, then 2
    assert_eq!(p.dim_at(&[2]), 1);
    assert_eq!(p.dim_at(&[0]), 1);
    assert_eq!(p.dim_at(&[-2]), 1);
    assert_eq!(p.dim_at(&[-4]), 2);
    assert_eq!(p.dim_at(&[-10]), 2);
    assert!(p.check_relations());
}

#[test]
fn hom_verma_sl2() {
    let h = hom_space(|d| (verma_sl2::<Q>(-4, d), verma_sl2::<Q>(2, d + 3)), 6).unwrap();
    assert_eq!(h.len(), 1);
    let h = hom_space(|d| (verma_sl2::<Q>(2, d), verma_sl2::<Q>(-4, d)), 6).unwrap();
    assert_eq!(h.len(), 0);
}

#[test]
fn end_of_projective_is_dual_numbers() {
    let maps = hom_space(|d| (big_projective_sl2::<Q>(-4, d).unwrap(), big_projective_sl2::<Q>(-4, d).unwrap()), 8).unwrap();
    assert_eq!(maps.len(), 2);
    let p = big_projective_sl2::<Q>(-4, 8).unwrap();
    let id = ModuleMap::identity(&p);
    let mut nonzero = 0;
    for m in &maps {
        assert!(is_intertwiner(m, &p, &p));
        // subtract the scalar by which m acts on the top weight
        let c = m.block(&[2]).unwrap()[(0, 0)].clone();
        let n = m.add(&id.scale(&-c));
        if !n.is_zero() {
            nonzero += 1;
        }
        assert!(n.compose(&n).is_zero());
    }
    assert!(nonzero > 0);
}

#[test]
fn loewy_layers_sl2() {
    let p = big_projective_sl2::<Q>(-4, 10).unwrap();
    let trust = |w: &[i64]| w[0] >= -12;
    let l = layers(&socle_layers(&p, 10, trust));
    assert_eq!(l, vec![vec![(-4, 1)], vec![(2, 1)], vec![(-4, 1)]]);
    assert!(is_rigid(&p, 10, |w| w[0] >= -12));
    let m = verma_sl2::<Q>(2, 10);
    assert_eq!(layers(&socle_layers(&m, 10, |_| true)), vec![vec![(-4, 1)], vec![(2, 1)]]);
    let l2 = simple_sl2_finite::<Q>(2);
    assert_eq!(layers(&socle_layers(&l2, 10, |_| true)), vec![vec![(2, 1)]]);
    assert_eq!(hom_truncated(&l2, &l2).len(), 1);
}

fn labels(l: &[Vec<(Vec<i64>, usize)>]) -> Vec<Vec<(i64, usize)>> {
    l.iter().map(|x| x.iter().map(|(w, d)| (w[0], *d)).collect()).collect()
}

#[test]
fn loewy_series_with_certificate() {
    let p = loewy_series_sl2(|d| big_projective_sl2::<Q>(-2, d).unwrap(), 8).unwrap();
    assert_eq!(labels(&p), vec![vec![(-2, 1)], vec![(0, 1)], vec![(-2, 1)]]);
    let m = loewy_series_sl2(|d| verma_sl2::<Q>(2, d), 8).unwrap();
    assert_eq!(labels(&m), vec![vec![(2, 1)], vec![(-4, 1)]]);
    let l = loewy_series_sl2(|_| simple_sl2_finite::<Q>(2), 8).unwrap();
    assert_eq!(labels(&l), vec![vec![(2, 1)]]);
    // Loewy length 2 l_λ + 1 for regular and singular blocks
    for lam in [-1i64, -2, -3, -5] {
        let p = loewy_series_sl2(|d| big_projective_sl2::<Q>(lam, d).unwrap(), 10).unwrap();
        assert_eq!(p.len(), if lam == -1 { 1 } else { 3 }, "λ = {lam}");
    }
}

#[test]
fn singular_projective_is_the_verma() {
    let p = big_projective_sl2::<Q>(-1, 6).unwrap();
    let m = verma_sl2::<Q>(-1, 6);
    assert_eq!(p.character(), m.character());
    assert!(big_projective_sl2::<Q>(0, 6).is_err());
}

#[test]
fn singular_vectors_examples() {
    let w = |v: &WeightModule<Q>| v.singular_vectors().into_iter().map(|x| x.0[0]).collect::<Vec<_>>();
    let mut got = w(&verma_sl2::<Q>(2, 8));
    got.sort();
    assert_eq!(got, vec![-4, 2]);
    assert_eq!(w(&verma_sl2::<Q>(-1, 8)), vec![-1]);
    assert_eq!(w(&simple_sl2_finite::<Q>(2)), vec![2]);
    // contragredient: the top only
    assert_eq!(w(&verma_sl2::<Q>(2, 8).contragredient()), vec![2]);
}

#[test]
fn duals() {
    let m = verma_sl2::<Q>(2, 6);
    let mc = m.contragredient();
    assert_eq!(m.character(), mc.character());
    assert!(mc.check_relations());
    let dd = m.restricted_dual().restricted_dual();
    assert_eq!(dd.character(), m.character());
    assert_eq!(dd.e, m.e);
    assert_eq!(dd.f, m.f);
    assert!(m.restricted_dual().check_relations());
}

#[test]
fn tensor_character_is_product() {
    let m = verma_sl2::<Q>(-3, 8);
    let l = simple_sl2_finite::<Q>(2);
    let t = m.tensor(&l);
    assert!(t.check_relations());
    for k in 0..=8 {
        let mu = -1 - 2 * k;
        let expected = (0..=2).filter(|&j| k - j >= 0).count();
        assert_eq!(t.dim_at(&[mu]), expected);
    }
}

#[test]
fn a2_verma_dimension() {
    use bigproj::cat_o::construct::verma;
    use bigproj::enveloping::Enveloping;
    use bigproj::rootsys::RootSystem;
    let env = Enveloping::new(&RootSystem::new("A2").unwrap());
    let m = verma::<Q>(&env, &[0, 0], 2);
    // -α1-α2 in fundamental coordinates
    assert_eq!(m.dim_at(&[-1, -1]), 2);
    assert!(m.check_relations());
}
