use bigproj::bigcell::poly::{PMono, Poly};
use bigproj::bigcell::{BigCell, Deriv};
use bigproj::cat_o::construct::{verma, verma_sl2};
use bigproj::enveloping::chevalley::LieAlgebra;
use bigproj::enveloping::Enveloping;
use bigproj::rootsys::RootSystem;
use bigproj::whittaker::*;
use bigproj::{Scalar, Q};

fn cell(label: &str) -> BigCell<Q> {
    BigCell::new(&LieAlgebra::new(&RootSystem::new(label).unwrap()))
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

#[test]
fn tau_is_the_exponential() {
    for (label, eta) in [("A1", vec![q(3)]), ("A1", vec![q(0)]), ("A2", vec![q(2), Q::from_frac(-1, 3)]), ("B2", vec![q(1), q(5)])] {
        let c = cell(label);
        let t = tau(&c, &eta, 5).unwrap();
        assert_eq!(t, exp_simple(&c, &eta, 5), "{label}");
    }
    let c = cell("A2");
    let t = tau(&c, &[q(2), q(7)], 4).unwrap();
    let m = |x: Vec<u32>| PMono { x, z: vec![0, 0], y: vec![0; 3] };
    assert_eq!(t.coeff(&m(vec![1, 1, 0])), q(14));
    assert_eq!(t.coeff(&m(vec![0, 0, 1])), q(0));
    let c = cell("A1");
    let t = tau(&c, &[q(2)], 6).unwrap();
    for k in 0..=6u32 {
        let want = Scalar::pow(&q(2), k) / bigproj::scalar::factorial::<Q>(k);
        assert_eq!(t.coeff(&PMono { x: vec![k], z: vec![0], y: vec![0] }), want);
    }
}

#[test]
fn realized_operators() {
    let c = cell("A1");
    let act = RealizedAction::new(&c, &[q(5)]).unwrap();
    let n = c.names();
    assert_eq!(act.e(&c, 0).render(&n), "d/dy[1]");
    let f = act.f(&c, 0);
    assert_eq!(f.coeff(Deriv::Id), Poly::z(1, 1, &[-2]).scale(&q(5)));
    assert!(act.check_relations(&c));
    for label in ["A2", "B2"] {
        let c = cell(label);
        let a1 = RealizedAction::new(&c, &[q(1), q(1)]).unwrap();
        let a2 = RealizedAction::new(&c, &[q(3), q(-2)]).unwrap();
        assert!(a1.check_relations(&c), "{label}");
        for i in 0..2 {
            assert_eq!(a1.e(&c, i), a2.e(&c, i));
            assert_eq!(a1.h(&c, i), a2.h(&c, i));
        }
        let phi = Poly::term(PMono { x: vec![0; c.m], z: vec![-1, 2], y: (0..c.m as u32).map(|k| k % 2).collect() }, q(1));
        assert!(a2.factorizes(&c, &phi, 4).unwrap(), "{label}");
    }
    // η = 0 gives back the flag-variety action on z^λ C[y]
    let c = cell("A2");
    let a0 = RealizedAction::new(&c, &[q(0), q(0)]).unwrap();
    for i in 0..2 {
        let mut want = c.f(bigproj::bigcell::Side::Right, i).clone();
        want.terms.retain(|d, _| !matches!(d, Deriv::Dx(_)));
        assert_eq!(a0.f(&c, i), &want);
    }
}

#[test]
fn whittaker_vectors_of_vermas() {
    let c = cell("A1");
    let chi_m = WhittakerCharacter::minus(vec![q(1)]);
    let chi_p = WhittakerCharacter::plus(vec![q(2)]);
    for mu in [-3, 0, 2] {
        let m = verma_sl2::<Q>(mu, 8);
        assert_eq!(whittaker_space(&m.restricted_dual(), &c.lie, &chi_m, false, 6).unwrap().len(), 1);
        // genuine (finitely supported) vectors: none
        assert_eq!(whittaker_space(&m, &c.lie, &chi_p, true, 6).unwrap().len(), 0);
        // η = 0: singular vectors
        let zero = WhittakerCharacter::plus(vec![q(0)]);
        let sing = whittaker_space(&m, &c.lie, &zero, true, 6).unwrap().len();
        assert_eq!(sing, m.singular_vectors().len());
    }
    let rs = RootSystem::new("A2").unwrap();
    let env = Enveloping::new(&rs);
    let c = cell("A2");
    let m = verma::<Q>(&env, &[-1, 0], 6);
    let chi = WhittakerCharacter::minus(vec![q(1), q(3)]);
    assert_eq!(whittaker_space(&m.restricted_dual(), &c.lie, &chi, false, 4).unwrap().len(), 1);
}

#[test]
fn borel_weil_sl2() {
    let c = cell("A1");
    for l in [-1, -2, -4] {
        let (m, rep) = borel_weil_block(&c, &[l], &[q(1)], 6).unwrap();
        assert!(rep.pass(), "{}", rep.to_json());
        assert_eq!(rep.isomorphic_to_projective, Some(true));
        if l == -1 {
            assert_eq!(m.character(), verma_sl2::<Q>(-1, 6).character());
        }
    }
    // coefficient scales like η³ at λ = −4
    let (_, rep) = borel_weil_block(&c, &[-4], &[q(2)], 5).unwrap();
    assert_eq!(rep.witness_coefficient, "8");
}

#[test]
fn double_whittaker_and_soergel() {
    let c = cell("A1");
    assert_eq!(double_whittaker_dim(&c, &[-4], &[q(1)], &[q(1)], 5).unwrap(), 2);
    assert_eq!(double_whittaker_dim(&c, &[-1], &[q(1)], &[q(2)], 5).unwrap(), 1);
    let rows = soergel_dim_check(&c, -4, &[q(1)], 5).unwrap();
    let get = |n: &str| rows.iter().find(|r| r.module == n).cloned().unwrap();
    assert_eq!(get("P(-4)"), SoergelRow { module: "P(-4)".into(), whittaker: 2, hom: 2 });
    assert_eq!((get("M(2)").whittaker, get("M(2)").hom), (1, 1));
    assert_eq!((get("M(-4)").whittaker, get("M(-4)").hom), (1, 1));
    assert_eq!((get("L(2)").whittaker, get("L(2)").hom), (0, 0));
}

#[test]
fn borel_weil_depth_eight_and_a2() {
    let c = cell("A1");
    for l in [-3, -5] {
        let (_, rep) = borel_weil_block(&c, &[l], &[q(1)], 8).unwrap();
        assert!(rep.pass(), "{}", rep.to_json());
        assert_eq!(rep.isomorphic_to_projective, Some(true));
    }
    let c = cell("A2");
    let (_, rep) = borel_weil_block(&c, &[-2, -2], &[q(1), q(1)], 6).unwrap();
    assert!(rep.pass(), "{}", rep.to_json());
    assert!(rep.isomorphic_to_projective.is_none());
}
