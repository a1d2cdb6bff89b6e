use std::collections::BTreeMap;

use bigproj::uqsl2::block::{ext1_pairs, layer_dim, orbit_of, projectivity_certificate};
use bigproj::uqsl2::*;

fn m(pairs: &[((i64, i64), usize)]) -> BTreeMap<(i64, i64), usize> {
    pairs.iter().cloned().collect()
}

#[test]
fn modules_satisfy_relations() {
    for ell in [3, 5] {
        let uq = Uq::new(ell).unwrap();
        for x in 0..ell as i64 {
            let z = uq.baby_verma(x).unwrap();
            for v in [uq.simple(x).unwrap(), z.contragredient(), z, uq.induced(x).unwrap(), uq.projective(x).unwrap()] {
                assert!(v.check_relations(), "ℓ={ell} x={x}");
            }
        }
    }
    assert!(Uq::new(4).is_err());
    assert!(Uq::new(3).unwrap().simple(3).is_err());
}

#[test]
fn simples_and_projectives() {
    let uq = Uq::new(3).unwrap();
    let dims: Vec<usize> = (0..3).map(|x| uq.simple(x).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 2, 3]);
    for x in 0..3 {
        assert_eq!(uq.simple(x).unwrap().head(), [(x, 1)].into());
    }
    let p = uq.projective(0).unwrap();
    assert_eq!(p.dim(), 6);
    let layers = p.radical_layers();
    assert_eq!(layers, vec![[(0, 1)].into(), [(1, 2)].into(), [(0, 1)].into()]);
    assert!(p.is_rigid());
    // Steinberg: projective is simple
    let st = uq.projective(2).unwrap();
    assert_eq!(st.dim(), 3);
    assert_eq!(st.radical_layers(), vec![[(2, 1)].into()]);
    for ell in [5, 7] {
        let uq = Uq::new(ell).unwrap();
        for x in 0..ell as i64 - 1 {
            let p = uq.projective(x).unwrap();
            assert_eq!(p.dim(), 2 * ell);
            let xp = ell as i64 - x - 2;
            assert_eq!(p.radical_layers(), vec![[(x, 1)].into(), [(xp, 2)].into(), [(x, 1)].into()], "ℓ={ell} x={x}");
        }
    }
}

#[test]
fn baby_vermas_have_two_layers() {
    let uq = Uq::new(5).unwrap();
    let z = uq.baby_verma(1).unwrap();
    assert_eq!(z.radical_layers(), vec![[(1, 1)].into(), [(2, 1)].into()]);
    let zc = z.contragredient();
    assert_eq!(zc.radical_layers(), vec![[(2, 1)].into(), [(1, 1)].into()]);
}

#[test]
fn projectives_are_projective() {
    for ell in [3, 5] {
        let uq = Uq::new(ell).unwrap();
        for x in 0..ell as i64 {
            assert!(projectivity_certificate(&uq, x).unwrap(), "ℓ={ell} x={x}");
        }
    }
}

#[test]
fn orbits_and_linking() {
    assert_eq!(block_orbits(3), vec![vec![0, 1], vec![2]]);
    assert_eq!(block_orbits(5), vec![vec![0, 3], vec![1, 2], vec![4]]);
    for ell in [3, 5, 7, 9] {
        assert_eq!(block_orbits(ell).len(), (ell - 1) / 2 + 1);
    }
    for ell in [3, 5] {
        let uq = Uq::new(ell).unwrap();
        // Casimir separates the orbits
        for x in 0..ell as i64 {
            for y in 0..ell as i64 {
                let same = orbit_of(ell, x).contains(&y);
                assert_eq!(uq.casimir_value(x) == uq.casimir_value(y), same);
            }
        }
        for (x, y) in ext1_pairs(&uq).unwrap() {
            assert!(orbit_of(ell, x).contains(&y));
            assert_ne!(x, y);
        }
    }
}

#[test]
fn endomorphism_algebras() {
    let uq = Uq::new(3).unwrap();
    let (alg, _, r) = endo_algebra_uq(&uq, 0).unwrap();
    assert_eq!(alg.dim, 8);
    assert_eq!(r.graded_dims, vec![2, 4, 2]);
    assert!(r.homs.values().all(|&d| d == 2));
    let (alg, _, r) = endo_algebra_uq(&uq, 2).unwrap();
    assert_eq!(alg.dim, 1);
    assert_eq!(r.graded_dims, vec![1]);
    let uq = Uq::new(5).unwrap();
    let (_, _, r) = endo_algebra_uq(&uq, 1).unwrap();
    assert_eq!((r.dim, r.graded_dims.clone()), (8, vec![2, 4, 2]));
}

#[test]
fn dual_block_dims_and_layers() {
    for ell in [3usize, 5] {
        let uq = Uq::new(ell).unwrap();
        let l = ell as i64;
        let mut total = 0;
        let mut count = 0;
        for orbit in block_orbits(ell) {
            let mu = orbit[0];
            let d = block_dual_dims(&uq, mu).unwrap();
            total += d.total();
            for &x in &orbit {
                count += (x as usize + 1) * uq.projective(x).unwrap().dim();
            }
            let layers = block_layers(&uq, mu).unwrap();
            if orbit.len() == 1 {
                assert_eq!(d.total(), ell * ell);
                assert_eq!(layers, vec![m(&[((l - 1, l - 1), 1)])]);
                continue;
            }
            assert_eq!(d.total(), 2 * ell * ell);
            let mp = orbit[1];
            let (a, b) = (mu as usize + 1, mp as usize + 1);
            let outer = m(&[((mu, mu), 1), ((mp, mp), 1)]);
            let middle = m(&[((mu, mp), 2), ((mp, mu), 2)]);
            assert_eq!(layers, vec![outer.clone(), middle, outer]);
            let ld: Vec<usize> = layers.iter().map(layer_dim).collect();
            assert_eq!(ld, vec![a * a + b * b, 4 * a * b, a * a + b * b]);
        }
        assert_eq!(total, ell.pow(3));
        assert_eq!(count, ell.pow(3));
    }
}

#[test]
fn kernel_is_relation_span() {
    for ell in [3, 5] {
        let uq = Uq::new(ell).unwrap();
        for orbit in block_orbits(ell) {
            let r = kernel_vs_relations_uq(&uq, orbit[0]).unwrap();
            assert!(r.equal(), "{}", r.to_json());
        }
    }
}

#[test]
fn report_is_deterministic() {
    let a = uq_report(3).unwrap();
    assert_eq!(a, uq_report(3).unwrap());
    assert_eq!(a["dual_total"], 27);
    assert_eq!(a["simple_times_projective"], 27);
    assert_eq!(a["blocks"][0]["dual_dim"], 18);
    assert_eq!(a["blocks"][1]["dual_dim"], 9);
}
