use bigproj::hecke;
use bigproj::kl::{format_poly, KlTable};
use bigproj::rootsys::RootSystem;

#[test]
fn recursion_matches_hecke_products() {
    for label in ["A1", "A2", "B2", "G2", "A3"] {
        let rs = RootSystem::new(label).unwrap();
        let kl = KlTable::new(&rs);
        let oracle = hecke::kl_from_hecke(&rs);
        for w in 0..rs.weyl_order() {
            for x in 0..rs.weyl_order() {
                let want = oracle[w].get(&x).cloned().unwrap_or_default();
                assert_eq!(kl.poly(x, w), &want[..], "{label} x={} w={}", rs.word_string(x), rs.word_string(w));
            }
        }
    }
}

#[test]
fn a3_first_nontrivial_polynomial() {
    let rs = RootSystem::new("A3").unwrap();
    let oracle = hecke::kl_from_hecke(&rs);
    let x = rs.parse_word("s2").unwrap();
    let w = rs.parse_word("s2s1s3s2").unwrap();
    assert_eq!(format_poly(&oracle[w][&x]), "1+q");
    assert_eq!(format_poly(KlTable::new(&rs).poly(x, w)), "1+q");
    // and it is not the only one
    let kl = KlTable::new(&rs);
    let n = rs.weyl_order();
    let nontrivial = (0..n).flat_map(|x| (0..n).map(move |w| (x, w))).filter(|&(x, w)| kl.poly(x, w).len() > 1).count();
    assert!(nontrivial > 0);
}
