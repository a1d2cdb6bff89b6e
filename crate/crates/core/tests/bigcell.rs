use bigproj::bigcell::{check_relations, BigCell, Side};
use bigproj::enveloping::chevalley::LieAlgebra;
use bigproj::rootsys::RootSystem;
use bigproj::Q;

fn cell(label: &str) -> BigCell<Q> {
    BigCell::new(&LieAlgebra::new(&RootSystem::new(label).unwrap()))
}

#[test]
fn sl2_formulas() {
    let c = cell("A1");
    let n = c.names();
    let r = |op: &bigproj::bigcell::DiffOp<Q>| op.render(&n);
    println!("{}", r(c.f(Side::Right, 0)));
    println!("{}", r(c.e(Side::Left, 0)));
    assert_eq!(r(c.e(Side::Right, 0)), "d/dy[1]");
    assert_eq!(r(c.h(Side::Right, 0)), "z1*d/dz1 + (-2*y[1])*d/dy[1]");
}

#[test]
fn relations_hold() {
    for l in ["A1", "A2", "B2", "G2"] {
        let rep = check_relations(&cell(l));
        assert!(rep.all(), "{l}: {rep:?}");
    }
}

#[test]
fn structure_tables() {
    use bigproj::bigcell::structure_polynomials;
    let c = cell("A1");
    let t = structure_polynomials(&c).unwrap();
    assert!(t.p.is_empty() && t.q.is_empty() && t.r.is_empty() && t.s.is_empty());
    for l in ["A2", "B2", "G2"] {
        let c = cell(l);
        let t = structure_polynomials(&c).unwrap();
        println!("{l}: {}", t.to_json(&c));
    }
}

#[test]
fn casimir_blocks_sl2() {
    use bigproj::bigcell::blocks::block_component_sl2;
    let c = cell("A1");
    for l in [-1, -2, -3, -4] {
        let t = block_component_sl2(&c, l, 6).unwrap();
        assert!(t.matches(), "{}", t.to_json());
        if l == -4 {
            assert_eq!(t.dims[&(-4, -4)], 2);
            assert_eq!(t.dims[&(2, 2)], 1);
        }
    }
    assert!(block_component_sl2(&c, 0, 4).is_err());
}

#[test]
fn blocks_exhaust_bidegree() {
    // every bidegree of the truncated function space splits into blocks
    use bigproj::bigcell::blocks::block_component_sl2;
    let c = cell("A1");
    let d = 5;
    // orbits up to λ = -10 reach every bidegree below within depth 5
    let tabs: Vec<_> = (1..=10).map(|k| block_component_sl2(&c, -k, d).unwrap()).collect();
    for (s, t) in [(-2, -2), (-4, -2), (-6, -6), (0, -4)] {
        let full = tabs.iter().find_map(|b| b.full.get(&(s, t))).copied().unwrap();
        let sum: usize = tabs.iter().filter_map(|b| b.dims.get(&(s, t))).sum();
        assert_eq!(sum, full, "bidegree ({s},{t})");
    }
}

#[test]
fn flag_quotients() {
    use bigproj::bigcell::blocks::flag_quotient_check;
    let c = cell("A1");
    for l in [-3, -1] {
        let rep = flag_quotient_check(&c, &[l], 6);
        assert!(rep.pass(), "{rep:?}");
    }
    let c = cell("A2");
    let rep = flag_quotient_check(&c, &[-2, -2], 4);
    assert!(rep.pass(), "{rep:?}");
}
