use bigproj::bigcell::poly::{PMono, Poly};
use bigproj::bigcell::theta::{cell_monomials, theta_eval, theta_map, theta_rank};
use bigproj::bigcell::BigCell;
use bigproj::enveloping::chevalley::LieAlgebra;
use bigproj::matrixel::{Functional, PbwDomain};
use bigproj::rootsys::RootSystem;
use bigproj::scalar::factorial;
use bigproj::{Scalar, Q};

fn cell(label: &str) -> BigCell<Q> {
    BigCell::new(&LieAlgebra::new(&RootSystem::new(label).unwrap()))
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn mono(x: &[u32], z: &[i64], y: &[u32]) -> Poly<Q> {
    Poly::term(PMono { x: x.to_vec(), z: z.to_vec(), y: y.to_vec() }, q(1))
}

#[test]
fn small_values_sl2() {
    let c = cell("A1");
    // basis order f, h, e
    let one = theta_map(&c, &mono(&[0], &[0], &[0]), 4);
    assert_eq!(one.get(&[0, 0, 0]), q(1));
    assert_eq!(one.values.len(), 1);
    assert_eq!(one, Functional::unit(&PbwDomain::new(&c.lie, 4)));
    let zl = theta_map(&c, &mono(&[0], &[-3], &[0]), 4);
    assert_eq!(zl.get(&[0, 1, 0]), q(-3));
    assert_eq!(zl.get(&[0, 2, 0]), q(9));
    let y = theta_map(&c, &mono(&[0], &[0], &[1]), 4);
    assert_eq!(y.get(&[0, 0, 1]), q(1));
    assert_eq!(y.get(&[1, 0, 0]), q(0));
}

#[test]
fn fast_path_matches_literal_evaluation() {
    for (label, depth) in [("A1", 4), ("A2", 3)] {
        let c = cell(label);
        let dom = PbwDomain::new(&c.lie, depth);
        let r = c.r;
        let zs = vec![vec![0; r], vec![-2; r], (0..r as i64).map(|i| i - 1).collect()];
        for m in cell_monomials(&c, 2, &zs).iter().step_by(3) {
            let psi = Poly::term(m.clone(), q(1));
            let fast = theta_map(&c, &psi, depth);
            for u in dom.monomials() {
                assert_eq!(fast.get(&u), theta_eval(&c, &psi, &u), "{label} {m:?} at {u:?}");
            }
        }
    }
}

#[test]
fn sl2_closed_form() {
    // ϑ(x^a z^μ y^c)(F^a' H^b E^c') = δ_{aa'} δ_{cc'} a! c! μ^b
    let c = cell("A1");
    let d = 4;
    let dom = PbwDomain::new(&c.lie, d);
    for a in 0..=3u32 {
        for cc in 0..=3u32 {
            for mu in [-4i64, 0, 3] {
                let f = theta_map(&c, &mono(&[a], &[mu], &[cc]), d);
                for u in dom.monomials() {
                    let want = if u[0] == a && u[2] == cc {
                        factorial::<Q>(a) * factorial::<Q>(cc) * Scalar::pow(&q(mu), u[1])
                    } else {
                        q(0)
                    };
                    assert_eq!(f.get(&u), want);
                }
            }
        }
    }
}

#[test]
fn intertwines_both_actions() {
    use bigproj::bigcell::Side;
    use bigproj::enveloping::Enveloping;
    let c = cell("A2");
    let env = Enveloping::from_lie(c.lie.clone());
    // root vectors have height ≤ 2, so u·x stays inside depth d
    let d = 4;
    let dom = PbwDomain::new(&c.lie, d - 2);
    let psi = mono(&[1, 0, 1], &[-2, -1], &[0, 1, 1]).add(&mono(&[0, 2, 0], &[1, -3], &[1, 0, 0]));
    let th = theta_map(&c, &psi, d);
    for a in 0..c.lie.dim() {
        let right = theta_map(&c, &c.op(Side::Right, a).apply(&psi), d);
        let left = theta_map(&c, &c.op(Side::Left, a).apply(&psi), d);
        for u in dom.monomials() {
            let ua = env.mul(&env_mono(&u), &env.generator(a));
            let au = env.mul(&env.generator(a), &env_mono(&u));
            assert_eq!(right.get(&u), th.eval(&ua).unwrap());
            assert_eq!(left.get(&u), -th.eval(&au).unwrap());
        }
    }
}

fn env_mono(u: &[u32]) -> bigproj::enveloping::PbwElement<Q> {
    bigproj::enveloping::PbwElement::from_mono(u.to_vec(), q(1))
}

#[test]
fn multiplicative() {
    for (label, d) in [("A1", 5), ("A2", 3)] {
        let c = cell(label);
        let r = c.r;
        let zs = vec![vec![-1; r], vec![2; r]];
        let ms = cell_monomials(&c, 2, &zs);
        for (i, a) in ms.iter().enumerate().step_by(7) {
            let b = &ms[(i * 5 + 3) % ms.len()];
            let pa = Poly::term(a.clone(), q(1)).add(&Poly::term(b.clone(), q(2)));
            let pb = Poly::term(b.clone(), q(-1));
            let lhs = theta_map(&c, &pa.mul(&pb), d);
            let rhs = theta_map(&c, &pa, d).convolve(&theta_map(&c, &pb, d));
            assert_eq!(lhs, rhs, "{label}: {a:?} * {b:?}");
        }
    }
}

#[test]
fn injective_on_truncations() {
    for (label, d) in [("A1", 5), ("A2", 5)] {
        let c = cell(label);
        let r = c.r;
        let zs = vec![vec![0; r], vec![-1; r], vec![3; r]];
        let ms = cell_monomials(&c, d, &zs);
        let (rank, n) = theta_rank(&c, &ms, d);
        assert_eq!(rank, n, "{label}");
    }
}
