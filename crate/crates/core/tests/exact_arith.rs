use bigproj::{Cyclo, CycloField, Matrix, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn elt(order: u32, cs: &[(i64, i64)]) -> Cyclo {
    let f = CycloField::new(order);
    cs.iter().enumerate().fold(Cyclo::zero(), |acc, (k, &(n, d))| {
        acc + Cyclo::from_rational(q(n, d)) * f.q_pow(k as i64)
    })
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..7, 1i64..5), 1..7)
}

proptest! {
    #[test]
    fn cyclotomic_field_axioms(ord in prop::sample::select(vec![3u32, 5, 7, 10]),
                               a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (elt(ord, &a), elt(ord, &b), elt(ord, &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        if !a.is_zero() {
            prop_assert!((a.clone() * &a.inverse()).is_one());
            prop_assert_eq!((b.clone() / &a) * &a, b);
        }
    }

    #[test]
    fn q_has_exact_order(ord in prop::sample::select(vec![3u32, 4, 5, 6, 7, 9, 12]), k in -20i64..20) {
        let f = CycloField::new(ord);
        prop_assert!(f.q_pow(ord as i64).is_one());
        prop_assert_eq!(f.q_pow(k) * &f.q_pow(-k), Cyclo::one());
        for j in 1..ord as i64 {
            prop_assert!(!f.q_pow(j).is_one());
        }
    }

    #[test]
    fn rank_nullity_and_inverse(rows in 1usize..5, cols in 1usize..5,
                                entries in prop::collection::vec((-3i64..4, 1i64..3), 25)) {
        let m = Matrix::from_fn(rows, cols, |i, j| {
            let (n, d) = entries[i * 5 + j];
            q(n, d)
        });
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), cols);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let sq = Matrix::from_fn(rows, rows, |i, j| {
            let (n, d) = entries[i * 5 + j];
            q(n, d)
        });
        match sq.inverse() {
            Some(inv) => prop_assert_eq!(sq.mul(&inv), Matrix::identity(rows)),
            None => prop_assert!(sq.rank() < rows),
        }
    }
}
