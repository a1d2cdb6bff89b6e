//! KL polynomials from products in the Hecke algebra; an oracle for the
//! recursion in `kl`, sharing nothing with it but the Weyl group.
//!
//! Elements are Σ_x p_x(q) T_x with T_s² = (q − 1) T_s + q, and C̃_w = Σ_x P_{x,w}(q) T_x satisfies
//! C̃_{ws} = C̃_w C̃_s − Σ_{z<w, zs<z} μ(z,w) q^{(l(w)−l(z)+1)/2} C̃_z.

use std::collections::BTreeMap;

use crate::rootsys::RootSystem;

pub type Poly = Vec<i64>;
pub type Elt = BTreeMap<usize, Poly>;

fn padd(a: &mut Poly, b: &[i64], shift: usize, c: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, x) in b.iter().enumerate() {
        a[k + shift] += c * x;
    }
}

fn trim(e: &mut Elt) {
    for p in e.values_mut() {
        while p.last() == Some(&0) {
            p.pop();
        }
    }
    e.retain(|_, p| !p.is_empty());
}

/// h · C̃_s = h · (T_s + 1).
fn times_cs(rs: &RootSystem, h: &Elt, s: usize) -> Elt {
    let mut out = Elt::new();
    for (&x, p) in h {
        let xs = rs.mul_simple_right(x, s);
        padd(out.entry(x).or_default(), p, 0, 1);
        if rs.length(xs) > rs.length(x) {
            padd(out.entry(xs).or_default(), p, 0, 1);
        } else {
            // T_x T_s = (q − 1) T_x + q T_xs
            let e = out.entry(x).or_default();
            padd(e, p, 1, 1);
            padd(e, p, 0, -1);
            padd(out.entry(xs).or_default(), p, 1, 1);
        }
    }
    trim(&mut out);
    out
}

/// P_{x,w} for all pairs.
pub fn kl_from_hecke(rs: &RootSystem) -> Vec<Elt> {
    let n = rs.weyl_order();
    let mut c: Vec<Option<Elt>> = vec![None; n];
    c[0] = Some([(0, vec![1])].into());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&w| rs.length(w));
    for &ws in &order[1..] {
        let s = (0..rs.rank).find(|&i| rs.length(rs.mul_simple_right(ws, i)) < rs.length(ws)).unwrap();
        let w = rs.mul_simple_right(ws, s);
        let cw = c[w].clone().unwrap();
        let mut out = times_cs(rs, &cw, s);
        let lw = rs.length(w);
        for (&z, p) in &cw {
            let lz = rs.length(z);
            if z == w || (lw - lz) % 2 == 0 || rs.length(rs.mul_simple_right(z, s)) > lz {
                continue;
            }
            let mu = p.get((lw - lz - 1) / 2).copied().unwrap_or(0);
            if mu == 0 {
                continue;
            }
            let cz = c[z].clone().unwrap();
            for (&y, py) in &cz {
                padd(out.entry(y).or_default(), py, (lw - lz + 1) / 2, -mu);
            }
        }
        trim(&mut out);
        c[ws] = Some(out);
    }
    c.into_iter().map(|x| x.unwrap()).collect()
}
