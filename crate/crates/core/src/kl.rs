//! Kazhdan–Lusztig polynomials by the standard recursion.
//!
//! The full table is built once per root system and is immutable afterwards,
//! so it can be shared freely between threads.

use crate::rootsys::RootSystem;

#[derive(Clone, Debug)]
pub struct KlTable {
    /// p[x][w], ascending coefficients in q; empty when x ≰ w.
    p: Vec<Vec<Vec<i64>>>,
}

fn add_into(acc: &mut Vec<i64>, poly: &[i64], shift: usize, coef: i64) {
    if acc.len() < poly.len() + shift {
        acc.resize(poly.len() + shift, 0);
    }
    for (k, c) in poly.iter().enumerate() {
        acc[k + shift] += coef * c;
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

impl KlTable {
    pub fn new(rs: &RootSystem) -> KlTable {
        let n = rs.weyl_order();
        let mut p = vec![vec![Vec::new(); n]; n];
        // elements are already sorted by length
        for w in 0..n {
            if w == 0 {
                p[0][0] = vec![1];
                continue;
            }
            let s = *rs.element(w).word.last().unwrap();
            let v = rs.mul_simple_right(w, s);
            let lw = rs.length(w);
            // z < v with zs < z and μ(z, v) ≠ 0
            let mus: Vec<(usize, i64)> = (0..n)
                .filter(|&z| z != v && rs.bruhat_leq(z, v) && rs.is_right_descent(z, s))
                .filter_map(|z| {
                    let d = rs.length(v) - rs.length(z);
                    if d % 2 == 0 {
                        return None;
                    }
                    let m = p[z][v].get((d - 1) / 2).copied().unwrap_or(0);
                    (m != 0).then_some((z, m))
                })
                .collect();
            for x in 0..n {
                if !rs.bruhat_leq(x, w) {
                    continue;
                }
                let xs = rs.mul_simple_right(x, s);
                let c = usize::from(rs.length(xs) < rs.length(x));
                let mut acc = Vec::new();
                add_into(&mut acc, &p[xs][v], 1 - c, 1);
                add_into(&mut acc, &p[x][v], c, 1);
                for &(z, m) in &mus {
                    if rs.bruhat_leq(x, z) {
                        add_into(&mut acc, &p[x][z], (lw - rs.length(z)) / 2, -m);
                    }
                }
                p[x][w] = trim(acc);
            }
        }
        KlTable { p }
    }

    pub fn poly(&self, x: usize, w: usize) -> &[i64] {
        &self.p[x][w]
    }

    /// μ(x, w): coefficient of q^{(l(w)−l(x)−1)/2}.
    pub fn mu(&self, rs: &RootSystem, x: usize, w: usize) -> i64 {
        let (lx, lw) = (rs.length(x), rs.length(w));
        if lx >= lw || (lw - lx) % 2 == 0 {
            return 0;
        }
        self.p[x][w].get((lw - lx - 1) / 2).copied().unwrap_or(0)
    }
}

/// Renders `1+q+2q^2`; the zero polynomial is `0`.
pub fn format_poly(p: &[i64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{k}"),
        };
        let s = match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            (-1, _) => format!("-{mono}"),
            _ => format!("{c}{mono}"),
        };
        parts.push(s);
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join("+").replace("+-", "-")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_and_a2_trivial() {
        for l in ["A1", "A2"] {
            let rs = RootSystem::new(l).unwrap();
            let kl = KlTable::new(&rs);
            for x in 0..rs.weyl_order() {
                for w in 0..rs.weyl_order() {
                    let expect: &[i64] = if rs.bruhat_leq(x, w) { &[1] } else { &[] };
                    assert_eq!(kl.poly(x, w), expect);
                }
            }
        }
    }

    #[test]
    fn a3_first_nontrivial() {
        let rs = RootSystem::new("A3").unwrap();
        let kl = KlTable::new(&rs);
        let x = rs.parse_word("s2").unwrap();
        let w = rs.parse_word("s2s1s3s2").unwrap();
        assert_eq!(format_poly(kl.poly(x, w)), "1+q");
    }
}
