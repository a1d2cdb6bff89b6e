//! Root systems of small rank, their Weyl groups and the dot action.
//!
//! Conventions: `cartan[i][j] = ⟨α_j, h_i⟩`. Weights are integer vectors in
//! fundamental-weight coordinates, so the i-th coordinate is ⟨λ, h_i⟩ and
//! α_j is column j of the Cartan matrix. Roots are stored in simple-root
//! coordinates as well; `root_weight` converts.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type Weight = Vec<i64>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported root system {0}; supported: A1, A2, A3, B2, G2")]
    Unsupported(String),
    #[error("bad Weyl group word {0:?}")]
    BadWord(String),
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Action on fundamental-weight coordinates.
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, ascending height, ties lex.
    pub positive_roots: Vec<Vec<i64>>,
    /// d_i = (α_i, α_i)/2, smallest equal to 1.
    pub symmetrizer: Vec<i64>,
    /// Weyl group sorted by (length, word).
    pub weyl: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    bruhat: Vec<Vec<bool>>,
}

impl RootSystem {
    pub fn new(label: &str) -> Result<RootSystem, RootSystemError> {
        let cartan: Vec<Vec<i64>> = match label {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "G2" => vec![vec![2, -3], vec![-1, 2]],
            _ => return Err(RootSystemError::Unsupported(label.to_string())),
        };
        Ok(Self::from_cartan(label, cartan))
    }

    pub fn build(series: char, rank: usize) -> Result<RootSystem, RootSystemError> {
        Self::new(&format!("{series}{rank}"))
    }

    /// Internal constructor; used for A1×A1 in the g⊕g computations.
    pub fn from_cartan(label: &str, cartan: Vec<Vec<i64>>) -> RootSystem {
        let rank = cartan.len();
        let symmetrizer = symmetrizer(&cartan);
        let positive_roots = enumerate_roots(&cartan);
        let (weyl, index) = enumerate_weyl(&cartan);
        let mut rs = RootSystem {
            label: label.to_string(),
            rank,
            cartan,
            positive_roots,
            symmetrizer,
            weyl,
            index,
            bruhat: Vec::new(),
        };
        rs.bruhat = (0..rs.weyl.len()).map(|w| rs.subword_closure(w)).collect();
        rs
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(&self, root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| i64::from(i == j)).collect()
    }

    /// Simple-root coordinates to fundamental-weight coordinates.
    pub fn root_weight(&self, root: &[i64]) -> Weight {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| root[j] * self.cartan[i][j]).sum())
            .collect()
    }

    /// Fundamental-weight coordinates of α_j.
    pub fn alpha(&self, j: usize) -> Weight {
        (0..self.rank).map(|i| self.cartan[i][j]).collect()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.root_index(v).is_some() || self.root_index(&neg).is_some()
    }

    /// Symmetric form on simple-root coordinates, (α_i, α_i) = 2 d_i.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * b[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// ⟨β, h_i⟩ for β in simple-root coordinates.
    pub fn pairing(&self, root: &[i64], i: usize) -> i64 {
        self.root_weight(root)[i]
    }

    /// Change of basis from simple-root to fundamental-weight coordinates.
    pub fn basis_change(&self) -> Matrix<BigRational> {
        Matrix::from_fn(self.rank, self.rank, |i, j| BigRational::from_int(self.cartan[i][j]))
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn is_dominant(&self, l: &[i64]) -> bool {
        l.iter().all(|&x| x >= 0)
    }

    pub fn is_strictly_antidominant(&self, l: &[i64]) -> bool {
        l.iter().all(|&x| x <= -1)
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.weyl.len() - 1
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.weyl[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.weyl[w].word.len()
    }

    pub fn index_of_matrix(&self, m: &[Vec<i64>]) -> usize {
        self.index[m]
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        let mut m = identity_matrix(self.rank);
        for &i in word {
            m = mat_mul(&m, &self.reflection(i));
        }
        self.index[&m]
    }

    /// Parses `e` or `s2s1s3s2` (1-based indices, as printed).
    pub fn parse_word(&self, s: &str) -> Result<usize, RootSystemError> {
        let t = s.trim();
        if t == "e" || t.is_empty() {
            return Ok(0);
        }
        let mut word = Vec::new();
        for part in t.split('s').skip(1) {
            let i: usize = part.parse().map_err(|_| RootSystemError::BadWord(s.into()))?;
            if i == 0 || i > self.rank {
                return Err(RootSystemError::BadWord(s.into()));
            }
            word.push(i - 1);
        }
        if !t.starts_with('s') {
            return Err(RootSystemError::BadWord(s.into()));
        }
        Ok(self.from_word(&word))
    }

    pub fn word_string(&self, w: usize) -> String {
        let word = &self.weyl[w].word;
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|i| format!("s{}", i + 1)).collect()
    }

    pub fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let mut m = identity_matrix(self.rank);
        for k in 0..self.rank {
            m[k][i] -= self.cartan[k][i];
        }
        m
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(&self.weyl[a].matrix, &self.weyl[b].matrix)]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut word = self.weyl[w].word.clone();
        word.reverse();
        self.from_word(&word)
    }

    pub fn mul_simple_right(&self, w: usize, i: usize) -> usize {
        self.index[&mat_mul(&self.weyl[w].matrix, &self.reflection(i))]
    }

    pub fn mul_simple_left(&self, i: usize, w: usize) -> usize {
        self.index[&mat_mul(&self.reflection(i), &self.weyl[w].matrix)]
    }

    /// Linear action w(λ).
    pub fn act(&self, w: usize, l: &[i64]) -> Weight {
        mat_vec(&self.weyl[w].matrix, l)
    }

    /// w·λ = w(λ+ρ) − ρ.
    pub fn dot(&self, w: usize, l: &[i64]) -> Weight {
        let shifted: Vec<i64> = l.iter().map(|x| x + 1).collect();
        self.act(w, &shifted).into_iter().map(|x| x - 1).collect()
    }

    pub fn orbit_data(&self, l: &[i64]) -> OrbitData {
        let mut orbit = Vec::new();
        let mut reps = Vec::new();
        let mut seen = HashSet::new();
        let mut stabilizer = Vec::new();
        for w in 0..self.weyl.len() {
            let p = self.dot(w, l);
            if p == l {
                stabilizer.push(w);
            }
            if seen.insert(p.clone()) {
                orbit.push(p);
                reps.push(w);
            }
        }
        OrbitData { orbit, stabilizer, coset_reps: reps }
    }

    pub fn is_regular(&self, l: &[i64]) -> bool {
        self.orbit_data(l).stabilizer.len() == 1
    }

    pub fn l_lambda(&self, l: &[i64]) -> usize {
        let target = self.dot(self.longest(), l);
        (0..self.weyl.len())
            .filter(|&w| self.dot(w, l) == target)
            .map(|w| self.length(w))
            .min()
            .unwrap_or(0)
    }

    pub fn bruhat_leq(&self, x: usize, w: usize) -> bool {
        self.bruhat[w][x]
    }

    fn subword_closure(&self, w: usize) -> Vec<bool> {
        let word = &self.weyl[w].word;
        let mut reach = vec![false; self.weyl.len()];
        let mut current: HashSet<usize> = HashSet::from([0]);
        for &i in word {
            let next: Vec<usize> = current.iter().map(|&x| self.mul_simple_right(x, i)).collect();
            current.extend(next);
        }
        for x in current {
            reach[x] = true;
        }
        reach
    }

    /// Right descent: l(ws) < l(w).
    pub fn is_right_descent(&self, w: usize, i: usize) -> bool {
        self.length(self.mul_simple_right(w, i)) < self.length(w)
    }

    /// The unique antidominant point in the dot orbit of λ, if λ is integral.
    pub fn antidominant_in_orbit(&self, l: &[i64]) -> Weight {
        (0..self.weyl.len())
            .map(|w| self.dot(w, l))
            .find(|p| p.iter().all(|&x| x <= -1))
            .unwrap_or_else(|| l.to_vec())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitData {
    pub orbit: Vec<Weight>,
    pub stabilizer: Vec<usize>,
    pub coset_reps: Vec<usize>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    // connected diagrams only; propagate d_j = d_i a_ij / a_ji along edges
    let n = cartan.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    d[0] = Some(BigRational::from_int(1));
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * BigRational::from_frac(cartan[i][j], cartan[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(|x| x.unwrap_or_else(|| BigRational::from_int(1))).collect();
    let min = d.iter().min().unwrap().clone();
    d.iter().map(|x| (x.clone() / &min).to_i64().expect("integral symmetrizer")).collect()
}

fn enumerate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut roots: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..n {
                // ⟨β,h_i⟩ = p − q with p = how far the α_i-string goes down
                let pair: i64 = (0..n).map(|j| b[j] * cartan[i][j]).sum();
                let mut p = 0;
                let mut c = b.clone();
                loop {
                    c[i] -= 1;
                    if roots.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut up = b.clone();
                    up[i] += 1;
                    if roots.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    let mut v: Vec<Vec<i64>> = roots.into_iter().collect();
    v.sort_by(|a, b| (a.iter().sum::<i64>(), std::cmp::Reverse(a.clone())).cmp(&(b.iter().sum::<i64>(), std::cmp::Reverse(b.clone()))));
    v
}

type WeylTable = (Vec<WeylElement>, HashMap<Vec<Vec<i64>>, usize>);

fn enumerate_weyl(cartan: &[Vec<i64>]) -> WeylTable {
    let n = cartan.len();
    let gens: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            let mut m = identity_matrix(n);
            for k in 0..n {
                m[k][i] -= cartan[k][i];
            }
            m
        })
        .collect();
    let id = identity_matrix(n);
    let mut elems = vec![WeylElement { word: vec![], matrix: id.clone() }];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut start = 0;
    while start < elems.len() {
        let end = elems.len();
        for p in start..end {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&elems[p].matrix, g);
                if !index.contains_key(&m) {
                    let mut word = elems[p].word.clone();
                    word.push(i);
                    index.insert(m.clone(), elems.len());
                    elems.push(WeylElement { word, matrix: m });
                }
            }
        }
        start = end;
    }
    (elems, index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (l, n, w) in [("A1", 1, 2), ("A2", 3, 6), ("B2", 4, 8), ("G2", 6, 12), ("A3", 6, 24)] {
            let rs = RootSystem::new(l).unwrap();
            assert_eq!(rs.num_positive(), n, "{l}");
            assert_eq!(rs.weyl_order(), w, "{l}");
            assert_eq!(rs.length(rs.longest()), n, "{l}");
        }
        assert!(RootSystem::new("E8").is_err());
    }

    #[test]
    fn a2_order_and_dot() {
        let rs = RootSystem::new("A2").unwrap();
        assert_eq!(rs.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.dot(rs.longest(), &[0, 0]), vec![-2, -2]);
        let sl2 = RootSystem::new("A1").unwrap();
        assert_eq!(sl2.dot(1, &[0]), vec![-2]);
        assert_eq!(sl2.dot(1, &[-1]), vec![-1]);
    }

    #[test]
    fn b2_symmetrizer_long_first() {
        let rs = RootSystem::new("B2").unwrap();
        assert_eq!(rs.symmetrizer, vec![2, 1]);
        let g2 = RootSystem::new("G2").unwrap();
        assert_eq!(g2.symmetrizer, vec![1, 3]);
    }
}
