//! Depth-truncated weight modules over a Kac–Moody-style presentation by
//! Chevalley generators e_i, f_i (h acts by the weight).
//!
//! A module only knows the weight spaces inside its box. Inside the box a
//! missing weight means the space is zero; outside it nothing is known.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::linalg::{Matrix, Subspace};
use crate::rootsys::Weight;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
}

/// Truncation region for one simple factor of the Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorBox {
    pub start: usize,
    pub len: usize,
    /// `adj / det` is the inverse of the factor's Cartan matrix.
    adj: Vec<Vec<i64>>,
    det: i64,
    pub anchors: Vec<Weight>,
    /// `None` for a complete (untruncated) factor.
    pub depth: Option<i64>,
    /// Weights below the anchors (category O) or above them (the mirror).
    pub down: bool,
}

impl FactorBox {
    pub fn new(start: usize, cartan: &[Vec<i64>], anchors: Vec<Weight>, depth: Option<i64>, down: bool) -> Self {
        let len = cartan.len();
        let m = Matrix::from_fn(len, len, |i, j| BigRational::from_int(cartan[i][j]));
        let inv = m.inverse().expect("Cartan matrix invertible");
        let det = (1..=6).map(|d| d as i64).find(|&d| {
            (0..len).all(|i| (0..len).all(|j| (inv[(i, j)].clone() * BigRational::from_int(d)).is_integer()))
        });
        let det = det.expect("small Cartan determinant");
        let adj = (0..len)
            .map(|i| (0..len).map(|j| (inv[(i, j)].clone() * BigRational::from_int(det)).to_i64().unwrap()).collect())
            .collect();
        FactorBox { start, len, adj, det, anchors, depth, down }
    }

    pub fn complete(start: usize, cartan: &[Vec<i64>]) -> Self {
        Self::new(start, cartan, Vec::new(), None, true)
    }

    /// Height of `anchor − w` (or `w − anchor` for up boxes) if that lies in Q₊.
    fn offset(&self, anchor: &[i64], w: &[i64]) -> Option<i64> {
        let s = &w[self.start..self.start + self.len];
        let diff: Vec<i64> = if self.down {
            anchor.iter().zip(s).map(|(a, b)| a - b).collect()
        } else {
            s.iter().zip(anchor).map(|(a, b)| a - b).collect()
        };
        let mut h = 0;
        for row in &self.adj {
            let n: i64 = row.iter().zip(&diff).map(|(a, b)| a * b).sum();
            if n % self.det != 0 || n < 0 {
                return None;
            }
            h += n / self.det;
        }
        Some(h)
    }

    /// Smallest height below an anchor, if any.
    pub fn level(&self, w: &[i64]) -> Option<i64> {
        self.anchors.iter().filter_map(|a| self.offset(a, w)).min()
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        match self.depth {
            None => true,
            Some(d) => self.level(w).is_some_and(|h| h <= d),
        }
    }

    fn shifted(&self, start: usize) -> Self {
        FactorBox { start, ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct WeightModule<S> {
    pub cartan: Vec<Vec<i64>>,
    pub weights: Vec<Weight>,
    pub dims: Vec<usize>,
    index: HashMap<Weight, usize>,
    /// e[i][w]: V[w] → V[w + α_i]; `None` when the target is not stored.
    pub e: Vec<Vec<Option<Matrix<S>>>>,
    pub f: Vec<Vec<Option<Matrix<S>>>>,
    pub boxes: Vec<FactorBox>,
}

/// One subspace per stored weight.
pub type Sub<S> = Vec<Subspace<S>>;

/// Builder: weight spaces with sparse action data.
pub struct ModuleData<S> {
    pub cartan: Vec<Vec<i64>>,
    pub spaces: BTreeMap<Weight, usize>,
    /// (gen, source weight) → matrix (target dim × source dim).
    pub action: HashMap<(Gen, Weight), Matrix<S>>,
    pub boxes: Vec<FactorBox>,
}

impl<S: Scalar> WeightModule<S> {
    pub fn from_data(data: ModuleData<S>) -> Self {
        let rank = data.cartan.len();
        let weights: Vec<Weight> = data.spaces.iter().filter(|(_, &d)| d > 0).map(|(w, _)| w.clone()).collect();
        let index: HashMap<Weight, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let dims: Vec<usize> = weights.iter().map(|w| data.spaces[w]).collect();
        let mut e = vec![vec![None; weights.len()]; rank];
        let mut f = vec![vec![None; weights.len()]; rank];
        let alpha = |i: usize| -> Weight { (0..rank).map(|k| data.cartan[k][i]).collect() };
        for (wi, w) in weights.iter().enumerate() {
            for i in 0..rank {
                let a = alpha(i);
                for (sign, slot) in [(1i64, &mut e), (-1, &mut f)] {
                    let t: Weight = w.iter().zip(&a).map(|(x, y)| x + sign * y).collect();
                    let Some(&ti) = index.get(&t) else { continue };
                    let g = if sign == 1 { Gen::E(i) } else { Gen::F(i) };
                    let m = data
                        .action
                        .get(&(g, w.clone()))
                        .cloned()
                        .unwrap_or_else(|| Matrix::zeros(dims[ti], dims[wi]));
                    assert_eq!((m.rows(), m.cols()), (dims[ti], dims[wi]), "action shape at {w:?}");
                    slot[i][wi] = Some(m);
                }
            }
        }
        WeightModule { cartan: data.cartan, weights, dims, index, e, f, boxes: data.boxes }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn alpha(&self, i: usize) -> Weight {
        (0..self.rank()).map(|k| self.cartan[k][i]).collect()
    }

    pub fn idx(&self, w: &[i64]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn dim_at(&self, w: &[i64]) -> usize {
        self.idx(w).map_or(0, |i| self.dims[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn in_box(&self, w: &[i64]) -> bool {
        self.boxes.iter().all(|b| b.contains(w))
    }

    /// Whether V[w] is known: inside the box, or beyond the anchors of some
    /// truncated factor (where it vanishes).
    pub fn knows(&self, w: &[i64]) -> bool {
        self.in_box(w) || self.boxes.iter().any(|b| b.depth.is_some() && b.level(w).is_none())
    }

    pub fn character(&self) -> BTreeMap<Weight, i64> {
        self.weights.iter().cloned().zip(self.dims.iter().map(|&d| d as i64)).collect()
    }

    pub fn gen_weight(&self, g: Gen) -> Weight {
        match g {
            Gen::E(i) => self.alpha(i),
            Gen::F(i) => self.alpha(i).into_iter().map(|x| -x).collect(),
        }
    }

    pub fn gens(&self) -> Vec<Gen> {
        (0..self.rank()).flat_map(|i| [Gen::E(i), Gen::F(i)]).collect()
    }

    pub fn target(&self, g: Gen, w: &[i64]) -> Weight {
        w.iter().zip(self.gen_weight(g)).map(|(a, b)| a + b).collect()
    }

    /// Whether the action of g out of weight w is fully known.
    pub fn known(&self, g: Gen, w: &[i64]) -> bool {
        let t = self.target(g, w);
        self.idx(&t).is_some() || self.knows(&t)
    }

    pub fn matrix(&self, g: Gen, wi: usize) -> Option<&Matrix<S>> {
        match g {
            Gen::E(i) => self.e[i][wi].as_ref(),
            Gen::F(i) => self.f[i][wi].as_ref(),
        }
    }

    /// g·v for v ∈ V[weights[wi]]; `None` if the result is zero or unknown.
    pub fn act(&self, g: Gen, wi: usize, v: &[S]) -> Option<(usize, Vec<S>)> {
        let t = self.target(g, &self.weights[wi]);
        let ti = self.idx(&t)?;
        let m = self.matrix(g, wi)?;
        Some((ti, m.mul_vec(v)))
    }

    pub fn zero_sub(&self) -> Sub<S> {
        self.dims.iter().map(|&d| Subspace::zero(d)).collect()
    }

    pub fn full_sub(&self) -> Sub<S> {
        self.dims.iter().map(|&d| Subspace::full(d)).collect()
    }

    /// Whether the box extends toward the anchors along generator g.
    fn raises(&self, g: Gen) -> bool {
        let i = match g {
            Gen::E(i) | Gen::F(i) => i,
        };
        let down = self.boxes.iter().find(|b| i >= b.start && i < b.start + b.len).is_none_or(|b| b.down);
        matches!(g, Gen::E(_)) == down
    }

    fn close_under(&self, sub: &mut Sub<S>, gens: &[Gen]) {
        let mut queue: Vec<(usize, Vec<S>)> =
            sub.iter().enumerate().flat_map(|(wi, s)| s.basis.iter().map(move |b| (wi, b.clone()))).collect();
        while let Some((wi, v)) = queue.pop() {
            for &g in gens {
                if let Some((ti, u)) = self.act(g, wi, &v) {
                    if !sub[ti].contains(&u) {
                        sub[ti] = sub[ti].sum(&Subspace::span(std::slice::from_ref(&u), self.dims[ti]));
                        queue.push((ti, u));
                    }
                }
            }
        }
    }

    /// Submodule generated by `sub`, computed as U(n_opp) U(n_toward) sub so
    /// that no path leaves the box.
    pub fn generate(&self, sub: &Sub<S>) -> Sub<S> {
        let mut s = sub.clone();
        let (up, down): (Vec<Gen>, Vec<Gen>) = self.gens().into_iter().partition(|&g| self.raises(g));
        self.close_under(&mut s, &up);
        self.close_under(&mut s, &down);
        s
    }

    pub fn is_submodule(&self, sub: &Sub<S>) -> bool {
        for (wi, s) in sub.iter().enumerate() {
            for v in &s.basis {
                for g in self.gens() {
                    if let Some((ti, u)) = self.act(g, wi, v) {
                        if !sub[ti].contains(&u) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Vectors killed by every raising generator (e_i for O-type boxes).
    pub fn singular(&self) -> Sub<S> {
        let up: Vec<Gen> = self.gens().into_iter().filter(|&g| self.raises(g)).collect();
        self.joint_kernel(&up)
    }

    /// Basis of the singular vectors, weight by weight.
    pub fn singular_vectors(&self) -> Vec<(Weight, Vec<S>)> {
        self.singular()
            .into_iter()
            .enumerate()
            .flat_map(|(wi, s)| s.basis.into_iter().map(move |b| (wi, b)))
            .map(|(wi, b)| (self.weights[wi].clone(), b))
            .collect()
    }

    pub fn joint_kernel(&self, gens: &[Gen]) -> Sub<S> {
        (0..self.weights.len())
            .map(|wi| {
                let d = self.dims[wi];
                let mut rows: Vec<Vec<S>> = Vec::new();
                for &g in gens {
                    if let Some(m) = self.matrix(g, wi) {
                        rows.extend(m.row_vecs());
                    }
                }
                if rows.is_empty() {
                    return Subspace::full(d);
                }
                Subspace::span(&Matrix::from_rows(rows, d).nullspace(), d)
            })
            .collect()
    }

    /// Restriction to a submodule, in the given bases.
    pub fn submodule(&self, sub: &Sub<S>) -> WeightModule<S> {
        let mut spaces = BTreeMap::new();
        let mut action = HashMap::new();
        for (wi, w) in self.weights.iter().enumerate() {
            spaces.insert(w.clone(), sub[wi].dim());
            for g in self.gens() {
                let t = self.target(g, w);
                let (Some(ti), Some(m)) = (self.idx(&t), self.matrix(g, wi)) else { continue };
                let cols: Vec<Vec<S>> = sub[wi].basis.iter().map(|b| sub[ti].coords(&m.mul_vec(b))).collect();
                let mm = Matrix::from_fn(sub[ti].dim(), sub[wi].dim(), |r, c| cols[c][r].clone());
                action.insert((g, w.clone()), mm);
            }
        }
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes: self.boxes.clone() })
    }

    /// V / sub, with basis the standard vectors at non-pivot positions.
    pub fn quotient(&self, sub: &Sub<S>) -> WeightModule<S> {
        let mut spaces = BTreeMap::new();
        let mut action = HashMap::new();
        for (wi, w) in self.weights.iter().enumerate() {
            spaces.insert(w.clone(), sub[wi].codim());
            for g in self.gens() {
                let t = self.target(g, w);
                let (Some(ti), Some(m)) = (self.idx(&t), self.matrix(g, wi)) else { continue };
                let comp = sub[wi].complement_indices();
                let cols: Vec<Vec<S>> = comp
                    .iter()
                    .map(|&c| {
                        let mut b = vec![S::zero(); self.dims[wi]];
                        b[c] = S::one();
                        sub[ti].quotient_coords(&m.mul_vec(&b))
                    })
                    .collect();
                let mm = Matrix::from_fn(sub[ti].codim(), comp.len(), |r, c| cols[c][r].clone());
                action.insert((g, w.clone()), mm);
            }
        }
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes: self.boxes.clone() })
    }

    /// Contragredient dual: same weights, e and f exchanged and transposed.
    pub fn contragredient(&self) -> WeightModule<S> {
        let mut m = self.clone();
        for i in 0..self.rank() {
            for wi in 0..self.weights.len() {
                let a = self.alpha(i);
                let up: Weight = self.weights[wi].iter().zip(&a).map(|(x, y)| x + y).collect();
                let down: Weight = self.weights[wi].iter().zip(&a).map(|(x, y)| x - y).collect();
                m.e[i][wi] = self.idx(&up).and_then(|ti| self.f[i][ti].as_ref().map(|x| x.transpose()));
                m.f[i][wi] = self.idx(&down).and_then(|ti| self.e[i][ti].as_ref().map(|x| x.transpose()));
            }
        }
        m
    }

    /// Restricted dual with the left action x ↦ −xᵀ; weights are negated.
    pub fn restricted_dual(&self) -> WeightModule<S> {
        let mut spaces = BTreeMap::new();
        let mut action = HashMap::new();
        for (wi, w) in self.weights.iter().enumerate() {
            let nw: Weight = w.iter().map(|x| -x).collect();
            spaces.insert(nw.clone(), self.dims[wi]);
            for i in 0..self.rank() {
                // e on V*[−w] is −(e: V[w−α] → V[w])ᵀ, and likewise for f
                for (g, opp) in [(Gen::E(i), Gen::E(i)), (Gen::F(i), Gen::F(i))] {
                    let src: Weight = w.iter().zip(self.gen_weight(opp)).map(|(a, b)| a - b).collect();
                    let Some(si) = self.idx(&src) else { continue };
                    if let Some(mx) = self.matrix(opp, si) {
                        action.insert((g, nw.clone()), mx.transpose().scale(&-S::one()));
                    }
                }
            }
        }
        let boxes = self
            .boxes
            .iter()
            .map(|b| FactorBox {
                anchors: b.anchors.iter().map(|a| a.iter().map(|x| -x).collect()).collect(),
                down: !b.down,
                ..b.clone()
            })
            .collect();
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes })
    }

    /// V ⊗ W over the same Lie algebra. Boxes: anchors add, depth is the minimum.
    pub fn tensor(&self, other: &WeightModule<S>) -> WeightModule<S> {
        assert_eq!(self.cartan, other.cartan);
        let boxes: Vec<FactorBox> = self
            .boxes
            .iter()
            .zip(&other.boxes)
            .map(|(a, b)| {
                assert_eq!(a.down, b.down, "tensoring modules from opposite categories");
                let anchors = match (a.depth, b.depth) {
                    (None, None) => Vec::new(),
                    (Some(_), None) => sum_anchors(&a.anchors, &top_slices(other, b)),
                    (None, Some(_)) => sum_anchors(&top_slices(self, a), &b.anchors),
                    (Some(_), Some(_)) => sum_anchors(&a.anchors, &b.anchors),
                };
                let depth = match (a.depth, b.depth) {
                    (None, None) => None,
                    (x, None) => x,
                    (None, y) => y,
                    (Some(x), Some(y)) => Some(x.min(y)),
                };
                FactorBox { anchors, depth, ..a.clone() }
            })
            .collect();
        let probe = WeightModule::<S> {
            cartan: self.cartan.clone(),
            weights: vec![],
            dims: vec![],
            index: HashMap::new(),
            e: vec![],
            f: vec![],
            boxes: boxes.clone(),
        };
        // pairs per product weight, in a fixed order
        let mut pairs: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, a) in self.weights.iter().enumerate() {
            for (j, b) in other.weights.iter().enumerate() {
                let w: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if probe.in_box(&w) {
                    pairs.entry(w).or_default().push((i, j));
                }
            }
        }
        let offsets: BTreeMap<Weight, Vec<usize>> = pairs
            .iter()
            .map(|(w, ps)| {
                let mut off = Vec::new();
                let mut acc = 0;
                for &(i, j) in ps {
                    off.push(acc);
                    acc += self.dims[i] * other.dims[j];
                }
                off.push(acc);
                (w.clone(), off)
            })
            .collect();
        let spaces: BTreeMap<Weight, usize> = offsets.iter().map(|(w, o)| (w.clone(), *o.last().unwrap())).collect();
        let mut action = HashMap::new();
        for (w, ps) in &pairs {
            for g in self.gens() {
                let t = self.target(g, w);
                let Some(tps) = pairs.get(&t) else { continue };
                let tdim = spaces[&t];
                let mut m = Matrix::zeros(tdim, spaces[w]);
                for (k, &(i, j)) in ps.iter().enumerate() {
                    let base = offsets[w][k];
                    let (di, dj) = (self.dims[i], other.dims[j]);
                    // g ⊗ 1
                    if let Some(mx) = self.matrix(g, i) {
                        let ti = self.idx(&self.target(g, &self.weights[i])).unwrap();
                        if let Some(tk) = tps.iter().position(|&p| p == (ti, j)) {
                            let tb = offsets[&t][tk];
                            for a in 0..self.dims[ti] {
                                for b in 0..di {
                                    let c = &mx[(a, b)];
                                    if c.is_zero() {
                                        continue;
                                    }
                                    for q in 0..dj {
                                        m[(tb + a * dj + q, base + b * dj + q)] = c.clone();
                                    }
                                }
                            }
                        }
                    }
                    // 1 ⊗ g
                    if let Some(mx) = other.matrix(g, j) {
                        let tj = other.idx(&other.target(g, &other.weights[j])).unwrap();
                        if let Some(tk) = tps.iter().position(|&p| p == (i, tj)) {
                            let tb = offsets[&t][tk];
                            let dtj = other.dims[tj];
                            for p in 0..di {
                                for a in 0..dtj {
                                    for b in 0..dj {
                                        let c = &mx[(a, b)];
                                        if c.is_zero() {
                                            continue;
                                        }
                                        let cur = m[(tb + p * dtj + a, base + p * dj + b)].clone();
                                        m[(tb + p * dtj + a, base + p * dj + b)] = cur + c;
                                    }
                                }
                            }
                        }
                    }
                }
                action.insert((g, w.clone()), m);
            }
        }
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes })
    }

    /// V ⊠ W over g₁ ⊕ g₂; basis at (a, b) is the Kronecker basis.
    pub fn external(&self, other: &WeightModule<S>) -> WeightModule<S> {
        let r1 = self.rank();
        let r = r1 + other.rank();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match (i < r1, j < r1) {
                        (true, true) => self.cartan[i][j],
                        (false, false) => other.cartan[i - r1][j - r1],
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().map(|b| b.shifted(b.start + r1)));
        let mut spaces = BTreeMap::new();
        let mut action = HashMap::new();
        for (i, a) in self.weights.iter().enumerate() {
            for (j, b) in other.weights.iter().enumerate() {
                let w: Weight = a.iter().chain(b).copied().collect();
                spaces.insert(w.clone(), self.dims[i] * other.dims[j]);
                for k in 0..r1 {
                    for g in [Gen::E(k), Gen::F(k)] {
                        if let Some(mx) = self.matrix(g, i) {
                            let eye = Matrix::identity(other.dims[j]);
                            action.insert((lift_gen(g, 0), w.clone()), kron(mx, &eye));
                        }
                    }
                }
                for k in 0..other.rank() {
                    for g in [Gen::E(k), Gen::F(k)] {
                        if let Some(mx) = other.matrix(g, j) {
                            let eye = Matrix::identity(self.dims[i]);
                            action.insert((lift_gen(g, r1), w.clone()), kron(&eye, mx));
                        }
                    }
                }
            }
        }
        WeightModule::from_data(ModuleData { cartan, spaces, action, boxes })
    }

    /// Weight-space-wise direct sum.
    pub fn direct_sum(&self, other: &WeightModule<S>) -> WeightModule<S> {
        assert_eq!(self.cartan, other.cartan);
        let mut spaces: BTreeMap<Weight, usize> = BTreeMap::new();
        for (w, d) in self.weights.iter().zip(&self.dims).chain(other.weights.iter().zip(&other.dims)) {
            *spaces.entry(w.clone()).or_insert(0) += d;
        }
        let mut action = HashMap::new();
        for (w, &d) in &spaces {
            for g in self.gens() {
                let t = self.target(g, w);
                let Some(&td) = spaces.get(&t) else { continue };
                let mut m = Matrix::zeros(td, d);
                let (d1, t1) = (self.dim_at(w), self.dim_at(&t));
                if let (Some(wi), Some(_)) = (self.idx(w), self.idx(&t)) {
                    if let Some(mx) = self.matrix(g, wi) {
                        for a in 0..mx.rows() {
                            for b in 0..mx.cols() {
                                m[(a, b)] = mx[(a, b)].clone();
                            }
                        }
                    }
                }
                if let (Some(wi), Some(_)) = (other.idx(w), other.idx(&t)) {
                    if let Some(mx) = other.matrix(g, wi) {
                        for a in 0..mx.rows() {
                            for b in 0..mx.cols() {
                                m[(t1 + a, d1 + b)] = mx[(a, b)].clone();
                            }
                        }
                    }
                }
                action.insert((g, w.clone()), m);
            }
        }
        let boxes = self
            .boxes
            .iter()
            .zip(&other.boxes)
            .map(|(a, b)| {
                let mut anchors = a.anchors.clone();
                for x in &b.anchors {
                    if !anchors.contains(x) {
                        anchors.push(x.clone());
                    }
                }
                let depth = match (a.depth, b.depth) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, None) => x,
                    (None, y) => y,
                };
                FactorBox { anchors, depth, ..a.clone() }
            })
            .collect();
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes })
    }

    /// Shrink the box; weights outside it are dropped.
    pub fn restrict_box(&self, depth: i64) -> WeightModule<S> {
        let boxes: Vec<FactorBox> = self.boxes.iter().map(|b| FactorBox { depth: b.depth.map(|d| d.min(depth)), ..b.clone() }).collect();
        let mut spaces = BTreeMap::new();
        let mut action = HashMap::new();
        let probe_in = |w: &[i64]| boxes.iter().all(|b| b.contains(w));
        for (wi, w) in self.weights.iter().enumerate() {
            if !probe_in(w) {
                continue;
            }
            spaces.insert(w.clone(), self.dims[wi]);
            for g in self.gens() {
                if let Some(m) = self.matrix(g, wi) {
                    if probe_in(&self.target(g, w)) {
                        action.insert((g, w.clone()), m.clone());
                    }
                }
            }
        }
        WeightModule::from_data(ModuleData { cartan: self.cartan.clone(), spaces, action, boxes })
    }

    /// Checks [e_i, f_j] = δ_ij h_i and the weight grading wherever all four
    /// maps involved are known.
    pub fn check_relations(&self) -> bool {
        for (wi, w) in self.weights.iter().enumerate() {
            let d = self.dims[wi];
            for i in 0..self.rank() {
                for j in 0..self.rank() {
                    let (ei, fj) = (Gen::E(i), Gen::F(j));
                    if !(self.known(fj, w) && self.known(ei, w)) {
                        continue;
                    }
                    let mid1 = self.target(fj, w);
                    let mid2 = self.target(ei, w);
                    if !(self.known(ei, &mid1) && self.known(fj, &mid2)) {
                        continue;
                    }
                    let ef = self.compose2(ei, fj, wi);
                    let fe = self.compose2(fj, ei, wi);
                    let mut lhs = match (ef, fe) {
                        (Some(a), Some(b)) => a.sub(&b),
                        (Some(a), None) => a,
                        (None, Some(b)) => b.scale(&-S::one()),
                        (None, None) => Matrix::zeros(d, d),
                    };
                    if i == j {
                        lhs = lhs.sub(&Matrix::identity(d).scale(&S::from_int(w[i])));
                    }
                    if !lhs.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of a·b on V[weights[wi]] when the result has the same weight.
    fn compose2(&self, a: Gen, b: Gen, wi: usize) -> Option<Matrix<S>> {
        let mid = self.target(b, &self.weights[wi]);
        let mi = self.idx(&mid)?;
        let mb = self.matrix(b, wi)?;
        let ma = self.matrix(a, mi)?;
        Some(ma.mul(mb))
    }

    /// Product of generator matrices applied right to left, starting at weight w.
    pub fn word_matrix(&self, word: &[Gen], w: &[i64]) -> Option<(Weight, Matrix<S>)> {
        let mut cur = w.to_vec();
        let wi = self.idx(w)?;
        let mut m = Matrix::identity(self.dims[wi]);
        for &g in word.iter().rev() {
            let ci = self.idx(&cur)?;
            let t = self.target(g, &cur);
            match self.matrix(g, ci) {
                Some(x) => m = x.mul(&m),
                None => {
                    if self.knows(&t) {
                        return Some((t, Matrix::zeros(0, m.cols())));
                    }
                    return None;
                }
            }
            cur = t;
        }
        Some((cur, m))
    }
}

fn lift_gen(g: Gen, shift: usize) -> Gen {
    match g {
        Gen::E(i) => Gen::E(i + shift),
        Gen::F(i) => Gen::F(i + shift),
    }
}

pub fn kron<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let x = &a[(i / b.rows(), j / b.cols())];
        if x.is_zero() {
            return S::zero();
        }
        x.clone() * &b[(i % b.rows(), j % b.cols())]
    })
}

fn sum_anchors(a: &[Weight], b: &[Weight]) -> Vec<Weight> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let s: Weight = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Maximal stored weights of a complete factor, restricted to the factor's
/// coordinates but returned as full-length vectors with zeros elsewhere.
fn top_slices<S: Scalar>(m: &WeightModule<S>, b: &FactorBox) -> Vec<Weight> {
    let mut tops = Vec::new();
    for w in &m.weights {
        let is_top = (b.start..b.start + b.len).all(|i| {
            let a = m.alpha(i);
            let up: Weight = w.iter().zip(&a).map(|(x, y)| if b.down { x + y } else { x - y }).collect();
            m.idx(&up).is_none()
        });
        if is_top {
            let s: Weight = w[b.start..b.start + b.len].to_vec();
            if !tops.contains(&s) {
                tops.push(s);
            }
        }
    }
    tops
}
