//! The small quantum group u_q(sl2) at a primitive odd ℓ-th root of unity.
//!
//! Modules are stored by K-weight: V[w] is the q^w eigenspace, w taken mod ℓ,
//! with E: V[w] → V[w+2] and F: V[w] → V[w−2] as blocks. Projectives are cut
//! out of modules induced from the torus by the Casimir, never written down.

pub mod block;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat_o::sl2::generalized_kernel;
use crate::cyclotomic::{Cyclo, CycloField};
use crate::linalg::{Matrix, Subspace};
use num_traits::{One, Zero};

pub use block::{
    block_dual_dims, block_layers, block_orbits, endo_algebra_uq, kernel_vs_relations_uq, uq_report, DualDims,
    EndoReportUq, KernelReportUq,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum UqError {
    #[error("ℓ must be odd and at least 3, got {0}")]
    BadOrder(usize),
    #[error("highest weight {0} outside 0..ℓ")]
    BadWeight(i64),
    #[error("subspace is not stable under the action")]
    NotSubmodule,
    #[error("{0} is the Steinberg weight; its block is semisimple")]
    Steinberg(i64),
    #[error("multiplicities are not determined by the characters")]
    Peeling,
}

/// The ring data: ℓ and Q(q).
#[derive(Clone, Debug)]
pub struct Uq {
    pub ell: usize,
    pub field: Arc<CycloField>,
}

impl Uq {
    pub fn new(ell: usize) -> Result<Uq, UqError> {
        if ell < 3 || ell % 2 == 0 {
            return Err(UqError::BadOrder(ell));
        }
        Ok(Uq { ell, field: CycloField::new(ell as u32) })
    }

    pub fn q(&self, k: i64) -> Cyclo {
        self.field.q_pow(k)
    }

    /// [n] = (q^n − q^{−n})/(q − q^{−1}).
    pub fn qint(&self, n: i64) -> Cyclo {
        (self.q(n) - &self.q(-n)) / &(self.q(1) - &self.q(-1))
    }

    pub fn res(&self, w: i64) -> usize {
        w.rem_euclid(self.ell as i64) as usize
    }

    pub fn up(&self, w: usize) -> usize {
        (w + 2) % self.ell
    }

    pub fn down(&self, w: usize) -> usize {
        (w + self.ell - 2) % self.ell
    }

    /// Scalar part of the Casimir FE + (qK + q⁻¹K⁻¹)/(q − q⁻¹)² on V[w].
    pub fn casimir_shift(&self, w: i64) -> Cyclo {
        let d = self.q(1) - &self.q(-1);
        (self.q(w + 1) + &self.q(-w - 1)) / &(d.clone() * &d)
    }

    /// Casimir eigenvalue on L_μ.
    pub fn casimir_value(&self, mu: i64) -> Cyclo {
        self.casimir_shift(mu)
    }

    fn check_weight(&self, mu: i64) -> Result<(), UqError> {
        if mu < 0 || mu >= self.ell as i64 {
            return Err(UqError::BadWeight(mu));
        }
        Ok(())
    }

    /// Assemble a module from a basis with residues and sparse E, F entries
    /// (source, target, coefficient).
    pub fn from_entries(
        &self,
        residues: &[usize],
        e: &[(usize, usize, Cyclo)],
        f: &[(usize, usize, Cyclo)],
    ) -> UqModule {
        let mut dims = vec![0usize; self.ell];
        let mut pos = Vec::with_capacity(residues.len());
        for &r in residues {
            pos.push(dims[r]);
            dims[r] += 1;
        }
        let mut em: Vec<Matrix<Cyclo>> = (0..self.ell).map(|w| Matrix::zeros(dims[self.up(w)], dims[w])).collect();
        let mut fm: Vec<Matrix<Cyclo>> = (0..self.ell).map(|w| Matrix::zeros(dims[self.down(w)], dims[w])).collect();
        for (i, j, c) in e {
            assert_eq!(residues[*j], self.up(residues[*i]), "E must raise the weight by 2");
            em[residues[*i]][(pos[*j], pos[*i])] = c.clone();
        }
        for (i, j, c) in f {
            assert_eq!(residues[*j], self.down(residues[*i]), "F must lower the weight by 2");
            fm[residues[*i]][(pos[*j], pos[*i])] = c.clone();
        }
        UqModule { uq: self.clone(), dims, e: em, f: fm }
    }

    /// L_μ: v_0..v_μ, F v_j = v_{j+1}, E v_j = [j][μ−j+1] v_{j−1}.
    pub fn simple(&self, mu: i64) -> Result<UqModule, UqError> {
        self.check_weight(mu)?;
        let n = mu as usize + 1;
        let residues: Vec<usize> = (0..n).map(|j| self.res(mu - 2 * j as i64)).collect();
        let f: Vec<_> = (0..n - 1).map(|j| (j, j + 1, Cyclo::one())).collect();
        let e: Vec<_> = (1..n).map(|j| (j, j - 1, self.qint(j as i64) * &self.qint(mu - j as i64 + 1))).collect();
        Ok(self.from_entries(&residues, &e, &f))
    }

    /// Baby Verma Z(λ) = u ⊗_{u≥0} C_λ, basis F^a v for a < ℓ.
    pub fn baby_verma(&self, lambda: i64) -> Result<UqModule, UqError> {
        self.check_weight(lambda)?;
        let n = self.ell;
        let residues: Vec<usize> = (0..n).map(|a| self.res(lambda - 2 * a as i64)).collect();
        let f: Vec<_> = (0..n - 1).map(|a| (a, a + 1, Cyclo::one())).collect();
        let e: Vec<_> = (1..n)
            .map(|a| (a, a - 1, self.qint(a as i64) * &self.qint(lambda - a as i64 + 1)))
            .filter(|x| !x.2.is_zero())
            .collect();
        Ok(self.from_entries(&residues, &e, &f))
    }

    /// u ⊗_{u⁰} C_μ with basis F^a E^c v (a, c < ℓ). Projective, since the
    /// torus part is semisimple; it is also induced from the Borel through
    /// the projective cover of C_μ there, so it carries a baby Verma flag.
    pub fn induced(&self, mu: i64) -> Result<UqModule, UqError> {
        self.check_weight(mu)?;
        let l = self.ell;
        let idx = |a: usize, c: usize| a * l + c;
        let mut residues = vec![0; l * l];
        let mut e = Vec::new();
        let mut f = Vec::new();
        for a in 0..l {
            for c in 0..l {
                let n = mu + 2 * c as i64;
                residues[idx(a, c)] = self.res(n - 2 * a as i64);
                if a + 1 < l {
                    f.push((idx(a, c), idx(a + 1, c), Cyclo::one()));
                }
                if c + 1 < l {
                    e.push((idx(a, c), idx(a, c + 1), Cyclo::one()));
                }
                if a > 0 {
                    // E F^a = F^a E + [a] F^{a−1} [K; 1−a]
                    let coef = self.qint(a as i64) * &self.qint(n + 1 - a as i64);
                    if !coef.is_zero() {
                        e.push((idx(a, c), idx(a - 1, c), coef));
                    }
                }
            }
        }
        Ok(self.from_entries(&residues, &e, &f))
    }

    /// P_μ as the Casimir block of the induced module. Only P_μ from that
    /// block occurs there: μ is not a weight of L_{ℓ−μ−2}.
    pub fn projective(&self, mu: i64) -> Result<UqModule, UqError> {
        let m = self.induced(mu)?;
        let c = self.casimir_value(mu);
        let subs: Vec<Subspace<Cyclo>> = (0..self.ell)
            .map(|w| Subspace::span(&generalized_kernel(&m.casimir(w), &c), m.dims[w]))
            .collect();
        m.submodule(&subs)
    }
}

#[derive(Clone, Debug)]
pub struct UqModule {
    pub uq: Uq,
    pub dims: Vec<usize>,
    /// e[w]: V[w] → V[w+2].
    pub e: Vec<Matrix<Cyclo>>,
    /// f[w]: V[w] → V[w−2].
    pub f: Vec<Matrix<Cyclo>>,
}

/// A module map, one block per weight.
#[derive(Clone, Debug, PartialEq)]
pub struct UqMap {
    pub blocks: Vec<Matrix<Cyclo>>,
}

impl UqMap {
    pub fn compose(&self, first: &UqMap) -> UqMap {
        UqMap { blocks: self.blocks.iter().zip(&first.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn flatten(&self) -> Vec<Cyclo> {
        self.blocks.iter().flat_map(|m| m.row_vecs().into_iter().flatten()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|m| m.is_zero())
    }
}

/// A graded subspace: one subspace of V[w] per weight.
pub type Graded = Vec<Subspace<Cyclo>>;

fn graded_dim(g: &Graded) -> usize {
    g.iter().map(|s| s.dim()).sum()
}

impl UqModule {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn ell(&self) -> usize {
        self.uq.ell
    }

    /// Casimir on V[w].
    pub fn casimir(&self, w: usize) -> Matrix<Cyclo> {
        let fe = self.f[self.uq.up(w)].mul(&self.e[w]);
        fe.add(&Matrix::identity(self.dims[w]).scale(&self.uq.casimir_shift(w as i64)))
    }

    /// [E,F] = (K − K⁻¹)/(q − q⁻¹), E^ℓ = F^ℓ = 0. The K relations hold by
    /// construction of the weight blocks.
    pub fn check_relations(&self) -> bool {
        let u = &self.uq;
        for w in 0..self.ell() {
            let ef = self.e[u.down(w)].mul(&self.f[w]);
            let fe = self.f[u.up(w)].mul(&self.e[w]);
            let want = Matrix::identity(self.dims[w]).scale(&u.qint(w as i64));
            if ef.sub(&fe) != want {
                return false;
            }
            let mut pe = Matrix::identity(self.dims[w]);
            let mut pf = Matrix::identity(self.dims[w]);
            let (mut we, mut wf) = (w, w);
            for _ in 0..self.ell() {
                pe = self.e[we].mul(&pe);
                pf = self.f[wf].mul(&pf);
                we = u.up(we);
                wf = u.down(wf);
            }
            if !pe.is_zero() || !pf.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn character(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// E acts by Fᵀ and F by Eᵀ (the anti-automorphism E ↔ F fixing K).
    pub fn contragredient(&self) -> UqModule {
        let u = &self.uq;
        UqModule {
            uq: u.clone(),
            dims: self.dims.clone(),
            e: (0..self.ell()).map(|w| self.f[u.up(w)].transpose()).collect(),
            f: (0..self.ell()).map(|w| self.e[u.down(w)].transpose()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &UqModule) -> UqModule {
        let u = &self.uq;
        let diag = |a: &Matrix<Cyclo>, b: &Matrix<Cyclo>| {
            Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| match (i < a.rows(), j < a.cols()) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - a.rows(), j - a.cols())].clone(),
                _ => Cyclo::zero(),
            })
        };
        UqModule {
            uq: u.clone(),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            e: self.e.iter().zip(&other.e).map(|(a, b)| diag(a, b)).collect(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| diag(a, b)).collect(),
        }
    }

    pub fn direct_sum_all(mods: &[UqModule]) -> Option<UqModule> {
        let (first, rest) = mods.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, m| acc.direct_sum(m)))
    }

    /// Restriction to a stable graded subspace, in its echelon basis.
    pub fn submodule(&self, subs: &Graded) -> Result<UqModule, UqError> {
        let u = &self.uq;
        let restrict = |g: &Matrix<Cyclo>, w: usize, t: usize| -> Result<Matrix<Cyclo>, UqError> {
            let mut cols = Vec::new();
            for b in &subs[w].basis {
                let img = g.mul_vec(b);
                if !subs[t].contains(&img) {
                    return Err(UqError::NotSubmodule);
                }
                cols.push(subs[t].coords(&img));
            }
            Ok(Matrix::from_fn(subs[t].dim(), cols.len(), |r, c| cols[c][r].clone()))
        };
        let mut e = Vec::new();
        let mut f = Vec::new();
        for w in 0..self.ell() {
            e.push(restrict(&self.e[w], w, u.up(w))?);
            f.push(restrict(&self.f[w], w, u.down(w))?);
        }
        Ok(UqModule { uq: u.clone(), dims: subs.iter().map(|s| s.dim()).collect(), e, f })
    }

    /// V / sub, along the standard vectors off the pivots.
    pub fn quotient(&self, subs: &Graded) -> UqModule {
        let u = &self.uq;
        let act = |g: &Matrix<Cyclo>, w: usize, t: usize| {
            let comp = subs[w].complement_indices();
            let cols: Vec<Vec<Cyclo>> = comp.iter().map(|&i| subs[t].quotient_coords(&g.col(i))).collect();
            Matrix::from_fn(subs[t].codim(), cols.len(), |r, c| cols[c][r].clone())
        };
        UqModule {
            uq: u.clone(),
            dims: subs.iter().map(|s| s.codim()).collect(),
            e: (0..self.ell()).map(|w| act(&self.e[w], w, u.up(w))).collect(),
            f: (0..self.ell()).map(|w| act(&self.f[w], w, u.down(w))).collect(),
        }
    }

    fn full(&self) -> Graded {
        self.dims.iter().map(|&d| Subspace::full(d)).collect()
    }

    fn zero(&self) -> Graded {
        self.dims.iter().map(|&d| Subspace::zero(d)).collect()
    }

    /// Lift a graded subspace of the submodule `subs` back to V.
    fn lift_from(subs: &Graded, inner: &Graded) -> Graded {
        subs.iter()
            .zip(inner)
            .map(|(s, i)| {
                let vecs: Vec<Vec<Cyclo>> = i
                    .basis
                    .iter()
                    .map(|c| {
                        let mut v = vec![Cyclo::zero(); s.ambient];
                        for (x, b) in c.iter().zip(&s.basis) {
                            for (o, y) in v.iter_mut().zip(b) {
                                *o = o.clone() + &(x.clone() * y);
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::span(&vecs, s.ambient)
            })
            .collect()
    }

    /// Radical: common kernel of all maps to simples.
    pub fn radical(&self) -> Graded {
        let mut rows: Vec<Vec<Vec<Cyclo>>> = vec![Vec::new(); self.ell()];
        for x in 0..self.ell() as i64 {
            let l = self.uq.simple(x).expect("weight in range");
            for phi in hom(self, &l) {
                for (w, b) in phi.blocks.iter().enumerate() {
                    rows[w].extend(b.row_vecs());
                }
            }
        }
        rows.iter()
            .zip(&self.dims)
            .map(|(r, &d)| {
                if r.is_empty() {
                    Subspace::full(d)
                } else {
                    Subspace::span(&Matrix::from_rows(r.clone(), d).nullspace(), d)
                }
            })
            .collect()
    }

    /// Socle: sum of images of maps from simples.
    pub fn socle(&self) -> Graded {
        let mut cols: Vec<Vec<Vec<Cyclo>>> = vec![Vec::new(); self.ell()];
        for x in 0..self.ell() as i64 {
            let l = self.uq.simple(x).expect("weight in range");
            for psi in hom(&l, self) {
                for (w, b) in psi.blocks.iter().enumerate() {
                    cols[w].extend((0..b.cols()).map(|j| b.col(j)));
                }
            }
        }
        cols.iter().zip(&self.dims).map(|(c, &d)| Subspace::span(c, d)).collect()
    }

    /// dim Hom(V, L_x) for each x; the head when V has a simple-top count.
    pub fn head(&self) -> BTreeMap<i64, usize> {
        (0..self.ell() as i64)
            .filter_map(|x| {
                let n = hom(self, &self.uq.simple(x).expect("weight in range")).len();
                (n > 0).then_some((x, n))
            })
            .collect()
    }

    /// V ⊇ rad V ⊇ rad² V ⊇ … ⊇ 0, in V's coordinates.
    pub fn radical_series(&self) -> Vec<Graded> {
        let mut out = vec![self.full()];
        loop {
            let cur = out.last().expect("nonempty");
            if graded_dim(cur) == 0 {
                break;
            }
            let n = self.submodule(cur).expect("radical powers are submodules");
            let next = Self::lift_from(cur, &n.radical());
            if graded_dim(&next) == graded_dim(cur) {
                break;
            }
            out.push(next);
        }
        out
    }

    /// 0 ⊆ soc V ⊆ soc² V ⊆ … ⊆ V.
    pub fn socle_series(&self) -> Vec<Graded> {
        let mut out = vec![self.zero()];
        loop {
            let cur = out.last().expect("nonempty");
            if graded_dim(cur) == self.dim() {
                break;
            }
            let q = self.quotient(cur);
            let s = q.socle();
            let next: Graded = cur.iter().zip(&s).map(|(c, x)| c.lift(x)).collect();
            if graded_dim(&next) == graded_dim(cur) {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Simple constituents of rad^k / rad^{k+1}.
    pub fn radical_layers(&self) -> Vec<BTreeMap<i64, usize>> {
        let series = self.radical_series();
        series[..series.len() - 1].iter().map(|g| self.submodule(g).expect("submodule").head()).collect()
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_series().len() - 1
    }

    pub fn is_rigid(&self) -> bool {
        let r = self.radical_series();
        let s = self.socle_series();
        r.len() == s.len() && r.iter().rev().zip(&s).all(|(a, b)| a == b)
    }

    /// [V : L_x] summed over the radical layers.
    pub fn composition(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for layer in self.radical_layers() {
            for (x, m) in layer {
                *out.entry(x).or_insert(0) += m;
            }
        }
        out
    }
}

/// Basis of Hom_u(V, W) by solving the intertwiner equations blockwise.
pub fn hom(v: &UqModule, w: &UqModule) -> Vec<UqMap> {
    let u = &v.uq;
    let l = u.ell;
    let mut off = vec![0usize; l + 1];
    for r in 0..l {
        off[r + 1] = off[r] + w.dims[r] * v.dims[r];
    }
    let nvars = off[l];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |r: usize, i: usize, j: usize| off[r] + i * v.dims[r] + j;
    let mut rows: Vec<Vec<Cyclo>> = Vec::new();
    // X_t g_V − g_W X_s = 0 as maps V[s] → W[t]
    for s in 0..l {
        for (gv, gw, t) in [(&v.e[s], &w.e[s], u.up(s)), (&v.f[s], &w.f[s], u.down(s))] {
            for i in 0..w.dims[t] {
                for j in 0..v.dims[s] {
                    let mut row = vec![Cyclo::zero(); nvars];
                    let mut any = false;
                    for k in 0..v.dims[t] {
                        let c = &gv[(k, j)];
                        if !c.is_zero() {
                            row[var(t, i, k)] = row[var(t, i, k)].clone() + c;
                            any = true;
                        }
                    }
                    for k in 0..w.dims[s] {
                        let c = &gw[(i, k)];
                        if !c.is_zero() {
                            row[var(s, k, j)] = row[var(s, k, j)].clone() - c;
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let sols: Vec<Vec<Cyclo>> = if rows.is_empty() {
        (0..nvars).map(|i| (0..nvars).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }).collect()).collect()
    } else {
        Matrix::from_rows(rows, nvars).nullspace()
    };
    sols.into_iter()
        .map(|x| UqMap {
            blocks: (0..l).map(|r| Matrix::from_fn(w.dims[r], v.dims[r], |i, j| x[var(r, i, j)].clone())).collect(),
        })
        .collect()
}
