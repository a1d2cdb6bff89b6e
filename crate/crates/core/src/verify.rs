//! The verification suite: one claim per checked statement, each producing
//! a report with parameters, status and the numbers behind it.
//!
//! Claims run in parallel and are merged in a fixed order, so output is
//! deterministic.
//! Timing is left out of reports unless asked for, for the same reason.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::bigcell::blocks::block_component_sl2;
use crate::bigcell::theta::{cell_monomials, theta_map, theta_rank};
use crate::bigcell::{check_relations, BigCell, PMono, Poly};
use crate::cat_o::hom::hom_space;
use crate::cat_o::sl2::big_projective_sl2;
use crate::characters::{big_proj_char, block_combinatorics};
use crate::enveloping::chevalley::LieAlgebra;
use crate::hecke::kl_from_hecke;
use crate::kl::{format_poly, KlTable};
use crate::matrixel::block::reflect;
use crate::matrixel::{endo_algebra_sl2, kernel_vs_ideal_sl2, loewy_filtration_sl2};
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;
use crate::uqsl2::block::layer_dim;
use crate::uqsl2::{block_dual_dims, block_layers, block_orbits, endo_algebra_uq, kernel_vs_relations_uq, Uq};
use crate::whittaker::{borel_weil_block, double_whittaker_dim};
use crate::Q;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Restrict to one root system.
    pub system: Option<String>,
    pub depth: i64,
    /// Whittaker character; all ones when absent or of the wrong rank.
    pub eta: Option<Vec<Q>>,
    pub only: Option<String>,
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { system: None, depth: 6, eta: None, only: None, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub id: &'static str,
    pub criterion: usize,
    pub anchor: &'static str,
    pub params: Value,
    pub status: Status,
    pub details: Value,
    pub seconds: Option<f64>,
}

impl ClaimReport {
    pub fn to_json(&self) -> Value {
        let (status, reason) = match &self.status {
            Status::Pass => ("pass", None),
            Status::Fail => ("fail", None),
            Status::Skipped(r) => ("skipped", Some(r.clone())),
        };
        let mut v = json!({
            "id": self.id,
            "criterion": self.criterion,
            "anchor": self.anchor,
            "params": self.params,
            "status": status,
            "details": self.details,
        });
        if let Some(r) = reason {
            v["reason"] = json!(r);
        }
        if let Some(s) = self.seconds {
            v["seconds"] = json!(format!("{s:.2}"));
        }
        v
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Inputs handed to a claim after system filtering.
pub struct Ctx {
    pub systems: Vec<String>,
    pub depth: i64,
    pub eta: Option<Vec<Q>>,
}

impl Ctx {
    pub fn eta(&self, rank: usize) -> Vec<Q> {
        match &self.eta {
            Some(e) if e.len() == rank => e.clone(),
            _ => vec![Q::from_int(1); rank],
        }
    }

    fn has(&self, s: &str) -> bool {
        self.systems.iter().any(|x| x == s)
    }
}

type Outcome = Result<(Value, Value, bool), String>;

pub struct Claim {
    pub id: &'static str,
    pub criterion: usize,
    pub anchor: &'static str,
    /// Systems the claim covers by default.
    pub systems: &'static [&'static str],
    pub run: fn(&Ctx) -> Outcome,
}

pub fn claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "operator-relations",
            criterion: 1,
            anchor: "regular actions on the big cell: Chevalley-Serre relations and commutation",
            systems: &["A1", "A2"],
            run: operator_relations,
        },
        Claim {
            id: "block-character",
            criterion: 2,
            anchor: "block of the big-cell functions: character as a sum over the orbit of dual Verma times Verma",
            systems: &["A1"],
            run: block_character,
        },
        Claim {
            id: "borel-weil",
            criterion: 3,
            anchor: "Whittaker image of a block is the big projective module",
            systems: &["A1", "A2"],
            run: borel_weil,
        },
        Claim {
            id: "kernel",
            criterion: 4,
            anchor: "kernel of the matrix-element map on P* x P is the central relation span",
            systems: &["A1"],
            run: kernel,
        },
        Claim {
            id: "endomorphisms",
            criterion: 5,
            anchor: "End(P) is dual numbers, End of the generator has dim 5, matrix-element block is rigid of Loewy length 3",
            systems: &["A1"],
            run: endomorphisms,
        },
        Claim {
            id: "double-whittaker",
            criterion: 6,
            anchor: "two-sided Whittaker functions on a block: dimension |W^lambda| = dim End(P)",
            systems: &["A1"],
            run: double_whittaker,
        },
        Claim {
            id: "combinatorics",
            criterion: 7,
            anchor: "BGG reciprocity, Cartan symmetry and KL polynomials",
            systems: &["A1", "A2", "A3"],
            run: combinatorics,
        },
        Claim {
            id: "root-of-unity",
            criterion: 8,
            anchor: "small quantum sl2: blocks, endomorphism algebras and the dual algebra",
            systems: &["A1"],
            run: root_of_unity,
        },
        Claim {
            id: "theta",
            criterion: 9,
            anchor: "functions on the big cell embed into U(g)* multiplicatively",
            systems: &["A1", "A2"],
            run: theta,
        },
    ]
}

pub fn claim_ids() -> Vec<&'static str> {
    claims().iter().map(|c| c.id).collect()
}

/// Run the selected claims; reports come back sorted by criterion.
pub fn run(cfg: &VerifyConfig) -> Vec<ClaimReport> {
    let selected: Vec<Claim> = claims()
        .into_iter()
        .filter(|c| cfg.only.as_deref().map_or(true, |o| o == c.id || o == c.criterion.to_string()))
        .collect();
    let mut out: Vec<ClaimReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|c| scope.spawn(move || run_one(c, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("claim thread panicked")).collect()
    });
    out.sort_by_key(|r| r.criterion);
    out
}

fn run_one(c: &Claim, cfg: &VerifyConfig) -> ClaimReport {
    let systems: Vec<String> = match &cfg.system {
        Some(s) => c.systems.iter().filter(|x| **x == s).map(|x| x.to_string()).collect(),
        None => c.systems.iter().map(|x| x.to_string()).collect(),
    };
    let mut rep = ClaimReport {
        id: c.id,
        criterion: c.criterion,
        anchor: c.anchor,
        params: json!({"systems": systems, "depth": cfg.depth}),
        status: Status::Skipped(String::new()),
        details: Value::Null,
        seconds: None,
    };
    if systems.is_empty() {
        rep.status = Status::Skipped(format!("not applicable to {}", cfg.system.as_deref().unwrap_or("?")));
        return rep;
    }
    let ctx = Ctx { systems, depth: cfg.depth, eta: cfg.eta.clone() };
    let t = Instant::now();
    let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)(&ctx)));
    if cfg.timing {
        rep.seconds = Some(t.elapsed().as_secs_f64());
    }
    match res {
        Ok(Ok((params, details, pass))) => {
            rep.params = params;
            rep.details = details;
            rep.status = if pass { Status::Pass } else { Status::Fail };
        }
        Ok(Err(e)) => {
            rep.details = json!({"error": e});
            rep.status = Status::Fail;
        }
        Err(_) => {
            rep.details = json!({"error": "panic"});
            rep.status = Status::Fail;
        }
    }
    rep
}

pub fn suite_json(reports: &[ClaimReport]) -> Value {
    let failing: Vec<&str> = reports.iter().filter(|r| r.failed()).map(|r| r.id).collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "claims": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "failing": failing,
        "pass": failing.is_empty(),
    })
}

fn cell(label: &str) -> Result<BigCell<Q>, String> {
    let rs = RootSystem::new(label).map_err(|e| e.to_string())?;
    Ok(BigCell::new(&LieAlgebra::new(&rs)))
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn eta_json(e: &[Q]) -> Value {
    json!(e.iter().map(|x| x.to_exact_string()).collect::<Vec<_>>())
}

fn operator_relations(ctx: &Ctx) -> Outcome {
    let mut details = BTreeMap::new();
    let mut pass = true;
    for s in &ctx.systems {
        let r = check_relations(&cell(s)?);
        pass &= r.all();
        details.insert(
            s.clone(),
            json!({
                "brackets_left": r.brackets_left,
                "brackets_right": r.brackets_right,
                "serre_left": r.serre_left,
                "serre_right": r.serre_right,
                "commute": r.commute,
                "transposition": r.transposition,
            }),
        );
    }
    Ok((json!({"systems": ctx.systems}), json!(details), pass))
}

fn block_character(ctx: &Ctx) -> Outcome {
    let c = cell("A1")?;
    let lambdas = [-2, -3, -4];
    let mut rows = Vec::new();
    let mut pass = true;
    for l in lambdas {
        let t = block_component_sl2(&c, l, ctx.depth).map_err(err)?;
        let bad: Vec<Value> = t
            .dims
            .iter()
            .filter(|(k, d)| t.expected.get(k) != Some(d))
            .map(|((s, u), d)| json!({"bidegree": [s, u], "dim": d, "expected": t.expected.get(&(*s, *u))}))
            .collect();
        pass &= t.matches();
        rows.push(json!({"lambda": l, "bidegrees": t.dims.len(), "total": t.dims.values().sum::<usize>(), "matches": t.matches(), "mismatches": bad}));
    }
    Ok((json!({"system": "A1", "lambda": lambdas, "depth": ctx.depth}), json!(rows), pass))
}

fn borel_weil(ctx: &Ctx) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut params = BTreeMap::new();
    if ctx.has("A1") {
        let c = cell("A1")?;
        let eta = ctx.eta(1);
        let d = ctx.depth + 2;
        for l in -5..=-1 {
            let (_, rep) = borel_weil_block(&c, &[l], &eta, d).map_err(err)?;
            pass &= rep.pass() && rep.isomorphic_to_projective == Some(true);
            rows.push(rep.to_json());
        }
        params.insert("A1", json!({"lambda": [-1, -2, -3, -4, -5], "depth": d, "eta": eta_json(&eta)}));
    }
    if ctx.has("A2") {
        let c = cell("A2")?;
        let eta = ctx.eta(2);
        let (_, rep) = borel_weil_block(&c, &[-2, -2], &eta, ctx.depth).map_err(err)?;
        pass &= rep.character && rep.relations && rep.witness;
        rows.push(rep.to_json());
        params.insert("A2", json!({"lambda": [[-2, -2]], "depth": ctx.depth, "eta": eta_json(&eta)}));
    }
    Ok((json!(params), json!(rows), pass))
}

fn kernel(ctx: &Ctx) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for l in [-2, -3] {
        let r = kernel_vs_ideal_sl2::<Q>(l, ctx.depth).map_err(err)?;
        let s = reflect(l);
        let distinct = r.constituents.len();
        let pattern: BTreeMap<(i64, i64), usize> = [((l, l), 2), ((l, s), 1), ((s, l), 1)].into();
        let ok = r.equal() && distinct == 3 && r.constituents == pattern;
        pass &= ok;
        let mut v = r.to_json();
        v["distinct_constituents"] = json!(distinct);
        v["pass"] = json!(ok);
        rows.push(v);
    }
    Ok((json!({"system": "A1", "lambda": [-2, -3], "depth": ctx.depth}), json!(rows), pass))
}

fn endomorphisms(ctx: &Ctx) -> Outcome {
    let rs = RootSystem::new("A1").map_err(err)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for l in [-2, -4] {
        let (alg, _, e) = endo_algebra_sl2::<Q>(l, ctx.depth).map_err(err)?;
        let lo = loewy_filtration_sl2::<Q>(l, ctx.depth).map_err(err)?;
        let want_len = 2 * rs.l_lambda(&[l]) + 1;
        let ok = e.end_projective == 2
            && e.q_squared_zero
            && alg.dim == 5
            && e.graded_dims == [2, 2, 1]
            && lo.layers.len() == 3
            && lo.layers.len() == want_len
            && lo.nested
            && lo.exhausts
            && lo.projective_rigid;
        pass &= ok;
        rows.push(json!({
            "lambda": l,
            "endo": e.to_json(),
            "loewy_length": lo.layers.len(),
            "expected_length": want_len,
            "layer_dims": lo.layer_dims(),
            "nested": lo.nested,
            "exhausts": lo.exhausts,
            "rigid": lo.projective_rigid,
            "pass": ok,
        }));
    }
    Ok((json!({"system": "A1", "lambda": [-2, -4], "depth": ctx.depth}), json!(rows), pass))
}

fn double_whittaker(ctx: &Ctx) -> Outcome {
    let c = cell("A1")?;
    let rs = &c.lie.rs;
    let eta = ctx.eta(1);
    let mut rows = Vec::new();
    let mut pass = true;
    for l in [-1, -2, -3, -4] {
        let dim = double_whittaker_dim(&c, &[l], &eta, &eta, ctx.depth).map_err(err)?;
        let orbit = rs.orbit_data(&[l]).orbit.len();
        let end = hom_space(
            |d| (big_projective_sl2::<Q>(l, d).expect("antidominant"), big_projective_sl2::<Q>(l, d).expect("antidominant")),
            ctx.depth + 2,
        )
        .map_err(err)?
        .len();
        let want = if rs.is_regular(&[l]) { 2 } else { 1 };
        let ok = dim == want && dim == orbit && dim == end;
        pass &= ok;
        rows.push(json!({"lambda": l, "whittaker": dim, "orbit": orbit, "end_projective": end, "pass": ok}));
    }
    Ok((json!({"system": "A1", "lambda": [-1, -2, -3, -4], "depth": ctx.depth, "eta": eta_json(&eta)}), json!(rows), pass))
}

fn combinatorics(ctx: &Ctx) -> Outcome {
    let mut details = BTreeMap::new();
    let mut pass = true;
    for s in &ctx.systems {
        let rs = RootSystem::new(s).map_err(err)?;
        let kl = KlTable::new(&rs);
        let n = rs.weyl_order();
        let oracle = kl_from_hecke(&rs);
        let agrees = (0..n).all(|w| (0..n).all(|x| kl.poly(x, w) == oracle[w].get(&x).map_or(&[][..], |p| &p[..])));
        let mut entry = json!({"kl_matches_hecke": agrees});
        pass &= agrees;
        if s == "A3" {
            let x = rs.parse_word("s2").map_err(err)?;
            let w = rs.parse_word("s2s1s3s2").map_err(err)?;
            let got = format_poly(kl.poly(x, w));
            let hecke = format_poly(oracle[w].get(&x).map_or(&[][..], |p| &p[..]));
            pass &= got == "1+q" && hecke == "1+q";
            entry["p_s2_s2s1s3s2"] = json!({"recursion": got, "hecke": hecke});
        } else {
            let all_one = (0..n).all(|w| (0..n).all(|x| !rs.bruhat_leq(x, w) || kl.poly(x, w) == [1]));
            pass &= all_one;
            entry["kl_all_one"] = json!(all_one);
            let reps: Vec<Vec<i64>> = if s == "A1" {
                vec![vec![-2], vec![-1]]
            } else {
                vec![vec![-2, -2], vec![-2, -1], vec![-1, -2], vec![-1, -1]]
            };
            let mut blocks = Vec::new();
            for l in reps {
                let bc = block_combinatorics(&rs, &kl, &l).map_err(err)?;
                // (P_λ : M_y) read off the big projective character, against [M_y : L_λ]
                let pc = big_proj_char(&rs, &l).map_err(err)?;
                let flags: Vec<i64> = bc.weights.iter().map(|w| pc.numerator.get(w).copied().unwrap_or(0)).collect();
                let column: Vec<i64> = (0..bc.weights.len()).map(|y| bc.mult[y][0]).collect();
                let recip = flags == column && (0..bc.weights.len()).all(|x| (0..bc.weights.len()).all(|y| bc.verma_flag(x, y) == bc.mult[y][x]));
                let sym = bc.cartan_symmetric();
                pass &= recip && sym;
                blocks.push(json!({"lambda": l, "orbit": bc.weights.len(), "reciprocity": recip, "cartan_symmetric": sym, "cartan": bc.cartan}));
            }
            entry["blocks"] = json!(blocks);
        }
        details.insert(s.clone(), entry);
    }
    Ok((json!({"systems": ctx.systems}), json!(details), pass))
}

fn root_of_unity(_ctx: &Ctx) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for ell in [3usize, 5, 7] {
        let uq = Uq::new(ell).map_err(err)?;
        let mut total = 0;
        let mut blocks = Vec::new();
        for orbit in block_orbits(ell) {
            let mu = orbit[0];
            let dims = block_dual_dims(&uq, mu).map_err(err)?;
            let layers = block_layers(&uq, mu).map_err(err)?;
            let (_, _, endo) = endo_algebra_uq(&uq, mu).map_err(err)?;
            total += dims.total();
            let ok = if orbit.len() == 1 {
                let want: BTreeMap<(i64, i64), usize> = [((mu, mu), 1)].into();
                dims.total() == ell * ell && endo.dim == 1 && layers == [want]
            } else {
                let mp = orbit[1];
                let outer: BTreeMap<(i64, i64), usize> = [((mu, mu), 1), ((mp, mp), 1)].into();
                let middle: BTreeMap<(i64, i64), usize> = [((mu, mp), 2), ((mp, mu), 2)].into();
                let (a, b) = (mu as usize + 1, mp as usize + 1);
                let ld: Vec<usize> = layers.iter().map(layer_dim).collect();
                dims.total() == 2 * ell * ell
                    && endo.dim == 8
                    && endo.graded_dims == [2, 4, 2]
                    && layers == [outer.clone(), middle, outer]
                    && ld == [a * a + b * b, 4 * a * b, a * a + b * b]
            };
            let kernel = if ell <= 5 { Some(kernel_vs_relations_uq(&uq, mu).map_err(err)?.equal()) } else { None };
            let ok = ok && kernel.unwrap_or(true);
            pass &= ok;
            blocks.push(json!({
                "orbit": orbit,
                "dual_dim": dims.total(),
                "layer_dims": layers.iter().map(layer_dim).collect::<Vec<_>>(),
                "endo_dim": endo.dim,
                "endo_graded": endo.graded_dims,
                "kernel_equal": kernel,
                "pass": ok,
            }));
        }
        pass &= total == ell.pow(3);
        rows.push(json!({"ell": ell, "blocks": blocks, "total": total, "ell_cubed": ell.pow(3)}));
    }
    Ok((json!({"ell": [3, 5, 7], "kernel_ell": [3, 5]}), json!(rows), pass))
}

fn theta(ctx: &Ctx) -> Outcome {
    let d = ctx.depth - 1;
    let mut details = BTreeMap::new();
    let mut pass = true;
    for s in &ctx.systems {
        let c = cell(s)?;
        let r = c.r;
        let zs = vec![vec![0; r], vec![-1; r], vec![3; r]];
        let ms = cell_monomials(&c, d, &zs);
        let (rank, n) = theta_rank(&c, &ms, d);
        // products of sampled sums
        let small = cell_monomials(&c, 2, &[vec![-1; r], vec![2; r]]);
        let mut checked = 0;
        let mut mult = true;
        for (i, a) in small.iter().enumerate().step_by(7) {
            let b: &PMono = &small[(i * 5 + 3) % small.len()];
            let pa = Poly::term(a.clone(), Q::from_int(1)).add(&Poly::term(b.clone(), Q::from_int(2)));
            let pb = Poly::term(b.clone(), Q::from_int(-1));
            let lhs = theta_map(&c, &pa.mul(&pb), d);
            let rhs = theta_map(&c, &pa, d).convolve(&theta_map(&c, &pb, d));
            mult &= lhs == rhs;
            checked += 1;
        }
        pass &= rank == n && mult;
        details.insert(s.clone(), json!({"rank": rank, "monomials": n, "products_checked": checked, "multiplicative": mult}));
    }
    Ok((json!({"systems": ctx.systems, "depth": d}), json!(details), pass))
}
