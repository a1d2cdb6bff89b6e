//! Command-line front end: computations and the verification suite.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bigproj::bigcell::blocks::block_component_sl2;
use bigproj::bigcell::{check_relations, structure_polynomials, BigCell, Side};
use bigproj::characters::{big_proj_char, block_combinatorics, verma_char, weyl_char};
use bigproj::enveloping::chevalley::LieAlgebra;
use bigproj::kl::{format_poly, KlTable};
use bigproj::matrixel::{block_space, endo_algebra_sl2, kernel_vs_ideal_sl2, loewy_filtration_sl2};
use bigproj::rootsys::RootSystem;
use bigproj::uqsl2::{kernel_vs_relations_uq, uq_report, Uq};
use bigproj::verify::{self, VerifyConfig, SCHEMA_VERSION};
use bigproj::whittaker::{borel_weil_block, double_whittaker_dim, tau};
use bigproj::{Scalar, Q};

#[derive(Parser, Debug)]
#[command(name = "bigproj", version, about = "Exact computations with big projective modules")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CharKind {
    Verma,
    Weyl,
    Bigproj,
    Block,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum WhMode {
    Solve,
    BorelWeil,
    TodaDim,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MeMode {
    Blocks,
    Kernel,
    Endo,
    Loewy,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Characters: Verma, Weyl, big projective, or block combinatorics.
    Char {
        #[arg(long, default_value = "A1")]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "bigproj")]
        kind: CharKind,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Kazhdan-Lusztig polynomial P_{x,w}.
    Kl {
        #[arg(long, default_value = "A3")]
        system: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Operators of the two regular actions, structure tables and relations.
    Bigcell {
        #[arg(long, default_value = "A1")]
        system: String,
        /// Also tabulate the Casimir block of this weight (A1 only).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Whittaker realization.
    Whittaker {
        #[arg(value_enum)]
        mode: WhMode,
        #[arg(long, default_value = "A1")]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Matrix-element blocks of U(sl2)*.
    Matrixel {
        #[arg(value_enum)]
        mode: MeMode,
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Small quantum sl2 at a primitive ℓ-th root of unity.
    Uq {
        #[arg(long, default_value_t = 3)]
        ell: usize,
        /// Also compare the kernel with the relation span.
        #[arg(long)]
        kernel: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long)]
        system: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: i64,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long)]
        only: Option<String>,
        /// Include wall-clock seconds (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn ints(s: &str) -> Result<Vec<i64>, Usage> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| Usage(format!("bad integer {x:?}")))).collect()
}

fn rationals(s: &str) -> Result<Vec<Q>, Usage> {
    s.split(',').map(|x| x.trim().parse::<Q>().map_err(|_| Usage(format!("bad rational {x:?}")))).collect()
}

fn root_system(label: &str) -> Result<RootSystem, Usage> {
    Ok(RootSystem::new(label)?)
}

fn cell(label: &str) -> Result<BigCell<Q>, Usage> {
    Ok(BigCell::new(&LieAlgebra::new(&root_system(label)?)))
}

fn weight(rs: &RootSystem, s: &str) -> Result<Vec<i64>, Usage> {
    let l = ints(s)?;
    if l.len() != rs.rank {
        return Err(Usage(format!("weight {s} has {} coordinates, rank is {}", l.len(), rs.rank)));
    }
    Ok(l)
}

fn eta_for(rank: usize, s: Option<&str>) -> Result<Vec<Q>, Usage> {
    match s {
        None => Ok(vec![Q::from_int(1); rank]),
        Some(s) => {
            let e = rationals(s)?;
            if e.len() != rank {
                return Err(Usage(format!("eta has {} entries, rank is {rank}", e.len())));
            }
            Ok(e)
        }
    }
}

fn sl2_only(system: &str) -> Result<(), Usage> {
    if system != "A1" {
        return Err(Usage(format!("this computation is implemented for A1 only, got {system}")));
    }
    Ok(())
}

/// Returns the payload and whether it counts as a pass.
fn dispatch(cmd: &Cmd) -> Result<(Value, bool), Usage> {
    match cmd {
        Cmd::Char { system, lambda, kind, depth } => {
            let rs = root_system(system)?;
            let l = weight(&rs, lambda)?;
            let out = match kind {
                CharKind::Verma => verma_char(&l).truncate_at(&rs, &l, *depth).to_json(),
                CharKind::Weyl => weyl_char(&rs, &l)?.truncate(&rs, *depth).to_json(),
                CharKind::Bigproj => {
                    let top = rs.dot(rs.longest(), &l);
                    big_proj_char(&rs, &l)?.truncate_at(&rs, &top, *depth).to_json()
                }
                CharKind::Block => {
                    let kl = KlTable::new(&rs);
                    serde_json::to_value(block_combinatorics(&rs, &kl, &l)?)?
                }
            };
            Ok((json!({"system": system, "lambda": l, "kind": format!("{kind:?}").to_lowercase(), "depth": depth, "character": out}), true))
        }
        Cmd::Kl { system, x, w } => {
            let rs = root_system(system)?;
            let (xi, wi) = (rs.parse_word(x)?, rs.parse_word(w)?);
            let kl = KlTable::new(&rs);
            Ok((json!({"system": system, "x": rs.word_string(xi), "w": rs.word_string(wi), "poly": format_poly(kl.poly(xi, wi))}), true))
        }
        Cmd::Bigcell { system, lambda, depth } => {
            let c = cell(system)?;
            let names = c.names();
            let ops = |side: Side| -> Vec<Value> {
                (0..c.lie.dim()).map(|a| json!({"basis": a, "op": c.op(side, a).render(&names)})).collect()
            };
            let rel = check_relations(&c);
            let tables = structure_polynomials(&c)?;
            let mut pass = rel.all();
            let block = match lambda {
                Some(l) => {
                    sl2_only(system)?;
                    let t = block_component_sl2(&c, *l, *depth)?;
                    pass &= t.matches();
                    t.to_json()
                }
                None => Value::Null,
            };
            Ok((
                json!({
                    "system": system,
                    "block": block,
                    "coordinates": names,
                    "left": ops(Side::Left),
                    "right": ops(Side::Right),
                    "structure": tables.to_json(&c),
                    "relations": {
                        "brackets_left": rel.brackets_left,
                        "brackets_right": rel.brackets_right,
                        "serre_left": rel.serre_left,
                        "serre_right": rel.serre_right,
                        "commute": rel.commute,
                        "transposition": rel.transposition,
                    },
                }),
                pass,
            ))
        }
        Cmd::Whittaker { mode, system, lambda, eta, depth } => {
            let c = cell(system)?;
            let rs = RootSystem::new(system)?;
            let e = eta_for(rs.rank, eta.as_deref())?;
            let eta_s: Vec<String> = e.iter().map(|x| x.to_exact_string()).collect();
            let need = || -> Result<Vec<i64>, Usage> {
                weight(&rs, lambda.as_deref().ok_or_else(|| Usage("--lambda is required".into()))?)
            };
            match mode {
                WhMode::Solve => {
                    let t = tau(&c, &e, *depth)?;
                    Ok((json!({"system": system, "eta": eta_s, "depth": depth, "tau": t.render(&c.names())}), true))
                }
                WhMode::BorelWeil => {
                    let l = need()?;
                    let (m, rep) = borel_weil_block(&c, &l, &e, *depth)?;
                    let ch: Vec<Value> = m.character().into_iter().map(|(w, d)| json!([w, d])).collect();
                    Ok((json!({"system": system, "eta": eta_s, "report": rep.to_json(), "character": ch}), rep.pass()))
                }
                WhMode::TodaDim => {
                    let l = need()?;
                    let d = double_whittaker_dim(&c, &l, &e, &e, *depth)?;
                    let orbit = rs.orbit_data(&l).orbit.len();
                    Ok((json!({"system": system, "lambda": l, "eta": eta_s, "depth": depth, "dim": d, "orbit": orbit}), d == orbit))
                }
            }
        }
        Cmd::Matrixel { mode, lambda, depth } => {
            let (l, d) = (*lambda, *depth);
            match mode {
                MeMode::Blocks => {
                    let (_, r) = block_space::<Q>(l, d)?;
                    Ok((r.to_json(), r.pass()))
                }
                MeMode::Kernel => {
                    let r = kernel_vs_ideal_sl2::<Q>(l, d)?;
                    Ok((r.to_json(), r.equal()))
                }
                MeMode::Endo => {
                    let (_, _, r) = endo_algebra_sl2::<Q>(l, d)?;
                    Ok((r.to_json(), true))
                }
                MeMode::Loewy => {
                    let r = loewy_filtration_sl2::<Q>(l, d)?;
                    Ok((r.to_json(), r.nested && r.exhausts))
                }
            }
        }
        Cmd::Uq { ell, kernel } => {
            let mut r = uq_report(*ell)?;
            let mut pass = r["dual_total"] == r["ell_cubed"];
            if *kernel {
                let uq = Uq::new(*ell)?;
                let mut ks = Vec::new();
                for orbit in bigproj::uqsl2::block_orbits(*ell) {
                    let k = kernel_vs_relations_uq(&uq, orbit[0])?;
                    pass &= k.equal();
                    ks.push(k.to_json());
                }
                r["kernel"] = json!(ks);
            }
            Ok((r, pass))
        }
        Cmd::Verify { system, depth, eta, only, timing } => {
            if let Some(s) = system {
                root_system(s)?;
            }
            if let Some(o) = only {
                let ids = verify::claim_ids();
                if !ids.contains(&o.as_str()) && !(1..=ids.len()).any(|k| k.to_string() == *o) {
                    return Err(Usage(format!("unknown claim {o}; known: {}", ids.join(", "))));
                }
            }
            let eta = match eta {
                Some(e) => {
                    let rank = system.as_deref().map(|s| RootSystem::new(s).map(|r| r.rank)).transpose()?;
                    let v = rationals(e)?;
                    if rank.is_some_and(|r| r != v.len()) || rank.is_none() {
                        return Err(Usage("--eta needs --system of matching rank".into()));
                    }
                    Some(v)
                }
                None => None,
            };
            let cfg = VerifyConfig { system: system.clone(), depth: *depth, eta, only: only.clone(), timing: *timing };
            let reports = verify::run(&cfg);
            let v = verify::suite_json(&reports);
            let pass = v["pass"] == json!(true);
            Ok((v, pass))
        }
    }
}

fn text(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        _ => out.push(format!("{prefix} = {v}")),
    }
}

fn verify_text(v: &Value) -> Vec<String> {
    let mut out = Vec::new();
    for c in v["claims"].as_array().into_iter().flatten() {
        let status = c["status"].as_str().unwrap_or("?");
        let mut line = format!("{:<8} {:<20} {}", status.to_uppercase(), c["id"].as_str().unwrap_or(""), c["anchor"].as_str().unwrap_or(""));
        if let Some(r) = c["reason"].as_str() {
            line.push_str(&format!(" ({r})"));
        }
        if let Some(s) = c["seconds"].as_str() {
            line.push_str(&format!(" [{s}s]"));
        }
        out.push(line);
    }
    out.push(if v["pass"] == json!(true) { "all selected claims pass".into() } else { format!("failing: {}", v["failing"]) });
    out
}

/// Print, ignoring a closed pipe.
fn emit(lines: &[String]) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    for l in lines {
        if writeln!(out, "{l}").is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (payload, pass) = match dispatch(&cli.cmd) {
        Ok(x) => x,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Json => {
            let mut v = json!({"schema_version": SCHEMA_VERSION});
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, &payload) {
                for (k, x) in src {
                    dst.insert(k.clone(), x.clone());
                }
            } else {
                v["result"] = payload.clone();
            }
            emit(&[serde_json::to_string_pretty(&v).expect("serializable")]);
        }
        Format::Text => {
            let lines = if matches!(cli.cmd, Cmd::Verify { .. }) {
                verify_text(&payload)
            } else if let Cmd::Kl { .. } = cli.cmd {
                vec![payload["poly"].as_str().unwrap_or("").to_string()]
            } else {
                let mut out = Vec::new();
                text(&payload, "", &mut out);
                out
            };
            emit(&lines);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        if let Some(f) = payload.get("failing") {
            eprintln!("failing claims: {f}");
        }
        ExitCode::from(1)
    }
}
