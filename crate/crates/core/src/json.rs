//! JSON encoding of polynomials, rational functions, localized classes,
//! expansions, stable-envelope matrices, transition tables and reports.
//! Key order is deterministic so emitted files are byte-stable.

use crate::casselman::TransitionTable;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::kclass::{Basis, LocalizedClass, SchubertExpansion};
use crate::report::{Check, Report};
use crate::ring::{LaurentPoly, Monomial, RationalFn};
use crate::stable::{Chamber, StabMatrix};
use crate::weyl::{Elem, Flag, LieType, Weight, MAX_RANK};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

fn perr(s: impl Into<String>) -> Error {
    Error::Parse(s.into())
}

fn int_to_json(c: &Int) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<Int> {
    if let Some(k) = v.as_i64() {
        return Ok(Int::from(k));
    }
    let s = v.as_str().ok_or_else(|| perr(format!("expected integer, got {v}")))?;
    s.parse::<BigInt>().map(Int::from).map_err(|_| perr(format!("bad integer '{s}'")))
}

fn i32_from_json(v: &Value) -> Result<i32> {
    v.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or_else(|| perr(format!("expected small integer, got {v}")))
}

fn weight_to_json(w: &Weight, rank: usize) -> Value {
    json!(w[..rank])
}

fn weight_from_json(v: &Value, rank: usize) -> Result<Weight> {
    let a = v.as_array().ok_or_else(|| perr("weight must be an array"))?;
    if a.len() != rank {
        return Err(perr(format!("weight {v} has length {}, expected {rank}", a.len())));
    }
    let mut w = [0; MAX_RANK];
    for (k, x) in a.iter().enumerate() {
        w[k] = i32_from_json(x)?;
    }
    Ok(w)
}

/// Array of `[coeff, [weight], y_exp, z_exp]` in term order.
pub fn poly_to_json(p: &LaurentPoly, rank: usize) -> Value {
    Value::Array(p.terms().iter().map(|(m, c)| json!([int_to_json(c), weight_to_json(&m.e, rank), m.y, m.z])).collect())
}

pub fn poly_from_json(v: &Value, rank: usize) -> Result<LaurentPoly> {
    let a = v.as_array().ok_or_else(|| perr("polynomial must be an array"))?;
    let mut terms = Vec::with_capacity(a.len());
    for t in a {
        match t.as_array().map(|x| x.as_slice()) {
            Some([c, e, y, z]) => {
                terms.push((Monomial::new(weight_from_json(e, rank)?, i32_from_json(y)?, i32_from_json(z)?), int_from_json(c)?))
            }
            _ => return Err(perr(format!("bad monomial {t}"))),
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Recognizes the standard binomial factors; anything else is POLY.
fn factor_to_json(f: &LaurentPoly, k: u32, rank: usize) -> Value {
    let mut o = Map::new();
    let kind = match f.terms() {
        [(m, c)] if m.is_one() => {
            o.insert("value".into(), int_to_json(c));
            "CONST"
        }
        [(one, a), (m, b)] | [(m, b), (one, a)] if one.is_one() && a.is_one() && m.has_weight() => {
            let k = match (m.y, m.z, b.to_i64()) {
                (0, 0, Some(-1)) => Some("ONE_MINUS_E"),
                (1, 0, Some(1)) => Some("ONE_PLUS_YE"),
                (0, 2, Some(-1)) => Some("ONE_MINUS_QE"),
                _ => None,
            };
            match k {
                Some(k) => {
                    o.insert("lambda".into(), weight_to_json(&m.e, rank));
                    k
                }
                None => {
                    o.insert("poly".into(), poly_to_json(f, rank));
                    "POLY"
                }
            }
        }
        _ => {
            o.insert("poly".into(), poly_to_json(f, rank));
            "POLY"
        }
    };
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind));
    out.extend(o);
    out.insert("mult".into(), json!(k));
    Value::Object(out)
}

fn factor_from_json(v: &Value, rank: usize) -> Result<(LaurentPoly, u32)> {
    let kind = v["kind"].as_str().ok_or_else(|| perr(format!("factor without kind: {v}")))?;
    let mult = v["mult"].as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| perr("factor without mult"))?;
    let lam = || weight_from_json(&v["lambda"], rank);
    let f = match kind {
        "ONE_MINUS_E" => LaurentPoly::one_minus_e(lam()?),
        "ONE_PLUS_YE" => LaurentPoly::one_plus_ye(lam()?),
        "ONE_MINUS_QE" => LaurentPoly::binomial(1, -1, Monomial::new(lam()?, 0, 2)),
        "CONST" => LaurentPoly::constant(int_from_json(&v["value"])?),
        "POLY" => poly_from_json(&v["poly"], rank)?,
        k => return Err(perr(format!("unknown denominator kind '{k}'"))),
    };
    Ok((f, mult))
}

/// `{"num": [...], "den": [{"kind", "lambda", "mult"}, ...]}`
pub fn rational_to_json(r: &RationalFn, rank: usize) -> Value {
    json!({
        "num": poly_to_json(r.num(), rank),
        "den": r.den().iter().map(|(f, k)| factor_to_json(f, *k, rank)).collect::<Vec<_>>(),
    })
}

pub fn rational_from_json(v: &Value, rank: usize) -> Result<RationalFn> {
    let num = poly_from_json(&v["num"], rank)?;
    let den = v["den"].as_array().ok_or_else(|| perr("rational function without den"))?;
    let mut r = RationalFn::from(num);
    for d in den {
        let (f, k) = factor_from_json(d, rank)?;
        for _ in 0..k {
            r = r.div_poly(&f)?;
        }
    }
    Ok(r)
}

pub fn root_system_json(fv: &Flag) -> Value {
    json!({"type": fv.rs.lie_type.letter().to_string(), "rank": fv.rs.rank})
}

/// Checks that a dump belongs to this root system.
pub fn check_root_system(fv: &Flag, v: &Value) -> Result<()> {
    let t = v["type"].as_str().ok_or_else(|| perr("root_system.type missing"))?;
    let n = v["rank"].as_u64().ok_or_else(|| perr("root_system.rank missing"))? as usize;
    if LieType::parse(t)? != fv.rs.lie_type || n != fv.rs.rank {
        return Err(perr(format!("dump is for {t}{n}, expected {}", fv.rs.label())));
    }
    Ok(())
}

fn keyed<'a>(fv: &Flag, vals: impl Iterator<Item = (Elem, &'a RationalFn)>, skip_zero: bool) -> Value {
    let rank = fv.rs.rank;
    let mut m = Map::new();
    for (w, r) in vals {
        if skip_zero && r.is_zero() {
            continue;
        }
        m.insert(fv.w.word_string(w), rational_to_json(r, rank));
    }
    Value::Object(m)
}

fn unkeyed(fv: &Flag, v: &Value) -> Result<Vec<RationalFn>> {
    let m = v.as_object().ok_or_else(|| perr("values must be an object"))?;
    let mut out = vec![RationalFn::zero(); fv.n()];
    for (k, r) in m {
        out[fv.w.parse_word(k)?.idx()] = rational_from_json(r, fv.rs.rank)?;
    }
    Ok(out)
}

/// `{"root_system", "tag", "values": {"<word>": RationalFn}}`, all fixed points listed.
pub fn class_to_json(fv: &Flag, c: &LocalizedClass) -> Value {
    json!({
        "root_system": root_system_json(fv),
        "tag": c.tag,
        "values": keyed(fv, fv.w.elements().map(|w| (w, c.get(w))), false),
    })
}

pub fn class_from_json(fv: &Flag, v: &Value) -> Result<LocalizedClass> {
    check_root_system(fv, &v["root_system"])?;
    let tag = v["tag"].as_str().ok_or_else(|| perr("class without tag"))?;
    Ok(LocalizedClass::new(unkeyed(fv, &v["values"])?, tag))
}

/// Zero coefficients are omitted.
pub fn expansion_to_json(fv: &Flag, e: &SchubertExpansion) -> Value {
    json!({
        "root_system": root_system_json(fv),
        "tag": e.tag,
        "basis": e.basis.tag(),
        "coefficients": keyed(fv, fv.w.elements().map(|w| (w, e.get(w))), true),
    })
}

pub fn expansion_from_json(fv: &Flag, v: &Value) -> Result<SchubertExpansion> {
    check_root_system(fv, &v["root_system"])?;
    Ok(SchubertExpansion {
        basis: Basis::parse(v["basis"].as_str().ok_or_else(|| perr("expansion without basis"))?)?,
        coefficients: unkeyed(fv, &v["coefficients"])?,
        tag: v["tag"].as_str().ok_or_else(|| perr("expansion without tag"))?.to_string(),
    })
}

/// A family dump: classes and their expansions.
pub fn family_to_json(fv: &Flag, family: &str, classes: &[LocalizedClass], expansions: &[SchubertExpansion]) -> Value {
    json!({
        "root_system": root_system_json(fv),
        "family": family,
        "classes": classes.iter().map(|c| class_to_json(fv, c)).collect::<Vec<_>>(),
        "expansions": expansions.iter().map(|e| expansion_to_json(fv, e)).collect::<Vec<_>>(),
    })
}

pub fn family_from_json(fv: &Flag, v: &Value) -> Result<(String, Vec<LocalizedClass>, Vec<SchubertExpansion>)> {
    check_root_system(fv, &v["root_system"])?;
    let fam = v["family"].as_str().ok_or_else(|| perr("dump without family"))?.to_string();
    let arr = |k: &str| v[k].as_array().cloned().ok_or_else(|| perr(format!("dump without {k}")));
    let classes = arr("classes")?.iter().map(|c| class_from_json(fv, c)).collect::<Result<Vec<_>>>()?;
    let exps = arr("expansions")?.iter().map(|e| expansion_from_json(fv, e)).collect::<Result<Vec<_>>>()?;
    Ok((fam, classes, exps))
}

pub fn stab_to_json(fv: &Flag, s: &StabMatrix) -> Value {
    let mut rows = Map::new();
    for w in fv.w.elements() {
        rows.insert(fv.w.word_string(w), keyed(fv, fv.w.elements().map(|u| (u, s.entry(w, u))), false));
    }
    json!({
        "root_system": root_system_json(fv),
        "chamber": s.chamber.name(),
        "convention": s.convention(),
        "rows": rows,
    })
}

pub fn stab_from_json(fv: &Flag, v: &Value) -> Result<StabMatrix> {
    check_root_system(fv, &v["root_system"])?;
    let chamber = match v["chamber"].as_str() {
        Some("plus") => Chamber::Plus,
        Some("minus") => Chamber::Minus,
        _ => return Err(perr("bad chamber")),
    };
    let m = v["rows"].as_object().ok_or_else(|| perr("matrix without rows"))?;
    let mut rows = vec![None; fv.n()];
    for (k, r) in m {
        let w = fv.w.parse_word(k)?;
        let tag = format!("stab{}({})", if chamber == Chamber::Plus { "+" } else { "-" }, fv.w.word_string(w));
        rows[w.idx()] = Some(LocalizedClass::new(unkeyed(fv, r)?, tag));
    }
    let rows = rows.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| perr("matrix is missing rows"))?;
    Ok(StabMatrix { chamber, rows })
}

pub fn transition_table_to_json(fv: &Flag, t: &TransitionTable) -> Value {
    let rank = fv.rs.rank;
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "u": fv.w.word_string(r.u),
                "w": fv.w.word_string(r.w),
                "m": rational_to_json(&r.m, rank),
                "r": rational_to_json(&r.r, rank),
                "S": r.s.iter().map(|b| weight_to_json(b, rank)).collect::<Vec<_>>(),
                "factorization": r.factorization,
                "smooth_mc": r.smooth_mc,
                "smooth_kumar": r.smooth_kumar,
                "kl_one": r.kl_one,
            })
        })
        .collect();
    json!({"root_system": root_system_json(fv), "rows": rows})
}

pub fn transition_table_from_json(fv: &Flag, v: &Value) -> Result<TransitionTable> {
    use crate::casselman::TransitionRow;
    check_root_system(fv, &v["root_system"])?;
    let rank = fv.rs.rank;
    let rows = v["rows"].as_array().ok_or_else(|| perr("table without rows"))?;
    let flag = |r: &Value, k: &str| r[k].as_bool().ok_or_else(|| perr(format!("row without {k}")));
    let word = |r: &Value, k: &str| fv.w.parse_word(r[k].as_str().ok_or_else(|| perr(format!("row without {k}")))?);
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        out.push(TransitionRow {
            u: word(r, "u")?,
            w: word(r, "w")?,
            m: rational_from_json(&r["m"], rank)?,
            r: rational_from_json(&r["r"], rank)?,
            s: r["S"].as_array().ok_or_else(|| perr("row without S"))?.iter().map(|b| weight_from_json(b, rank)).collect::<Result<_>>()?,
            factorization: flag(r, "factorization")?,
            smooth_mc: flag(r, "smooth_mc")?,
            smooth_kumar: flag(r, "smooth_kumar")?,
            kl_one: flag(r, "kl_one")?,
        });
    }
    Ok(TransitionTable { rows: out })
}

pub fn report_from_json(v: &Value) -> Result<Report> {
    let mut r = Report::new(v["suite"].as_str().ok_or_else(|| perr("report without suite"))?);
    for c in v["checks"].as_array().ok_or_else(|| perr("report without checks"))? {
        r.checks.push(Check {
            relation: c["relation"].as_str().ok_or_else(|| perr("check without relation"))?.to_string(),
            passed: match c["status"].as_str() {
                Some("pass") => true,
                Some("fail") => false,
                _ => return Err(perr("bad check status")),
            },
            counterexample: c.get("counterexample").and_then(|x| x.as_str()).map(str::to_string),
        });
    }
    if let Some(ns) = v.get("notes").and_then(|n| n.as_array()) {
        r.notes = ns.iter().filter_map(|n| n.as_str().map(str::to_string)).collect();
    }
    r.advisory = v.get("advisory").and_then(|a| a.as_bool()).unwrap_or(false);
    Ok(r)
}

/// Pretty form: e^λ in simple-root coordinates when λ is in the root lattice
/// (`e^{-a1-a2}`), otherwise in fundamental weights (`e^{w1-2w2}`).
pub fn pretty_weight(fv: &Flag, lambda: &Weight) -> String {
    let rank = fv.rs.rank;
    let (coords, name) = match fv.rs.simple_coords(lambda) {
        Some(c) => (c[..rank].to_vec(), "a"),
        None => (lambda[..rank].to_vec(), "w"),
    };
    let mut s = String::new();
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("{name}{}", i + 1));
    }
    if s.chars().count() > 3 || s.starts_with('-') {
        format!("e^{{{s}}}")
    } else {
        format!("e^{s}")
    }
}

pub fn pretty_poly(fv: &Flag, p: &LaurentPoly) -> String {
    crate::ring::fmt_poly(p, fv.rs.rank, &|w| pretty_weight(fv, w))
}

pub fn pretty_rational(fv: &Flag, r: &RationalFn) -> String {
    crate::ring::render(r, &|p| pretty_poly(fv, p))
}
