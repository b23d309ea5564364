//! Text renderings used by the pretty and tsv formats.

use kflag::casselman::TransitionRow;
use kflag::json::{pretty_poly, pretty_rational, pretty_weight};
use kflag::kclass::{Basis, SchubertExpansion};
use kflag::ring::RationalFn;
use kflag::weyl::{Elem, Flag};

pub fn basis_symbol(fv: &Flag, basis: Basis, u: Elem) -> String {
    let head = match basis {
        Basis::Schubert => "O_",
        Basis::Opposite => "O^",
        Basis::B => "b_",
        Basis::FixedPoint => "iota_",
    };
    format!("{head}{{{}}}", fv.w.word_string(u))
}

/// Coefficient with its sign pulled out when every term is negative.
fn signed(fv: &Flag, c: &RationalFn) -> (bool, String) {
    let negative = c.den().is_empty() && c.num().terms().iter().all(|(_, k)| k.is_negative());
    let c = if negative { c.neg() } else { c.clone() };
    let body = match c.as_poly() {
        Some(p) if p.len() > 1 => format!("({})", pretty_poly(fv, p)),
        Some(p) => pretty_poly(fv, p),
        None => format!("[{}]", pretty_rational(fv, &c)),
    };
    (negative, body)
}

/// `label = c_1*O_{..} - c_2*O_{..} ...`, longest basis elements first.
pub fn expansion_line(fv: &Flag, label: &str, e: &SchubertExpansion) -> String {
    let mut s = String::new();
    for u in fv.w.elements().rev() {
        let c = e.get(u);
        if c.is_zero() {
            continue;
        }
        let (neg, body) = signed(fv, c);
        let sym = basis_symbol(fv, e.basis, u);
        let term = if body == "1" { sym } else { format!("{body}*{sym}") };
        if s.is_empty() {
            s.push_str(if neg { "-" } else { "" });
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&term);
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("{label} = {s}")
}

pub fn roots_list(fv: &Flag, row: &TransitionRow) -> String {
    let v: Vec<String> = row.s.iter().map(|b| pretty_weight(fv, b).trim_start_matches("e^").trim_matches(|c| c == '{' || c == '}').to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub const TSV_HEADER: &str = "u\tw\tm\tr\tS\tfactorization\tsmooth_mc\tsmooth_kumar\tkl_one";

pub fn tsv_row(fv: &Flag, r: &TransitionRow) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        fv.w.word_string(r.u),
        fv.w.word_string(r.w),
        pretty_rational(fv, &r.m),
        pretty_rational(fv, &r.r),
        roots_list(fv, r),
        r.factorization,
        r.smooth_mc,
        r.smooth_kumar,
        r.kl_one
    )
}

pub fn pretty_row(fv: &Flag, r: &TransitionRow) -> String {
    format!(
        "(u, w) = ({}, {})\n  m = {}\n  r = {}\n  S = {}\n  factorization = {}, smooth_mc = {}, smooth_kumar = {}, kl_one = {}",
        fv.w.word_string(r.u),
        fv.w.word_string(r.w),
        pretty_rational(fv, &r.m),
        pretty_rational(fv, &r.r),
        roots_list(fv, r),
        r.factorization,
        r.smooth_mc,
        r.smooth_kumar,
        r.kl_one
    )
}
