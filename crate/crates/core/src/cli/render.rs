//! Output records and their plain-text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::charclasses::{Bundle, ImmersionReport, SearchHit, SearchRecord};
use crate::tcomplexity::ZclResult;
use crate::wcalg::NormalForm;

use super::verify::VerifyReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaRow {
    pub monomial: String,
    /// Indices `j` of the power-sum basis elements in the expansion.
    pub beta: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: usize,
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub relations_applied: usize,
    /// Present for `n <= degree <= 2n - 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_table: Option<Vec<BetaRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub degree: usize,
    pub nonzero: bool,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwReport {
    pub n: usize,
    pub bundle: Bundle,
    pub classes: Vec<ClassEntry>,
}

pub const SEARCH_HEADER: &[&str] = &["n", "k", "nonzero", "family", "implied_nonimmersion_dim"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub n: usize,
    pub k: usize,
    pub nonzero: bool,
    pub family: String,
    pub implied_nonimmersion_dim: usize,
}

pub const TC_HEADER: &[&str] = &[
    "n",
    "e",
    "d",
    "r",
    "zcl_formula",
    "zcl_exhaustive",
    "witness_ok",
    "tc_lower",
    "tc_upper",
    "gap",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcRow {
    pub n: usize,
    pub e: u32,
    pub d: usize,
    pub r: i32,
    pub zcl_formula: usize,
    pub zcl_exhaustive: Option<usize>,
    pub witness_ok: bool,
    pub tc_lower: usize,
    pub tc_upper: usize,
    pub gap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatlemReport {
    pub m: usize,
    pub det: u8,
}

/// One row per `n` for the top nonzero class, plus a row for the family
/// degree when it differs from the top one.
pub fn search_rows(records: &[SearchRecord]) -> Vec<SearchRow> {
    let row = |h: &SearchHit, family: &str| SearchRow {
        n: h.n,
        k: h.k,
        nonzero: h.nonzero,
        family: family.to_string(),
        implied_nonimmersion_dim: crate::charclasses::implied_nonimmersion_dim(h.n, h.k),
    };
    let mut out = Vec::new();
    for r in records {
        match &r.family {
            Some(fc) if fc.hit.k == r.largest.k => out.push(row(&r.largest, fc.family.label())),
            Some(fc) => {
                out.push(row(&r.largest, "none"));
                out.push(row(&fc.hit, fc.family.label()));
            }
            None => out.push(row(&r.largest, "none")),
        }
    }
    out
}

fn joined(terms: &[String]) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn basis_text(r: &BasisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "H^{}(G_{},2), n = {}: dim {}, relations of rank {}", r.degree, r.n + 1, r.n, r.dim, r.relations_applied);
    for m in &r.basis {
        let _ = writeln!(s, "  {m}");
    }
    if let Some(table) = &r.beta_table {
        let _ = writeln!(s, "power-sum basis b_j:");
        for row in table {
            let rhs: Vec<String> = row.beta.iter().map(|j| format!("b{j}")).collect();
            let _ = writeln!(s, "  {} = {}", row.monomial, joined(&rhs));
        }
    }
    s
}

pub fn normal_form_text(nf: &NormalForm) -> String {
    format!("{} = {} = {} in H^{}(C_{})\n", nf.input, nf.normalized, joined(&nf.terms), nf.degree, nf.n)
}

pub fn sw_text(r: &SwReport) -> String {
    let mut s = String::new();
    for c in &r.classes {
        let _ = writeln!(s, "w_{}({}), n = {}: {}", c.degree, r.bundle, r.n, joined(&c.terms));
    }
    s
}

pub fn zcl_text(r: &ZclResult) -> String {
    let mut s = String::new();
    let dec = &r.decomposition;
    let _ = writeln!(s, "n = {} (e = {}, d = {}, r = {})", r.n, dec.e, dec.d, dec.r);
    let _ = writeln!(s, "zcl formula: {}", r.formula);
    if let Some(w) = &r.witness {
        let (a, b, c) = w.exponents;
        let _ = writeln!(
            s,
            "witness xb^{a} ub^{b} yb^{c}: nonzero {}, term {} (x) {} {}, maximal {}",
            w.product_nonzero,
            w.expected_term.0,
            w.expected_term.1,
            if w.block_matches { "matches" } else { "does not match" },
            w.maximal
        );
    }
    if let Some(ex) = &r.exhaustive {
        let _ = writeln!(s, "exhaustive: {} at {:?} ({} products)", ex.value, ex.argmax, ex.products_evaluated);
    }
    let _ = writeln!(s, "TC bounds: {} <= TC <= {} (gap {})", r.bounds.lower, r.bounds.upper, r.bounds.gap);
    let _ = writeln!(s, "note: {}", r.note);
    s
}

pub fn immersion_text(r: &ImmersionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "C(RP^{},2), dimension {}", r.n, r.manifold_dim);
    for (dim, claim) in [
        (r.immersion_dim, "immerses in"),
        (r.nonimmersion_dim, "does not immerse in"),
        (r.nonembedding_dim, "does not embed in"),
    ] {
        if let Some(d) = dim {
            let _ = writeln!(s, "{claim} R^{d}");
        }
    }
    let _ = writeln!(
        s,
        "generic bounds: immerses in R^{}, embeds in R^{}",
        r.generic_immersion_dim, r.generic_embedding_dim
    );
    let _ = writeln!(s, "grounds: {:?}", r.grounds);
    for c in &r.certificates {
        let mark = if c.holds { "ok" } else { "FAILED" };
        if c.detail.is_empty() {
            let _ = writeln!(s, "  [{mark}] {}", c.name);
        } else {
            let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
        }
    }
    for c in &r.cited {
        let _ = writeln!(s, "  cited: {c}");
    }
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: {} instances, {} failures, {} ms",
        r.suite.name(),
        r.instances,
        r.failures.len(),
        r.wall_time_ms
    );
    for f in &r.failures {
        let _ = writeln!(s, "  {}: {}", f.instance, f.detail);
    }
    let _ = writeln!(s, "{}", if r.ok() { "PASS" } else { "FAIL" });
    s
}
