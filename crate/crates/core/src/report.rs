//! JSON-ready report of a counting run, shared by the CLI and the bindings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::counting::{build_conjugate_ideal, count_roots_with, ConjSystem, Count, CountOptions, WeightedSplit};
use crate::error::Result;
use crate::forms::Signature;
use crate::matrix::Matrix;
use crate::oracle::{oracle_count, NumericSolution, OracleConfig};
use crate::poly::{GenPoly, Monomial};

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    /// Number of numerically found conjugated singles.
    pub count: Option<usize>,
    pub pairs: Option<usize>,
    pub solutions: Vec<NumericSolution>,
    /// Whether the numeric count equals the exact one; `None` if either is
    /// unavailable.
    pub agree: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub system: Vec<String>,
    pub quotient_dim: Option<usize>,
    pub basis: Vec<String>,
    pub form_matrix: Option<Vec<Vec<String>>>,
    pub signature: Option<Signature>,
    pub rank: Option<usize>,
    pub count: Count,
    pub bound: Option<u64>,
    pub oracle: Option<OracleSection>,
    pub weighted: Option<WeightedSplit>,
    pub principal_minors: Option<Vec<String>>,
    pub flags: Vec<String>,
    pub timings: BTreeMap<String, f64>,
}

/// A monomial in input syntax, e.g. `z*conj(z)` or `1`.
pub fn monomial_name(m: &Monomial) -> String {
    GenPoly::monomial(m.nvars() / 2, m.clone()).to_string()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Run the exact count and, if `oracle` is given, the numeric cross-check.
pub fn count_document(sys: &ConjSystem, opts: &CountOptions, oracle: Option<&OracleConfig>) -> Result<ReportDocument> {
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let rep = count_roots_with(sys, opts)?;
    timings.insert("count_ms".to_string(), millis(t));
    let mut flags = rep.conditional_flags.clone();
    let oracle = oracle.map(|cfg| {
        let t = Instant::now();
        let out = oracle_count(&build_conjugate_ideal(sys), cfg);
        timings.insert("oracle_ms".to_string(), millis(t));
        match out {
            Ok(o) => {
                let exact_singles = (opts.xi.is_none()).then(|| rep.count.finite()).flatten();
                OracleSection {
                    count: Some(o.count.singles),
                    pairs: Some(o.count.pairs),
                    agree: exact_singles.map(|k| k == o.count.singles as i64),
                    solutions: o.solutions,
                    error: None,
                }
            }
            Err(e) => {
                flags.push(format!("oracle failed: {e}"));
                OracleSection { count: None, pairs: None, solutions: Vec::new(), agree: None, error: Some(e.to_string()) }
            }
        }
    });
    if oracle.as_ref().is_some_and(|o| o.agree == Some(false)) {
        flags.push("numeric oracle disagrees with the exact count".into());
    }
    Ok(ReportDocument {
        system: sys.polys().iter().map(ToString::to_string).collect(),
        quotient_dim: rep.quotient_dim,
        basis: rep.basis.iter().map(monomial_name).collect(),
        form_matrix: rep.form.as_ref().map(|f| matrix_strings(&f.entries)),
        signature: rep.quotient_dim.map(|_| rep.signature),
        rank: rep.quotient_dim.map(|_| rep.rank),
        count: rep.count,
        bound: rep.bound,
        oracle,
        weighted: rep.weighted,
        principal_minors: rep.principal_minors.map(|v| v.iter().map(ToString::to_string).collect()),
        flags,
        timings,
    })
}

/// Human-readable rendering of a report.
pub fn render_pretty(doc: &ReportDocument) -> String {
    let mut s = String::new();
    for p in &doc.system {
        let _ = writeln!(s, "  {p} = 0");
    }
    let count = match doc.count {
        Count::Finite(k) => k.to_string(),
        Count::Infinite => "infinite".into(),
        Count::Unknown => "unknown".into(),
    };
    let _ = writeln!(s, "solutions: {count}");
    if let Some(sig) = doc.signature {
        let _ = writeln!(s, "signature: (+{}, -{}, 0:{})  rank {}", sig.n_pos, sig.n_neg, sig.n_zero, sig.rank());
    }
    if let Some(d) = doc.quotient_dim {
        let _ = writeln!(s, "quotient dimension: {d}");
        let _ = writeln!(s, "basis: {}", doc.basis.join(", "));
    }
    if let Some(rows) = &doc.form_matrix {
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        s.push_str("form:\n");
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(s, "  [ {} ]", cells.join("  "));
        }
    }
    if let Some(b) = doc.bound {
        let _ = writeln!(s, "bound: {b}");
    }
    if let Some(w) = &doc.weighted {
        let _ = writeln!(s, "singles with weight > 0: {}, < 0: {}", w.positive_singles, w.negative_singles);
    }
    if let Some(m) = &doc.principal_minors {
        let _ = writeln!(s, "leading principal minors: {}", m.join(", "));
    }
    if let Some(o) = &doc.oracle {
        match (o.count, &o.error) {
            (Some(k), _) => {
                let agree = match o.agree {
                    Some(true) => "agrees",
                    Some(false) => "DISAGREES",
                    None => "not compared",
                };
                let _ = writeln!(s, "oracle: {k} singles, {} pairs ({agree})", o.pairs.unwrap_or(0));
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "oracle: failed ({e})");
            }
            _ => {}
        }
    }
    for f in &doc.flags {
        let _ = writeln!(s, "note: {f}");
    }
    s
}
