//! Report assembly and rendering for the `k3ns` command-line tool.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use k3ns_core::engine::{
    arithmetic_suites, classify_all, CaseReport, SuiteReport, DEFAULT_PRIMES, SUPPORTED_ORDERS,
};
use k3ns_core::modular::is_prime;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable holding comma-separated certificate primes.
pub const PRIMES_ENV: &str = "K3NS_PRIMES";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] k3ns_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Json(_) => 2,
            CliError::Core(k3ns_core::Error::Parse { .. })
            | CliError::Core(k3ns_core::Error::BadPrime { .. })
            | CliError::Core(k3ns_core::Error::InvalidInput(_))
            | CliError::Core(k3ns_core::Error::UnsupportedOrder(_)) => 2,
            CliError::Core(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

/// Parses a comma-separated prime list; `None` selects the defaults.
pub fn parse_primes(list: Option<&str>) -> Result<Vec<u64>, CliError> {
    let Some(list) = list else {
        return Ok(DEFAULT_PRIMES.to_vec());
    };
    let mut out = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let p: u64 = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRIMES_ENV}: `{tok}` is not an integer")))?;
        if !is_prime(p) {
            return Err(CliError::Usage(format!("{PRIMES_ENV}: {p} is not prime")));
        }
        if p <= 3 {
            return Err(CliError::Usage(format!("{PRIMES_ENV}: {p} divides the sextic degree")));
        }
        out.push(p);
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("{PRIMES_ENV} lists no primes")));
    }
    Ok(out)
}

pub fn primes_from_env() -> Result<Vec<u64>, CliError> {
    let v = std::env::var(PRIMES_ENV).ok();
    parse_primes(v.as_deref())
}

pub fn supported_orders_text() -> String {
    SUPPORTED_ORDERS.map(|m| m.to_string()).join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub primes_used: Vec<u64>,
    pub cases: Vec<CaseReport>,
    pub suites: Vec<SuiteReport>,
    pub overall_pass: bool,
}

impl ReportDocument {
    pub fn build(primes: &[u64]) -> Self {
        let cases = classify_all(primes);
        let suites = arithmetic_suites();
        let overall_pass = cases.iter().all(CaseReport::all_pass) && suites.iter().all(SuiteReport::all_pass);
        ReportDocument {
            tool_version: TOOL_VERSION.to_string(),
            primes_used: primes.to_vec(),
            cases,
            suites,
            overall_pass,
        }
    }

    /// Every check passes and every case reaches its expected verdict.
    pub fn matches_expectations(&self) -> bool {
        self.overall_pass && self.cases.iter().all(CaseReport::matches_expectation)
    }
}

/// Pretty JSON with object keys sorted, terminated by a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// True if any number in the document is not an integer.
pub fn has_float(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(xs) => xs.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

pub fn parse_report(json: &str) -> Result<ReportDocument, CliError> {
    Ok(serde_json::from_str(json)?)
}

fn quotient_text(c: &CaseReport) -> String {
    match &c.quotient_model {
        None => "-".into(),
        Some(q) => {
            let parts: Vec<String> = q.branch.iter().map(|b| format!("{}:{}", b.class, b.index)).collect();
            format!("{} [{}]", q.base, parts.join(", "))
        }
    }
}

/// One row per order.
pub fn render_table(cases: &[CaseReport]) -> String {
    let rows: Vec<[String; 6]> = cases
        .iter()
        .map(|c| {
            let passed = c.checks.iter().filter(|k| k.pass).count();
            [
                c.m.to_string(),
                c.exists.to_string(),
                c.num_surfaces.to_string(),
                c.num_actions.to_string(),
                format!("{passed}/{}", c.checks.len()),
                quotient_text(c),
            ]
        })
        .collect();
    let header = ["m", "exists", "surfaces", "actions", "checks", "quotient"];
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &[&str]| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                s.push_str(cell);
                s.push_str(&" ".repeat(pad + 2));
            }
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(&header));
    out.push('\n');
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        out.push_str(&line(&cells));
        out.push('\n');
    }
    out
}

/// Full text rendering of one case, listing every check.
pub fn render_case(c: &CaseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "m = {}: exists={} surfaces={} actions={}",
        c.m, c.exists, c.num_surfaces, c.num_actions
    );
    let _ = writeln!(out, "quotient: {}", quotient_text(c));
    let width = c.checks.iter().map(|k| k.name.len()).max().unwrap_or(0);
    for k in &c.checks {
        let _ = writeln!(
            out,
            "  [{}] {:width$}  {}",
            if k.pass { "pass" } else { "FAIL" },
            k.name,
            k.detail
        );
    }
    for a in &c.annotations {
        let _ = writeln!(out, "  note: {a}");
    }
    out
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k3ns {}  primes: {:?}", doc.tool_version, doc.primes_used);
    out.push('\n');
    out.push_str(&render_table(&doc.cases));
    out.push('\n');
    for s in &doc.suites {
        let passed = s.checks.iter().filter(|k| k.pass).count();
        let _ = writeln!(out, "suite {}: {passed}/{} pass", s.name, s.checks.len());
        for k in s.checks.iter().filter(|k| !k.pass) {
            let _ = writeln!(out, "  FAIL {}: {}", k.name, k.detail);
        }
    }
    for c in &doc.cases {
        for k in c.failed_checks() {
            let _ = writeln!(out, "FAIL m={} {}: {}", c.m, k.name, k.detail);
        }
    }
    let _ = writeln!(out, "overall: {}", if doc.overall_pass { "pass" } else { "FAIL" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_parsing() {
        assert_eq!(parse_primes(None).unwrap(), vec![101, 1009]);
        assert_eq!(parse_primes(Some("7, 11")).unwrap(), vec![7, 11]);
        assert!(parse_primes(Some("100")).is_err());
        assert!(parse_primes(Some("3")).is_err());
        assert!(parse_primes(Some("x")).is_err());
        assert!(parse_primes(Some(" , ")).is_err());
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let doc = ReportDocument::build(&[101]);
        let s = to_canonical_json(&doc).unwrap();
        let i_cases = s.find("\"cases\"").unwrap();
        let i_overall = s.find("\"overall_pass\"").unwrap();
        let i_primes = s.find("\"primes_used\"").unwrap();
        assert!(i_cases < i_overall && i_overall < i_primes);
        assert!(!has_float(&serde_json::from_str(&s).unwrap()));
        assert_eq!(parse_report(&s).unwrap(), doc);
    }

    #[test]
    fn table_has_a_row_per_order() {
        let doc = ReportDocument::build(&[101]);
        let t = render_table(&doc.cases);
        assert_eq!(t.lines().count(), 1 + SUPPORTED_ORDERS.len());
        assert!(doc.matches_expectations());
    }
}
