use serde::Serialize;

use crate::steenrod::{SteenrodTable, TableRow};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HhDegree {
    pub degree: i32,
    pub dimension: usize,
    pub generators: Vec<String>,
}

/// Outcome of one invariant suite or golden check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    /// The suite could not run on this input; `passed` is false too.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub detail: String,
}

impl SuiteResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        SuiteResult {
            name: name.into(),
            passed,
            skipped: false,
            detail: detail.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        SuiteResult {
            name: name.into(),
            passed: false,
            skipped: true,
            detail: detail.into(),
        }
    }
}

fn width(cells: impl Iterator<Item = usize>, header: &str) -> usize {
    cells
        .chain(std::iter::once(header.chars().count()))
        .max()
        .unwrap_or(0)
}

fn pad(s: &str, w: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(w.saturating_sub(n)))
}

pub fn steenrod_text(table: &SteenrodTable) -> String {
    let rows = &table.rows;
    let wc = width(rows.iter().map(|r| r.class.chars().count()), "class");
    let wv = width(rows.iter().map(|r| r.value.chars().count()), "value");
    let mut out = format!(
        "{}  {}  {:>2}  {}  provenance\n",
        pad("deg", 3),
        pad("class", wc),
        "i",
        pad("value", wv)
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3}  {}  {:>2}  {}  {}\n",
            r.degree,
            pad(&r.class, wc),
            r.i,
            pad(&r.value, wv),
            r.provenance.as_str()
        ));
    }
    for m in &table.mismatches {
        out.push_str(&format!(
            "warning: Cartan mismatch at Sq^{}({}): direct {}, Cartan {}\n",
            m.i, m.class, m.direct, m.cartan
        ));
    }
    for (class, reason) in &table.missing {
        out.push_str(&format!("note: no values for {class}: {reason}\n"));
    }
    out
}

pub fn steenrod_json(table: &SteenrodTable) -> String {
    serde_json::to_string_pretty(&table.rows.iter().collect::<Vec<&TableRow>>())
        .expect("rows serialize")
}

pub fn hh_text(degrees: &[HhDegree]) -> String {
    let mut out = String::from("deg  dim  generators\n");
    for d in degrees {
        out.push_str(&format!(
            "{:>3}  {:>3}  {}\n",
            d.degree,
            d.dimension,
            d.generators.join(", ")
        ));
    }
    out
}

pub fn hh_json(degrees: &[HhDegree]) -> String {
    serde_json::to_string_pretty(degrees).expect("degrees serialize")
}

pub fn suites_text(results: &[SuiteResult]) -> String {
    let w = width(results.iter().map(|r| r.name.chars().count()), "suite");
    let mut out = String::new();
    for r in results {
        let status = match (r.passed, r.skipped) {
            (true, _) => "PASS",
            (false, true) => "SKIP",
            (false, false) => "FAIL",
        };
        out.push_str(&format!("{status}  {}  {}\n", pad(&r.name, w), r.detail));
    }
    let failed = results.iter().filter(|r| !r.passed && !r.skipped).count();
    let skipped = results.iter().filter(|r| r.skipped).count();
    out.push_str(&format!(
        "{} suites, {} failed, {} skipped\n",
        results.len(),
        failed,
        skipped
    ));
    out
}

pub fn suites_json(results: &[SuiteResult]) -> String {
    serde_json::to_string_pretty(results).expect("results serialize")
}
