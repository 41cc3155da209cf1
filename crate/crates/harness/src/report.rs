//! Rendering of theorem reports, extremal results and fuzz summaries as
//! JSON, CSV or an aligned text table.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use ecctree_core::io::write_edge_list;
use ecctree_core::rational::{to_decimal_string, to_fraction_string};
use ecctree_core::ExactRational;
use serde::Serialize;
use thiserror::Error;

use crate::extremal::ExtremalResult;
use crate::fuzz::FuzzSummary;
use crate::verify::{TheoremReport, Verdict};

const DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            other => Err(ReportError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported format `{0}` (expected json, csv or text)")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn fraction(x: &Option<ExactRational>) -> String {
    x.as_ref().map(to_fraction_string).unwrap_or_default()
}

fn decimal(x: &Option<ExactRational>) -> String {
    x.as_ref().map(|v| to_decimal_string(v, DIGITS)).unwrap_or_default()
}

fn join(params: &[usize]) -> String {
    params.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct JsonReport {
    theorem: String,
    n: usize,
    params: Vec<usize>,
    class_size: usize,
    claimed_value: String,
    claimed_decimal: String,
    found_value: String,
    found_decimal: String,
    claimed_family_match: bool,
    verdict: String,
    witnesses: Vec<String>,
    claimed_witnesses: Vec<String>,
    detail: String,
    failures: Vec<String>,
}

impl From<&TheoremReport> for JsonReport {
    fn from(r: &TheoremReport) -> Self {
        JsonReport {
            theorem: r.theorem.to_string(),
            n: r.n,
            params: r.params.clone(),
            class_size: r.class_size,
            claimed_value: fraction(&r.claimed_value),
            claimed_decimal: decimal(&r.claimed_value),
            found_value: fraction(&r.found_value),
            found_decimal: decimal(&r.found_value),
            claimed_family_match: r.claimed_family_match,
            verdict: r.verdict.to_string(),
            witnesses: r.witnesses.iter().map(|c| c.to_hex()).collect(),
            claimed_witnesses: r.claimed_witnesses.iter().map(|c| c.to_hex()).collect(),
            detail: r.detail.clone(),
            failures: r.failures.clone(),
        }
    }
}

const CSV_HEADER: [&str; 14] = [
    "theorem",
    "n",
    "params",
    "class_size",
    "claimed_value",
    "claimed_decimal",
    "found_value",
    "found_decimal",
    "claimed_family_match",
    "verdict",
    "witnesses",
    "claimed_witnesses",
    "detail",
    "failures",
];

/// Writes `reports` in `format`. Field order is fixed.
pub fn report_emit(reports: &[TheoremReport], format: Format, out: &mut dyn Write) -> Result<(), ReportError> {
    match format {
        Format::Json => {
            let rows: Vec<JsonReport> = reports.iter().map(JsonReport::from).collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in reports.iter().map(JsonReport::from) {
                w.write_record([
                    r.theorem,
                    r.n.to_string(),
                    join(&r.params),
                    r.class_size.to_string(),
                    r.claimed_value,
                    r.claimed_decimal,
                    r.found_value,
                    r.found_decimal,
                    r.claimed_family_match.to_string(),
                    r.verdict,
                    r.witnesses.join(";"),
                    r.claimed_witnesses.join(";"),
                    r.detail,
                    r.failures.join(" | "),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => write_table(reports, out)?,
    }
    Ok(())
}

fn write_table(reports: &[TheoremReport], out: &mut dyn Write) -> std::io::Result<()> {
    let header = ["", "THEOREM", "N", "PARAMS", "CLASS", "CLAIMED", "FOUND", "MATCH", "VERDICT"];
    let rows: Vec<[String; 9]> = reports
        .iter()
        .map(|r| {
            [
                if r.verdict == Verdict::Fail { "!".into() } else { String::new() },
                r.theorem.to_string(),
                r.n.to_string(),
                join(&r.params),
                r.class_size.to_string(),
                fraction(&r.claimed_value),
                fraction(&r.found_value),
                if r.claimed_family_match { "yes".into() } else { "no".into() },
                r.verdict.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&header))?;
    for (row, r) in rows.iter().zip(reports) {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
        if r.verdict == Verdict::Fail {
            writeln!(out, "    {}", r.detail)?;
            for f in &r.failures {
                writeln!(out, "    {f}")?;
            }
        }
    }
    let passed = reports.iter().filter(|r| r.verdict == Verdict::Pass).count();
    writeln!(out, "{passed}/{} PASS", reports.len())
}

#[derive(Serialize)]
struct JsonWitness {
    code: String,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct JsonExtremal {
    n: usize,
    class: String,
    objective: String,
    excluded: Option<String>,
    class_size: usize,
    value: String,
    decimal: String,
    witnesses: Vec<JsonWitness>,
}

pub fn extremal_emit(r: &ExtremalResult, format: Format, out: &mut dyn Write) -> Result<(), ReportError> {
    let witnesses: Vec<JsonWitness> =
        r.witnesses.iter().map(|(c, t)| JsonWitness { code: c.to_hex(), edges: t.edges() }).collect();
    match format {
        Format::Json => {
            let j = JsonExtremal {
                n: r.n,
                class: r.class.to_string(),
                objective: r.objective.to_string(),
                excluded: r.excluded.clone(),
                class_size: r.class_size,
                value: fraction(&r.value),
                decimal: decimal(&r.value),
                witnesses,
            };
            serde_json::to_writer_pretty(&mut *out, &j)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "class", "objective", "excluded", "class_size", "value", "decimal", "code"])?;
            for wit in &witnesses {
                w.write_record([
                    r.n.to_string(),
                    r.class.to_string(),
                    r.objective.to_string(),
                    r.excluded.clone().unwrap_or_default(),
                    r.class_size.to_string(),
                    fraction(&r.value),
                    decimal(&r.value),
                    wit.code.clone(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} over {} on n = {}{}: {} trees",
                r.objective,
                r.class,
                r.n,
                r.excluded.as_deref().map(|e| format!(" excluding {e}")).unwrap_or_default(),
                r.class_size
            )?;
            match &r.value {
                Some(v) => writeln!(out, "value {} ({})", to_fraction_string(v), to_decimal_string(v, DIGITS))?,
                None => writeln!(out, "empty class")?,
            }
            for (code, t) in &r.witnesses {
                writeln!(out, "\n# {}", code.to_hex())?;
                write!(out, "{}", write_edge_list(t))?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonFuzz<'a> {
    kind: String,
    seed: u64,
    trials: u64,
    applied: u64,
    precondition_held: u64,
    strict_increase: u64,
    equal: u64,
    decrease: u64,
    flag_mismatch: u64,
    violations: u64,
    examples: &'a [String],
}

pub fn fuzz_emit(s: &FuzzSummary, format: Format, out: &mut dyn Write) -> Result<(), ReportError> {
    let j = JsonFuzz {
        kind: s.kind.to_string(),
        seed: s.seed,
        trials: s.trials,
        applied: s.applied,
        precondition_held: s.precondition_held,
        strict_increase: s.strict_increase,
        equal: s.equal,
        decrease: s.decrease,
        flag_mismatch: s.flag_mismatch,
        violations: s.violations,
        examples: &s.examples,
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &j)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(JsonFuzzRow::from(&j))?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} seed {}: {} trials, {} applied, {} held; up {}, equal {}, down {}; flag mismatches {}; violations {}",
                j.kind, j.seed, j.trials, j.applied, j.precondition_held, j.strict_increase, j.equal, j.decrease,
                j.flag_mismatch, j.violations
            )?;
            for e in j.examples {
                writeln!(out, "    {e}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonFuzzRow {
    kind: String,
    seed: u64,
    trials: u64,
    applied: u64,
    precondition_held: u64,
    strict_increase: u64,
    equal: u64,
    decrease: u64,
    flag_mismatch: u64,
    violations: u64,
}

impl From<&JsonFuzz<'_>> for JsonFuzzRow {
    fn from(j: &JsonFuzz<'_>) -> Self {
        JsonFuzzRow {
            kind: j.kind.clone(),
            seed: j.seed,
            trials: j.trials,
            applied: j.applied,
            precondition_held: j.precondition_held,
            strict_increase: j.strict_increase,
            equal: j.equal,
            decrease: j.decrease,
            flag_mismatch: j.flag_mismatch,
            violations: j.violations,
        }
    }
}
