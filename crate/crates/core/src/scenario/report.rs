use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Check, Flag};
use crate::poisson::{BRACKET_CONVENTION, MOMENT_NORMALIZATION};

pub const REPORT_SCHEMA: &str = "chevalley-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Passed,
    Failed,
    WitnessFound,
    Inconclusive,
    Skipped,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Passed => "passed",
            CheckStatus::Failed => "failed",
            CheckStatus::WitnessFound => "witness-found",
            CheckStatus::Inconclusive => "inconclusive",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithConjecture,
    NonReducedWitnessFound,
    SurjectivityFailed,
    CheckFailed,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ConsistentWithConjecture => "consistent-with-conjecture",
            Verdict::NonReducedWitnessFound => "non-reduced-witness-found",
            Verdict::SurjectivityFailed => "surjectivity-failed",
            Verdict::CheckFailed => "check-failed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub bracket: String,
    pub moment: String,
    pub cartan_coordinates: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            bracket: BRACKET_CONVENTION.into(),
            moment: MOMENT_NORMALIZATION.into(),
            cartan_coordinates: "x = sum_a s_a c_a, y = sum_a t_a c_dual_a".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: Check,
    pub status: CheckStatus,
    pub seconds: f64,
    /// Gröbner reductions spent by this check, when it ran any.
    pub reductions: Option<u64>,
    pub evidence: Value,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub label: String,
    pub summary: String,
    pub flags: Vec<Flag>,
    pub conventions: Conventions,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    /// Degree through which surjectivity and the Hilbert comparison both hold.
    pub consistent_through: Option<u32>,
    pub seconds: f64,
}

impl Report {
    pub(super) fn new(label: &str, summary: &str, flags: &[Flag]) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            label: label.into(),
            summary: summary.into(),
            flags: flags.to_vec(),
            conventions: Conventions::default(),
            checks: vec![],
            verdict: Verdict::Inconclusive,
            consistent_through: None,
            seconds: 0.0,
        }
    }

    pub fn record(&self, check: Check) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.check == check)
    }

    /// The overall verdict from the per-check statuses.
    pub(super) fn conclude(&mut self, truncation: u32) {
        let status = |c: Check| self.record(c).map(|r| r.status);
        let any = |s: CheckStatus| self.checks.iter().any(|r| r.status == s);
        let verdict = if status(Check::Restriction) == Some(CheckStatus::Failed) {
            Verdict::SurjectivityFailed
        } else if any(CheckStatus::WitnessFound) {
            Verdict::NonReducedWitnessFound
        } else if any(CheckStatus::Failed) {
            Verdict::CheckFailed
        } else if any(CheckStatus::Inconclusive) || any(CheckStatus::Skipped) {
            Verdict::Inconclusive
        } else {
            Verdict::ConsistentWithConjecture
        };
        let through = (verdict == Verdict::ConsistentWithConjecture
            && status(Check::Restriction) == Some(CheckStatus::Passed)
            && status(Check::Hilbert) == Some(CheckStatus::Passed))
        .then_some(truncation);
        self.verdict = verdict;
        self.consistent_through = through;
    }

    /// The same report with every timing zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.seconds = 0.0;
        for c in &mut r.checks {
            c.seconds = 0.0;
        }
        r
    }

    pub fn verdict_line(&self) -> String {
        match self.consistent_through {
            Some(d) => format!("{} (degree {d})", self.verdict.name()),
            None => self.verdict.name().to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}: {}", self.label, self.summary);
        let _ = writeln!(out, "verdict: {}", self.verdict_line());
        if !self.flags.is_empty() {
            let flags: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
            let _ = writeln!(out, "declared: {}", flags.join(", "));
        }
        let _ = writeln!(out, "bracket: {}", self.conventions.bracket);
        let _ = writeln!(out, "moment map: {}", self.conventions.moment);
        let _ = writeln!(out, "cartan coordinates: {}", self.conventions.cartan_coordinates);
        for c in &self.checks {
            let _ = write!(out, "\n[{}] {} ({:.3} s", c.check.name(), c.status.name(), c.seconds);
            if let Some(r) = c.reductions {
                let _ = write!(out, ", {r} reductions");
            }
            let _ = writeln!(out, ")");
            for n in &c.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            render(&mut out, &c.evidence, 1);
        }
        let _ = writeln!(out, "\ntotal {:.3} s", self.seconds);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_) | Value::Bool(_) | Value::Null)) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Arrays of flat objects become tables; everything else is an indented key list.
fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some(table) = as_table(items) {
                for row in table {
                    let _ = writeln!(out, "{pad}{row}");
                }
            } else {
                for item in items {
                    match scalar(item) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            render(out, item, depth + 1);
                        }
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn as_table(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for item in items {
        let obj = item.as_object()?;
        if obj.len() != keys.len() {
            return None;
        }
        rows.push(keys.iter().map(|k| obj.get(*k).and_then(scalar)).collect::<Option<Vec<_>>>()?);
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    Some(
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect(),
    )
}
