use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Version tag of the JSON layout; the matching schema ships as
/// `schema/spincouple-1.schema.json`.
pub const FORMAT_VERSION: &str = "spincouple/1";

/// Decimal places for every floating-point value in a report.
const FLOAT_DIGITS: usize = 12;

pub fn float(x: f64) -> String {
    // avoid printing "-0.000000000000"
    let s = format!("{x:.FLOAT_DIGITS$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
        }
    }
}

/// A checked claim: what was expected, what happened, and whether the two
/// agree.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub expected: Outcome,
    pub actual: Outcome,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, expected: Outcome, actual: Outcome) -> Self {
        Self { name: name.into(), expected, actual, holds: expected == actual, residual: None }
    }

    pub fn check(name: impl Into<String>, pass: bool) -> Self {
        Self::new(name, Outcome::Pass, Outcome::from_bool(pass))
    }

    pub fn with_residual(mut self, residual: impl Into<String>) -> Self {
        self.residual = Some(residual.into());
        self
    }
}

/// A table of string cells. Exact values use their canonical text form and
/// floats use [`float`], so text and JSON output carry the same numbers.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub records: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            records: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn push(&mut self, record: Vec<String>) {
        debug_assert_eq!(record.len(), self.columns.len());
        self.records.push(record);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub format_version: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub sections: Vec<Section>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: command.into(),
            inputs: BTreeMap::new(),
            sections: Vec::new(),
            verdicts: Vec::new(),
            generated_at_unix: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn expected_failures(&self) -> usize {
        self.verdicts.iter().filter(|v| v.expected == Outcome::Fail).count()
    }

    /// 0 when every verdict holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_hold() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with sorted keys; re-emitting parsed output reproduces it
    /// byte for byte.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        canonical_json(&value)
    }

    pub fn to_text(&self, color: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spincouple {} ({})", self.command, self.format_version);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(t) = self.generated_at_unix {
            let _ = writeln!(out, "  generated at (unix): {t}");
        }
        for section in &self.sections {
            let _ = writeln!(out, "\n== {} ==", section.title);
            for n in &section.notes {
                let _ = writeln!(out, "  {n}");
            }
            if !section.records.is_empty() {
                table(&mut out, &section.columns, &section.records);
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "\n== verdicts ==");
            for v in &self.verdicts {
                let status = if v.holds { "ok" } else { "VIOLATED" };
                let actual = paint(v.actual.label(), v.holds, color);
                let _ = write!(out, "  [{actual}] expected {} ({status}): {}", v.expected.label(), v.name);
                if let Some(r) = &v.residual {
                    let _ = write!(out, "\n         residual: {r}");
                }
                out.push('\n');
            }
            let held = self.verdicts.iter().filter(|v| v.holds).count();
            let _ = writeln!(
                out,
                "\n{held}/{} verdicts hold; {} expected failure(s)",
                self.verdicts.len(),
                self.expected_failures()
            );
        }
        out
    }
}

fn paint(text: &str, good: bool, color: bool) -> String {
    if !color {
        return text.to_string();
    }
    let code = if good { "32" } else { "31" };
    format!("\x1b[{code}m{text}\x1b[0m")
}

fn table(out: &mut String, columns: &[String], records: &[Vec<String>]) {
    let widths: Vec<usize> = (0..columns.len())
        .map(|c| {
            records
                .iter()
                .map(|r| r[c].chars().count())
                .chain(std::iter::once(columns[c].chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(columns));
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let _ = writeln!(out, "{}", line(&rule));
    for r in records {
        let _ = writeln!(out, "{}", line(r));
    }
}

/// Two-space indented JSON with object keys in sorted order.
pub fn canonical_json(value: &serde_json::Value) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_verdicts() {
        let mut doc = ReportDocument::new("verify");
        doc.verdicts.push(Verdict::new("expected failure", Outcome::Fail, Outcome::Fail));
        assert_eq!(doc.exit_code(), 0);
        doc.verdicts.push(Verdict::check("should pass", false));
        assert_eq!(doc.exit_code(), 1);
        assert_eq!(doc.expected_failures(), 1);
    }

    #[test]
    fn json_round_trips() {
        let mut doc = ReportDocument::new("cg").input("j1", "1");
        let mut s = Section::new("t", &["a", "b"]);
        s.push(vec!["1".into(), "(1/3)*sqrt(6)".into()]);
        doc.sections.push(s);
        let text = doc.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&parsed), text);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(float(-0.0), "0.000000000000");
        assert_eq!(float(1.0986122886681098), "1.098612288668");
    }

    #[test]
    fn text_has_aligned_table() {
        let mut doc = ReportDocument::new("x");
        let mut s = Section::new("states", &["S", "state"]);
        s.push(vec!["2".into(), "chi(1) x chi(1)".into()]);
        doc.sections.push(s);
        let text = doc.to_text(false);
        assert!(text.contains("  S  state\n  -  ---------------\n  2  chi(1) x chi(1)\n"));
    }
}
