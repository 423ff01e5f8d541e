//! Suite results and their plain, JSON and LaTeX renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::expr::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unsupported => "UNSUPPORTED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub suite: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    /// Wall time; left out of JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Case {
    pub fn new(suite: &str, name: impl Into<String>, status: Status) -> Self {
        Case {
            suite: suite.to_string(),
            name: name.into(),
            status,
            residual: None,
            detail: String::new(),
            data: None,
            elapsed: None,
        }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn residual(mut self, r: impl ToString) -> Self {
        self.residual = Some(r.to_string());
        self
    }

    pub fn data(mut self, v: serde_json::Value) -> Self {
        self.data = Some(v);
        self
    }

    pub fn elapsed(mut self, d: Duration) -> Self {
        self.elapsed = Some(d);
        self
    }
}

/// A rendered 8x8 (or any square) table with plain and LaTeX cells.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub caption: String,
    pub corner: String,
    pub labels: Vec<String>,
    pub cells: Vec<Vec<String>>,
    #[serde(skip)]
    pub latex_labels: Vec<String>,
    #[serde(skip)]
    pub latex_cells: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub cases: Vec<Case>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
}

impl Report {
    pub fn push(&mut self, c: Case) {
        self.cases.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.cases.extend(other.cases);
        self.tables.extend(other.tables);
    }

    pub fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    /// Process exit code: 0 without failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Latex => self.latex(),
        }
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&plain_table(t));
            out.push('\n');
        }
        for c in &self.cases {
            let _ = write!(out, "[{}] {} ... {}", c.suite, c.name, c.status.word());
            if let Some(r) = &c.residual {
                let _ = write!(out, " (residual {r})");
            }
            if let Some(d) = c.elapsed {
                let _ = write!(out, " [{:.3} s]", d.as_secs_f64());
            }
            out.push('\n');
            for line in c.detail.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        if !self.cases.is_empty() {
            let _ = writeln!(
                out,
                "summary: {} pass, {} fail, {} unsupported",
                self.count(Status::Pass),
                self.count(Status::Fail),
                self.count(Status::Unsupported)
            );
        }
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&latex_table(t));
            out.push('\n');
        }
        if !self.cases.is_empty() {
            out.push_str("\\begin{tabular}{lll}\n\\hline\nsuite & case & status \\\\\n\\hline\n");
            for c in &self.cases {
                let _ = writeln!(
                    out,
                    "{} & {} & {} \\\\",
                    escape(&c.suite),
                    escape(&c.name),
                    c.status.word().to_lowercase()
                );
            }
            out.push_str("\\hline\n\\end{tabular}\n");
        }
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}")
        .replace('_', "\\_")
        .replace('&', "\\&")
        .replace('%', "\\%")
        .replace('#', "\\#")
        .replace('^', "\\^{}")
}

fn plain_table(t: &Table) -> String {
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(t.cells.len() + 1);
    let mut head = vec![t.corner.clone()];
    head.extend(t.labels.iter().cloned());
    rows.push(head);
    for (label, row) in t.labels.iter().zip(&t.cells) {
        let mut r = vec![label.clone()];
        r.extend(row.iter().cloned());
        rows.push(r);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{}\n", t.caption);
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn latex_table(t: &Table) -> String {
    let n = t.labels.len();
    let mut out = String::new();
    out.push_str("\\begin{table}\n\\centering\n");
    let _ = writeln!(out, "\\caption{{{}}}", t.caption);
    let _ = writeln!(out, "\\begin{{tabular}}{{{}}}", "c".repeat(n + 1));
    out.push_str("\\hline\n\\hline\n");
    let head: Vec<String> = t.latex_labels.iter().map(|l| format!("${l}$")).collect();
    let _ = writeln!(out, "{} & {} \\\\", t.corner, head.join(" & "));
    out.push_str("\\hline\n");
    for (label, row) in t.latex_labels.iter().zip(&t.latex_cells) {
        let cells: Vec<String> = row
            .iter()
            .map(|c| {
                if c == "0" {
                    c.clone()
                } else {
                    format!("${c}$")
                }
            })
            .collect();
        let _ = writeln!(out, "${label}$ & {} \\\\", cells.join(" & "));
    }
    out.push_str("\\hline\n\\hline\n\\end{tabular}\n\\end{table}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_as_json() {
        let r = Report::default();
        let v: serde_json::Value = serde_json::from_str(&r.emit(Format::Json)).unwrap();
        assert_eq!(v, serde_json::json!({"cases": []}));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn failures_set_exit_code() {
        let mut r = Report::default();
        r.push(Case::new("s", "a", Status::Pass));
        r.push(Case::new("s", "b", Status::Unsupported));
        assert_eq!(r.exit_code(), 0);
        r.push(Case::new("s", "c", Status::Fail));
        assert_eq!(r.exit_code(), 1);
        assert!(r
            .emit(Format::Plain)
            .contains("1 pass, 1 fail, 1 unsupported"));
    }

    #[test]
    fn timings_stay_out_of_json() {
        let mut r = Report::default();
        r.push(Case::new("s", "a", Status::Pass).elapsed(Duration::from_millis(5)));
        assert!(!r.emit(Format::Json).contains("elapsed"));
        assert!(r.emit(Format::Plain).contains("0.005 s"));
    }
}
