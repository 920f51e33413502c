use std::fmt::Write;

use itertools::Itertools;
use serde::Serialize;

use crate::app::config::{OutputFormat, RunConfig};
use crate::linalg::HomologyDegree;
use crate::scalar::Field;

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub degree: i64,
    pub rank: usize,
    pub reliable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyTable {
    pub title: String,
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn new(title: impl Into<String>, degrees: &[HomologyDegree]) -> Self {
        HomologyTable {
            title: title.into(),
            rows: degrees
                .iter()
                .map(|h| HomologyRow {
                    degree: h.degree,
                    rank: h.rank,
                    reliable: h.reliable,
                })
                .collect(),
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoRow {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// The outcome of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub fields: Vec<String>,
    pub seed: u64,
    pub max_degree: usize,
    pub word_cap: usize,
    pub info: Vec<InfoRow>,
    pub tables: Vec<HomologyTable>,
    pub checks: Vec<CheckRecord>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            command: command.to_string(),
            fields: config.fields.iter().map(|f| f.to_string()).collect(),
            seed: config.seed,
            max_degree: config.max_degree,
            word_cap: config.word_cap,
            info: Vec::new(),
            tables: Vec::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn info(&mut self, key: &str, value: impl ToString) {
        self.info.push(InfoRow {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    /// Adds a table, warning about degrees the truncation window cannot
    /// certify.
    pub fn table(&mut self, table: HomologyTable) {
        let unreliable = table.rows.iter().filter(|r| !r.reliable).map(|r| r.degree).collect_vec();
        if !unreliable.is_empty() {
            self.warnings.push(format!(
                "{}: degrees {} may be affected by truncation",
                table.title,
                unreliable.iter().join(", ")
            ));
        }
        self.tables.push(table);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn record(&mut self, group: &str, name: impl Into<String>, outcome: crate::Result<()>) {
        self.push_check(group, None, name.into(), outcome);
    }

    /// Records a check that was run over one particular field.
    pub fn record_over(&mut self, field: Field, group: &str, name: impl Into<String>, outcome: crate::Result<()>) {
        self.push_check(group, Some(field.to_string()), name.into(), outcome);
    }

    fn push_check(&mut self, group: &str, field: Option<String>, name: String, outcome: crate::Result<()>) {
        self.checks.push(CheckRecord {
            group: group.to_string(),
            field,
            name,
            passed: outcome.is_ok(),
            witness: outcome.err().map(|e| e.to_string()),
        });
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("kind,title,key,value,flag,witness\n");
        let quote = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        for i in &self.info {
            let _ = writeln!(out, "info,,{},{},,", quote(&i.key), quote(&i.value));
        }
        for t in &self.tables {
            for r in &t.rows {
                let _ = writeln!(out, "homology,{},{},{},{},", quote(&t.title), r.degree, r.rank, r.reliable);
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check,{},{},{},{},{}",
                quote(&c.group),
                quote(&c.name),
                if c.passed { "pass" } else { "fail" },
                c.field.as_deref().unwrap_or(""),
                quote(c.witness.as_deref().unwrap_or(""))
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning,,,,,{}", quote(w));
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} over {} (max degree {}, word cap {}, seed {})",
            self.command,
            self.fields.join(", "),
            self.max_degree,
            self.word_cap,
            self.seed
        );
        for i in &self.info {
            let _ = writeln!(out, "  {}: {}", i.key, i.value);
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            let _ = writeln!(out, "  degree  rank");
            for r in &t.rows {
                let flag = if r.reliable { "" } else { "  (truncated)" };
                let _ = writeln!(out, "  {:>6}  {:>4}{flag}", r.degree, r.rank);
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out);
            for ((group, field), checks) in &self.checks.iter().chunk_by(|c| (c.group.clone(), c.field.clone())) {
                let checks: Vec<_> = checks.collect();
                let failed = checks.iter().filter(|c| !c.passed).count();
                let over = field.map(|f| format!(" [{f}]")).unwrap_or_default();
                let _ = writeln!(out, "{group}{over}: {}/{} passed", checks.len() - failed, checks.len());
                for c in checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(out, "  FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
