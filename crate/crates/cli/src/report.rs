//! Run reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use paracons_core::logic::{EvidenceBound, Logic, Status, Verdict};

pub const TOOL: &str = "paracons";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentInfo {
    pub vars: usize,
    pub depth: usize,
    pub fresh: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub id: String,
    pub question: String,
    pub status: Status,
    #[serde(default)]
    pub expected: Option<Status>,
    #[serde(default)]
    pub certificate: Vec<String>,
    /// Whether every fact of the certificate re-checked.
    #[serde(default)]
    pub replayed: Option<bool>,
    #[serde(default)]
    pub evidence_bound: Option<EvidenceBound>,
    pub pass: bool,
}

impl ReportItem {
    pub fn new(id: impl Into<String>, question: impl Into<String>, status: Status) -> Self {
        ReportItem {
            id: id.into(),
            question: question.into(),
            status,
            expected: None,
            certificate: Vec::new(),
            replayed: None,
            evidence_bound: None,
            pass: true,
        }
    }

    /// Item for a verdict, replaying its certificate.
    pub fn verdict<L: Logic + ?Sized>(
        logic: &L,
        id: impl Into<String>,
        question: impl Into<String>,
        v: &Verdict<L::Item>,
    ) -> paracons_core::error::Result<Self> {
        let replayed = v.replay(logic)?;
        Ok(ReportItem {
            certificate: v.lines(logic),
            replayed: Some(replayed),
            evidence_bound: v.evidence,
            pass: replayed,
            ..ReportItem::new(id, question, v.status)
        })
    }

    /// Sets the expected status; the item passes only if it matches.
    pub fn expect(mut self, expected: Status) -> Self {
        self.expected = Some(expected);
        self.pass = self.pass && self.status == expected;
        self
    }

    pub fn with_line(mut self, line: impl Into<String>) -> Self {
        self.certificate.push(line.into());
        self
    }

    /// A yes/no check, expected to come out true.
    pub fn check(id: impl Into<String>, question: impl Into<String>, ok: bool) -> Self {
        ReportItem::new(id, question, Status::from_bool(ok)).expect(Status::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: String,
    /// SHA-256 of the input bytes.
    pub input_digest: String,
    #[serde(default)]
    pub fragment: Option<FragmentInfo>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub items: Vec<ReportItem>,
    pub passed: bool,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: &str, input: impl Into<String>, input_bytes: &[u8], items: Vec<ReportItem>) -> Self {
        let passed = items.iter().all(|i| i.pass);
        RunReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            input: input.into(),
            input_digest: digest(input_bytes),
            fragment: None,
            seed: None,
            items,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        let _ = writeln!(out, "input: {} (sha256 {})", self.input, &self.input_digest);
        if let Some(f) = &self.fragment {
            let _ = writeln!(out, "fragment: {} vars, depth {}, +{} fresh", f.vars, f.depth, f.fresh);
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed: {s}");
        }
        let width = self.items.iter().map(|i| i.id.chars().count()).max().unwrap_or(0);
        for item in &self.items {
            let mark = if item.pass { "ok  " } else { "FAIL" };
            let expected = match item.expected {
                Some(e) => format!(" (expected {e})"),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "[{mark}] {:<width$}  {}: {}{expected}",
                item.id, item.question, item.status
            );
            for line in &item.certificate {
                let _ = writeln!(out, "       {:width$}    {line}", "");
            }
            if item.replayed == Some(false) {
                let _ = writeln!(out, "       {:width$}    certificate did not replay", "");
            }
            if let Some(b) = item.evidence_bound {
                let _ = writeln!(
                    out,
                    "       {:width$}    evidence: {} vars, depth {}, +{} fresh, {} formulas",
                    "", b.vars, b.depth, b.fresh, b.formulas
                );
            }
        }
        let passed = self.items.iter().filter(|i| i.pass).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} items passed",
            if self.passed { "PASS" } else { "FAIL" },
            self.items.len()
        );
        out
    }
}
