//! Check reports. Every validator and identity suite produces one of
//! these; a failed check is report content, not an error.

use serde::Serialize;
use std::fmt;

/// One checked identity or axiom. `label` is the stable identifier the
/// check is known by throughout the toolkit (e.g. `co0`, `insp3`, `tech1`)
/// so that a failure in any output can be traced to the exact identity.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub what: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub context: String,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new(context: impl Into<String>) -> Self {
        Report {
            context: context.into(),
            lines: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        what: impl Into<String>,
        pass: bool,
        detail: Option<String>,
    ) {
        self.lines.push(CheckLine {
            label: label.into(),
            what: what.into(),
            pass,
            detail,
        });
    }

    pub fn pass(&mut self, label: impl Into<String>, what: impl Into<String>) {
        self.push(label, what, true, None);
    }

    pub fn fail(
        &mut self,
        label: impl Into<String>,
        what: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.push(label, what, false, Some(detail.into()));
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    /// First failing line, if any.
    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.lines.iter().find(|l| !l.pass)
    }

    pub fn failure_summary(&self) -> String {
        match self.first_failure() {
            Some(line) => format!(
                "{} [{}] {}{}",
                self.context,
                line.label,
                line.what,
                line.detail
                    .as_deref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default()
            ),
            None => format!("{}: all checks passed", self.context),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.context)?;
        for line in &self.lines {
            let mark = if line.pass { "ok  " } else { "FAIL" };
            write!(f, "  [{mark}] {:<12} {}", line.label, line.what)?;
            if let Some(detail) = &line.detail {
                write!(f, "  -- {detail}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
