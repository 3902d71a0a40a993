use serde::Serialize;

use crate::scenario_file::ScenarioEcho;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The input could not be processed.
    Error,
}

impl Verdict {
    pub fn of(passed: bool) -> Self {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Vec<String>,
}

/// Result of one command on one input. The text and JSON forms carry the
/// same fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub source: Option<String>,
    pub scenario: Option<ScenarioEcho>,
    pub branch: Option<String>,
    /// Headline answer of query commands, e.g. `not-a-cycle` or `true`.
    pub result: Option<String>,
    pub details: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub overall: Verdict,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            source: None,
            scenario: None,
            branch: None,
            result: None,
            details: Vec::new(),
            checks: Vec::new(),
            overall: Verdict::Pass,
        }
    }

    /// Overall verdict as the conjunction of the checks.
    pub fn conclude(mut self) -> Self {
        self.overall = Verdict::of(self.checks.iter().all(|c| c.verdict == Verdict::Pass));
        self
    }

    pub fn text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(s) = &self.source {
            out.push_str(&format!("source: {s}\n"));
        }
        if let Some(s) = &self.scenario {
            out.push_str("scenario:\n");
            for l in s.lines() {
                out.push_str(&format!("  {l}\n"));
            }
        }
        if let Some(b) = &self.branch {
            out.push_str(&format!("branch: {b}\n"));
        }
        if let Some(r) = &self.result {
            out.push_str(&format!("result: {r}\n"));
        }
        if !self.details.is_empty() {
            out.push_str("details:\n");
            for d in &self.details {
                out.push_str(&format!("  {d}\n"));
            }
        }
        for c in &self.checks {
            out.push_str(&format!("check [{}] {}\n", c.verdict.label(), c.name));
            for w in &c.witness {
                out.push_str(&format!("    {w}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", self.overall.label()));
        out
    }
}
