//! Per-point reports, sweep summaries and their JSON/text renderings.

use qsum_core::{Exponent, QPoly};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Mismatch,
    SkippedPrecondition,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Mismatch => "mismatch",
            Verdict::SkippedPrecondition => "skipped_precondition",
            Verdict::Error => "error",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Equal | Verdict::SkippedPrecondition)
    }
}

/// Result of one identity check at one parameter point.
///
/// The polynomial fields appear on mismatches and on skipped points that
/// record both sides. On errors `diff_repr` carries the error text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Map<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_repr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_repr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff_repr: Option<String>,
    pub truncation: Option<Value>,
    pub elapsed_ms: u64,
}

/// What an identity check produced before it is wrapped into a report.
#[derive(Clone, Debug)]
pub enum Outcome {
    Equal,
    Mismatch { lhs: QPoly, rhs: QPoly },
    Skipped { sides: Option<(QPoly, QPoly)> },
    Error(String),
}

impl Outcome {
    pub fn compare(lhs: QPoly, rhs: QPoly) -> Outcome {
        if lhs == rhs {
            Outcome::Equal
        } else {
            Outcome::Mismatch { lhs, rhs }
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            Outcome::Equal => Verdict::Equal,
            Outcome::Mismatch { .. } => Verdict::Mismatch,
            Outcome::Skipped { .. } => Verdict::SkippedPrecondition,
            Outcome::Error(_) => Verdict::Error,
        }
    }
}

impl IdentityReport {
    pub fn new(identity_id: &str, params: Map<String, Value>, outcome: Outcome, trunc: Option<Exponent>, elapsed_ms: u64) -> Self {
        let verdict = outcome.verdict();
        let (mut lhs_repr, mut rhs_repr, mut diff_repr) = (None, None, None);
        match outcome {
            Outcome::Mismatch { lhs, rhs } => {
                diff_repr = Some((&lhs - &rhs).to_string());
                lhs_repr = Some(lhs.to_string());
                rhs_repr = Some(rhs.to_string());
            }
            Outcome::Skipped { sides: Some((lhs, rhs)) } => {
                lhs_repr = Some(lhs.to_string());
                rhs_repr = Some(rhs.to_string());
            }
            Outcome::Error(msg) => diff_repr = Some(msg),
            Outcome::Equal | Outcome::Skipped { sides: None } => {}
        }
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            verdict,
            lhs_repr,
            rhs_repr,
            diff_repr,
            truncation: trunc.map(|d| crate::params::Val::Num(d).to_json()),
            elapsed_ms,
        }
    }

    pub fn to_text(&self, color: bool) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let mut line = format!("{} {} {}", self.identity_id, params.join(" "), paint(self.verdict, color));
        if let Some(d) = &self.truncation {
            line.push_str(&format!(" D={}", plain(d)));
        }
        for (name, v) in [("lhs", &self.lhs_repr), ("rhs", &self.rhs_repr), ("diff", &self.diff_repr)] {
            if let Some(v) = v {
                line.push_str(&format!("\n  {name}: {v}"));
            }
        }
        line
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn paint(v: Verdict, color: bool) -> String {
    let code = match v {
        Verdict::Equal => "32",
        Verdict::Mismatch | Verdict::Error => "31",
        Verdict::SkippedPrecondition => "33",
    };
    if color {
        format!("\x1b[{code}m{}\x1b[0m", v.as_str())
    } else {
        v.as_str().to_string()
    }
}

/// Verdict counts of one sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub summary: bool,
    pub identity_id: String,
    pub total: usize,
    pub equal: usize,
    pub mismatch: usize,
    pub skipped_precondition: usize,
    pub error: usize,
    pub elapsed_ms: u64,
}

impl Summary {
    pub fn new(identity_id: &str) -> Self {
        Summary { summary: true, identity_id: identity_id.to_string(), ..Default::default() }
    }

    pub fn add(&mut self, v: Verdict) {
        self.total += 1;
        match v {
            Verdict::Equal => self.equal += 1,
            Verdict::Mismatch => self.mismatch += 1,
            Verdict::SkippedPrecondition => self.skipped_precondition += 1,
            Verdict::Error => self.error += 1,
        }
    }

    pub fn merge(&mut self, other: &Summary) {
        self.total += other.total;
        self.equal += other.equal;
        self.mismatch += other.mismatch;
        self.skipped_precondition += other.skipped_precondition;
        self.error += other.error;
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn all_ok(&self) -> bool {
        self.mismatch == 0 && self.error == 0
    }

    pub fn to_text(&self) -> String {
        format!(
            "summary {}: total={} equal={} mismatch={} skipped_precondition={} error={} elapsed_ms={}",
            self.identity_id, self.total, self.equal, self.mismatch, self.skipped_precondition, self.error, self.elapsed_ms
        )
    }
}
