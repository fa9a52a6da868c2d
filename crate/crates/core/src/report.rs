//! Machine-readable check reports shared by every verification routine.
//!
//! JSON field names are fixed (`schema: 1`). Text output is rendered from the
//! JSON form so both views carry the same data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unsupported,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unsupported => "unsupported",
        }
    }
}

/// Named elements that exhibit a failure (or a found object).
pub type Witness = BTreeMap<String, String>;

/// Build a witness from `(name, value)` pairs.
pub fn witness<I, K, V>(pairs: I) -> Witness
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.to_string()))
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
}

impl Bounds {
    pub fn window(bound: i64) -> Self {
        Bounds {
            window: Some(bound),
            ..Bounds::default()
        }
    }

    pub fn with_search(mut self, k: i64) -> Self {
        self.search = Some(k);
        self
    }

    pub fn with_n_max(mut self, n: u32) -> Self {
        self.n_max = Some(n);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, bounds: Bounds) -> Self {
        CheckRecord {
            name: name.into(),
            verdict: Verdict::Pass,
            witness: None,
            bounds,
            detail: None,
        }
    }

    /// A failing record always carries the elements that exhibit the failure.
    pub fn fail(name: impl Into<String>, bounds: Bounds, witness: Witness) -> Self {
        CheckRecord {
            name: name.into(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            bounds,
            detail: None,
        }
    }

    pub fn unsupported(name: impl Into<String>, bounds: Bounds, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            verdict: Verdict::Unsupported,
            witness: None,
            bounds,
            detail: Some(detail.into()),
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with that witness.
    pub fn from_outcome(name: impl Into<String>, bounds: Bounds, failure: Option<Witness>) -> Self {
        match failure {
            None => CheckRecord::pass(name, bounds),
            Some(w) => CheckRecord::fail(name, bounds, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub facts: BTreeMap<String, String>,
    #[serde(default)]
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            facts: BTreeMap::new(),
            timing_ms: 0,
        }
    }

    /// Appends a record and refreshes the aggregate verdict.
    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
        self.verdict = self.aggregate();
    }

    /// Appends every record of `other`, prefixing names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut record in other.checks {
            record.name = format!("{prefix}/{}", record.name);
            self.checks.push(record);
        }
        for (k, v) in other.facts {
            self.facts.insert(format!("{prefix}/{k}"), v);
        }
        self.verdict = self.aggregate();
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.insert(key.into(), value.to_string());
    }

    /// Fail if any record failed, otherwise unsupported if any record was,
    /// otherwise pass.
    pub fn aggregate(&self) -> Verdict {
        if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.checks.iter().any(|c| c.verdict == Verdict::Unsupported) {
            Verdict::Unsupported
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The first failing record, if any.
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Unsupported => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering of the JSON form.
    pub fn render_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        let field = |key: &str| value[key].as_str().unwrap_or_default().to_string();
        let _ = writeln!(out, "{}: {}", field("command"), field("verdict").to_uppercase());
        if let Some(checks) = value["checks"].as_array() {
            for check in checks {
                let _ = write!(
                    out,
                    "  [{:<11}] {}",
                    check["verdict"].as_str().unwrap_or_default(),
                    check["name"].as_str().unwrap_or_default()
                );
                if let Some(w) = check.get("witness").and_then(|w| w.as_object()) {
                    let parts: Vec<String> = w
                        .iter()
                        .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or_default()))
                        .collect();
                    let _ = write!(out, "  witness: {}", parts.join(" "));
                }
                if let Some(d) = check.get("detail").and_then(|d| d.as_str()) {
                    let _ = write!(out, "  ({d})");
                }
                out.push('\n');
            }
        }
        if let Some(facts) = value["facts"].as_object() {
            for (k, v) in facts {
                let _ = writeln!(out, "  {k} = {}", v.as_str().unwrap_or_default());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_verdicts() {
        let mut r = Report::new("t");
        r.push(CheckRecord::pass("a", Bounds::window(2)));
        assert_eq!(r.verdict, Verdict::Pass);
        r.push(CheckRecord::unsupported("b", Bounds::default(), "n/a"));
        assert_eq!(r.verdict, Verdict::Unsupported);
        r.push(CheckRecord::fail("c", Bounds::window(2), witness([("x", 1)])));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("classify");
        r.push(CheckRecord::fail(
            "prime",
            Bounds::window(3).with_search(5),
            witness([("x", "(1,0)"), ("y", "(0,1)")]),
        ));
        r.fact("label", "Neither");
        r.timing_ms = 12;
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.render_text().contains("witness: x=(1,0) y=(0,1)"));
    }
}
