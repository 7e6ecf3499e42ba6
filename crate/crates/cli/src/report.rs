//! Run reports: every value carries how it was obtained.

use std::collections::BTreeMap;
use std::fmt::Write;

use ckr_gap::rational::{format_ratio, to_decimal, Rational};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Enumeration,
    MaxFlow,
    DirectEvaluation,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Formula => "formula",
            Provenance::Enumeration => "enumeration",
            Provenance::MaxFlow => "max-flow",
            Provenance::DirectEvaluation => "direct-evaluation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

/// `{"exact": "p/q", "decimal": "…"}` with half-even rounding to 6 places.
pub fn ratio_value(r: &Rational) -> Value {
    serde_json::json!({ "exact": format_ratio(r), "decimal": to_decimal(r, 6) })
}

impl Entry {
    pub fn new(name: impl Into<String>, value: Value, provenance: Provenance) -> Self {
        Entry { name: name.into(), value, provenance, expected: None, tolerance: None, passed: None }
    }

    pub fn ratio(name: impl Into<String>, r: &Rational, provenance: Provenance) -> Self {
        Entry::new(name, ratio_value(r), provenance)
    }

    pub fn check(mut self, expected: impl Into<String>, tolerance: impl Into<String>, passed: bool) -> Self {
        self.expected = Some(expected.into());
        self.tolerance = Some(tolerance.into());
        self.passed = Some(passed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub regime: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            regime: BTreeMap::new(),
            passed: None,
            elapsed_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, e: Entry) -> &mut Self {
        self.results.push(e);
        self
    }

    /// All checked entries passed (true when nothing was checked).
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|e| e.passed != Some(false))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.command).unwrap();
        for (k, v) in &self.parameters {
            writeln!(s, "  {k} = {v}").unwrap();
        }
        for (k, v) in &self.regime {
            writeln!(s, "  regime {k}: {v}").unwrap();
        }
        for e in &self.results {
            let value = match &e.value {
                Value::Object(m) if m.contains_key("decimal") => {
                    format!("{} ({})", m["decimal"].as_str().unwrap_or(""), m["exact"].as_str().unwrap_or(""))
                }
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            let verdict = match e.passed {
                Some(true) => " PASS",
                Some(false) => " FAIL",
                None => "",
            };
            write!(s, "  {:<44} {:<32} [{}]{}", e.name, value, e.provenance.as_str(), verdict).unwrap();
            if let Some(x) = &e.expected {
                write!(s, " expected {x}").unwrap();
                if let Some(t) = &e.tolerance {
                    write!(s, " tol {t}").unwrap();
                }
            }
            s.push('\n');
        }
        if let Some(p) = self.passed {
            writeln!(s, "  overall: {}", if p { "PASS" } else { "FAIL" }).unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(s, "  elapsed: {ms} ms").unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ckr_gap::rational::rat;

    #[test]
    fn ratio_entries_carry_exact_and_decimal() {
        let e = Entry::ratio("x", &rat(2, 3), Provenance::Formula);
        assert_eq!(e.value["exact"], "2/3");
        assert_eq!(e.value["decimal"], "0.666667");
    }

    #[test]
    fn unchecked_entries_do_not_fail_a_report() {
        let mut r = RunReport::new("t");
        r.push(Entry::new("info", Value::Null, Provenance::Formula));
        assert!(r.all_passed());
        r.push(Entry::new("bad", Value::Null, Provenance::Formula).check("1", "exact", false));
        assert!(!r.all_passed());
    }

    #[test]
    fn json_omits_timing_when_absent() {
        let mut r = RunReport::new("t");
        r.param("n", 3);
        let j = r.to_json();
        assert!(!j.contains("elapsed_ms"));
        r.elapsed_ms = Some(5);
        assert!(r.to_json().contains("\"elapsed_ms\": 5"));
    }

    #[test]
    fn provenance_serializes_kebab_case() {
        assert_eq!(serde_json::to_string(&Provenance::MaxFlow).unwrap(), "\"max-flow\"");
        assert_eq!(Provenance::DirectEvaluation.as_str(), "direct-evaluation");
    }

    #[test]
    fn text_marks_verdicts() {
        let mut r = RunReport::new("t");
        r.push(Entry::ratio("v", &rat(1, 2), Provenance::Enumeration).check("1/2", "exact", true));
        let t = r.to_text();
        assert!(t.contains("0.500000 (1/2)"));
        assert!(t.contains("PASS"));
    }
}
