//! Run reports and the exit-code taxonomy.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// A machine-readable failure reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
}

impl Failure {
    pub fn new(code: &'static str, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Failure {
        Failure::new("input", message)
    }

    pub fn verification(message: impl Into<String>) -> Failure {
        Failure::new("verification", message)
    }

    pub fn exit_code(&self) -> i32 {
        match self.code {
            "verification" | "obstructed" | "hypothesis" | "zero-divisor" | "jhet" => EXIT_VERIFICATION,
            "budget" | "inconclusive" => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

impl From<hasse::Error> for Failure {
    fn from(e: hasse::Error) -> Failure {
        use hasse::Error as E;
        let code = match &e {
            E::NotPrime(_) | E::PrimeTooLarge(_) => "characteristic",
            E::Parse { .. } => "parse",
            E::BudgetExceeded { .. } => "budget",
            E::Verification(_) => "verification",
            E::Hypothesis(_) => "hypothesis",
            E::ZeroDivisor(_) => "zero-divisor",
            E::JhetFails { .. } => "jhet",
            E::NotArtinian => "not-artinian",
            E::NotLocal => "not-local",
            E::RingMismatch | E::VariableOutOfRange { .. } | E::InvalidInput(_) => "input",
        };
        Failure::new(code, e.to_string())
    }
}

/// One verification step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub check: String,
    pub passed: bool,
}

impl Entry {
    pub fn new(order: Option<usize>, check: impl Into<String>, passed: bool) -> Entry {
        Entry {
            order,
            check: check.into(),
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub verb: String,
    pub status: &'static str,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Failure>,
    pub inputs: Value,
    pub results: Value,
    pub transcript: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    /// Status and exit code follow from `reason` and the transcript: any
    /// failed check without an explicit reason is a verification failure.
    pub fn new(verb: &str, inputs: Value, results: Value, transcript: Vec<Entry>, reason: Option<Failure>) -> RunReport {
        let reason = reason.or_else(|| {
            transcript
                .iter()
                .find(|e| !e.passed)
                .map(|e| Failure::verification(format!("check failed: {}", e.check)))
        });
        let exit_code = reason.as_ref().map_or(EXIT_OK, Failure::exit_code);
        RunReport {
            verb: verb.to_string(),
            status: if exit_code == EXIT_OK { "ok" } else { "failed" },
            exit_code,
            reason,
            inputs,
            results,
            transcript,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verb: {}", self.verb);
        let _ = writeln!(s, "status: {} (exit {})", self.status, self.exit_code);
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "reason: [{}] {}", r.code, r.message);
        }
        if !self.results.is_null() {
            s.push_str("results:\n");
            text_value(&mut s, &self.results, 1);
        }
        if !self.transcript.is_empty() {
            s.push_str("transcript:\n");
            for e in &self.transcript {
                let mark = if e.passed { "ok  " } else { "FAIL" };
                match e.order {
                    Some(o) => {
                        let _ = writeln!(s, "  {mark} [{o}] {}", e.check);
                    }
                    None => {
                        let _ = writeln!(s, "  {mark} {}", e.check);
                    }
                }
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "timing: {t:.3} ms");
        }
        s
    }
}

fn text_value(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    let _ = writeln!(s, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(s, "{pad}{k}:");
                    text_value(s, x, depth + 1);
                }
            }
        }
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            let _ = writeln!(s, "{pad}[{}]", items.join(", "));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                let _ = writeln!(s, "{pad}- {}", i + 1);
                text_value(s, x, depth + 1);
            }
        }
        x => {
            let _ = writeln!(s, "{pad}{}", scalar(x));
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_)) || matches!(v, Value::Array(xs) if xs.is_empty())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(_) => "[]".into(),
        x => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_codes() {
        let r = RunReport::new("x", Value::Null, Value::Null, vec![Entry::new(Some(1), "a", true)], None);
        assert_eq!(r.exit_code, EXIT_OK);
        let r = RunReport::new("x", Value::Null, Value::Null, vec![Entry::new(None, "b", false)], None);
        assert_eq!(r.exit_code, EXIT_VERIFICATION);
        assert_eq!(r.reason.unwrap().message, "check failed: b");
        let budget = Failure::from(hasse::Error::BudgetExceeded { what: "search", limit: 3 });
        assert_eq!(budget.exit_code(), EXIT_BUDGET);
        assert_eq!(Failure::from(hasse::Error::NotPrime(4)).exit_code(), EXIT_INPUT);
    }

    #[test]
    fn text_rendering() {
        let r = RunReport::new(
            "fitting",
            Value::Null,
            json!({"ell": 1, "generators": ["x^2"], "rows": [{"x": "0"}]}),
            vec![Entry::new(Some(2), "valid", true)],
            None,
        );
        let t = r.to_text();
        assert!(t.contains("  ell: 1\n"));
        assert!(t.contains("  generators:\n    [x^2]\n"));
        assert!(t.contains("  ok   [2] valid\n"));
    }
}
