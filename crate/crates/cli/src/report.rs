use divlab::Family;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Command completed; nothing was checked.
    Ok,
    /// Every checked bound held with its hypotheses satisfied.
    Satisfied,
    /// Checked bounds held but some hypothesis failed, so nothing was claimed.
    HypothesesFail,
    /// A bound failed under its hypotheses, or a counterexample was found.
    Violation,
    Reproduced,
    Mismatch,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Violation | Verdict::Mismatch => 2,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Satisfied => "satisfied",
            Verdict::HypothesesFail => "hypotheses-fail",
            Verdict::Violation => "violation",
            Verdict::Reproduced => "reproduced",
            Verdict::Mismatch => "mismatch",
        }
    }

    /// Verdict for a single bound check.
    pub fn of_bound(hypotheses_hold: bool, satisfied: bool) -> Verdict {
        match (hypotheses_hold, satisfied) {
            (true, true) => Verdict::Satisfied,
            (true, false) => Verdict::Violation,
            (false, _) => Verdict::HypothesesFail,
        }
    }
}

/// Field order here is the JSON key order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub hypotheses_hold: bool,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_family: Option<Family>,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(verdict: Verdict, hypotheses_hold: bool, values: Value) -> Report {
        Report { verdict, hypotheses_hold, values, witness_family: None, nodes: 0, elapsed_ms: 0 }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verdict: {}", self.verdict.as_str());
        let _ = writeln!(s, "hypotheses_hold: {}", self.hypotheses_hold);
        if let Value::Object(map) = &self.values {
            for (k, v) in map {
                let _ = writeln!(s, "{k}: {}", scalar(v));
            }
        }
        if let Some(f) = &self.witness_family {
            let sets: Vec<String> = f
                .to_one_based()
                .iter()
                .take(TEXT_WITNESS_LIMIT)
                .map(|m| m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
                .map(|m| format!("{{{m}}}"))
                .collect();
            let more = f.len().saturating_sub(TEXT_WITNESS_LIMIT);
            let tail = if more > 0 { format!(" ... (+{more} more; use --json)") } else { String::new() };
            let _ = writeln!(s, "witness_family: {}{tail}", sets.join(" "));
        }
        let _ = writeln!(s, "nodes: {}", self.nodes);
        let _ = writeln!(s, "elapsed_ms: {}", self.elapsed_ms);
        s
    }

    /// Digest of everything a replay must reproduce (timing and node counts excluded).
    pub fn result_digest(&self) -> String {
        let core = serde_json::json!({
            "verdict": self.verdict,
            "hypotheses_hold": self.hypotheses_hold,
            "values": self.values,
            "witness_family": self.witness_family,
        });
        hex::encode(Sha256::digest(core.to_string().as_bytes()))
    }
}

const TEXT_WITNESS_LIMIT: usize = 24;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.len() > TEXT_WITNESS_LIMIT => format!("[{} entries; use --json]", items.len()),
        other => other.to_string(),
    }
}
