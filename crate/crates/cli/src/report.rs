//! Text and JSON renderings of command results.
//!
//! `h2 --json` emits
//!
//! ```text
//! {"a": int, "b": int, "c": int, "e": int, "d": int, "exact": bool,
//!  "all_confluent": bool, "pass_history": [int], "survivors": [string],
//!  "statuses": [string], "wall_times_ms": {phase: int}}
//! ```
//!
//! `survivors` holds the surviving relators as words, so the report does not
//! depend on how relators were numbered. `wall_times_ms` has the phases
//! `abelian`, `pass_1`, `pass_2`, ... and `total`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use grouphom::hopf::HopfReport;
use grouphom::{Presentation, Word};

pub fn format_word(p: &Presentation, w: &Word) -> String {
    p.display_word(w).to_string()
}

pub fn format_invariants(inv: &[BigInt]) -> String {
    let parts: Vec<String> = inv.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Integers that fit in `u64` become JSON numbers, larger ones strings.
fn invariant_json(x: &BigInt) -> Value {
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub invariants: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
}

impl InvariantsReport {
    pub fn new(inv: &[BigInt], prime: Option<u64>, value: Option<u64>) -> Self {
        InvariantsReport {
            invariants: inv.iter().map(invariant_json).collect(),
            prime: value.and(prime),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Report {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub e: usize,
    pub d: i64,
    pub exact: bool,
    pub all_confluent: bool,
    pub pass_history: Vec<usize>,
    pub survivors: Vec<String>,
    pub statuses: Vec<String>,
    pub wall_times_ms: BTreeMap<String, u64>,
}

impl H2Report {
    pub fn new(p: &Presentation, rep: &HopfReport) -> Self {
        H2Report {
            a: rep.a,
            b: rep.b,
            c: rep.c,
            e: rep.e,
            d: rep.d,
            exact: rep.exact(),
            all_confluent: rep.all_confluent,
            pass_history: rep.pass_history.clone(),
            survivors: rep.survivors.iter().map(|&i| format_word(p, &p.relators()[i])).collect(),
            statuses: rep.statuses.iter().map(|s| s.as_str().to_string()).collect(),
            wall_times_ms: rep
                .wall_times
                .iter()
                .map(|(k, v)| (k.clone(), u64::try_from(v.as_millis()).unwrap_or(u64::MAX)))
                .collect(),
        }
    }

    fn qualifier(&self) -> &'static str {
        if self.exact {
            "exact: rewriting confluent"
        } else if !self.all_confluent {
            "upper bound: rewriting not confluent"
        } else {
            "upper bound: refinement did not stabilize"
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "a = {}", self.a);
        let _ = writeln!(out, "b = {}", self.b);
        let _ = writeln!(out, "c = {}", self.c);
        let _ = writeln!(out, "e = {}", self.e);
        let history: Vec<String> = self.pass_history.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "pass history: {}", history.join(", "));
        let _ = writeln!(out, "completions: {}", summarize(&self.statuses));
        let _ = writeln!(out, "survivors:");
        for s in &self.survivors {
            let _ = writeln!(out, "  {s}");
        }
        let rel = if self.exact { "=" } else { "<=" };
        let _ = writeln!(out, "d {rel} {} ({})", self.d, self.qualifier());
        out
    }
}

fn summarize(statuses: &[String]) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for s in statuses {
        *counts.entry(s).or_default() += 1;
    }
    if counts.is_empty() {
        return "none".into();
    }
    counts.iter().map(|(s, n)| format!("{n} {s}")).collect::<Vec<_>>().join(", ")
}
