use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: String,
    pub kind: &'static str,
    pub n: usize,
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<u64>>,
    /// Named results in display order.
    pub output: Vec<Entry>,
    pub checks: Vec<Check>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &'static str, input_digest: String, kind: &'static str, n: usize, d: u32) -> Self {
        Report {
            command,
            input_digest,
            kind,
            n,
            d,
            m: None,
            bounds: BTreeMap::new(),
            dims: None,
            output: Vec::new(),
            checks: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl ToString) {
        self.output.push(Entry {
            name: key.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, residual: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            residual,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable form; leaves out the timing so equal inputs give equal text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input sha256: {}", self.input_digest);
        let _ = writeln!(s, "kind: {}, n = {}, d = {}", self.kind, self.n, self.d);
        if let Some(m) = &self.m {
            let _ = writeln!(s, "m = {m}");
        }
        for (k, v) in &self.bounds {
            let _ = writeln!(s, "bound {k} = {v}");
        }
        if let Some(dims) = &self.dims {
            let list: Vec<String> = dims.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "dims: [{}]", list.join(", "));
        }
        for Entry { name: k, value: v } in &self.output {
            if v.contains('\n') {
                let _ = writeln!(s, "{k}:");
                for l in v.lines() {
                    let _ = writeln!(s, "  {l}");
                }
            } else {
                let _ = writeln!(s, "{k}: {v}");
            }
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            match &c.residual {
                Some(r) => {
                    let _ = writeln!(s, "{tag} {}: {r}", c.name);
                }
                None => {
                    let _ = writeln!(s, "{tag} {}", c.name);
                }
            }
        }
        let verdict = if self.all_passed() { "pass" } else { "fail" };
        let _ = writeln!(s, "result: {verdict}");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
