use std::fmt::Write;

use serde::Serialize;

use super::corpus::exterior_exponent;
use super::{CheckResult, Status};
use crate::nu::{Named, NuContext, NuStrategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderSummary {
    pub nu: usize,
    pub theta: usize,
    pub upsilon1: usize,
    pub upsilon2: usize,
    pub upsilon3: usize,
    pub mu: usize,
    pub delta: usize,
    pub derived: usize,
}

impl OrderSummary {
    pub fn of(ctx: &NuContext) -> Self {
        let o = |n| ctx.subgroup(n).order();
        OrderSummary {
            nu: ctx.nu().order(),
            theta: o(Named::Theta),
            upsilon1: o(Named::Upsilon1),
            upsilon2: o(Named::Upsilon2),
            upsilon3: o(Named::Upsilon3),
            mu: o(Named::Mu),
            delta: o(Named::Delta),
            derived: o(Named::Derived),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSummary {
    pub base: usize,
    pub nu: usize,
    pub upsilon1: usize,
    pub derived: usize,
    pub mu: usize,
    pub delta: usize,
    /// `Upsilon1 / Delta`.
    pub exterior: Option<usize>,
}

impl ExponentSummary {
    pub fn of(ctx: &NuContext) -> Self {
        let nu = ctx.nu();
        let e = |n| nu.exponent(ctx.subgroup(n));
        let base = ctx.base();
        ExponentSummary {
            base: base.exponent(&base.whole()),
            nu: nu.exponent(&nu.whole()),
            upsilon1: e(Named::Upsilon1),
            derived: e(Named::Derived),
            mu: e(Named::Mu),
            delta: e(Named::Delta),
            exterior: exterior_exponent(ctx),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub group: String,
    pub strategy: NuStrategy,
    pub orders: Option<OrderSummary>,
    pub exponents: Option<ExponentSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub resource_limit: bool,
}

impl EntryReport {
    pub(crate) fn new(group: &str, strategy: NuStrategy) -> Self {
        EntryReport {
            group: group.to_string(),
            strategy,
            orders: None,
            exponents: None,
            error: None,
            checks: Vec::new(),
            resource_limit: false,
        }
    }

    pub(crate) fn record_error(&mut self, msg: String, limit: bool) {
        self.error = Some(msg);
        self.resource_limit = limit;
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        self.write_markdown(&mut s);
        s
    }

    fn write_markdown(&self, s: &mut String) {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(s, "## {} (strategy {}): {verdict}\n", self.group, self.strategy);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "Error: {e}\n");
        }
        if let Some(o) = &self.orders {
            s.push_str("| nu | theta | upsilon1 | upsilon2 | upsilon3 | mu | delta | nu' |\n");
            s.push_str("|---|---|---|---|---|---|---|---|\n");
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                o.nu, o.theta, o.upsilon1, o.upsilon2, o.upsilon3, o.mu, o.delta, o.derived
            );
        }
        if let Some(e) = &self.exponents {
            let ext = e.exterior.map_or("-".to_string(), |x| x.to_string());
            let _ = writeln!(
                s,
                "Exponents: G {}, nu {}, upsilon1 {}, nu' {}, mu {}, delta {}, upsilon1/delta {ext}\n",
                e.base, e.nu, e.upsilon1, e.derived, e.mu, e.delta
            );
        }
        for c in &self.checks {
            let _ = write!(s, "### {}: {}", c.name, c.status);
            if let Some(r) = &c.reason {
                let _ = write!(s, " ({r})");
            }
            if let Some(seed) = c.seed {
                let _ = write!(s, ", seed {seed}");
            }
            if let Some(ms) = c.ms {
                let _ = write!(s, ", {ms} ms");
            }
            s.push_str("\n\n");
            for d in &c.details {
                let mark = match d.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                let _ = writeln!(s, "- [{mark}] {}: {}", d.name, d.detail);
                if let Some(w) = &d.witness {
                    let _ = writeln!(s, "  - witness points {:?}, words {}", w.points, w.words.join(" ; "));
                }
            }
            s.push('\n');
        }
    }
}

/// Aggregate of a corpus run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }

    pub fn resource_limit(&self) -> bool {
        self.entries.iter().any(|e| e.resource_limit)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("# Verification report\n\n");
        let _ = writeln!(s, "Seed {}, {} entries.\n", self.seed, self.entries.len());
        for e in &self.entries {
            e.write_markdown(&mut s);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::corpus::{corpus_entries, run_entry, RunOptions};

    #[test]
    fn json_schema_keys() {
        let e = corpus_entries(None).into_iter().find(|e| e.name == "C3").unwrap();
        let r = run_entry(&e, &RunOptions::all_checks());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in ["group", "strategy", "orders", "exponents", "checks"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        for k in ["nu", "theta", "upsilon1", "upsilon2", "upsilon3", "mu", "delta", "derived"] {
            assert!(v["orders"].get(k).is_some(), "{k}");
        }
        for c in v["checks"].as_array().unwrap() {
            for k in ["name", "status", "details", "seed", "ms"] {
                assert!(c.get(k).is_some(), "{k}");
            }
        }
        assert_eq!(v["strategy"], "gens");
        assert!(r.to_markdown().starts_with("## C3 (strategy gens): pass"));
    }
}
