//! Machine checks of the structural identities of `nu(G)`, a built-in corpus
//! of test groups and JSON / markdown reports.

mod checks;
mod corpus;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::kernel::CayleyEngine;
use crate::nu::{Named, NuContext};

pub use corpus::{corpus_entries, run_corpus, run_entry, CorpusEntry, Include, RunOptions, Weight, BUILTIN_CORPUS, CROSS_CHECK_CAP};
pub use report::{CorpusReport, EntryReport, ExponentSummary, OrderSummary};

/// Environment variable enabling wall-clock timings in reports.
pub const TIMINGS_ENV: &str = "NU_REPORT_TIMINGS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    TheoremA,
    TheoremB,
    TheoremC,
    Lemma21,
    Lemma31,
    Biderivation,
    Lemma23,
    Prop25,
    Exponents,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::TheoremA,
        CheckKind::TheoremB,
        CheckKind::TheoremC,
        CheckKind::Lemma21,
        CheckKind::Lemma31,
        CheckKind::Biderivation,
        CheckKind::Lemma23,
        CheckKind::Prop25,
        CheckKind::Exponents,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CheckKind::TheoremA => "thmA",
            CheckKind::TheoremB => "thmB",
            CheckKind::TheoremC => "thmC",
            CheckKind::Lemma21 => "lemma21",
            CheckKind::Lemma31 => "lemma31",
            CheckKind::Biderivation => "biderivation",
            CheckKind::Lemma23 => "lemma23",
            CheckKind::Prop25 => "prop25",
            CheckKind::Exponents => "exponents",
        }
    }

    /// Parses a comma-separated list, or `all`. Duplicates collapse and the
    /// canonical order is kept.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>, UnknownCheck> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<CheckKind> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn run(self, ctx: &NuContext, cfg: &VerifyConfig) -> CheckResult {
        match self {
            CheckKind::TheoremA => checks::theorem_a(ctx, cfg),
            CheckKind::TheoremB => checks::theorem_b(ctx, cfg),
            CheckKind::TheoremC => checks::theorem_c(ctx, cfg),
            CheckKind::Lemma21 => checks::lemma21(ctx, cfg),
            CheckKind::Lemma31 => checks::lemma31(ctx, cfg),
            CheckKind::Biderivation => checks::biderivation(ctx, cfg),
            CheckKind::Lemma23 => checks::lemma23(ctx, cfg),
            CheckKind::Prop25 => checks::prop25(ctx, cfg),
            CheckKind::Exponents => checks::exponents(ctx, cfg),
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`; expected one of thmA, thmB, thmC, lemma21, lemma31, biderivation, lemma23, prop25, exponents or all")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckKind {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Offending elements of `nu`, as points and as words in its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub points: Vec<u32>,
    pub words: Vec<String>,
}

impl Witness {
    pub fn new(nu: &CayleyEngine, points: Vec<u32>) -> Self {
        let words = points
            .iter()
            .map(|&p| nu.word_for(p).display(nu.gen_names()).to_string())
            .collect();
        Witness { points, words }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub details: Vec<SubCheck>,
    pub seed: Option<u64>,
    pub ms: Option<u64>,
}

impl CheckResult {
    fn from_subs(kind: CheckKind, details: Vec<SubCheck>) -> Self {
        Self::named(kind.label(), details)
    }

    pub(crate) fn named(name: &str, details: Vec<SubCheck>) -> Self {
        let status = if details.iter().any(|d| d.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckResult {
            name: name.to_string(),
            status,
            reason: None,
            details,
            seed: None,
            ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// First failing sub-check.
    pub fn first_failure(&self) -> Option<&SubCheck> {
        self.details.iter().find(|d| d.status == Status::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub lemma23_trials: usize,
    pub lemma23_max_s: usize,
    pub biderivation_samples: u64,
    /// Largest `|G|` for the all-elements sweeps of the commutator identities.
    pub element_sweep_cap: usize,
    /// Largest `|nu'|` for the pairwise Engel check.
    pub engel_cap: usize,
    /// Assert equality, not only divisibility, in the odd-prime exponent bound.
    pub expect_exponent_equality: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            lemma23_trials: 1000,
            lemma23_max_s: 5,
            biderivation_samples: 100_000,
            element_sweep_cap: 8,
            engel_cap: 1000,
            expect_exponent_equality: false,
        }
    }
}

pub fn timings_enabled() -> bool {
    std::env::var(TIMINGS_ENV).is_ok_and(|v| v == "1")
}

pub fn run_check(ctx: &NuContext, kind: CheckKind, cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut res = kind.run(ctx, cfg);
    if timings_enabled() {
        res.ms = Some(start.elapsed().as_millis() as u64);
    }
    res
}

pub fn run_checks(ctx: &NuContext, kinds: &[CheckKind], cfg: &VerifyConfig) -> Vec<CheckResult> {
    kinds.iter().map(|&k| run_check(ctx, k, cfg)).collect()
}

/// A copy of `ctx` with one stored subgroup deliberately replaced, chosen so
/// that `kind` must fail on a non-abelian `G`.
pub fn negative_control(ctx: &NuContext, kind: CheckKind) -> NuContext {
    let s = |n: Named| ctx.subgroup(n).clone();
    let (name, replacement) = match kind {
        CheckKind::TheoremA | CheckKind::Lemma21 | CheckKind::TheoremC => (Named::Upsilon2, s(Named::Theta)),
        CheckKind::TheoremB => (Named::Upsilon1, s(Named::Theta)),
        CheckKind::Lemma31 => (Named::Base, ctx.nu().whole()),
        CheckKind::Biderivation | CheckKind::Lemma23 => (Named::Upsilon2, s(Named::Delta)),
        CheckKind::Prop25 => (Named::Theta, s(Named::Upsilon2)),
        CheckKind::Exponents => (Named::Upsilon1, s(Named::Base)),
    };
    ctx.with_subgroup(name, replacement)
}
