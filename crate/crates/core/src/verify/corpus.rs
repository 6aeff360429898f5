use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{EntryReport, ExponentSummary, OrderSummary};
use super::{run_checks, timings_enabled, CheckKind, CheckResult, Status, SubCheck, VerifyConfig};
use crate::coset_enum::enumerate_with;
use crate::kernel::{to_regular_engine, CayleyEngine};
use crate::nu::{build_nu_from_engine, Named, NuContext, NuOptions, NuStrategy};
use crate::presentation::{parse_presentation, Presentation};
use crate::tensor::tensor_square;

/// Built-in corpus in the presentation DSL.
pub const BUILTIN_CORPUS: &str = "\
group C1 = < a | a >
group C2 = < a | a^2 >
group C3 = < a | a^3 >
group C4 = < a | a^4 >
group C2xC2 = < a, b | a^2, b^2, [a,b] >
group C6 = < a | a^6 >
group S3 = < a, b | a^2, b^2, (a*b)^3 >
group D4 = < a, b | a^4, b^2, (a*b)^2 >
group Q8 = < a, b | a^4, a^2 = b^2, b^-1*a*b*a >
group C3xC3 = < a, b | a^3, b^3, [a,b] >
group D6 = < a, b | a^6, b^2, (a*b)^2 >
group A4 = < a, b | a^2, b^3, (a*b)^3 >
# extraspecial of order 27 and exponent 3
group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >
# binary icosahedral group
group SL2_5 = < s, t | (s*t)^2 = s^3, s^3 = t^5 >
";

/// Largest `|G|` for the strategy and tensor-oracle cross-checks.
pub const CROSS_CHECK_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Light,
    Heavy,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: Presentation,
    pub expected_order: Option<usize>,
    pub expected_exponent: Option<usize>,
    pub weight: Weight,
    /// The odd-prime exponent bound is attained.
    pub exponent_bound_attained: bool,
}

struct Expectation {
    name: &'static str,
    order: usize,
    exponent: Option<usize>,
    weight: Weight,
    bound_attained: bool,
}

const fn light(name: &'static str, order: usize) -> Expectation {
    Expectation {
        name,
        order,
        exponent: None,
        weight: Weight::Light,
        bound_attained: false,
    }
}

const EXPECTATIONS: [Expectation; 14] = [
    light("C1", 1),
    light("C2", 2),
    light("C3", 3),
    light("C4", 4),
    light("C2xC2", 4),
    light("C6", 6),
    light("S3", 6),
    light("D4", 8),
    light("Q8", 8),
    light("C3xC3", 9),
    light("D6", 12),
    light("A4", 12),
    Expectation {
        name: "H27",
        order: 27,
        exponent: Some(3),
        weight: Weight::Heavy,
        bound_attained: true,
    },
    Expectation {
        name: "SL2_5",
        order: 120,
        exponent: None,
        weight: Weight::Heavy,
        bound_attained: false,
    },
];

/// The built-in corpus; groups in `overrides` replace built-in
/// presentations of the same name, and new names are appended as light
/// entries without expectations.
pub fn corpus_entries(overrides: Option<&[Presentation]>) -> Vec<CorpusEntry> {
    let builtin = parse_presentation(BUILTIN_CORPUS).expect("built-in corpus parses");
    let mut out: Vec<CorpusEntry> = EXPECTATIONS
        .iter()
        .map(|e| {
            let presentation = overrides
                .and_then(|o| o.iter().find(|p| p.name == e.name))
                .or_else(|| builtin.iter().find(|p| p.name == e.name))
                .expect("every expectation has a presentation")
                .clone();
            CorpusEntry {
                name: e.name.to_string(),
                presentation,
                expected_order: Some(e.order),
                expected_exponent: e.exponent,
                weight: e.weight,
                exponent_bound_attained: e.bound_attained,
            }
        })
        .collect();
    for p in overrides.unwrap_or(&[]) {
        if !out.iter().any(|e| e.name == p.name) {
            out.push(CorpusEntry::unchecked(p.clone()));
        }
    }
    out
}

impl CorpusEntry {
    /// An entry without expected data.
    pub fn unchecked(presentation: Presentation) -> Self {
        CorpusEntry {
            name: presentation.name.clone(),
            presentation,
            expected_order: None,
            expected_exponent: None,
            weight: Weight::Light,
            exponent_bound_attained: false,
        }
    }
}

/// Entry selection for a corpus run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Include {
    /// Light entries, plus heavy ones when requested.
    Default,
    None,
    Names(Vec<String>),
}

impl Include {
    pub fn parse(s: &str) -> Self {
        match s.trim() {
            "none" => Include::None,
            "" | "all" => Include::Default,
            list => Include::Names(list.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()),
        }
    }

    /// Selected entries, in corpus order. Naming an unknown entry, or a heavy
    /// one without `heavy`, is an error.
    pub fn select(&self, entries: Vec<CorpusEntry>, heavy: bool) -> Result<Vec<CorpusEntry>, String> {
        match self {
            Include::None => Ok(Vec::new()),
            Include::Default => Ok(entries.into_iter().filter(|e| heavy || e.weight == Weight::Light).collect()),
            Include::Names(names) => {
                for n in names {
                    match entries.iter().find(|e| &e.name == n) {
                        None => return Err(format!("unknown corpus entry `{n}`")),
                        Some(e) if e.weight == Weight::Heavy && !heavy => {
                            return Err(format!("`{n}` is a heavy entry; pass --heavy"))
                        }
                        Some(_) => {}
                    }
                }
                Ok(entries.into_iter().filter(|e| names.contains(&e.name)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub nu: NuOptions,
    pub checks: Vec<CheckKind>,
    pub verify: VerifyConfig,
}

impl RunOptions {
    pub fn all_checks() -> Self {
        RunOptions {
            checks: CheckKind::ALL.to_vec(),
            ..RunOptions::default()
        }
    }
}

fn sub(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> SubCheck {
    SubCheck {
        name: name.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
        witness: None,
    }
}

fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let start = Instant::now();
    let mut r = f();
    if timings_enabled() {
        r.ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

fn gate(entry: &CorpusEntry, base: &CayleyEngine) -> CheckResult {
    let mut details = Vec::new();
    if let Some(n) = entry.expected_order {
        details.push(sub("order", base.order() == n, format!("enumerated {}, expected {n}", base.order())));
    }
    if let Some(e) = entry.expected_exponent {
        let got = base.exponent(&base.whole());
        details.push(sub("exponent", got == e, format!("computed {got}, expected {e}")));
    }
    let mut r = CheckResult::named("gate", details);
    if r.details.is_empty() {
        r.status = Status::Skipped;
        r.reason = Some("no expected data".into());
    }
    r
}

fn strategy_agreement(ctx: &NuContext, pres: &Presentation, opts: &NuOptions) -> CheckResult {
    let other = match ctx.strategy() {
        NuStrategy::Gens => NuStrategy::Cayley,
        NuStrategy::Cayley => NuStrategy::Gens,
    };
    let built = build_nu_from_engine(pres, ctx.base().clone(), NuOptions { strategy: other, ..*opts });
    let detail = match built {
        Ok(alt) => {
            let (a, b) = (ctx.nu().fingerprint_whole(), alt.nu().fingerprint_whole());
            sub(
                format!("fingerprint({}) = fingerprint({other})", ctx.strategy()),
                a == b,
                format!("orders {} and {}", a.order, b.order),
            )
        }
        Err(e) => sub(format!("build with {other}"), false, e.to_string()),
    };
    CheckResult::named("strategies", vec![detail])
}

fn tensor_oracle(ctx: &NuContext, opts: &NuOptions) -> CheckResult {
    let base = ctx.base();
    let details = match tensor_square(base, opts.limits) {
        Ok(t) => {
            let u1 = ctx.upsilon1_engine().engine.fingerprint_whole();
            let tf = t.engine.fingerprint_whole();
            let n = base.order();
            vec![
                sub("|upsilon1| = |G (x) G|", u1.order == tf.order, format!("{} and {}", u1.order, tf.order)),
                sub("fingerprint(upsilon1) = fingerprint(G (x) G)", u1 == tf, format!("{tf:?}")),
                sub(
                    "|nu| = |G|^2 |G (x) G|",
                    ctx.nu().order() == n * n * tf.order,
                    format!("{} = {n}^2 * {}", ctx.nu().order(), tf.order),
                ),
            ]
        }
        Err(e) => vec![sub("tensor oracle", false, e.to_string())],
    };
    CheckResult::named("tensor-oracle", details)
}

fn skipped_all(kinds: &[CheckKind], reason: &str) -> Vec<CheckResult> {
    kinds
        .iter()
        .map(|k| {
            let mut r = CheckResult::named(k.label(), Vec::new());
            r.status = Status::Skipped;
            r.reason = Some(reason.to_string());
            r
        })
        .collect()
}

/// Enumerates, gates, builds and checks one entry.
pub fn run_entry(entry: &CorpusEntry, opts: &RunOptions) -> EntryReport {
    let mut report = EntryReport::new(&entry.name, opts.nu.strategy);
    let pres = &entry.presentation;
    let base = match enumerate_with(pres, opts.nu.limits, opts.nu.enumeration) {
        Ok(t) => Arc::new(to_regular_engine(t, pres)),
        Err(e) => {
            report.record_error(e.to_string(), e.is_limit());
            report.checks = skipped_all(&opts.checks, "enumeration of G failed");
            return report;
        }
    };
    let gate = timed(|| gate(entry, &base));
    let gate_failed = gate.status == Status::Fail;
    report.checks.push(gate);
    if gate_failed {
        report.checks.extend(skipped_all(&opts.checks, "order gate failed"));
        return report;
    }
    let ctx = match build_nu_from_engine(pres, base, opts.nu) {
        Ok(c) => c,
        Err(e) => {
            report.record_error(e.to_string(), e.is_limit());
            report.checks.extend(skipped_all(&opts.checks, "construction of nu failed"));
            return report;
        }
    };
    report.orders = Some(OrderSummary::of(&ctx));
    report.exponents = Some(ExponentSummary::of(&ctx));
    if ctx.base().order() <= CROSS_CHECK_CAP {
        report.checks.push(timed(|| strategy_agreement(&ctx, pres, &opts.nu)));
        report.checks.push(timed(|| tensor_oracle(&ctx, &opts.nu)));
    }
    let cfg = VerifyConfig {
        expect_exponent_equality: entry.exponent_bound_attained,
        ..opts.verify.clone()
    };
    report.checks.extend(run_checks(&ctx, &opts.checks, &cfg));
    report
}

/// Runs entries on independent workers; the report keeps corpus order.
pub fn run_corpus(entries: &[CorpusEntry], opts: &RunOptions) -> Vec<EntryReport> {
    entries.par_iter().map(|e| run_entry(e, opts)).collect()
}

/// Exponent of `Upsilon1 / Delta`, or `None` when the quotient is undefined.
pub(crate) fn exterior_exponent(ctx: &NuContext) -> Option<usize> {
    let nu = ctx.nu();
    let q = nu.quotient_engine(ctx.subgroup(Named::Upsilon1), ctx.subgroup(Named::Delta)).ok()?;
    Some(q.engine.exponent(&q.engine.whole()))
}
