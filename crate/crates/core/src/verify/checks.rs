use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckKind, CheckResult, Status, SubCheck, VerifyConfig, Witness};
use crate::coset_enum::EnumLimits;
use crate::kernel::{direct_product_engine, factorize, CayleyEngine, KernelError, SubgroupSet};
use crate::nu::{Named, NuContext};
use crate::tensor::{biderivation_check, tensor_square, BIDERIVATION_EXHAUSTIVE_CAP, TENSOR_CAP};

/// A failed sub-check: what went wrong and the offending points of `nu`.
pub(crate) struct Failure {
    detail: String,
    points: Vec<u32>,
}

type Outcome = Result<String, Failure>;

fn fail<T>(detail: impl Into<String>, points: Vec<u32>) -> Result<T, Failure> {
    Err(Failure {
        detail: detail.into(),
        points,
    })
}

struct Recorder<'a> {
    nu: &'a CayleyEngine,
    subs: Vec<SubCheck>,
}

impl<'a> Recorder<'a> {
    fn new(nu: &'a CayleyEngine) -> Self {
        Recorder { nu, subs: Vec::new() }
    }

    fn sub(&mut self, name: impl Into<String>, outcome: Outcome) {
        let name = name.into();
        self.subs.push(match outcome {
            Ok(detail) => SubCheck {
                name,
                status: Status::Pass,
                detail,
                witness: None,
            },
            Err(f) => SubCheck {
                name,
                status: Status::Fail,
                detail: f.detail,
                witness: Some(Witness::new(self.nu, f.points)),
            },
        });
    }

    fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.subs.push(SubCheck {
            name: name.into(),
            status: Status::Skipped,
            detail: reason.into(),
            witness: None,
        });
    }

    fn finish(self, kind: CheckKind) -> CheckResult {
        CheckResult::from_subs(kind, self.subs)
    }
}

fn same(what: &str, a: &SubgroupSet, b: &SubgroupSet) -> Result<(), Failure> {
    if a.same_points(b) {
        return Ok(());
    }
    let w = a.first_outside(b).or_else(|| b.first_outside(a)).into_iter().collect();
    fail(format!("{what}: orders {} and {} differ as point sets", a.order(), b.order()), w)
}

fn contained(what: &str, a: &SubgroupSet, b: &SubgroupSet) -> Result<(), Failure> {
    match a.first_outside(b) {
        None => Ok(()),
        Some(p) => fail(format!("{what}: point {p} lies outside"), vec![p]),
    }
}

fn commuting(nu: &CayleyEngine, what: &str, xs: &[u32], ys: &[u32]) -> Result<(), Failure> {
    match nu.noncommuting_pair(xs, ys) {
        None => Ok(()),
        Some((x, y)) => fail(format!("{what}: generators {x} and {y} do not commute"), vec![x, y]),
    }
}

fn normal(nu: &CayleyEngine, what: &str, h: &SubgroupSet) -> Result<(), Failure> {
    match nu.normality_witness(h, &nu.gen_points()) {
        None => Ok(()),
        Some((x, c)) => fail(format!("{what}: conjugate of {x} by {c} leaves the subgroup"), vec![x, c]),
    }
}

fn kernel_failure(what: &str, e: KernelError) -> Failure {
    let points = match &e {
        KernelError::NotClosed { a, b, product, .. } => vec![*a, *b, *product],
        KernelError::NotNormal { element, conjugator } => vec![*element, *conjugator],
        KernelError::NotContained(p) => vec![*p],
        KernelError::NotAbelian { a, b } => vec![*a, *b],
        _ => Vec::new(),
    };
    Failure {
        detail: format!("{what}: {e}"),
        points,
    }
}

fn product(nu: &CayleyEngine, parts: &[&SubgroupSet]) -> Result<SubgroupSet, Failure> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = nu.product_set(&acc, p).map_err(|e| kernel_failure("product of subgroups", e))?;
    }
    Ok(acc)
}

fn at(series: &[SubgroupSet], k: usize) -> &SubgroupSet {
    &series[k.min(series.len() - 1)]
}

fn base_derived(ctx: &NuContext) -> SubgroupSet {
    let b = ctx.base();
    b.commutator_subgroup(&b.whole(), &b.whole())
}

fn base_ab_invariants(ctx: &NuContext) -> Vec<u64> {
    let b = ctx.base();
    let q = b.quotient_engine(&b.whole(), &base_derived(ctx)).expect("derived subgroup is normal");
    q.engine.abelian_invariants(&q.engine.whole()).expect("abelianization")
}

/// `[[a, b], c]`.
fn comm3(nu: &CayleyEngine, a: u32, b: u32, c: u32) -> u32 {
    nu.comm(nu.comm(a, b), c)
}

pub(crate) fn lemma21(ctx: &NuContext, _cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let mut r = Recorder::new(nu);
    let u1 = ctx.subgroup(Named::Upsilon1);
    let u2 = ctx.subgroup(Named::Upsilon2);
    let u3 = ctx.subgroup(Named::Upsilon3);
    let theta = ctx.subgroup(Named::Theta);

    r.sub("(a) upsilon1, upsilon2, upsilon3 normal in nu", (|| {
        normal(nu, "upsilon1", u1)?;
        normal(nu, "upsilon2", u2)?;
        normal(nu, "upsilon3", u3)?;
        Ok("all conjugates by nu generators stay inside".into())
    })());
    let (g2, g3) = ctx.upsilon_generator_forms();
    r.sub("(b) generator forms, contained in theta", (|| {
        same("upsilon2 versus <[g,h][h,g^phi]>", u2, &g2)?;
        same("upsilon3 versus <[g^phi,h^phi][h^phi,g]>", u3, &g3)?;
        contained("upsilon2 <= theta", u2, theta)?;
        contained("upsilon3 <= theta", u3, theta)?;
        Ok(format!("|upsilon2| = {}, |upsilon3| = {}, |theta| = {}", u2.order(), u3.order(), theta.order()))
    })());
    r.sub("(c) [upsilon2, G^phi] = 1 = [upsilon3, G]", (|| {
        commuting(nu, "[upsilon2, G^phi]", u2.gens(), ctx.subgroup(Named::BasePhi).gens())?;
        commuting(nu, "[upsilon3, G]", u3.gens(), ctx.subgroup(Named::Base).gens())?;
        Ok("generators commute".into())
    })());
    r.sub("(d) upsilon_i pairwise commute", (|| {
        commuting(nu, "[upsilon1, upsilon2]", u1.gens(), u2.gens())?;
        commuting(nu, "[upsilon1, upsilon3]", u1.gens(), u3.gens())?;
        commuting(nu, "[upsilon2, upsilon3]", u2.gens(), u3.gens())?;
        Ok("generators commute".into())
    })());
    r.sub("psi(upsilon2) = upsilon3", (|| {
        same("psi(upsilon2) versus upsilon3", &ctx.psi().image_of(u2), u3)?;
        Ok("swap automorphism exchanges them".into())
    })());
    r.finish(CheckKind::Lemma21)
}

/// Elements of the stored copy of `G` with their swaps.
fn base_pairs(ctx: &NuContext, all: bool) -> Vec<(u32, u32)> {
    let g = ctx.subgroup(Named::Base);
    let src: &[u32] = if all { g.points() } else { g.gens() };
    src.iter().map(|&p| (p, ctx.psi().apply(p))).collect()
}

fn lemma31_a(ctx: &NuContext, els: &[(u32, u32)]) -> Outcome {
    let nu = ctx.nu();
    let mut count = 0usize;
    for &(g, _) in els {
        for &(_, hf) in els {
            let c = nu.comm(g, hf);
            for &(x, _) in els {
                for &(y, yf) in els {
                    let lhs = nu.conj(c, nu.comm(x, yf));
                    let rhs = nu.conj(c, nu.comm(x, y));
                    if lhs != rhs {
                        return fail("[g,h^phi]^[x,y^phi] != [g,h^phi]^[x,y]", vec![g, hf, x, y]);
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instantiations"))
}

fn lemma31_b(ctx: &NuContext, els: &[(u32, u32)]) -> Outcome {
    let nu = ctx.nu();
    let mut count = 0usize;
    for &(g, gf) in els {
        for &(h, hf) in els {
            for &(x, xf) in els {
                let forms = [
                    comm3(nu, g, hf, xf),
                    comm3(nu, g, h, xf),
                    comm3(nu, g, hf, x),
                    comm3(nu, gf, h, xf),
                    comm3(nu, gf, hf, x),
                    comm3(nu, gf, h, x),
                ];
                if let Some(i) = forms.iter().position(|&f| f != forms[0]) {
                    return fail(format!("six-fold equality breaks at form {}", i + 1), vec![g, h, x]);
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} instantiations"))
}

pub(crate) fn lemma31(ctx: &NuContext, cfg: &VerifyConfig) -> CheckResult {
    let mut r = Recorder::new(ctx.nu());
    let gens = base_pairs(ctx, false);
    r.sub("(a) conjugation by [x,y^phi] equals conjugation by [x,y], generators", lemma31_a(ctx, &gens));
    r.sub("(b) six-fold equality, generators", lemma31_b(ctx, &gens));
    let order = ctx.subgroup(Named::Base).order();
    if order <= cfg.element_sweep_cap {
        let all = base_pairs(ctx, true);
        r.sub("(a) all elements", lemma31_a(ctx, &all));
        r.sub("(b) all elements", lemma31_b(ctx, &all));
    } else {
        let why = format!("|G| = {order} exceeds {}", cfg.element_sweep_cap);
        r.skip("(a) all elements", why.clone());
        r.skip("(b) all elements", why);
    }
    r.finish(CheckKind::Lemma31)
}

pub(crate) fn biderivation(ctx: &NuContext, cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let mut r = Recorder::new(nu);
    let rep = biderivation_check(base, |g, h| ctx.gamma(g, h), nu, BIDERIVATION_EXHAUSTIVE_CAP, cfg.biderivation_samples, cfg.seed);
    let mode = if rep.exhaustive { "exhaustive" } else { "sampled" };
    r.sub("Gamma satisfies both axioms", match &rep.failure {
        None => Ok(format!("{} quadruples ({mode})", rep.quadruples)),
        Some(f) => {
            let pts = match *f {
                crate::tensor::BiderivationFailure::Left { a, a1, b } => vec![ctx.embed(a), ctx.embed(a1), ctx.embed(b)],
                crate::tensor::BiderivationFailure::Right { a, b, b1 } => vec![ctx.embed(a), ctx.embed(b), ctx.embed(b1)],
            };
            fail(format!("{f:?}"), pts)
        }
    });
    let u2 = ctx.subgroup(Named::Upsilon2);
    r.sub("Gamma takes values in upsilon2", (|| {
        for g in base.points() {
            for h in base.points() {
                let v = ctx.gamma(g, h);
                if !u2.contains(v) {
                    return fail(format!("Gamma({g}, {h}) lies outside upsilon2"), vec![v]);
                }
            }
        }
        Ok(format!("{} values", base.order() * base.order()))
    })());
    if base.order() <= TENSOR_CAP {
        r.sub("j into the tensor oracle satisfies both axioms", match tensor_square(base, EnumLimits::default()) {
            Ok(t) => {
                let rep = biderivation_check(base, |g, h| t.symbol(g, h), &t.engine, BIDERIVATION_EXHAUSTIVE_CAP, cfg.biderivation_samples, cfg.seed);
                match rep.failure {
                    None => Ok(format!("{} quadruples", rep.quadruples)),
                    Some(f) => fail(format!("{f:?}"), Vec::new()),
                }
            }
            Err(e) => fail(format!("tensor oracle: {e}"), Vec::new()),
        });
    } else {
        r.skip("j into the tensor oracle satisfies both axioms", format!("|G| = {} exceeds {TENSOR_CAP}", base.order()));
    }
    let mut res = r.finish(CheckKind::Biderivation);
    if !rep.exhaustive {
        res.seed = Some(cfg.seed);
    }
    res
}

/// `Gamma*` evaluated at a point of `Upsilon1`.
fn gamma_star_at(ctx: &NuContext, p: u32) -> Option<u32> {
    let q = ctx.upsilon1_engine().project(p);
    (q != u32::MAX).then(|| ctx.gamma_star().apply(q))
}

pub(crate) fn lemma23(ctx: &NuContext, cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let n = base.order() as u32;
    let mut r = Recorder::new(nu);
    let u2 = ctx.subgroup(Named::Upsilon2);
    r.sub("s = 1: Gamma*([x,y^phi]) = [x,y][y,x^phi]", (|| {
        for x in 0..n {
            for y in 0..n {
                let a = nu.comm(ctx.embed(x), ctx.embed_phi(y));
                if gamma_star_at(ctx, a) != Some(ctx.gamma(x, y)) {
                    return fail(format!("generator formula fails for ({x}, {y})"), vec![a]);
                }
            }
        }
        Ok(format!("{} pairs", n * n))
    })());
    r.sub("empty product maps to the identity", match gamma_star_at(ctx, 0) {
        Some(0) => Ok("Gamma*(1) = 1".into()),
        other => fail(format!("Gamma*(1) = {other:?}"), vec![0]),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let psi = ctx.psi();
    let rho = ctx.rho();
    let mut values = Vec::new();
    let outcome = (|| {
        for t in 0..cfg.lemma23_trials {
            let s = rng.gen_range(1..=cfg.lemma23_max_s);
            let alphas: Vec<u32> = (0..s)
                .map(|_| {
                    let c = nu.comm(ctx.embed(rng.gen_range(0..n)), ctx.embed_phi(rng.gen_range(0..n)));
                    if rng.gen_bool(0.5) { c } else { nu.inv(c) }
                })
                .collect();
            let prod = nu.product(&alphas);
            let lhs = match gamma_star_at(ctx, prod) {
                Some(v) => v,
                None => return fail(format!("trial {t}: product lies outside upsilon1"), vec![prod]),
            };
            let swapped: Vec<u32> = alphas.iter().rev().map(|&a| nu.inv(psi.apply(a))).collect();
            let folded: Vec<u32> = alphas.iter().map(|&a| ctx.embed(rho.apply(a))).collect();
            let rhs = nu.mul(nu.product(&swapped), nu.product(&folded));
            if lhs != rhs {
                return fail(format!("trial {t} with s = {s}: Gamma*(prod) != prod Psi^-1 * prod rho"), alphas);
            }
            values.push(lhs);
        }
        Ok(format!("{} random tuples, s <= {}", cfg.lemma23_trials, cfg.lemma23_max_s))
    })();
    r.sub(format!("random tuples (seed {})", cfg.seed), outcome);
    r.sub("Gamma* values lie in upsilon2", match values.iter().find(|&&v| !u2.contains(v)) {
        None => Ok(format!("{} values", values.len())),
        Some(&v) => fail("value outside upsilon2", vec![v]),
    });
    let mut res = r.finish(CheckKind::Lemma23);
    res.seed = Some(cfg.seed);
    res
}

pub(crate) fn theorem_a(ctx: &NuContext, _cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let mut r = Recorder::new(nu);
    let u = [ctx.subgroup(Named::Upsilon1), ctx.subgroup(Named::Upsilon2), ctx.subgroup(Named::Upsilon3)];
    let mu = ctx.subgroup(Named::Mu);
    let derived = ctx.subgroup(Named::Derived);

    r.sub("(1) Gamma* certified bijection upsilon1 -> upsilon2", (|| {
        let gs = ctx.gamma_star();
        let k = gs.kernel();
        if !k.is_trivial() {
            let p = ctx.upsilon1_engine().lift(k.points()[1]);
            return fail("Gamma* has a non-trivial kernel", vec![p]);
        }
        same("Gamma*(upsilon1) versus upsilon2", &gs.image(), u[1])?;
        same("psi(upsilon2) versus upsilon3", &ctx.psi().image_of(u[1]), u[2])?;
        Ok(format!("graph order {} = |upsilon1|, image = upsilon2", gs.graph_order()))
    })());
    r.sub("(2) |upsilon1| = |upsilon2| = |upsilon3|", {
        let o: Vec<usize> = u.iter().map(|s| s.order()).collect();
        if o[0] == o[1] && o[1] == o[2] {
            Ok(format!("{}", o[0]))
        } else {
            let w = u[0].first_outside(u[1]).or(u[1].first_outside(u[2])).into_iter().collect();
            fail(format!("orders {o:?}"), w)
        }
    });
    r.sub("(3) nu' = upsilon1 upsilon2 upsilon3", (|| {
        let p = product(nu, &u)?;
        same("nu' versus the product", derived, &p)?;
        Ok(format!("|nu'| = {}", derived.order()))
    })());
    r.sub("(4) pairwise commuting", (|| {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            commuting(nu, &format!("[upsilon{}, upsilon{}]", i + 1, j + 1), u[i].gens(), u[j].gens())?;
        }
        Ok("generators commute".into())
    })());
    r.sub("(5) upsilon_i ∩ upsilon_j upsilon_k = mu, mu central", (|| {
        for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
            let jk = product(nu, &[u[j], u[k]])?;
            same(&format!("upsilon{} ∩ upsilon{} upsilon{} versus mu", i + 1, j + 1, k + 1), &nu.intersection(u[i], &jk), mu)?;
        }
        commuting(nu, "mu against nu", mu.gens(), &nu.gen_points())?;
        Ok(format!("|mu| = {}", mu.order()))
    })());
    r.sub("(6) nu'/mu fingerprint equals (G')^3, |nu'| = |mu| |G'|^3", (|| {
        let base = ctx.base();
        let gd = base_derived(ctx);
        let expected_order = mu.order() * gd.order().pow(3);
        if derived.order() != expected_order {
            let w = derived.points().last().copied().into_iter().collect();
            return fail(format!("|nu'| = {} but |mu| |G'|^3 = {expected_order}", derived.order()), w);
        }
        let q = nu.quotient_engine(derived, mu).map_err(|e| kernel_failure("nu'/mu", e))?;
        let gd_engine = base.sub_engine(&gd, gd.gens()).map_err(|e| kernel_failure("G'", e))?;
        let cube = direct_product_engine(&[&gd_engine.engine, &gd_engine.engine, &gd_engine.engine])
            .map_err(|e| kernel_failure("(G')^3", e))?;
        let (fq, fc) = (q.engine.fingerprint_whole(), cube.fingerprint_whole());
        if fq != fc {
            return fail(format!("fingerprints differ: {fq:?} versus {fc:?}"), Vec::new());
        }
        Ok(format!("fingerprint-isomorphic, order {expected_order}"))
    })());
    r.sub("(7) mu = upsilon_i ∩ upsilon_j", (|| {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            same(&format!("upsilon{} ∩ upsilon{} versus mu", i + 1, j + 1), &nu.intersection(u[i], u[j]), mu)?;
        }
        Ok("all three pairs".into())
    })());
    r.finish(CheckKind::TheoremA)
}

pub(crate) fn theorem_b(ctx: &NuContext, _cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let mut r = Recorder::new(nu);
    let nu_series = nu.derived_series(&nu.whole());
    let u_series: Vec<Vec<SubgroupSet>> = [Named::Upsilon1, Named::Upsilon2, Named::Upsilon3]
        .iter()
        .map(|&n| nu.derived_series(ctx.subgroup(n)))
        .collect();
    let g_series = base.derived_series(&base.whole());
    let g_embed: Vec<SubgroupSet> = g_series.iter().map(|s| ctx.embed_subgroup(s)).collect();
    let gphi_embed: Vec<SubgroupSet> = g_series.iter().map(|s| ctx.embed_phi_subgroup(s)).collect();
    let kmax = nu_series.len().max(u_series.iter().map(|s| s.len()).max().unwrap());
    for k in 0..kmax {
        let lhs = at(&nu_series, k + 1);
        r.sub(format!("k = {k}: nu^({}) = product of upsilon_i^({k})", k + 1), (|| {
            let parts: Vec<&SubgroupSet> = u_series.iter().map(|s| at(s, k)).collect();
            let p = product(nu, &parts)?;
            same("derived term versus product", lhs, &p)?;
            Ok(format!("order {}", lhs.order()))
        })());
        let k1 = k + 1;
        r.sub(format!("closed form k = {k1}: nu^({k1}) = ([G^({k}), G^phi^({k})] G^({k1})) G^phi^({k1})"), (|| {
            let c = nu.commutator_subgroup(at(&g_embed, k), at(&gphi_embed, k));
            let p = product(nu, &[&c, at(&g_embed, k1), at(&gphi_embed, k1)])?;
            same("derived term versus closed form", lhs, &p)?;
            Ok(format!("order {}", lhs.order()))
        })());
    }
    r.finish(CheckKind::TheoremB)
}

pub(crate) fn theorem_c(ctx: &NuContext, _cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let mut r = Recorder::new(nu);
    let lcs = nu.lower_central_series(&nu.whole());
    let g_lcs = base.lower_central_series(&base.whole());
    let gphi = ctx.subgroup(Named::BasePhi);
    let kmax = lcs.len().max(g_lcs.len()) + 1;
    for k in 2..=kmax {
        // gamma_k(nu) is lcs[k - 1]
        let lhs = at(&lcs, k - 1);
        r.sub(format!("k = {k}: gamma_{k}(nu) = A_{0} B_{0} C_{0}", k - 1), (|| {
            let abc = ctx.abc_subgroups(k - 1).map_err(|e| Failure {
                detail: e.to_string(),
                points: match e {
                    crate::nu::NuError::Mismatch { witness, .. } => witness.into_iter().collect(),
                    _ => Vec::new(),
                },
            })?;
            let p = product(nu, &[&abc.a, &abc.b, &abc.c])?;
            same("lower central term versus A B C", lhs, &p)?;
            Ok(format!("order {}", lhs.order()))
        })());
        let j = k - 1;
        r.sub(format!("closed form k = {j}: gamma_{k}(nu) = ([gamma_{j}(G), G^phi] gamma_{k}(G)) gamma_{k}(G^phi)"), (|| {
            let c = nu.commutator_subgroup(&ctx.embed_subgroup(at(&g_lcs, j - 1)), gphi);
            let p = product(nu, &[&c, &ctx.embed_subgroup(at(&g_lcs, k - 1)), &ctx.embed_phi_subgroup(at(&g_lcs, k - 1))])?;
            same("lower central term versus closed form", lhs, &p)?;
            Ok(format!("order {}", lhs.order()))
        })());
    }
    r.finish(CheckKind::TheoremC)
}

fn quotient_invariants(nu: &CayleyEngine, what: &str, h: &SubgroupSet, n: &SubgroupSet) -> Result<Vec<u64>, Failure> {
    let q = nu.quotient_engine(h, n).map_err(|e| kernel_failure(what, e))?;
    q.engine.abelian_invariants(&q.engine.whole()).map_err(|e| {
        let mut f = kernel_failure(what, e);
        f.points = f.points.iter().map(|&p| q.lift(p)).collect();
        f
    })
}

/// `(p, n)` when `G` is elementary abelian of order `p^n`.
fn elementary_abelian(base: &CayleyEngine) -> Option<(usize, u32)> {
    let f = factorize(base.order());
    let whole = base.whole();
    match f.as_slice() {
        [(p, n)] if base.is_abelian(&whole) && base.exponent(&whole) == *p => Some((*p, *n)),
        _ => None,
    }
}

pub(crate) fn prop25(ctx: &NuContext, _cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let mut r = Recorder::new(nu);
    let whole = nu.whole();
    let u1 = ctx.subgroup(Named::Upsilon1);
    let u2 = ctx.subgroup(Named::Upsilon2);
    let u3 = ctx.subgroup(Named::Upsilon3);
    let theta = ctx.subgroup(Named::Theta);
    let mu = ctx.subgroup(Named::Mu);
    let delta = ctx.subgroup(Named::Delta);
    let derived = ctx.subgroup(Named::Derived);
    let gab = base_ab_invariants(ctx);
    let gd = base_derived(ctx);
    let gd_order = gd.order();
    let gab_order = base.order() / gd_order;

    let u1theta = product(nu, &[u1, theta]);
    let u2u3 = product(nu, &[u2, u3]);
    let u1gd = product(nu, &[u1, &ctx.embed_subgroup(&gd)]);
    let u1gdphi = product(nu, &[u1, &ctx.embed_phi_subgroup(&gd)]);
    let (u1theta, u2u3, u1gd, u1gdphi) = match (u1theta, u2u3, u1gd, u1gdphi) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
        (a, b, c, d) => {
            let f = [a.err(), b.err(), c.err(), d.err()].into_iter().flatten().next().unwrap();
            r.sub("lattice products are subgroups", Err(f));
            return r.finish(CheckKind::Prop25);
        }
    };

    let quotients: [(&str, &SubgroupSet, &SubgroupSet); 3] = [
        ("(1) nu/(upsilon1 theta) = G^ab", &whole, &u1theta),
        ("(2) theta/(upsilon2 upsilon3) = G^ab", theta, &u2u3),
        ("(3) upsilon1 theta/nu' = G^ab", &u1theta, derived),
    ];
    for (name, h, n) in quotients {
        r.sub(name, (|| {
            let inv = quotient_invariants(nu, name, h, n)?;
            if inv != gab {
                return fail(format!("invariants {inv:?}, G^ab has {gab:?}"), n.gens().to_vec());
            }
            Ok(format!("invariants {inv:?}"))
        })());
    }

    let named: Vec<(&str, &SubgroupSet)> = vec![
        ("nu", &whole),
        ("upsilon1 theta", &u1theta),
        ("theta", theta),
        ("nu'", derived),
        ("upsilon2 upsilon3", &u2u3),
        ("upsilon1 G'", &u1gd),
        ("upsilon1 (G^phi)'", &u1gdphi),
        ("upsilon1", u1),
        ("upsilon2", u2),
        ("upsilon3", u3),
        ("mu", mu),
        ("delta", delta),
    ];
    r.sub("lattice members are normal in nu", (|| {
        for (n, s) in &named {
            normal(nu, n, s)?;
        }
        Ok(format!("{} subgroups", named.len()))
    })());
    let edges: [(&str, &SubgroupSet, &str, &SubgroupSet, usize, &str); 16] = [
        ("nu", &whole, "upsilon1 theta", &u1theta, gab_order, "dotted"),
        ("theta", theta, "upsilon2 upsilon3", &u2u3, gab_order, "dotted"),
        ("upsilon1 theta", &u1theta, "nu'", derived, gab_order, "dotted"),
        ("upsilon1 theta", &u1theta, "theta", theta, gd_order, "thin"),
        ("upsilon2 upsilon3", &u2u3, "upsilon3", u3, gd_order, "thin"),
        ("upsilon3", u3, "mu", mu, gd_order, "thin"),
        ("nu'", derived, "upsilon1 G'", &u1gd, gd_order, "thin"),
        ("upsilon1 G'", &u1gd, "upsilon1", u1, gd_order, "thin"),
        ("upsilon1", u1, "mu", mu, gd_order, "thin"),
        ("nu'", derived, "upsilon2 upsilon3", &u2u3, gd_order, "thin"),
        ("upsilon2 upsilon3", &u2u3, "upsilon2", u2, gd_order, "thin"),
        ("upsilon2", u2, "mu", mu, gd_order, "thin"),
        ("nu'", derived, "upsilon1 (G^phi)'", &u1gdphi, gd_order, "thin"),
        ("upsilon1 (G^phi)'", &u1gdphi, "upsilon1", u1, gd_order, "thin"),
        ("upsilon1 G'", &u1gd, "upsilon2", u2, gd_order, "thin"),
        ("upsilon1 (G^phi)'", &u1gdphi, "upsilon3", u3, gd_order, "thin"),
    ];
    for (top_name, top, bottom_name, bottom, ratio, style) in edges {
        r.sub(format!("(4) {style} edge {top_name} > {bottom_name}"), (|| {
            contained("containment", bottom, top)?;
            if top.order() != ratio * bottom.order() {
                return fail(format!("index {}/{} != {ratio}", top.order(), bottom.order()), bottom.gens().to_vec());
            }
            Ok(format!("index {ratio}"))
        })());
    }
    r.sub("(5) thick edge mu > delta", (|| {
        contained("delta <= mu", delta, mu)?;
        let q = nu.quotient_engine(mu, delta).map_err(|e| kernel_failure("mu/delta", e))?;
        let f = q.engine.fingerprint_whole();
        match elementary_abelian(base) {
            Some((p, n)) => {
                let expected = p.pow(n * (n - 1) / 2);
                if f.order != expected {
                    return fail(format!("|mu/delta| = {} but p^(n(n-1)/2) = {expected}", f.order), delta.gens().to_vec());
                }
                Ok(format!("|mu/delta| = {expected} (elementary abelian, p = {p}, n = {n})"))
            }
            None => Ok(format!("|mu/delta| = {}, invariants {:?} (informational)", f.order, f.abelian_invariants)),
        }
    })());
    r.finish(CheckKind::Prop25)
}

fn engel_degree(e: &CayleyEngine, h: &SubgroupSet, limit: usize) -> Option<usize> {
    (1..=limit).find(|&n| is_engel(e, h, n).is_none())
}

/// A pair `(x, y)` with `[x, _n y] != 1`, if one exists.
fn is_engel(e: &CayleyEngine, h: &SubgroupSet, n: usize) -> Option<(u32, u32)> {
    for &x in h.points() {
        for &y in h.points() {
            let mut c = x;
            for _ in 0..n {
                c = e.comm(c, y);
            }
            if c != 0 {
                return Some((x, y));
            }
        }
    }
    None
}

fn class_of(e: &CayleyEngine, h: &SubgroupSet) -> Option<usize> {
    let lcs = e.lower_central_series(h);
    lcs.last().unwrap().is_trivial().then(|| lcs.len() - 1)
}

fn max_order_point(e: &CayleyEngine, h: &SubgroupSet) -> Vec<u32> {
    h.points().iter().copied().max_by_key(|&p| e.order_of(p)).into_iter().collect()
}

pub(crate) fn exponents(ctx: &NuContext, cfg: &VerifyConfig) -> CheckResult {
    let nu = ctx.nu();
    let base = ctx.base();
    let mut r = Recorder::new(nu);
    let fac = factorize(base.order());
    let p = match fac.as_slice() {
        [(p, _)] => *p,
        _ => {
            let mut res = r.finish(CheckKind::Exponents);
            res.status = Status::Skipped;
            res.reason = Some(format!("|G| = {} is not a prime power", base.order()));
            return res;
        }
    };
    let u1 = ctx.subgroup(Named::Upsilon1);
    let derived = ctx.subgroup(Named::Derived);

    let nu_ds = nu.derived_series(&nu.whole());
    let u1_ds = nu.derived_series(u1);
    for k in 0..nu_ds.len().max(u1_ds.len()) {
        let (a, b) = (at(&nu_ds, k + 1), at(&u1_ds, k));
        let (ea, eb) = (nu.exponent(a), nu.exponent(b));
        r.sub(
            format!("(a) k = {k}: exp(nu^({})) = exp(upsilon1^({k}))", k + 1),
            if ea == eb { Ok(format!("{ea}")) } else { fail(format!("{ea} != {eb}"), max_order_point(nu, a)) },
        );
    }
    let lcs = nu.lower_central_series(&nu.whole());
    for rr in 2..=lcs.len() + 1 {
        let lhs = at(&lcs, rr - 1);
        let outcome = (|| {
            let abc = ctx.abc_subgroups(rr - 1).map_err(|e| Failure {
                detail: e.to_string(),
                points: Vec::new(),
            })?;
            let (ea, eb) = (nu.exponent(lhs), nu.exponent(&abc.a));
            if ea != eb {
                return fail(format!("{ea} != {eb}"), max_order_point(nu, lhs));
            }
            Ok(format!("{ea}"))
        })();
        r.sub(format!("(b) r = {rr}: exp(gamma_{rr}(nu)) = exp(A_{})", rr - 1), outcome);
    }

    let gd = base_derived(ctx);
    let c_gd = class_of(base, &gd).expect("subgroups of p-groups are nilpotent");
    r.sub("class(nu') <= class(G') + 1", match class_of(nu, derived) {
        Some(c) if c <= c_gd + 1 => Ok(format!("class(nu') = {c}, class(G') = {c_gd}")),
        Some(c) => fail(format!("class(nu') = {c} > {}", c_gd + 1), derived.gens().to_vec()),
        None => fail("nu' is not nilpotent", derived.gens().to_vec()),
    });
    if derived.order() <= cfg.engel_cap {
        let n = engel_degree(base, &gd, 64).expect("finite p-groups are Engel");
        r.sub(format!("nu' is {}-Engel (G' is {n}-Engel)", n + 1), match is_engel(nu, derived, n + 1) {
            None => Ok(format!("{} pairs", derived.order() * derived.order())),
            Some((x, y)) => fail(format!("[x, _{} y] != 1", n + 1), vec![x, y]),
        });
    } else {
        r.skip("nu' Engel bound", format!("|nu'| = {} exceeds {}", derived.order(), cfg.engel_cap));
    }

    let class = class_of(base, &base.whole()).expect("p-groups are nilpotent");
    let logn = fac[0].1 as usize;
    let coclass = logn - class;
    let mut nb = 0usize;
    while p.pow(nb as u32) < class + 1 {
        nb += 1;
    }
    let bound_exp = nb.min(coclass + if p == 2 { 4 } else { 1 });
    let exp_g = base.exponent(&base.whole());
    let bound = exp_g.pow(bound_exp as u32);
    let exp_d = nu.exponent(derived);
    r.sub(format!("exp(nu') divides exp(G)^min(n, r+{})", if p == 2 { 4 } else { 1 }), if bound % exp_d == 0 {
        Ok(format!("exp(nu') = {exp_d}, bound {exp_g}^{bound_exp} = {bound} (c = {class}, r = {coclass}, n = {nb})"))
    } else {
        fail(format!("exp(nu') = {exp_d} does not divide {bound}"), max_order_point(nu, derived))
    });

    if p > 2 {
        let delta = ctx.subgroup(Named::Delta);
        let outcome = (|| {
            let ext = nu.quotient_engine(u1, delta).map_err(|e| kernel_failure("upsilon1/delta", e))?;
            let e_delta = nu.exponent(delta);
            let e_ext = ext.engine.exponent(&ext.engine.whole());
            let e_ab = base_ab_invariants(ctx).iter().fold(1, |a, &x| crate::kernel::lcm(a, x as usize));
            let e_nu = nu.exponent(&nu.whole());
            let bound = e_delta.max(e_ext) * e_ab;
            let detail = format!("exp(nu) = {e_nu}, exp(delta) = {e_delta}, exp(G^G) = {e_ext}, exp(G^ab) = {e_ab}");
            if bound % e_nu != 0 {
                return fail(format!("{detail}: no divisibility"), max_order_point(nu, &nu.whole()));
            }
            if cfg.expect_exponent_equality && bound != e_nu {
                return fail(format!("{detail}: equality expected"), max_order_point(nu, &nu.whole()));
            }
            Ok(detail)
        })();
        let name = if cfg.expect_exponent_equality {
            "exp(nu) = max{exp(delta), exp(G^G)} exp(G^ab)"
        } else {
            "exp(nu) divides max{exp(delta), exp(G^G)} exp(G^ab)"
        };
        r.sub(name, outcome);
    }
    r.finish(CheckKind::Exponents)
}
