//! The group `nu(G)`: presentation, realization, the folding map, the swap
//! automorphism, and the distinguished normal subgroups.
//!
//! `nu(G)` is generated by `G` and a copy `G^phi`, subject to
//! `[g1, g2^phi]^g3 = [g1^g3, (g2^g3)^phi] = [g1, g2^phi]^(g3^phi)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coset_enum::{enumerate_with, EnumError, EnumLimits, EnumStrategy};
use crate::kernel::{hom_from_gen_images, to_regular_engine, CayleyEngine, Cols, Homomorphism, KernelError, QuotientEngine, SubgroupSet};
use crate::presentation::{cayley_presentation, Presentation, PresentationError, Word};

/// How the defining triples are instantiated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NuStrategy {
    /// Triples over the generators of the input presentation.
    #[default]
    Gens,
    /// Triples over all non-identity elements, via the multiplication table.
    Cayley,
}

impl fmt::Display for NuStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NuStrategy::Gens => "gens",
            NuStrategy::Cayley => "cayley",
        })
    }
}

impl FromStr for NuStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gens" => Ok(NuStrategy::Gens),
            "cayley" => Ok(NuStrategy::Cayley),
            _ => Err(format!("unknown strategy {s:?} (expected gens or cayley)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum NuError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{map} is not a homomorphism: {source}")]
    Certification { map: &'static str, source: KernelError },
    #[error("{what}: the two computations disagree (witness point {witness:?})")]
    Mismatch { what: String, witness: Option<u32> },
    #[error("defining relation fails for the element triple ({0}, {1}, {2})")]
    Unfaithful(u32, u32, u32),
}

impl NuError {
    pub fn is_limit(&self) -> bool {
        match self {
            NuError::Enumeration(e) => e.is_limit(),
            NuError::Kernel(KernelError::TooLarge { .. }) | NuError::Presentation(PresentationError::TooLarge { .. }) => true,
            _ => false,
        }
    }
}

/// Build options.
#[derive(Clone, Copy, Debug, Default)]
pub struct NuOptions {
    pub strategy: NuStrategy,
    pub limits: EnumLimits,
    pub enumeration: EnumStrategy,
}

/// Name of a distinguished subgroup of `nu(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    /// The embedded copy of `G`.
    Base,
    /// The embedded copy `G^phi`.
    BasePhi,
    /// `[G, G^phi]`.
    Upsilon1,
    /// `[Theta, G]`.
    Upsilon2,
    /// `[Theta, G^phi]`.
    Upsilon3,
    /// Kernel of the folding map.
    Theta,
    Mu,
    /// `<[g, g^phi]>`.
    Delta,
    /// `nu(G)'`.
    Derived,
}

impl Named {
    pub const ALL: [Named; 9] = [
        Named::Base,
        Named::BasePhi,
        Named::Upsilon1,
        Named::Upsilon2,
        Named::Upsilon3,
        Named::Theta,
        Named::Mu,
        Named::Delta,
        Named::Derived,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Named::Base => "G",
            Named::BasePhi => "G^phi",
            Named::Upsilon1 => "upsilon1",
            Named::Upsilon2 => "upsilon2",
            Named::Upsilon3 => "upsilon3",
            Named::Theta => "theta",
            Named::Mu => "mu",
            Named::Delta => "delta",
            Named::Derived => "derived",
        }
    }
}

impl FromStr for Named {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Named::ALL
            .into_iter()
            .find(|n| n.label() == s)
            .ok_or_else(|| format!("unknown subgroup name {s:?}"))
    }
}

/// Presentation of `nu` for the group presented by `pres`, with the triples
/// instantiated over the generators of `pres`.
///
/// Generators are those of `pres` followed by their copies; each relation
/// `w1 = w2 = w3` becomes the relators `w1 w2^-1` and `w1 w3^-1`.
pub fn build_nu_presentation(pres: &Presentation) -> Presentation {
    let n = pres.num_generators() as u32;
    let mut generators = pres.generators.clone();
    for g in &pres.generators {
        let mut name = format!("{g}_phi");
        while pres.generators.contains(&name) || generators.contains(&name) {
            name.push('_');
        }
        generators.push(name);
    }
    let phi = |w: &Word| w.map_gens(|i| i + n);
    let mut relators: Vec<Word> = pres.relators.clone();
    relators.extend(pres.relators.iter().map(phi));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (g1, g2, g3) = (Word::gen(a), Word::gen(b), Word::gen(c));
                let base = Word::commutator(&g1, &phi(&g2));
                let w1 = Word::conjugate(&base, &g3);
                let w2 = Word::commutator(&Word::conjugate(&g1, &g3), &phi(&Word::conjugate(&g2, &g3)));
                let w3 = Word::conjugate(&base, &phi(&g3));
                relators.push(w1.concat(&w2.inverse()));
                relators.push(w1.concat(&w3.inverse()));
            }
        }
    }
    Presentation {
        name: format!("nu_{}", pres.name),
        generators,
        relators,
    }
}

/// Presentation of `nu` under the chosen strategy.
pub fn nu_presentation_for(
    pres: &Presentation,
    base: &CayleyEngine,
    strategy: NuStrategy,
) -> Result<Presentation, NuError> {
    Ok(match strategy {
        NuStrategy::Gens => build_nu_presentation(pres),
        NuStrategy::Cayley => {
            let mut p = build_nu_presentation(&cayley_presentation(base)?);
            p.name = format!("nu_{}", pres.name);
            p
        }
    })
}

/// A realized `nu(G)` with its maps and distinguished subgroups.
#[derive(Clone, Debug)]
pub struct NuContext {
    base: Arc<CayleyEngine>,
    nu: Arc<CayleyEngine>,
    strategy: NuStrategy,
    g_gens: Vec<u32>,
    gphi_gens: Vec<u32>,
    embed: Vec<u32>,
    embed_phi: Vec<u32>,
    rho: Homomorphism,
    psi: Homomorphism,
    upsilon1_engine: QuotientEngine,
    /// Base-point pairs `(g, h)` behind each generator `[g, h^phi]` of the
    /// `Upsilon1` engine.
    upsilon1_pairs: Vec<(u32, u32)>,
    rho_prime: Homomorphism,
    gamma_star: Homomorphism,
    subgroups: Vec<SubgroupSet>,
    triples_certified: Option<usize>,
}

/// Enumerates `pres` and builds `nu` of the resulting group.
pub fn build_nu(pres: &Presentation, opts: NuOptions) -> Result<NuContext, NuError> {
    let table = enumerate_with(pres, opts.limits, opts.enumeration)?;
    let base = Arc::new(to_regular_engine(table, pres));
    build_nu_from_engine(pres, base, opts)
}

/// Builds `nu` of a realized group; `pres` must be the presentation `base`
/// was enumerated from.
pub fn build_nu_from_engine(
    pres: &Presentation,
    base: Arc<CayleyEngine>,
    opts: NuOptions,
) -> Result<NuContext, NuError> {
    let nu_pres = nu_presentation_for(pres, &base, opts.strategy)?;
    let table = enumerate_with(&nu_pres, opts.limits, opts.enumeration)?;
    let nu = Arc::new(to_regular_engine(table, &nu_pres));
    NuContext::assemble(base, nu, opts.strategy)
}

impl NuContext {
    fn assemble(base: Arc<CayleyEngine>, nu: Arc<CayleyEngine>, strategy: NuStrategy) -> Result<Self, NuError> {
        let k = base.num_generators();
        // nu points of the base generators and their copies
        let (g_gens, gphi_gens): (Vec<u32>, Vec<u32>) = match strategy {
            NuStrategy::Gens => ((0..k).map(|i| nu.gen_point(i)).collect(), (0..k).map(|i| nu.gen_point(k + i)).collect()),
            NuStrategy::Cayley => {
                let m = base.order() - 1;
                let at = |p: u32, off: usize| if p == 0 { 0 } else { nu.gen_point(off + p as usize - 1) };
                (
                    base.gen_points().into_iter().map(|p| at(p, 0)).collect(),
                    base.gen_points().into_iter().map(|p| at(p, m)).collect(),
                )
            }
        };
        let embed = embed_table(&base, &nu, &g_gens);
        let embed_phi = embed_table(&base, &nu, &gphi_gens);

        let all_nu_gens = nu.gen_points();
        let (rho_images, psi_images) = nu_gen_images(&base, &nu, strategy);
        let rho = hom_from_gen_images(&nu, &all_nu_gens, &base, &rho_images)
            .map_err(|source| NuError::Certification { map: "rho", source })?;
        let psi = hom_from_gen_images(&nu, &all_nu_gens, &nu, &psi_images)
            .map_err(|source| NuError::Certification { map: "psi", source })?;
        if let Some(p) = nu.points().find(|&p| psi.apply(psi.apply(p)) != p) {
            return Err(NuError::Mismatch {
                what: "psi is not an involution".into(),
                witness: Some(p),
            });
        }

        let g_sub = nu.subgroup(&g_gens);
        let gphi_sub = nu.subgroup(&gphi_gens);
        let upsilon1 = nu.commutator_subgroup(&g_sub, &gphi_sub);
        let theta = rho.kernel();
        let mu = nu.intersection(&upsilon1, &theta);
        let delta = nu.subgroup(&base.points().map(|g| nu.comm(embed[g as usize], embed_phi[g as usize])).collect::<Vec<_>>());
        let upsilon2 = nu.commutator_subgroup(&theta, &g_sub);
        let upsilon3 = nu.commutator_subgroup(&theta, &gphi_sub);
        let derived = nu.commutator_subgroup(&nu.whole(), &nu.whole());

        // Upsilon1 as its own engine, generated by points [g, h^phi]
        let mut cl_pairs = Vec::new();
        let mut pts = Vec::new();
        {
            let mut seen = BTreeSet::new();
            for g in base.points() {
                for h in base.points() {
                    let c = nu.comm(embed[g as usize], embed_phi[h as usize]);
                    if c != 0 && seen.insert(c) {
                        cl_pairs.push((g, h));
                        pts.push(c);
                    }
                }
            }
        }
        let (upsilon1_pairs, u1_gens) = irredundant(&nu, &cl_pairs, &pts);
        let upsilon1_engine = nu.sub_engine(&upsilon1, &u1_gens)?;
        let sub = upsilon1_engine.engine.clone();
        let sub_gens = sub.gen_points();
        let rho_prime_images: Vec<u32> = upsilon1_pairs.iter().map(|&(g, h)| base.comm(g, h)).collect();
        let rho_prime = hom_from_gen_images(&sub, &sub_gens, &base, &rho_prime_images)
            .map_err(|source| NuError::Certification { map: "rho'", source })?;
        let gamma_images: Vec<u32> = upsilon1_pairs
            .iter()
            .map(|&(g, h)| gamma_value(&nu, &embed, &embed_phi, g, h))
            .collect();
        let gamma_star = hom_from_gen_images(&sub, &sub_gens, &nu, &gamma_images)
            .map_err(|source| NuError::Certification { map: "Gamma*", source })?;

        let mut subgroups = vec![nu.trivial_subgroup(); Named::ALL.len()];
        subgroups[Named::Base as usize] = g_sub;
        subgroups[Named::BasePhi as usize] = gphi_sub;
        subgroups[Named::Upsilon1 as usize] = upsilon1;
        subgroups[Named::Upsilon2 as usize] = upsilon2;
        subgroups[Named::Upsilon3 as usize] = upsilon3;
        subgroups[Named::Theta as usize] = theta;
        subgroups[Named::Mu as usize] = mu;
        subgroups[Named::Delta as usize] = delta;
        subgroups[Named::Derived as usize] = derived;

        let mut ctx = NuContext {
            base,
            nu,
            strategy,
            g_gens,
            gphi_gens,
            embed,
            embed_phi,
            rho,
            psi,
            upsilon1_engine,
            upsilon1_pairs,
            rho_prime,
            gamma_star,
            subgroups,
            triples_certified: None,
        };
        ctx.self_check()?;
        if strategy == NuStrategy::Gens {
            ctx.triples_certified = Some(ctx.certify_all_triples()?);
        }
        Ok(ctx)
    }

    /// Redundant computations that must agree on a correctly built context.
    fn self_check(&self) -> Result<(), NuError> {
        let nu = &self.nu;
        let u1 = self.subgroup(Named::Upsilon1);
        let order = self.base.order();
        if nu.order() != order * order * u1.order() {
            return Err(NuError::Mismatch {
                what: format!("|nu| = {} but |G|^2 |upsilon1| = {}", nu.order(), order * order * u1.order()),
                witness: None,
            });
        }
        let mu_kernel = self.mu_via_rho_prime();
        let mu = self.subgroup(Named::Mu);
        if !mu_kernel.same_points(mu) {
            return Err(NuError::Mismatch {
                what: "mu as upsilon1 ∩ theta versus ker rho'".into(),
                witness: diff_witness(mu, &mu_kernel),
            });
        }
        let (u2, u3) = self.upsilon_generator_forms();
        for (named, alt) in [(Named::Upsilon2, u2), (Named::Upsilon3, u3)] {
            let s = self.subgroup(named);
            if !s.same_points(&alt) {
                return Err(NuError::Mismatch {
                    what: format!("{} as a commutator subgroup versus its generator form", named.label()),
                    witness: diff_witness(s, &alt),
                });
            }
        }
        let swapped = self.psi.image_of(self.subgroup(Named::Base));
        if !swapped.same_points(self.subgroup(Named::BasePhi)) {
            return Err(NuError::Mismatch {
                what: "psi(G) versus G^phi".into(),
                witness: diff_witness(&swapped, self.subgroup(Named::BasePhi)),
            });
        }
        if !self.gamma_star.kernel().is_trivial() {
            return Err(NuError::Mismatch {
                what: "Gamma* is not injective".into(),
                witness: self.gamma_star.kernel().points().get(1).map(|&p| self.upsilon1_engine.lift(p)),
            });
        }
        let image = self.gamma_star.image();
        if !image.same_points(self.subgroup(Named::Upsilon2)) {
            return Err(NuError::Mismatch {
                what: "Gamma*(upsilon1) versus upsilon2".into(),
                witness: diff_witness(&image, self.subgroup(Named::Upsilon2)),
            });
        }
        Ok(())
    }

    /// Checks the defining relations for every triple of elements, which makes
    /// the generator-instantiated presentation provably the full one.
    /// Returns the number of triples checked.
    pub fn certify_all_triples(&self) -> Result<usize, NuError> {
        let base = &self.base;
        let nu = &self.nu;
        let n = base.order();
        let comm_table: Vec<u32> = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| nu.comm(self.embed[g], self.embed_phi[h]))
            .collect();
        let comm_cols: Vec<Cols> = comm_table.iter().map(|&c| nu.cols(c)).collect();
        let conj_cols = |p: u32| (nu.inv_cols(p), nu.cols(p));
        let e_cols: Vec<(Cols, Cols)> = self.embed.iter().map(|&p| conj_cols(p)).collect();
        let f_cols: Vec<(Cols, Cols)> = self.embed_phi.iter().map(|&p| conj_cols(p)).collect();
        for g3 in 0..n as u32 {
            let conj3: Vec<u32> = (0..n as u32).map(|x| base.conj(x, g3)).collect();
            let (ei, ef) = &e_cols[g3 as usize];
            let (fi, ff) = &f_cols[g3 as usize];
            for g1 in 0..n {
                for g2 in 0..n {
                    let cc = &comm_cols[g1 * n + g2];
                    let w1 = nu.apply_cols(nu.apply_cols(nu.apply_cols(0, ei), cc), ef);
                    let w2 = comm_table[conj3[g1] as usize * n + conj3[g2] as usize];
                    let w3 = nu.apply_cols(nu.apply_cols(nu.apply_cols(0, fi), cc), ff);
                    if w1 != w2 || w1 != w3 {
                        return Err(NuError::Unfaithful(g1 as u32, g2 as u32, g3));
                    }
                }
            }
        }
        Ok(n * n * n)
    }

    pub fn base(&self) -> &Arc<CayleyEngine> {
        &self.base
    }

    pub fn nu(&self) -> &Arc<CayleyEngine> {
        &self.nu
    }

    pub fn strategy(&self) -> NuStrategy {
        self.strategy
    }

    /// `nu` points of the base generators.
    pub fn g_gens(&self) -> &[u32] {
        &self.g_gens
    }

    pub fn gphi_gens(&self) -> &[u32] {
        &self.gphi_gens
    }

    /// `nu` point of the base element `g`.
    pub fn embed(&self, g: u32) -> u32 {
        self.embed[g as usize]
    }

    /// `nu` point of `g^phi`.
    pub fn embed_phi(&self, g: u32) -> u32 {
        self.embed_phi[g as usize]
    }

    pub fn rho(&self) -> &Homomorphism {
        &self.rho
    }

    pub fn psi(&self) -> &Homomorphism {
        &self.psi
    }

    pub fn rho_prime(&self) -> &Homomorphism {
        &self.rho_prime
    }

    /// `Gamma*`, defined on the `Upsilon1` engine with values in `nu`.
    pub fn gamma_star(&self) -> &Homomorphism {
        &self.gamma_star
    }

    pub fn upsilon1_engine(&self) -> &QuotientEngine {
        &self.upsilon1_engine
    }

    pub fn upsilon1_pairs(&self) -> &[(u32, u32)] {
        &self.upsilon1_pairs
    }

    /// Number of element triples checked against the defining relations, when
    /// the presentation was instantiated over generators only.
    pub fn triples_certified(&self) -> Option<usize> {
        self.triples_certified
    }

    pub fn subgroup(&self, name: Named) -> &SubgroupSet {
        &self.subgroups[name as usize]
    }

    /// Copy of the context with one stored subgroup replaced.
    pub fn with_subgroup(&self, name: Named, set: SubgroupSet) -> NuContext {
        assert_eq!(set.engine_id(), self.nu.id(), "subgroup belongs to a different engine");
        let mut c = self.clone();
        c.subgroups[name as usize] = set;
        c
    }

    /// `Gamma(g, h) = [g, h][h, g^phi]` as a point of `nu`.
    pub fn gamma(&self, g: u32, h: u32) -> u32 {
        gamma_value(&self.nu, &self.embed, &self.embed_phi, g, h)
    }

    /// `[g^phi, h^phi][h^phi, g]`.
    pub fn gamma_phi(&self, g: u32, h: u32) -> u32 {
        let nu = &self.nu;
        let a = nu.comm(self.embed_phi(g), self.embed_phi(h));
        let b = nu.comm(self.embed_phi(h), self.embed(g));
        nu.mul(a, b)
    }

    /// Embedding of a base subgroup into the `G` copy.
    pub fn embed_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        self.base.map_points(h, |p| self.embed(p), &self.nu)
    }

    pub fn embed_phi_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        self.base.map_points(h, |p| self.embed_phi(p), &self.nu)
    }

    /// `mu` as the kernel of `rho'`, lifted back into `nu`.
    pub fn mu_via_rho_prime(&self) -> SubgroupSet {
        let k = self.rho_prime.kernel();
        let pts: Vec<u32> = k.points().iter().map(|&p| self.upsilon1_engine.lift(p)).collect();
        self.nu
            .subgroup_from_points(&pts)
            .expect("lift of a subgroup of the upsilon1 engine")
    }

    /// `<[g,h][h,g^phi]>` and `<[g^phi,h^phi][h^phi,g]>` over all pairs.
    pub fn upsilon_generator_forms(&self) -> (SubgroupSet, SubgroupSet) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for g in self.base.points() {
            for h in self.base.points() {
                a.push(self.gamma(g, h));
                b.push(self.gamma_phi(g, h));
            }
        }
        (self.nu.subgroup(&a), self.nu.subgroup(&b))
    }

    /// `A_k = [Upsilon1, _{k-1} G]`, `B_k = [Upsilon2, _{k-1} G]`,
    /// `C_k = [Upsilon3, _{k-1} G^phi]`, each checked against its
    /// alternative description.
    pub fn abc_subgroups(&self, k: usize) -> Result<AbcSubgroups, NuError> {
        assert!(k >= 1);
        let nu = &self.nu;
        let g = self.subgroup(Named::Base);
        let gphi = self.subgroup(Named::BasePhi);
        let a = nu.iterated_commutator(self.subgroup(Named::Upsilon1), g, k - 1);
        let b = nu.iterated_commutator(self.subgroup(Named::Upsilon2), g, k - 1);
        let c = nu.iterated_commutator(self.subgroup(Named::Upsilon3), gphi, k - 1);

        let lcs = self.base.lower_central_series(&self.base.whole());
        let gamma_k = &lcs[(k - 1).min(lcs.len() - 1)];
        let a_alt = nu.commutator_subgroup(&self.embed_subgroup(gamma_k), gphi);
        let mut seeds = Vec::new();
        for &cpt in &left_normed_commutators(&self.base, k) {
            for x in self.base.points() {
                let l = nu.comm(self.embed(cpt), self.embed(x));
                let r = nu.comm(self.embed(x), self.embed_phi(cpt));
                seeds.push(nu.mul(l, r));
            }
        }
        let b_alt = nu.subgroup(&seeds);
        let c_alt = self.psi.image_of(&b);
        for (what, x, y) in [("A_k", &a, &a_alt), ("B_k", &b, &b_alt), ("C_k", &c, &c_alt)] {
            if !x.same_points(y) {
                return Err(NuError::Mismatch {
                    what: format!("{what} for k = {k}"),
                    witness: diff_witness(x, y),
                });
            }
        }
        Ok(AbcSubgroups { a, b, c })
    }
}

#[derive(Clone, Debug)]
pub struct AbcSubgroups {
    pub a: SubgroupSet,
    pub b: SubgroupSet,
    pub c: SubgroupSet,
}

/// Base points that are left-normed commutators of weight `k`
/// (weight 1 is every element).
pub fn left_normed_commutators(base: &CayleyEngine, k: usize) -> Vec<u32> {
    let mut cur: BTreeSet<u32> = base.points().collect();
    for _ in 1..k {
        cur = cur
            .iter()
            .flat_map(|&c| base.points().map(move |g| (c, g)))
            .map(|(c, g)| base.comm(c, g))
            .collect();
    }
    cur.into_iter().collect()
}

fn gamma_value(nu: &CayleyEngine, embed: &[u32], embed_phi: &[u32], g: u32, h: u32) -> u32 {
    let a = nu.comm(embed[g as usize], embed[h as usize]);
    let b = nu.comm(embed[h as usize], embed_phi[g as usize]);
    nu.mul(a, b)
}

/// Point of `nu` for every base element, following base Schreier words.
fn embed_table(base: &CayleyEngine, nu: &CayleyEngine, images: &[u32]) -> Vec<u32> {
    let col_images: Vec<Cols> = images
        .iter()
        .flat_map(|&p| [nu.cols(p), nu.inv_cols(p)])
        .collect();
    base.points()
        .map(|p| {
            base.cols(p)
                .iter()
                .fold(0, |x, &c| nu.apply_cols(x, &col_images[c as usize]))
        })
        .collect()
}

/// Images of every `nu` generator under the folding map and the swap.
fn nu_gen_images(base: &CayleyEngine, nu: &CayleyEngine, strategy: NuStrategy) -> (Vec<u32>, Vec<u32>) {
    let m = nu.num_generators() / 2;
    let folded: Vec<u32> = match strategy {
        NuStrategy::Gens => base.gen_points(),
        // generator i of the table presentation is the element at point i + 1
        NuStrategy::Cayley => (1..=m as u32).collect(),
    };
    let rho: Vec<u32> = folded.iter().chain(&folded).copied().collect();
    let psi: Vec<u32> = (0..m)
        .map(|i| nu.gen_point(m + i))
        .chain((0..m).map(|i| nu.gen_point(i)))
        .collect();
    (rho, psi)
}

/// Keeps the points (with their labels) that enlarge the closure.
fn irredundant(nu: &CayleyEngine, labels: &[(u32, u32)], pts: &[u32]) -> (Vec<(u32, u32)>, Vec<u32>) {
    let mut kept_labels = Vec::new();
    let mut kept = Vec::new();
    let mut acc = nu.trivial_subgroup();
    for (&l, &p) in labels.iter().zip(pts) {
        if !acc.contains(p) {
            kept_labels.push(l);
            kept.push(p);
            acc = nu.subgroup(&kept);
        }
    }
    (kept_labels, kept)
}

fn diff_witness(a: &SubgroupSet, b: &SubgroupSet) -> Option<u32> {
    a.first_outside(b).or_else(|| b.first_outside(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(src: &str) -> Presentation {
        parse_presentation(src).unwrap().remove(0)
    }

    #[test]
    fn c2_presentation_counts() {
        let p = build_nu_presentation(&pres("group C2 = < a | a^2 >"));
        assert_eq!(p.generators, vec!["a", "a_phi"]);
        assert_eq!(p.relators.len(), 4);
        let p = build_nu_presentation(&pres("group V = < a, b | a^2, b^2, [a,b] >"));
        assert_eq!(p.relators.len(), 6 + 16);
    }

    #[test]
    fn phi_names_avoid_collisions() {
        let p = build_nu_presentation(&pres("group X = < a, a_phi | a^2, a_phi^2 >"));
        let mut names = p.generators.clone();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 4);
    }

    #[test]
    fn nu_of_trivial_group() {
        let ctx = build_nu(&pres("group C1 = < a | a >"), NuOptions::default()).unwrap();
        assert_eq!(ctx.nu().order(), 1);
        for n in Named::ALL {
            assert!(ctx.subgroup(n).is_trivial());
        }
    }

    #[test]
    fn nu_of_c2() {
        for strategy in [NuStrategy::Gens, NuStrategy::Cayley] {
            let opts = NuOptions { strategy, ..Default::default() };
            let ctx = build_nu(&pres("group C2 = < a | a^2 >"), opts).unwrap();
            // C2 (x) C2 = Z/2 (x) Z/2 has order 2
            assert_eq!(ctx.nu().order(), 8);
            assert_eq!(ctx.subgroup(Named::Upsilon1).order(), 2);
            assert_eq!(ctx.subgroup(Named::Theta).order(), 4);
            assert_eq!(ctx.subgroup(Named::Mu).order(), 2);
        }
    }

    #[test]
    fn psi_swaps_upsilon2_and_upsilon3() {
        let ctx = build_nu(&pres("group S3 = < a, b | a^2, b^2, (a*b)^3 >"), NuOptions::default()).unwrap();
        let img = ctx.psi().image_of(ctx.subgroup(Named::Upsilon2));
        assert!(img.same_points(ctx.subgroup(Named::Upsilon3)));
        assert_eq!(ctx.subgroup(Named::Upsilon2).order(), ctx.subgroup(Named::Upsilon1).order());
        assert_eq!(ctx.triples_certified(), Some(216));
    }

    #[test]
    fn abc_first_terms() {
        let ctx = build_nu(&pres("group D4 = < a, b | a^4, b^2, (a*b)^2 >"), NuOptions::default()).unwrap();
        let abc = ctx.abc_subgroups(1).unwrap();
        assert!(abc.a.same_points(ctx.subgroup(Named::Upsilon1)));
        assert!(abc.b.same_points(ctx.subgroup(Named::Upsilon2)));
        assert!(abc.c.same_points(ctx.subgroup(Named::Upsilon3)));
        ctx.abc_subgroups(2).unwrap();
        ctx.abc_subgroups(3).unwrap();
    }

    #[test]
    fn abelian_a2_trivial() {
        let ctx = build_nu(&pres("group C4 = < a | a^4 >"), NuOptions::default()).unwrap();
        assert!(ctx.abc_subgroups(2).unwrap().a.is_trivial());
    }

    #[test]
    fn weight_two_commutators_of_s3() {
        let ctx = build_nu(&pres("group S3 = < a, b | a^2, b^2, (a*b)^3 >"), NuOptions::default()).unwrap();
        assert_eq!(left_normed_commutators(ctx.base(), 2).len(), 3);
    }
}
