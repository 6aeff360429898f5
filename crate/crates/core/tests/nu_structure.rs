mod common;

use common::{presentation, reversed, LIGHT};
use nu_core::coset_enum::EnumLimits;
use nu_core::tensor::tensor_square;
use nu_core::{build_nu, to_regular_engine, enumerate, Named, NuContext, NuOptions, NuStrategy};

fn nu_of(name: &str, strategy: NuStrategy) -> NuContext {
    let opts = NuOptions {
        strategy,
        ..NuOptions::default()
    };
    build_nu(&presentation(name), opts).unwrap()
}

/// `|A (x) A|` for `A = C_{n_1} x ... x C_{n_k}`: the product of
/// `gcd(n_i, n_j)` over ordered pairs.
fn abelian_tensor_order(invariants: &[usize]) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    invariants
        .iter()
        .flat_map(|&a| invariants.iter().map(move |&b| gcd(a, b)))
        .product()
}

#[test]
fn order_laws_hold_on_the_light_corpus() {
    for name in LIGHT {
        let ctx = nu_of(name, NuStrategy::Gens);
        let g = ctx.base().order();
        let o = |n| ctx.subgroup(n).order();
        assert_eq!(ctx.nu().order(), g * g * o(Named::Upsilon1), "{name}");
        assert_eq!(o(Named::Theta) * g, ctx.nu().order(), "{name}");
        assert_eq!(o(Named::Base), g, "{name}");
        assert_eq!(o(Named::BasePhi), g, "{name}");
        assert!(ctx.triples_certified().is_some(), "{name}");
    }
}

#[test]
fn abelian_groups_match_the_gcd_formula() {
    let cases: [(&str, &[usize]); 7] = [
        ("C1", &[]),
        ("C2", &[2]),
        ("C3", &[3]),
        ("C4", &[4]),
        ("C6", &[6]),
        ("C2xC2", &[2, 2]),
        ("C3xC3", &[3, 3]),
    ];
    for (name, invariants) in cases {
        let ctx = nu_of(name, NuStrategy::Gens);
        let expected = abelian_tensor_order(invariants);
        assert_eq!(ctx.subgroup(Named::Upsilon1).order(), expected, "{name}");
        let t = tensor_square(ctx.base(), EnumLimits::default()).unwrap();
        assert_eq!(t.engine.order(), expected, "{name}");
        assert!(t.engine.is_abelian(&t.engine.whole()), "{name}");
    }
}

#[test]
fn c2_orders() {
    let ctx = nu_of("C2", NuStrategy::Gens);
    assert_eq!(ctx.nu().order(), 8);
    assert_eq!(ctx.subgroup(Named::Upsilon1).order(), 2);
    assert_eq!(ctx.subgroup(Named::Theta).order(), 4);
    assert_eq!(ctx.subgroup(Named::Mu).order(), 2);
}

#[test]
fn psi_fixes_mu_and_swaps_the_copies() {
    for name in LIGHT {
        let ctx = nu_of(name, NuStrategy::Gens);
        let nu = ctx.nu();
        let psi = ctx.psi();
        let mu = ctx.subgroup(Named::Mu);
        assert!(nu.subgroups_equal(&psi.image_of(mu), mu), "{name}");
        assert!(nu.subgroups_equal(&ctx.mu_via_rho_prime(), mu), "{name}");
        let base = ctx.subgroup(Named::Base);
        assert!(nu.subgroups_equal(&psi.image_of(base), ctx.subgroup(Named::BasePhi)), "{name}");
        for x in nu.points() {
            assert_eq!(psi.apply(psi.apply(x)), x, "{name}");
        }
    }
}

#[test]
fn strategies_agree_on_small_groups() {
    for name in LIGHT {
        let gens = nu_of(name, NuStrategy::Gens);
        if gens.base().order() > 8 {
            continue;
        }
        let cayley = nu_of(name, NuStrategy::Cayley);
        assert_eq!(gens.nu().fingerprint_whole(), cayley.nu().fingerprint_whole(), "{name}");
        for n in Named::ALL {
            assert_eq!(gens.subgroup(n).order(), cayley.subgroup(n).order(), "{name} {n:?}");
        }
    }
}

#[test]
fn tensor_square_matches_upsilon1() {
    for name in LIGHT {
        let ctx = nu_of(name, NuStrategy::Gens);
        if ctx.base().order() > 8 {
            continue;
        }
        let t = tensor_square(ctx.base(), EnumLimits::default()).unwrap();
        let u = ctx.subgroup(Named::Upsilon1);
        assert_eq!(t.engine.fingerprint_whole(), ctx.nu().fingerprint(u), "{name}");
    }
}

#[test]
fn generator_order_does_not_change_the_result() {
    for name in ["S3", "D4", "Q8", "A4"] {
        let p = presentation(name);
        let q = reversed(&p);
        let a = build_nu(&p, NuOptions::default()).unwrap();
        let b = build_nu(&q, NuOptions::default()).unwrap();
        assert_eq!(a.nu().fingerprint_whole(), b.nu().fingerprint_whole(), "{name}");
        for n in Named::ALL {
            assert_eq!(a.subgroup(n).order(), b.subgroup(n).order(), "{name} {n:?}");
        }
        if p.generators.len() <= 2 && a.base().order() <= 8 {
            let ea = to_regular_engine(enumerate(&p, EnumLimits::default()).unwrap(), &p);
            let eb = to_regular_engine(enumerate(&q, EnumLimits::default()).unwrap(), &q);
            let ta = tensor_square(&ea, EnumLimits::default()).unwrap();
            let tb = tensor_square(&eb, EnumLimits::default()).unwrap();
            assert_eq!(ta.engine.fingerprint_whole(), tb.engine.fingerprint_whole(), "{name}");
        }
    }
}
