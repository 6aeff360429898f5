mod common;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use common::{engine, presentation};
use nu_core::{hom_from_gen_images, CayleyEngine, SubgroupSet};
use proptest::prelude::*;

const GROUPS: [&str; 9] = ["C4", "C2xC2", "C6", "S3", "D4", "Q8", "C3xC3", "A4", "H27"];

fn engines() -> &'static [Arc<CayleyEngine>] {
    static CACHE: OnceLock<Vec<Arc<CayleyEngine>>> = OnceLock::new();
    CACHE.get_or_init(|| GROUPS.iter().map(|n| engine(n)).collect())
}

fn point(e: &CayleyEngine, raw: u32) -> u32 {
    raw % e.order() as u32
}

fn subgroup_of(e: &CayleyEngine, raw: &[u32]) -> SubgroupSet {
    let gens: Vec<u32> = raw.iter().map(|&r| point(e, r)).collect();
    e.subgroup(&gens)
}

/// Elements of each order in `C_{n_1} x ... x C_{n_k}`.
fn abelian_histogram(invariants: &[u64]) -> BTreeMap<usize, usize> {
    let mut orders = vec![1usize];
    for &n in invariants {
        let n = n as usize;
        orders = orders
            .iter()
            .flat_map(|&o| (0..n).map(move |k| lcm(o, n / gcd(n, k))))
            .collect();
    }
    let mut h = BTreeMap::new();
    for o in orders {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regular_representation_law(gi in 0..GROUPS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let e = &engines()[gi];
        let (x, y, z) = (point(e, x), point(e, y), point(e, z));
        prop_assert_eq!(e.eval(&e.word_for(x)), x);
        prop_assert_eq!(e.mul(x, y), e.eval(&e.word_for(x).concat(&e.word_for(y))));
        prop_assert_eq!(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
        prop_assert_eq!(e.mul(x, e.inv(x)), e.identity());
        prop_assert_eq!(e.comm(x, y), e.product(&[e.inv(x), e.inv(y), x, y]));
        prop_assert_eq!(e.conj(x, y), e.product(&[e.inv(y), x, y]));
    }

    #[test]
    fn subgroups_are_closed(gi in 0..GROUPS.len(), raw in prop::collection::vec(any::<u32>(), 0..3)) {
        let e = &engines()[gi];
        let h = subgroup_of(e, &raw);
        prop_assert_eq!(e.order() % h.order(), 0);
        prop_assert!(h.contains(e.identity()));
        for &a in h.points() {
            prop_assert!(h.contains(e.inv(a)));
            for &b in h.points() {
                prop_assert!(h.contains(e.mul(a, b)));
            }
        }
        let again = e.subgroup_from_points(h.points()).unwrap();
        prop_assert!(e.subgroups_equal(&h, &again));
    }

    #[test]
    fn commutator_subgroups_are_symmetric(
        gi in 0..GROUPS.len(),
        hs in prop::collection::vec(any::<u32>(), 1..3),
        ks in prop::collection::vec(any::<u32>(), 1..3),
    ) {
        let e = &engines()[gi];
        let h = subgroup_of(e, &hs);
        let k = subgroup_of(e, &ks);
        let hk = e.commutator_subgroup(&h, &k);
        prop_assert!(e.subgroups_equal(&hk, &e.commutator_subgroup(&k, &h)));
        // brute force: the subgroup generated by every [a,b]
        let all: Vec<u32> = h.points().iter().flat_map(|&a| k.points().iter().map(move |&b| (a, b)))
            .map(|(a, b)| e.comm(a, b)).collect();
        prop_assert!(e.subgroups_equal(&hk, &e.subgroup(&all)));
    }

    #[test]
    fn quotients_are_homomorphic_images(gi in 0..GROUPS.len(), seed in prop::collection::vec(any::<u32>(), 0..2)) {
        let e = &engines()[gi];
        let whole = e.whole();
        let seeds: Vec<u32> = seed.iter().map(|&r| point(e, r)).collect();
        let n = e.normal_closure(&seeds, &whole);
        let q = e.quotient_engine(&whole, &n).unwrap();
        prop_assert_eq!(q.engine.order() * n.order(), e.order());
        for &m in n.points() {
            prop_assert_eq!(q.project(m), q.engine.identity());
        }
        for x in e.points() {
            prop_assert_eq!(q.project(q.lift(q.project(x))), q.project(x));
            for y in e.points().step_by(3) {
                prop_assert_eq!(q.project(e.mul(x, y)), q.engine.mul(q.project(x), q.project(y)));
            }
        }
    }

    #[test]
    fn abelian_invariants_describe_the_abelianization(gi in 0..GROUPS.len(), raw in prop::collection::vec(any::<u32>(), 1..3)) {
        let e = &engines()[gi];
        let h = subgroup_of(e, &raw);
        let d = e.commutator_subgroup(&h, &h);
        let q = e.quotient_engine(&h, &d).unwrap();
        let ab = q.engine.whole();
        let inv = q.engine.abelian_invariants(&ab).unwrap();
        prop_assert_eq!(inv.iter().product::<u64>() as usize, h.order() / d.order());
        prop_assert_eq!(abelian_histogram(&inv), q.engine.fingerprint_whole().order_histogram);
    }

    #[test]
    fn homomorphisms_exist_exactly_when_relators_hold(src in 0..GROUPS.len(), dst in 0..GROUPS.len(), raw in prop::collection::vec(any::<u32>(), 3)) {
        let (d, c) = (&engines()[src], &engines()[dst]);
        let pres = presentation(GROUPS[src]);
        let images: Vec<u32> = raw.iter().take(d.num_generators()).map(|&r| point(c, r)).collect();
        let relators_hold = pres.relators.iter().all(|r| {
            let v = r.letters().iter().fold(c.identity(), |acc, l| {
                let g = images[l.gen as usize];
                c.mul(acc, if l.inverse { c.inv(g) } else { g })
            });
            v == c.identity()
        });
        match hom_from_gen_images(d, &d.gen_points(), c, &images) {
            Ok(f) => {
                prop_assert!(relators_hold);
                for x in d.points() {
                    for y in d.points() {
                        prop_assert_eq!(f.apply(d.mul(x, y)), c.mul(f.apply(x), f.apply(y)));
                    }
                }
                prop_assert_eq!(f.kernel().order() * f.image().order(), d.order());
            }
            Err(_) => prop_assert!(!relators_hold),
        }
    }
}
