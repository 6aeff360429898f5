mod common;

use common::{closure, engine, engine_of, eval, model, order_histogram, presentation, reversed, LIGHT};
use nu_core::presentation::cayley_presentation;
use nu_core::verify::{corpus_entries, Weight};
use nu_core::{enumerate, enumerate_with, EnumLimits, EnumStrategy};

const ALL: [&str; 14] = [
    "C1", "C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8", "C3xC3", "D6", "A4", "H27", "SL2_5",
];

#[test]
fn models_satisfy_the_relators() {
    for name in ALL {
        let p = presentation(name);
        let images = model(name);
        let n = images[0].len();
        for r in &p.relators {
            assert_eq!(eval(r, &images), common::identity(n), "{name}: {}", r.display(&p.generators));
        }
    }
}

#[test]
fn corpus_orders_match_models() {
    for entry in corpus_entries(None) {
        let elements = closure(&model(&entry.name));
        let e = engine_of(&entry.presentation);
        // the relators hold in the model, so equal orders mean isomorphic groups
        assert_eq!(e.order(), elements.len(), "{}", entry.name);
        assert_eq!(entry.expected_order, Some(elements.len()), "{}", entry.name);
        assert_eq!(e.fingerprint_whole().order_histogram, order_histogram(&elements), "{}", entry.name);
        if entry.weight == Weight::Light {
            assert!(LIGHT.contains(&entry.name.as_str()));
        }
    }
}

#[test]
fn tables_validate_and_are_consistent() {
    for name in ALL {
        let p = presentation(name);
        let t = enumerate(&p, EnumLimits::default()).unwrap();
        t.validate(&p.relators).unwrap();
        let s = t.stride();
        for c in 0..t.num_cosets() {
            for col in 0..s {
                let d = t.rows()[c * s + col] as usize;
                assert_eq!(t.rows()[d * s + (col ^ 1)] as usize, c, "{name}");
            }
        }
        for col in 0..s {
            let mut image: Vec<u32> = (0..t.num_cosets()).map(|c| t.rows()[c * s + col]).collect();
            image.sort_unstable();
            assert!(image.iter().enumerate().all(|(i, &d)| i as u32 == d), "{name}: column {col}");
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for name in ALL {
        let p = presentation(name);
        let a = enumerate(&p, EnumLimits::default()).unwrap();
        let b = enumerate(&p, EnumLimits::default()).unwrap();
        assert_eq!(a.rows(), b.rows(), "{name}");
    }
}

#[test]
fn felsch_agrees_with_hlt() {
    for name in ALL {
        let p = presentation(name);
        let h = enumerate_with(&p, EnumLimits::default(), EnumStrategy::Hlt).unwrap();
        let f = enumerate_with(&p, EnumLimits::default(), EnumStrategy::Felsch).unwrap();
        assert_eq!(h, f, "{name}");
    }
}

#[test]
fn cayley_presentations_reenumerate() {
    for name in ALL {
        let e = engine(name);
        if e.order() > 64 {
            continue;
        }
        let p = cayley_presentation(&e).unwrap();
        let again = engine_of(&p);
        assert_eq!(again.order(), e.order(), "{name}");
        assert_eq!(again.fingerprint_whole(), e.fingerprint_whole(), "{name}");
    }
    assert!(cayley_presentation(&engine("SL2_5")).is_err());
}

#[test]
fn generator_order_does_not_matter() {
    for name in ALL {
        let p = presentation(name);
        let a = engine_of(&p);
        let b = engine_of(&reversed(&p));
        assert_eq!(a.fingerprint_whole(), b.fingerprint_whole(), "{name}");
    }
}
