use nu_core::presentation::{parse_presentation, Letter};
use nu_core::{Presentation, Word};
use proptest::prelude::*;

const NAMES: [&str; 6] = ["a", "b", "x1", "y_2", "gen", "t"];

fn word(ngens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngens as u32, any::<bool>()), 0..12)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1..=NAMES.len()).prop_flat_map(|n| {
        prop::collection::vec(word(n), 1..5).prop_map(move |relators| {
            let generators = NAMES[..n].iter().map(|s| s.to_string()).collect();
            Presentation::new("G", generators, relators).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(p in presentation()) {
        let printed = p.to_string();
        let parsed = parse_presentation(&printed).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        prop_assert_eq!(&parsed[0], &p);
    }

    #[test]
    fn words_are_freely_reduced(w in word(3)) {
        for pair in w.letters().windows(2) {
            prop_assert_ne!(pair[0], pair[1].inv());
        }
        prop_assert!(w.concat(&w.inverse()).is_empty());
    }
}

#[test]
fn several_groups_in_one_file() {
    let text = "# comment\ngroup A = < a | a^2 >\n\ngroup B = < x, y | x^2 = y^3, [x,y] >\n";
    let ps = parse_presentation(text).unwrap();
    assert_eq!(ps.iter().map(|p| p.name.as_str()).collect::<Vec<_>>(), ["A", "B"]);
    assert_eq!(ps[1].relators.len(), 2);
}
