//! Finite group presentations: free-group words, the presentation DSL, and
//! multiplication-table presentations of realized groups.

mod parse;
mod word;

use std::collections::HashSet;
use std::fmt;

pub use parse::{parse_group, parse_presentation, ParseError, ParseErrorKind};
pub use word::{word_commutator, word_concat_reduce, word_conjugate, word_inverse, Letter, Word};

use crate::kernel::CayleyEngine;

/// Largest group accepted by [`cayley_presentation`].
pub const CAYLEY_GENERATOR_CAP: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum PresentationError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no group named {0:?}")]
    NoSuchGroup(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {gen} but only {ngens} generators exist")]
    GeneratorOutOfRange { relator: usize, gen: u32, ngens: usize },
    #[error("group of order {order} exceeds the generator cap of {cap}")]
    TooLarge { order: usize, cap: usize },
}

/// A presentation `< generators | relators >`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let p = Presentation {
            name: name.into(),
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let ngens = self.generators.len();
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(gen) = r.max_gen() {
                if gen as usize >= ngens {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: i,
                        gen,
                        ngens,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group {} = < {} | ", self.name, self.generators.join(", "))?;
        if self.relators.is_empty() {
            // No relators: emit a trivial one so the text stays parseable.
            Word::identity().write_with(f, &self.generators)?;
        }
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            r.write_with(f, &self.generators)?;
        }
        f.write_str(" >")
    }
}

/// Multiplication-table presentation of a realized finite group.
///
/// Generators are the non-identity elements (named `g<point>`); relators are
/// `g*h*(gh)^-1` when `gh != 1` and `g*h` otherwise.
pub fn cayley_presentation(engine: &CayleyEngine) -> Result<Presentation, PresentationError> {
    cayley_presentation_capped(engine, CAYLEY_GENERATOR_CAP)
}

pub fn cayley_presentation_capped(
    engine: &CayleyEngine,
    cap: usize,
) -> Result<Presentation, PresentationError> {
    let n = engine.order();
    if n > cap {
        return Err(PresentationError::TooLarge { order: n, cap });
    }
    // element point p (p >= 1) is generator p - 1
    let generators: Vec<String> = (1..n).map(|p| format!("g{p}")).collect();
    let mut relators = Vec::with_capacity((n - 1) * (n - 1));
    for g in 1..n as u32 {
        for h in 1..n as u32 {
            let gh = engine.mul(g, h);
            let mut w = Word::gen(g - 1).concat(&Word::gen(h - 1));
            if gh != 0 {
                w = w.concat(&Word::gen(gh - 1).inverse());
            }
            relators.push(w);
        }
    }
    Ok(Presentation {
        name: format!("{}_table", engine.name()),
        generators,
        relators,
    })
}
