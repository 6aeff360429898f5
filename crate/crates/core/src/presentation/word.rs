use std::fmt;

/// One letter of a free-group word: a generator index with an exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: u32) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: u32) -> Self {
        Letter { gen, inverse: true }
    }

    /// +1 or -1.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[must_use]
    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table of stride `2 * ngens`.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    #[inline]
    pub fn from_column(col: usize) -> Self {
        Letter {
            gen: (col / 2) as u32,
            inverse: col % 2 == 1,
        }
    }
}

/// A freely reduced word in a free group.
///
/// Every constructor reduces, so two `Word`s are equal exactly when they
/// represent the same free-group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: u32) -> Self {
        Word {
            letters: vec![Letter::pos(gen)],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Highest generator index used, if any.
    pub fn max_gen(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.gen).max()
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Product `self * other`, freely reduced.
    #[must_use]
    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    #[must_use]
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        Word::from_letters(
            x.inverse()
                .letters
                .into_iter()
                .chain(y.inverse().letters)
                .chain(x.letters.iter().copied())
                .chain(y.letters.iter().copied()),
        )
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(x: &Word, y: &Word) -> Self {
        y.inverse().concat(x).concat(y)
    }

    /// Left-normed commutator `[x1, ..., xk] = [[x1, ..., x(k-1)], xk]`.
    pub fn left_normed(parts: &[Word]) -> Self {
        let mut it = parts.iter();
        let Some(first) = it.next() else {
            return Word::identity();
        };
        it.fold(first.clone(), |acc, w| Word::commutator(&acc, w))
    }

    /// Cyclically reduced conjugate (used when scanning relators).
    #[must_use]
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0usize, l.len());
        while j >= i + 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// Rename generators through `f`.
    #[must_use]
    pub fn map_gens(&self, f: impl Fn(u32) -> u32) -> Self {
        Word::from_letters(self.letters.iter().map(|l| Letter::new(f(l.gen), l.inverse)))
    }

    /// Writes the word in DSL syntax, collapsing runs into powers.
    pub fn write_with(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        if self.letters.is_empty() {
            // The grammar has no empty word; `x*x^-1` parses back to it.
            let n = names.first().map(String::as_str).unwrap_or("x");
            return write!(f, "{n}*{n}^-1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            let name = names
                .get(l.gen as usize)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.gen));
            let exp = run as i64 * l.sign() as i64;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Word, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_with(f, self.1)
            }
        }
        D(self, names)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub fn word_commutator(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y)
}

pub fn word_conjugate(x: &Word, y: &Word) -> Word {
    Word::conjugate(x, y)
}

pub fn word_inverse(x: &Word) -> Word {
    x.inverse()
}

pub fn word_concat_reduce(x: &Word, y: &Word) -> Word {
    x.concat(y)
}
