//! Brute-force non-abelian tensor square and biderivation checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::coset_enum::{enumerate, EnumError, EnumLimits};
use crate::kernel::{to_regular_engine, CayleyEngine};
use crate::presentation::{Letter, Presentation, Word};

/// Largest group accepted by [`tensor_square`].
pub const TENSOR_CAP: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum TensorError {
    #[error("group of order {order} exceeds the tensor-square cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

impl TensorError {
    pub fn is_limit(&self) -> bool {
        match self {
            TensorError::TooLarge { .. } => true,
            TensorError::Enumeration(e) => e.is_limit(),
        }
    }
}

/// `G (x) G` realized as an engine, with the symbol `g (x) h` at generator
/// `g * |G| + h`.
#[derive(Debug, Clone)]
pub struct TensorSquare {
    pub engine: CayleyEngine,
    base_order: usize,
}

impl TensorSquare {
    /// Point of `g (x) h`.
    pub fn symbol(&self, g: u32, h: u32) -> u32 {
        self.engine
            .gen_point(g as usize * self.base_order + h as usize)
    }
}

/// Generators `t(g,h)` for all ordered pairs; relators
/// `t(gg1,h)^-1 t(g^g1,h^g1) t(g1,h)` and `t(g,hh1)^-1 t(g,h1) t(g^h1,h^h1)`.
pub fn tensor_presentation(g: &CayleyEngine) -> Presentation {
    let n = g.order() as u32;
    let t = |a: u32, b: u32| a * n + b;
    let generators = (0..n)
        .flat_map(|a| (0..n).map(move |b| format!("t_{a}_{b}")))
        .collect();
    let word = |x: u32, y: u32, z: u32| {
        Word::from_letters([Letter::neg(x), Letter::pos(y), Letter::pos(z)])
    };
    let mut relators = Vec::with_capacity(2 * (n as usize).pow(3));
    for a in 0..n {
        for a1 in 0..n {
            let prod = g.mul(a, a1);
            for b in 0..n {
                relators.push(word(t(prod, b), t(g.conj(a, a1), g.conj(b, a1)), t(a1, b)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for b1 in 0..n {
                let prod = g.mul(b, b1);
                relators.push(word(t(a, prod), t(a, b1), t(g.conj(a, b1), g.conj(b, b1))));
            }
        }
    }
    Presentation {
        name: format!("{}_tensor", g.name()),
        generators,
        relators,
    }
}

pub fn tensor_square(g: &CayleyEngine, limits: EnumLimits) -> Result<TensorSquare, TensorError> {
    tensor_square_capped(g, limits, TENSOR_CAP)
}

pub fn tensor_square_capped(g: &CayleyEngine, limits: EnumLimits, cap: usize) -> Result<TensorSquare, TensorError> {
    if g.order() > cap {
        return Err(TensorError::TooLarge { order: g.order(), cap });
    }
    let pres = tensor_presentation(g);
    let table = enumerate(&pres, limits)?;
    Ok(TensorSquare {
        engine: to_regular_engine(table, &pres),
        base_order: g.order(),
    })
}

/// Which axiom failed, with its arguments.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum BiderivationFailure {
    /// `f(a a1, b) != f(a^a1, b^a1) f(a1, b)`
    Left { a: u32, a1: u32, b: u32 },
    /// `f(a, b b1) != f(a, b1) f(a^b1, b^b1)`
    Right { a: u32, b: u32, b1: u32 },
}

/// How the quadruples were covered.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BiderivationReport {
    pub quadruples: u64,
    pub exhaustive: bool,
    pub failure: Option<BiderivationFailure>,
}

impl BiderivationReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Largest group swept over all quadruples by default.
pub const BIDERIVATION_EXHAUSTIVE_CAP: usize = 12;

/// Both biderivation axioms for `f: G x G -> L`.
///
/// Each axiom involves three of the four variables, so the exhaustive sweep
/// runs over triples and covers `|G|^4` quadruples. Above `exhaustive_cap`,
/// `samples` random quadruples are drawn from a seeded generator.
pub fn biderivation_check(
    g: &CayleyEngine,
    f: impl Fn(u32, u32) -> u32,
    l: &CayleyEngine,
    exhaustive_cap: usize,
    samples: u64,
    seed: u64,
) -> BiderivationReport {
    let n = g.order() as u32;
    let table: Vec<u32> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
    let fv = |a: u32, b: u32| table[(a * n + b) as usize];
    let left = |a: u32, a1: u32, b: u32| fv(g.mul(a, a1), b) == l.mul(fv(g.conj(a, a1), g.conj(b, a1)), fv(a1, b));
    let right = |a: u32, b: u32, b1: u32| fv(a, g.mul(b, b1)) == l.mul(fv(a, b1), fv(g.conj(a, b1), g.conj(b, b1)));
    if g.order() <= exhaustive_cap {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !left(x, y, z) {
                        return report(n, true, Some(BiderivationFailure::Left { a: x, a1: y, b: z }));
                    }
                    if !right(x, y, z) {
                        return report(n, true, Some(BiderivationFailure::Right { a: x, b: y, b1: z }));
                    }
                }
            }
        }
        return report(n, true, None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, a1, b, b1) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if !left(a, a1, b) {
            return BiderivationReport {
                quadruples: samples,
                exhaustive: false,
                failure: Some(BiderivationFailure::Left { a, a1, b }),
            };
        }
        if !right(a, b, b1) {
            return BiderivationReport {
                quadruples: samples,
                exhaustive: false,
                failure: Some(BiderivationFailure::Right { a, b, b1 }),
            };
        }
    }
    BiderivationReport {
        quadruples: samples,
        exhaustive: false,
        failure: None,
    }
}

fn report(n: u32, exhaustive: bool, failure: Option<BiderivationFailure>) -> BiderivationReport {
    BiderivationReport {
        quadruples: (n as u64).pow(4),
        exhaustive,
        failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::test_groups::*;

    #[test]
    fn trivial_and_c2() {
        let t = tensor_square(&cyclic(1), EnumLimits::default()).unwrap();
        assert_eq!(t.engine.order(), 1);
        // hand expansion for C2: t(a,a)^2 = t(1,a) = 1
        let c2 = cyclic(2);
        let t = tensor_square(&c2, EnumLimits::default()).unwrap();
        assert_eq!(t.engine.order(), 2);
        assert_eq!(t.engine.order_of(t.symbol(1, 1)), 2);
        assert_eq!(t.symbol(0, 1), 0);
    }

    #[test]
    fn presentation_shape() {
        let s3 = s3();
        let p = tensor_presentation(&s3);
        assert_eq!(p.generators.len(), 36);
        assert_eq!(p.relators.len(), 2 * 216);
        assert!(p.relators.iter().all(|r| r.len() <= 3));
    }

    #[test]
    fn cyclic_tensor_squares_are_cyclic() {
        for n in [3, 4, 6] {
            let c = cyclic(n);
            let t = tensor_square(&c, EnumLimits::default()).unwrap();
            assert_eq!(t.engine.order(), n);
            assert!(t.engine.is_abelian(&t.engine.whole()));
        }
    }

    #[test]
    fn j_is_a_biderivation() {
        for g in [s3(), d4(), q8()] {
            let t = tensor_square(&g, EnumLimits::default()).unwrap();
            let rep = biderivation_check(&g, |a, b| t.symbol(a, b), &t.engine, 12, 0, 0);
            assert!(rep.holds(), "{rep:?}");
            assert!(rep.exhaustive);
        }
    }

    #[test]
    fn constant_identity_is_a_biderivation() {
        let g = d4();
        assert!(biderivation_check(&g, |_, _| 0, &g, 12, 0, 0).holds());
    }

    #[test]
    fn commutator_map_is_a_biderivation() {
        let g = s3();
        assert!(biderivation_check(&g, |a, b| g.comm(a, b), &g, 12, 0, 0).holds());
    }

    #[test]
    fn projection_is_not_a_biderivation() {
        let g = s3();
        let rep = biderivation_check(&g, |a, _| a, &g, 12, 0, 0);
        assert!(rep.failure.is_some());
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let g = d4();
        let t = tensor_square(&g, EnumLimits::default()).unwrap();
        let a = biderivation_check(&g, |x, y| t.symbol(x, y), &t.engine, 4, 500, 7);
        let b = biderivation_check(&g, |x, y| t.symbol(x, y), &t.engine, 4, 500, 7);
        assert_eq!(a, b);
        assert!(!a.exhaustive && a.holds());
    }
}
