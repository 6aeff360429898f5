//! Concrete permutation models of the corpus groups, built without the
//! enumerator or the engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use nu_core::presentation::parse_group;
use nu_core::verify::BUILTIN_CORPUS;
use nu_core::{enumerate, to_regular_engine, CayleyEngine, EnumLimits, Presentation, Word};

/// A permutation acting on the right: `x * (p q) = (x * p) * q`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn invert(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

pub fn cycles(n: usize, cs: &[&[u32]]) -> Perm {
    let mut p = identity(n);
    for c in cs {
        for (i, &x) in c.iter().enumerate() {
            p[x as usize] = c[(i + 1) % c.len()];
        }
    }
    p
}

pub fn eval(word: &Word, images: &[Perm]) -> Perm {
    let n = images.first().map_or(1, Vec::len);
    word.letters().iter().fold(identity(n), |acc, l| {
        let g = &images[l.gen as usize];
        if l.inverse {
            compose(&acc, &invert(g))
        } else {
            compose(&acc, g)
        }
    })
}

/// Every element of the group generated by `gens`.
pub fn closure(gens: &[Perm]) -> Vec<Perm> {
    let n = gens.first().map_or(1, Vec::len);
    let start = identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

pub fn element_order(p: &Perm) -> usize {
    let id = identity(p.len());
    let mut x = p.clone();
    let mut k = 1;
    while x != id {
        x = compose(&x, p);
        k += 1;
    }
    k
}

pub fn order_histogram(elements: &[Perm]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for e in elements {
        *h.entry(element_order(e)).or_insert(0) += 1;
    }
    h
}

/// Right action of an `n x n` matrix over `F_p` on the row vectors of
/// `F_p^n`, encoded base `p`.
pub fn matrix_perm(m: &[&[u32]], p: u32) -> Perm {
    let n = m.len();
    let size = (p as usize).pow(n as u32);
    (0..size)
        .map(|code| {
            let mut v = vec![0u32; n];
            let mut c = code;
            for x in v.iter_mut() {
                *x = (c % p as usize) as u32;
                c /= p as usize;
            }
            let mut image = 0usize;
            for j in (0..n).rev() {
                let s: u32 = (0..n).map(|i| v[i] * m[i][j]).sum::<u32>() % p;
                image = image * p as usize + s as usize;
            }
            image as u32
        })
        .collect()
}

/// `SL(2,5)` generators `s, t` with `(st)^2 = s^3 = t^5 != 1` that generate
/// all 120 elements, found by exhaustive search.
fn binary_icosahedral() -> Vec<Perm> {
    let mut mats = Vec::new();
    for a in 0..5u32 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if (a * d + 25 - b * c) % 5 == 1 {
                        mats.push(matrix_perm(&[&[a, b], &[c, d]], 5));
                    }
                }
            }
        }
    }
    assert_eq!(mats.len(), 120);
    let id = identity(25);
    let pow = |x: &Perm, k: usize| (0..k).fold(id.clone(), |acc, _| compose(&acc, x));
    for s in &mats {
        let s3 = pow(s, 3);
        if s3 == id {
            continue;
        }
        for t in &mats {
            let st = compose(s, t);
            if pow(t, 5) == s3 && pow(&st, 2) == s3 {
                let gens = vec![s.clone(), t.clone()];
                if closure(&gens).len() == 120 {
                    return gens;
                }
            }
        }
    }
    panic!("no generating pair");
}

/// Images of the presentation generators of a built-in group.
pub fn model(name: &str) -> Vec<Perm> {
    let cyclic = |n: u32| vec![cycles(n as usize, &[&(0..n).collect::<Vec<_>>()])];
    match name {
        "C1" => vec![identity(1)],
        "C2" => cyclic(2),
        "C3" => cyclic(3),
        "C4" => cyclic(4),
        "C6" => cyclic(6),
        "C2xC2" => vec![cycles(4, &[&[0, 1]]), cycles(4, &[&[2, 3]])],
        "C3xC3" => vec![cycles(6, &[&[0, 1, 2]]), cycles(6, &[&[3, 4, 5]])],
        "S3" => vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[1, 2]])],
        "D4" => vec![cycles(4, &[&[0, 1, 2, 3]]), cycles(4, &[&[1, 3]])],
        "D6" => vec![cycles(6, &[&[0, 1, 2, 3, 4, 5]]), cycles(6, &[&[1, 5], &[2, 4]])],
        "A4" => vec![cycles(4, &[&[0, 1], &[2, 3]]), cycles(4, &[&[0, 1, 2]])],
        "Q8" => vec![matrix_perm(&[&[0, 1], &[2, 0]], 3), matrix_perm(&[&[1, 1], &[1, 2]], 3)],
        "H27" => {
            let a = matrix_perm(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], 3);
            let b = matrix_perm(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]], 3);
            let c = compose(&compose(&invert(&a), &invert(&b)), &compose(&a, &b));
            vec![a, b, c]
        }
        "SL2_5" => binary_icosahedral(),
        _ => panic!("no model for {name}"),
    }
}

pub fn presentation(name: &str) -> Presentation {
    parse_group(BUILTIN_CORPUS, name).unwrap()
}

pub fn engine(name: &str) -> Arc<CayleyEngine> {
    engine_of(&presentation(name))
}

pub fn engine_of(p: &Presentation) -> Arc<CayleyEngine> {
    Arc::new(to_regular_engine(enumerate(p, EnumLimits::default()).unwrap(), p))
}

/// The same group with its generators listed in reverse order.
pub fn reversed(p: &Presentation) -> Presentation {
    let n = p.generators.len() as u32;
    Presentation::new(
        format!("{}_rev", p.name),
        p.generators.iter().rev().cloned().collect(),
        p.relators.iter().map(|r| r.map_gens(|g| n - 1 - g)).collect(),
    )
    .unwrap()
}

/// Light corpus names, smallest first.
pub const LIGHT: [&str; 12] = ["C1", "C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8", "C3xC3", "D6", "A4"];
