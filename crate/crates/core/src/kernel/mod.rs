//! Group arithmetic on regular representations.
//!
//! A [`CayleyEngine`] is a finite group acting on its own elements by right
//! multiplication. Point `p` stands for the element spelled by its Schreier
//! word; the identity is point 0. Products are computed by tracing the
//! Schreier word of the right factor through the generator columns, so the
//! memory footprint stays linear in the group order.

mod fingerprint;
mod hom;
mod quotient;
mod subgroup;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use smallvec::SmallVec;

pub use fingerprint::Fingerprint;
pub use hom::{hom_from_gen_images, Homomorphism};
pub use quotient::{direct_product_engine, QuotientEngine};
pub use subgroup::SubgroupSet;

use crate::coset_enum::CosetTable;
use crate::presentation::{Letter, Presentation, Word};

/// Largest engine built by products and quotients.
pub const POINT_CAP: usize = 2_000_000;

pub(crate) const UNDEF: u32 = u32::MAX;

/// Column sequence spelling an element.
pub type Cols = SmallVec<[u32; 32]>;

static NEXT_ENGINE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("point set of size {size} is not closed under multiplication (witness {a} * {b} = {product})")]
    NotClosed { size: usize, a: u32, b: u32, product: u32 },
    #[error("product set is not a subgroup: |<H,K>| = {join}, |H||K|/|H∩K| = {expected}")]
    ProductNotClosed { join: usize, expected: usize },
    #[error("subgroup is not normal: conjugate of {element} by {conjugator} lies outside")]
    NotNormal { element: u32, conjugator: u32 },
    #[error("subgroup is not contained in the ambient subgroup (witness {0})")]
    NotContained(u32),
    #[error("group is not abelian: {a} and {b} do not commute")]
    NotAbelian { a: u32, b: u32 },
    #[error("engine of order {order} exceeds the point cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("generators reach only {reached} of {order} points")]
    NotGenerating { reached: usize, order: usize },
    #[error("generator and image lists differ in length ({gens} vs {images})")]
    LengthMismatch { gens: usize, images: usize },
    #[error("generator assignment is not a homomorphism: closure of the graph has order {closure_order} > {domain_order}")]
    NotWellDefined { closure_order: usize, domain_order: usize },
}

/// A finite group in its regular representation.
#[derive(Debug, Clone)]
pub struct CayleyEngine {
    id: u64,
    name: String,
    gen_names: Vec<String>,
    ngens: usize,
    n: usize,
    table: Vec<u32>,
    // Schreier tree: point p is reached from sch_parent[p] by column sch_col[p]
    sch_parent: Vec<u32>,
    sch_col: Vec<u32>,
    depth: Vec<u32>,
}

impl CayleyEngine {
    /// Builds an engine from a complete permutation table of stride
    /// `2 * gen_names.len()`, columns alternating generator / inverse.
    /// Schreier words are assigned breadth-first from point 0.
    pub fn from_table(name: impl Into<String>, gen_names: Vec<String>, table: Vec<u32>) -> Self {
        let ngens = gen_names.len();
        let stride = 2 * ngens;
        let n = if stride == 0 { 1 } else { table.len() / stride };
        debug_assert!(stride == 0 || table.len() == n * stride);
        let mut sch_parent = vec![UNDEF; n];
        let mut sch_col = vec![UNDEF; n];
        let mut depth = vec![0u32; n];
        sch_parent[0] = 0;
        let mut q = VecDeque::from([0u32]);
        while let Some(p) = q.pop_front() {
            for c in 0..stride {
                let r = table[p as usize * stride + c];
                if sch_parent[r as usize] == UNDEF {
                    sch_parent[r as usize] = p;
                    sch_col[r as usize] = c as u32;
                    depth[r as usize] = depth[p as usize] + 1;
                    q.push_back(r);
                }
            }
        }
        debug_assert!(sch_parent.iter().all(|&x| x != UNDEF), "table is not transitive");
        CayleyEngine {
            id: NEXT_ENGINE_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            gen_names,
            ngens,
            n,
            table,
            sch_parent,
            sch_col,
            depth,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn stride(&self) -> usize {
        2 * self.ngens
    }

    /// Point of generator `i`.
    pub fn gen_point(&self, i: usize) -> u32 {
        self.table[2 * i]
    }

    pub fn gen_points(&self) -> Vec<u32> {
        (0..self.ngens).map(|i| self.gen_point(i)).collect()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Longest Schreier word.
    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0) as usize
    }

    #[inline]
    pub fn apply_col(&self, p: u32, col: u32) -> u32 {
        self.table[p as usize * self.stride() + col as usize]
    }

    #[inline]
    pub fn apply_cols(&self, p: u32, cols: &[u32]) -> u32 {
        let s = self.stride();
        cols.iter().fold(p, |x, &c| self.table[x as usize * s + c as usize])
    }

    /// Schreier word of `p` as a column sequence.
    pub fn cols(&self, p: u32) -> Cols {
        let d = self.depth[p as usize] as usize;
        let mut out: Cols = SmallVec::from_elem(0, d);
        let mut x = p;
        for k in (0..d).rev() {
            out[k] = self.sch_col[x as usize];
            x = self.sch_parent[x as usize];
        }
        out
    }

    /// Column sequence of the inverse element.
    pub fn inv_cols(&self, p: u32) -> Cols {
        let mut c = self.cols(p);
        c.reverse();
        for x in c.iter_mut() {
            *x ^= 1;
        }
        c
    }

    pub fn word_for(&self, p: u32) -> Word {
        Word::from_letters(self.cols(p).iter().map(|&c| Letter::from_column(c as usize)))
    }

    /// Point reached from the identity along `w` (a word in the engine's generators).
    pub fn eval(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .fold(0, |x, l| self.apply_col(x, l.column() as u32))
    }

    pub fn mul(&self, p: u32, q: u32) -> u32 {
        self.apply_cols(p, &self.cols(q))
    }

    pub fn inv(&self, p: u32) -> u32 {
        self.apply_cols(0, &self.inv_cols(p))
    }

    /// `q^-1 p q`.
    pub fn conj(&self, p: u32, q: u32) -> u32 {
        let qc = self.cols(q);
        let x = self.apply_cols(0, &self.inv_cols(q));
        let x = self.apply_cols(x, &self.cols(p));
        self.apply_cols(x, &qc)
    }

    /// `[p, q] = p^-1 q^-1 p q`.
    pub fn comm(&self, p: u32, q: u32) -> u32 {
        let x = self.apply_cols(0, &self.inv_cols(p));
        let x = self.apply_cols(x, &self.inv_cols(q));
        let x = self.apply_cols(x, &self.cols(p));
        self.apply_cols(x, &self.cols(q))
    }

    /// Product of a sequence of points.
    pub fn product(&self, ps: &[u32]) -> u32 {
        ps.iter().fold(0, |x, &p| self.apply_cols(x, &self.cols(p)))
    }

    pub fn pow(&self, p: u32, k: i64) -> u32 {
        let cols = if k < 0 { self.inv_cols(p) } else { self.cols(p) };
        (0..k.unsigned_abs()).fold(0, |x, _| self.apply_cols(x, &cols))
    }

    /// Left-normed commutator `[x1, ..., xk]`.
    pub fn comm_n(&self, ps: &[u32]) -> u32 {
        let mut it = ps.iter();
        let Some(&first) = it.next() else { return 0 };
        it.fold(first, |acc, &q| self.comm(acc, q))
    }

    /// Element order: the length of the cycle through point 0 under right
    /// multiplication by `p`.
    pub fn order_of(&self, p: u32) -> usize {
        let cols = self.cols(p);
        let mut x = p;
        let mut k = 1;
        while x != 0 {
            x = self.apply_cols(x, &cols);
            k += 1;
        }
        k
    }

    pub fn commute(&self, p: u32, q: u32) -> bool {
        self.mul(p, q) == self.mul(q, p)
    }

    /// Regular-representation engine of a completed coset table.
    pub fn from_coset_table(table: CosetTable, pres: &Presentation) -> Self {
        CayleyEngine::from_table(pres.name.clone(), pres.generators.clone(), table.into_rows())
    }

    /// Iterates over all points.
    pub fn points(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }
}

/// Wraps a completed, standardized table as a regular-representation engine.
pub fn to_regular_engine(table: CosetTable, pres: &Presentation) -> CayleyEngine {
    CayleyEngine::from_coset_table(table, pres)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization as (prime, exponent) pairs.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}


#[cfg(test)]
mod tests {
    use super::test_groups::*;
    use super::*;

    /// Brute-force S3 as permutations of {0,1,2}; a = (0 1), b = (1 2).
    fn s3_perm_orders() -> Vec<usize> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let order = |p: &[usize; 3]| {
            let mut x = *p;
            let mut k = 1;
            while x != [0, 1, 2] {
                x = [p[x[0]], p[x[1]], p[x[2]]];
                k += 1;
            }
            k
        };
        let mut v: Vec<usize> = perms.iter().map(order).collect();
        v.sort();
        v
    }

    #[test]
    fn s3_order_histogram_matches_permutations() {
        let e = s3();
        assert_eq!(e.order(), 6);
        let mut orders: Vec<usize> = e.points().map(|p| e.order_of(p)).collect();
        orders.sort();
        assert_eq!(orders, s3_perm_orders());
    }

    #[test]
    fn identity_and_commutator_laws() {
        let e = d4();
        for p in e.points() {
            assert_eq!(e.mul(0, p), p);
            assert_eq!(e.mul(p, 0), p);
            assert_eq!(e.comm(p, p), 0);
            assert_eq!(e.mul(p, e.inv(p)), 0);
        }
    }

    #[test]
    fn ab_has_order_three_in_s3() {
        let e = s3();
        let ab = e.mul(e.gen_point(0), e.gen_point(1));
        assert_eq!(e.order_of(ab), 3);
    }

    #[test]
    fn cyclic_schreier_depths() {
        let e = cyclic(4);
        let mut d: Vec<usize> = e.points().map(|p| e.word_for(p).len()).collect();
        d.sort();
        assert_eq!(d, vec![0, 1, 1, 2]);
        let c2 = cyclic(2);
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.apply_col(0, 0), 1);
        assert_eq!(c2.apply_col(1, 0), 0);
    }

    #[test]
    fn regular_representation_law() {
        for e in [s3(), d4(), q8()] {
            for p in e.points() {
                let cols = e.cols(p);
                let mut x = 0;
                let mut k = 0;
                loop {
                    x = e.apply_cols(x, &cols);
                    k += 1;
                    if x == 0 {
                        break;
                    }
                }
                assert_eq!(k, e.order_of(p));
                assert_eq!(e.eval(&e.word_for(p)), p);
            }
        }
    }

    #[test]
    fn associativity_exhaustive_d4() {
        let e = d4();
        for a in e.points() {
            for b in e.points() {
                for c in e.points() {
                    assert_eq!(e.mul(e.mul(a, b), c), e.mul(a, e.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(177147), vec![(3, 11)]);
    }
}
