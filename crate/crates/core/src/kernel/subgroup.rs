use std::collections::VecDeque;

use super::{lcm, CayleyEngine, Cols, KernelError};

/// A subgroup of an engine: its sorted point set and a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSet {
    engine_id: u64,
    points: Vec<u32>,
    gens: Vec<u32>,
}

impl SubgroupSet {
    pub fn engine_id(&self) -> u64 {
        self.engine_id
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.points.len() == 1
    }

    pub fn contains(&self, p: u32) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.points.len() <= other.points.len() && self.points.iter().all(|&p| other.contains(p))
    }

    /// First point of `self` missing from `other`.
    pub fn first_outside(&self, other: &SubgroupSet) -> Option<u32> {
        self.points.iter().copied().find(|&p| !other.contains(p))
    }

    pub fn same_points(&self, other: &SubgroupSet) -> bool {
        self.points == other.points
    }
}

/// Incremental closure of a growing generating set, starting from {1}.
pub(crate) struct Closure<'a> {
    e: &'a CayleyEngine,
    mark: Vec<bool>,
    points: Vec<u32>,
    gens: Vec<u32>,
    gen_cols: Vec<Cols>,
}

impl<'a> Closure<'a> {
    pub fn new(e: &'a CayleyEngine) -> Self {
        let mut mark = vec![false; e.order()];
        mark[0] = true;
        Closure {
            e,
            mark,
            points: vec![0],
            gens: Vec::new(),
            gen_cols: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Adds `g` as a generator if it is not already in the closure.
    pub fn add(&mut self, g: u32) -> bool {
        if self.mark[g as usize] {
            return false;
        }
        let gc = self.e.cols(g);
        let old = self.points.len();
        for i in 0..old {
            let q = self.e.apply_cols(self.points[i], &gc);
            if !self.mark[q as usize] {
                self.mark[q as usize] = true;
                self.points.push(q);
            }
        }
        self.gens.push(g);
        self.gen_cols.push(gc);
        let mut i = old;
        while i < self.points.len() {
            let p = self.points[i];
            for c in &self.gen_cols {
                let q = self.e.apply_cols(p, c);
                if !self.mark[q as usize] {
                    self.mark[q as usize] = true;
                    self.points.push(q);
                }
            }
            i += 1;
        }
        true
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn finish(self) -> SubgroupSet {
        let mut points = self.points;
        points.sort_unstable();
        SubgroupSet {
            engine_id: self.e.id(),
            points,
            gens: self.gens,
        }
    }
}

impl CayleyEngine {
    fn check(&self, h: &SubgroupSet) {
        assert_eq!(h.engine_id, self.id(), "subgroup belongs to a different engine");
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet {
            engine_id: self.id(),
            points: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> SubgroupSet {
        self.subgroup(&self.gen_points())
    }

    /// Subgroup generated by `gens`; redundant generators are dropped.
    pub fn subgroup(&self, gens: &[u32]) -> SubgroupSet {
        let mut cl = Closure::new(self);
        for &g in gens {
            cl.add(g);
        }
        cl.finish()
    }

    /// Certifies that `points` is a subgroup and finds generators for it.
    pub fn subgroup_from_points(&self, points: &[u32]) -> Result<SubgroupSet, KernelError> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut cl = Closure::new(self);
        for &p in &sorted {
            cl.add(p);
            if cl.len() > sorted.len() {
                break;
            }
        }
        let s = cl.finish();
        if s.points != sorted {
            let witness = s
                .points
                .iter()
                .copied()
                .find(|p| sorted.binary_search(p).is_err())
                .unwrap_or(0);
            // report the offending product of two members
            let (a, b) = find_product_witness(self, &sorted, witness);
            return Err(KernelError::NotClosed {
                size: sorted.len(),
                a,
                b,
                product: self.mul(a, b),
            });
        }
        Ok(s)
    }

    /// Smallest subgroup containing `seed` and normalized by `under`.
    pub fn normal_closure(&self, seed: &[u32], under: &SubgroupSet) -> SubgroupSet {
        self.check(under);
        self.normal_closure_by(seed, &under.gens)
    }

    /// Normal closure under conjugation by the listed points.
    pub fn normal_closure_by(&self, seed: &[u32], conjugators: &[u32]) -> SubgroupSet {
        let mut cl = Closure::new(self);
        let mut work = VecDeque::new();
        for &s in seed {
            if cl.add(s) {
                work.push_back(s);
            }
        }
        let conj: Vec<(Cols, Cols)> = conjugators
            .iter()
            .map(|&c| (self.inv_cols(c), self.cols(c)))
            .collect();
        while let Some(x) = work.pop_front() {
            let xc = self.cols(x);
            for (ci, cc) in &conj {
                let y = self.apply_cols(self.apply_cols(self.apply_cols(0, ci), &xc), cc);
                if cl.add(y) {
                    work.push_back(y);
                }
            }
        }
        cl.finish()
    }

    /// `[H, K]`: normal closure in `<H, K>` of the generator commutators.
    pub fn commutator_subgroup(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        self.check(h);
        self.check(k);
        let mut seeds = Vec::new();
        for &x in &h.gens {
            for &y in &k.gens {
                seeds.push(self.comm(x, y));
            }
        }
        let conj: Vec<u32> = h.gens.iter().chain(&k.gens).copied().collect();
        self.normal_closure_by(&seeds, &conj)
    }

    /// `[H, _n K]`.
    pub fn iterated_commutator(&self, h: &SubgroupSet, k: &SubgroupSet, n: usize) -> SubgroupSet {
        let mut cur = h.clone();
        for _ in 0..n {
            cur = self.commutator_subgroup(&cur, k);
        }
        cur
    }

    /// `[H, H^(1), H^(2), ...]` up to the first repeat.
    pub fn derived_series(&self, h: &SubgroupSet) -> Vec<SubgroupSet> {
        let mut out = vec![h.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next.same_points(last) {
                return out;
            }
            out.push(next);
        }
    }

    /// `[gamma_1(H) = H, gamma_2(H), ...]` up to the first repeat.
    pub fn lower_central_series(&self, h: &SubgroupSet) -> Vec<SubgroupSet> {
        let mut out = vec![h.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.commutator_subgroup(last, h);
            if next.same_points(last) {
                return out;
            }
            out.push(next);
        }
    }

    pub fn center(&self, h: &SubgroupSet) -> SubgroupSet {
        self.check(h);
        let gcols: Vec<Cols> = h.gens.iter().map(|&g| self.cols(g)).collect();
        let pts: Vec<u32> = h
            .points
            .iter()
            .copied()
            .filter(|&z| {
                let zc = self.cols(z);
                h.gens
                    .iter()
                    .zip(&gcols)
                    .all(|(&g, gc)| self.apply_cols(z, gc) == self.apply_cols(g, &zc))
            })
            .collect();
        self.subgroup_from_points(&pts)
            .expect("centre of a subgroup is a subgroup")
    }

    pub fn intersection(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        self.check(h);
        self.check(k);
        let pts = sorted_intersection(&h.points, &k.points);
        self.subgroup_from_points(&pts)
            .expect("intersection of subgroups is a subgroup")
    }

    /// `HK` when it is a subgroup; otherwise reports the order mismatch.
    pub fn product_set(&self, h: &SubgroupSet, k: &SubgroupSet) -> Result<SubgroupSet, KernelError> {
        self.check(h);
        self.check(k);
        let mut cl = Closure::new(self);
        for &g in h.gens.iter().chain(&k.gens) {
            cl.add(g);
        }
        let join = cl.finish();
        let meet = sorted_intersection(&h.points, &k.points).len();
        let expected = h.order() * k.order() / meet;
        if join.order() == expected {
            Ok(join)
        } else {
            Err(KernelError::ProductNotClosed {
                join: join.order(),
                expected,
            })
        }
    }

    pub fn subgroups_equal(&self, h: &SubgroupSet, k: &SubgroupSet) -> bool {
        self.check(h);
        self.check(k);
        h.same_points(k)
    }

    pub fn exponent(&self, h: &SubgroupSet) -> usize {
        self.check(h);
        h.points.iter().fold(1, |acc, &p| lcm(acc, self.order_of(p)))
    }

    pub fn is_abelian(&self, h: &SubgroupSet) -> bool {
        self.noncommuting_pair(&h.gens, &h.gens).is_none()
    }

    /// A pair `(x, y)` from the two lists with `xy != yx`, if one exists.
    pub fn noncommuting_pair(&self, xs: &[u32], ys: &[u32]) -> Option<(u32, u32)> {
        let ycols: Vec<Cols> = ys.iter().map(|&y| self.cols(y)).collect();
        for &x in xs {
            let xc = self.cols(x);
            for (&y, yc) in ys.iter().zip(&ycols) {
                if self.apply_cols(x, yc) != self.apply_cols(y, &xc) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Witness `(element, conjugator)` of `n` failing to be normalized by `by`.
    pub fn normality_witness(&self, n: &SubgroupSet, by: &[u32]) -> Option<(u32, u32)> {
        for &c in by {
            let ci = self.inv_cols(c);
            let cc = self.cols(c);
            for &x in &n.gens {
                let y = self.apply_cols(self.apply_cols(self.apply_cols(0, &ci), &self.cols(x)), &cc);
                if !n.contains(y) {
                    return Some((x, c));
                }
            }
        }
        None
    }

    /// Image of a subgroup of this engine under a point map.
    pub fn map_points(&self, h: &SubgroupSet, f: impl Fn(u32) -> u32, target: &CayleyEngine) -> SubgroupSet {
        self.check(h);
        let gens: Vec<u32> = h.gens.iter().map(|&g| f(g)).collect();
        target.subgroup(&gens)
    }
}

fn find_product_witness(e: &CayleyEngine, sorted: &[u32], fallback: u32) -> (u32, u32) {
    for &a in sorted {
        for &b in sorted {
            let ab = e.mul(a, b);
            if sorted.binary_search(&ab).is_err() {
                return (a, b);
            }
        }
    }
    (fallback, 0)
}

pub(crate) fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
