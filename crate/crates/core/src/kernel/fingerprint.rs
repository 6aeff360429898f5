use std::collections::BTreeMap;

use serde::Serialize;

use super::{CayleyEngine, Cols, SubgroupSet};

/// Isomorphism invariants of a finite group. Equal fingerprints are evidence,
/// not proof, of isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: usize,
    pub abelian_invariants: Vec<u64>,
    pub derived_length: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub center_order: usize,
    pub class_sizes: Vec<usize>,
    pub order_histogram: BTreeMap<usize, usize>,
}

impl CayleyEngine {
    pub fn fingerprint(&self, h: &SubgroupSet) -> Fingerprint {
        let derived = self.derived_series(h);
        let lower = self.lower_central_series(h);
        let ab = self
            .quotient_engine(h, &derived.get(1).cloned().unwrap_or_else(|| h.clone()))
            .expect("derived subgroup is normal");
        let abelian_invariants = ab
            .engine
            .abelian_invariants(&ab.engine.whole())
            .expect("abelianization is abelian");
        let mut order_histogram = BTreeMap::new();
        for &p in h.points() {
            *order_histogram.entry(self.order_of(p)).or_insert(0) += 1;
        }
        let exponent = order_histogram
            .keys()
            .fold(1, |acc, &o| super::lcm(acc, o));
        Fingerprint {
            order: h.order(),
            exponent,
            abelian_invariants,
            derived_length: derived.last().unwrap().is_trivial().then(|| derived.len() - 1),
            nilpotency_class: lower.last().unwrap().is_trivial().then(|| lower.len() - 1),
            center_order: self.center(h).order(),
            class_sizes: self.class_sizes(h),
            order_histogram,
        }
    }

    pub fn fingerprint_whole(&self) -> Fingerprint {
        self.fingerprint(&self.whole())
    }

    /// Sorted sizes of the conjugacy classes of `h`.
    pub fn class_sizes(&self, h: &SubgroupSet) -> Vec<usize> {
        let conj: Vec<(Cols, Cols)> = h.gens().iter().map(|&c| (self.inv_cols(c), self.cols(c))).collect();
        let mut seen = vec![false; h.order()];
        let idx = |p: u32| h.points().binary_search(&p).unwrap();
        let mut sizes = Vec::new();
        for i in 0..h.order() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut orbit = vec![h.points()[i]];
            let mut k = 0;
            while k < orbit.len() {
                let xc = self.cols(orbit[k]);
                for (ci, cc) in &conj {
                    let y = self.apply_cols(self.apply_cols(self.apply_cols(0, ci), &xc), cc);
                    let j = idx(y);
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            sizes.push(orbit.len());
        }
        sizes.sort_unstable();
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;

    #[test]
    fn trivial_fingerprint() {
        let f = cyclic(1).fingerprint_whole();
        assert_eq!((f.order, f.exponent), (1, 1));
        assert_eq!(f.derived_length, Some(0));
        assert_eq!(f.nilpotency_class, Some(0));
    }

    #[test]
    fn s3_fingerprint() {
        let f = s3().fingerprint_whole();
        // S3 classes: identity, 3 transpositions, 2 three-cycles
        assert_eq!(f.class_sizes, vec![1, 2, 3]);
        assert_eq!(f.abelian_invariants, vec![2]);
        assert_eq!(f.derived_length, Some(2));
        assert_eq!(f.nilpotency_class, None);
        assert_eq!(f.center_order, 1);
        assert_eq!(f.exponent, 6);
    }

    #[test]
    fn q8_versus_d4() {
        let q = q8().fingerprint_whole();
        let d = d4().fingerprint_whole();
        assert_ne!(q, d);
        assert_eq!(q.nilpotency_class, Some(2));
        assert_eq!(q.abelian_invariants, vec![2, 2]);
        assert_eq!(q.order_histogram.get(&4), Some(&6));
        assert_eq!(d.order_histogram.get(&2), Some(&5));
    }
}
