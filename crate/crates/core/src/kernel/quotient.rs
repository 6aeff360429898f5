use std::collections::VecDeque;
use std::sync::Arc;

use super::{factorize, CayleyEngine, Cols, KernelError, SubgroupSet, POINT_CAP, UNDEF};

/// Regular representation of `H/N`, with the coset labelling of the parent
/// engine's points.
#[derive(Debug, Clone)]
pub struct QuotientEngine {
    pub engine: Arc<CayleyEngine>,
    /// Parent point -> quotient point; `u32::MAX` outside `H`.
    pub label: Vec<u32>,
    /// Quotient point -> a representative parent point.
    pub reps: Vec<u32>,
}

impl QuotientEngine {
    /// Quotient point of a parent point in `H`.
    pub fn project(&self, p: u32) -> u32 {
        self.label[p as usize]
    }

    pub fn lift(&self, q: u32) -> u32 {
        self.reps[q as usize]
    }
}

impl CayleyEngine {
    /// `H/N` as its own engine; generators are the images of `H`'s generators.
    pub fn quotient_engine(&self, h: &SubgroupSet, n: &SubgroupSet) -> Result<QuotientEngine, KernelError> {
        self.quotient_engine_with_gens(h, n, h.gens())
    }

    /// Regular representation of `H` itself on the listed generators.
    pub fn sub_engine(&self, h: &SubgroupSet, gens: &[u32]) -> Result<QuotientEngine, KernelError> {
        self.quotient_engine_with_gens(h, &self.trivial_subgroup(), gens)
    }

    pub fn quotient_engine_with_gens(
        &self,
        h: &SubgroupSet,
        n: &SubgroupSet,
        gens: &[u32],
    ) -> Result<QuotientEngine, KernelError> {
        if let Some(p) = n.first_outside(h) {
            return Err(KernelError::NotContained(p));
        }
        if let Some(&g) = gens.iter().find(|&&g| !h.contains(g)) {
            return Err(KernelError::NotContained(g));
        }
        if let Some((element, conjugator)) = self.normality_witness(n, h.gens()) {
            return Err(KernelError::NotNormal { element, conjugator });
        }
        let index = h.order() / n.order();
        let mut label = vec![UNDEF; self.order()];
        let mut reps = Vec::with_capacity(index);
        let gcols: Vec<Cols> = gens.iter().map(|&g| self.cols(g)).collect();
        let ng = gens.len();
        let stride = 2 * ng;
        let mut table = vec![UNDEF; index * stride];

        let label_coset = |r: u32, idx: u32, label: &mut Vec<u32>| {
            let rc = self.cols(r);
            for &m in n.points() {
                label[self.apply_cols(m, &rc) as usize] = idx;
            }
        };
        label_coset(0, 0, &mut label);
        reps.push(0u32);
        let mut q = VecDeque::from([0u32]);
        while let Some(c) = q.pop_front() {
            let r = reps[c as usize];
            for (i, gc) in gcols.iter().enumerate() {
                let t = self.apply_cols(r, gc);
                let mut d = label[t as usize];
                if d == UNDEF {
                    d = reps.len() as u32;
                    reps.push(t);
                    label_coset(t, d, &mut label);
                    q.push_back(d);
                }
                table[c as usize * stride + 2 * i] = d;
                table[d as usize * stride + 2 * i + 1] = c;
            }
        }
        if reps.len() != index {
            return Err(KernelError::NotGenerating {
                reached: reps.len() * n.order(),
                order: h.order(),
            });
        }
        let names = (0..ng).map(|i| format!("q{i}")).collect();
        let engine = CayleyEngine::from_table(format!("{}_quot", self.name()), names, table);
        Ok(QuotientEngine {
            engine: Arc::new(engine),
            label,
            reps,
        })
    }

    /// Invariants of a finite abelian subgroup as a sorted list of prime powers.
    pub fn abelian_invariants(&self, h: &SubgroupSet) -> Result<Vec<u64>, KernelError> {
        if let Some((a, b)) = self.noncommuting_pair(h.gens(), h.gens()) {
            return Err(KernelError::NotAbelian { a, b });
        }
        let orders: Vec<usize> = h.points().iter().map(|&p| self.order_of(p)).collect();
        let mut out = Vec::new();
        for (p, e) in factorize(h.order()) {
            // s[i] = log_p |{x : x^(p^i) = 1}|
            let mut s = vec![0u32];
            let mut pi = 1usize;
            for _ in 0..e {
                pi *= p;
                let count = orders.iter().filter(|&&o| pi % o == 0).count();
                s.push(log_exact(count, p));
                if *s.last().unwrap() == e {
                    break;
                }
            }
            // at_least[i] = number of cyclic factors of order >= p^i
            let at_least: Vec<u32> = (1..s.len()).map(|i| s[i] - s[i - 1]).collect();
            for i in 0..at_least.len() {
                let next = at_least.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(at_least[i] - next) {
                    out.push((p as u64).pow(i as u32 + 1));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

fn log_exact(mut n: usize, p: usize) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

/// Direct product acting componentwise on the cartesian point set.
pub fn direct_product_engine(factors: &[&CayleyEngine]) -> Result<CayleyEngine, KernelError> {
    let order = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.order()))
        .unwrap_or(usize::MAX);
    if order > POINT_CAP {
        return Err(KernelError::TooLarge {
            order,
            cap: POINT_CAP,
        });
    }
    // mixed radix, first factor most significant
    let mut radix = vec![1usize; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        radix[i] = radix[i + 1] * factors[i + 1].order();
    }
    let mut names = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        for g in f.gen_names() {
            names.push(format!("f{k}_{g}"));
        }
    }
    let stride = 2 * names.len();
    let mut table = vec![0u32; order * stride];
    for x in 0..order {
        let mut col = 0;
        for (k, f) in factors.iter().enumerate() {
            let comp = (x / radix[k]) % f.order();
            for c in 0..f.stride() {
                let img = f.apply_col(comp as u32, c as u32) as usize;
                table[x * stride + col] = (x + (img * radix[k]) - comp * radix[k]) as u32;
                col += 1;
            }
        }
    }
    let name = factors
        .iter()
        .map(|f| f.name().to_string())
        .collect::<Vec<_>>()
        .join("x");
    Ok(CayleyEngine::from_table(name, names, table))
}
