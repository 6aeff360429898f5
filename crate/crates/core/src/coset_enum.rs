//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! The default strategy is HLT (relator scanning with definitions) with a
//! lookahead pass whenever the table fills up. A Felsch-style strategy, which
//! defines cosets in row order and propagates deductions through cyclic
//! conjugates of the relators, is available through [`EnumStrategy::Felsch`].
//! Coincidences are merged with a union-find forest; after a successful run
//! the table is compacted and renumbered in breadth-first order.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::presentation::{Letter, Presentation, Word};

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_cosets: usize,
    pub max_time: Duration,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_cosets: 2_000_000,
            max_time: Duration::from_secs(600),
        }
    }
}

impl EnumLimits {
    pub fn new(max_cosets: usize, max_time: Duration) -> Result<Self, EnumError> {
        if max_cosets == 0 || max_time.is_zero() {
            return Err(EnumError::BadLimits);
        }
        Ok(EnumLimits {
            max_cosets,
            max_time,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumStrategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("coset limit of {limit} exceeded (high-water mark {high_water} cosets)")]
    CosetLimit { limit: usize, high_water: usize },
    #[error("time limit of {limit:?} exceeded (high-water mark {high_water} cosets)")]
    TimeLimit { limit: Duration, high_water: usize },
    #[error("enumeration limits must be positive")]
    BadLimits,
    #[error("completed table fails validation: relator {relator} does not close at coset {coset}")]
    Invalid { relator: usize, coset: usize },
}

impl EnumError {
    pub fn is_limit(&self) -> bool {
        matches!(self, EnumError::CosetLimit { .. } | EnumError::TimeLimit { .. })
    }
}

/// A complete, standardized coset table of the trivial subgroup.
///
/// Row `c` holds the image of coset `c` under each column, where column
/// `2*g` is generator `g` and column `2*g + 1` its inverse. Cosets are
/// numbered in breadth-first discovery order from coset 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    num_cosets: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn stride(&self) -> usize {
        2 * self.ngens
    }

    #[inline]
    pub fn image(&self, coset: u32, letter: Letter) -> u32 {
        self.rows[coset as usize * self.stride() + letter.column()]
    }

    /// The flat row-major table.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<u32> {
        self.rows
    }

    /// Cosets reached from `coset` by applying `word`.
    pub fn trace(&self, coset: u32, word: &Word) -> u32 {
        word.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Checks column permutation/inverse consistency and that every relator
    /// closes at every coset. Returns the first offending relator and coset.
    pub fn validate(&self, relators: &[Word]) -> Result<(), EnumError> {
        let s = self.stride();
        for c in 0..self.num_cosets {
            for col in 0..s {
                let d = self.rows[c * s + col];
                if d as usize >= self.num_cosets || self.rows[d as usize * s + (col ^ 1)] != c as u32 {
                    return Err(EnumError::Invalid {
                        relator: usize::MAX,
                        coset: c,
                    });
                }
            }
        }
        for (ri, r) in relators.iter().enumerate() {
            for c in 0..self.num_cosets as u32 {
                if self.trace(c, r) != c {
                    return Err(EnumError::Invalid {
                        relator: ri,
                        coset: c as usize,
                    });
                }
            }
        }
        Ok(())
    }
}

/// HLT enumeration of `pres` over the trivial subgroup.
pub fn enumerate(pres: &Presentation, limits: EnumLimits) -> Result<CosetTable, EnumError> {
    enumerate_with(pres, limits, EnumStrategy::Hlt)
}

pub fn enumerate_with(
    pres: &Presentation,
    limits: EnumLimits,
    strategy: EnumStrategy,
) -> Result<CosetTable, EnumError> {
    if limits.max_cosets == 0 || limits.max_time.is_zero() {
        return Err(EnumError::BadLimits);
    }
    let ngens = pres.num_generators();
    let relators = prepare_relators(&pres.relators);
    let mut e = Enumerator::new(ngens, relators, limits, strategy);
    match strategy {
        EnumStrategy::Hlt => e.run_hlt()?,
        EnumStrategy::Felsch => e.run_felsch()?,
    }
    let table = e.finish();
    table.validate(&pres.relators)?;
    Ok(table)
}

/// Cyclically reduce, drop empty words, sort by length, dedupe.
fn prepare_relators(rels: &[Word]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = rels
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|l| l.column() as u32).collect())
        .collect();
    out.sort_by_key(|w: &Vec<u32>| w.len());
    let mut seen = std::collections::HashSet::new();
    out.retain(|w| seen.insert(w.clone()));
    out
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    high_water: usize,
    limits: EnumLimits,
    started: Instant,
    ops: u64,
    relators: Vec<Vec<u32>>,
    /// Felsch: cyclic conjugates of relators and inverses, bucketed by first column.
    conjugates: Vec<Vec<Vec<u32>>>,
    strategy: EnumStrategy,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    /// Loop position of the main pass; remapped by compaction.
    cur: usize,
    deductions_lost: bool,
}

/// The table has reached `max_cosets` rows.
struct Full;

impl Enumerator {
    fn new(ngens: usize, relators: Vec<Vec<u32>>, limits: EnumLimits, strategy: EnumStrategy) -> Self {
        let ncols = 2 * ngens;
        let mut conjugates = vec![Vec::new(); ncols];
        if strategy == EnumStrategy::Felsch {
            let mut seen = std::collections::HashSet::new();
            for r in &relators {
                let inv: Vec<u32> = r.iter().rev().map(|&c| c ^ 1).collect();
                for w in [r, &inv] {
                    for k in 0..w.len() {
                        let rot: Vec<u32> = w[k..].iter().chain(&w[..k]).copied().collect();
                        if seen.insert(rot.clone()) {
                            conjugates[rot[0] as usize].push(rot);
                        }
                    }
                }
            }
        }
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            high_water: 1,
            limits,
            started: Instant::now(),
            ops: 0,
            relators,
            conjugates,
            strategy,
            queue: Vec::new(),
            deductions: Vec::new(),
            cur: 0,
            deductions_lost: false,
        }
    }

    #[inline]
    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.ncols + col as usize] = v;
    }

    #[inline]
    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c as u32
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn limit_error(&self) -> EnumError {
        EnumError::CosetLimit {
            limit: self.limits.max_cosets,
            high_water: self.high_water,
        }
    }

    fn check_time(&mut self) -> Result<(), EnumError> {
        self.ops += 1;
        if self.ops % 4096 == 0 && self.started.elapsed() > self.limits.max_time {
            return Err(EnumError::TimeLimit {
                limit: self.limits.max_time,
                high_water: self.high_water,
            });
        }
        Ok(())
    }

    /// Defines a new coset as the image of `c` under `col`.
    fn define(&mut self, c: u32, col: u32) -> Result<u32, Full> {
        if self.allocated() >= self.limits.max_cosets {
            return Err(Full);
        }
        let d = self.allocated() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(d);
        self.live += 1;
        self.high_water = self.high_water.max(self.live);
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        if self.strategy == EnumStrategy::Felsch {
            self.deductions.push((c, col));
        }
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (keep, kill) = if x < y { (x, y) } else { (y, x) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for x in 0..self.ncols as u32 {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != UNDEF {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                        if self.strategy == EnumStrategy::Felsch {
                            self.deductions.push((mu, x));
                        }
                    }
                }
            }
        }
    }

    /// Scans `w` from `alpha`, defining cosets as needed (HLT).
    fn scan_and_fill(&mut self, alpha: u32, ri: usize) -> Result<(), Full> {
        let len = self.relators[ri].len();
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, len as isize - 1);
        loop {
            while (i as isize) <= j {
                let nf = self.get(f, self.relators[ri][i]);
                if nf == UNDEF {
                    break;
                }
                f = nf;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nb = self.get(b, self.relators[ri][j as usize] ^ 1);
                if nb == UNDEF {
                    break;
                }
                b = nb;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            let col = self.relators[ri][i];
            if j == i as isize {
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, col)?;
        }
    }

    /// Scan without definitions. `word` is either a relator index or a Felsch
    /// conjugate; returns without effect if the scan is incomplete by more than
    /// one entry.
    fn scan(&mut self, alpha: u32, word: &[u32]) {
        let len = word.len();
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, len as isize - 1);
        while (i as isize) <= j {
            let nf = self.get(f, word[i]);
            if nf == UNDEF {
                break;
            }
            f = nf;
            i += 1;
        }
        if i as isize > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i as isize {
            let nb = self.get(b, word[j as usize] ^ 1);
            if nb == UNDEF {
                break;
            }
            b = nb;
            j -= 1;
        }
        if j < i as isize {
            self.coincidence(f, b);
        } else if j == i as isize {
            let col = word[i];
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            if self.strategy == EnumStrategy::Felsch {
                self.deductions.push((f, col));
            }
        }
    }

    fn lookahead(&mut self) -> Result<(), EnumError> {
        let relators = std::mem::take(&mut self.relators);
        let mut c = 0;
        while c < self.allocated() {
            if self.alive(c) {
                for r in &relators {
                    self.scan(c as u32, r);
                    if !self.alive(c) {
                        break;
                    }
                }
                if let Err(e) = self.check_time() {
                    self.relators = relators;
                    return Err(e);
                }
            }
            c += 1;
        }
        self.relators = relators;
        Ok(())
    }

    /// Renumbers live cosets contiguously, preserving their order.
    fn compact(&mut self) {
        let n = self.allocated();
        let mut newidx = vec![UNDEF; n];
        let mut k = 0u32;
        let mut newcur = None;
        for c in 0..n {
            if c >= self.cur && newcur.is_none() {
                newcur = Some(k as usize);
            }
            if self.alive(c) {
                newidx[c] = k;
                k += 1;
            }
        }
        self.cur = newcur.unwrap_or(k as usize);
        let nc = self.ncols;
        for c in 0..n {
            let nci = newidx[c];
            if nci == UNDEF {
                continue;
            }
            for x in 0..nc {
                let v = self.table[c * nc + x];
                let nv = if v == UNDEF { UNDEF } else { newidx[v as usize] };
                debug_assert!(v == UNDEF || nv != UNDEF);
                self.table[nci as usize * nc + x] = nv;
            }
        }
        self.table.truncate(k as usize * nc);
        self.parent = (0..k).collect();
        debug_assert_eq!(k as usize, self.live);
        // pending deductions refer to old numbering; Felsch rescans instead
        if !self.deductions.is_empty() {
            self.deductions.clear();
            self.deductions_lost = true;
        }
    }

    fn make_space(&mut self) -> Result<(), EnumError> {
        if self.live < self.allocated() {
            self.compact();
            if self.allocated() < self.limits.max_cosets {
                return Ok(());
            }
        }
        if self.strategy == EnumStrategy::Hlt {
            self.lookahead()?;
            self.compact();
            if self.allocated() < self.limits.max_cosets {
                return Ok(());
            }
        }
        Err(self.limit_error())
    }

    fn run_hlt(&mut self) -> Result<(), EnumError> {
        self.cur = 0;
        'outer: while self.cur < self.allocated() {
            let c = self.cur;
            if !self.alive(c) {
                self.cur += 1;
                continue;
            }
            for ri in 0..self.relators.len() {
                if self.scan_and_fill(c as u32, ri).is_err() {
                    self.make_space()?;
                    continue 'outer;
                }
                if !self.alive(c) {
                    break;
                }
                self.check_time()?;
            }
            if self.alive(c) {
                for x in 0..self.ncols as u32 {
                    if self.get(c as u32, x) == UNDEF && self.define(c as u32, x).is_err() {
                        self.make_space()?;
                        continue 'outer;
                    }
                }
            }
            self.cur += 1;
        }
        Ok(())
    }

    fn process_deductions(&mut self) -> Result<(), EnumError> {
        while let Some((a, x)) = self.deductions.pop() {
            if !self.alive(a as usize) {
                continue;
            }
            let words = std::mem::take(&mut self.conjugates[x as usize]);
            for w in &words {
                self.scan(a, w);
                if !self.alive(a as usize) {
                    break;
                }
            }
            self.conjugates[x as usize] = words;
            if self.alive(a as usize) {
                let b = self.get(a, x);
                if b != UNDEF && self.alive(b as usize) {
                    let inv = (x ^ 1) as usize;
                    let words = std::mem::take(&mut self.conjugates[inv]);
                    for w in &words {
                        self.scan(b, w);
                        if !self.alive(b as usize) {
                            break;
                        }
                    }
                    self.conjugates[inv] = words;
                }
            }
            self.check_time()?;
        }
        Ok(())
    }

    fn run_felsch(&mut self) -> Result<(), EnumError> {
        self.cur = 0;
        while self.cur < self.allocated() {
            let c = self.cur;
            if !self.alive(c) {
                self.cur += 1;
                continue;
            }
            let mut restarted = false;
            for x in 0..self.ncols as u32 {
                if !self.alive(c) {
                    break;
                }
                if self.get(c as u32, x) != UNDEF {
                    continue;
                }
                if self.define(c as u32, x).is_err() {
                    // compaction remaps `cur` onto this row's new number
                    self.make_space()?;
                    if self.deductions_lost {
                        self.full_rescan()?;
                    }
                    restarted = true;
                    break;
                }
                self.process_deductions()?;
            }
            if !restarted {
                self.cur += 1;
            }
        }
        Ok(())
    }

    /// Rescans every relator conjugate from every live coset until no
    /// deductions remain.
    fn full_rescan(&mut self) -> Result<(), EnumError> {
        self.deductions_lost = false;
        self.lookahead()?;
        self.process_deductions()
    }

    fn finish(mut self) -> CosetTable {
        self.cur = 0;
        self.compact();
        let n = self.allocated();
        let nc = self.ncols;
        // standardize: breadth-first from coset 0 in column order
        let mut order = Vec::with_capacity(n);
        let mut newidx = vec![UNDEF; n];
        let mut q = VecDeque::new();
        newidx[0] = 0;
        order.push(0u32);
        q.push_back(0u32);
        while let Some(c) = q.pop_front() {
            for x in 0..nc {
                let d = self.table[c as usize * nc + x];
                if newidx[d as usize] == UNDEF {
                    newidx[d as usize] = order.len() as u32;
                    order.push(d);
                    q.push_back(d);
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        let mut rows = vec![UNDEF; n * nc];
        for (newc, &oldc) in order.iter().enumerate() {
            for x in 0..nc {
                rows[newc * nc + x] = newidx[self.table[oldc as usize * nc + x] as usize];
            }
        }
        CosetTable {
            ngens: nc / 2,
            num_cosets: n,
            rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(src: &str) -> Presentation {
        parse_presentation(src).unwrap().remove(0)
    }

    fn order(src: &str, strategy: EnumStrategy) -> usize {
        enumerate_with(&pres(src), EnumLimits::default(), strategy)
            .unwrap()
            .num_cosets()
    }

    #[test]
    fn small_orders_under_both_strategies() {
        let cases = [
            ("group C1 = < a | a >", 1),
            ("group C5 = < a | a^5 >", 5),
            ("group S3 = < a, b | a^2, b^3, (a*b)^2 >", 6),
            ("group Q8 = < a, b | a^4, a^2 = b^2, b^-1*a*b = a^-1 >", 8),
            ("group A5 = < a, b | a^2, b^3, (a*b)^5 >", 60),
            ("group T = < a, b | a^-1, b >", 1),
        ];
        for (src, n) in cases {
            assert_eq!(order(src, EnumStrategy::Hlt), n, "{src}");
            assert_eq!(order(src, EnumStrategy::Felsch), n, "{src}");
        }
    }

    #[test]
    fn tables_are_standardized_and_agree() {
        let p = pres("group D5 = < a, b | a^5, b^2, (a*b)^2 >");
        let h = enumerate_with(&p, EnumLimits::default(), EnumStrategy::Hlt).unwrap();
        let f = enumerate_with(&p, EnumLimits::default(), EnumStrategy::Felsch).unwrap();
        assert_eq!(h, f);
        h.validate(&p.relators).unwrap();
        // breadth-first numbering: each coset first appears after its predecessor
        let mut seen = 1u32;
        for &d in h.rows() {
            if d == seen {
                seen += 1;
            }
            assert!(d < seen);
        }
    }

    #[test]
    fn limits_are_reported() {
        let p = pres("group A5 = < a, b | a^2, b^3, (a*b)^5 >");
        let limits = EnumLimits::new(10, Duration::from_secs(60)).unwrap();
        let e = enumerate(&p, limits).unwrap_err();
        assert!(e.is_limit(), "{e}");
        assert!(matches!(e, EnumError::CosetLimit { limit: 10, .. }));
        assert_eq!(EnumLimits::new(0, Duration::from_secs(1)), Err(EnumError::BadLimits));
        assert_eq!(EnumLimits::new(1, Duration::ZERO), Err(EnumError::BadLimits));
    }

    #[test]
    fn validate_reports_open_relator() {
        let t = enumerate(&pres("group C4 = < a | a^4 >"), EnumLimits::default()).unwrap();
        let a2 = Word::gen(0).pow(2);
        assert_eq!(t.validate(&[a2]), Err(EnumError::Invalid { relator: 0, coset: 0 }));
    }
}
