use std::collections::VecDeque;
use std::sync::Arc;

use super::subgroup::Closure;
use super::{CayleyEngine, Cols, KernelError, SubgroupSet, UNDEF};

/// A certified homomorphism, stored as its full point map.
///
/// The graph `{(x, f(x))}` of the direct product is never materialized: its
/// closure is determined by the spanning-tree assignment plus the subgroup of
/// the codomain generated by the edge discrepancies, which is the fibre over
/// the identity.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    domain: Arc<CayleyEngine>,
    codomain: Arc<CayleyEngine>,
    domain_gens: Vec<u32>,
    images: Vec<u32>,
    map: Vec<u32>,
}

/// Extends a generator assignment to a homomorphism, or reports the order of
/// the closure of the paired generators when it does not extend.
pub fn hom_from_gen_images(
    domain: &Arc<CayleyEngine>,
    domain_gens: &[u32],
    codomain: &Arc<CayleyEngine>,
    images: &[u32],
) -> Result<Homomorphism, KernelError> {
    if domain_gens.len() != images.len() {
        return Err(KernelError::LengthMismatch {
            gens: domain_gens.len(),
            images: images.len(),
        });
    }
    let n = domain.order();
    let dcols: Vec<Cols> = domain_gens.iter().map(|&g| domain.cols(g)).collect();
    let icols: Vec<Cols> = images.iter().map(|&h| codomain.cols(h)).collect();

    let mut map = vec![UNDEF; n];
    map[0] = 0;
    let mut reached = 1usize;
    let mut q = VecDeque::from([0u32]);
    while let Some(p) = q.pop_front() {
        let fp = map[p as usize];
        for (dc, ic) in dcols.iter().zip(&icols) {
            let t = domain.apply_cols(p, dc);
            if map[t as usize] == UNDEF {
                map[t as usize] = codomain.apply_cols(fp, ic);
                reached += 1;
                q.push_back(t);
            }
        }
    }
    if reached != n {
        return Err(KernelError::NotGenerating { reached, order: n });
    }

    // f(p) h_i must equal f(p g_i) on every edge
    let mut fibre = Closure::new(codomain);
    for p in 0..n as u32 {
        let fp = map[p as usize];
        for (dc, ic) in dcols.iter().zip(&icols) {
            let t = domain.apply_cols(p, dc);
            let via_edge = codomain.apply_cols(fp, ic);
            let assigned = map[t as usize];
            if via_edge != assigned {
                let d = codomain.apply_cols(via_edge, &codomain.inv_cols(assigned));
                fibre.add(d);
            }
        }
    }
    if fibre.len() > 1 {
        let kernel = codomain.normal_closure_by(fibre.gens(), images);
        return Err(KernelError::NotWellDefined {
            closure_order: n * kernel.order(),
            domain_order: n,
        });
    }
    Ok(Homomorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        domain_gens: domain_gens.to_vec(),
        images: images.to_vec(),
        map,
    })
}

impl Homomorphism {
    pub fn domain(&self) -> &Arc<CayleyEngine> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CayleyEngine> {
        &self.codomain
    }

    pub fn domain_gens(&self) -> &[u32] {
        &self.domain_gens
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Order of the certified graph, always `|domain|`.
    pub fn graph_order(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.map[p as usize]
    }

    pub fn image(&self) -> SubgroupSet {
        self.codomain.subgroup(&self.images)
    }

    pub fn image_of(&self, h: &SubgroupSet) -> SubgroupSet {
        self.domain.map_points(h, |p| self.apply(p), &self.codomain)
    }

    pub fn kernel(&self) -> SubgroupSet {
        let pts: Vec<u32> = (0..self.map.len() as u32)
            .filter(|&p| self.map[p as usize] == 0)
            .collect();
        self.domain
            .subgroup_from_points(&pts)
            .expect("kernel of a certified homomorphism is a subgroup")
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.image().order() == self.domain.order()
    }
}
