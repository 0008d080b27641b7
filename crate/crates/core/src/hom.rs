//! R-linear maps between finite modules.

use std::fmt;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Submodule};

#[derive(Clone)]
pub struct ModuleHom {
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    map: Vec<usize>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleHom")
            .field("source", &self.source.descriptor().to_string())
            .field("target", &self.target.descriptor().to_string())
            .field("map", &self.map)
            .finish()
    }
}

impl ModuleHom {
    /// Validates additivity and R-linearity on every pair.
    pub fn new(source: Arc<FiniteModule>, target: Arc<FiniteModule>, map: Vec<usize>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch);
        }
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism("map length differs from source order".into()));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                order: target.order(),
            });
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(format!("not additive at ({a}, {b})")));
                }
            }
        }
        for r in source.ring().elements() {
            for m in source.elements() {
                if map[source.act(r, m)] != target.act(r, map[m]) {
                    return Err(Error::NotAHomomorphism(format!("not linear at ({r}, {m})")));
                }
            }
        }
        Ok(ModuleHom { source, target, map })
    }

    pub fn identity(m: &Arc<FiniteModule>) -> Self {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            map: m.elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, m: usize) -> usize {
        self.map[m]
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        ElemSet::from_iter(self.target.order(), self.map.iter().copied()).is_full()
    }

    /// `φ(N)`, a submodule of the target.
    pub fn image(&self, n: &ElemSet) -> Submodule {
        Submodule::from_set_unchecked(ElemSet::from_iter(
            self.target.order(),
            n.iter().map(|m| self.map[m]),
        ))
    }

    pub fn kernel(&self) -> Submodule {
        self.preimage(self.target.zero().members())
    }

    /// `φ^{-1}(K)`, a submodule of the source.
    pub fn preimage(&self, k: &ElemSet) -> Submodule {
        Submodule::from_set_unchecked(ElemSet::from_iter(
            self.source.order(),
            self.source.elements().filter(|&m| k.contains(self.map[m])),
        ))
    }
}

/// All homomorphisms `M1 -> M2`.
///
/// Each candidate assigns images to a greedy generating set of `M1`; the map
/// is propagated along `x -> x + r g_i`, rejected on any clash, and the
/// survivors pass the full linearity check in [`ModuleHom::new`]. Fails when
/// `M1` needs more than `max_generators` generators.
pub fn enumerate_homs(
    m1: &Arc<FiniteModule>,
    m2: &Arc<FiniteModule>,
    max_generators: usize,
) -> Result<Vec<ModuleHom>> {
    if m1.ring() != m2.ring() {
        return Err(Error::RingMismatch);
    }
    let gens = m1.generators_of(m1.whole().members());
    if gens.len() > max_generators {
        return Err(Error::TooManyGenerators {
            needed: gens.len(),
            max: max_generators,
        });
    }
    let ring = m1.ring();
    // An image of g must be killed by everything that kills g.
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ann = m1.annihilator_of(g);
            m2.elements()
                .filter(|&c| ann.iter().all(|r| m2.act(r, c) == 0))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = propagate(m1, m2, &gens, &images, ring.order()) {
            if let Ok(h) = ModuleHom::new(m1.clone(), m2.clone(), map) {
                out.push(h);
            }
        }
        // odometer, last generator fastest
        let mut k = gens.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

fn propagate(
    m1: &FiniteModule,
    m2: &FiniteModule,
    gens: &[usize],
    images: &[usize],
    ring_order: usize,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; m1.order()];
    map[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&g, &c) in gens.iter().zip(images) {
            for r in 0..ring_order {
                let y = m1.add(x, m1.act(r, g));
                let fy = m2.add(map[x], m2.act(r, c));
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    #[test]
    fn endomorphisms_of_z6_over_z12() {
        let m = Arc::new(FiniteModule::cyclic(&zn(12), 6).unwrap());
        let homs = enumerate_homs(&m, &m, 3).unwrap();
        assert_eq!(homs.len(), 6);
        assert!(homs.iter().any(|h| h.map() == ModuleHom::identity(&m).map()));
    }

    #[test]
    fn z2_to_z3_over_z6_is_zero_only() {
        let r = zn(6);
        let a = Arc::new(FiniteModule::cyclic(&r, 2).unwrap());
        let b = Arc::new(FiniteModule::cyclic(&r, 3).unwrap());
        let homs = enumerate_homs(&a, &b, 3).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].map().iter().all(|&y| y == 0));
    }

    #[test]
    fn image_kernel_preimage() {
        let r = zn(12);
        let m = Arc::new(FiniteModule::over_itself(&r).unwrap());
        let q = m.quotient_map(&m.submodule_generated(&[4])).unwrap();
        assert!(q.is_surjective());
        assert!(!q.is_injective());
        assert_eq!(q.kernel().to_vec(), vec![0, 4, 8]);
        let img = q.image(m.submodule_generated(&[2]).members());
        assert_eq!(img.len(), 2);
        assert_eq!(q.preimage(&img).to_vec(), vec![0, 2, 4, 6, 8, 10]);
        let inc = m.inclusion(&m.submodule_generated(&[3])).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.image(inc.source().whole().members()).to_vec(), vec![0, 3, 6, 9]);
    }

    #[test]
    fn non_linear_maps_are_rejected() {
        let r = zn(4);
        let m = Arc::new(FiniteModule::over_itself(&r).unwrap());
        assert!(ModuleHom::new(m.clone(), m.clone(), vec![0, 1, 1, 3]).is_err());
        assert!(ModuleHom::new(m.clone(), m, vec![0, 2, 0, 2]).is_ok());
    }
}
