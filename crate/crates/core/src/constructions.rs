//! Idealization `R(+)M` and localization `S^{-1}R`, `S^{-1}M`.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::descriptor::{ModuleDescriptor, RingDescriptor};
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ideal};

/// Smallest multiplicatively closed subset containing `seed` and 1.
pub fn multiplicative_closure(ring: &FiniteRing, seed: &ElemSet) -> ElemSet {
    let mut s = seed.clone();
    s.insert(ring.one());
    let mut frontier = s.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in frontier {
            for b in s.to_vec() {
                let p = ring.mul(a, b);
                if s.insert(p) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    s
}

/// The ring `R(+)M` with `(r1, m1)(r2, m2) = (r1 r2, r1 m2 + r2 m1)`.
/// The pair `(r, m)` has index `r |M| + m`.
#[derive(Debug, Clone)]
pub struct Idealization {
    base: Arc<FiniteRing>,
    module: Arc<FiniteModule>,
    ring: Arc<FiniteRing>,
}

impl Idealization {
    /// Builds the ring and checks `J(R(+)M) = J(R)(+)M`.
    pub fn new(base: &Arc<FiniteRing>, module: &Arc<FiniteModule>) -> Result<Self> {
        if module.ring().as_ref() != base.as_ref() {
            return Err(Error::RingMismatch);
        }
        let (nr, nm) = (base.order(), module.order());
        let n = nr * nm;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (r1, m1) = (x / nm, x % nm);
            for y in 0..n {
                let (r2, m2) = (y / nm, y % nm);
                add.push(base.add(r1, r2) * nm + module.add(m1, m2));
                let m = module.add(module.act(r1, m2), module.act(r2, m1));
                mul.push(base.mul(r1, r2) * nm + m);
            }
        }
        let desc = RingDescriptor::Idealization(
            Box::new(base.descriptor().clone()),
            Box::new(module.descriptor().clone()),
        );
        let ring = Arc::new(FiniteRing::from_tables(add, mul, base.one() * nm, desc)?);
        let out = Idealization {
            base: base.clone(),
            module: module.clone(),
            ring,
        };
        let actual = out.ring.checked_jacobson()?;
        let expected = out.expected_jacobson();
        if actual != expected {
            return Err(Error::FactViolated(format!(
                "J(R(+)M) = {actual}, J(R)(+)M = {expected}"
            )));
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn encode(&self, r: usize, m: usize) -> usize {
        r * self.module.order() + m
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.module.order(), x % self.module.order())
    }

    /// The set `I × N` in encoded form, ideal or not.
    pub fn product_set(&self, i: &ElemSet, n: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.ring.order());
        for a in i {
            for m in n {
                out.insert(self.encode(a, m));
            }
        }
        out
    }

    /// `J(R)(+)M`.
    pub fn expected_jacobson(&self) -> Ideal {
        let set = self.product_set(self.base.jacobson_radical(), self.module.whole().members());
        Ideal::from_set_unchecked(set)
    }

    /// `I(+)N`, which is an ideal exactly when `IM ⊆ N`. Also checks
    /// `√(I(+)N) = √I(+)M`.
    pub fn ideal(&self, i: &Ideal, n: &Submodule) -> Result<Ideal> {
        if !self.base.is_ideal(i) {
            return Err(Error::NotAnIdeal(i.to_string()));
        }
        if !self.module.is_submodule(n) {
            return Err(Error::NotASubmodule(n.to_string()));
        }
        if !self.module.ideal_times_module(i).is_subset(n) {
            return Err(Error::IdealizationCondition);
        }
        let ideal = self.ring.ideal_from_set(self.product_set(i, n))?;
        let rad = self.ring.radical(&ideal);
        let expected = self.product_set(&self.base.radical(i), self.module.whole().members());
        if rad.members() != &expected {
            return Err(Error::FactViolated(format!(
                "radical of I(+)N is {rad}, expected {expected}"
            )));
        }
        Ok(ideal)
    }

    /// Splits an ideal of `R(+)M` as `I(+)N` when it has that shape.
    pub fn as_product_form(&self, ideal: &Ideal) -> Option<(Ideal, Submodule)> {
        let nm = self.module.order();
        let i = ElemSet::from_iter(self.base.order(), ideal.iter().map(|x| x / nm));
        let n = ElemSet::from_iter(nm, ideal.iter().filter(|x| x / nm == 0).map(|x| x % nm));
        if i.len() * n.len() != ideal.len() || &self.product_set(&i, &n) != ideal.members() {
            return None;
        }
        Some((Ideal::from_set_unchecked(i), Submodule::from_set_unchecked(n)))
    }
}

/// Shared class bookkeeping for fractions `x/s`.
#[derive(Debug, Clone)]
struct Fractions {
    /// `S` in increasing order.
    s: Vec<usize>,
    s_index: Vec<usize>,
    /// Class of the pair `(x, S[j])` at `x * |S| + j`.
    class_of: Vec<usize>,
    /// Least pair of each class.
    reps: Vec<(usize, usize)>,
}

impl Fractions {
    /// `same(x1, s1, x2, s2)` decides the equivalence.
    fn new(order: usize, s: &ElemSet, same: impl Fn(usize, usize, usize, usize) -> bool) -> Self {
        let sv = s.to_vec();
        let mut s_index = vec![usize::MAX; s.universe()];
        for (j, &v) in sv.iter().enumerate() {
            s_index[v] = j;
        }
        let k = sv.len();
        let mut class_of = vec![usize::MAX; order * k];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for x in 0..order {
            for (j, &t) in sv.iter().enumerate() {
                let found = reps.iter().position(|&(y, u)| same(x, t, y, u));
                class_of[x * k + j] = match found {
                    Some(c) => c,
                    None => {
                        reps.push((x, t));
                        reps.len() - 1
                    }
                };
            }
        }
        Fractions {
            s: sv,
            s_index,
            class_of,
            reps,
        }
    }

    fn class(&self, x: usize, s: usize) -> usize {
        self.class_of[x * self.s.len() + self.s_index[s]]
    }
}

fn check_multiplicative_set(ring: &FiniteRing, s: &ElemSet) -> Result<()> {
    if s.universe() != ring.order() {
        return Err(Error::NotMultiplicativelyClosed);
    }
    if s.contains(0) || !s.contains(ring.one()) {
        return Err(Error::DegenerateMultiplicativeSet);
    }
    if !ring.is_multiplicatively_closed(s) {
        return Err(Error::NotMultiplicativelyClosed);
    }
    Ok(())
}

/// `S^{-1}R`. Each class is numbered in the order of its lexicographically
/// least pair `(x, s)`.
#[derive(Debug, Clone)]
pub struct LocalizedRing {
    base: Arc<FiniteRing>,
    set: ElemSet,
    seeds: Vec<usize>,
    fractions: Fractions,
    ring: Arc<FiniteRing>,
}

impl LocalizedRing {
    /// `S` must be multiplicatively closed with `1 ∈ S` and `0 ∉ S`.
    pub fn new(base: &Arc<FiniteRing>, s: &ElemSet) -> Result<Self> {
        Self::build(base, s, s.to_vec())
    }

    /// Localizes at the multiplicative closure of `seeds`.
    pub fn from_seeds(base: &Arc<FiniteRing>, seeds: &[usize]) -> Result<Self> {
        crate::descriptor::check_elements(seeds, base.order())?;
        let s = multiplicative_closure(base, &ElemSet::from_iter(base.order(), seeds.iter().copied()));
        Self::build(base, &s, seeds.to_vec())
    }

    fn build(base: &Arc<FiniteRing>, s: &ElemSet, seeds: Vec<usize>) -> Result<Self> {
        check_multiplicative_set(base, s)?;
        let r = base.as_ref();
        // (x1, s1) ~ (x2, s2) iff some u in S kills x1 s2 - x2 s1
        let kills = |d: usize| s.iter().any(|u| r.mul(u, d) == 0);
        let fractions = Fractions::new(r.order(), s, |x1, s1, x2, s2| {
            kills(r.sub(r.mul(x1, s2), r.mul(x2, s1)))
        });
        let k = fractions.reps.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &(x1, s1) in &fractions.reps {
            for &(x2, s2) in &fractions.reps {
                let den = r.mul(s1, s2);
                add.push(fractions.class(r.add(r.mul(x1, s2), r.mul(x2, s1)), den));
                mul.push(fractions.class(r.mul(x1, x2), den));
            }
        }
        let one = fractions.class(r.one(), r.one());
        let desc = RingDescriptor::Localization(Box::new(base.descriptor().clone()), seeds.clone());
        let ring = Arc::new(FiniteRing::from_tables(add, mul, one, desc)?);
        let out = LocalizedRing {
            base: base.clone(),
            set: s.clone(),
            seeds,
            fractions,
            ring,
        };
        out.check_canonical_map()?;
        Ok(out)
    }

    fn check_canonical_map(&self) -> Result<()> {
        let (b, l) = (self.base.as_ref(), self.ring.as_ref());
        for x in b.elements() {
            for y in b.elements() {
                let (fx, fy) = (self.canonical_map(x), self.canonical_map(y));
                if self.canonical_map(b.add(x, y)) != l.add(fx, fy)
                    || self.canonical_map(b.mul(x, y)) != l.mul(fx, fy)
                {
                    return Err(Error::FactViolated(format!(
                        "canonical map is not a ring map at ({x}, {y})"
                    )));
                }
            }
        }
        if let Some(s) = self.set.iter().find(|&s| !l.is_unit(self.canonical_map(s))) {
            return Err(Error::FactViolated(format!("{s}/1 is not a unit")));
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn multiplicative_set(&self) -> &ElemSet {
        &self.set
    }

    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    /// `x -> x/1`.
    pub fn canonical_map(&self, x: usize) -> usize {
        self.fractions.class(x, self.base.one())
    }

    /// The class of `x/s`.
    pub fn fraction(&self, x: usize, s: usize) -> Result<usize> {
        if x >= self.base.order() {
            return Err(Error::ElementOutOfRange {
                element: x,
                order: self.base.order(),
            });
        }
        if s >= self.base.order() || !self.set.contains(s) {
            return Err(Error::Unknown {
                kind: "denominator",
                name: s.to_string(),
            });
        }
        Ok(self.fractions.class(x, s))
    }

    /// Least pair `(x, s)` of a class.
    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.fractions.reps[class]
    }

    /// `S^{-1}I = {a/s : a ∈ I, s ∈ S}`.
    pub fn extend_ideal(&self, i: &Ideal) -> Ideal {
        let set = ElemSet::from_iter(
            self.ring.order(),
            i.iter().flat_map(|a| self.set.iter().map(move |s| self.fractions.class(a, s))),
        );
        Ideal::from_set_unchecked(set)
    }

    /// Whether `S^{-1}J(R) = J(S^{-1}R)`.
    pub fn jacobson_extends(&self) -> bool {
        &self.extend_ideal(self.base.jacobson_radical()) == self.ring.jacobson_radical()
    }
}

/// `S^{-1}M` as a module over `S^{-1}R`.
#[derive(Debug, Clone)]
pub struct LocalizedModule {
    base: Arc<FiniteModule>,
    fractions: Fractions,
    set: ElemSet,
    module: Arc<FiniteModule>,
}

impl LocalizedModule {
    pub fn new(ring: &LocalizedRing, base: &Arc<FiniteModule>) -> Result<Self> {
        if base.ring().as_ref() != ring.base().as_ref() {
            return Err(Error::RingMismatch);
        }
        let m = base.as_ref();
        let r = ring.base().as_ref();
        let s = ring.multiplicative_set();
        let kills = |d: usize| s.iter().any(|u| m.act(u, d) == 0);
        let fractions = Fractions::new(m.order(), s, |m1, s1, m2, s2| {
            kills(m.sub(m.act(s2, m1), m.act(s1, m2)))
        });
        let k = fractions.reps.len();
        let mut add = Vec::with_capacity(k * k);
        for &(m1, s1) in &fractions.reps {
            for &(m2, s2) in &fractions.reps {
                let num = m.add(m.act(s2, m1), m.act(s1, m2));
                add.push(fractions.class(num, r.mul(s1, s2)));
            }
        }
        let lr = ring.ring();
        let mut act = Vec::with_capacity(lr.order() * k);
        for c in lr.elements() {
            let (x, t) = ring.representative(c);
            for &(y, u) in &fractions.reps {
                act.push(fractions.class(m.act(x, y), r.mul(t, u)));
            }
        }
        let desc = ModuleDescriptor::Localized(Box::new(base.descriptor().clone()), ring.seeds().to_vec());
        let module = Arc::new(FiniteModule::from_tables(lr, add, act, desc)?);
        Ok(LocalizedModule {
            base: base.clone(),
            fractions,
            set: s.clone(),
            module,
        })
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn base(&self) -> &Arc<FiniteModule> {
        &self.base
    }

    /// `m -> m/1`.
    pub fn canonical_map(&self, m: usize) -> usize {
        self.fractions.class(m, self.base.ring().one())
    }

    /// `S^{-1}N = {n/s : n ∈ N, s ∈ S}`.
    pub fn extend_submodule(&self, n: &ElemSet) -> Submodule {
        let set = ElemSet::from_iter(
            self.module.order(),
            n.iter().flat_map(|x| self.set.iter().map(move |s| self.fractions.class(x, s))),
        );
        Submodule::from_set_unchecked(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    fn set(order: usize, xs: &[usize]) -> ElemSet {
        ElemSet::from_iter(order, xs.iter().copied())
    }

    #[test]
    fn closure_examples() {
        let r = zn(12);
        assert_eq!(multiplicative_closure(&r, &set(12, &[2])).to_vec(), vec![1, 2, 4, 8]);
        assert_eq!(multiplicative_closure(&r, &ElemSet::empty(12)).to_vec(), vec![1]);
        assert_eq!(multiplicative_closure(&zn(6), &set(6, &[3])).to_vec(), vec![1, 3]);
    }

    #[test]
    fn idealization_of_z4_by_z2() {
        let r = zn(4);
        let m = Arc::new(FiniteModule::cyclic(&r, 2).unwrap());
        let id = Idealization::new(&r, &m).unwrap();
        assert_eq!(id.ring().order(), 8);
        assert_eq!(id.ring().jacobson_radical().len(), 4);
        let i = id.ideal(&r.ideal_generated(&[2]), &m.zero()).unwrap();
        assert_eq!(i.len(), 2);
        assert_eq!(id.ideal(&r.whole(), &m.zero()).unwrap_err(), Error::IdealizationCondition);
        assert_eq!(id.as_product_form(&i), Some((r.ideal_generated(&[2]), m.zero())));
    }

    #[test]
    fn idealization_small_cases() {
        let r2 = zn(2);
        let m = Arc::new(FiniteModule::cyclic(&r2, 2).unwrap());
        let id = Idealization::new(&r2, &m).unwrap();
        assert_eq!(id.ring().order(), 4);
        assert_eq!(id.ring().jacobson_radical().len(), 2);
        let r6 = zn(6);
        let trivial = Arc::new(FiniteModule::cyclic(&r6, 1).unwrap());
        let id = Idealization::new(&r6, &trivial).unwrap();
        assert_eq!(id.ring().order(), 6);
        let other = Arc::new(FiniteModule::cyclic(&zn(4), 2).unwrap());
        assert_eq!(Idealization::new(&r6, &other).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn localization_examples() {
        let l = LocalizedRing::new(&zn(6), &set(6, &[1, 3])).unwrap();
        assert_eq!(l.ring().order(), 2);
        let l = LocalizedRing::from_seeds(&zn(12), &[2]).unwrap();
        assert_eq!(l.ring().order(), 3);
        let r = zn(9);
        let l = LocalizedRing::new(&r, &set(9, &[1])).unwrap();
        assert_eq!(l.ring().order(), 9);
        assert!((0..9).all(|x| l.canonical_map(x) == x));
        assert_eq!(l.ring().ideals().len(), r.ideals().len());
        assert!(l.jacobson_extends());
    }

    #[test]
    fn localization_rejects_bad_sets() {
        let r = zn(6);
        assert_eq!(
            LocalizedRing::new(&r, &set(6, &[0, 1])).unwrap_err(),
            Error::DegenerateMultiplicativeSet
        );
        assert_eq!(
            LocalizedRing::new(&r, &set(6, &[1, 5, 2])).unwrap_err(),
            Error::NotMultiplicativelyClosed
        );
        assert_eq!(LocalizedRing::from_seeds(&r, &[2, 3]).unwrap_err(), Error::DegenerateMultiplicativeSet);
    }

    #[test]
    fn localized_module() {
        let r = zn(12);
        let l = LocalizedRing::from_seeds(&r, &[2]).unwrap();
        let m = Arc::new(FiniteModule::over_itself(&r).unwrap());
        let lm = LocalizedModule::new(&l, &m).unwrap();
        assert_eq!(lm.module().order(), 3);
        let n = m.submodule_generated(&[4]);
        assert_eq!(lm.extend_submodule(&n).len(), 3);
        let n = m.submodule_generated(&[3]);
        assert_eq!(lm.extend_submodule(&n).len(), 1);
    }
}
