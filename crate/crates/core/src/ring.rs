//! Finite commutative unital rings given by full operation tables, and
//! ideal-level computations over them.
//!
//! Elements are canonical indices `0..order`, with `0` the additive
//! identity. `Z_n` uses residues; products use mixed-radix order with the
//! left factor most significant; quotients number cosets by their least
//! representative.

use std::fmt;
use std::ops::Deref;
use std::sync::OnceLock;

use crate::bitset::ElemSet;
use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};

/// An ideal of some [`FiniteRing`], as the set of its members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(ElemSet);

impl Ideal {
    /// Wraps a set without checking closure. Use [`FiniteRing::ideal_from_set`]
    /// for untrusted input.
    pub(crate) fn from_set_unchecked(set: ElemSet) -> Self {
        Ideal(set)
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn into_set(self) -> ElemSet {
        self.0
    }
}

impl Deref for Ideal {
    type Target = ElemSet;

    fn deref(&self) -> &ElemSet {
        &self.0
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.0)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Default)]
struct RingCache {
    units: OnceLock<ElemSet>,
    ideals: OnceLock<Vec<Ideal>>,
    jacobson: OnceLock<Result<Ideal>>,
}

pub struct FiniteRing {
    order: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    descriptor: RingDescriptor,
    cache: RingCache,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("descriptor", &self.descriptor.to_string())
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteRing {
    /// Builds a ring from raw tables, verifying every axiom exhaustively.
    pub fn from_tables(
        add: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
        descriptor: RingDescriptor,
    ) -> Result<Self> {
        let n = (add.len() as f64).sqrt().round() as usize;
        if n * n != add.len() || mul.len() != add.len() {
            return Err(Error::RingAxiom("tables are not square".into()));
        }
        if n <= 1 {
            return Err(Error::ZeroRing);
        }
        if one >= n {
            return Err(Error::ElementOutOfRange { element: one, order: n });
        }
        if one == 0 {
            return Err(Error::ZeroRing);
        }
        if let Some(&bad) = add.iter().chain(&mul).find(|&&x| x >= n) {
            return Err(Error::RingAxiom(format!("table entry {bad} out of range")));
        }
        let ax = |msg: String| Err(Error::RingAxiom(msg));
        let at = |t: &[usize], a: usize, b: usize| t[a * n + b];

        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            if at(&add, 0, a) != a {
                return ax(format!("0 + {a} != {a}"));
            }
            if at(&mul, one, a) != a {
                return ax(format!("1 * {a} != {a}"));
            }
            match (0..n).find(|&b| at(&add, a, b) == 0) {
                Some(b) => neg[a] = b,
                None => return ax(format!("{a} has no additive inverse")),
            }
            for b in 0..n {
                if at(&add, a, b) != at(&add, b, a) {
                    return ax(format!("{a} + {b} is not commutative"));
                }
                if at(&mul, a, b) != at(&mul, b, a) {
                    return ax(format!("{a} * {b} is not commutative"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab_sum = at(&add, a, b);
                let ab_prod = at(&mul, a, b);
                for c in 0..n {
                    if at(&add, ab_sum, c) != at(&add, a, at(&add, b, c)) {
                        return ax(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if at(&mul, ab_prod, c) != at(&mul, a, at(&mul, b, c)) {
                        return ax(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    let lhs = at(&mul, a, at(&add, b, c));
                    let rhs = at(&add, ab_prod, at(&mul, a, c));
                    if lhs != rhs {
                        return ax(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(FiniteRing {
            order: n,
            one,
            add,
            mul,
            neg,
            descriptor,
            cache: RingCache::default(),
        })
    }

    /// The residue ring `Z_n`.
    pub fn zn(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push((a + b) % n);
                mul.push((a * b) % n);
            }
        }
        Self::from_tables(add, mul, 1, RingDescriptor::Zn(n))
    }

    /// Direct product; element `(a_1, ..., a_k)` is encoded mixed-radix with
    /// `a_1` most significant.
    pub fn product(factors: &[&FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ZeroRing);
        }
        let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let n: usize = orders.iter().product();
        let decoded: Vec<Vec<usize>> = (0..n).map(|x| mixed_radix_decode(x, &orders)).collect();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &decoded {
            for b in &decoded {
                let s: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.add(a[i], b[i]))
                    .collect();
                let p: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.mul(a[i], b[i]))
                    .collect();
                add.push(mixed_radix_encode(&s, &orders));
                mul.push(mixed_radix_encode(&p, &orders));
            }
        }
        let ones: Vec<usize> = factors.iter().map(|f| f.one()).collect();
        let desc = RingDescriptor::Product(factors.iter().map(|f| f.descriptor.clone()).collect());
        Self::from_tables(add, mul, mixed_radix_encode(&ones, &orders), desc)
    }

    /// `R/I`, together with the projection `R -> R/I`.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(FiniteRing, Vec<usize>)> {
        if ideal.is_full() {
            return Err(Error::QuotientByWholeRing);
        }
        let (class_of, reps) = cosets(self.order, ideal, |a, b| self.add(a, b));
        let k = reps.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                add.push(class_of[self.add(a, b)]);
                mul.push(class_of[self.mul(a, b)]);
            }
        }
        let gens = minimal_generators(self, ideal);
        let desc = RingDescriptor::Quotient(Box::new(self.descriptor.clone()), gens);
        let ring = Self::from_tables(add, mul, class_of[self.one], desc)?;
        Ok((ring, class_of))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn units(&self) -> &ElemSet {
        self.cache.units.get_or_init(|| {
            ElemSet::from_iter(
                self.order,
                self.elements()
                    .filter(|&a| self.elements().any(|b| self.mul(a, b) == self.one)),
            )
        })
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units().contains(a)
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal(ElemSet::singleton(self.order, 0))
    }

    pub fn whole(&self) -> Ideal {
        Ideal(ElemSet::full(self.order))
    }

    pub fn is_proper(&self, ideal: &Ideal) -> bool {
        !ideal.is_full()
    }

    /// `Rg`, which is already closed under addition.
    pub fn principal(&self, g: usize) -> Ideal {
        Ideal(ElemSet::from_iter(
            self.order,
            self.elements().map(|r| self.mul(r, g)),
        ))
    }

    /// `A + B` for additive subgroups `A`, `B`.
    pub fn subgroup_sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal(self.subgroup_sum(i, j))
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal(i.intersection(j))
    }

    /// Smallest ideal containing `gens`; the zero ideal for no generators.
    pub fn ideal_generated(&self, gens: &[usize]) -> Ideal {
        gens.iter()
            .fold(self.zero_ideal(), |acc, &g| self.ideal_sum(&acc, &self.principal(g)))
    }

    pub fn ideal_generated_by_set(&self, gens: &ElemSet) -> Ideal {
        self.ideal_generated(&gens.to_vec())
    }

    /// `IJ`, the ideal generated by all products `ab`.
    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut prods = ElemSet::empty(self.order);
        for a in i.iter() {
            for b in j.iter() {
                prods.insert(self.mul(a, b));
            }
        }
        self.ideal_generated_by_set(&prods)
    }

    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        set.universe() == self.order
            && set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set
                .iter()
                .all(|a| self.elements().all(|r| set.contains(self.mul(r, a))))
    }

    pub fn ideal_from_set(&self, set: ElemSet) -> Result<Ideal> {
        if self.is_ideal(&set) {
            Ok(Ideal(set))
        } else {
            Err(Error::NotAnIdeal(set.to_string()))
        }
    }

    /// The full ideal lattice in canonical order.
    ///
    /// Built by adding principal ideals to known ideals until nothing new
    /// appears; every ideal of a finite ring is a finite sum of principal ones.
    pub fn ideals(&self) -> &[Ideal] {
        self.cache.ideals.get_or_init(|| {
            let cyclic: Vec<ElemSet> = {
                let mut v: Vec<ElemSet> = self.elements().map(|g| self.principal(g).0).collect();
                v.sort();
                v.dedup();
                v
            };
            let all = sum_closure(&cyclic, |a, b| self.subgroup_sum(a, b));
            all.into_iter().map(Ideal).collect()
        })
    }

    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        let proper: Vec<&Ideal> = self.ideals().iter().filter(|i| !i.is_full()).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| i.is_strict_subset(j)))
            .map(|i| (*i).clone())
            .collect()
    }

    /// Intersection of all maximal ideals.
    pub fn jacobson_by_maximal(&self) -> Ideal {
        self.maximal_ideals()
            .into_iter()
            .fold(self.whole(), |acc, m| self.ideal_intersection(&acc, &m))
    }

    /// `{r : 1 - rs is a unit for every s}`.
    pub fn jacobson_by_units(&self) -> Ideal {
        Ideal(ElemSet::from_iter(
            self.order,
            self.elements().filter(|&r| {
                self.elements()
                    .all(|s| self.is_unit(self.sub(self.one, self.mul(r, s))))
            }),
        ))
    }

    /// Both Jacobson computations, failing if they disagree.
    pub fn checked_jacobson(&self) -> Result<Ideal> {
        self.cache
            .jacobson
            .get_or_init(|| {
                let maximal = self.jacobson_by_maximal();
                let units = self.jacobson_by_units();
                if maximal == units {
                    Ok(maximal)
                } else {
                    Err(Error::JacobsonMismatch {
                        maximal: maximal.to_string(),
                        units: units.to_string(),
                    })
                }
            })
            .clone()
    }

    /// `J(R)`.
    ///
    /// # Panics
    /// If the two Jacobson algorithms disagree, which can only happen for a
    /// table that slipped past axiom validation.
    pub fn jacobson_radical(&self) -> &Ideal {
        let _ = self.checked_jacobson();
        match self.cache.jacobson.get() {
            Some(Ok(j)) => j,
            Some(Err(e)) => panic!("construction bug: {e}"),
            None => unreachable!(),
        }
    }

    /// `sqrt(I) = {a : a^k in I for some 1 <= k <= |R|}`.
    pub fn radical(&self, ideal: &Ideal) -> Ideal {
        Ideal(ElemSet::from_iter(
            self.order,
            self.elements().filter(|&a| {
                let mut p = a;
                for _ in 0..self.order {
                    if ideal.contains(p) {
                        return true;
                    }
                    p = self.mul(p, a);
                }
                false
            }),
        ))
    }

    /// `(I : X) = {r : rX ⊆ I}` for a nonempty subset `X`.
    pub fn colon(&self, ideal: &Ideal, x: &ElemSet) -> Result<Ideal> {
        if x.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(Ideal(ElemSet::from_iter(
            self.order,
            self.elements()
                .filter(|&r| x.iter().all(|j| ideal.contains(self.mul(r, j)))),
        )))
    }

    /// `Ann(X) = (0 : X)`.
    pub fn annihilator(&self, x: &ElemSet) -> Result<Ideal> {
        self.colon(&self.zero_ideal(), x)
    }

    /// `Z_I(R) = {r : rs in I for some s not in I}`.
    pub fn zero_divisors_mod(&self, ideal: &Ideal) -> ElemSet {
        ElemSet::from_iter(
            self.order,
            self.elements().filter(|&r| {
                self.elements()
                    .any(|s| !ideal.contains(s) && ideal.contains(self.mul(r, s)))
            }),
        )
    }

    /// Multiplicatively closed and containing 1.
    pub fn is_multiplicatively_closed(&self, s: &ElemSet) -> bool {
        s.contains(self.one) && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }
}

pub(crate) fn mixed_radix_encode(parts: &[usize], orders: &[usize]) -> usize {
    parts
        .iter()
        .zip(orders)
        .fold(0, |acc, (&p, &o)| acc * o + p)
}

pub(crate) fn mixed_radix_decode(mut x: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (i, &o) in orders.iter().enumerate().rev() {
        out[i] = x % o;
        x /= o;
    }
    out
}

/// Coset decomposition by a subgroup; cosets are numbered in order of
/// their least element. Returns the class map and the representatives.
pub(crate) fn cosets(
    order: usize,
    subgroup: &ElemSet,
    add: impl Fn(usize, usize) -> usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for h in subgroup {
            class_of[add(x, h)] = c;
        }
    }
    (class_of, reps)
}

/// All sums of the given additive subgroups (including `{0}`), sorted
/// canonically.
pub(crate) fn sum_closure(
    cyclic: &[ElemSet],
    sum: impl Fn(&ElemSet, &ElemSet) -> ElemSet,
) -> Vec<ElemSet> {
    use std::collections::BTreeSet;
    let Some(first) = cyclic.first() else {
        return Vec::new();
    };
    let zero = ElemSet::singleton(first.universe(), 0);
    let mut seen: BTreeSet<ElemSet> = cyclic.iter().cloned().collect();
    seen.insert(zero);
    let mut frontier: Vec<ElemSet> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in cyclic {
                if c.is_subset(a) {
                    continue;
                }
                let s = sum(a, c);
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Greedy small generating set, used for quotient descriptors.
fn minimal_generators(ring: &FiniteRing, ideal: &Ideal) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = ring.zero_ideal();
    while &current != ideal {
        let g = ideal
            .iter()
            .filter(|&g| !current.contains(g))
            .max_by_key(|&g| (ring.ideal_sum(&current, &ring.principal(g)).len(), usize::MAX - g))
            .expect("ideal strictly larger than current");
        current = ring.ideal_sum(&current, &ring.principal(g));
        gens.push(g);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ring: &FiniteRing, xs: &[usize]) -> ElemSet {
        ElemSet::from_iter(ring.order(), xs.iter().copied())
    }

    #[test]
    fn zn_units() {
        let r = FiniteRing::zn(6).unwrap();
        assert_eq!(r.units().to_vec(), vec![1, 5]);
        assert_eq!(FiniteRing::zn(1).unwrap_err(), Error::ModulusTooSmall(1));
        assert_eq!(FiniteRing::zn(0).unwrap_err(), Error::ModulusTooSmall(0));
    }

    #[test]
    fn product_order_and_encoding() {
        let a = FiniteRing::zn(2).unwrap();
        let b = FiniteRing::zn(3).unwrap();
        let p = FiniteRing::product(&[&a, &b]).unwrap();
        assert_eq!(p.order(), 6);
        // (1, 2) encodes as 1*3 + 2 = 5; (1,2)+(1,2) = (0,1) = 1
        assert_eq!(p.add(5, 5), 1);
        assert_eq!(p.one(), 4);
        assert_eq!(p.descriptor().to_string(), "product(zn(2), zn(3))");
    }

    #[test]
    fn quotient_of_z12_by_4() {
        let r = FiniteRing::zn(12).unwrap();
        let i = r.ideal_generated(&[4]);
        let (q, proj) = r.quotient(&i).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(proj[5], 1);
        assert_eq!(proj[7], 3);
        assert_eq!(r.quotient(&r.whole()).unwrap_err(), Error::QuotientByWholeRing);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Z_2 addition with a non-distributive "multiplication" (a*b = 1).
        let add = vec![0, 1, 1, 0];
        let mul = vec![1, 1, 1, 1];
        assert!(matches!(
            FiniteRing::from_tables(add.clone(), mul, 1, RingDescriptor::Tables),
            Err(Error::RingAxiom(_))
        ));
        let zero_mul = vec![0, 0, 0, 0];
        assert_eq!(
            FiniteRing::from_tables(add, zero_mul, 0, RingDescriptor::Tables).unwrap_err(),
            Error::ZeroRing
        );
    }

    #[test]
    fn generated_ideals() {
        let r = FiniteRing::zn(12).unwrap();
        assert_eq!(r.ideal_generated(&[8]).to_vec(), vec![0, 4, 8]);
        assert_eq!(r.ideal_generated(&[]).to_vec(), vec![0]);
        let r6 = FiniteRing::zn(6).unwrap();
        assert!(r6.ideal_generated(&[2, 3]).is_full());
    }

    #[test]
    fn ideal_lattices() {
        let r = FiniteRing::zn(12).unwrap();
        assert_eq!(r.ideals().len(), 6);
        for p in [2, 3, 5, 7, 11, 13] {
            let f = FiniteRing::zn(p).unwrap();
            assert_eq!(f.ideals().len(), 2);
        }
        let z2 = FiniteRing::zn(2).unwrap();
        let v4 = FiniteRing::product(&[&z2, &z2]).unwrap();
        assert_eq!(v4.ideals().len(), 4);
        // canonical order: sizes ascending
        let sizes: Vec<usize> = r.ideals().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn jacobson_examples() {
        let r12 = FiniteRing::zn(12).unwrap();
        assert_eq!(r12.jacobson_radical().to_vec(), vec![0, 6]);
        let r7 = FiniteRing::zn(7).unwrap();
        assert!(r7.jacobson_radical().is_zero());
        let r8 = FiniteRing::zn(8).unwrap();
        assert_eq!(r8.jacobson_radical(), &r8.ideal_generated(&[2]));
    }

    #[test]
    fn radicals() {
        let r12 = FiniteRing::zn(12).unwrap();
        assert_eq!(r12.radical(&r12.zero_ideal()).to_vec(), vec![0, 6]);
        let r8 = FiniteRing::zn(8).unwrap();
        assert_eq!(r8.radical(&r8.ideal_generated(&[4])), r8.ideal_generated(&[2]));
    }

    #[test]
    fn colons() {
        let r = FiniteRing::zn(12).unwrap();
        let i4 = r.ideal_generated(&[4]);
        let i2 = r.ideal_generated(&[2]);
        assert_eq!(r.colon(&i4, &i2).unwrap(), i2);
        assert_eq!(r.colon(&i4, r.whole().members()).unwrap(), i4);
        let i3 = r.ideal_generated(&[3]);
        assert_eq!(r.colon(&r.zero_ideal(), &i3).unwrap(), i4);
        assert_eq!(
            r.colon(&i4, &ElemSet::empty(12)).unwrap_err(),
            Error::EmptySubset
        );
    }

    #[test]
    fn ideal_checks() {
        let r = FiniteRing::zn(12).unwrap();
        assert!(r.is_ideal(&set(&r, &[0, 4, 8])));
        assert!(!r.is_ideal(&set(&r, &[0, 4])));
        assert!(r.ideal_from_set(set(&r, &[0, 5])).is_err());
        assert_eq!(
            r.ideal_product(&r.ideal_generated(&[2]), &r.ideal_generated(&[3])),
            r.ideal_generated(&[6])
        );
    }
}
