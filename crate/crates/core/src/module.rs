//! Finite modules over finite rings, their submodule lattices, and the
//! colon, residual and product operators used throughout the harness.

use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::bitset::ElemSet;
use crate::descriptor::ModuleDescriptor;
use crate::error::{Error, Result};
use crate::hom::ModuleHom;
use crate::ring::{cosets, mixed_radix_decode, mixed_radix_encode, sum_closure, FiniteRing, Ideal};

/// A submodule of some [`FiniteModule`], as the set of its members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule(ElemSet);

impl Submodule {
    pub(crate) fn from_set_unchecked(set: ElemSet) -> Self {
        Submodule(set)
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn into_set(self) -> ElemSet {
        self.0
    }
}

impl Deref for Submodule {
    type Target = ElemSet;

    fn deref(&self) -> &ElemSet {
        &self.0
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{}", self.0)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub faithful: bool,
    pub multiplication: bool,
    pub reduced: bool,
    /// Always true here; kept so hypothesis bookkeeping can cite it.
    pub finitely_generated: bool,
}

impl StructureFlags {
    pub fn faithful_multiplication(&self) -> bool {
        self.faithful && self.multiplication && self.finitely_generated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubmoduleFlags {
    pub pure: bool,
    pub small: bool,
}

#[derive(Default)]
struct ModuleCache {
    submodules: OnceLock<Vec<Submodule>>,
    jacobson_colon: OnceLock<Ideal>,
    jacobson: OnceLock<Submodule>,
    flags: OnceLock<StructureFlags>,
}

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<usize>,
    descriptor: ModuleDescriptor,
    factors: Vec<Arc<FiniteModule>>,
    cache: ModuleCache,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("ring", &self.ring.descriptor().to_string())
            .field("descriptor", &self.descriptor.to_string())
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteModule {
    /// Builds a module from an addition table and an action table indexed
    /// `r * order + m`, checking the group and action axioms exhaustively.
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        add: Vec<usize>,
        act: Vec<usize>,
        descriptor: ModuleDescriptor,
    ) -> Result<Self> {
        let n = (add.len() as f64).sqrt().round() as usize;
        let ax = |msg: String| Err(Error::ModuleAxiom(msg));
        if n == 0 || n * n != add.len() || act.len() != ring.order() * n {
            return ax("table shapes do not match".into());
        }
        if let Some(&bad) = add.iter().chain(&act).find(|&&x| x >= n) {
            return ax(format!("table entry {bad} out of range"));
        }
        let sum = |a: usize, b: usize| add[a * n + b];
        let scal = |r: usize, m: usize| act[r * n + m];
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            if sum(0, a) != a {
                return ax(format!("0 + {a} != {a}"));
            }
            match (0..n).find(|&b| sum(a, b) == 0) {
                Some(b) => neg[a] = b,
                None => return ax(format!("{a} has no additive inverse")),
            }
            for b in 0..n {
                if sum(a, b) != sum(b, a) {
                    return ax(format!("{a} + {b} is not commutative"));
                }
                for c in 0..n {
                    if sum(sum(a, b), c) != sum(a, sum(b, c)) {
                        return ax(format!("addition not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        for m in 0..n {
            if scal(ring.one(), m) != m {
                return ax(format!("1 * {m} != {m}"));
            }
        }
        for r in ring.elements() {
            for m in 0..n {
                for m2 in 0..n {
                    if scal(r, sum(m, m2)) != sum(scal(r, m), scal(r, m2)) {
                        return ax(format!("{r}({m} + {m2}) != {r}{m} + {r}{m2}"));
                    }
                }
            }
            for s in ring.elements() {
                for m in 0..n {
                    if scal(ring.add(r, s), m) != sum(scal(r, m), scal(s, m)) {
                        return ax(format!("({r} + {s}){m} != {r}{m} + {s}{m}"));
                    }
                    if scal(ring.mul(r, s), m) != scal(r, scal(s, m)) {
                        return ax(format!("({r}{s}){m} != {r}({s}{m})"));
                    }
                }
            }
        }
        Ok(FiniteModule {
            ring: ring.clone(),
            order: n,
            add,
            neg,
            act,
            descriptor,
            factors: Vec::new(),
            cache: ModuleCache::default(),
        })
    }

    /// `R` acting on itself.
    pub fn over_itself(ring: &Arc<FiniteRing>) -> Result<Self> {
        let n = ring.order();
        let mut add = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(a, b));
            }
        }
        let mut act = Vec::with_capacity(n * n);
        for r in 0..n {
            for m in 0..n {
                act.push(ring.mul(r, m));
            }
        }
        Self::from_tables(ring, add, act, ModuleDescriptor::SelfModule)
    }

    /// `Z_d` with `r . m = (r * m) mod d`, reading `r` as its canonical index.
    /// Only well defined when that reading is a ring map, which the axiom
    /// check decides.
    pub fn cyclic(ring: &Arc<FiniteRing>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ModulusTooSmall(0));
        }
        let mut add = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                add.push((a + b) % d);
            }
        }
        let mut act = Vec::with_capacity(ring.order() * d);
        for r in ring.elements() {
            for m in 0..d {
                act.push((r * m) % d);
            }
        }
        Self::from_tables(ring, add, act, ModuleDescriptor::Cyclic(d))
    }

    /// Direct product, mixed-radix encoded with the first factor most significant.
    pub fn product(ring: &Arc<FiniteRing>, factors: &[Arc<FiniteModule>]) -> Result<Self> {
        if factors.iter().any(|f| f.ring().as_ref() != ring.as_ref()) {
            return Err(Error::RingMismatch);
        }
        if factors.is_empty() {
            return Err(Error::ModuleAxiom("empty product".into()));
        }
        let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let n: usize = orders.iter().product();
        let decoded: Vec<Vec<usize>> = (0..n).map(|x| mixed_radix_decode(x, &orders)).collect();
        let mut add = Vec::with_capacity(n * n);
        for a in &decoded {
            for b in &decoded {
                let s: Vec<usize> = (0..factors.len()).map(|i| factors[i].add(a[i], b[i])).collect();
                add.push(mixed_radix_encode(&s, &orders));
            }
        }
        let mut act = Vec::with_capacity(ring.order() * n);
        for r in ring.elements() {
            for a in &decoded {
                let s: Vec<usize> = (0..factors.len()).map(|i| factors[i].act(r, a[i])).collect();
                act.push(mixed_radix_encode(&s, &orders));
            }
        }
        let desc = ModuleDescriptor::Product(factors.iter().map(|f| f.descriptor.clone()).collect());
        let mut m = Self::from_tables(ring, add, act, desc)?;
        m.factors = factors.to_vec();
        Ok(m)
    }

    /// The canonical projection `M -> M/N`. Cosets are numbered by their
    /// least member.
    pub fn quotient_map(self: &Arc<Self>, n: &Submodule) -> Result<ModuleHom> {
        self.require_submodule(n)?;
        let (class_of, reps) = cosets(self.order, n, |a, b| self.add(a, b));
        let k = reps.len();
        let mut add = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                add.push(class_of[self.add(a, b)]);
            }
        }
        let mut act = Vec::with_capacity(self.ring.order() * k);
        for r in self.ring.elements() {
            for &a in &reps {
                act.push(class_of[self.act(r, a)]);
            }
        }
        let desc = ModuleDescriptor::Quotient(Box::new(self.descriptor.clone()), self.generators_of(n));
        let q = Arc::new(Self::from_tables(&self.ring, add, act, desc)?);
        ModuleHom::new(self.clone(), q, class_of)
    }

    /// `N` as a module in its own right, with the inclusion `N -> M`.
    /// Members are renumbered by rank.
    pub fn inclusion(self: &Arc<Self>, n: &Submodule) -> Result<ModuleHom> {
        self.require_submodule(n)?;
        let members = n.to_vec();
        let mut rank = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            rank[x] = i;
        }
        let k = members.len();
        let mut add = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                add.push(rank[self.add(a, b)]);
            }
        }
        let mut act = Vec::with_capacity(self.ring.order() * k);
        for r in self.ring.elements() {
            for &a in &members {
                act.push(rank[self.act(r, a)]);
            }
        }
        let desc = ModuleDescriptor::Submodule(Box::new(self.descriptor.clone()), self.generators_of(n));
        let sub = Arc::new(Self::from_tables(&self.ring, add, act, desc)?);
        ModuleHom::new(sub, self.clone(), members)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn descriptor(&self) -> &ModuleDescriptor {
        &self.descriptor
    }

    /// Factors of a product module, empty otherwise.
    pub fn factors(&self) -> &[Arc<FiniteModule>] {
        &self.factors
    }

    /// Encodes a tuple of factor elements; only meaningful for products.
    pub fn encode_tuple(&self, parts: &[usize]) -> usize {
        let orders: Vec<usize> = self.factors.iter().map(|f| f.order()).collect();
        mixed_radix_encode(parts, &orders)
    }

    pub fn decode_tuple(&self, x: usize) -> Vec<usize> {
        let orders: Vec<usize> = self.factors.iter().map(|f| f.order()).collect();
        mixed_radix_decode(x, &orders)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.order + m]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn zero(&self) -> Submodule {
        Submodule(ElemSet::singleton(self.order, 0))
    }

    pub fn whole(&self) -> Submodule {
        Submodule(ElemSet::full(self.order))
    }

    pub fn is_proper(&self, n: &Submodule) -> bool {
        !n.is_full()
    }

    pub fn is_submodule(&self, set: &ElemSet) -> bool {
        set.universe() == self.order
            && set.contains(0)
            && set.iter().all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set
                .iter()
                .all(|a| self.ring.elements().all(|r| set.contains(self.act(r, a))))
    }

    pub fn submodule_from_set(&self, set: ElemSet) -> Result<Submodule> {
        if self.is_submodule(&set) {
            Ok(Submodule(set))
        } else {
            Err(Error::NotASubmodule(set.to_string()))
        }
    }

    fn require_submodule(&self, n: &Submodule) -> Result<()> {
        if n.universe() != self.order || !self.is_submodule(n) {
            return Err(Error::NotASubmodule(n.to_string()));
        }
        Ok(())
    }

    /// `Rm`.
    pub fn cyclic_submodule(&self, m: usize) -> Submodule {
        Submodule(ElemSet::from_iter(
            self.order,
            self.ring.elements().map(|r| self.act(r, m)),
        ))
    }

    /// `{a m : a in X}` for a subset `X` of the ring.
    pub fn scalar_image(&self, x: &ElemSet, m: usize) -> ElemSet {
        ElemSet::from_iter(self.order, x.iter().map(|a| self.act(a, m)))
    }

    pub fn subgroup_sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    pub fn sum(&self, n: &Submodule, k: &Submodule) -> Submodule {
        Submodule(self.subgroup_sum(n, k))
    }

    pub fn intersection(&self, n: &Submodule, k: &Submodule) -> Submodule {
        Submodule(n.intersection(k))
    }

    pub fn submodule_generated(&self, gens: &[usize]) -> Submodule {
        gens.iter().fold(self.zero(), |acc, &g| {
            if acc.contains(g) {
                acc
            } else {
                self.sum(&acc, &self.cyclic_submodule(g))
            }
        })
    }

    pub fn submodule_generated_by_set(&self, gens: &ElemSet) -> Submodule {
        self.submodule_generated(&gens.to_vec())
    }

    /// Greedy generating set of `n`: repeatedly add the element that grows
    /// the span most (ties to the smallest index).
    pub fn generators_of(&self, n: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.zero();
        while current.members() != n {
            let g = n
                .iter()
                .filter(|&g| !current.contains(g))
                .max_by_key(|&g| {
                    (
                        self.sum(&current, &self.cyclic_submodule(g)).len(),
                        usize::MAX - g,
                    )
                })
                .expect("target strictly larger than current span");
            current = self.sum(&current, &self.cyclic_submodule(g));
            gens.push(g);
        }
        gens
    }

    /// The full submodule lattice in canonical order, via sums of cyclic
    /// submodules.
    pub fn submodules(&self) -> &[Submodule] {
        self.cache.submodules.get_or_init(|| {
            let mut cyclic: Vec<ElemSet> = self.elements().map(|m| self.cyclic_submodule(m).0).collect();
            cyclic.sort();
            cyclic.dedup();
            sum_closure(&cyclic, |a, b| self.subgroup_sum(a, b))
                .into_iter()
                .map(Submodule)
                .collect()
        })
    }

    pub fn proper_submodules(&self) -> impl Iterator<Item = &Submodule> {
        self.submodules().iter().filter(|n| !n.is_full())
    }

    pub fn maximal_submodules(&self) -> Vec<Submodule> {
        let proper: Vec<&Submodule> = self.proper_submodules().collect();
        proper
            .iter()
            .filter(|n| !proper.iter().any(|k| n.is_strict_subset(k)))
            .map(|n| (*n).clone())
            .collect()
    }

    /// `J(M)`, the intersection of the maximal submodules. The zero module
    /// has none and gets itself back.
    pub fn jacobson(&self) -> &Submodule {
        self.cache.jacobson.get_or_init(|| {
            self.maximal_submodules()
                .into_iter()
                .fold(self.whole(), |acc, m| self.intersection(&acc, &m))
        })
    }

    pub fn is_zero_module(&self) -> bool {
        self.order == 1
    }

    /// `(N : X) = {r : rX ⊆ N}` for a subset `X` of the module.
    pub fn colon_subset(&self, n: &ElemSet, x: &ElemSet) -> Ideal {
        Ideal::from_set_unchecked(ElemSet::from_iter(
            self.ring.order(),
            self.ring
                .elements()
                .filter(|&r| x.iter().all(|m| n.contains(self.act(r, m)))),
        ))
    }

    /// `(N : M)`.
    pub fn colon(&self, n: &ElemSet) -> Ideal {
        Ideal::from_set_unchecked(ElemSet::from_iter(
            self.ring.order(),
            self.ring
                .elements()
                .filter(|&r| self.elements().all(|m| n.contains(self.act(r, m)))),
        ))
    }

    /// `Ann(M) = (0 : M)`.
    pub fn annihilator(&self) -> Ideal {
        self.colon(&self.zero())
    }

    /// `(0 : m)` for a single element.
    pub fn annihilator_of(&self, m: usize) -> Ideal {
        Ideal::from_set_unchecked(ElemSet::from_iter(
            self.ring.order(),
            self.ring.elements().filter(|&r| self.act(r, m) == 0),
        ))
    }

    /// `(N :_M X) = {m : Xm ⊆ N}` for a nonempty subset `X` of the ring.
    pub fn residual(&self, n: &ElemSet, x: &ElemSet) -> Result<Submodule> {
        if x.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(Submodule(ElemSet::from_iter(
            self.order,
            self.elements()
                .filter(|&m| x.iter().all(|a| n.contains(self.act(a, m)))),
        )))
    }

    /// `IN`: the sum of the subgroups `Im` over `m in N`.
    pub fn ideal_action(&self, i: &ElemSet, n: &ElemSet) -> Submodule {
        let mut acc = ElemSet::singleton(self.order, 0);
        for m in n {
            let im = self.scalar_image(i, m);
            if !im.is_subset(&acc) {
                acc = self.subgroup_sum(&acc, &im);
            }
        }
        Submodule(acc)
    }

    /// `IM`.
    pub fn ideal_times_module(&self, i: &ElemSet) -> Submodule {
        self.ideal_action(i, self.whole().members())
    }

    /// `J(R)M`.
    pub fn jacobson_ring_times(&self) -> Submodule {
        self.ideal_times_module(self.ring.jacobson_radical())
    }

    /// `(J(R)M : M)`, the threshold ideal in every J-style definition.
    pub fn jacobson_colon(&self) -> &Ideal {
        self.cache
            .jacobson_colon
            .get_or_init(|| self.colon(&self.jacobson_ring_times()))
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().is_zero()
    }

    /// Every submodule `N` equals `(N:M)M`.
    pub fn is_multiplication(&self) -> bool {
        self.submodules()
            .iter()
            .all(|n| &self.ideal_times_module(&self.colon(n)) == n)
    }

    /// `a^2 m = 0` implies `am = 0`.
    pub fn is_reduced(&self) -> bool {
        self.ring.elements().all(|a| {
            let a2 = self.ring.mul(a, a);
            self.elements()
                .all(|m| self.act(a2, m) != 0 || self.act(a, m) == 0)
        })
    }

    pub fn flags(&self) -> StructureFlags {
        *self.cache.flags.get_or_init(|| StructureFlags {
            faithful: self.is_faithful(),
            multiplication: self.is_multiplication(),
            reduced: self.is_reduced(),
            finitely_generated: true,
        })
    }

    /// `IN = N ∩ IM` for every ideal `I`.
    pub fn is_pure(&self, n: &Submodule) -> bool {
        self.ring.ideals().iter().all(|i| {
            self.ideal_action(i, n).0 == n.intersection(&self.ideal_times_module(i))
        })
    }

    /// `N + K = M` forces `K = M`.
    pub fn is_small(&self, n: &Submodule) -> bool {
        self.submodules()
            .iter()
            .all(|k| k.is_full() || !self.sum(n, k).is_full())
    }

    pub fn submodule_flags(&self, n: &Submodule) -> SubmoduleFlags {
        SubmoduleFlags {
            pure: self.is_pure(n),
            small: self.is_small(n),
        }
    }

    /// `NK = (N:M)(K:M)M`, with the colon ideals as presentation ideals.
    pub fn submodule_product(&self, n: &ElemSet, k: &ElemSet) -> Result<Submodule> {
        if !self.flags().multiplication {
            return Err(Error::NotMultiplication);
        }
        let i = self.colon(n);
        let j = self.colon(k);
        Ok(self.ideal_times_module(&self.ring.ideal_product(&i, &j)))
    }

    /// `m1 m2 = <m1><m2>`.
    pub fn element_product(&self, m1: usize, m2: usize) -> Result<Submodule> {
        self.submodule_product(&self.cyclic_submodule(m1), &self.cyclic_submodule(m2))
    }

    /// All ideals `I` with `IM = N`.
    pub fn presentation_ideals(&self, n: &ElemSet) -> Vec<Ideal> {
        self.ring
            .ideals()
            .iter()
            .filter(|i| self.ideal_times_module(i).members() == n)
            .cloned()
            .collect()
    }

    /// `Z(M) = {r : rm = 0 for some m != 0}`.
    pub fn zero_divisors(&self) -> ElemSet {
        ElemSet::from_iter(
            self.ring.order(),
            self.ring
                .elements()
                .filter(|&r| (1..self.order).any(|m| self.act(r, m) == 0)),
        )
    }

    /// `Z_N(M) = {r : rm in N for some m not in N}`.
    pub fn zero_divisors_mod(&self, n: &ElemSet) -> ElemSet {
        ElemSet::from_iter(
            self.ring.order(),
            self.ring.elements().filter(|&r| {
                self.elements()
                    .any(|m| !n.contains(m) && n.contains(self.act(r, m)))
            }),
        )
    }
}
