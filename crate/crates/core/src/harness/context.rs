//! Per-instance caches shared by every property.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::bitset::ElemSet;
use crate::constructions::{multiplicative_closure, Idealization, LocalizedModule, LocalizedRing};
use crate::corpus::Instance;
use crate::descriptor::{build_module, build_ring, check_elements, Caps};
use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, ModuleHom};
use crate::module::{FiniteModule, StructureFlags, Submodule};
use crate::predicates::{check_j_ideal, check_j_submodule, check_weakly_j_ideal, check_weakly_j_submodule};
use crate::ring::{FiniteRing, Ideal};

use super::{Assignment, Value};

/// Largest idealization ring the harness will build.
pub const IDEALIZATION_MAX_ORDER: usize = 64;

/// Generator budget for endomorphism enumeration.
pub const HOM_MAX_GENERATORS: usize = 3;

/// A module with its submodule lattice and J-style flags per submodule.
pub struct Lattice {
    pub module: Arc<FiniteModule>,
    index: HashMap<ElemSet, usize>,
    /// Weakly J; false for the whole module.
    pub wj: Vec<bool>,
    /// J-submodule; false for the whole module.
    pub j: Vec<bool>,
}

impl Lattice {
    pub fn new(module: Arc<FiniteModule>) -> Self {
        let subs = module.submodules();
        let index = subs.iter().enumerate().map(|(i, n)| (n.members().clone(), i)).collect();
        let flag = |f: fn(&FiniteModule, &Submodule) -> Result<crate::predicates::Verdict>| {
            subs.iter()
                .map(|n| !n.is_full() && f(&module, n).map(|v| v.holds).unwrap_or(false))
                .collect::<Vec<bool>>()
        };
        let wj = flag(check_weakly_j_submodule);
        let j = flag(check_j_submodule);
        Lattice { module, index, wj, j }
    }

    pub fn subs(&self) -> &[Submodule] {
        self.module.submodules()
    }

    pub fn index(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn weakly_j(&self, set: &ElemSet) -> bool {
        self.index(set).is_some_and(|i| self.wj[i])
    }

    pub fn j(&self, set: &ElemSet) -> bool {
        self.index(set).is_some_and(|i| self.j[i])
    }
}

pub struct QuotientData {
    pub projection: ModuleHom,
    pub lattice: Lattice,
}

pub struct InclusionData {
    pub inclusion: ModuleHom,
    pub lattice: Lattice,
}

pub struct IdealizationData {
    pub construction: Idealization,
    index: HashMap<ElemSet, usize>,
    pub wj_ideal: Vec<bool>,
}

impl IdealizationData {
    pub fn weakly_j_ideal(&self, set: &ElemSet) -> bool {
        self.index.get(set).is_some_and(|&i| self.wj_ideal[i])
    }
}

pub struct LocalData {
    pub set: ElemSet,
    pub ring: LocalizedRing,
    pub module: LocalizedModule,
    pub lattice: Lattice,
    pub jacobson_extends: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    Endo,
    Projection,
    Inclusion,
}

impl HomKind {
    pub fn name(self) -> &'static str {
        match self {
            HomKind::Endo => "endo",
            HomKind::Projection => "projection",
            HomKind::Inclusion => "inclusion",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "endo" => Ok(HomKind::Endo),
            "projection" => Ok(HomKind::Projection),
            "inclusion" => Ok(HomKind::Inclusion),
            _ => Err(Error::Unknown {
                kind: "hom kind",
                name: s.into(),
            }),
        }
    }
}

pub struct HomEntry {
    pub kind: HomKind,
    /// Submodule index for projections and inclusions.
    pub l: Option<usize>,
    pub hom: ModuleHom,
}

pub struct Context {
    pub instance: Instance,
    pub ring: Arc<FiniteRing>,
    pub module: Arc<FiniteModule>,
    pub lattice: Lattice,
    pub flags: StructureFlags,
    pub named: Vec<(String, Submodule)>,
    pub subsets: Vec<ElemSet>,
    ideal_index: HashMap<ElemSet, usize>,
    pub wj_ideal: Vec<bool>,
    pub j_ideal: Vec<bool>,
    colon: Vec<usize>,
    action: OnceLock<Vec<usize>>,
    products: OnceLock<Vec<usize>>,
    cyclic: OnceLock<Vec<usize>>,
    fm_ideal: OnceLock<Vec<bool>>,
    quotients: Vec<OnceLock<Arc<QuotientData>>>,
    inclusions: Vec<OnceLock<Arc<InclusionData>>>,
    idealization: OnceLock<Option<Arc<IdealizationData>>>,
    localizations: OnceLock<Vec<Arc<LocalData>>>,
    homs: OnceLock<(Vec<HomEntry>, Vec<String>)>,
}

impl Context {
    pub fn new(instance: &Instance, caps: &Caps) -> Result<Self> {
        let ring = build_ring(&instance.ring, caps)?;
        let module = build_module(&ring, &instance.module, caps)?;
        ring.checked_jacobson()?;
        let lattice = Lattice::new(module.clone());
        let mut named = Vec::new();
        for (name, gens) in &instance.submodules {
            check_elements(gens, module.order())?;
            named.push((name.clone(), module.submodule_generated(gens)));
        }
        let mut subsets = Vec::new();
        for s in &instance.subsets {
            check_elements(s, ring.order())?;
            if s.is_empty() {
                return Err(Error::EmptySubset);
            }
            subsets.push(ElemSet::from_iter(ring.order(), s.iter().copied()));
        }
        let ideals = ring.ideals();
        let ideal_index = ideals.iter().enumerate().map(|(i, x)| (x.members().clone(), i)).collect();
        let ideal_flag = |f: fn(&FiniteRing, &Ideal) -> Result<crate::predicates::Verdict>| {
            ideals
                .iter()
                .map(|i| !i.is_full() && f(&ring, i).map(|v| v.holds).unwrap_or(false))
                .collect::<Vec<bool>>()
        };
        let wj_ideal = ideal_flag(check_weakly_j_ideal);
        let j_ideal = ideal_flag(check_j_ideal);
        let colon = lattice
            .subs()
            .iter()
            .map(|n| ideal_index_of(&ideal_index, module.colon(n).members()))
            .collect();
        let n = lattice.subs().len();
        Ok(Context {
            instance: instance.clone(),
            flags: module.flags(),
            ring,
            module,
            lattice,
            named,
            subsets,
            ideal_index,
            wj_ideal,
            j_ideal,
            colon,
            action: OnceLock::new(),
            products: OnceLock::new(),
            cyclic: OnceLock::new(),
            fm_ideal: OnceLock::new(),
            quotients: (0..n).map(|_| OnceLock::new()).collect(),
            inclusions: (0..n).map(|_| OnceLock::new()).collect(),
            idealization: OnceLock::new(),
            localizations: OnceLock::new(),
            homs: OnceLock::new(),
        })
    }

    pub fn subs(&self) -> &[Submodule] {
        self.lattice.subs()
    }

    pub fn ideals(&self) -> &[Ideal] {
        self.ring.ideals()
    }

    /// Indices of proper submodules.
    pub fn proper(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.subs().len()).filter(|&k| !self.subs()[k].is_full())
    }

    /// Finitely generated (always, here), faithful and multiplication.
    pub fn fgfm(&self) -> bool {
        self.flags.finitely_generated && self.flags.faithful && self.flags.multiplication
    }

    pub fn jc(&self) -> &Ideal {
        self.module.jacobson_colon()
    }

    pub fn sub_index(&self, set: &ElemSet) -> usize {
        self.lattice.index(set).expect("set is a submodule")
    }

    pub fn ideal_index(&self, set: &ElemSet) -> usize {
        ideal_index_of(&self.ideal_index, set)
    }

    pub fn try_ideal_index(&self, set: &ElemSet) -> Option<usize> {
        self.ideal_index.get(set).copied()
    }

    /// `(N:M)` as an ideal index.
    pub fn colon(&self, k: usize) -> usize {
        self.colon[k]
    }

    /// `I K` as a submodule index.
    pub fn action(&self, i: usize, k: usize) -> usize {
        let n = self.subs().len();
        self.action.get_or_init(|| {
            let mut t = Vec::with_capacity(self.ideals().len() * n);
            for i in self.ideals() {
                for k in self.subs() {
                    t.push(self.sub_index(self.module.ideal_action(i, k).members()));
                }
            }
            t
        })[i * n + k]
    }

    /// `IM` as a submodule index.
    pub fn ideal_times_module(&self, i: usize) -> usize {
        self.action(i, self.subs().len() - 1)
    }

    /// `NK` for a multiplication module.
    pub fn product(&self, k: usize, l: usize) -> usize {
        assert!(self.flags.multiplication, "products need a multiplication module");
        let n = self.subs().len();
        self.products.get_or_init(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let ij = self.ring.ideal_product(&self.ideals()[self.colon(a)], &self.ideals()[self.colon(b)]);
                    t.push(self.ideal_times_module(self.ideal_index(ij.members())));
                }
            }
            t
        })[k * n + l]
    }

    /// `<m>` as a submodule index.
    pub fn cyclic(&self, m: usize) -> usize {
        self.cyclic.get_or_init(|| {
            self.module
                .elements()
                .map(|m| self.sub_index(self.module.cyclic_submodule(m).members()))
                .collect()
        })[m]
    }

    /// Whether the ideal is a faithful multiplication `R`-module (finite
    /// generation is automatic).
    pub fn fm_ideal(&self, i: usize) -> bool {
        self.fm_ideal.get_or_init(|| {
            let r = &self.ring;
            r.ideals()
                .iter()
                .map(|i| {
                    let faithful = r.annihilator(i).map(|a| a.is_zero()).unwrap_or(false);
                    faithful
                        && r.ideals().iter().filter(|k| k.is_subset(i)).all(|k| {
                            let c = r.colon(k, i).expect("nonempty ideal");
                            &r.ideal_product(&c, i) == k
                        })
                })
                .collect()
        })[i]
    }

    pub fn quotient(&self, l: usize) -> Result<Arc<QuotientData>> {
        if let Some(q) = self.quotients[l].get() {
            return Ok(q.clone());
        }
        let projection = self.module.quotient_map(&self.subs()[l])?;
        let lattice = Lattice::new(projection.target().clone());
        Ok(self.quotients[l]
            .get_or_init(|| Arc::new(QuotientData { projection, lattice }))
            .clone())
    }

    pub fn inclusion(&self, l: usize) -> Result<Arc<InclusionData>> {
        if let Some(q) = self.inclusions[l].get() {
            return Ok(q.clone());
        }
        let inclusion = self.module.inclusion(&self.subs()[l])?;
        let lattice = Lattice::new(inclusion.source().clone());
        Ok(self.inclusions[l]
            .get_or_init(|| Arc::new(InclusionData { inclusion, lattice }))
            .clone())
    }

    /// `R(+)M` when its order is within [`IDEALIZATION_MAX_ORDER`].
    pub fn idealization(&self) -> Option<Arc<IdealizationData>> {
        self.idealization
            .get_or_init(|| {
                if self.ring.order() * self.module.order() > IDEALIZATION_MAX_ORDER {
                    return None;
                }
                let construction = Idealization::new(&self.ring, &self.module).ok()?;
                let r = construction.ring().clone();
                let index = r.ideals().iter().enumerate().map(|(i, x)| (x.members().clone(), i)).collect();
                let wj_ideal = r
                    .ideals()
                    .iter()
                    .map(|i| !i.is_full() && check_weakly_j_ideal(&r, i).map(|v| v.holds).unwrap_or(false))
                    .collect();
                Some(Arc::new(IdealizationData {
                    construction,
                    index,
                    wj_ideal,
                }))
            })
            .clone()
    }

    /// Candidate multiplicative sets: closures of each singleton `{s}`,
    /// the trivial set `{1}`, and closures of the instance subsets,
    /// dropping any that contain 0.
    pub fn multiplicative_sets(&self) -> Vec<ElemSet> {
        let r = &self.ring;
        let mut out: Vec<ElemSet> = Vec::new();
        let seeds = r
            .elements()
            .map(|s| ElemSet::singleton(r.order(), s))
            .chain(std::iter::once(ElemSet::empty(r.order())))
            .chain(self.subsets.iter().cloned());
        for seed in seeds {
            let s = multiplicative_closure(r, &seed);
            if !s.contains(0) && !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    pub fn localizations(&self) -> &[Arc<LocalData>] {
        self.localizations.get_or_init(|| {
            self.multiplicative_sets()
                .into_iter()
                .filter_map(|s| {
                    let ring = LocalizedRing::new(&self.ring, &s).ok()?;
                    let module = LocalizedModule::new(&ring, &self.module).ok()?;
                    let lattice = Lattice::new(module.module().clone());
                    let jacobson_extends = ring.jacobson_extends();
                    Some(Arc::new(LocalData {
                        set: s,
                        ring,
                        module,
                        lattice,
                        jacobson_extends,
                    }))
                })
                .collect()
        })
    }

    pub fn localization(&self, s: &ElemSet) -> Option<Arc<LocalData>> {
        self.localizations().iter().find(|d| &d.set == s).cloned()
    }

    /// Endomorphisms (when `M` needs at most [`HOM_MAX_GENERATORS`]
    /// generators), projections `M -> M/L` and inclusions `L -> M`.
    pub fn homs(&self) -> &(Vec<HomEntry>, Vec<String>) {
        self.homs.get_or_init(|| {
            let mut out = Vec::new();
            let mut notes = Vec::new();
            match enumerate_homs(&self.module, &self.module, HOM_MAX_GENERATORS) {
                Ok(hs) => out.extend(hs.into_iter().map(|hom| HomEntry {
                    kind: HomKind::Endo,
                    l: None,
                    hom,
                })),
                Err(e) => notes.push(format!("endomorphisms skipped: {e}")),
            }
            for l in 0..self.subs().len() {
                let sub = &self.subs()[l];
                if !sub.is_full() {
                    if let Ok(q) = self.quotient(l) {
                        out.push(HomEntry {
                            kind: HomKind::Projection,
                            l: Some(l),
                            hom: q.projection.clone(),
                        });
                    }
                }
                if !sub.is_zero() {
                    if let Ok(i) = self.inclusion(l) {
                        out.push(HomEntry {
                            kind: HomKind::Inclusion,
                            l: Some(l),
                            hom: i.inclusion.clone(),
                        });
                    }
                }
            }
            (out, notes)
        })
    }

    /// Source and target lattices of a hom of the given kind.
    pub fn hom_lattices(&self, kind: HomKind, l: Option<usize>) -> Result<(LatticeRef<'_>, LatticeRef<'_>)> {
        let main = LatticeRef::Main(&self.lattice);
        match (kind, l) {
            (HomKind::Endo, _) => Ok((main, LatticeRef::Main(&self.lattice))),
            (HomKind::Projection, Some(l)) => Ok((main, LatticeRef::Quotient(self.quotient(l)?))),
            (HomKind::Inclusion, Some(l)) => Ok((LatticeRef::Inclusion(self.inclusion(l)?), main)),
            _ => Err(Error::Parse("hom kind needs a submodule".into())),
        }
    }

    // assignment decoding

    pub fn get<'a>(&self, a: &'a Assignment, key: &str) -> Result<&'a Value> {
        a.get(key).ok_or_else(|| Error::Parse(format!("assignment lacks `{key}`")))
    }

    pub fn elem(&self, a: &Assignment, key: &str) -> Result<usize> {
        match self.get(a, key)? {
            Value::Elem(x) => Ok(*x),
            _ => Err(Error::Parse(format!("`{key}` is not an element"))),
        }
    }

    pub fn text<'a>(&self, a: &'a Assignment, key: &str) -> Result<&'a str> {
        match self.get(a, key)? {
            Value::Text(x) => Ok(x),
            _ => Err(Error::Parse(format!("`{key}` is not text"))),
        }
    }

    pub fn list<'a>(&self, a: &'a Assignment, key: &str) -> Result<&'a [usize]> {
        match self.get(a, key)? {
            Value::List(x) => Ok(x),
            _ => Err(Error::Parse(format!("`{key}` is not a list"))),
        }
    }

    pub fn set_in(&self, a: &Assignment, key: &str, universe: usize) -> Result<ElemSet> {
        let xs = self.list(a, key)?;
        check_elements(xs, universe)?;
        Ok(ElemSet::from_iter(universe, xs.iter().copied()))
    }

    /// Submodule index of `M` named by `key`.
    pub fn sub(&self, a: &Assignment, key: &str) -> Result<usize> {
        let set = self.set_in(a, key, self.module.order())?;
        self.lattice
            .index(&set)
            .ok_or_else(|| Error::NotASubmodule(set.to_string()))
    }

    /// Ideal index of `R` named by `key`.
    pub fn ideal(&self, a: &Assignment, key: &str) -> Result<usize> {
        let set = self.set_in(a, key, self.ring.order())?;
        self.try_ideal_index(&set)
            .ok_or_else(|| Error::NotAnIdeal(set.to_string()))
    }
}

pub enum LatticeRef<'a> {
    Main(&'a Lattice),
    Quotient(Arc<QuotientData>),
    Inclusion(Arc<InclusionData>),
}

impl std::ops::Deref for LatticeRef<'_> {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        match self {
            LatticeRef::Main(l) => l,
            LatticeRef::Quotient(q) => &q.lattice,
            LatticeRef::Inclusion(i) => &i.lattice,
        }
    }
}

fn ideal_index_of(index: &HashMap<ElemSet, usize>, set: &ElemSet) -> usize {
    *index.get(set).expect("set is an ideal")
}
