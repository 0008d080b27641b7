//! Submodule and ideal predicates, each answering with a [`Verdict`].
//!
//! All of the J-style, prime-style and n-style definitions share one shape:
//! whenever `rm ∈ N` (optionally with `rm != 0`) and `r` lies outside a
//! threshold ideal, then `m ∈ N`. They differ only in the threshold:
//!
//! | predicate        | threshold      | `rm != 0` |
//! |------------------|----------------|-----------|
//! | J-submodule      | `(J(R)M : M)`  | no        |
//! | weakly J         | `(J(R)M : M)`  | yes       |
//! | prime            | `(N : M)`      | no        |
//! | weakly prime     | `(N : M)`      | yes       |
//! | primary          | `√(N : M)`     | no        |
//! | weakly primary   | `√(N : M)`     | yes       |
//! | n-submodule      | `√(0 : M)`     | no        |
//!
//! Scans run `r` outermost and `m` innermost, so a reported witness is the
//! lexicographically smallest violating pair.

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ideal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Scalar `r` and module element `m`.
    Scalar { r: usize, m: usize },
    /// Ring elements `a`, `b`.
    RingPair { a: usize, b: usize },
    /// A strictly larger submodule with the property.
    Larger { members: ElemSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Quantifier instances examined.
    pub checks: usize,
    /// Set when the hypothesis of the implication never fired.
    pub vacuous: bool,
}

impl Verdict {
    fn from_scan(witness: Option<Witness>, checks: usize, fired: usize) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
            checks,
            vacuous: fired == 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Prime,
    WeaklyPrime,
    Primary,
    WeaklyPrimary,
    NSubmodule,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 5] = [
        ClassicalKind::Prime,
        ClassicalKind::WeaklyPrime,
        ClassicalKind::Primary,
        ClassicalKind::WeaklyPrimary,
        ClassicalKind::NSubmodule,
    ];

    fn is_weak(self) -> bool {
        matches!(self, ClassicalKind::WeaklyPrime | ClassicalKind::WeaklyPrimary)
    }
}

fn require_proper(m: &FiniteModule, n: &Submodule) -> Result<()> {
    if n.universe() != m.order() || !m.is_submodule(n) {
        return Err(Error::NotASubmodule(n.to_string()));
    }
    if n.is_full() {
        return Err(Error::NotProper);
    }
    Ok(())
}

/// `∀ r ∉ T, m: rm ∈ N (and rm != 0 when weak) ⇒ m ∈ N`.
fn threshold_scan(m: &FiniteModule, n: &ElemSet, threshold: &ElemSet, weak: bool) -> Verdict {
    let ring = m.ring();
    let mut fired = 0;
    let mut witness = None;
    'outer: for r in ring.elements() {
        if threshold.contains(r) {
            continue;
        }
        for x in m.elements() {
            let rx = m.act(r, x);
            if !n.contains(rx) || (weak && rx == 0) {
                continue;
            }
            fired += 1;
            if !n.contains(x) {
                witness = Some(Witness::Scalar { r, m: x });
                break 'outer;
            }
        }
    }
    Verdict::from_scan(witness, ring.order() * m.order(), fired)
}

/// Proper `N` such that `0 != rm ∈ N` and `r ∉ (J(R)M:M)` force `m ∈ N`.
pub fn check_weakly_j_submodule(m: &FiniteModule, n: &Submodule) -> Result<Verdict> {
    require_proper(m, n)?;
    Ok(threshold_scan(m, n, m.jacobson_colon(), true))
}

/// Proper `N` such that `rm ∈ N` and `r ∉ (J(R)M:M)` force `m ∈ N`.
pub fn check_j_submodule(m: &FiniteModule, n: &Submodule) -> Result<Verdict> {
    require_proper(m, n)?;
    Ok(threshold_scan(m, n, m.jacobson_colon(), false))
}

pub fn check_classical(m: &FiniteModule, n: &Submodule, kind: ClassicalKind) -> Result<Verdict> {
    require_proper(m, n)?;
    let ring = m.ring();
    let threshold = match kind {
        ClassicalKind::Prime | ClassicalKind::WeaklyPrime => m.colon(n),
        ClassicalKind::Primary | ClassicalKind::WeaklyPrimary => ring.radical(&m.colon(n)),
        ClassicalKind::NSubmodule => ring.radical(&m.annihilator()),
    };
    Ok(threshold_scan(m, n, &threshold, kind.is_weak()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVerdicts {
    pub j_ideal: Verdict,
    pub weakly_j_ideal: Verdict,
}

fn ideal_scan(ring: &FiniteRing, i: &Ideal, weak: bool) -> Verdict {
    let jr = ring.jacobson_radical();
    let mut fired = 0;
    let mut witness = None;
    'outer: for a in ring.elements() {
        if jr.contains(a) {
            continue;
        }
        for b in ring.elements() {
            let ab = ring.mul(a, b);
            if !i.contains(ab) || (weak && ab == 0) {
                continue;
            }
            fired += 1;
            if !i.contains(b) {
                witness = Some(Witness::RingPair { a, b });
                break 'outer;
            }
        }
    }
    Verdict::from_scan(witness, ring.order() * ring.order(), fired)
}

fn require_proper_ideal(ring: &FiniteRing, i: &Ideal) -> Result<()> {
    if i.universe() != ring.order() || !ring.is_ideal(i) {
        return Err(Error::NotAnIdeal(i.to_string()));
    }
    if i.is_full() {
        return Err(Error::IdealNotProper);
    }
    Ok(())
}

/// `ab ∈ I`, `a ∉ J(R)` force `b ∈ I`.
pub fn check_j_ideal(ring: &FiniteRing, i: &Ideal) -> Result<Verdict> {
    require_proper_ideal(ring, i)?;
    Ok(ideal_scan(ring, i, false))
}

/// `0 != ab ∈ I`, `a ∉ J(R)` force `b ∈ I`.
pub fn check_weakly_j_ideal(ring: &FiniteRing, i: &Ideal) -> Result<Verdict> {
    require_proper_ideal(ring, i)?;
    Ok(ideal_scan(ring, i, true))
}

pub fn check_ideal_variants(ring: &FiniteRing, i: &Ideal) -> Result<IdealVerdicts> {
    Ok(IdealVerdicts {
        j_ideal: check_j_ideal(ring, i)?,
        weakly_j_ideal: check_weakly_j_ideal(ring, i)?,
    })
}

/// `Z(M) ⊆ (J(R)M : M)`. A witness is `(r, m)` with `rm = 0`, `m != 0`
/// and `r` outside the threshold.
pub fn check_j_presimplifiable(m: &FiniteModule) -> Verdict {
    let jc = m.jacobson_colon();
    let ring = m.ring();
    let mut witness = None;
    let mut fired = 0;
    'outer: for r in ring.elements() {
        for x in 1..m.order() {
            if m.act(r, x) == 0 {
                fired += 1;
                if !jc.contains(r) {
                    witness = Some(Witness::Scalar { r, m: x });
                    break 'outer;
                }
                break;
            }
        }
    }
    Verdict::from_scan(witness, ring.order() * m.order().saturating_sub(1), fired)
}

/// No weakly J-submodule strictly contains `N`. `N` itself must be weakly J.
pub fn check_maximal_weakly_j(m: &FiniteModule, n: &Submodule) -> Result<Verdict> {
    if !check_weakly_j_submodule(m, n)?.holds {
        return Err(Error::NotWeaklyJ);
    }
    let mut checks = 0;
    for k in m.proper_submodules() {
        if !n.is_strict_subset(k) {
            continue;
        }
        checks += 1;
        if check_weakly_j_submodule(m, k)?.holds {
            return Ok(Verdict {
                holds: false,
                witness: Some(Witness::Larger {
                    members: k.members().clone(),
                }),
                checks,
                vacuous: false,
            });
        }
    }
    Ok(Verdict {
        holds: true,
        witness: None,
        checks,
        vacuous: checks == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    fn selfmod(n: usize) -> FiniteModule {
        FiniteModule::over_itself(&zn(n)).unwrap()
    }

    #[test]
    fn zero_submodule_of_z6_over_z12() {
        let m = FiniteModule::cyclic(&zn(12), 6).unwrap();
        let w = check_weakly_j_submodule(&m, &m.zero()).unwrap();
        assert!(w.holds && w.vacuous);
        let j = check_j_submodule(&m, &m.zero()).unwrap();
        assert!(!j.holds);
        assert_eq!(j.witness, Some(Witness::Scalar { r: 2, m: 3 }));
        assert_eq!(check_weakly_j_submodule(&m, &m.whole()).unwrap_err(), Error::NotProper);
    }

    #[test]
    fn j_submodule_in_local_ring() {
        let m = selfmod(8);
        let n = m.submodule_generated(&[4]);
        assert!(check_j_submodule(&m, &n).unwrap().holds);
        assert!(check_weakly_j_submodule(&m, &n).unwrap().holds);
    }

    #[test]
    fn ideal_variants() {
        let r = zn(12);
        let v = check_ideal_variants(&r, &r.zero_ideal()).unwrap();
        assert!(v.weakly_j_ideal.holds && v.weakly_j_ideal.vacuous);
        assert_eq!(v.j_ideal.witness, Some(Witness::RingPair { a: 2, b: 6 }));
        let r8 = zn(8);
        let v = check_ideal_variants(&r8, &r8.ideal_generated(&[2])).unwrap();
        assert!(v.j_ideal.holds && v.weakly_j_ideal.holds);
        assert_eq!(check_j_ideal(&r8, &r8.whole()).unwrap_err(), Error::IdealNotProper);
    }

    #[test]
    fn classical_examples() {
        let m = selfmod(8);
        let n = m.submodule_generated(&[4]);
        assert!(check_classical(&m, &n, ClassicalKind::WeaklyPrimary).unwrap().holds);
        let prime = check_classical(&m, &n, ClassicalKind::Prime).unwrap();
        assert_eq!(prime.witness, Some(Witness::Scalar { r: 2, m: 2 }));
        let m12 = selfmod(12);
        assert!(check_classical(&m12, &m12.zero(), ClassicalKind::WeaklyPrime).unwrap().holds);
    }

    #[test]
    fn presimplifiable_examples() {
        assert!(check_j_presimplifiable(&selfmod(8)).holds);
        assert!(check_j_presimplifiable(&selfmod(7)).holds);
        let m = FiniteModule::cyclic(&zn(12), 6).unwrap();
        let v = check_j_presimplifiable(&m);
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Scalar { r: 2, m: 3 }));
    }

    #[test]
    fn maximal_weakly_j_examples() {
        let m = selfmod(8);
        let n = m.submodule_generated(&[2]);
        assert!(check_maximal_weakly_j(&m, &n).unwrap().holds);
        let v = check_maximal_weakly_j(&m, &m.zero()).unwrap();
        assert!(!v.holds);
        // {0,4} is the first strictly larger weakly J submodule
        assert_eq!(
            v.witness,
            Some(Witness::Larger { members: m.submodule_generated(&[4]).members().clone() })
        );
        let z6 = selfmod(6);
        assert_eq!(
            check_maximal_weakly_j(&z6, &z6.submodule_generated(&[2])).unwrap_err(),
            Error::NotWeaklyJ
        );
    }
}
