//! Naive quantifier-expansion oracle. Uses only the raw operation tables
//! (`add`, `mul`, `act`) and recomputes everything else from definitions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use jmodlab::{FiniteModule, FiniteRing};

pub type Set = BTreeSet<usize>;

pub fn ring_one(r: &FiniteRing) -> usize {
    (0..r.order())
        .find(|&e| (0..r.order()).all(|x| r.mul(e, x) == x))
        .expect("ring has a one")
}

pub fn units(r: &FiniteRing) -> Set {
    let one = ring_one(r);
    (0..r.order()).filter(|&a| (0..r.order()).any(|b| r.mul(a, b) == one)).collect()
}

/// `{r : 1 - rs is a unit for every s}`.
pub fn jacobson(r: &FiniteRing) -> Set {
    let one = ring_one(r);
    let u = units(r);
    (0..r.order())
        .filter(|&a| {
            (0..r.order()).all(|s| {
                let rs = r.mul(a, s);
                let diff = (0..r.order()).find(|&d| r.add(d, rs) == one).unwrap();
                u.contains(&diff)
            })
        })
        .collect()
}

/// Additive closure of a set of module elements (finite, so sums suffice).
pub fn additive_closure(m: &FiniteModule, gens: &Set) -> Set {
    let mut out: Set = [0].into();
    loop {
        let mut next = out.clone();
        for &a in &out {
            for &g in gens {
                next.insert(m.add(a, g));
            }
        }
        if next == out {
            return out;
        }
        out = next;
    }
}

/// `IM` for a set of ring elements `I`.
pub fn ideal_times_module(m: &FiniteModule, i: &Set) -> Set {
    let prods: Set = i.iter().flat_map(|&r| (0..m.order()).map(move |x| (r, x))).map(|(r, x)| m.act(r, x)).collect();
    additive_closure(m, &prods)
}

/// `(N : M) = {r : rM ⊆ N}`.
pub fn colon(m: &FiniteModule, n: &Set) -> Set {
    (0..m.ring().order()).filter(|&r| (0..m.order()).all(|x| n.contains(&m.act(r, x)))).collect()
}

/// `(J(R)M : M)`.
pub fn jacobson_colon(m: &FiniteModule) -> Set {
    colon(m, &ideal_times_module(m, &jacobson(m.ring())))
}

pub fn radical(r: &FiniteRing, i: &Set) -> Set {
    (0..r.order())
        .filter(|&a| {
            let mut p = a;
            for _ in 0..=r.order() {
                if i.contains(&p) {
                    return true;
                }
                p = r.mul(p, a);
            }
            false
        })
        .collect()
}

/// Least `(r, m)` with `r ∉ t`, `rm ∈ n` (and `rm != 0` if weak), `m ∉ n`.
pub fn scan(m: &FiniteModule, n: &Set, t: &Set, weak: bool) -> Option<(usize, usize)> {
    for r in 0..m.ring().order() {
        for x in 0..m.order() {
            let rx = m.act(r, x);
            if !t.contains(&r) && n.contains(&rx) && !(weak && rx == 0) && !n.contains(&x) {
                return Some((r, x));
            }
        }
    }
    None
}

pub fn weakly_j(m: &FiniteModule, n: &Set) -> Option<(usize, usize)> {
    scan(m, n, &jacobson_colon(m), true)
}

pub fn j_sub(m: &FiniteModule, n: &Set) -> Option<(usize, usize)> {
    scan(m, n, &jacobson_colon(m), false)
}

pub fn prime(m: &FiniteModule, n: &Set, weak: bool) -> Option<(usize, usize)> {
    scan(m, n, &colon(m, n), weak)
}

pub fn primary(m: &FiniteModule, n: &Set, weak: bool) -> Option<(usize, usize)> {
    scan(m, n, &radical(m.ring(), &colon(m, n)), weak)
}

pub fn n_sub(m: &FiniteModule, n: &Set) -> Option<(usize, usize)> {
    scan(m, n, &radical(m.ring(), &colon(m, &[0].into())), false)
}

/// Least `(a, b)` with `a ∉ J(R)`, `ab ∈ I` (nonzero if weak), `b ∉ I`.
pub fn ideal_scan(r: &FiniteRing, i: &Set, weak: bool) -> Option<(usize, usize)> {
    let jr = jacobson(r);
    for a in 0..r.order() {
        for b in 0..r.order() {
            let ab = r.mul(a, b);
            if !jr.contains(&a) && i.contains(&ab) && !(weak && ab == 0) && !i.contains(&b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Some `r` killing a nonzero element lies outside `(J(R)M:M)`.
pub fn presimplifiable(m: &FiniteModule) -> bool {
    let jc = jacobson_colon(m);
    (0..m.ring().order()).all(|r| jc.contains(&r) || (1..m.order()).all(|x| m.act(r, x) != 0))
}

pub fn is_submodule(m: &FiniteModule, s: &Set) -> bool {
    s.contains(&0)
        && s.iter().all(|&a| s.iter().all(|&b| s.contains(&m.add(a, b))))
        && s.iter().all(|&a| (0..m.ring().order()).all(|r| s.contains(&m.act(r, a))))
}

/// All submodules by brute force over subsets; only for tiny modules.
pub fn all_submodules(m: &FiniteModule) -> Vec<Set> {
    assert!(m.order() <= 12);
    (0u32..1 << m.order())
        .map(|mask| (0..m.order()).filter(|&i| mask & (1 << i) != 0).collect::<Set>())
        .filter(|s| is_submodule(m, s))
        .collect()
}

pub fn set(xs: impl IntoIterator<Item = usize>) -> Set {
    xs.into_iter().collect()
}
