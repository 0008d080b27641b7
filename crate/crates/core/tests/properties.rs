mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use jmodlab::constructions::{Idealization, LocalizedRing};
use jmodlab::corpus::Instance;
use jmodlab::predicates::{check_j_submodule, check_weakly_j_submodule, Witness};
use jmodlab::{build_module, build_ring, Caps, ElemSet, FiniteModule, FiniteRing, ModuleDescriptor, RingDescriptor};

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn distinct_primes_product(mut n: usize) -> usize {
    let mut out = 1;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            out *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// A small module: a product of one or two cyclic factors over Z_n.
fn small_module() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=12).prop_flat_map(|n| {
        let ds: Vec<usize> = divisors(n).into_iter().filter(|&d| d > 1).collect();
        let factor = proptest::sample::select(ds);
        (Just(n), proptest::collection::vec(factor, 1..=2))
            .prop_filter("order at most 12", |(_, fs)| fs.iter().product::<usize>() <= 12)
    })
}

fn module_of(n: usize, factors: &[usize]) -> Arc<FiniteModule> {
    let caps = Caps::default();
    let r = build_ring(&RingDescriptor::Zn(n), &caps).unwrap();
    let parts: Vec<String> = factors.iter().map(|d| format!("cyclic({d})")).collect();
    let desc = if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("product({})", parts.join(", "))
    };
    build_module(&r, &desc.parse().unwrap(), &caps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zn_ideals_and_jacobson(n in 2usize..=64) {
        let r = FiniteRing::zn(n).unwrap();
        prop_assert_eq!(r.ideals().len(), divisors(n).len());
        let rad = distinct_primes_product(n);
        let expected: BTreeSet<usize> = (0..n).filter(|x| x % rad == 0).collect();
        let j: BTreeSet<usize> = r.jacobson_radical().iter().collect();
        prop_assert_eq!(&j, &expected);
        prop_assert_eq!(r.jacobson_by_maximal(), r.jacobson_by_units());
        prop_assert_eq!(common::jacobson(&r), expected);
    }

    #[test]
    fn submodule_lattice_is_complete((n, fs) in small_module()) {
        let m = module_of(n, &fs);
        let ours: BTreeSet<BTreeSet<usize>> = m.submodules().iter().map(|s| s.iter().collect()).collect();
        let brute: BTreeSet<BTreeSet<usize>> = common::all_submodules(&m).into_iter().collect();
        prop_assert_eq!(ours, brute);
    }

    #[test]
    fn j_implies_weakly_j((n, fs) in small_module(), pick in any::<prop::sample::Index>()) {
        let m = module_of(n, &fs);
        let proper: Vec<_> = m.proper_submodules().collect();
        let sub = proper[pick.index(proper.len())];
        let j = check_j_submodule(&m, sub).unwrap();
        let wj = check_weakly_j_submodule(&m, sub).unwrap();
        prop_assert!(!j.holds || wj.holds);
        if let Some(Witness::Scalar { r, m: x }) = wj.witness {
            let rx = m.act(r, x);
            prop_assert!(rx != 0 && sub.contains(rx) && !sub.contains(x));
            prop_assert!(!m.jacobson_colon().contains(r));
        }
    }

    #[test]
    fn sums_and_intersections_stay_in_lattice((n, fs) in small_module(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let m = module_of(n, &fs);
        let subs = m.submodules();
        let x = &subs[a.index(subs.len())];
        let y = &subs[b.index(subs.len())];
        let sum: BTreeSet<usize> = m.sum(x, y).iter().collect();
        let meet: BTreeSet<usize> = m.intersection(x, y).iter().collect();
        prop_assert!(common::is_submodule(&m, &sum));
        prop_assert!(common::is_submodule(&m, &meet));
        prop_assert!(x.is_subset(&m.sum(x, y)) && m.intersection(x, y).is_subset(x));
    }

    #[test]
    fn colon_matches_definition((n, fs) in small_module(), pick in any::<prop::sample::Index>()) {
        let m = module_of(n, &fs);
        let subs = m.submodules();
        let sub = &subs[pick.index(subs.len())];
        let set: BTreeSet<usize> = sub.iter().collect();
        let ours: BTreeSet<usize> = m.colon(sub).iter().collect();
        prop_assert_eq!(ours, common::colon(&m, &set));
        let jc: BTreeSet<usize> = m.jacobson_colon().iter().collect();
        prop_assert_eq!(jc, common::jacobson_colon(&m));
    }

    #[test]
    fn elemset_matches_btreeset(xs in proptest::collection::vec(0usize..100, 0..40), ys in proptest::collection::vec(0usize..100, 0..40)) {
        let a = ElemSet::from_iter(100, xs.iter().copied());
        let b = ElemSet::from_iter(100, ys.iter().copied());
        let sa: BTreeSet<usize> = xs.iter().copied().collect();
        let sb: BTreeSet<usize> = ys.iter().copied().collect();
        prop_assert_eq!(a.len(), sa.len());
        prop_assert_eq!(a.union(&b).to_vec(), sa.union(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.intersection(&b).to_vec(), sa.intersection(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.difference(&b).to_vec(), sa.difference(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
    }

    #[test]
    fn idealization_multiplies_by_formula(n in prop::sample::select(vec![2usize, 3, 4, 6, 8, 9]), pick in any::<prop::sample::Index>()) {
        let r = Arc::new(FiniteRing::zn(n).unwrap());
        let ds: Vec<usize> = divisors(n).into_iter().filter(|&d| d > 1).collect();
        let m = Arc::new(FiniteModule::cyclic(&r, ds[pick.index(ds.len())]).unwrap());
        let id = Idealization::new(&r, &m).unwrap();
        let big = id.ring();
        for x in big.elements() {
            let (r1, m1) = id.decode(x);
            prop_assert_eq!(id.encode(r1, m1), x);
            for y in big.elements() {
                let (r2, m2) = id.decode(y);
                let expected = id.encode(r.mul(r1, r2), m.add(m.act(r1, m2), m.act(r2, m1)));
                prop_assert_eq!(big.mul(x, y), expected);
            }
        }
        prop_assert_eq!(big.jacobson_radical(), &id.expected_jacobson());
    }

    #[test]
    fn localization_map_is_a_ring_hom(n in 2usize..=24, seed in 0usize..24) {
        let r = Arc::new(FiniteRing::zn(n).unwrap());
        let seed = seed % n;
        let Ok(loc) = LocalizedRing::from_seeds(&r, &[seed]) else {
            // only rejected when the closure reaches 0
            prop_assert!((1..=n).any(|k| r.pow(seed, k) == 0));
            return Ok(());
        };
        let q = loc.ring();
        for a in r.elements() {
            for b in r.elements() {
                prop_assert_eq!(loc.canonical_map(r.add(a, b)), q.add(loc.canonical_map(a), loc.canonical_map(b)));
                prop_assert_eq!(loc.canonical_map(r.mul(a, b)), q.mul(loc.canonical_map(a), loc.canonical_map(b)));
            }
        }
        for s in loc.multiplicative_set() {
            prop_assert!(q.is_unit(loc.canonical_map(s)));
        }
    }

    #[test]
    fn descriptors_round_trip((n, fs) in small_module()) {
        let m = module_of(n, &fs);
        let text = m.descriptor().to_string();
        let again: ModuleDescriptor = text.parse().unwrap();
        prop_assert_eq!(&again, m.descriptor());
        let spaced = text.replace(',', " , ").replace('(', " ( ");
        prop_assert_eq!(spaced.parse::<ModuleDescriptor>().unwrap(), again);
        let ring = format!("zn({n})");
        let a = Instance::simple(&ring, &text).unwrap();
        let b = Instance::simple(&format!(" zn( {n} )"), &spaced).unwrap();
        prop_assert_eq!(a.id, b.id);
    }
}
