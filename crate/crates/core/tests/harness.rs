mod common;

use jmodlab::corpus::{CorpusFile, Instance};
use jmodlab::harness::{
    assign, check_property, find_property, hunt, registry, revalidate, run_corpus, variants, Context, Eval,
    ReportFile, RunOptions, Status, Value,
};
use jmodlab::{Caps, Error};

fn ctx(ring: &str, module: &str) -> Context {
    Context::new(&Instance::simple(ring, module).unwrap(), &Caps::default()).unwrap()
}

fn list(xs: &[usize]) -> Value {
    Value::List(xs.to_vec())
}

#[test]
fn registry_shape() {
    assert_eq!(registry().len(), 30);
    assert!(registry().iter().all(|p| !p.variant));
    assert!(variants().iter().all(|p| p.variant));
    let mut ids: Vec<&str> = registry().iter().chain(variants()).map(|p| p.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 36);
    assert_eq!(find_property("thm_eq1").unwrap().id, "THM_EQ1");
    assert!(matches!(find_property("X"), Err(Error::Unknown { .. })));
}

#[test]
fn zero_submodule_remark() {
    // the zero submodule of Z_6 is weakly J but not J, witnessed by 2·3
    let c = ctx("zn(12)", "cyclic(6)");
    let v1 = find_property("V1").unwrap();
    let e = (v1.evaluate)(&c, &assign([("N", list(&[0]))])).unwrap();
    let Eval::Fail(d) = e else { panic!("expected failure") };
    assert_eq!(d["r"], Value::Elem(2));
    assert_eq!(d["m"], Value::Elem(3));
}

#[test]
fn product_of_weakly_j_factors() {
    // Z_6 × (Z_2 × Z_2), N = 0 × line: 3·(2, x) lands in N
    let c = ctx("zn(6)", "product(self, product(cyclic(2), cyclic(2)))");
    let v2 = find_property("V2").unwrap();
    let e = (v2.evaluate)(&c, &assign([("N1", list(&[0])), ("N2", list(&[0, 2]))])).unwrap();
    let Eval::Fail(d) = e else { panic!("expected failure") };
    assert_eq!(d["r"], Value::Elem(3));
    let m = match d["m"] {
        Value::Elem(m) => m,
        _ => unreachable!(),
    };
    assert_eq!(c.module.decode_tuple(m), vec![2, 2]);
    // PROP_D is the converse and holds here
    let r = check_property(find_property("PROP_D").unwrap(), &c, false).unwrap();
    assert_eq!(r.status, Status::Verified);
}

#[test]
fn residual_needs_faithful_ideal() {
    // (0 :_M <6>) = <2> in Z_12, which is not weakly J
    let c = ctx("zn(12)", "self");
    let a = assign([("I", list(&[0, 6])), ("N", list(&[0]))]);
    let Eval::Fail(d) = (find_property("V5").unwrap().evaluate)(&c, &a).unwrap() else {
        panic!("expected failure")
    };
    assert_eq!(d["(N:_M I)"], list(&[0, 2, 4, 6, 8, 10]));
    assert_eq!((d["r"].clone(), d["m"].clone()), (Value::Elem(2), Value::Elem(1)));
    let mut part1 = a.clone();
    part1.insert("part".into(), Value::Elem(1));
    let e = (find_property("PROP_RESIDUAL").unwrap().evaluate)(&c, &part1).unwrap();
    assert_eq!(e, Eval::Skip);
}

#[test]
fn sum_fails_outside_multiplication_modules() {
    let c = ctx("zn(2)", "product(cyclic(2), cyclic(2))");
    assert!(!c.flags.multiplication);
    let a = assign([("N1", list(&[0, 1])), ("N2", list(&[0, 2]))]);
    assert!(matches!((find_property("V6").unwrap().evaluate)(&c, &a).unwrap(), Eval::Fail(_)));
    assert_eq!(
        check_property(find_property("PROP_SUM").unwrap(), &c, false).unwrap().status,
        Status::Vacuous
    );
}

#[test]
fn weakly_primary_needs_small_colon() {
    let c = ctx("zn(6)", "self");
    let a = assign([("N", list(&[0, 2, 4]))]);
    assert!(matches!((find_property("V3").unwrap().evaluate)(&c, &a).unwrap(), Eval::Fail(_)));
    assert_eq!((find_property("PROP_WP").unwrap().evaluate)(&c, &a).unwrap(), Eval::Skip);
    let c8 = ctx("zn(8)", "self");
    let a8 = assign([("N", list(&[0, 2, 4, 6]))]);
    let Eval::Fail(d) = (find_property("V4").unwrap().evaluate)(&c8, &a8).unwrap() else {
        panic!("expected failure")
    };
    assert_eq!(d["(N:M)N"], list(&[0, 4]));
}

#[test]
fn bad_assignments_are_errors() {
    let c = ctx("zn(12)", "self");
    let p = find_property("DEF_IMPL").unwrap();
    assert!(matches!((p.evaluate)(&c, &assign([("N", list(&[0, 5]))])), Err(Error::NotASubmodule(_))));
    assert!(matches!((p.evaluate)(&c, &assign([("N", list(&(0..12).collect::<Vec<_>>()))])), Err(Error::NotProper)));
    assert!(matches!((p.evaluate)(&c, &assign([("N", list(&[40]))])), Err(Error::ElementOutOfRange { .. })));
    assert!((p.evaluate)(&c, &assign([("K", list(&[0]))])).is_err());
}

#[test]
fn tampered_witnesses_do_not_revalidate() {
    let c = ctx("zn(12)", "cyclic(6)");
    let v1 = find_property("V1").unwrap();
    let r = check_property(v1, &c, false).unwrap();
    let mut w = r.witness.unwrap();
    assert!(revalidate(v1, &c, &w).unwrap());
    w.details.insert("r".into(), Value::Elem(4));
    assert!(!revalidate(v1, &c, &w).unwrap());
}

#[test]
fn hunt_is_sorted_and_deterministic() {
    let corpus = CorpusFile::standard();
    let instances = corpus.instances().unwrap();
    let caps = corpus.resolve_caps(None);
    let v = find_property("V1").unwrap();
    let a = hunt(v, &instances, &caps, Some(1)).unwrap();
    let b = hunt(v, &instances, &caps, Some(3)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.hits.windows(2).all(|w| w[0].size <= w[1].size));
    assert!(a.revalidate(&caps).unwrap().is_empty());
}

#[test]
fn report_round_trips_through_json() {
    let corpus = CorpusFile::parse(
        "name = \"tiny\"\n[[instance]]\nring = \"zn(4)\"\n[[instance]]\nring = \"zn(12)\"\nmodule = \"cyclic(6)\"\n",
    )
    .unwrap();
    let instances = corpus.instances().unwrap();
    let props: Vec<_> = registry().iter().chain(variants()).collect();
    let caps = Caps::default();
    let report = run_corpus("tiny", &corpus.hash().unwrap(), &instances, &props, &caps, RunOptions::default()).unwrap();
    let text = report.to_json();
    let back = ReportFile::from_json(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json(), text);
    assert_eq!(report.summary.violated, 0);
    assert!(report.summary.variant_failures > 0);
    let (checked, bad) = report.revalidate(&caps).unwrap();
    assert_eq!(checked, report.summary.variant_failures);
    assert!(bad.is_empty());
}

#[test]
fn capped_instances_become_errors() {
    let corpus = CorpusFile::parse("name = \"x\"\n[[instance]]\nring = \"zn(40)\"\n[[instance]]\nring = \"zn(5)\"\n").unwrap();
    let instances = corpus.instances().unwrap();
    let props = [find_property("THM_EQ1").unwrap()];
    let report = run_corpus("x", "", &instances, &props, &Caps::uniform(36), RunOptions::default()).unwrap();
    assert_eq!(report.summary.instances, 1);
    assert_eq!(report.errors.len(), 1);
    assert!(report.errors[0].message.contains("exceeds the cap"));
}

#[test]
fn named_submodules_are_summarized() {
    let mut subs = std::collections::BTreeMap::new();
    subs.insert("zero".to_string(), vec![]);
    let inst = Instance::new("zn(12)".parse().unwrap(), "cyclic(6)".parse().unwrap(), subs, vec![vec![5, 7]]);
    let c = Context::new(&inst, &Caps::default()).unwrap();
    let s = jmodlab::harness::InstanceSummary::of(&c);
    assert!(s.named["zero"].weakly_j && !s.named["zero"].j);
    assert_eq!(s.instance().unwrap(), inst);
}
