//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always print.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use jmodlab::constructions::{Idealization, LocalizedRing};
use jmodlab::corpus::{CorpusFile, Instance};
use jmodlab::harness::{
    breaks_j, breaks_weakly_j, find_property, hunt, registry, revalidate, run_corpus, Context, ReportFile,
    RunOptions, Value,
};
use jmodlab::predicates::{
    check_classical, check_j_ideal, check_j_presimplifiable, check_j_submodule, check_weakly_j_ideal,
    check_weakly_j_submodule, ClassicalKind, Witness,
};
use jmodlab::{Caps, FiniteModule, FiniteRing};

use common::Set;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Setup {
    corpus: CorpusFile,
    instances: Vec<Instance>,
    caps: Caps,
    contexts: Vec<Context>,
}

fn setup() -> Setup {
    let corpus = CorpusFile::standard();
    let instances = corpus.instances().unwrap();
    let caps = corpus.resolve_caps(None);
    let contexts = instances.iter().map(|i| Context::new(i, &caps).unwrap()).collect();
    Setup {
        corpus,
        instances,
        caps,
        contexts,
    }
}

fn run_all(s: &Setup, jobs: usize) -> ReportFile {
    let props: Vec<_> = registry().iter().collect();
    run_corpus(
        &s.corpus.name,
        &s.corpus.hash().unwrap(),
        &s.instances,
        &props,
        &s.caps,
        RunOptions {
            jobs: Some(jobs),
            timings: false,
        },
    )
    .unwrap()
}

fn full_verification(s: &Setup) -> Outcome {
    let start = Instant::now();
    let report = run_all(s, 1);
    let elapsed = start.elapsed();
    let idle = report.never_exercised();
    let pass = report.summary.violated == 0
        && report.summary.errors == 0
        && idle.is_empty()
        && registry().len() >= 29
        && elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{} properties x {} instances, {} violated, {} errors, never exercised {:?}, {:.1}s single worker",
            registry().len(),
            report.summary.instances,
            report.summary.violated,
            report.summary.errors,
            idle,
            elapsed.as_secs_f64()
        ),
    )
}

fn pair(w: &Option<Witness>) -> Option<(usize, usize)> {
    match w {
        Some(Witness::Scalar { r, m }) => Some((*r, *m)),
        Some(Witness::RingPair { a, b }) => Some((*a, *b)),
        _ => None,
    }
}

fn oracle_equivalence(s: &Setup) -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for ctx in &s.contexts {
        let m: &FiniteModule = &ctx.module;
        for n in m.proper_submodules() {
            let set: Set = n.iter().collect();
            let cases = [
                ("weakly J", pair(&check_weakly_j_submodule(m, n).unwrap().witness), common::weakly_j(m, &set)),
                ("J", pair(&check_j_submodule(m, n).unwrap().witness), common::j_sub(m, &set)),
                (
                    "prime",
                    pair(&check_classical(m, n, ClassicalKind::Prime).unwrap().witness),
                    common::prime(m, &set, false),
                ),
                (
                    "weakly prime",
                    pair(&check_classical(m, n, ClassicalKind::WeaklyPrime).unwrap().witness),
                    common::prime(m, &set, true),
                ),
                (
                    "primary",
                    pair(&check_classical(m, n, ClassicalKind::Primary).unwrap().witness),
                    common::primary(m, &set, false),
                ),
                (
                    "weakly primary",
                    pair(&check_classical(m, n, ClassicalKind::WeaklyPrimary).unwrap().witness),
                    common::primary(m, &set, true),
                ),
                (
                    "n-submodule",
                    pair(&check_classical(m, n, ClassicalKind::NSubmodule).unwrap().witness),
                    common::n_sub(m, &set),
                ),
            ];
            for (name, lib, oracle) in cases {
                checked += 1;
                if lib != oracle {
                    mismatches.push(format!("{name} {n} in {}", ctx.instance.canonical));
                }
            }
        }
        checked += 1;
        if check_j_presimplifiable(m).holds != common::presimplifiable(m) {
            mismatches.push(format!("presimplifiable {}", ctx.instance.canonical));
        }
        let r: &FiniteRing = &ctx.ring;
        for i in r.ideals().iter().filter(|i| !i.is_full()) {
            let set: Set = i.iter().collect();
            for (name, lib, oracle) in [
                ("J-ideal", pair(&check_j_ideal(r, i).unwrap().witness), common::ideal_scan(r, &set, false)),
                ("weakly J-ideal", pair(&check_weakly_j_ideal(r, i).unwrap().witness), common::ideal_scan(r, &set, true)),
            ] {
                checked += 1;
                if lib != oracle {
                    mismatches.push(format!("{name} {i} in {}", r.descriptor()));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{checked} verdicts and witnesses compared, {} mismatches {:?}", mismatches.len(), mismatches.iter().take(3).collect::<Vec<_>>()),
    )
}

fn jacobson_cross_check(s: &Setup) -> Outcome {
    let mut rings: Vec<Arc<FiniteRing>> = s.contexts.iter().map(|c| c.ring.clone()).collect();
    for c in &s.contexts {
        if let Some(id) = c.idealization() {
            rings.push(id.construction.ring().clone());
        }
        for l in c.localizations() {
            rings.push(l.ring.ring().clone());
        }
    }
    let mut bad = Vec::new();
    for r in &rings {
        let by_max = r.jacobson_by_maximal();
        let by_units = r.jacobson_by_units();
        let oracle: Set = common::jacobson(r);
        let ours: Set = by_max.iter().collect();
        if by_max != by_units || ours != oracle {
            bad.push(r.descriptor().to_string());
        }
    }
    outcome(bad.is_empty(), format!("{} rings incl. idealizations and localizations, disagreements {:?}", rings.len(), bad))
}

fn eq1_suite(s: &Setup) -> Outcome {
    let prop = find_property("THM_EQ1").unwrap();
    let report = run_corpus(&s.corpus.name, "", &s.instances, &[prop], &s.caps, RunOptions::default()).unwrap();
    let checks: usize = report.records.iter().map(|r| r.hypothesis_instances).sum();
    let proper: usize = s.contexts.iter().map(|c| c.proper().count()).sum();
    outcome(
        report.summary.violated == 0 && checks == proper && checks >= 500,
        format!("{checks} proper submodules, {} disagreements", report.summary.violated),
    )
}

fn separation_witnesses(s: &Setup) -> Outcome {
    let v1 = hunt(find_property("V1").unwrap(), &s.instances, &s.caps, None).unwrap();
    let anchor = v1.hits.iter().find(|h| h.instance.ring == "zn(12)" && h.instance.module == "cyclic(6)");
    let anchor_ok = anchor.is_some_and(|h| {
        let d = &h.witness.details;
        d.get("N") == Some(&Value::List(vec![0])) && d.get("r") == Some(&Value::Elem(2)) && d.get("m") == Some(&Value::Elem(3))
    });
    let v2 = hunt(find_property("V2").unwrap(), &s.instances, &s.caps, None).unwrap();
    let v3 = hunt(find_property("V3").unwrap(), &s.instances, &s.caps, None).unwrap();
    outcome(
        anchor_ok && !v2.hits.is_empty() && !v3.hits.is_empty(),
        format!(
            "V1 (Z_12, Z_6, N={{0}}, r=2, m=3) found: {anchor_ok}; V1 {} hits, V2 {} hits, V3 {} hits",
            v1.hits.len(),
            v2.hits.len(),
            v3.hits.len()
        ),
    )
}

fn structural_facts() -> Outcome {
    let z12 = FiniteRing::zn(12).unwrap();
    let j12: Set = z12.jacobson_radical().iter().collect();
    let z4 = Arc::new(FiniteRing::zn(4).unwrap());
    let z2 = Arc::new(FiniteModule::cyclic(&z4, 2).unwrap());
    let id = Idealization::new(&z4, &z2).unwrap();
    let jid = id.ring().jacobson_radical();
    let z6 = Arc::new(FiniteRing::zn(6).unwrap());
    let loc = LocalizedRing::new(&z6, &jmodlab::ElemSet::from_iter(6, [1, 3])).unwrap();
    let facts = [
        ("J(Z_12) = {0,6}", j12 == common::set([0, 6])),
        ("Z_12 has 6 ideals", z12.ideals().len() == 6),
        ("|Z_4(+)Z_2| = 8", id.ring().order() == 8),
        ("|J(Z_4(+)Z_2)| = 4", jid.len() == 4),
        ("J(Z_4(+)Z_2) = J(Z_4)(+)Z_2", jid == &id.expected_jacobson()),
        ("|{1,3}^-1 Z_6| = 2", loc.ring().order() == 2),
    ];
    let failed: Vec<&str> = facts.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    outcome(failed.is_empty(), format!("{} facts, failed {:?}", facts.len(), failed))
}

fn determinism(s: &Setup) -> Outcome {
    let a = run_all(s, 1).to_json();
    let b = run_all(s, 4).to_json();
    let c = run_all(s, 4).to_json();
    outcome(a == b && b == c, format!("reports of {} bytes, jobs 1/4/4 identical: {}", a.len(), a == b && b == c))
}

/// Direct substitution of a witness into the defining condition, where
/// the details name the failing set and a scalar pair.
fn substitutes(ctx: &Context, details: &jmodlab::harness::Details) -> Option<bool> {
    let reason = match details.get("reason") {
        Some(Value::Text(t)) => t.clone(),
        _ => return None,
    };
    let (r, m) = match (details.get("r"), details.get("m")) {
        (Some(Value::Elem(r)), Some(Value::Elem(m))) => (*r, *m),
        _ => return None,
    };
    let set = details.iter().find_map(|(k, v)| match v {
        Value::List(xs) if k != "reason" => Some(xs.clone()),
        _ => None,
    })?;
    if reason.ends_with("is not weakly J") {
        Some(breaks_weakly_j(ctx, &set, r, m))
    } else if reason.ends_with("is not a J-submodule") {
        Some(breaks_j(ctx, &set, r, m))
    } else {
        None
    }
}

fn witness_validity(s: &Setup) -> Outcome {
    let mut total = 0;
    let mut substituted = 0;
    let mut bad = Vec::new();
    for v in jmodlab::harness::variants() {
        let report = hunt(v, &s.instances, &s.caps, None).unwrap();
        for h in &report.hits {
            total += 1;
            let ctx = Context::new(&h.instance.instance().unwrap(), &s.caps).unwrap();
            let again = revalidate(v, &ctx, &h.witness).unwrap();
            let direct = substitutes(&ctx, &h.witness.details);
            if direct.is_some() {
                substituted += 1;
            }
            if !again || direct == Some(false) {
                bad.push(format!("{} on {}", v.id, h.instance.canonical));
            }
        }
    }
    let report = run_all(s, 2);
    let (checked, stale) = report.revalidate(&s.caps).unwrap();
    total += checked;
    bad.extend(stale);
    outcome(
        bad.is_empty() && total > 0,
        format!("{total} witnesses re-evaluated, {substituted} also substituted directly, {} failed {:?}", bad.len(), bad),
    )
}

fn main() {
    let s = setup();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 full verification", Box::new(|| full_verification(&s))),
        ("2 oracle equivalence", Box::new(|| oracle_equivalence(&s))),
        ("3 Jacobson cross-check", Box::new(|| jacobson_cross_check(&s))),
        ("4 eq1 equivalence suite", Box::new(|| eq1_suite(&s))),
        ("5 separation witnesses", Box::new(|| separation_witnesses(&s))),
        ("6 structural facts", Box::new(structural_facts)),
        ("7 determinism", Box::new(|| determinism(&s))),
        ("8 witness validity", Box::new(|| witness_validity(&s))),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name}: {}", o.detail);
        failed += (!o.pass) as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
