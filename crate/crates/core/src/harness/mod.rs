//! Executable statements about weakly J-submodules, evaluated exhaustively
//! over corpus instances.
//!
//! A [`Property`] enumerates quantifier assignments for an instance and
//! evaluates each one to [`Eval::Skip`] (hypothesis false), [`Eval::Pass`]
//! or [`Eval::Fail`]. Failures carry the assignment and the evaluation
//! details, so a witness can be re-checked later by evaluating the same
//! assignment on a freshly built instance.

mod context;
mod registry;
mod report;
mod variants;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Instance;
use crate::descriptor::Caps;
use crate::error::{Error, Result};

pub use context::{
    Context, HomEntry, HomKind, IdealizationData, Lattice, LocalData, HOM_MAX_GENERATORS, IDEALIZATION_MAX_ORDER,
};
pub use registry::registry;
pub use report::{breaks_j, breaks_weakly_j, HuntHit, HuntReport, InstanceSummary, PropertyTally, ReportFile, RunError, Summary};
pub use variants::variants;

/// A value in an assignment or in failure details.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Elem(usize),
    List(Vec<usize>),
    Text(String),
    Flag(bool),
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Elem(x)
    }
}

impl From<&crate::bitset::ElemSet> for Value {
    fn from(s: &crate::bitset::ElemSet) -> Self {
        Value::List(s.to_vec())
    }
}

impl From<Vec<usize>> for Value {
    fn from(v: Vec<usize>) -> Self {
        Value::List(v)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.into())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Flag(b)
    }
}

/// Named quantifier values, e.g. `N`, `I`, `r`.
pub type Assignment = BTreeMap<String, Value>;

/// What a failed evaluation observed.
pub type Details = BTreeMap<String, Value>;

/// Builds an assignment or details map from pairs.
pub fn assign<const K: usize>(pairs: [(&str, Value); K]) -> Assignment {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eval {
    /// Hypothesis does not hold for this assignment.
    Skip,
    /// Conclusion held after the given number of checks.
    Pass(usize),
    Fail(Details),
}

/// The assignments a property ranges over on one instance.
#[derive(Debug, Default)]
pub struct Scope {
    pub assignments: Vec<Assignment>,
    pub notes: Vec<String>,
}

impl From<Vec<Assignment>> for Scope {
    fn from(assignments: Vec<Assignment>) -> Self {
        Scope {
            assignments,
            notes: Vec::new(),
        }
    }
}

pub struct Property {
    pub id: &'static str,
    /// Hypothesis and conclusion in words.
    pub statement: &'static str,
    /// Rough size of the scan per instance.
    pub budget: &'static str,
    /// Deliberately weakened statement, expected to fail somewhere.
    pub variant: bool,
    pub scope: fn(&Context) -> Scope,
    pub evaluate: fn(&Context, &Assignment) -> Result<Eval>,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("id", &self.id).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Vacuous,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: Assignment,
    pub details: Details,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub instance: String,
    pub status: Status,
    /// Assignments whose hypothesis held.
    pub hypothesis_instances: usize,
    /// Elementary checks spent on conclusions.
    pub conclusion_checks: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Every registered property followed by every variant.
pub fn all_properties() -> Vec<&'static Property> {
    registry().iter().chain(variants().iter()).collect()
}

pub fn find_property(id: &str) -> Result<&'static Property> {
    all_properties()
        .into_iter()
        .find(|p| p.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Unknown {
            kind: "property",
            name: id.into(),
        })
}

/// Evaluates one property on one instance.
pub fn check_property(prop: &Property, ctx: &Context, timings: bool) -> Result<PropertyReport> {
    let start = Instant::now();
    let scope = (prop.scope)(ctx);
    let mut hypothesis_instances = 0;
    let mut conclusion_checks = 0;
    let mut witness = None;
    for a in scope.assignments {
        match (prop.evaluate)(ctx, &a)? {
            Eval::Skip => {}
            Eval::Pass(c) => {
                hypothesis_instances += 1;
                conclusion_checks += c;
            }
            Eval::Fail(details) => {
                hypothesis_instances += 1;
                conclusion_checks += 1;
                if witness.is_none() {
                    witness = Some(Witness {
                        assignment: a,
                        details,
                    });
                }
            }
        }
    }
    let status = match (&witness, hypothesis_instances) {
        (Some(_), _) => Status::Violated,
        (None, 0) => Status::Vacuous,
        (None, _) => Status::Verified,
    };
    Ok(PropertyReport {
        property: prop.id.into(),
        instance: ctx.instance.id.clone(),
        status,
        hypothesis_instances,
        conclusion_checks,
        witness,
        notes: scope.notes,
        elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
    })
}

/// The first failing assignment, if any.
pub fn first_failure(prop: &Property, ctx: &Context) -> Result<Option<Witness>> {
    for a in (prop.scope)(ctx).assignments {
        if let Eval::Fail(details) = (prop.evaluate)(ctx, &a)? {
            return Ok(Some(Witness {
                assignment: a,
                details,
            }));
        }
    }
    Ok(None)
}

/// Re-evaluates a witness; true when it still fails with identical details.
pub fn revalidate(prop: &Property, ctx: &Context, witness: &Witness) -> Result<bool> {
    Ok(match (prop.evaluate)(ctx, &witness.assignment)? {
        Eval::Fail(details) => details == witness.details,
        _ => false,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub timings: bool,
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Parse(format!("thread pool: {e}"))),
    }
}

/// Builds every instance; failures are returned, not raised.
pub fn build_contexts(instances: &[Instance], caps: &Caps) -> Vec<(Instance, Result<Context>)> {
    instances
        .par_iter()
        .map(|i| (i.clone(), Context::new(i, caps)))
        .collect()
}

/// Runs properties over instances. Records are sorted by property id, then
/// instance id.
pub fn run_corpus(
    corpus_name: &str,
    corpus_hash: &str,
    instances: &[Instance],
    props: &[&Property],
    caps: &Caps,
    opts: RunOptions,
) -> Result<ReportFile> {
    with_pool(opts.jobs, || {
        let built = build_contexts(instances, caps);
        let mut errors = Vec::new();
        let mut contexts = Vec::new();
        let mut summaries = Vec::new();
        for (inst, ctx) in built {
            match ctx {
                Ok(c) => {
                    summaries.push(InstanceSummary::of(&c));
                    contexts.push(c);
                }
                Err(e) => errors.push(RunError {
                    instance: inst.id.clone(),
                    property: None,
                    message: format!("{}: {e}", inst.canonical),
                }),
            }
        }
        let pairs: Vec<(&Property, &Context)> =
            props.iter().flat_map(|&p| contexts.iter().map(move |c| (p, c))).collect();
        let results: Vec<Result<PropertyReport, RunError>> = pairs
            .par_iter()
            .map(|&(p, c)| {
                check_property(p, c, opts.timings).map_err(|e| RunError {
                    instance: c.instance.id.clone(),
                    property: Some(p.id.into()),
                    message: e.to_string(),
                })
            })
            .collect();
        let mut records = Vec::new();
        for r in results {
            match r {
                Ok(rep) => records.push(rep),
                Err(e) => errors.push(e),
            }
        }
        records.sort_by(|a, b| (&a.property, &a.instance).cmp(&(&b.property, &b.instance)));
        errors.sort_by(|a, b| (&a.instance, &a.property).cmp(&(&b.instance, &b.property)));
        summaries.sort_by(|a, b| a.id.cmp(&b.id));
        ReportFile::new(corpus_name, corpus_hash, props, summaries, records, errors)
    })
}

/// All instances where a variant fails, smallest `|R||M|` first, one
/// (lexicographically least) witness per instance.
pub fn hunt(variant: &Property, instances: &[Instance], caps: &Caps, jobs: Option<usize>) -> Result<HuntReport> {
    with_pool(jobs, || {
        let built = build_contexts(instances, caps);
        let mut errors = Vec::new();
        let ok: Vec<Context> = built
            .into_iter()
            .filter_map(|(inst, c)| match c {
                Ok(c) => Some(c),
                Err(e) => {
                    errors.push(RunError {
                        instance: inst.id.clone(),
                        property: None,
                        message: format!("{}: {e}", inst.canonical),
                    });
                    None
                }
            })
            .collect();
        let found: Vec<Result<Option<HuntHit>>> = ok
            .par_iter()
            .map(|c| {
                Ok(first_failure(variant, c)?.map(|w| HuntHit {
                    instance: InstanceSummary::of(c),
                    size: c.ring.order() * c.module.order(),
                    witness: w,
                }))
            })
            .collect();
        let mut hits = Vec::new();
        for f in found {
            if let Some(h) = f? {
                hits.push(h);
            }
        }
        hits.sort_by(|a, b| (a.size, &a.instance.canonical).cmp(&(b.size, &b.instance.canonical)));
        Ok(HuntReport {
            variant: variant.id.into(),
            statement: variant.statement.into(),
            hits,
            errors,
        })
    })?
}
