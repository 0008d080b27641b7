//! Report files written by `verify` and `hunt`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Instance;
use crate::descriptor::Caps;
use crate::error::Result;

use super::{find_property, revalidate, Context, Property, PropertyReport, Status, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSubmodule {
    pub members: Vec<usize>,
    pub weakly_j: bool,
    pub j: bool,
}

/// Enough of an instance to rebuild it, plus its headline invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub id: String,
    pub canonical: String,
    pub ring: String,
    pub module: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub submodules: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<Vec<usize>>,
    pub ring_order: usize,
    pub module_order: usize,
    pub ideal_count: usize,
    pub submodule_count: usize,
    pub faithful: bool,
    pub multiplication: bool,
    pub reduced: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub named: BTreeMap<String, NamedSubmodule>,
}

impl InstanceSummary {
    pub fn of(ctx: &Context) -> Self {
        let inst = &ctx.instance;
        let named = ctx
            .named
            .iter()
            .map(|(name, n)| {
                let k = ctx.sub_index(n.members());
                let entry = NamedSubmodule {
                    members: n.to_vec(),
                    weakly_j: ctx.lattice.wj[k],
                    j: ctx.lattice.j[k],
                };
                (name.clone(), entry)
            })
            .collect();
        InstanceSummary {
            id: inst.id.clone(),
            canonical: inst.canonical.clone(),
            ring: inst.ring.to_string(),
            module: inst.module.to_string(),
            submodules: inst.submodules.clone(),
            subsets: inst.subsets.clone(),
            ring_order: ctx.ring.order(),
            module_order: ctx.module.order(),
            ideal_count: ctx.ideals().len(),
            submodule_count: ctx.subs().len(),
            faithful: ctx.flags.faithful,
            multiplication: ctx.flags.multiplication,
            reduced: ctx.flags.reduced,
            named,
        }
    }

    pub fn instance(&self) -> Result<Instance> {
        Ok(Instance::new(
            self.ring.parse()?,
            self.module.parse()?,
            self.submodules.clone(),
            self.subsets.clone(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunError {
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub variant: bool,
    pub verified: usize,
    pub vacuous: usize,
    pub violated: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub records: usize,
    pub verified: usize,
    pub vacuous: usize,
    /// Violations of non-variant properties.
    pub violated: usize,
    /// Failures of weakened variants, which are expected.
    pub variant_failures: usize,
    pub errors: usize,
    pub per_property: BTreeMap<String, PropertyTally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub corpus: String,
    pub corpus_hash: String,
    pub properties: Vec<String>,
    pub summary: Summary,
    pub instances: Vec<InstanceSummary>,
    pub records: Vec<PropertyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<RunError>,
}

impl ReportFile {
    pub fn new(
        corpus: &str,
        corpus_hash: &str,
        props: &[&Property],
        instances: Vec<InstanceSummary>,
        records: Vec<PropertyReport>,
        errors: Vec<RunError>,
    ) -> Self {
        let mut summary = Summary {
            instances: instances.len(),
            records: records.len(),
            errors: errors.len(),
            ..Summary::default()
        };
        for p in props {
            summary.per_property.insert(
                p.id.into(),
                PropertyTally {
                    variant: p.variant,
                    ..PropertyTally::default()
                },
            );
        }
        for r in &records {
            let t = summary.per_property.entry(r.property.clone()).or_default();
            match r.status {
                Status::Verified => {
                    t.verified += 1;
                    summary.verified += 1;
                }
                Status::Vacuous => {
                    t.vacuous += 1;
                    summary.vacuous += 1;
                }
                Status::Violated => {
                    t.violated += 1;
                    if t.variant {
                        summary.variant_failures += 1;
                    } else {
                        summary.violated += 1;
                    }
                }
            }
        }
        ReportFile {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            corpus: corpus.into(),
            corpus_hash: corpus_hash.into(),
            properties: props.iter().map(|p| p.id.to_string()).collect(),
            summary,
            instances,
            records,
            errors,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::error::Error::Parse(e.to_string()))
    }

    /// Properties with no non-vacuous instance.
    pub fn never_exercised(&self) -> Vec<&str> {
        self.summary
            .per_property
            .iter()
            .filter(|(_, t)| t.verified + t.violated == 0)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// Rebuilds each instance with a witness and re-evaluates it. Returns
    /// the number of witnesses checked and the ones that did not reproduce.
    pub fn revalidate(&self, caps: &Caps) -> Result<(usize, Vec<String>)> {
        let by_id: BTreeMap<&str, &InstanceSummary> =
            self.instances.iter().map(|i| (i.id.as_str(), i)).collect();
        let mut checked = 0;
        let mut bad = Vec::new();
        let mut cache: BTreeMap<&str, Context> = BTreeMap::new();
        for r in &self.records {
            let Some(w) = &r.witness else { continue };
            let summary = by_id[r.instance.as_str()];
            if !cache.contains_key(r.instance.as_str()) {
                cache.insert(&r.instance, Context::new(&summary.instance()?, caps)?);
            }
            let ctx = &cache[r.instance.as_str()];
            checked += 1;
            if !revalidate(find_property(&r.property)?, ctx, w)? {
                bad.push(format!("{} on {}", r.property, summary.canonical));
            }
        }
        Ok((checked, bad))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntHit {
    pub instance: InstanceSummary,
    /// `|R| |M|`.
    pub size: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntReport {
    pub variant: String,
    pub statement: String,
    pub hits: Vec<HuntHit>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<RunError>,
}

impl HuntReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Re-evaluates every hit; returns the ones that did not reproduce.
    pub fn revalidate(&self, caps: &Caps) -> Result<Vec<String>> {
        let prop = find_property(&self.variant)?;
        let mut bad = Vec::new();
        for h in &self.hits {
            let ctx = Context::new(&h.instance.instance()?, caps)?;
            if !revalidate(prop, &ctx, &h.witness)? {
                bad.push(h.instance.canonical.clone());
            }
        }
        Ok(bad)
    }
}

/// Direct-substitution check of a scalar witness against the weakly J
/// condition: `0 != rm ∈ N`, `r ∉ (J(R)M:M)`, `m ∉ N`.
pub fn breaks_weakly_j(ctx: &Context, n: &[usize], r: usize, m: usize) -> bool {
    let rm = ctx.module.act(r, m);
    rm != 0 && n.contains(&rm) && !ctx.jc().contains(r) && !n.contains(&m)
}

/// Same for the J condition, which drops `rm != 0`.
pub fn breaks_j(ctx: &Context, n: &[usize], r: usize, m: usize) -> bool {
    let rm = ctx.module.act(r, m);
    n.contains(&rm) && !ctx.jc().contains(r) && !n.contains(&m)
}

impl Witness {
    pub fn detail(&self, key: &str) -> Option<&super::Value> {
        self.details.get(key)
    }
}
