//! Corpus files: lists of (ring, module) instances in TOML.
//!
//! ```toml
//! name = "demo"
//!
//! [caps]
//! max_ring_order = 36
//! max_module_order = 36
//!
//! [[instance]]
//! ring = "zn(12)"
//! module = "cyclic(6)"
//! submodules = { zero = [] }
//! subsets = [[2, 3]]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::descriptor::{Caps, ModuleDescriptor, RingDescriptor, DEFAULT_MAX_ORDER, MAX_ORDER_ENV};
use crate::error::{Error, Result};

/// The corpus shipped with the crate.
pub const STANDARD_CORPUS: &str = include_str!("../corpus/standard.toml");

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCaps {
    pub max_ring_order: Option<usize>,
    pub max_module_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEntry {
    pub ring: String,
    #[serde(default = "self_module")]
    pub module: String,
    /// Named submodules, each given by generators.
    #[serde(default)]
    pub submodules: BTreeMap<String, Vec<usize>>,
    /// Extra subsets `S` of the ring.
    #[serde(default)]
    pub subsets: Vec<Vec<usize>>,
}

fn self_module() -> String {
    "self".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub name: String,
    #[serde(default)]
    pub caps: CorpusCaps,
    #[serde(default, rename = "instance")]
    pub instances: Vec<InstanceEntry>,
}

/// A parsed instance with its canonical descriptor string and id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub ring: RingDescriptor,
    pub module: ModuleDescriptor,
    pub submodules: BTreeMap<String, Vec<usize>>,
    pub subsets: Vec<Vec<usize>>,
    pub canonical: String,
    pub id: String,
}

impl Instance {
    pub fn parse(entry: &InstanceEntry) -> Result<Self> {
        let ring: RingDescriptor = entry.ring.parse()?;
        let module: ModuleDescriptor = entry.module.parse()?;
        Ok(Self::new(ring, module, entry.submodules.clone(), entry.subsets.clone()))
    }

    pub fn new(
        ring: RingDescriptor,
        module: ModuleDescriptor,
        submodules: BTreeMap<String, Vec<usize>>,
        subsets: Vec<Vec<usize>>,
    ) -> Self {
        let list = |xs: &[usize]| {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(", "))
        };
        let mut canonical = format!("ring={ring}; module={module}");
        if !submodules.is_empty() {
            let named: Vec<String> = submodules.iter().map(|(k, v)| format!("{k}={}", list(v))).collect();
            canonical += &format!("; submodules={{{}}}", named.join(", "));
        }
        if !subsets.is_empty() {
            let s: Vec<String> = subsets.iter().map(|v| list(v)).collect();
            canonical += &format!("; subsets=[{}]", s.join(", "));
        }
        let id = hash_hex(&canonical)[..16].to_string();
        Instance {
            ring,
            module,
            submodules,
            subsets,
            canonical,
            id,
        }
    }

    pub fn simple(ring: &str, module: &str) -> Result<Self> {
        Ok(Self::new(ring.parse()?, module.parse()?, BTreeMap::new(), Vec::new()))
    }
}

pub(crate) fn hash_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl CorpusFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn standard() -> Self {
        Self::parse(STANDARD_CORPUS).expect("bundled corpus parses")
    }

    pub fn instances(&self) -> Result<Vec<Instance>> {
        self.instances.iter().map(Instance::parse).collect()
    }

    /// Hash over the canonical instance strings, insensitive to formatting.
    pub fn hash(&self) -> Result<String> {
        let lines: Vec<String> = self.instances()?.into_iter().map(|i| i.canonical).collect();
        Ok(hash_hex(&format!("{}\n{}", self.name, lines.join("\n"))))
    }

    /// Caps with precedence: explicit flag, then the environment variable,
    /// then the corpus file, then the library default.
    pub fn resolve_caps(&self, flag: Option<usize>) -> Caps {
        if let Some(max) = flag.or_else(env_max_order) {
            return Caps::uniform(max);
        }
        Caps {
            max_ring_order: self.caps.max_ring_order.unwrap_or(DEFAULT_MAX_ORDER),
            max_module_order: self.caps.max_module_order.unwrap_or(DEFAULT_MAX_ORDER),
        }
    }
}

pub fn env_max_order() -> Option<usize> {
    std::env::var(MAX_ORDER_ENV).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corpus_parses() {
        let c = CorpusFile::standard();
        let inst = c.instances().unwrap();
        assert!(!inst.is_empty());
        let mut ids: Vec<&str> = inst.iter().map(|i| i.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), inst.len(), "duplicate instances");
    }

    #[test]
    fn instance_ids_ignore_spacing() {
        let a = Instance::simple("product(zn(2),zn(3))", "self").unwrap();
        let b = Instance::simple("product( zn(2), zn(3) )", " self").unwrap();
        assert_eq!(a.id, b.id);
        assert_eq!(a.id.len(), 16);
        assert_eq!(a.canonical, "ring=product(zn(2), zn(3)); module=self");
    }

    #[test]
    fn bad_corpus_is_a_parse_error() {
        assert!(matches!(CorpusFile::parse("name = 3"), Err(Error::Parse(_))));
        assert!(matches!(
            CorpusFile::parse("name = \"x\"\n[[instance]]\nring = \"zn(4)\"\ncolour = 1"),
            Err(Error::Parse(_))
        ));
        let c = CorpusFile::parse("name = \"x\"\n[[instance]]\nring = \"zn(\"").unwrap();
        assert!(c.instances().is_err());
    }

    #[test]
    fn corpus_caps_apply_without_overrides() {
        let c = CorpusFile::parse("name = \"x\"\n[caps]\nmax_ring_order = 20").unwrap();
        let caps = c.resolve_caps(Some(9));
        assert_eq!(caps, Caps::uniform(9));
        if env_max_order().is_none() {
            let caps = c.resolve_caps(None);
            assert_eq!(caps.max_ring_order, 20);
            assert_eq!(caps.max_module_order, DEFAULT_MAX_ORDER);
        }
    }
}
