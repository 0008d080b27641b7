//! Finite commutative rings, their modules, and weakly J-submodules.

pub mod bitset;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod descriptor;
pub mod error;
pub mod harness;
pub mod hom;
pub mod module;
pub mod predicates;
pub mod ring;

pub use bitset::ElemSet;
pub use descriptor::{build_module, build_ring, Caps, ModuleDescriptor, RingDescriptor};
pub use error::{Error, Result};
pub use hom::{enumerate_homs, ModuleHom};
pub use module::{FiniteModule, Submodule};
pub use ring::{FiniteRing, Ideal};
