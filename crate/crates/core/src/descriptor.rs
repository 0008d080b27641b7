//! Textual ring and module descriptors, and their resolution into
//! validated structures.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! ring   := zn(N) | product(ring, ring, ...) | quotient(ring, [g, ...])
//!         | idealization(ring, module) | localization(ring, [s, ...])
//! module := self | cyclic(N) | product(module, module, ...)
//!         | quotient(module, [g, ...]) | submodule(module, [g, ...])
//! ```
//!
//! Generator lists hold canonical element indices of the inner structure.
//! `localization(R, [s, ...])` inverts the multiplicative closure of the
//! listed elements.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::constructions::{Idealization, LocalizedRing};
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::ring::FiniteRing;

/// Default cap on ring and module orders.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Environment variable overriding the default caps.
pub const MAX_ORDER_ENV: &str = "JMODLAB_MAX_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_ring_order: usize,
    pub max_module_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps::uniform(DEFAULT_MAX_ORDER)
    }
}

impl Caps {
    pub fn uniform(max: usize) -> Self {
        Caps {
            max_ring_order: max,
            max_module_order: max,
        }
    }

    /// Default caps, overridden by `JMODLAB_MAX_ORDER` when it parses.
    pub fn from_env() -> Self {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Caps::uniform)
            .unwrap_or_default()
    }

    pub fn check_ring(&self, order: usize) -> Result<()> {
        if order > self.max_ring_order {
            return Err(Error::CapExceeded {
                order,
                cap: self.max_ring_order,
            });
        }
        Ok(())
    }

    pub fn check_module(&self, order: usize) -> Result<()> {
        if order > self.max_module_order {
            return Err(Error::CapExceeded {
                order,
                cap: self.max_module_order,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Zn(usize),
    Product(Vec<RingDescriptor>),
    Quotient(Box<RingDescriptor>, Vec<usize>),
    Idealization(Box<RingDescriptor>, Box<ModuleDescriptor>),
    Localization(Box<RingDescriptor>, Vec<usize>),
    /// Hand-supplied tables; never produced by the parser.
    Tables,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleDescriptor {
    SelfModule,
    Cyclic(usize),
    Product(Vec<ModuleDescriptor>),
    Quotient(Box<ModuleDescriptor>, Vec<usize>),
    Submodule(Box<ModuleDescriptor>, Vec<usize>),
    /// `S^{-1}M` for the multiplicative closure of the seeds.
    Localized(Box<ModuleDescriptor>, Vec<usize>),
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zn(n) => write!(f, "zn({n})"),
            RingDescriptor::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingDescriptor::Quotient(r, gens) => {
                write!(f, "quotient({r}, ")?;
                write_list(f, gens)?;
                write!(f, ")")
            }
            RingDescriptor::Idealization(r, m) => write!(f, "idealization({r}, {m})"),
            RingDescriptor::Localization(r, seeds) => {
                write!(f, "localization({r}, ")?;
                write_list(f, seeds)?;
                write!(f, ")")
            }
            RingDescriptor::Tables => write!(f, "tables"),
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::SelfModule => write!(f, "self"),
            ModuleDescriptor::Cyclic(d) => write!(f, "cyclic({d})"),
            ModuleDescriptor::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            ModuleDescriptor::Quotient(m, gens) => {
                write!(f, "quotient({m}, ")?;
                write_list(f, gens)?;
                write!(f, ")")
            }
            ModuleDescriptor::Submodule(m, gens) => {
                write!(f, "submodule({m}, ")?;
                write_list(f, gens)?;
                write!(f, ")")
            }
            ModuleDescriptor::Localized(m, seeds) => {
                write!(f, "localized({m}, ")?;
                write_list(f, seeds)?;
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos, self.src
        )))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    fn list(&mut self) -> Result<Vec<usize>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err("expected `,` or `]`"),
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn ring(&mut self) -> Result<RingDescriptor> {
        let name = self.ident()?;
        self.expect('(')?;
        let out = match name {
            "zn" => RingDescriptor::Zn(self.number()?),
            "product" => {
                let mut parts = vec![self.ring()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.ring()?);
                }
                RingDescriptor::Product(parts)
            }
            "quotient" => {
                let r = self.ring()?;
                self.expect(',')?;
                RingDescriptor::Quotient(Box::new(r), self.list()?)
            }
            "idealization" => {
                let r = self.ring()?;
                self.expect(',')?;
                RingDescriptor::Idealization(Box::new(r), Box::new(self.module()?))
            }
            "localization" => {
                let r = self.ring()?;
                self.expect(',')?;
                RingDescriptor::Localization(Box::new(r), self.list()?)
            }
            other => return self.err(&format!("unknown ring constructor `{other}`")),
        };
        self.expect(')')?;
        Ok(out)
    }

    fn module(&mut self) -> Result<ModuleDescriptor> {
        let name = self.ident()?;
        if name == "self" {
            return Ok(ModuleDescriptor::SelfModule);
        }
        self.expect('(')?;
        let out = match name {
            "cyclic" => ModuleDescriptor::Cyclic(self.number()?),
            "product" => {
                let mut parts = vec![self.module()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.module()?);
                }
                ModuleDescriptor::Product(parts)
            }
            "quotient" | "submodule" | "localized" => {
                let m = Box::new(self.module()?);
                self.expect(',')?;
                let gens = self.list()?;
                match name {
                    "quotient" => ModuleDescriptor::Quotient(m, gens),
                    "submodule" => ModuleDescriptor::Submodule(m, gens),
                    _ => ModuleDescriptor::Localized(m, gens),
                }
            }
            other => return self.err(&format!("unknown module constructor `{other}`")),
        };
        self.expect(')')?;
        Ok(out)
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let r = p.ring()?;
        p.finish()?;
        Ok(r)
    }
}

impl FromStr for ModuleDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let m = p.module()?;
        p.finish()?;
        Ok(m)
    }
}

/// Resolves a ring descriptor into a validated ring.
pub fn build_ring(desc: &RingDescriptor, caps: &Caps) -> Result<Arc<FiniteRing>> {
    let ring = match desc {
        RingDescriptor::Zn(n) => {
            caps.check_ring(*n)?;
            FiniteRing::zn(*n)?
        }
        RingDescriptor::Product(parts) => {
            let factors = parts
                .iter()
                .map(|p| build_ring(p, caps))
                .collect::<Result<Vec<_>>>()?;
            caps.check_ring(factors.iter().map(|f| f.order()).product())?;
            let refs: Vec<&FiniteRing> = factors.iter().map(|f| f.as_ref()).collect();
            FiniteRing::product(&refs)?
        }
        RingDescriptor::Quotient(inner, gens) => {
            let base = build_ring(inner, caps)?;
            check_elements(gens, base.order())?;
            let ideal = base.ideal_generated(gens);
            base.quotient(&ideal)?.0
        }
        RingDescriptor::Idealization(inner, module) => {
            let base = build_ring(inner, caps)?;
            let m = build_module(&base, module, caps)?;
            caps.check_ring(base.order() * m.order())?;
            return Ok(Idealization::new(&base, &m)?.ring().clone());
        }
        RingDescriptor::Localization(inner, seeds) => {
            let base = build_ring(inner, caps)?;
            return Ok(LocalizedRing::from_seeds(&base, seeds)?.ring().clone());
        }
        RingDescriptor::Tables => {
            return Err(Error::Parse("table-backed rings have no textual descriptor".into()))
        }
    };
    Ok(Arc::new(ring))
}

/// Resolves a module descriptor over an already built ring.
pub fn build_module(
    ring: &Arc<FiniteRing>,
    desc: &ModuleDescriptor,
    caps: &Caps,
) -> Result<Arc<FiniteModule>> {
    let module = match desc {
        ModuleDescriptor::SelfModule => {
            caps.check_module(ring.order())?;
            FiniteModule::over_itself(ring)?
        }
        ModuleDescriptor::Cyclic(d) => {
            caps.check_module(*d)?;
            FiniteModule::cyclic(ring, *d)?
        }
        ModuleDescriptor::Product(parts) => {
            let factors = parts
                .iter()
                .map(|p| build_module(ring, p, caps))
                .collect::<Result<Vec<_>>>()?;
            caps.check_module(factors.iter().map(|f| f.order()).product())?;
            FiniteModule::product(ring, &factors)?
        }
        ModuleDescriptor::Quotient(inner, gens) => {
            let base = build_module(ring, inner, caps)?;
            check_elements(gens, base.order())?;
            let n = base.submodule_generated(gens);
            return Ok(base.quotient_map(&n)?.target().clone());
        }
        ModuleDescriptor::Submodule(inner, gens) => {
            let base = build_module(ring, inner, caps)?;
            check_elements(gens, base.order())?;
            let n = base.submodule_generated(gens);
            return Ok(base.inclusion(&n)?.source().clone());
        }
        ModuleDescriptor::Localized(..) => {
            return Err(Error::Parse(
                "localized modules are built through LocalizedModule, not descriptors".into(),
            ))
        }
    };
    Ok(Arc::new(module))
}

pub(crate) fn check_elements(items: &[usize], order: usize) -> Result<()> {
    match items.iter().find(|&&x| x >= order) {
        Some(&element) => Err(Error::ElementOutOfRange { element, order }),
        None => Ok(()),
    }
}
