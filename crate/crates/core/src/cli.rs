//! The `jmodlab` command line: `inspect`, `check`, `verify` and `hunt`.
//!
//! Exit codes: 0 success (or "holds"), 1 a negative answer, 2 bad input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::corpus::CorpusFile;
use crate::descriptor::{build_module, build_ring, Caps};
use crate::error::{Error, Result};
use crate::harness::{self, all_properties, find_property, Property, ReportFile, RunOptions};
use crate::module::FiniteModule;
use crate::predicates::{self, ClassicalKind, Verdict};
use crate::ring::FiniteRing;

#[derive(Debug, Parser)]
#[command(name = "jmodlab", version, about = "Weakly J-submodules of finite modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a ring, or a module over it.
    Inspect {
        ring: String,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Decide one predicate for the submodule (or ideal) spanned by `--gens`.
    Check {
        predicate: String,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "self")]
        module: String,
        /// Comma-separated generators; empty for the zero submodule.
        #[arg(long, default_value = "", value_delimiter = ',')]
        gens: Vec<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run registered properties over a corpus and write a report.
    Verify {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated property ids; all registered ones by default.
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
        /// Record per-record wall time (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Search a corpus for counterexamples to a weakened variant.
    Hunt {
        variant: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// List registered properties and variants.
    Props,
}

pub const PREDICATES: [&str; 11] = [
    "weakly-j-submodule",
    "j-submodule",
    "prime",
    "weakly-prime",
    "primary",
    "weakly-primary",
    "n-submodule",
    "maximal-weakly-j",
    "j-presimplifiable",
    "j-ideal",
    "weakly-j-ideal",
];

/// Parses `args` and runs the command, writing to `out`. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn caps_for(max_order: Option<usize>) -> Caps {
    max_order.map(Caps::uniform).unwrap_or_else(Caps::from_env)
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Inspect {
            ring,
            module,
            json,
            max_order,
        } => inspect(&ring, module.as_deref(), json, caps_for(max_order), out),
        Command::Check {
            predicate,
            ring,
            module,
            gens,
            json,
            max_order,
        } => check(&predicate, &ring, &module, &gens, json, caps_for(max_order), out),
        Command::Verify {
            corpus,
            props,
            out: path,
            jobs,
            max_order,
            timings,
        } => verify(corpus, &props, path, jobs, max_order, timings, out),
        Command::Hunt {
            variant,
            corpus,
            out: path,
            jobs,
            max_order,
        } => hunt(&variant, corpus, path, jobs, max_order, out),
        Command::Props => {
            for p in all_properties() {
                let tag = if p.variant { "variant" } else { "property" };
                writeln!(out, "{:<18} {:<8} {}", p.id, tag, p.statement).map_err(io)?;
            }
            Ok(0)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RingRecord {
    pub descriptor: String,
    pub order: usize,
    pub units: usize,
    pub ideals: usize,
    pub maximal_ideals: usize,
    pub jacobson: Vec<usize>,
    pub local: bool,
    pub reduced: bool,
}

impl RingRecord {
    pub fn of(r: &FiniteRing) -> Self {
        let maximal = r.maximal_ideals().len();
        RingRecord {
            descriptor: r.descriptor().to_string(),
            order: r.order(),
            units: r.units().len(),
            ideals: r.ideals().len(),
            maximal_ideals: maximal,
            jacobson: r.jacobson_radical().to_vec(),
            local: maximal == 1,
            reduced: r.radical(&r.zero_ideal()).is_zero(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModuleRecord {
    pub descriptor: String,
    pub order: usize,
    pub submodules: usize,
    pub jacobson: Vec<usize>,
    pub jacobson_colon: Vec<usize>,
    pub annihilator: Vec<usize>,
    pub faithful: bool,
    pub multiplication: bool,
    pub reduced: bool,
    pub j_presimplifiable: bool,
    pub weakly_j: usize,
    pub j: usize,
}

impl ModuleRecord {
    pub fn of(m: &FiniteModule) -> Result<Self> {
        let flags = m.flags();
        let mut weakly_j = 0;
        let mut j = 0;
        for n in m.proper_submodules() {
            weakly_j += predicates::check_weakly_j_submodule(m, n)?.holds as usize;
            j += predicates::check_j_submodule(m, n)?.holds as usize;
        }
        Ok(ModuleRecord {
            descriptor: m.descriptor().to_string(),
            order: m.order(),
            submodules: m.submodules().len(),
            jacobson: m.jacobson().to_vec(),
            jacobson_colon: m.jacobson_colon().to_vec(),
            annihilator: m.annihilator().to_vec(),
            faithful: flags.faithful,
            multiplication: flags.multiplication,
            reduced: flags.reduced,
            j_presimplifiable: predicates::check_j_presimplifiable(m).holds,
            weakly_j,
            j,
        })
    }
}

#[derive(Debug, Serialize)]
struct InspectRecord {
    ring: RingRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<ModuleRecord>,
}

fn inspect(ring: &str, module: Option<&str>, json: bool, caps: Caps, out: &mut dyn Write) -> Result<i32> {
    let r = build_ring(&ring.parse()?, &caps)?;
    r.checked_jacobson()?;
    let rec = InspectRecord {
        ring: RingRecord::of(&r),
        module: match module {
            Some(m) => Some(ModuleRecord::of(build_module(&r, &m.parse()?, &caps)?.as_ref())?),
            None => None,
        },
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("record serializes")).map_err(io)?;
        return Ok(0);
    }
    let rr = &rec.ring;
    writeln!(out, "ring {}", rr.descriptor).map_err(io)?;
    writeln!(out, "  order           {}", rr.order).map_err(io)?;
    writeln!(out, "  units           {}", rr.units).map_err(io)?;
    writeln!(out, "  ideals          {}", rr.ideals).map_err(io)?;
    writeln!(out, "  maximal ideals  {}", rr.maximal_ideals).map_err(io)?;
    writeln!(out, "  J(R)            {}", braces(&rr.jacobson)).map_err(io)?;
    writeln!(out, "  local           {}", rr.local).map_err(io)?;
    writeln!(out, "  reduced         {}", rr.reduced).map_err(io)?;
    if let Some(m) = &rec.module {
        writeln!(out, "module {}", m.descriptor).map_err(io)?;
        writeln!(out, "  order           {}", m.order).map_err(io)?;
        writeln!(out, "  submodules      {}", m.submodules).map_err(io)?;
        writeln!(out, "  J(M)            {}", braces(&m.jacobson)).map_err(io)?;
        writeln!(out, "  (J(R)M:M)       {}", braces(&m.jacobson_colon)).map_err(io)?;
        writeln!(out, "  Ann(M)          {}", braces(&m.annihilator)).map_err(io)?;
        writeln!(out, "  faithful        {}", m.faithful).map_err(io)?;
        writeln!(out, "  multiplication  {}", m.multiplication).map_err(io)?;
        writeln!(out, "  reduced         {}", m.reduced).map_err(io)?;
        writeln!(out, "  J-presimplifiable {}", m.j_presimplifiable).map_err(io)?;
        writeln!(out, "  weakly J / J    {} / {}", m.weakly_j, m.j).map_err(io)?;
    }
    Ok(0)
}

fn braces(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn parse_gens(gens: &[String]) -> Result<Vec<usize>> {
    gens.iter()
        .map(|g| g.trim())
        .filter(|g| !g.is_empty())
        .map(|g| g.parse().map_err(|_| Error::Parse(format!("bad generator `{g}`"))))
        .collect()
}

/// Evaluates a named predicate on the submodule or ideal spanned by `gens`.
pub fn evaluate_predicate(name: &str, ring: &str, module: &str, gens: &[usize], caps: Caps) -> Result<Verdict> {
    let name = name.to_ascii_lowercase();
    if !PREDICATES.contains(&name.as_str()) {
        return Err(Error::Unknown {
            kind: "predicate",
            name,
        });
    }
    let r = build_ring(&ring.parse()?, &caps)?;
    if name.ends_with("-ideal") {
        crate::descriptor::check_elements(gens, r.order())?;
        let i = r.ideal_generated(gens);
        return match name.as_str() {
            "j-ideal" => predicates::check_j_ideal(&r, &i),
            _ => predicates::check_weakly_j_ideal(&r, &i),
        };
    }
    let m = build_module(&r, &module.parse()?, &caps)?;
    if name == "j-presimplifiable" {
        return Ok(predicates::check_j_presimplifiable(&m));
    }
    crate::descriptor::check_elements(gens, m.order())?;
    let n = m.submodule_generated(gens);
    let kind = match name.as_str() {
        "weakly-j-submodule" => return predicates::check_weakly_j_submodule(&m, &n),
        "j-submodule" => return predicates::check_j_submodule(&m, &n),
        "maximal-weakly-j" => return predicates::check_maximal_weakly_j(&m, &n),
        "prime" => ClassicalKind::Prime,
        "weakly-prime" => ClassicalKind::WeaklyPrime,
        "primary" => ClassicalKind::Primary,
        "weakly-primary" => ClassicalKind::WeaklyPrimary,
        _ => ClassicalKind::NSubmodule,
    };
    predicates::check_classical(&m, &n, kind)
}

fn check(
    predicate: &str,
    ring: &str,
    module: &str,
    gens: &[String],
    json: bool,
    caps: Caps,
    out: &mut dyn Write,
) -> Result<i32> {
    let gens = parse_gens(gens)?;
    let v = evaluate_predicate(predicate, ring, module, &gens, caps)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("verdict serializes")).map_err(io)?;
    } else {
        let word = if v.holds { "holds" } else { "fails" };
        write!(out, "{predicate}: {word}").map_err(io)?;
        match &v.witness {
            Some(predicates::Witness::Scalar { r, m }) => write!(out, ", witness r={r} m={m}"),
            Some(predicates::Witness::RingPair { a, b }) => write!(out, ", witness a={a} b={b}"),
            Some(predicates::Witness::Larger { members }) => write!(out, ", witness larger {members}"),
            None => Ok(()),
        }
        .map_err(io)?;
        if v.vacuous {
            write!(out, " (vacuously)").map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(if v.holds { 0 } else { 1 })
}

fn load_corpus(path: Option<PathBuf>) -> Result<CorpusFile> {
    match path {
        Some(p) => CorpusFile::load(&p),
        None => Ok(CorpusFile::standard()),
    }
}

fn select(props: &[String]) -> Result<Vec<&'static Property>> {
    if props.is_empty() {
        return Ok(harness::registry().iter().collect());
    }
    props.iter().map(|p| find_property(p.trim())).collect()
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn verify(
    corpus: Option<PathBuf>,
    props: &[String],
    path: Option<PathBuf>,
    jobs: Option<usize>,
    max_order: Option<usize>,
    timings: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let file = load_corpus(corpus)?;
    let instances = file.instances()?;
    let props = select(props)?;
    let caps = file.resolve_caps(max_order);
    let report = harness::run_corpus(
        &file.name,
        &file.hash()?,
        &instances,
        &props,
        &caps,
        RunOptions { jobs, timings },
    )?;
    match &path {
        Some(p) => write_file(p, &report.to_json())?,
        None => {}
    }
    print_summary(&report, out).map_err(io)?;
    Ok(if report.summary.violated == 0 { 0 } else { 1 })
}

fn print_summary(report: &ReportFile, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{:<18} {:>9} {:>8} {:>9}", "property", "verified", "vacuous", "violated")?;
    for (id, t) in &report.summary.per_property {
        let mark = if t.variant { " (variant)" } else { "" };
        writeln!(out, "{id:<18} {:>9} {:>8} {:>9}{mark}", t.verified, t.vacuous, t.violated)?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "{} instances, {} records: {} verified, {} vacuous, {} violated, {} variant failures, {} errors",
        s.instances, s.records, s.verified, s.vacuous, s.violated, s.variant_failures, s.errors
    )?;
    for e in &report.errors {
        let prop = e.property.as_deref().unwrap_or("-");
        writeln!(out, "error [{}] {prop}: {}", e.instance, e.message)?;
    }
    for r in report.records.iter().filter(|r| r.witness.is_some()) {
        let w = r.witness.as_ref().expect("filtered");
        writeln!(
            out,
            "violation {} on {}: {}",
            r.property,
            r.instance,
            serde_json::to_string(&w.assignment).expect("serializes")
        )?;
    }
    Ok(())
}

fn hunt(
    variant: &str,
    corpus: Option<PathBuf>,
    path: Option<PathBuf>,
    jobs: Option<usize>,
    max_order: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32> {
    let prop = find_property(variant)?;
    if !prop.variant {
        return Err(Error::Unknown {
            kind: "variant",
            name: variant.into(),
        });
    }
    let file = load_corpus(corpus)?;
    let instances = file.instances()?;
    let caps = file.resolve_caps(max_order);
    let report = harness::hunt(prop, &instances, &caps, jobs)?;
    if let Some(p) = &path {
        write_file(p, &report.to_json())?;
    }
    writeln!(out, "{}: {}", report.variant, report.statement).map_err(io)?;
    for h in &report.hits {
        writeln!(
            out,
            "  |R||M|={:<5} {}  {}  {}",
            h.size,
            h.instance.canonical,
            serde_json::to_string(&h.witness.assignment).expect("serializes"),
            serde_json::to_string(&h.witness.details).expect("serializes"),
        )
        .map_err(io)?;
    }
    writeln!(out, "{} witnesses", report.hits.len()).map_err(io)?;
    Ok(if report.hits.is_empty() { 1 } else { 0 })
}
