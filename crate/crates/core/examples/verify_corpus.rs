//! Runs every registered property over the bundled corpus.

use jmodlab::corpus::CorpusFile;
use jmodlab::harness::{registry, run_corpus, RunOptions};

fn main() -> jmodlab::Result<()> {
    let corpus = CorpusFile::standard();
    let instances = corpus.instances()?;
    let props: Vec<_> = registry().iter().collect();
    let caps = corpus.resolve_caps(None);
    let report = run_corpus(&corpus.name, &corpus.hash()?, &instances, &props, &caps, RunOptions::default())?;
    for (id, t) in &report.summary.per_property {
        println!("{id:<18} verified {:>3}  vacuous {:>3}  violated {}", t.verified, t.vacuous, t.violated);
    }
    let (checked, bad) = report.revalidate(&caps)?;
    println!("{} violations, {checked} witnesses re-checked, {} stale", report.summary.violated, bad.len());
    Ok(())
}
