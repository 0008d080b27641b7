//! Smallest counterexamples to each weakened statement.

use jmodlab::corpus::CorpusFile;
use jmodlab::harness::{hunt, variants};

fn main() -> jmodlab::Result<()> {
    let corpus = CorpusFile::standard();
    let instances = corpus.instances()?;
    let caps = corpus.resolve_caps(None);
    for v in variants() {
        let report = hunt(v, &instances, &caps, None)?;
        println!("{}: {}", v.id, v.statement);
        match report.hits.first() {
            Some(h) => println!(
                "  {} hits, smallest {}\n  {}",
                report.hits.len(),
                h.instance.canonical,
                serde_json::to_string(&h.witness.details).unwrap()
            ),
            None => println!("  no counterexample"),
        }
    }
    Ok(())
}
