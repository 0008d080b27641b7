//! Ideals, units and the Jacobson radical of a few small rings.
//!
//! `cargo run --example ring_lattice -- "product(zn(2), zn(4))"`

use jmodlab::{build_ring, Caps};

fn main() -> jmodlab::Result<()> {
    let descs: Vec<String> = std::env::args().skip(1).collect();
    let descs = if descs.is_empty() {
        vec!["zn(12)".into(), "zn(8)".into(), "product(zn(2), zn(3))".into(), "quotient(zn(36), [6])".into()]
    } else {
        descs
    };
    for desc in descs {
        let r = build_ring(&desc.parse()?, &Caps::default())?;
        println!("{desc}: order {}, {} units", r.order(), r.units().len());
        for i in r.ideals() {
            let rad = r.radical(i);
            println!("  ideal {i}  radical {rad}");
        }
        let by_max = r.jacobson_by_maximal();
        let by_units = r.jacobson_by_units();
        println!("  J(R) = {by_max} (unit criterion agrees: {})", by_max == by_units);
    }
    Ok(())
}
