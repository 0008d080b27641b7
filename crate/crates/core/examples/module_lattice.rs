//! Submodule lattice of a module, with colon ideals and the J flags.

use jmodlab::predicates::{check_j_submodule, check_weakly_j_submodule};
use jmodlab::{build_module, build_ring, Caps};

fn main() -> jmodlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let ring = args.next().unwrap_or_else(|| "zn(12)".into());
    let module = args.next().unwrap_or_else(|| "cyclic(6)".into());
    let caps = Caps::default();
    let r = build_ring(&ring.parse()?, &caps)?;
    let m = build_module(&r, &module.parse()?, &caps)?;
    let flags = m.flags();
    println!("{module} over {ring}: order {}, {} submodules", m.order(), m.submodules().len());
    println!(
        "faithful {}  multiplication {}  reduced {}",
        flags.faithful, flags.multiplication, flags.reduced
    );
    println!("J(M) = {}   (J(R)M:M) = {}", m.jacobson(), m.jacobson_colon());
    println!("{:<24} {:<16} {:>8} {:>4}", "N", "(N:M)", "weakly J", "J");
    for n in m.proper_submodules() {
        let wj = check_weakly_j_submodule(&m, n)?.holds;
        let j = check_j_submodule(&m, n)?.holds;
        println!("{:<24} {:<16} {:>8} {:>4}", n.to_string(), m.colon(n).to_string(), wj, j);
    }
    Ok(())
}
