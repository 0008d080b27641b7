//! Endomorphisms of a module and what they do to weakly J submodules.

use jmodlab::predicates::check_weakly_j_submodule;
use jmodlab::{build_module, build_ring, enumerate_homs, Caps};

fn main() -> jmodlab::Result<()> {
    let caps = Caps::default();
    let r = build_ring(&"zn(4)".parse()?, &caps)?;
    let m = build_module(&r, &"product(self, cyclic(2))".parse()?, &caps)?;
    let homs = enumerate_homs(&m, &m, 3)?;
    println!("{} endomorphisms of {}", homs.len(), m.descriptor());
    for h in homs.iter().filter(|h| h.is_surjective()) {
        println!("automorphism {:?}", h.map());
        for n in m.proper_submodules() {
            if check_weakly_j_submodule(&m, n)?.holds {
                let image = h.image(n);
                println!("  {n} -> {image} weakly J {}", check_weakly_j_submodule(&m, &image)?.holds);
            }
        }
    }
    Ok(())
}
