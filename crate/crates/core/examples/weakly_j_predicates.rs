//! Every predicate on one submodule, with the witness when it fails.

use jmodlab::predicates::{
    check_classical, check_j_presimplifiable, check_j_submodule, check_maximal_weakly_j, check_weakly_j_submodule,
    ClassicalKind,
};
use jmodlab::{build_module, build_ring, Caps};

fn main() -> jmodlab::Result<()> {
    let caps = Caps::default();
    let r = build_ring(&"zn(12)".parse()?, &caps)?;
    let m = build_module(&r, &"cyclic(6)".parse()?, &caps)?;
    for gens in [vec![], vec![2], vec![3]] {
        let n = m.submodule_generated(&gens);
        println!("N = {n}");
        println!("  weakly J   {:?}", check_weakly_j_submodule(&m, &n)?);
        println!("  J          {:?}", check_j_submodule(&m, &n)?);
        if let Ok(v) = check_maximal_weakly_j(&m, &n) {
            println!("  maximal    {:?}", v);
        }
        for kind in ClassicalKind::ALL {
            println!("  {kind:?}: {}", check_classical(&m, &n, kind)?.holds);
        }
    }
    println!("J-presimplifiable: {:?}", check_j_presimplifiable(&m));
    Ok(())
}
