//! Localizing Z_12 and Z_12 as a module over itself.

use std::sync::Arc;

use jmodlab::constructions::{LocalizedModule, LocalizedRing};
use jmodlab::{FiniteModule, FiniteRing};

fn main() -> jmodlab::Result<()> {
    let r = Arc::new(FiniteRing::zn(12)?);
    let m = Arc::new(FiniteModule::over_itself(&r)?);
    for seeds in [vec![], vec![5], vec![3], vec![2]] {
        let loc = LocalizedRing::from_seeds(&r, &seeds)?;
        let lm = LocalizedModule::new(&loc, &m)?;
        println!(
            "S = {}: ring order {}, module order {}, S^-1 J(R) = J(S^-1 R): {}",
            loc.multiplicative_set(),
            loc.ring().order(),
            lm.module().order(),
            loc.jacobson_extends()
        );
        for x in r.elements() {
            print!("{x}->{} ", loc.canonical_map(x));
        }
        println!();
    }
    Ok(())
}
