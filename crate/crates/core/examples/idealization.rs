//! The ring R(+)M and its ideals of the form I(+)N.

use std::sync::Arc;

use jmodlab::constructions::Idealization;
use jmodlab::predicates::{check_weakly_j_ideal, check_weakly_j_submodule};
use jmodlab::{FiniteModule, FiniteRing};

fn main() -> jmodlab::Result<()> {
    let r = Arc::new(FiniteRing::zn(4)?);
    let m = Arc::new(FiniteModule::cyclic(&r, 2)?);
    let id = Idealization::new(&r, &m)?;
    let big = id.ring();
    println!("R(+)M has order {} and J = {}", big.order(), big.jacobson_radical());
    for x in big.elements() {
        let (a, b) = id.decode(x);
        print!("{x}=({a},{b}) ");
    }
    println!();
    for i in r.ideals() {
        for n in m.submodules() {
            match id.ideal(i, n) {
                Ok(pair) => println!(
                    "I={i} N={n}: I(+)N = {pair}, weakly J-ideal {}, N weakly J {}",
                    !pair.is_full() && check_weakly_j_ideal(big, &pair)?.holds,
                    !n.is_full() && check_weakly_j_submodule(&m, n)?.holds,
                ),
                Err(e) => println!("I={i} N={n}: {e}"),
            }
        }
    }
    Ok(())
}
