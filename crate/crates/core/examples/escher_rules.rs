//! Mixing, ascent and descent of B-sets.
//!
//! ```text
//! cargo run --example escher_rules
//! ```

use bvlattice::boolalg::{FiniteBooleanAlgebra, Partition};
use bvlattice::bvu::{ascent, descent, escher_check, mix, StandardNames, TruthContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = FiniteBooleanAlgebra::new(2)?;
    let mut names = StandardNames::new(b);
    let xs = vec![names.nat(0)?, names.nat(2)?];
    let mut cx = TruthContext::new();

    let m = mix(&mut cx, &Partition::atoms(&b), &xs)?;
    println!("mix(0^ on atom 0, 2^ on atom 1) = {m}");
    for (q, x) in xs.iter().enumerate() {
        println!("  [[mix = x_{q}]] = {}", cx.truth_eq(&m, x)?);
    }

    let up = ascent(b, &xs)?;
    let down = descent(&mut cx, &up)?;
    println!("X↑ = {up}; X↑↓ has {} classes", down.len());

    let report = escher_check(&mut cx, b, &xs)?;
    println!("X↑↓ = mix(X): {}, [[X↑↓↑ = X↑]] = {}", report.up_down_is_mix, report.down_up_truth);
    Ok(())
}
