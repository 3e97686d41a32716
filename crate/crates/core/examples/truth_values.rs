//! Boolean truth values of equality and membership between B-sets.
//!
//! ```text
//! cargo run --example truth_values
//! ```

use bvlattice::boolalg::FiniteBooleanAlgebra;
use bvlattice::bvu::{BSet, StandardNames, TruthContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = FiniteBooleanAlgebra::new(2)?;
    let mut names = StandardNames::new(b);
    let zero = names.nat(0)?;
    let one = names.nat(1)?;
    let two = names.nat(2)?;

    // ∅ belongs to x exactly on the first atom
    let x = BSet::new(b, vec![(zero.clone(), b.atom(0)?)])?;
    let mut cx = TruthContext::new();
    println!("x = {x}");
    println!("[[x = 0^]] = {}", cx.truth_eq(&x, &zero)?);
    println!("[[x = 1^]] = {}", cx.truth_eq(&x, &one)?);
    println!("[[x ∈ 2^]] = {}", cx.truth_mem(&x, &two)?);
    println!("[[1^ ∈ 2^]] = {}", cx.truth_mem(&one, &two)?);
    println!("cached truth values: {}", cx.cached_entries());
    Ok(())
}
