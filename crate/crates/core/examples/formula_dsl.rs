//! Parsing bounded formulas and evaluating them on B-sets and classically.
//!
//! ```text
//! cargo run --example formula_dsl
//! ```

use bvlattice::boolalg::FiniteBooleanAlgebra;
use bvlattice::bvu::{
    bounded_transfer_check, eval_classical, eval_report, parse_formula, BSet, Env, Hf, HfEnv, StandardNames,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_formula("exists t in x : forall u in t : u in two")?;
    println!("parsed: {f}");

    let b = FiniteBooleanAlgebra::new(2)?;
    let mut names = StandardNames::new(b);
    let two = names.nat(2)?;
    let x = BSet::new(b, vec![(names.nat(1)?, b.atom(0)?), (names.nat(3)?, b.atom(1)?)])?;
    let env = Env::new().with("x", x).with("two", two);
    let report = eval_report(&f, &env)?;
    println!("truth value {} with witness {:?}", report.value, report.witness);

    let mut h = HfEnv::new();
    h.insert("x".into(), Hf::from_elements([Hf::nat(1), Hf::nat(3)]));
    h.insert("two".into(), Hf::nat(2));
    println!("classically: {}", eval_classical(&f, &h)?);
    let t = bounded_transfer_check(&f, &h, b)?;
    println!("standard names agree with the classical value: {}", t.pass);

    match parse_formula("x in (y") {
        Ok(_) => unreachable!(),
        Err(e) => println!("malformed input: {e}"),
    }
    Ok(())
}
