//! A function refined from a list of covers, with its certificates.
//!
//! ```text
//! cargo run --example refined_function
//! ```

use bvlattice::boolalg::{Cover, FiniteBooleanAlgebra};
use bvlattice::rational::format_rational;
use bvlattice::refinement::{build_tower, refine_report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = FiniteBooleanAlgebra::new(4)?;
    let e = |atoms: &[usize]| b.from_atoms(atoms.iter().copied());
    let covers = vec![
        Cover::new(&b, vec![e(&[0, 1])?, e(&[2, 3])?])?,
        Cover::new(&b, vec![e(&[0, 2])?, e(&[1, 3])?])?,
    ];

    let tower = build_tower(&b, &covers)?;
    for m in 1..=tower.height() {
        println!("P_{m} = {:?}", tower.padded_level(m));
    }

    let report = refine_report(&b, &covers)?;
    println!("g = {}", report.g);
    for c in &report.certificates {
        println!("cover {:?}: refined at level {}: {}", c.cover, c.level, c.g_refined);
    }
    for s in &report.separation {
        let gap = s.min_gap.as_ref().map_or("none".to_string(), format_rational);
        println!("level {}: {} pairs first separated, minimal gap {gap}", s.level, s.pairs);
    }
    println!("all checks pass: {}", report.passed());
    Ok(())
}
