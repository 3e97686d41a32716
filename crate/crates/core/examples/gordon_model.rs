//! The descended reals over finitely many atoms and their truth values.
//!
//! ```text
//! cargo run --example gordon_model
//! ```

use bvlattice::lattice::{gordon_check, level_sets, truth_vec, AtomicLattice, ComplexVector, LatticeVector, Relation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = AtomicLattice::new(4)?;
    let b = l.algebra();
    let x = LatticeVector::from_ints(&[1, -2, 3, 0]);
    let y = LatticeVector::from_ints(&[1, 5, 3, -1]);
    println!("x ∨ y = {}, x ∧ y = {}, |x| = {}", x.sup(&y)?, x.inf(&y)?, x.abs());
    println!("[[x = y]] = {}", truth_vec(&b, &x, &y, Relation::Eq)?);
    println!("[[x ≤ y]] = {}", truth_vec(&b, &x, &y, Relation::Le)?);

    let band = b.from_atoms([0, 2])?;
    let pi = l.projection(band)?;
    println!("χ({band})x = {}", pi.apply(&x)?);
    println!("gordon identities on {band}: {:?}", gordon_check(&l, band, &x, &y)?);

    for (block, value) in level_sets(&l, &x)? {
        println!("x = {value} on {block}");
    }

    let z = ComplexVector::new(x.clone(), y.clone())?;
    println!("|z|² = {}", z.abs_sq());
    Ok(())
}
