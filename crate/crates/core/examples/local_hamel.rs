//! Local constancy, local linear independence and local Hamel expansions.
//!
//! ```text
//! cargo run --example local_hamel
//! ```

use bvlattice::lattice::{
    is_locally_constant, local_dependence, local_hamel_expand, AtomicLattice, LatticeVector,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = AtomicLattice::new(3)?;
    let e = LatticeVector::from_ints(&[2, 4, 0]);
    let f = LatticeVector::from_ints(&[1, 2, 5]);
    let c = is_locally_constant(&l, &e, &f)?;
    println!("e locally constant w.r.t. f: {}", serde_json::to_string(&c)?);

    // dependent on the whole space though independent on every atom
    let family = [
        LatticeVector::from_ints(&[1, 0, 0]),
        LatticeVector::from_ints(&[0, 1, 0]),
        LatticeVector::from_ints(&[1, 1, 0]),
    ];
    if let Some(dep) = local_dependence(&l, &family)? {
        println!("dependence: {}", serde_json::to_string(&dep)?);
    }

    let basis = [LatticeVector::from_ints(&[1, 0, 2]), LatticeVector::from_ints(&[0, 3, 0])];
    let x = LatticeVector::from_ints(&[5, 6, 10]);
    let h = local_hamel_expand(&l, &x, &basis)?;
    println!("expansion: {}", serde_json::to_string(&h)?);
    println!("reconstructs x: {}", h.reconstruct(&l, &basis)? == x);
    Ok(())
}
