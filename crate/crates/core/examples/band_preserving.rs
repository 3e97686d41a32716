//! Band preserving operators are multiplications.
//!
//! ```text
//! cargo run --example band_preserving
//! ```

use bvlattice::lattice::LatticeVector;
use bvlattice::operators::{multiplier_of, LinOperator};
use bvlattice::rational::rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = LinOperator::diagonal(&LatticeVector::new(vec![rat(2, 1), rat(-1, 3), rat(5, 1)]));
    let g = multiplier_of(&t)?;
    let x = LatticeVector::from_ints(&[3, 3, 1]);
    println!("T1 = {g}; Tx = {} = (T1)·x = {}", t.apply(&x)?, g.f_product(&x)?);
    println!("commutes with all band projections: {}", t.commutes_with_all_projections()?);

    let shear = LinOperator::new(vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(1, 1)]])?;
    println!("shear off-diagonal entry: {:?}", shear.first_off_diagonal());
    println!("shear multiplier: {}", multiplier_of(&shear).unwrap_err());
    Ok(())
}
