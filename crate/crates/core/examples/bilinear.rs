//! Separately band preserving bilinear operators, and complex
//! endomorphisms of the coordinatewise product.
//!
//! ```text
//! cargo run --example bilinear
//! ```

use bvlattice::lattice::LatticeVector;
use bvlattice::operators::{automorphism_check, bilinear_report, classify_endomorphism, BilinOperator, ComplexOperator};
use bvlattice::rational::{rat, Gaussian};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = LatticeVector::new(vec![rat(3, 1), rat(-1, 2)]);
    let b = BilinOperator::from_multiplier(&w);
    let x = LatticeVector::from_ints(&[1, 2]);
    let y = LatticeVector::from_ints(&[4, 6]);
    println!("b(x, y) = {}", b.apply(&x, &y)?);
    println!("{}", serde_json::to_string(&bilinear_report(&b)?)?);

    let mut t = vec![vec![vec![rat(0, 1); 2]; 2]; 2];
    t[0][1][0] = rat(1, 1);
    t[1][0][0] = rat(-1, 1);
    let a = BilinOperator::new(t)?;
    println!("antisymmetric: {}", serde_json::to_string(&bilinear_report(&a)?)?);

    let p = ComplexOperator::diagonal(&[Gaussian::one(), Gaussian::zero()]);
    println!("{} / {}", serde_json::to_string(&classify_endomorphism(&p)?)?, serde_json::to_string(&automorphism_check(&p)?)?);
    let i = ComplexOperator::diagonal(&[Gaussian::i(), Gaussian::one()]);
    println!("{}", serde_json::to_string(&classify_endomorphism(&i)?)?);
    Ok(())
}
