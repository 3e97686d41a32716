//! Derivations of the coordinatewise product vanish.
//!
//! ```text
//! cargo run --example derivations
//! ```

use bvlattice::operators::derivation_space;
use bvlattice::random;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = random::rng(random::DEFAULT_SEED);
    for n in 1..=6 {
        let s = derivation_space(n, 4, &mut rng)?;
        println!(
            "{n} atoms: {} equations in {} unknowns, rank {}, dimension {}",
            s.equations, s.unknowns, s.rank, s.dimension
        );
    }
    Ok(())
}
