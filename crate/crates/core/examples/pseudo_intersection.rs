//! Pseudo-intersections of decreasing chains of infinite subsets of ℕ.
//!
//! ```text
//! cargo run --example pseudo_intersection
//! ```

use bvlattice::pnfin::{pseudo_intersection, ChainSpec, DecreasingChain, DEFAULT_HORIZON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["dyadic", "tails", "primes-thinned"] {
        let chain = DecreasingChain::builtin(name)?;
        let pi = pseudo_intersection(&chain, 10, DEFAULT_HORIZON)?;
        println!("{name}: {:?} ({} tail pairs checked)", pi.values, pi.tail_pairs_checked);
    }

    let spec: ChainSpec = serde_json::from_str(r#"{"family": "tails", "params": {"offset": 100}}"#)?;
    let pi = pseudo_intersection(&spec.build()?, 5, DEFAULT_HORIZON)?;
    println!("{}: {:?}", spec.family, pi.values);
    Ok(())
}
