//! Continued fractions of rationals and quadratic surds, including the
//! expansion of a mixed element.
//!
//! ```text
//! cargo run --example continued_fractions
//! ```

use bvlattice::boolalg::{FiniteBooleanAlgebra, Partition};
use bvlattice::contfrac::{convergent, error_bound, expand, mixed_expansion, QuadraticSurd};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = QuadraticSurd::parse_rational("16/45")?;
    println!("16/45 = {:?}", expand(&r)?);

    let s = QuadraticSurd::parse("-1,1,1,2")?;
    let a = expand(&s)?;
    println!("{s} = {a:?}");
    for k in 1..=6 {
        let b = error_bound(&s, &a, k)?;
        println!("  p_{k}/q_{k} = {}, bound holds: {}", convergent(&a, k)?, b.holds);
    }

    let b = FiniteBooleanAlgebra::new(2)?;
    let ts = [s, QuadraticSurd::parse("-2,1,1,7")?];
    let m = mixed_expansion(&Partition::atoms(&b), &ts, 5)?;
    for (k, col) in m.columns.iter().enumerate() {
        println!("  a({}) = {col}", k + 1);
    }
    println!("mixed and atomwise expansions agree: {}", m.paths_agree);
    Ok(())
}
