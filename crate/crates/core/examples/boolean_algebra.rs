//! Elements, partitions and covers of a finite Boolean algebra.
//!
//! ```text
//! cargo run --example boolean_algebra
//! ```

use bvlattice::boolalg::{common_refinement, law_violation, Cover, FiniteBooleanAlgebra, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = FiniteBooleanAlgebra::new(4)?;
    let x = b.from_atoms([0, 1])?;
    let y = b.from_atoms([1, 2])?;
    println!("x = {x}, y = {y}");
    println!("x ∧ y = {}, x ∨ y = {}, x* = {}", x & y, x | y, !x);
    println!("x → y = {}, x ≤ x ∨ y: {}", x.implies(&y), x.leq(&(x | y)));

    let elements: Vec<_> = b.elements().collect();
    println!("identities on all {} elements: {:?}", elements.len(), law_violation(&elements));

    let p = Partition::new(&b, vec![x, !x])?;
    let q = Partition::new(&b, vec![b.from_atoms([0, 2])?, b.from_atoms([1, 3])?])?;
    let r = common_refinement(&b, &[p, q])?;
    println!("common refinement: {:?}", r.blocks());

    let cover = Cover::new(&b, vec![x, y, b.from_atoms([2, 3])?])?;
    println!("cover {:?} refines the atoms: {}", cover.members(), cover.refines_family(&b.atoms()));
    println!("first member above {}: {:?}", b.atom(2)?, cover.first_dominating(&b.atom(2)?));
    Ok(())
}
