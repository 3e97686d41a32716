//! The three σ-distributivity forms over a finite matrix of elements.
//!
//! ```text
//! cargo run --example sigma_distributivity
//! ```

use bvlattice::boolalg::{sigma_criteria_check, sign_choice_join, FiniteBooleanAlgebra};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = FiniteBooleanAlgebra::new(3)?;
    let e = |atoms: &[usize]| b.from_atoms(atoms.iter().copied());
    let matrix = vec![
        vec![e(&[0])?, e(&[1, 2])?],
        vec![e(&[0, 1])?, e(&[])?],
        vec![e(&[2])?, e(&[0, 1])?],
    ];
    let report = sigma_criteria_check(&b, &matrix)?;
    println!("⋀_n ⋁_m b_m^n = {}, ⋁_φ ⋀_n b_φ(n)^n = {}", report.meet_of_joins.0, report.meet_of_joins.1);
    println!("⋁_n ⋀_m b_m^n = {}, ⋀_φ ⋁_n b_φ(n)^n = {}", report.join_of_meets.0, report.join_of_meets.1);
    println!("sign-choice join over {} entries = {}", report.sign_sequence_len, report.sign_join);
    println!("all forms hold: {}", report.all_hold());

    let seq = [e(&[0])?, e(&[0, 1])?];
    println!("sign-choice join of {seq:?} = {}", sign_choice_join(&b, &seq));
    Ok(())
}
