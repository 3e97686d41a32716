//! Exact desk-scale models for Boolean-valued analysis of vector lattices.
//!
//! Everything here is exact: finite Boolean algebras are atom bitmasks, and
//! scalars are arbitrary-precision rationals (or Gaussian rationals).
//!
//! | module | contents |
//! |---|---|
//! | [`boolalg`] | finite complete Boolean algebras, partitions, covers, σ-distributive laws |
//! | [`pnfin`] | decreasing chains of infinite subsets of ℕ and their pseudo-intersection |
//! | [`bvu`] | B-valued sets, truth values, mixing, ascent/descent, formula language |
//! | [`lattice`] | the descended reals over finitely many atoms, Gordon identities, local bases |
//! | [`operators`] | band preserving linear and bilinear operators, derivations, endomorphisms |
//! | [`refinement`] | partition towers and functions refined from covers |
//! | [`contfrac`] | continued fractions of rationals and quadratic surds |
//! | [`suite`] | the property suites behind `bvlattice suite all` |
//! | [`random`] | seeded generators shared by the suites and the CLI |
//! | [`report`] | run reports and exit codes of the CLI |
//!
//! Each capability has a runnable example, e.g.
//! `cargo run --example gordon_model`.

pub mod boolalg;
pub mod bvu;
pub mod contfrac;
pub mod lattice;
pub mod linalg;
pub mod operators;
pub mod pnfin;
pub mod random;
pub mod rational;
pub mod refinement;
pub mod report;
pub mod suite;
