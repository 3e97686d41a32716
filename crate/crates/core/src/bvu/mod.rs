//! Bounded-rank Boolean-valued universe over a finite algebra.
//!
//! A [`BSet`] is a finite function from lower-rank `BSet`s to elements of one
//! fixed [`FiniteBooleanAlgebra`](crate::boolalg::FiniteBooleanAlgebra).
//! Truth values of `x ∈ y` and `x = y` follow the usual mutual recursion, with
//! infima (not suprema) over the domains in the equality clause, so that
//! `[[x = x]] = 𝟙`.
//!
//! On top of that sit standard names of hereditarily finite sets, mixing,
//! ascent and descent, the arrow-cancellation checks, and a small
//! bounded-quantifier formula language.

mod bset;
mod escher;
mod eval;
mod formula;
mod hf;
mod truth;

pub use bset::{BSet, Limits, StandardNames};
pub use escher::{
    all_atom_mixings, ascent, canonicalize, descent, escher_check, mix, same_classes, EscherReport,
};
pub use eval::{
    bounded_transfer_check, eval, eval_classical, eval_report, transfer_battery, check_battery_entry, BatteryEntry, Env,
    EvalReport, HfEnv, TransferReport, Witness,
};
pub use formula::{parse_formula, Formula, ParseError};
pub use hf::Hf;
pub use truth::TruthContext;

use thiserror::Error;

use crate::boolalg::BoolAlgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BvuError {
    #[error(transparent)]
    Algebra(#[from] BoolAlgError),
    #[error("rank {rank} exceeds the cap {cap}")]
    RankCap { rank: u32, cap: u32 },
    #[error("domain size {size} exceeds the cap {cap}")]
    DomCap { size: usize, cap: usize },
    #[error("too many candidate mixings ({count}, cap {cap})")]
    CandidateCap { count: u128, cap: u128 },
    #[error("unbound name {0:?}")]
    Unbound(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{parts} partition blocks but {sets} sets to mix")]
    LengthMismatch { parts: usize, sets: usize },
    #[error("environment is empty; cannot determine the Boolean algebra")]
    EmptyEnv,
    #[error("json: {0}")]
    Json(String),
}
