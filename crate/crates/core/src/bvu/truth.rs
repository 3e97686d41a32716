use std::collections::HashMap;

use super::{BSet, BvuError};
use crate::boolalg::{BoolAlgError, BoolElem};

/// Memo tables for `[[x ∈ y]]` and `[[x = y]]`, keyed by node identity.
///
/// A context is single-writer; separate contexts may evaluate the same sets
/// concurrently. Results do not depend on what is already cached.
#[derive(Debug, Default)]
pub struct TruthContext {
    mem: HashMap<(u64, u64), BoolElem>,
    eq: HashMap<(u64, u64), BoolElem>,
}

impl TruthContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached_entries(&self) -> usize {
        self.mem.len() + self.eq.len()
    }

    fn same_algebra(x: &BSet, y: &BSet) -> Result<(), BvuError> {
        if x.algebra() == y.algebra() {
            Ok(())
        } else {
            Err(BoolAlgError::Mismatch {
                left: x.algebra().atom_count(),
                right: y.algebra().atom_count(),
            }
            .into())
        }
    }

    /// `[[x ∈ y]] = ⋁_{t∈dom y} (y(t) ∧ [[t = x]])`.
    pub fn truth_mem(&mut self, x: &BSet, y: &BSet) -> Result<BoolElem, BvuError> {
        Self::same_algebra(x, y)?;
        Ok(self.mem_unchecked(x, y))
    }

    /// `[[x = y]] = ⋀_{t∈dom x} (x(t) ⇒ [[t ∈ y]]) ∧ ⋀_{t∈dom y} (y(t) ⇒ [[t ∈ x]])`.
    pub fn truth_eq(&mut self, x: &BSet, y: &BSet) -> Result<BoolElem, BvuError> {
        Self::same_algebra(x, y)?;
        Ok(self.eq_unchecked(x, y))
    }

    fn mem_unchecked(&mut self, x: &BSet, y: &BSet) -> BoolElem {
        let key = (x.id(), y.id());
        if let Some(&v) = self.mem.get(&key) {
            return v;
        }
        let mut acc = y.algebra().zero();
        for (t, yt) in y.dom() {
            if yt.is_zero() || yt.leq(&acc) {
                continue;
            }
            acc = acc | (*yt & self.eq_unchecked(t, x));
        }
        self.mem.insert(key, acc);
        acc
    }

    fn eq_unchecked(&mut self, x: &BSet, y: &BSet) -> BoolElem {
        if x.same_node(y) {
            return x.algebra().one();
        }
        // the defining expression is symmetric in x and y
        let key = if x.id() <= y.id() {
            (x.id(), y.id())
        } else {
            (y.id(), x.id())
        };
        if let Some(&v) = self.eq.get(&key) {
            return v;
        }
        let mut acc = x.algebra().one();
        for (t, xt) in x.dom() {
            if acc.is_zero() {
                break;
            }
            acc = acc & xt.implies(&self.mem_unchecked(t, y));
        }
        for (t, yt) in y.dom() {
            if acc.is_zero() {
                break;
            }
            acc = acc & yt.implies(&self.mem_unchecked(t, x));
        }
        self.eq.insert(key, acc);
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FiniteBooleanAlgebra;
    use crate::bvu::{Hf, StandardNames};

    fn setup(n: u32) -> (FiniteBooleanAlgebra, StandardNames, TruthContext) {
        let a = FiniteBooleanAlgebra::new(n).unwrap();
        (a, StandardNames::new(a), TruthContext::new())
    }

    #[test]
    fn membership_examples() {
        let (a, mut names, mut cx) = setup(4);
        let empty = names.name(&Hf::empty()).unwrap();
        let one = names.nat(1).unwrap();
        assert_eq!(cx.truth_mem(&empty, &one).unwrap(), a.one());
        assert_eq!(cx.truth_mem(&one, &one).unwrap(), a.zero());

        let b = a.from_atoms([1, 3]).unwrap();
        let y = BSet::new(a, vec![(empty.clone(), b)]).unwrap();
        assert_eq!(cx.truth_mem(&empty, &y).unwrap(), b);
    }

    #[test]
    fn equality_examples() {
        let (a, mut names, mut cx) = setup(4);
        let empty = names.name(&Hf::empty()).unwrap();
        assert_eq!(cx.truth_eq(&empty, &empty).unwrap(), a.one());
        // a fresh node equal in content to ∅^, not the same node
        let other_empty = BSet::empty(a);
        assert_eq!(cx.truth_eq(&empty, &other_empty).unwrap(), a.one());

        let y = BSet::new(a, vec![(empty.clone(), a.zero())]).unwrap();
        assert_eq!(cx.truth_eq(&empty, &y).unwrap(), a.one());

        let zero = names.nat(0).unwrap();
        let one = names.nat(1).unwrap();
        assert_eq!(cx.truth_eq(&zero, &one).unwrap(), a.zero());
    }

    #[test]
    fn results_do_not_depend_on_cache_state() {
        let (a, mut names, _) = setup(3);
        let two = names.nat(2).unwrap();
        let b = a.from_atoms([0]).unwrap();
        let y = BSet::new(a, vec![(names.nat(1).unwrap(), b), (names.nat(0).unwrap(), !b)]).unwrap();
        let mut warm = TruthContext::new();
        warm.truth_mem(&y, &two).unwrap();
        warm.truth_eq(&two, &y).unwrap();
        let mut cold = TruthContext::new();
        assert_eq!(warm.truth_eq(&y, &two).unwrap(), cold.truth_eq(&y, &two).unwrap());
        assert_eq!(warm.truth_mem(&y, &two).unwrap(), TruthContext::new().truth_mem(&y, &two).unwrap());
    }

    #[test]
    fn mismatched_algebras() {
        let mut cx = TruthContext::new();
        let x = BSet::empty(FiniteBooleanAlgebra::new(2).unwrap());
        let y = BSet::empty(FiniteBooleanAlgebra::new(3).unwrap());
        assert!(cx.truth_eq(&x, &y).is_err());
        assert!(cx.truth_mem(&x, &y).is_err());
    }
}
