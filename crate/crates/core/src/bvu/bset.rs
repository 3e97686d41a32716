use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde_json::{json, Value};

use super::{BvuError, Hf};
use crate::boolalg::{BoolElem, BoolElemJson, FiniteBooleanAlgebra};

/// Resource caps enforced when a [`BSet`] is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: u32,
    pub max_dom: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 6,
            max_dom: 32,
        }
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

struct Node {
    id: u64,
    algebra: FiniteBooleanAlgebra,
    rank: u32,
    dom: Vec<(BSet, BoolElem)>,
}

/// A Boolean-valued set. Cheap to clone; immutable once built.
///
/// Each node carries a process-unique id, which truth-value caches use as
/// their key.
#[derive(Clone)]
pub struct BSet(Arc<Node>);

impl BSet {
    pub fn new(algebra: FiniteBooleanAlgebra, entries: Vec<(BSet, BoolElem)>) -> Result<Self, BvuError> {
        Self::with_limits(algebra, entries, Limits::default())
    }

    /// Builds a set, merging repeated children (by identity) with a join.
    pub fn with_limits(
        algebra: FiniteBooleanAlgebra,
        entries: Vec<(BSet, BoolElem)>,
        limits: Limits,
    ) -> Result<Self, BvuError> {
        let mut dom: Vec<(BSet, BoolElem)> = Vec::with_capacity(entries.len());
        for (child, value) in entries {
            if child.algebra() != algebra || !algebra.owns(&value) {
                let right = if child.algebra() != algebra {
                    child.algebra().atom_count()
                } else {
                    value.atom_count()
                };
                return Err(crate::boolalg::BoolAlgError::Mismatch {
                    left: algebra.atom_count(),
                    right,
                }
                .into());
            }
            match dom.iter_mut().find(|(c, _)| c.id() == child.id()) {
                Some((_, v)) => *v = *v | value,
                None => dom.push((child, value)),
            }
        }
        if dom.len() > limits.max_dom {
            return Err(BvuError::DomCap {
                size: dom.len(),
                cap: limits.max_dom,
            });
        }
        let rank = dom.iter().map(|(c, _)| c.rank() + 1).max().unwrap_or(0);
        if rank > limits.max_rank {
            return Err(BvuError::RankCap {
                rank,
                cap: limits.max_rank,
            });
        }
        Ok(BSet(Arc::new(Node {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            algebra,
            rank,
            dom,
        })))
    }

    /// The empty function, `∅^`.
    pub fn empty(algebra: FiniteBooleanAlgebra) -> Self {
        Self::new(algebra, Vec::new()).expect("empty set is within every cap")
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.0.algebra
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn dom(&self) -> &[(BSet, BoolElem)] {
        &self.0.dom
    }

    pub fn same_node(&self, other: &BSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Standard name `h^`: every value is `𝟙`.
    pub fn standard_name(algebra: FiniteBooleanAlgebra, h: &Hf) -> Result<Self, BvuError> {
        StandardNames::new(algebra).name(h)
    }

    /// Parses `{"dom":[[<bset>,<boolelem>],…]}` or `{"hf": <nested arrays>}`.
    pub fn from_json(algebra: FiniteBooleanAlgebra, v: &Value) -> Result<Self, BvuError> {
        let mut names = StandardNames::new(algebra);
        Self::from_json_with(&mut names, v)
    }

    fn from_json_with(names: &mut StandardNames, v: &Value) -> Result<Self, BvuError> {
        let obj = v
            .as_object()
            .ok_or_else(|| BvuError::Json(format!("B-set literal must be an object, found {v}")))?;
        if let Some(h) = obj.get("hf") {
            return names.name(&Hf::from_json(h)?);
        }
        let dom = obj
            .get("dom")
            .and_then(Value::as_array)
            .ok_or_else(|| BvuError::Json("B-set literal needs \"dom\" or \"hf\"".into()))?;
        let mut entries = Vec::with_capacity(dom.len());
        for pair in dom {
            let (child, value) = match pair.as_array().map(Vec::as_slice) {
                Some([c, b]) => (c, b),
                _ => return Err(BvuError::Json(format!("dom entry must be [bset, boolelem], found {pair}"))),
            };
            let child = Self::from_json_with(names, child)?;
            let value: BoolElemJson =
                serde_json::from_value(value.clone()).map_err(|e| BvuError::Json(e.to_string()))?;
            entries.push((child, value.into_elem(&names.algebra)?));
        }
        BSet::new(names.algebra, entries)
    }

    pub fn to_json(&self) -> Value {
        let dom: Vec<Value> = self
            .dom()
            .iter()
            .map(|(c, b)| json!([c.to_json(), BoolElemJson::from(b)]))
            .collect();
        json!({ "dom": dom })
    }
}

impl fmt::Debug for BSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{child↦value, …}` with values as atom sets.
impl fmt::Display for BSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, b)) in self.dom().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}↦{b}")?;
        }
        f.write_str("}")
    }
}

/// Builds standard names, sharing nodes for repeated subsets.
pub struct StandardNames {
    algebra: FiniteBooleanAlgebra,
    cache: HashMap<Hf, BSet>,
}

impl StandardNames {
    pub fn new(algebra: FiniteBooleanAlgebra) -> Self {
        StandardNames {
            algebra,
            cache: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.algebra
    }

    pub fn name(&mut self, h: &Hf) -> Result<BSet, BvuError> {
        if let Some(s) = self.cache.get(h) {
            return Ok(s.clone());
        }
        let one = self.algebra.one();
        let entries = h
            .elements()
            .iter()
            .map(|y| Ok((self.name(y)?, one)))
            .collect::<Result<Vec<_>, BvuError>>()?;
        let s = BSet::new(self.algebra, entries)?;
        self.cache.insert(h.clone(), s.clone());
        Ok(s)
    }

    pub fn nat(&mut self, n: usize) -> Result<BSet, BvuError> {
        self.name(&Hf::nat(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: u32) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(n).unwrap()
    }

    #[test]
    fn standard_name_schema() {
        let a = alg(2);
        let mut names = StandardNames::new(a);
        let empty = names.name(&Hf::empty()).unwrap();
        assert!(empty.dom().is_empty());
        assert_eq!(empty.rank(), 0);
        let one = names.nat(1).unwrap();
        assert_eq!(one.dom().len(), 1);
        assert!(one.dom()[0].0.same_node(&empty));
        assert_eq!(one.dom()[0].1, a.one());
        let two = names.nat(2).unwrap();
        assert_eq!(two.dom().len(), 2);
        assert!(two.dom().iter().all(|(_, b)| b.is_one()));
        assert_eq!(two.rank(), 2);
    }

    #[test]
    fn caps_are_enforced() {
        let a = alg(1);
        let err = BSet::standard_name(a, &Hf::nat(7)).unwrap_err();
        assert_eq!(err, BvuError::RankCap { rank: 7, cap: 6 });
        let tight = Limits { max_rank: 6, max_dom: 1 };
        let e = BSet::empty(a);
        let one = BSet::with_limits(a, vec![(e.clone(), a.one())], tight).unwrap();
        let err = BSet::with_limits(a, vec![(e, a.one()), (one, a.one())], tight).unwrap_err();
        assert_eq!(err, BvuError::DomCap { size: 2, cap: 1 });
    }

    #[test]
    fn repeated_children_merge_by_join() {
        let a = alg(2);
        let e = BSet::empty(a);
        let s = BSet::new(
            a,
            vec![(e.clone(), a.atom(0).unwrap()), (e, a.atom(1).unwrap())],
        )
        .unwrap();
        assert_eq!(s.dom().len(), 1);
        assert!(s.dom()[0].1.is_one());
    }

    #[test]
    fn mismatched_algebra_rejected() {
        let e2 = BSet::empty(alg(2));
        let a3 = alg(3);
        assert!(matches!(
            BSet::new(a3, vec![(e2, alg(2).one())]),
            Err(BvuError::Algebra(_))
        ));
    }

    #[test]
    fn json_literals() {
        let a = alg(2);
        let v: Value = serde_json::from_str(r#"{"dom":[[{"hf":[]},{"atoms":[1]}]]}"#).unwrap();
        let s = BSet::from_json(a, &v).unwrap();
        assert_eq!(s.dom().len(), 1);
        assert_eq!(s.dom()[0].1, a.atom(1).unwrap());
        let back = BSet::from_json(a, &s.to_json()).unwrap();
        assert_eq!(back.dom()[0].1, a.atom(1).unwrap());
        assert!(BSet::from_json(a, &serde_json::json!({"dom": [[{"hf": []}]]})).is_err());
        assert!(BSet::from_json(a, &serde_json::json!([1])).is_err());
    }
}
