//! Hereditarily finite sets in canonical form.

use std::fmt;

use serde_json::Value;

use super::BvuError;

/// A hereditarily finite set; elements are kept sorted and deduplicated, so
/// structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Hf(Vec<Hf>);

impl Hf {
    pub fn empty() -> Self {
        Hf(Vec::new())
    }

    pub fn from_elements(elements: impl IntoIterator<Item = Hf>) -> Self {
        let mut v: Vec<Hf> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        Hf(v)
    }

    /// von Neumann natural `n = {0, …, n−1}`.
    pub fn nat(n: usize) -> Self {
        let mut acc = Vec::with_capacity(n);
        for _ in 0..n {
            let next = Hf::from_elements(acc.iter().cloned());
            acc.push(next);
        }
        Hf::from_elements(acc)
    }

    /// `{a, b}`.
    pub fn pair(a: Hf, b: Hf) -> Self {
        Hf::from_elements([a, b])
    }

    pub fn singleton(a: Hf) -> Self {
        Hf::from_elements([a])
    }

    pub fn elements(&self) -> &[Hf] {
        &self.0
    }

    pub fn contains(&self, x: &Hf) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Set-theoretic rank: `rank(∅) = 0`, `rank(x) = sup (rank(y) + 1)`.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|y| y.rank() + 1).max().unwrap_or(0)
    }

    /// Parses nested JSON arrays, e.g. `[[],[[]]]` for `2`.
    pub fn from_json(v: &Value) -> Result<Self, BvuError> {
        match v {
            Value::Array(items) => Ok(Hf::from_elements(
                items.iter().map(Hf::from_json).collect::<Result<Vec<_>, _>>()?,
            )),
            other => Err(BvuError::Json(format!(
                "hereditarily finite literal must be nested arrays, found {other}"
            ))),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Hf::to_json).collect())
    }
}

impl fmt::Debug for Hf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Hf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naturals_and_rank() {
        assert_eq!(Hf::nat(0), Hf::empty());
        assert_eq!(Hf::nat(1), Hf::singleton(Hf::empty()));
        assert_eq!(Hf::nat(2), Hf::pair(Hf::empty(), Hf::nat(1)));
        assert_eq!(Hf::nat(5).rank(), 5);
        assert!(Hf::nat(3).contains(&Hf::nat(2)));
        assert!(!Hf::nat(2).contains(&Hf::nat(2)));
    }

    #[test]
    fn canonical_form_ignores_order_and_repeats() {
        let a = Hf::from_elements([Hf::nat(1), Hf::nat(0), Hf::nat(1)]);
        assert_eq!(a, Hf::nat(2));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str("[[],[[]]]").unwrap();
        let h = Hf::from_json(&v).unwrap();
        assert_eq!(h, Hf::nat(2));
        assert_eq!(Hf::from_json(&h.to_json()).unwrap(), h);
        assert!(Hf::from_json(&serde_json::json!([1])).is_err());
        assert_eq!(format!("{}", Hf::nat(2)), "{{},{{}}}");
    }
}
