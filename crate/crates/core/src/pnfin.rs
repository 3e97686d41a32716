//! Decreasing chains of infinite subsets of ℕ and their pseudo-intersection.
//!
//! An infinite set is given only by a strictly increasing enumerator
//! `k ↦ b(k)` (1-based). Membership and "least element above m" are then
//! decidable by search, while inclusion between two sets is only checked on
//! finite prefixes.
//!
//! Every query carries a `horizon`: enumerating a prefix visits at most
//! `horizon` indices, and a search spends at most `horizon` enumerator probes.
//! Searches gallop (indices 1, 2, 4, …) and then bisect, so a budget of `10⁴`
//! reaches values far beyond the `10⁴`-th element. Each probe is checked
//! against its bracketing probes: a strictly increasing sequence of naturals
//! satisfies `b(j) − b(i) ≥ j − i`, and any breach is reported.

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_HORIZON: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnfinError {
    #[error("enumerator of {set} is not strictly increasing between indices {lo} and {hi} ({lo_value} vs {hi_value})")]
    NotIncreasing {
        set: String,
        lo: u64,
        hi: u64,
        lo_value: u128,
        hi_value: u128,
    },
    #[error("horizon {horizon} exhausted in {set} while searching for {target}; enlarge the horizon")]
    HorizonExceeded {
        set: String,
        target: u128,
        horizon: u64,
    },
    #[error("chain is not decreasing: {0}")]
    NotDecreasing(Violation),
    #[error("unknown chain family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameter for family {family}: {reason}")]
    BadParams { family: String, reason: String },
}

type Enumerator = Arc<dyn Fn(u64) -> u128 + Send + Sync>;

/// Strictly increasing enumeration of an infinite subset of ℕ.
#[derive(Clone)]
pub struct InfiniteSubsetStream {
    name: String,
    enumerator: Enumerator,
}

impl fmt::Debug for InfiniteSubsetStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InfiniteSubsetStream").field("name", &self.name).finish()
    }
}

impl InfiniteSubsetStream {
    /// The enumerator must be a pure function of its 1-based index.
    pub fn new(name: impl Into<String>, enumerator: impl Fn(u64) -> u128 + Send + Sync + 'static) -> Self {
        InfiniteSubsetStream {
            name: name.into(),
            enumerator: Arc::new(enumerator),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `b(k)` for `k ≥ 1`.
    pub fn value(&self, k: u64) -> u128 {
        assert!(k >= 1, "enumerators are 1-based");
        (self.enumerator)(k)
    }

    /// The first `horizon` elements, checking strict increase.
    pub fn prefix(&self, horizon: u64) -> Result<Vec<u128>, PnfinError> {
        let mut out: Vec<u128> = Vec::with_capacity(horizon as usize);
        for k in 1..=horizon {
            let v = self.value(k);
            if let Some(&prev) = out.last() {
                if v <= prev {
                    return Err(self.not_increasing(k - 1, k, prev, v));
                }
            }
            out.push(v);
        }
        Ok(out)
    }

    fn not_increasing(&self, lo: u64, hi: u64, lo_value: u128, hi_value: u128) -> PnfinError {
        PnfinError::NotIncreasing {
            set: self.name.clone(),
            lo,
            hi,
            lo_value,
            hi_value,
        }
    }

    /// Least index `k` with `b(k) ≥ target`, with its value.
    fn search_at_least(&self, target: u128, horizon: u64) -> Result<(u64, u128), PnfinError> {
        let mut probes = 0u64;
        let mut probe = |k: u64| -> Result<u128, PnfinError> {
            if probes == horizon {
                return Err(PnfinError::HorizonExceeded {
                    set: self.name.clone(),
                    target,
                    horizon,
                });
            }
            probes += 1;
            Ok(self.value(k))
        };

        // gallop: (lo, lo_value) is the last index known to lie below target
        let first = probe(1)?;
        if first >= target {
            return Ok((1, first));
        }
        let (mut lo, mut lo_value) = (1u64, first);
        let (mut hi, mut hi_value);
        let mut step = 1u64;
        loop {
            let k = lo.checked_add(step).expect("index overflow while galloping");
            let v = probe(k)?;
            if v < lo_value + u128::from(k - lo) {
                return Err(self.not_increasing(lo, k, lo_value, v));
            }
            if v >= target {
                hi = k;
                hi_value = v;
                break;
            }
            lo = k;
            lo_value = v;
            step = step.saturating_mul(2);
        }
        // bisect on (lo, hi]
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let v = probe(mid)?;
            if v < lo_value + u128::from(mid - lo) || v + u128::from(hi - mid) > hi_value {
                return Err(self.not_increasing(lo, hi, lo_value, hi_value));
            }
            if v >= target {
                hi = mid;
                hi_value = v;
            } else {
                lo = mid;
                lo_value = v;
            }
        }
        Ok((hi, hi_value))
    }

    /// Whether `m` is an element.
    pub fn contains(&self, m: u128, horizon: u64) -> Result<bool, PnfinError> {
        let (_, v) = self.search_at_least(m, horizon)?;
        Ok(v == m)
    }

    /// Least element strictly greater than `m`, with its index.
    pub fn least_above(&self, m: u128, horizon: u64) -> Result<(u64, u128), PnfinError> {
        self.search_at_least(m + 1, horizon)
    }
}

/// `b₁ ⊇ b₂ ⊇ …`, indexed from 1.
#[derive(Clone)]
pub struct DecreasingChain {
    name: String,
    family: Arc<dyn Fn(usize) -> InfiniteSubsetStream + Send + Sync>,
}

impl fmt::Debug for DecreasingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecreasingChain").field("name", &self.name).finish()
    }
}

impl DecreasingChain {
    pub fn new(name: impl Into<String>, family: impl Fn(usize) -> InfiniteSubsetStream + Send + Sync + 'static) -> Self {
        DecreasingChain {
            name: name.into(),
            family: Arc::new(family),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `b_n` for `n ≥ 1`.
    pub fn member(&self, n: usize) -> InfiniteSubsetStream {
        assert!(n >= 1, "chains are 1-based");
        (self.family)(n)
    }

    /// Multiples of `base^n`.
    pub fn dyadic_with_base(base: u64) -> Self {
        DecreasingChain::new(format!("multiples of {base}^n"), move |n| {
            let step = u128::from(base).pow(n as u32);
            InfiniteSubsetStream::new(format!("multiples of {base}^{n}"), move |k| step * u128::from(k))
        })
    }

    pub fn dyadic() -> Self {
        Self::dyadic_with_base(2)
    }

    /// `{m : m > n + offset}`.
    pub fn tails_with_offset(offset: u64) -> Self {
        DecreasingChain::new(format!("tails beyond n+{offset}"), move |n| {
            let start = n as u128 + u128::from(offset);
            InfiniteSubsetStream::new(format!("m > {start}"), move |k| start + u128::from(k))
        })
    }

    pub fn tails() -> Self {
        Self::tails_with_offset(0)
    }

    /// `b_n` keeps every `s_n`-th prime, `s_n = 2^⌊log₂ n⌋`; the strides
    /// divide one another, so the chain decreases.
    pub fn primes_thinned() -> Self {
        DecreasingChain::new("primes thinned by 2^floor(log2 n)", |n| {
            let stride = 1u64 << (usize::BITS - 1 - n.leading_zeros());
            InfiniteSubsetStream::new(format!("every {stride}-th prime"), move |k| {
                u128::from(primes::nth(stride * k))
            })
        })
    }

    /// Built-in families by CLI name.
    pub fn builtin(name: &str) -> Result<Self, PnfinError> {
        match name {
            "dyadic" => Ok(Self::dyadic()),
            "tails" => Ok(Self::tails()),
            "primes-thinned" => Ok(Self::primes_thinned()),
            other => Err(PnfinError::UnknownFamily(other.to_string())),
        }
    }
}

/// Custom chain description `{"family": …, "params": …}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub family: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

impl ChainSpec {
    pub fn build(&self) -> Result<DecreasingChain, PnfinError> {
        let bad = |reason: &str| PnfinError::BadParams {
            family: self.family.clone(),
            reason: reason.to_string(),
        };
        let uint = |key: &str, default: u64| -> Result<u64, PnfinError> {
            match self.params.get(key) {
                None => Ok(default),
                Some(v) => v.as_u64().ok_or_else(|| bad(&format!("{key} must be a natural number"))),
            }
        };
        match self.family.as_str() {
            "dyadic" => {
                let base = uint("base", 2)?;
                if base < 2 {
                    return Err(bad("base must be at least 2"));
                }
                Ok(DecreasingChain::dyadic_with_base(base))
            }
            "tails" => Ok(DecreasingChain::tails_with_offset(uint("offset", 0)?)),
            "primes-thinned" => Ok(DecreasingChain::primes_thinned()),
            other => Err(PnfinError::UnknownFamily(other.to_string())),
        }
    }
}

/// First element of `b_{n+1}` missing from `b_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `n` such that `b_{n+1} ⊄ b_n`.
    pub n: usize,
    /// 1-based index of the offending element in `b_{n+1}`.
    pub index: u64,
    pub value: u128,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element #{} = {} of b_{} is not in b_{}",
            self.index,
            self.value,
            self.n + 1,
            self.n
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecreasingReport {
    pub depth: usize,
    pub horizon: u64,
    pub violation: Option<Violation>,
}

impl DecreasingReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `b_{n+1} ⊆ b_n` for `n < depth` on the first `horizon` elements of
/// each `b_{n+1}`.
pub fn verify_decreasing(chain: &DecreasingChain, depth: usize, horizon: u64) -> Result<DecreasingReport, PnfinError> {
    assert!(depth >= 2, "depth must be at least 2");
    for n in 1..depth {
        let outer = chain.member(n);
        let inner = chain.member(n + 1);
        for (i, v) in inner.prefix(horizon)?.into_iter().enumerate() {
            if !outer.contains(v, horizon)? {
                return Ok(DecreasingReport {
                    depth,
                    horizon,
                    violation: Some(Violation {
                        n,
                        index: i as u64 + 1,
                        value: v,
                    }),
                });
            }
        }
    }
    Ok(DecreasingReport {
        depth,
        horizon,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoIntersection {
    /// `m₁ < m₂ < … < m_count`.
    pub values: Vec<u128>,
    pub horizon: u64,
    pub decreasing: DecreasingReport,
    /// Number of `(n, k)` pairs, `n ≤ k ≤ count`, confirmed `m_k ∈ b_n`.
    pub tail_pairs_checked: usize,
}

/// `m₁ = min b₁`, `m_{n+1} = min{m ∈ b_{n+1} : m > m_n}`; then confirms
/// `m_k ∈ b_n` whenever `n ≤ k`, so that `{m_k} ∖ b_n ⊆ {m₁,…,m_{n−1}}`.
pub fn pseudo_intersection(chain: &DecreasingChain, count: usize, horizon: u64) -> Result<PseudoIntersection, PnfinError> {
    let decreasing = if count >= 2 {
        verify_decreasing(chain, count, horizon)?
    } else {
        DecreasingReport {
            depth: count,
            horizon,
            violation: None,
        }
    };
    if let Some(v) = &decreasing.violation {
        return Err(PnfinError::NotDecreasing(v.clone()));
    }

    let mut values: Vec<u128> = Vec::with_capacity(count);
    for n in 1..=count {
        let b = chain.member(n);
        let m = match values.last() {
            None => b.value(1),
            Some(&prev) => b.least_above(prev, horizon)?.1,
        };
        values.push(m);
    }

    let mut tail_pairs_checked = 0;
    for n in 1..=count {
        let b = chain.member(n);
        for (k, &m) in values.iter().enumerate().skip(n - 1) {
            if !b.contains(m, horizon)? {
                return Err(PnfinError::NotDecreasing(Violation {
                    n,
                    index: k as u64 + 1,
                    value: m,
                }));
            }
            tail_pairs_checked += 1;
        }
    }

    Ok(PseudoIntersection {
        values,
        horizon,
        decreasing,
        tail_pairs_checked,
    })
}

/// Shared, lazily grown prime table.
pub mod primes {
    use super::*;

    fn table() -> &'static RwLock<Vec<u64>> {
        static TABLE: OnceLock<RwLock<Vec<u64>>> = OnceLock::new();
        TABLE.get_or_init(|| RwLock::new(Vec::new()))
    }

    fn sieve(limit: usize) -> Vec<u64> {
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    }

    /// The `k`-th prime, `nth(1) = 2`.
    pub fn nth(k: u64) -> u64 {
        assert!(k >= 1);
        let idx = (k - 1) as usize;
        if let Some(&p) = table().read().expect("prime table poisoned").get(idx) {
            return p;
        }
        let mut t = table().write().expect("prime table poisoned");
        if t.len() <= idx {
            // p_k < k(ln k + ln ln k) for k ≥ 6
            let kf = (k.max(6)) as f64;
            let bound = (kf * (kf.ln() + kf.ln().ln())).ceil() as usize + 16;
            let limit = bound.max(2 * t.last().copied().unwrap_or(16) as usize);
            *t = sieve(limit);
        }
        t[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evens() -> InfiniteSubsetStream {
        InfiniteSubsetStream::new("evens", |k| 2 * u128::from(k))
    }

    #[test]
    fn membership_examples() {
        assert!(evens().contains(6, 10).unwrap());
        assert!(!evens().contains(7, 10).unwrap());
        let pow2 = InfiniteSubsetStream::new("powers of two", |k| 1u128 << k);
        assert!(pow2.contains(8, 5).unwrap());
        assert!(!pow2.contains(12, 5).unwrap());
    }

    #[test]
    fn membership_reports_exhausted_horizon() {
        let err = evens().contains(1 << 40, 5).unwrap_err();
        assert!(matches!(err, PnfinError::HorizonExceeded { horizon: 5, .. }));
    }

    #[test]
    fn non_increasing_enumerators_are_surfaced() {
        let flat = InfiniteSubsetStream::new("flat", |k| if k < 4 { u128::from(k) } else { 3 });
        assert!(matches!(flat.prefix(6), Err(PnfinError::NotIncreasing { lo: 3, hi: 4, .. })));
        assert!(matches!(flat.contains(100, 50), Err(PnfinError::NotIncreasing { .. })));
    }

    #[test]
    fn least_above_finds_successor() {
        assert_eq!(evens().least_above(7, 100).unwrap(), (4, 8));
        assert_eq!(evens().least_above(8, 100).unwrap(), (5, 10));
        assert_eq!(evens().least_above(0, 100).unwrap(), (1, 2));
    }

    #[test]
    fn decreasing_examples() {
        assert!(verify_decreasing(&DecreasingChain::dyadic(), 4, 100).unwrap().passed());
        assert!(verify_decreasing(&DecreasingChain::tails(), 5, 100).unwrap().passed());
        let broken = DecreasingChain::new("evens then odds", |n| {
            if n == 1 {
                evens()
            } else {
                InfiniteSubsetStream::new("odds", |k| 2 * u128::from(k) - 1)
            }
        });
        let r = verify_decreasing(&broken, 2, 100).unwrap();
        assert_eq!(r.violation, Some(Violation { n: 1, index: 1, value: 1 }));
    }

    #[test]
    fn pseudo_intersection_examples() {
        let d = pseudo_intersection(&DecreasingChain::dyadic(), 4, 1000).unwrap();
        assert_eq!(d.values, vec![2, 4, 8, 16]);
        let t = pseudo_intersection(&DecreasingChain::tails(), 4, 1000).unwrap();
        assert_eq!(t.values, vec![2, 3, 4, 5]);
        let constant = DecreasingChain::new("constant evens", |_| evens());
        let c = pseudo_intersection(&constant, 3, 1000).unwrap();
        assert_eq!(c.values, vec![2, 4, 6]);
        assert_eq!(c.tail_pairs_checked, 6);
    }

    #[test]
    fn pseudo_intersection_rejects_non_decreasing_chain() {
        let broken = DecreasingChain::new("odds then evens", |n| {
            if n == 1 {
                InfiniteSubsetStream::new("odds", |k| 2 * u128::from(k) - 1)
            } else {
                evens()
            }
        });
        assert!(matches!(
            pseudo_intersection(&broken, 3, 100),
            Err(PnfinError::NotDecreasing(_))
        ));
    }

    #[test]
    fn primes_table_and_thinned_chain() {
        assert_eq!(primes::nth(1), 2);
        assert_eq!(primes::nth(10), 29);
        assert_eq!(primes::nth(1000), 7919);
        let c = DecreasingChain::primes_thinned();
        // b_2 and b_3 both keep every second prime
        assert_eq!(c.member(2).value(1), 3);
        assert_eq!(c.member(3).value(2), 7);
        assert_eq!(c.member(4).value(1), 7);
        assert!(verify_decreasing(&c, 9, 200).unwrap().passed());
    }

    #[test]
    fn chain_specs() {
        let spec: ChainSpec = serde_json::from_str(r#"{"family":"dyadic","params":{"base":3}}"#).unwrap();
        let r = pseudo_intersection(&spec.build().unwrap(), 3, 100).unwrap();
        assert_eq!(r.values, vec![3, 9, 27]);
        let bad: ChainSpec = serde_json::from_str(r#"{"family":"dyadic","params":{"base":1}}"#).unwrap();
        assert!(bad.build().is_err());
        let unknown: ChainSpec = serde_json::from_str(r#"{"family":"squares"}"#).unwrap();
        assert!(matches!(unknown.build(), Err(PnfinError::UnknownFamily(_))));
    }
}
