//! Continued fractions of rationals and real quadratic irrationals, computed
//! exactly with the Gauss map `s ↦ 1/s − ⌊1/s⌋`.
//!
//! Expansions are indexed so that `t = 1/(a(1) + 1/(a(2) + …))`; rational
//! expansions end with a quotient `≥ 2`, which makes them unique.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::boolalg::Partition;
use crate::lattice::LatticeVector;
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("{0} is not in the open interval (0, 1)")]
    OutOfRange(String),
    #[error("{0} is not positive")]
    NotPositive(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("radicand must be positive, got {0}")]
    BadRadicand(BigInt),
    #[error("no period detected within {cap} states")]
    StateCap { cap: usize },
    #[error("partial quotient {0} does not fit in 64 bits")]
    QuotientOverflow(BigInt),
    #[error("convergent {k} requested but the expansion has {len} terms")]
    Exhausted { k: usize, len: usize },
    #[error("{parts} partition blocks but {values} values")]
    LengthMismatch { parts: usize, values: usize },
    #[error("malformed number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// `(p + q·√d) / r` with `d` squarefree, `r > 0` and `gcd(p, q, r) = 1`.
/// Rationals are stored with `q = 0` and `d = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// Sign of `a + b·√d` for `d ≥ 1`.
fn sign_of(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.cmp(&BigInt::zero());
    let sb = b.cmp(&BigInt::zero());
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        // opposite signs: compare a² with b²d
        (sa, _) => match (a * a).cmp(&(b * b * d)) {
            Ordering::Greater => sa,
            Ordering::Less => sa.reverse(),
            Ordering::Equal => Ordering::Equal,
        },
    }
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Result<Self, ContFracError> {
        if r.is_zero() {
            return Err(ContFracError::ZeroDenominator);
        }
        if !d.is_positive() {
            return Err(ContFracError::BadRadicand(d));
        }
        let (mut p, mut q, mut r, mut d) = (p, q, r, d);
        // move square factors of d into q
        let mut f = BigInt::from(2);
        while &f * &f <= d {
            let sq = &f * &f;
            while d.is_multiple_of(&sq) {
                d /= &sq;
                q *= &f;
            }
            f += 1;
        }
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(QuadraticSurd { p, q, r, d })
    }

    pub fn from_ints(p: i64, q: i64, r: i64, d: i64) -> Result<Self, ContFracError> {
        Self::new(p.into(), q.into(), r.into(), d.into())
    }

    pub fn rational(x: &Rational) -> Self {
        QuadraticSurd::new(x.numer().clone(), BigInt::zero(), x.denom().clone(), BigInt::one())
            .expect("nonzero denominator")
    }

    /// Parses `"p,q,r,d"`.
    pub fn parse(s: &str) -> Result<Self, ContFracError> {
        let err = |reason: &str| ContFracError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(err("expected four comma-separated integers p,q,r,d"));
        }
        let mut v = Vec::with_capacity(4);
        for (i, part) in parts.iter().enumerate() {
            v.push(
                part.parse::<BigInt>()
                    .map_err(|_| err(&format!("field {} ({:?}) is not an integer", i + 1, part)))?,
            );
        }
        let d = v.pop().expect("four fields");
        let r = v.pop().expect("four fields");
        let q = v.pop().expect("four fields");
        let p = v.pop().expect("four fields");
        Self::new(p, q, r, d)
    }

    /// Parses a rational `"p/q"`.
    pub fn parse_rational(s: &str) -> Result<Self, ContFracError> {
        parse_rational(s).map(|x| Self::rational(&x)).map_err(|e| ContFracError::Parse {
            input: s.to_string(),
            reason: e.reason.to_string(),
        })
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.p, &self.q, &self.r, &self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.p.clone(), self.r.clone()))
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // (p + q√d)/r − a/b has the sign of b·p − a·r + b·q·√d
        let (a, b) = (x.numer(), x.denom());
        sign_of(&(b * &self.p - a * &self.r), &(b * &self.q), &self.d)
    }

    pub fn sub_rational(&self, x: &Rational) -> Self {
        let (a, b) = (x.numer(), x.denom());
        QuadraticSurd::new(
            b * &self.p - a * &self.r,
            b * &self.q,
            b * &self.r,
            self.d.clone(),
        )
        .expect("nonzero denominator")
    }

    /// `r / (p + q√d) = r(p − q√d) / (p² − q²d)`.
    pub fn recip(&self) -> Result<Self, ContFracError> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return Err(ContFracError::NotPositive(self.to_string()));
        }
        QuadraticSurd::new(&self.r * &self.p, -(&self.r * &self.q), norm, self.d.clone())
    }

    /// `⌊α⌋` for `α > 0`: the natural `n` with `n ≤ α` and `α < n + 1`.
    pub fn integer_part(&self) -> Result<BigInt, ContFracError> {
        if self.signum() != Ordering::Greater {
            return Err(ContFracError::NotPositive(self.to_string()));
        }
        let root = self.d.sqrt();
        let mut n = (&self.p + &self.q * &root).div_floor(&self.r);
        if n.is_negative() {
            n = BigInt::zero();
        }
        while self.cmp_rational(&Rational::from_integer(n.clone())) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&n + 1)) != Ordering::Less {
            n += 1;
        }
        Ok(n)
    }

    fn in_unit_interval(&self) -> bool {
        self.signum() == Ordering::Greater && self.cmp_rational(&Rational::one()) == Ordering::Less
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}/{}", self.p, self.r)
        } else {
            write!(f, "({} + {}·√{})/{}", self.p, self.q, self.d, self.r)
        }
    }
}

/// `a(1), a(2), …` as a preperiod followed by a repeating period (empty for
/// rationals).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialQuotients {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl PartialQuotients {
    pub fn finite(terms: Vec<u64>) -> Self {
        PartialQuotients {
            preperiod: terms,
            period: Vec::new(),
        }
    }

    pub fn periodic(preperiod: Vec<u64>, period: Vec<u64>) -> Self {
        PartialQuotients { preperiod, period }
    }

    /// Number of terms, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        self.period.is_empty().then_some(self.preperiod.len())
    }

    pub fn is_empty(&self) -> bool {
        self.preperiod.is_empty() && self.period.is_empty()
    }

    /// `a(k)`, 1-based, with the period unrolled.
    pub fn get(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        let i = k - 1;
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }

    /// The first `k` terms, fewer if the expansion is finite and shorter.
    pub fn take(&self, k: usize) -> Vec<u64> {
        (1..=k).map_while(|i| self.get(i)).collect()
    }
}

/// Default bound on distinct Gauss-map states before giving up.
pub const DEFAULT_STATE_CAP: usize = 10_000;

pub fn expand(t: &QuadraticSurd) -> Result<PartialQuotients, ContFracError> {
    expand_with_cap(t, DEFAULT_STATE_CAP)
}

/// Runs the Gauss map until the remainder vanishes or a state repeats.
pub fn expand_with_cap(t: &QuadraticSurd, cap: usize) -> Result<PartialQuotients, ContFracError> {
    if !t.in_unit_interval() {
        return Err(ContFracError::OutOfRange(t.to_string()));
    }
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut s = t.clone();
    loop {
        if s.signum() == Ordering::Equal {
            return Ok(PartialQuotients::finite(terms));
        }
        if let Some(&start) = seen.get(&s) {
            let period = terms.split_off(start);
            return Ok(PartialQuotients::periodic(terms, period));
        }
        if seen.len() >= cap {
            return Err(ContFracError::StateCap { cap });
        }
        seen.insert(s.clone(), terms.len());
        let x = s.recip()?;
        let a = x.integer_part()?;
        terms.push(a.to_u64().ok_or_else(|| ContFracError::QuotientOverflow(a.clone()))?);
        s = x.sub_rational(&Rational::from_integer(a));
    }
}

/// `p_k / q_k` from `p_{−1} = 1, q_{−1} = 0, p_0 = 0, q_0 = 1` and
/// `p_k = a(k)p_{k−1} + p_{k−2}`, likewise for `q`.
pub fn convergent(a: &PartialQuotients, k: usize) -> Result<Rational, ContFracError> {
    if let Some(len) = a.len() {
        if k > len {
            return Err(ContFracError::Exhausted { k, len });
        }
    }
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for i in 1..=k {
        let ai = BigInt::from(a.get(i).expect("length checked"));
        let p_next = &ai * &p + &p_prev;
        let q_next = &ai * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok(Rational::new(p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorBound {
    pub k: usize,
    #[serde(serialize_with = "crate::rational::wire")]
    pub convergent: Rational,
    pub holds: bool,
}

/// `|t − p_k/q_k| < 1/q_k²`, decided exactly.
pub fn error_bound(t: &QuadraticSurd, a: &PartialQuotients, k: usize) -> Result<ErrorBound, ContFracError> {
    let c = convergent(a, k)?;
    let diff = t.sub_rational(&c);
    let q2 = Rational::new(BigInt::one(), c.denom() * c.denom());
    let holds = diff.cmp_rational(&q2) == Ordering::Less && diff.cmp_rational(&-q2) == Ordering::Greater;
    Ok(ErrorBound {
        k,
        convergent: c,
        holds,
    })
}

/// Expansions of a mixing of values over a partition, computed two ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedExpansion {
    pub depth: usize,
    /// Per atom: the expansion of its block's value, truncated at `depth`.
    pub rows: Vec<Vec<u64>>,
    /// Per step: `a(n)` as a vector over atoms, `0` where the expansion has
    /// already terminated.
    pub columns: Vec<LatticeVector>,
    pub paths_agree: bool,
}

/// Expands each value then assembles the table by atoms, and separately
/// mixes the values first and runs the Gauss map on all atoms at once.
pub fn mixed_expansion(parts: &Partition, ts: &[QuadraticSurd], depth: usize) -> Result<MixedExpansion, ContFracError> {
    if parts.len() != ts.len() {
        return Err(ContFracError::LengthMismatch {
            parts: parts.len(),
            values: ts.len(),
        });
    }
    let n = parts.algebra().atom_count() as usize;
    let expansions = ts.iter().map(expand).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|q| expansions[parts.block_of(q).expect("partition covers atoms")].take(depth))
        .collect();

    let mut state: Vec<Option<QuadraticSurd>> =
        (0..n).map(|q| Some(ts[parts.block_of(q).expect("partition covers atoms")].clone())).collect();
    let mut columns = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut column = Vec::with_capacity(n);
        for s in state.iter_mut() {
            match s.take() {
                Some(cur) if cur.signum() != Ordering::Equal => {
                    let x = cur.recip()?;
                    let a = x.integer_part()?;
                    let next = x.sub_rational(&Rational::from_integer(a.clone()));
                    column.push(Rational::from_integer(a));
                    *s = Some(next);
                }
                _ => column.push(Rational::zero()),
            }
        }
        columns.push(LatticeVector::new(column));
    }

    let paths_agree = rows.iter().enumerate().all(|(q, row)| {
        columns.iter().enumerate().all(|(i, col)| {
            let expected = row.get(i).map_or(0, |&a| a);
            *col.get(q) == Rational::from_integer(expected.into())
        })
    });
    Ok(MixedExpansion {
        depth,
        rows,
        columns,
        paths_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FiniteBooleanAlgebra;
    use crate::rational::{int, rat};

    fn surd(p: i64, q: i64, r: i64, d: i64) -> QuadraticSurd {
        QuadraticSurd::from_ints(p, q, r, d).unwrap()
    }

    #[test]
    fn normalization() {
        // (2 + 2√8)/4 = (1 + 2√2)/2
        assert_eq!(surd(2, 2, 4, 8), surd(1, 2, 2, 2));
        assert_eq!(surd(1, 1, -1, 2), surd(-1, -1, 1, 2));
        assert!(surd(3, 2, 1, 4).is_rational());
        assert_eq!(surd(3, 2, 1, 4).as_rational(), Some(int(7)));
        assert!(QuadraticSurd::from_ints(1, 1, 0, 2).is_err());
        assert!(QuadraticSurd::from_ints(1, 1, 1, 0).is_err());
    }

    #[test]
    fn integer_part_examples() {
        assert_eq!(QuadraticSurd::rational(&rat(7, 3)).integer_part().unwrap(), BigInt::from(2));
        assert_eq!(surd(0, 1, 1, 2).integer_part().unwrap(), BigInt::from(1));
        assert_eq!(surd(1, 1, 2, 5).integer_part().unwrap(), BigInt::from(1));
        assert_eq!(surd(0, 1, 1, 99).integer_part().unwrap(), BigInt::from(9));
        assert!(surd(-2, 1, 1, 2).integer_part().is_err());
    }

    #[test]
    fn exact_comparison() {
        let root2 = surd(0, 1, 1, 2);
        assert_eq!(root2.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(root2.cmp_rational(&rat(142, 100)), Ordering::Less);
        assert_eq!(surd(1, -1, 1, 2).signum(), Ordering::Less);
    }

    #[test]
    fn rational_expansions() {
        let t = QuadraticSurd::rational(&rat(16, 45));
        let a = expand(&t).unwrap();
        assert_eq!(a, PartialQuotients::finite(vec![2, 1, 4, 3]));
        assert_eq!(convergent(&a, 4).unwrap(), rat(16, 45));
        assert_eq!(expand(&QuadraticSurd::rational(&rat(1, 2))).unwrap().preperiod, vec![2]);
        assert_eq!(convergent(&PartialQuotients::finite(vec![2]), 1).unwrap(), rat(1, 2));
        assert_eq!(convergent(&a, 5), Err(ContFracError::Exhausted { k: 5, len: 4 }));
    }

    #[test]
    fn surd_expansions() {
        let t = surd(-1, 1, 1, 2);
        let a = expand(&t).unwrap();
        assert_eq!(a, PartialQuotients::periodic(vec![], vec![2]));
        assert_eq!(convergent(&a, 6).unwrap(), rat(70, 169));
        for k in 1..=10 {
            assert!(error_bound(&t, &a, k).unwrap().holds);
        }
        // √3 − 1 = [1; 2, 1, 2, …] after the leading 0
        assert_eq!(expand(&surd(-1, 1, 1, 3)).unwrap(), PartialQuotients::periodic(vec![], vec![1, 2]));
        // (√5 − 1)/2
        assert_eq!(expand(&surd(-1, 1, 2, 5)).unwrap(), PartialQuotients::periodic(vec![], vec![1]));
        // √7 − 2 = [1, 1, 1, 4, …]
        assert_eq!(expand(&surd(-2, 1, 1, 7)).unwrap(), PartialQuotients::periodic(vec![], vec![1, 1, 1, 4]));
        // (√2 − 1)/3 has a preperiod
        let b = expand(&surd(-1, 1, 3, 2)).unwrap();
        assert!(!b.preperiod.is_empty() && !b.period.is_empty());
    }

    #[test]
    fn range_and_cap_errors() {
        assert!(matches!(expand(&QuadraticSurd::rational(&int(1))), Err(ContFracError::OutOfRange(_))));
        assert!(matches!(expand(&surd(0, 1, 1, 2)), Err(ContFracError::OutOfRange(_))));
        assert_eq!(expand_with_cap(&surd(-1, 1, 1, 2), 0), Err(ContFracError::StateCap { cap: 0 }));
    }

    #[test]
    fn parsing() {
        assert_eq!(QuadraticSurd::parse("-1, 1, 1, 2").unwrap(), surd(-1, 1, 1, 2));
        assert!(matches!(QuadraticSurd::parse("1,2,3"), Err(ContFracError::Parse { .. })));
        assert!(matches!(QuadraticSurd::parse("1,x,3,2"), Err(ContFracError::Parse { .. })));
        assert_eq!(QuadraticSurd::parse_rational("16/45").unwrap(), QuadraticSurd::rational(&rat(16, 45)));
    }

    #[test]
    fn mixed_expansion_examples() {
        let a1 = FiniteBooleanAlgebra::new(3).unwrap();
        let m = mixed_expansion(&Partition::trivial(&a1), &[QuadraticSurd::rational(&rat(16, 45))], 4).unwrap();
        assert!(m.paths_agree);
        assert!(m.rows.iter().all(|r| *r == vec![2, 1, 4, 3]));

        let a2 = FiniteBooleanAlgebra::new(2).unwrap();
        let ts = [surd(-1, 1, 1, 2), QuadraticSurd::rational(&rat(1, 2))];
        let m = mixed_expansion(&Partition::atoms(&a2), &ts, 3).unwrap();
        assert_eq!(m.rows, vec![vec![2, 2, 2], vec![2]]);
        assert_eq!(m.columns[1], LatticeVector::from_ints(&[2, 0]));
        assert!(m.paths_agree);

        let swapped = Partition::new(&a2, vec![a2.atom(1).unwrap(), a2.atom(0).unwrap()]).unwrap();
        let m2 = mixed_expansion(&swapped, &ts, 3).unwrap();
        assert_eq!(m2.rows, vec![vec![2], vec![2, 2, 2]]);

        assert!(matches!(
            mixed_expansion(&Partition::atoms(&a2), &ts[..1], 3),
            Err(ContFracError::LengthMismatch { .. })
        ));
    }
}
