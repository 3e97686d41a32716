//! Finite complete Boolean algebras.
//!
//! A finite complete Boolean algebra is the powerset of its atoms, so an
//! element is stored as a bitmask over at most 64 atom indices. Every element
//! remembers the size of its algebra; combining elements of different
//! algebras is an input error on the checked API and a panic on the operator
//! impls.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_ATOMS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolAlgError {
    #[error("atom count must lie in 1..={MAX_ATOMS}, got {0}")]
    AtomCount(u32),
    #[error("atom index {index} out of range for an algebra with {atom_count} atoms")]
    AtomOutOfRange { index: usize, atom_count: u32 },
    #[error("elements belong to different algebras ({left} vs {right} atoms)")]
    Mismatch { left: u32, right: u32 },
    #[error("blocks do not form a partition of unity")]
    NotPartition,
    #[error("members do not form a cover (join is not unity)")]
    NotCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteBooleanAlgebra {
    atom_count: u32,
}

impl FiniteBooleanAlgebra {
    pub fn new(atom_count: u32) -> Result<Self, BoolAlgError> {
        if atom_count == 0 || atom_count > MAX_ATOMS {
            return Err(BoolAlgError::AtomCount(atom_count));
        }
        Ok(FiniteBooleanAlgebra { atom_count })
    }

    pub fn atom_count(&self) -> u32 {
        self.atom_count
    }

    fn full_mask(&self) -> u64 {
        if self.atom_count == 64 {
            u64::MAX
        } else {
            (1u64 << self.atom_count) - 1
        }
    }

    pub fn zero(&self) -> BoolElem {
        BoolElem {
            bits: 0,
            atom_count: self.atom_count,
        }
    }

    pub fn one(&self) -> BoolElem {
        BoolElem {
            bits: self.full_mask(),
            atom_count: self.atom_count,
        }
    }

    /// The atom with the given index.
    pub fn atom(&self, index: usize) -> Result<BoolElem, BoolAlgError> {
        self.from_atoms([index])
    }

    pub fn from_atoms(
        &self,
        atoms: impl IntoIterator<Item = usize>,
    ) -> Result<BoolElem, BoolAlgError> {
        let mut bits = 0u64;
        for index in atoms {
            if index >= self.atom_count as usize {
                return Err(BoolAlgError::AtomOutOfRange {
                    index,
                    atom_count: self.atom_count,
                });
            }
            bits |= 1 << index;
        }
        Ok(BoolElem {
            bits,
            atom_count: self.atom_count,
        })
    }

    /// Element from a raw mask; bits above `atom_count` are rejected.
    pub fn from_bits(&self, bits: u64) -> Result<BoolElem, BoolAlgError> {
        if bits & !self.full_mask() != 0 {
            return Err(BoolAlgError::AtomOutOfRange {
                index: 63 - bits.leading_zeros() as usize,
                atom_count: self.atom_count,
            });
        }
        Ok(BoolElem {
            bits,
            atom_count: self.atom_count,
        })
    }

    /// All `2^atom_count` elements in mask order. Only sensible for small
    /// algebras.
    pub fn elements(&self) -> impl Iterator<Item = BoolElem> + '_ {
        assert!(self.atom_count <= 24, "refusing to enumerate 2^{} elements", self.atom_count);
        (0..=self.full_mask()).map(move |bits| BoolElem {
            bits,
            atom_count: self.atom_count,
        })
    }

    /// The atoms in index order; the finest partition.
    pub fn atoms(&self) -> Vec<BoolElem> {
        (0..self.atom_count as usize)
            .map(|i| BoolElem {
                bits: 1 << i,
                atom_count: self.atom_count,
            })
            .collect()
    }

    pub fn owns(&self, e: &BoolElem) -> bool {
        e.atom_count == self.atom_count
    }

    fn check(&self, e: &BoolElem) -> Result<(), BoolAlgError> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(BoolAlgError::Mismatch {
                left: self.atom_count,
                right: e.atom_count,
            })
        }
    }

    pub fn meet(&self, a: &BoolElem, b: &BoolElem) -> Result<BoolElem, BoolAlgError> {
        self.check(a)?;
        self.check(b)?;
        Ok(*a & *b)
    }

    pub fn join(&self, a: &BoolElem, b: &BoolElem) -> Result<BoolElem, BoolAlgError> {
        self.check(a)?;
        self.check(b)?;
        Ok(*a | *b)
    }

    pub fn complement(&self, a: &BoolElem) -> Result<BoolElem, BoolAlgError> {
        self.check(a)?;
        Ok(!*a)
    }

    pub fn leq(&self, a: &BoolElem, b: &BoolElem) -> Result<bool, BoolAlgError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.leq(b))
    }

    /// Supremum of a finite family; `𝟘` for the empty family.
    pub fn sup<'a>(&self, xs: impl IntoIterator<Item = &'a BoolElem>) -> Result<BoolElem, BoolAlgError> {
        xs.into_iter().try_fold(self.zero(), |acc, x| self.join(&acc, x))
    }

    /// Infimum of a finite family; `𝟙` for the empty family.
    pub fn inf<'a>(&self, xs: impl IntoIterator<Item = &'a BoolElem>) -> Result<BoolElem, BoolAlgError> {
        xs.into_iter().try_fold(self.one(), |acc, x| self.meet(&acc, x))
    }

    pub fn is_cover(&self, members: &[BoolElem]) -> bool {
        members.iter().all(|m| self.owns(m))
            && self.sup(members).map(|s| s == self.one()).unwrap_or(false)
    }

    /// Pairwise disjoint nonzero blocks with join `𝟙`.
    pub fn is_partition(&self, blocks: &[BoolElem]) -> bool {
        if !self.is_cover(blocks) {
            return false;
        }
        let mut seen = 0u64;
        for b in blocks {
            if b.is_zero() || seen & b.bits != 0 {
                return false;
            }
            seen |= b.bits;
        }
        true
    }
}

/// Element of a finite complete Boolean algebra: a subset of its atoms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolElem {
    bits: u64,
    atom_count: u32,
}

impl BoolElem {
    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra {
            atom_count: self.atom_count,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn atom_count(&self) -> u32 {
        self.atom_count
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        *self == self.algebra().one()
    }

    pub fn contains_atom(&self, index: usize) -> bool {
        index < 64 && self.bits & (1 << index) != 0
    }

    /// Atom indices in increasing order.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.atom_count as usize).filter(move |&i| self.bits & (1 << i) != 0)
    }

    pub fn count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn leq(&self, other: &BoolElem) -> bool {
        assert_same(self, other);
        self.bits & !other.bits == 0
    }

    pub fn disjoint(&self, other: &BoolElem) -> bool {
        (*self & *other).is_zero()
    }

    /// Boolean implication `a* ∨ b`.
    pub fn implies(&self, other: &BoolElem) -> BoolElem {
        !*self | *other
    }

    /// `(a ⇒ b) ∧ (b ⇒ a)`.
    pub fn iff(&self, other: &BoolElem) -> BoolElem {
        self.implies(other) & other.implies(self)
    }

    /// `1b = b`, `(−1)b = b*`.
    pub fn signed(&self, positive: bool) -> BoolElem {
        if positive {
            *self
        } else {
            !*self
        }
    }
}

fn assert_same(a: &BoolElem, b: &BoolElem) {
    assert_eq!(
        a.atom_count, b.atom_count,
        "combining elements of different Boolean algebras"
    );
}

impl BitAnd for BoolElem {
    type Output = BoolElem;
    fn bitand(self, rhs: BoolElem) -> BoolElem {
        assert_same(&self, &rhs);
        BoolElem {
            bits: self.bits & rhs.bits,
            atom_count: self.atom_count,
        }
    }
}

impl BitOr for BoolElem {
    type Output = BoolElem;
    fn bitor(self, rhs: BoolElem) -> BoolElem {
        assert_same(&self, &rhs);
        BoolElem {
            bits: self.bits | rhs.bits,
            atom_count: self.atom_count,
        }
    }
}

impl Not for BoolElem {
    type Output = BoolElem;
    fn not(self) -> BoolElem {
        BoolElem {
            bits: !self.bits & self.algebra().full_mask(),
            atom_count: self.atom_count,
        }
    }
}

/// Relative complement `a ∧ b*`.
impl Sub for BoolElem {
    type Output = BoolElem;
    fn sub(self, rhs: BoolElem) -> BoolElem {
        self & !rhs
    }
}

impl fmt::Debug for BoolElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BoolElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("𝟘");
        }
        if self.is_one() {
            return f.write_str("𝟙");
        }
        f.write_str("{")?;
        for (k, a) in self.atoms().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Wire form `{"atoms":[…]}`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolElemJson {
    pub atoms: Vec<usize>,
}

impl From<&BoolElem> for BoolElemJson {
    fn from(e: &BoolElem) -> Self {
        BoolElemJson {
            atoms: e.atoms().collect(),
        }
    }
}

impl Serialize for BoolElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BoolElemJson::from(self).serialize(s)
    }
}

impl BoolElemJson {
    pub fn into_elem(self, algebra: &FiniteBooleanAlgebra) -> Result<BoolElem, BoolAlgError> {
        algebra.from_atoms(self.atoms)
    }
}

/// Pairwise disjoint nonzero elements with join `𝟙`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<BoolElem>,
}

impl Partition {
    pub fn new(algebra: &FiniteBooleanAlgebra, blocks: Vec<BoolElem>) -> Result<Self, BoolAlgError> {
        if algebra.is_partition(&blocks) {
            Ok(Partition { blocks })
        } else {
            Err(BoolAlgError::NotPartition)
        }
    }

    pub fn trivial(algebra: &FiniteBooleanAlgebra) -> Self {
        Partition {
            blocks: vec![algebra.one()],
        }
    }

    pub fn atoms(algebra: &FiniteBooleanAlgebra) -> Self {
        Partition {
            blocks: algebra.atoms(),
        }
    }

    /// Drops `𝟘` blocks from a padded block list; the rest must partition.
    pub fn from_padded(algebra: &FiniteBooleanAlgebra, blocks: &[BoolElem]) -> Result<Self, BoolAlgError> {
        Partition::new(algebra, blocks.iter().copied().filter(|b| !b.is_zero()).collect())
    }

    pub fn blocks(&self) -> &[BoolElem] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.blocks[0].algebra()
    }

    /// Index of the block containing the atom.
    pub fn block_of(&self, atom: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains_atom(atom))
    }

    pub fn as_cover(&self) -> Cover {
        Cover {
            members: self.blocks.clone(),
        }
    }
}

/// A finite family with join `𝟙`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cover {
    members: Vec<BoolElem>,
}

impl Cover {
    pub fn new(algebra: &FiniteBooleanAlgebra, members: Vec<BoolElem>) -> Result<Self, BoolAlgError> {
        if algebra.is_cover(&members) {
            Ok(Cover { members })
        } else {
            Err(BoolAlgError::NotCover)
        }
    }

    pub fn members(&self) -> &[BoolElem] {
        &self.members
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.members[0].algebra()
    }

    /// Index of the first listed member dominating `x`.
    pub fn first_dominating(&self, x: &BoolElem) -> Option<usize> {
        self.members.iter().position(|m| x.leq(m))
    }

    /// `x ≤ m` for some member `m`.
    pub fn refines_elem(&self, x: &BoolElem) -> bool {
        self.first_dominating(x).is_some()
    }

    /// Every member of `finer` is refined from `self`.
    pub fn refines_family(&self, finer: &[BoolElem]) -> bool {
        finer.iter().all(|x| self.refines_elem(x))
    }
}

/// Coarsest partition refined from every input partition: the nonzero meets
/// A Boolean algebra identity failing at a triple of elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: &'static str,
    pub elements: [BoolElem; 3],
}

/// Checks the Boolean algebra identities on every triple drawn from `elems`.
pub fn law_violation(elems: &[BoolElem]) -> Option<LawViolation> {
    for &a in elems {
        let top = a | !a;
        let bottom = a & !a;
        for &b in elems {
            for &c in elems {
                let laws: [(&'static str, bool); 10] = [
                    ("commutativity", a & b == b & a && a | b == b | a),
                    ("associativity", (a & b) & c == a & (b & c) && (a | b) | c == a | (b | c)),
                    ("absorption", a & (a | b) == a && a | (a & b) == a),
                    ("distributivity", a & (b | c) == (a & b) | (a & c) && a | (b & c) == (a | b) & (a | c)),
                    ("complement", top.is_one() && bottom.is_zero()),
                    ("de morgan", !(a & b) == !a | !b && !(a | b) == !a & !b),
                    ("involution", !!a == a),
                    ("order", a.leq(&b) == (a & b == a)),
                    ("difference", a - b == a & !b),
                    ("implication", a.implies(&b) == !a | b && a.iff(&b) == a.implies(&b) & b.implies(&a)),
                ];
                if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
                    return Some(LawViolation {
                        law,
                        elements: [a, b, c],
                    });
                }
            }
        }
    }
    None
}

/// `p₁ ∧ … ∧ p_k`, enumerated with the first partition outermost.
pub fn common_refinement(
    algebra: &FiniteBooleanAlgebra,
    partitions: &[Partition],
) -> Result<Partition, BoolAlgError> {
    let mut blocks = vec![algebra.one()];
    for p in partitions {
        let mut next = Vec::with_capacity(blocks.len() * p.len());
        for u in &blocks {
            for b in p.blocks() {
                let m = algebra.meet(u, b)?;
                if !m.is_zero() {
                    next.push(m);
                }
            }
        }
        blocks = next;
    }
    Partition::new(algebra, blocks)
}

/// Outcome of the finitized σ-distributivity checks over an `N × M` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    /// Size of the finite index set replacing the outer `ℕ`.
    pub rows: usize,
    /// Size of the finite index set replacing the inner `ℕ`.
    pub cols: usize,
    pub meet_of_joins: (BoolElem, BoolElem),
    pub join_of_meets: (BoolElem, BoolElem),
    /// Sequence length used for the sign-choice form (row-major entries).
    pub sign_sequence_len: usize,
    pub sign_join: BoolElem,
    pub form1: bool,
    pub form2: bool,
    pub form3: bool,
}

impl SigmaReport {
    pub fn all_hold(&self) -> bool {
        self.form1 && self.form2 && self.form3
    }
}

/// Largest sign-choice sequence evaluated exhaustively.
pub const MAX_SIGN_SEQUENCE: usize = 20;

/// `⋁_{ε∈{±1}^N} ⋀_n ε(n)b_n`.
pub fn sign_choice_join(algebra: &FiniteBooleanAlgebra, seq: &[BoolElem]) -> BoolElem {
    assert!(seq.len() <= MAX_SIGN_SEQUENCE, "sign sequence too long");
    let mut acc = algebra.zero();
    for eps in 0u32..(1u32 << seq.len()) {
        let mut m = algebra.one();
        for (n, b) in seq.iter().enumerate() {
            m = m & b.signed(eps & (1 << n) == 0);
        }
        acc = acc | m;
    }
    acc
}

/// Iterates over all selectors `m ∈ M^N` as digit vectors.
fn selectors(rows: usize, cols: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if rows == 0 {
        1
    } else if cols == 0 {
        0
    } else {
        cols.checked_pow(rows as u32).expect("selector space too large")
    };
    (0..total).map(move |mut code| {
        let mut sel = vec![0; rows];
        for slot in sel.iter_mut() {
            *slot = code % cols;
            code /= cols;
        }
        sel
    })
}

/// Evaluates both sides of the two distributive forms over the finite matrix
/// `matrix[n][m] = b_m^n` and the sign-choice form on its row-major entries.
pub fn sigma_criteria_check(
    algebra: &FiniteBooleanAlgebra,
    matrix: &[Vec<BoolElem>],
) -> Result<SigmaReport, BoolAlgError> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    for e in matrix.iter().flatten() {
        algebra.check(e)?;
    }

    let lhs1 = algebra.inf(&matrix.iter().map(|r| algebra.sup(r)).collect::<Result<Vec<_>, _>>()?)?;
    let lhs2 = algebra.sup(&matrix.iter().map(|r| algebra.inf(r)).collect::<Result<Vec<_>, _>>()?)?;
    let mut rhs1 = algebra.zero();
    let mut rhs2 = algebra.one();
    for sel in selectors(rows, cols) {
        let picked: Vec<BoolElem> = sel.iter().enumerate().map(|(n, &m)| matrix[n][m]).collect();
        rhs1 = rhs1 | algebra.inf(&picked)?;
        rhs2 = rhs2 & algebra.sup(&picked)?;
    }

    let seq: Vec<BoolElem> = matrix.iter().flatten().copied().take(MAX_SIGN_SEQUENCE).collect();
    let sign_join = sign_choice_join(algebra, &seq);

    Ok(SigmaReport {
        rows,
        cols,
        meet_of_joins: (lhs1, rhs1),
        join_of_meets: (lhs2, rhs2),
        sign_sequence_len: seq.len(),
        sign_join,
        form1: lhs1 == rhs1,
        form2: lhs2 == rhs2,
        form3: sign_join.is_one(),
    })
}

impl crate::rational::Wire for BoolElem {
    type Out = BoolElem;
    fn wire(&self) -> BoolElem {
        *self
    }
}
