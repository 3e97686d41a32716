//! The descended reals over a finite algebra: exact rational vectors indexed
//! by atoms, with pointwise order, lattice operations and multiplication.
//!
//! Band projections are coordinate masks. The Boolean truth value of `x = y`
//! (or `x ≤ y`) is the set of atoms where the relation holds coordinatewise.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{BoolAlgError, BoolElem, FiniteBooleanAlgebra, Partition};
use crate::bvu::{mix, BSet, BvuError, StandardNames, TruthContext};
use crate::linalg;
use crate::rational::{format_rational, parse_rational, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {left} vs {right} atoms")]
    DimMismatch { left: usize, right: usize },
    #[error("expected a positive element, coordinate {atom} is negative")]
    Negative { atom: usize },
    #[error("not a local Hamel basis: {0}")]
    NotLocalHamelBasis(String),
    #[error("exhaustive band search limited to {max} atoms, got {got}")]
    TooManyAtoms { got: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] BoolAlgError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

/// The lattice of rational functions on `atom_count` atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomicLattice {
    algebra: FiniteBooleanAlgebra,
}

impl AtomicLattice {
    pub fn new(atom_count: u32) -> Result<Self, LatticeError> {
        Ok(AtomicLattice {
            algebra: FiniteBooleanAlgebra::new(atom_count)?,
        })
    }

    pub fn over(algebra: FiniteBooleanAlgebra) -> Self {
        AtomicLattice { algebra }
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.algebra
    }

    pub fn atom_count(&self) -> usize {
        self.algebra.atom_count() as usize
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector::constant(self.atom_count(), Rational::zero())
    }

    /// Order unity and ring unity.
    pub fn unity(&self) -> LatticeVector {
        LatticeVector::constant(self.atom_count(), Rational::one())
    }

    /// `χ(b)`: the band projection onto the atoms of `b`.
    pub fn projection(&self, b: BoolElem) -> Result<BandProjection, LatticeError> {
        if !self.algebra.owns(&b) {
            return Err(BoolAlgError::Mismatch {
                left: self.algebra.atom_count(),
                right: b.atom_count(),
            }
            .into());
        }
        Ok(BandProjection { support: b })
    }

    pub fn check(&self, x: &LatticeVector) -> Result<(), LatticeError> {
        same_dim(self.atom_count(), x.dim())
    }
}

fn same_dim(left: usize, right: usize) -> Result<(), LatticeError> {
    if left == right {
        Ok(())
    } else {
        Err(LatticeError::DimMismatch { left, right })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<Rational>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        LatticeVector::new(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        LatticeVector::new(vec![value; n])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, atom: usize) -> &Rational {
        &self.coords[atom]
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self, LatticeError> {
        same_dim(self.dim(), other.dim())?;
        Ok(LatticeVector::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        ))
    }

    pub fn sup(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    pub fn inf(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product; the f-algebra multiplication.
    pub fn f_product(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn abs(&self) -> Self {
        LatticeVector::new(self.coords.iter().map(Signed::abs).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LatticeVector::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Atoms with a nonzero coordinate.
    pub fn support(&self, algebra: &FiniteBooleanAlgebra) -> Result<BoolElem, LatticeError> {
        same_dim(algebra.atom_count() as usize, self.dim())?;
        Ok(algebra.from_atoms(self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i))?)
    }

    /// `|x| ∧ |y| = 0`.
    pub fn disjoint(&self, other: &Self) -> Result<bool, LatticeError> {
        same_dim(self.dim(), other.dim())?;
        Ok(self.coords.iter().zip(&other.coords).all(|(a, b)| a.is_zero() || b.is_zero()))
    }

    pub fn leq(&self, other: &Self) -> Result<bool, LatticeError> {
        same_dim(self.dim(), other.dim())?;
        Ok(self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b))
    }

    pub fn to_json(&self) -> LatticeVectorJson {
        LatticeVectorJson {
            coords: self.coords.iter().map(format_rational).collect(),
        }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Wire form `{"coords":["p/q",…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeVectorJson {
    pub coords: Vec<String>,
}

impl LatticeVectorJson {
    pub fn parse(&self) -> Result<LatticeVector, LatticeError> {
        Ok(LatticeVector::new(
            self.coords.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
        ))
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandProjection {
    support: BoolElem,
}

impl BandProjection {
    pub fn support(&self) -> BoolElem {
        self.support
    }

    /// Zeroes the coordinates outside the support.
    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        same_dim(self.support.atom_count() as usize, x.dim())?;
        Ok(LatticeVector::new(
            x.coords
                .iter()
                .enumerate()
                .map(|(i, c)| if self.support.contains_atom(i) { c.clone() } else { Rational::zero() })
                .collect(),
        ))
    }

    /// `π(𝟙)`: the projection acts as multiplication by this element.
    pub fn as_multiplier(&self) -> LatticeVector {
        let n = self.support.atom_count() as usize;
        LatticeVector::new(
            (0..n)
                .map(|i| if self.support.contains_atom(i) { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
}

/// `[[x = y]]` or `[[x ≤ y]]`.
pub fn truth_vec(
    algebra: &FiniteBooleanAlgebra,
    x: &LatticeVector,
    y: &LatticeVector,
    rel: Relation,
) -> Result<BoolElem, LatticeError> {
    same_dim(algebra.atom_count() as usize, x.dim())?;
    same_dim(x.dim(), y.dim())?;
    let atoms = x.coords.iter().zip(&y.coords).enumerate().filter(|(_, (a, b))| match rel {
        Relation::Eq => a == b,
        Relation::Le => a <= b,
    });
    Ok(algebra.from_atoms(atoms.map(|(i, _)| i))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GordonReport {
    /// `χ(b)x = χ(b)y`
    pub projected_eq: bool,
    /// `b ≤ [[x = y]]`
    pub below_eq_truth: bool,
    /// `χ(b)x ≤ χ(b)y`
    pub projected_le: bool,
    /// `b ≤ [[x ≤ y]]`
    pub below_le_truth: bool,
}

impl GordonReport {
    pub fn passed(&self) -> bool {
        self.projected_eq == self.below_eq_truth && self.projected_le == self.below_le_truth
    }
}

/// Evaluates both sides of `χ(b)x = χ(b)y ⟺ b ≤ [[x=y]]` and
/// `χ(b)x ≤ χ(b)y ⟺ b ≤ [[x≤y]]`.
pub fn gordon_check(
    lattice: &AtomicLattice,
    b: BoolElem,
    x: &LatticeVector,
    y: &LatticeVector,
) -> Result<GordonReport, LatticeError> {
    let chi = lattice.projection(b)?;
    let (px, py) = (chi.apply(x)?, chi.apply(y)?);
    let algebra = lattice.algebra();
    Ok(GordonReport {
        projected_eq: px == py,
        below_eq_truth: b.leq(&truth_vec(&algebra, x, y, Relation::Eq)?),
        projected_le: px.leq(&py)?,
        below_le_truth: b.leq(&truth_vec(&algebra, x, y, Relation::Le)?),
    })
}

/// `re + i·im` with lattice-vector parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexVector {
    pub re: LatticeVector,
    pub im: LatticeVector,
}

impl ComplexVector {
    pub fn new(re: LatticeVector, im: LatticeVector) -> Result<Self, LatticeError> {
        same_dim(re.dim(), im.dim())?;
        Ok(ComplexVector { re, im })
    }

    /// `(x+iy)(x′+iy′) = (xx′ − yy′) + i(xy′ + x′y)`.
    pub fn product(&self, other: &Self) -> Result<Self, LatticeError> {
        let re = self.re.f_product(&other.re)?.sub(&self.im.f_product(&other.im)?)?;
        let im = self.re.f_product(&other.im)?.add(&other.re.f_product(&self.im)?)?;
        ComplexVector::new(re, im)
    }

    /// Squared modulus `re² + im²`.
    pub fn abs_sq(&self) -> LatticeVector {
        let sq = |v: &LatticeVector| v.f_product(v).expect("same dimension");
        sq(&self.re).add(&sq(&self.im)).expect("same dimension")
    }

    /// `{x, y} ⊥ {x′, y′}`: all four real-part pairs disjoint.
    pub fn disjoint(&self, other: &Self) -> Result<bool, LatticeError> {
        Ok(self.re.disjoint(&other.re)?
            && self.re.disjoint(&other.im)?
            && self.im.disjoint(&other.re)?
            && self.im.disjoint(&other.im)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalConstancy {
    pub constant: bool,
    /// Disjoint bands with their multipliers, so that `e = sup λ_ξ π_ξ f`.
    #[serde(serialize_with = "crate::rational::wire")]
    pub witness: Vec<(BoolElem, Rational)>,
    /// An atom where `f` vanishes but `e` does not.
    pub obstruction: Option<usize>,
}

/// Whether `e` is locally constant with respect to `f`: group atoms by the
/// ratio `e(q)/f(q)`, requiring `e(q) = 0` wherever `f(q) = 0`. Atoms with
/// `f(q) = 0` join the ratio-0 band.
pub fn is_locally_constant(
    lattice: &AtomicLattice,
    e: &LatticeVector,
    f: &LatticeVector,
) -> Result<LocalConstancy, LatticeError> {
    lattice.check(e)?;
    lattice.check(f)?;
    for v in [e, f] {
        if let Some(atom) = v.coords.iter().position(Signed::is_negative) {
            return Err(LatticeError::Negative { atom });
        }
    }
    let mut groups: Vec<(Rational, Vec<usize>)> = Vec::new();
    for q in 0..lattice.atom_count() {
        let ratio = if f.coords[q].is_zero() {
            if !e.coords[q].is_zero() {
                return Ok(LocalConstancy {
                    constant: false,
                    witness: Vec::new(),
                    obstruction: Some(q),
                });
            }
            Rational::zero()
        } else {
            &e.coords[q] / &f.coords[q]
        };
        match groups.iter_mut().find(|(r, _)| *r == ratio) {
            Some((_, atoms)) => atoms.push(q),
            None => groups.push((ratio, vec![q])),
        }
    }
    let algebra = lattice.algebra();
    let witness = groups
        .into_iter()
        .map(|(r, atoms)| Ok((algebra.from_atoms(atoms)?, r)))
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok(LocalConstancy {
        constant: true,
        witness,
        obstruction: None,
    })
}

/// Rebuilds `sup λ_ξ π_ξ f` from a witness.
pub fn locally_constant_sum(
    lattice: &AtomicLattice,
    witness: &[(BoolElem, Rational)],
    f: &LatticeVector,
) -> Result<LatticeVector, LatticeError> {
    let mut acc = lattice.zero();
    for (b, r) in witness {
        acc = acc.add(&lattice.projection(*b)?.apply(f)?.scale(r))?;
    }
    Ok(acc)
}

/// Largest lattice on which local linear independence is decided by
/// enumerating every band.
pub const MAX_EXHAUSTIVE_ATOMS: usize = 16;

/// A band on which the nonzero, pairwise distinct projections of `E` admit a
/// nontrivial vanishing combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalDependence {
    pub band: BoolElem,
    /// Indices into `E` of the distinct nonzero projections involved.
    pub members: Vec<usize>,
    #[serde(serialize_with = "crate::rational::wire")]
    pub coefficients: Vec<Rational>,
}

/// Searches every nonzero band `π` for a linear dependence among the nonzero,
/// pairwise distinct projections `πe` (`e ∈ E`).
///
/// All bands are enumerated: the condition at the atoms below `π` does not
/// imply it at `π` (take `(1,0)`, `(0,1)`, `(1,1)`).
pub fn local_dependence(
    lattice: &AtomicLattice,
    family: &[LatticeVector],
) -> Result<Option<LocalDependence>, LatticeError> {
    let n = lattice.atom_count();
    if n > MAX_EXHAUSTIVE_ATOMS {
        return Err(LatticeError::TooManyAtoms {
            got: n,
            max: MAX_EXHAUSTIVE_ATOMS,
        });
    }
    for e in family {
        lattice.check(e)?;
    }
    let algebra = lattice.algebra();
    for bits in 1u64..(1u64 << n) {
        let band = algebra.from_bits(bits)?;
        let atoms: Vec<usize> = band.atoms().collect();
        let mut reps: Vec<(usize, Vec<Rational>)> = Vec::new();
        for (k, e) in family.iter().enumerate() {
            let restricted: Vec<Rational> = atoms.iter().map(|&q| e.coords[q].clone()).collect();
            if restricted.iter().all(Zero::is_zero) || reps.iter().any(|(_, r)| *r == restricted) {
                continue;
            }
            reps.push((k, restricted));
        }
        if reps.len() < 2 {
            continue;
        }
        // columns are the projections; a nullspace vector is a dependence
        let system: linalg::Matrix = (0..atoms.len())
            .map(|row| reps.iter().map(|(_, r)| r[row].clone()).collect())
            .collect();
        if let Some(coefficients) = linalg::nullspace(&system, reps.len()).into_iter().next() {
            return Ok(Some(LocalDependence {
                band,
                members: reps.iter().map(|(k, _)| *k).collect(),
                coefficients,
            }));
        }
    }
    Ok(None)
}

pub fn is_locally_linearly_independent(
    lattice: &AtomicLattice,
    family: &[LatticeVector],
) -> Result<bool, LatticeError> {
    Ok(local_dependence(lattice, family)?.is_none())
}

/// `x = Σ_ξ Σ_e λ_{ξ,e} π_ξ e` over a partition of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamelExpansion {
    /// Each block with its nonzero coefficients `(index into E, λ)`.
    #[serde(serialize_with = "crate::rational::wire")]
    pub blocks: Vec<(BoolElem, Vec<(usize, Rational)>)>,
}

impl HamelExpansion {
    pub fn partition(&self, algebra: &FiniteBooleanAlgebra) -> Result<Partition, LatticeError> {
        Ok(Partition::new(algebra, self.blocks.iter().map(|(b, _)| *b).collect())?)
    }

    pub fn reconstruct(&self, lattice: &AtomicLattice, family: &[LatticeVector]) -> Result<LatticeVector, LatticeError> {
        let mut acc = lattice.zero();
        for (b, coeffs) in &self.blocks {
            let pi = lattice.projection(*b)?;
            for (k, lambda) in coeffs {
                acc = acc.add(&pi.apply(&family[*k])?.scale(lambda))?;
            }
        }
        Ok(acc)
    }
}

/// Whether `E` is a local Hamel basis: locally linearly independent, and
/// every atom sees a nonzero member (so every `x` expands atomwise).
pub fn is_local_hamel_basis(lattice: &AtomicLattice, family: &[LatticeVector]) -> Result<bool, LatticeError> {
    let covered = (0..lattice.atom_count()).all(|q| family.iter().any(|e| !e.coords[q].is_zero()));
    Ok(covered && is_locally_linearly_independent(lattice, family)?)
}

/// Expands `x` in a local Hamel basis. At each atom the first member of `E`
/// that does not vanish there carries the coefficient; atoms with the same
/// coefficient table share a block.
pub fn local_hamel_expand(
    lattice: &AtomicLattice,
    x: &LatticeVector,
    family: &[LatticeVector],
) -> Result<HamelExpansion, LatticeError> {
    lattice.check(x)?;
    if let Some(q) = (0..lattice.atom_count()).find(|&q| family.iter().all(|e| e.coords[q].is_zero())) {
        return Err(LatticeError::NotLocalHamelBasis(format!("no member is nonzero at atom {q}")));
    }
    if let Some(dep) = local_dependence(lattice, family)? {
        return Err(LatticeError::NotLocalHamelBasis(format!(
            "members {:?} are dependent on band {}",
            dep.members, dep.band
        )));
    }
    let mut groups: BTreeMap<Vec<(usize, Rational)>, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<Vec<(usize, Rational)>> = Vec::new();
    for q in 0..lattice.atom_count() {
        let k = family.iter().position(|e| !e.coords[q].is_zero()).expect("checked above");
        let lambda = &x.coords[q] / &family[k].coords[q];
        let key = if lambda.is_zero() { Vec::new() } else { vec![(k, lambda)] };
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(q);
    }
    let algebra = lattice.algebra();
    let blocks = order
        .into_iter()
        .map(|key| {
            let atoms = groups.remove(&key).expect("recorded key");
            Ok((algebra.from_atoms(atoms)?, key))
        })
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok(HamelExpansion { blocks })
}

/// Value-level partition of `x`, blocks in order of first occurrence.
pub fn level_sets(lattice: &AtomicLattice, x: &LatticeVector) -> Result<Vec<(BoolElem, Rational)>, LatticeError> {
    lattice.check(x)?;
    let mut groups: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (q, v) in x.coords.iter().enumerate() {
        match groups.iter_mut().find(|(r, _)| r == v) {
            Some((_, atoms)) => atoms.push(q),
            None => groups.push((v.clone(), vec![q])),
        }
    }
    let algebra = lattice.algebra();
    groups
        .into_iter()
        .map(|(r, atoms)| Ok((algebra.from_atoms(atoms)?, r)))
        .collect()
}

/// Encodes `x` as a B-set: the mixing, over the atom partition, of standard
/// names of each coordinate's index in `catalogue`. Since the coding is
/// injective, `[[enc x = enc y]]` should equal [`truth_vec`]`(x, y, =)`.
pub fn to_bset(
    lattice: &AtomicLattice,
    x: &LatticeVector,
    catalogue: &[Rational],
    names: &mut StandardNames,
    cx: &mut TruthContext,
) -> Result<BSet, BvuError> {
    let atoms = Partition::atoms(&lattice.algebra());
    let mut parts = Vec::with_capacity(x.dim());
    for c in x.coords() {
        let code = catalogue
            .iter()
            .position(|r| r == c)
            .ok_or_else(|| BvuError::Json(format!("{} missing from the rational catalogue", format_rational(c))))?;
        parts.push(names.nat(code)?);
    }
    mix(cx, &atoms, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(xs)
    }

    #[test]
    fn pointwise_operations() {
        assert_eq!(v(&[1, 2, 3]).sup(&v(&[3, 2, 1])).unwrap(), v(&[3, 2, 3]));
        assert_eq!(v(&[1, 2, 3]).inf(&v(&[3, 2, 1])).unwrap(), v(&[1, 2, 1]));
        assert_eq!(v(&[-2, 5]).abs(), v(&[2, 5]));
        let l = AtomicLattice::new(3).unwrap();
        let pi = l.projection(l.algebra().from_atoms([0, 2]).unwrap()).unwrap();
        assert_eq!(pi.apply(&v(&[1, 2, 3])).unwrap(), v(&[1, 0, 3]));
        assert_eq!(v(&[1, 2]).scale(&rat(1, 2)), LatticeVector::new(vec![rat(1, 2), int(1)]));
        assert_eq!(
            v(&[1, 2]).add(&v(&[1, 2, 3])),
            Err(LatticeError::DimMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn f_algebra_product() {
        let l = AtomicLattice::new(2).unwrap();
        assert_eq!(v(&[2, 3]).f_product(&v(&[5, 7])).unwrap(), v(&[10, 21]));
        assert_eq!(v(&[4, -1]).f_product(&l.unity()).unwrap(), v(&[4, -1]));
        let (a, b) = (v(&[1, 0]), v(&[0, 1]));
        assert!(a.f_product(&b).unwrap().is_zero());
        assert!(a.disjoint(&b).unwrap());
        // band projections act as multiplication by π(𝟙)
        let pi = l.projection(l.algebra().atom(1).unwrap()).unwrap();
        let x = v(&[6, 9]);
        assert_eq!(pi.apply(&x).unwrap(), x.f_product(&pi.as_multiplier()).unwrap());
    }

    #[test]
    fn truth_values_of_relations() {
        let a = FiniteBooleanAlgebra::new(3).unwrap();
        let (x, y) = (v(&[1, 2, 3]), v(&[3, 2, 1]));
        assert_eq!(truth_vec(&a, &x, &y, Relation::Eq).unwrap(), a.atom(1).unwrap());
        assert_eq!(truth_vec(&a, &x, &y, Relation::Le).unwrap(), a.from_atoms([0, 1]).unwrap());
        assert_eq!(truth_vec(&a, &x, &x, Relation::Eq).unwrap(), a.one());
    }

    #[test]
    fn gordon_examples() {
        let l = AtomicLattice::new(3).unwrap();
        let a = l.algebra();
        let (x, y) = (v(&[1, 2, 3]), v(&[3, 2, 1]));
        let r = gordon_check(&l, a.atom(1).unwrap(), &x, &y).unwrap();
        assert!(r.passed());
        assert!(r.projected_eq && r.below_eq_truth);
        let r = gordon_check(&l, a.zero(), &x, &y).unwrap();
        assert!(r.passed() && r.projected_eq);
        let r = gordon_check(&l, a.from_atoms([1, 2]).unwrap(), &x, &y).unwrap();
        assert!(r.passed());
        assert!(!r.projected_eq && !r.projected_le);
    }

    #[test]
    fn complex_examples() {
        let z = ComplexVector::new(v(&[3]), v(&[4])).unwrap();
        assert_eq!(z.abs_sq(), v(&[25]));
        let z = ComplexVector::new(v(&[1, 0]), v(&[0, 0])).unwrap();
        let w = ComplexVector::new(v(&[0, 0]), v(&[0, 1])).unwrap();
        assert!(z.disjoint(&w).unwrap());
        let z = ComplexVector::new(v(&[1, 2]), v(&[-3, 1])).unwrap();
        let w = ComplexVector::new(v(&[2, 0]), v(&[5, -1])).unwrap();
        let zw = z.product(&w).unwrap();
        // (1-3i)(2+5i) = 17-i, (2+i)(0-i) = 1-2i
        assert_eq!(zw, ComplexVector::new(v(&[17, 1]), v(&[-1, -2])).unwrap());
        assert_eq!(zw.abs_sq(), z.abs_sq().f_product(&w.abs_sq()).unwrap());
    }

    #[test]
    fn local_constancy_examples() {
        let l = AtomicLattice::new(2).unwrap();
        let a = l.algebra();
        let r = is_locally_constant(&l, &v(&[2, 6]), &v(&[1, 2])).unwrap();
        assert!(r.constant);
        assert_eq!(r.witness, vec![(a.atom(0).unwrap(), int(2)), (a.atom(1).unwrap(), int(3))]);
        assert_eq!(locally_constant_sum(&l, &r.witness, &v(&[1, 2])).unwrap(), v(&[2, 6]));

        let r = is_locally_constant(&l, &v(&[1, 0]), &v(&[0, 1])).unwrap();
        assert!(!r.constant);
        assert_eq!(r.obstruction, Some(0));

        let r = is_locally_constant(&l, &v(&[5, 7]), &v(&[5, 7])).unwrap();
        assert_eq!(r.witness, vec![(a.one(), int(1))]);

        assert_eq!(
            is_locally_constant(&l, &v(&[-1, 0]), &v(&[1, 1])),
            Err(LatticeError::Negative { atom: 0 })
        );
    }

    #[test]
    fn local_linear_independence_examples() {
        let l2 = AtomicLattice::new(2).unwrap();
        assert!(is_locally_linearly_independent(&l2, &[l2.unity()]).unwrap());
        let dep = local_dependence(&l2, &[v(&[1, 1]), v(&[1, 2])]).unwrap().unwrap();
        assert_eq!(dep.band, l2.algebra().atom(1).unwrap());
        assert!(is_locally_linearly_independent(&l2, &[v(&[1, 0]), v(&[0, 1])]).unwrap());
    }

    #[test]
    fn atomwise_independence_is_not_enough() {
        let l = AtomicLattice::new(2).unwrap();
        let family = [v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        // at each single atom all nonzero values coincide
        let dep = local_dependence(&l, &family).unwrap().unwrap();
        assert_eq!(dep.band, l.algebra().one());
        assert_eq!(dep.members, vec![0, 1, 2]);
    }

    #[test]
    fn hamel_expansion_examples() {
        let l = AtomicLattice::new(3).unwrap();
        let a = l.algebra();
        let e = [l.unity()];
        let x = v(&[2, 2, 5]);
        let exp = local_hamel_expand(&l, &x, &e).unwrap();
        assert_eq!(
            exp.blocks,
            vec![(a.from_atoms([0, 1]).unwrap(), vec![(0, int(2))]), (a.atom(2).unwrap(), vec![(0, int(5))])]
        );
        assert_eq!(exp.reconstruct(&l, &e).unwrap(), x);

        let exp = local_hamel_expand(&l, &l.unity(), &e).unwrap();
        assert_eq!(exp.blocks, vec![(a.one(), vec![(0, int(1))])]);

        let l2 = AtomicLattice::new(2).unwrap();
        let basis = [v(&[1, 0]), v(&[0, 1])];
        let exp = local_hamel_expand(&l2, &v(&[3, 7]), &basis).unwrap();
        let a2 = l2.algebra();
        assert_eq!(
            exp.blocks,
            vec![(a2.atom(0).unwrap(), vec![(0, int(3))]), (a2.atom(1).unwrap(), vec![(1, int(7))])]
        );
    }

    #[test]
    fn hamel_expansion_preconditions() {
        let l = AtomicLattice::new(2).unwrap();
        assert!(matches!(
            local_hamel_expand(&l, &v(&[1, 1]), &[v(&[1, 0])]),
            Err(LatticeError::NotLocalHamelBasis(_))
        ));
        assert!(matches!(
            local_hamel_expand(&l, &v(&[1, 1]), &[v(&[1, 1]), v(&[1, 2])]),
            Err(LatticeError::NotLocalHamelBasis(_))
        ));
        assert!(!is_local_hamel_basis(&l, &[v(&[1, 0])]).unwrap());
        assert!(is_local_hamel_basis(&l, &[l.unity()]).unwrap());
    }

    #[test]
    fn vector_json() {
        let x = LatticeVector::new(vec![rat(1, 2), int(-3)]);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"coords":["1/2","-3/1"]}"#);
        let back: LatticeVectorJson = serde_json::from_str(r#"{"coords":["2/4","-3"]}"#).unwrap();
        assert_eq!(back.parse().unwrap(), x);
    }

    #[test]
    fn bset_encoding_matches_truth_vec() {
        let l = AtomicLattice::new(4).unwrap();
        let catalogue = [int(0), rat(1, 2), int(3)];
        let mut names = StandardNames::new(l.algebra());
        let mut cx = TruthContext::new();
        let x = LatticeVector::new(vec![int(0), rat(1, 2), int(3), int(3)]);
        let y = LatticeVector::new(vec![int(0), int(3), int(3), rat(1, 2)]);
        let bx = to_bset(&l, &x, &catalogue, &mut names, &mut cx).unwrap();
        let by = to_bset(&l, &y, &catalogue, &mut names, &mut cx).unwrap();
        assert_eq!(
            cx.truth_eq(&bx, &by).unwrap(),
            truth_vec(&l.algebra(), &x, &y, Relation::Eq).unwrap()
        );
    }
}
