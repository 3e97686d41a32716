//! Linear and bilinear operators on the atomic f-algebra, written as tables
//! in atom coordinates.
//!
//! Column `j` of a matrix is the image of the atom idempotent `e_j`. A
//! bilinear tensor stores at `t[i][j][k]` the `e_k`-coefficient of
//! `b(e_i, e_j)`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::boolalg::{BoolElem, FiniteBooleanAlgebra};
use crate::lattice::{AtomicLattice, LatticeError, LatticeVector};
use crate::linalg::{self, Matrix};
use crate::rational::{parse_rational, Gaussian, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("malformed operator: {0}")]
    Shape(String),
    #[error("entry {path}: {reason}")]
    Entry { path: String, reason: String },
    #[error("not band preserving: entry ({row}, {col}) is off the diagonal and nonzero")]
    NotBandPreserving { row: usize, col: usize },
    #[error("brute-force projection search limited to {max} atoms, got {got}")]
    TooManyAtoms { got: usize, max: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Largest dimension for which all `2^n` band projections are enumerated.
pub const MAX_BRUTE_FORCE_ATOMS: usize = 16;

fn brute_force_guard(n: usize) -> Result<(), OperatorError> {
    if n > MAX_BRUTE_FORCE_ATOMS {
        Err(OperatorError::TooManyAtoms {
            got: n,
            max: MAX_BRUTE_FORCE_ATOMS,
        })
    } else {
        Ok(())
    }
}

fn algebra_of(n: usize) -> Result<FiniteBooleanAlgebra, OperatorError> {
    Ok(AtomicLattice::new(n as u32)?.algebra())
}

fn projection_mask(bits: u64, n: usize) -> impl Iterator<Item = bool> {
    (0..n).map(move |i| bits >> i & 1 == 1)
}

/// A real operator on `n` atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinOperator {
    rows: Matrix,
}

impl LinOperator {
    pub fn new(rows: Matrix) -> Result<Self, OperatorError> {
        let n = rows.len();
        if n == 0 {
            return Err(OperatorError::Shape("empty matrix".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(OperatorError::Shape(format!("row {i} has {} entries, expected {n}", rows[i].len())));
        }
        Ok(LinOperator { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&LatticeVector::constant(n, Rational::one()))
    }

    pub fn diagonal(g: &LatticeVector) -> Self {
        let n = g.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { g.get(i).clone() } else { Rational::zero() }).collect())
            .collect();
        LinOperator { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector, OperatorError> {
        if x.dim() != self.dim() {
            return Err(LatticeError::DimMismatch {
                left: self.dim(),
                right: x.dim(),
            }
            .into());
        }
        Ok(LatticeVector::new(linalg::mat_vec(&self.rows, x.coords())))
    }

    pub fn first_off_diagonal(&self) -> Option<(usize, usize)> {
        (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !self.rows[i][j].is_zero())
    }

    /// Decided by the diagonal criterion.
    pub fn is_band_preserving(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    /// `πT = Tπ` for the coordinate projection with the given mask.
    pub fn commutes_with_projection(&self, bits: u64) -> bool {
        let mask: Vec<bool> = projection_mask(bits, self.dim()).collect();
        // (πT)_ij = [i∈π] t_ij and (Tπ)_ij = t_ij [j∈π]
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| mask[i] == mask[j] || self.rows[i][j].is_zero()))
    }

    /// Brute-force oracle: commutation with all `2^n` band projections.
    pub fn commutes_with_all_projections(&self) -> Result<bool, OperatorError> {
        brute_force_guard(self.dim())?;
        Ok((0..1u64 << self.dim()).all(|bits| self.commutes_with_projection(bits)))
    }

    pub fn compose(&self, other: &Self) -> Result<Self, OperatorError> {
        if self.dim() != other.dim() {
            return Err(OperatorError::Shape(format!("cannot compose {} with {}", self.dim(), other.dim())));
        }
        let n = self.dim();
        LinOperator::new(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum()).collect())
                .collect(),
        )
    }

    /// Row-major array of `"p/q"` strings (bare integers accepted).
    pub fn from_json(v: &Value) -> Result<Self, OperatorError> {
        let rows = as_array(v, "matrix")?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                as_array(row, &format!("[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| real_entry(e, &format!("[{i}][{j}]")))
                    .collect()
            })
            .collect::<Result<Matrix, _>>()?;
        LinOperator::new(rows)
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, OperatorError> {
    v.as_array().ok_or_else(|| OperatorError::Entry {
        path: path.to_string(),
        reason: "expected an array".into(),
    })
}

fn real_entry(v: &Value, path: &str) -> Result<Rational, OperatorError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => {
            return Err(OperatorError::Entry {
                path: path.to_string(),
                reason: "expected a \"p/q\" string".into(),
            })
        }
    };
    parse_rational(&text).map_err(|e| OperatorError::Entry {
        path: path.to_string(),
        reason: e.to_string(),
    })
}

fn complex_entry(v: &Value, path: &str) -> Result<Gaussian, OperatorError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Gaussian::new(
            real_entry(&pair[0], &format!("{path}[0]"))?,
            real_entry(&pair[1], &format!("{path}[1]"))?,
        )),
        Value::Array(_) => Err(OperatorError::Entry {
            path: path.to_string(),
            reason: "expected [\"re\",\"im\"]".into(),
        }),
        other => Ok(Gaussian::real(real_entry(other, path)?)),
    }
}

/// The multiplier `g = T𝟙` of a band preserving operator, after
/// checking `T e_q = g·e_q` on every atom.
pub fn multiplier_of(t: &LinOperator) -> Result<LatticeVector, OperatorError> {
    if let Some((row, col)) = t.first_off_diagonal() {
        return Err(OperatorError::NotBandPreserving { row, col });
    }
    let n = t.dim();
    let g = t.apply(&LatticeVector::constant(n, Rational::one()))?;
    for q in 0..n {
        let e = basis(n, q);
        let image = t.apply(&e)?;
        if image != g.f_product(&e)? {
            return Err(OperatorError::NotBandPreserving { row: q, col: q });
        }
    }
    Ok(g)
}

pub fn basis(n: usize, q: usize) -> LatticeVector {
    LatticeVector::new((0..n).map(|i| if i == q { Rational::one() } else { Rational::zero() }).collect())
}

/// The solution space of the Leibniz equations in `n²` unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationSpace {
    pub atoms: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub dimension: usize,
    /// Basis of the solution space as matrices, column `j` = `D(e_j)`.
    #[serde(skip)]
    pub basis: Vec<LinOperator>,
    /// Random pairs on which each basis element was re-checked.
    pub leibniz_rechecks: usize,
    pub rechecks_pass: bool,
}

/// `D(uv) − D(u)v − uD(v)`.
pub fn leibniz_defect(d: &LinOperator, u: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector, OperatorError> {
    let lhs = d.apply(&u.f_product(v)?)?;
    let rhs = d.apply(u)?.f_product(v)?.add(&u.f_product(&d.apply(v)?)?)?;
    Ok(lhs.sub(&rhs)?)
}

/// Solves `D(e_j e_k) = D(e_j) e_k + e_j D(e_k)` for all `j, k` exactly.
/// In coordinates, with `d_ij` the `e_i`-coefficient of `D(e_j)`:
/// `δ_jk d_ij = d_ij δ_ik + δ_ij d_ik`.
pub fn derivation_space<R: Rng>(n: usize, rechecks: usize, rng: &mut R) -> Result<DerivationSpace, OperatorError> {
    if n == 0 {
        return Err(OperatorError::Shape("at least one atom required".into()));
    }
    let unknown = |i: usize, j: usize| i * n + j;
    let delta = |a: usize, b: usize| if a == b { 1 } else { 0 };
    let mut system: Matrix = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                row[unknown(i, j)] += Rational::from_integer((delta(j, k) - delta(i, k)).into());
                row[unknown(i, k)] -= Rational::from_integer(delta(i, j).into());
                system.push(row);
            }
        }
    }
    let rank = linalg::rank(&system, n * n);
    let basis = linalg::nullspace(&system, n * n)
        .into_iter()
        .map(|v| LinOperator::new(v.chunks(n).map(|r| r.to_vec()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rechecks_pass = true;
    for d in &basis {
        for _ in 0..rechecks {
            let u = random_small_vector(n, rng);
            let v = random_small_vector(n, rng);
            rechecks_pass &= leibniz_defect(d, &u, &v)?.is_zero();
        }
    }
    Ok(DerivationSpace {
        atoms: n,
        unknowns: n * n,
        equations: system.len(),
        rank,
        dimension: basis.len(),
        leibniz_rechecks: rechecks * basis.len(),
        basis,
        rechecks_pass,
    })
}

fn random_small_vector<R: Rng>(n: usize, rng: &mut R) -> LatticeVector {
    LatticeVector::new(
        (0..n)
            .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into()))
            .collect(),
    )
}

/// An operator on the complexification, entries Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexOperator {
    rows: Vec<Vec<Gaussian>>,
}

impl ComplexOperator {
    pub fn new(rows: Vec<Vec<Gaussian>>) -> Result<Self, OperatorError> {
        let n = rows.len();
        if n == 0 {
            return Err(OperatorError::Shape("empty matrix".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(OperatorError::Shape(format!("row {i} has {} entries, expected {n}", rows[i].len())));
        }
        Ok(ComplexOperator { rows })
    }

    pub fn diagonal(c: &[Gaussian]) -> Self {
        let n = c.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c[i].clone() } else { Gaussian::zero() }).collect())
            .collect();
        ComplexOperator { rows }
    }

    /// `T = T₁ + iT₂`.
    pub fn from_parts(re: &LinOperator, im: &LinOperator) -> Result<Self, OperatorError> {
        if re.dim() != im.dim() {
            return Err(OperatorError::Shape("real and imaginary parts differ in size".into()));
        }
        ComplexOperator::new(
            re.rows
                .iter()
                .zip(&im.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| Gaussian::new(x.clone(), y.clone())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Gaussian>] {
        &self.rows
    }

    pub fn apply(&self, z: &[Gaussian]) -> Vec<Gaussian> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(z).fold(Gaussian::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn first_off_diagonal(&self) -> Option<(usize, usize)> {
        (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !self.rows[i][j].is_zero())
    }

    pub fn is_band_preserving(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    pub fn commutes_with_all_projections(&self) -> Result<bool, OperatorError> {
        brute_force_guard(self.dim())?;
        let n = self.dim();
        Ok((0..1u64 << n).all(|bits| {
            let mask: Vec<bool> = projection_mask(bits, n).collect();
            (0..n).all(|i| (0..n).all(|j| mask[i] == mask[j] || self.rows[i][j].is_zero()))
        }))
    }

    /// Row-major entries, each `["re","im"]` or a real `"p/q"`.
    pub fn from_json(v: &Value) -> Result<Self, OperatorError> {
        let rows = as_array(v, "matrix")?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                as_array(row, &format!("[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| complex_entry(e, &format!("[{i}][{j}]")))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Gaussian>>, _>>()?;
        ComplexOperator::new(rows)
    }
}

fn unit(n: usize, q: usize) -> Vec<Gaussian> {
    (0..n).map(|i| if i == q { Gaussian::one() } else { Gaussian::zero() }).collect()
}

fn pointwise(a: &[Gaussian], b: &[Gaussian]) -> Vec<Gaussian> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// First basis pair `(j, k)` with `T(e_j e_k) ≠ T(e_j)·T(e_k)`.
pub fn multiplicativity_defect(t: &ComplexOperator) -> Option<(usize, usize)> {
    let n = t.dim();
    let images: Vec<Vec<Gaussian>> = (0..n).map(|q| t.apply(&unit(n, q))).collect();
    for j in 0..n {
        for k in 0..n {
            let product = if j == k { images[j].clone() } else { vec![Gaussian::zero(); n] };
            if product != pointwise(&images[j], &images[k]) {
                return Some((j, k));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum EndomorphismVerdict {
    BandProjection { support: BoolElem },
    NotMultiplicative {
        atom: usize,
        #[serde(serialize_with = "crate::rational::wire")]
        value: Gaussian,
    },
    NotBandPreserving { row: usize, col: usize },
}

/// A band preserving endomorphism is multiplication by `c = T𝟙`, and
/// multiplicativity means `c² = c` atomwise. Writing `c = c₁ + ic₂`, this is
/// `c₁² − c₂² = c₁` and `2c₁c₂ = c₂`; the second forces `c₂ = 0` or
/// `c₁ = 1/2`, and the latter makes the first read `c₂² = −1/4`. Hence
/// `c₂ = 0` and `c₁ ∈ {0, 1}`.
pub fn classify_endomorphism(t: &ComplexOperator) -> Result<EndomorphismVerdict, OperatorError> {
    if let Some((row, col)) = t.first_off_diagonal() {
        return Ok(EndomorphismVerdict::NotBandPreserving { row, col });
    }
    let n = t.dim();
    let c: Vec<Gaussian> = (0..n).map(|q| t.rows[q][q].clone()).collect();
    if let Some((atom, _)) = multiplicativity_defect(t) {
        return Ok(EndomorphismVerdict::NotMultiplicative {
            atom,
            value: c[atom].clone(),
        });
    }
    let half = Rational::new(1.into(), 2.into());
    let mut support = Vec::new();
    for (q, cq) in c.iter().enumerate() {
        // 2c₁c₂ = c₂ with c₂ ≠ 0 needs c₁ = 1/2, which has no rational c₂
        assert!(cq.im.is_zero() || cq.re == half);
        assert!(cq.im.is_zero(), "c² = c forces a real multiplier");
        assert!(cq.re.is_zero() || cq.re.is_one(), "c² = c forces c ∈ {{0, 1}}");
        if cq.re.is_one() {
            support.push(q);
        }
    }
    Ok(EndomorphismVerdict::BandProjection {
        support: algebra_of(n)?.from_atoms(support).expect("atoms in range"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AutomorphismVerdict {
    Identity,
    NotBandPreserving { row: usize, col: usize },
    NotMultiplicative {
        atom: usize,
        #[serde(serialize_with = "crate::rational::wire")]
        value: Gaussian,
    },
    /// `T e_atom = 0`.
    NotBijective { atom: usize },
}

/// A band preserving multiplicative bijection is a band projection with
/// trivial kernel, hence the identity.
pub fn automorphism_check(t: &ComplexOperator) -> Result<AutomorphismVerdict, OperatorError> {
    Ok(match classify_endomorphism(t)? {
        EndomorphismVerdict::NotBandPreserving { row, col } => AutomorphismVerdict::NotBandPreserving { row, col },
        EndomorphismVerdict::NotMultiplicative { atom, value } => AutomorphismVerdict::NotMultiplicative { atom, value },
        EndomorphismVerdict::BandProjection { support } => match (0..t.dim()).find(|&q| !support.contains_atom(q)) {
            Some(atom) => AutomorphismVerdict::NotBijective { atom },
            None => AutomorphismVerdict::Identity,
        },
    })
}

/// A bilinear operator `b: E × E → E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinOperator {
    t: Vec<Vec<Vec<Rational>>>,
}

impl BilinOperator {
    pub fn new(t: Vec<Vec<Vec<Rational>>>) -> Result<Self, OperatorError> {
        let n = t.len();
        if n == 0 {
            return Err(OperatorError::Shape("empty tensor".into()));
        }
        for (i, plane) in t.iter().enumerate() {
            if plane.len() != n {
                return Err(OperatorError::Shape(format!("slice [{i}] has {} rows, expected {n}", plane.len())));
            }
            if let Some(j) = plane.iter().position(|r| r.len() != n) {
                return Err(OperatorError::Shape(format!("row [{i}][{j}] has {} entries, expected {n}", plane[j].len())));
            }
        }
        Ok(BilinOperator { t })
    }

    pub fn zero(n: usize) -> Self {
        BilinOperator {
            t: vec![vec![vec![Rational::zero(); n]; n]; n],
        }
    }

    /// `b(x, y) = w·x·y`.
    pub fn from_multiplier(w: &LatticeVector) -> Self {
        let mut b = Self::zero(w.dim());
        for q in 0..w.dim() {
            b.t[q][q][q] = w.get(q).clone();
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.t[i][j][k]
    }

    pub fn tensor(&self) -> &[Vec<Vec<Rational>>] {
        &self.t
    }

    pub fn apply(&self, x: &LatticeVector, y: &LatticeVector) -> Result<LatticeVector, OperatorError> {
        let n = self.dim();
        for v in [x, y] {
            if v.dim() != n {
                return Err(LatticeError::DimMismatch { left: n, right: v.dim() }.into());
            }
        }
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x.get(i).is_zero() {
                continue;
            }
            for j in 0..n {
                if y.get(j).is_zero() {
                    continue;
                }
                let xy = x.get(i) * y.get(j);
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.t[i][j][k].is_zero() {
                        *o += &xy * &self.t[i][j][k];
                    }
                }
            }
        }
        Ok(LatticeVector::new(out))
    }

    /// First nonzero entry off the main diagonal `(q, q, q)`.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| !(i == j && j == k) && !self.t[i][j][k].is_zero())
    }

    /// Decided by the diagonal criterion.
    pub fn is_separately_band_preserving(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    /// Brute-force oracle: `π b(e_i, e_j) = b(π e_i, e_j) = b(e_i, π e_j)` for
    /// every band projection and basis pair.
    pub fn brute_force_separately_band_preserving(&self) -> Result<bool, OperatorError> {
        let n = self.dim();
        brute_force_guard(n)?;
        let zero = vec![Rational::zero(); n];
        for bits in 0..1u64 << n {
            let mask: Vec<bool> = projection_mask(bits, n).collect();
            for i in 0..n {
                for j in 0..n {
                    let image = &self.t[i][j];
                    let projected: Vec<Rational> = image
                        .iter()
                        .zip(&mask)
                        .map(|(v, &m)| if m { v.clone() } else { Rational::zero() })
                        .collect();
                    let left = if mask[i] { image } else { &zero };
                    let right = if mask[j] { image } else { &zero };
                    if projected != *left || projected != *right {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.t[i][j] == self.t[j][i]))
    }

    /// `|x| ∧ |y| = 0 ⟹ b(x, y) = 0`; on atoms this is `b(e_i, e_j) = 0` for `i ≠ j`.
    pub fn is_orthosymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.t[i][j].iter().all(Zero::is_zero)))
    }

    /// `(b(x,y) − b(y,x)) / 2`.
    pub fn antisymmetric_part(&self) -> Self {
        let n = self.dim();
        let half = Rational::new(1.into(), 2.into());
        let t = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| (&self.t[i][j][k] - &self.t[j][i][k]) * &half).collect())
                    .collect()
            })
            .collect();
        BilinOperator { t }
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Nested arrays `[i][j][k]` of `"p/q"` strings.
    pub fn from_json(v: &Value) -> Result<Self, OperatorError> {
        let t = as_array(v, "tensor")?
            .iter()
            .enumerate()
            .map(|(i, plane)| {
                as_array(plane, &format!("[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, row)| {
                        as_array(row, &format!("[{i}][{j}]"))?
                            .iter()
                            .enumerate()
                            .map(|(k, e)| real_entry(e, &format!("[{i}][{j}][{k}]")))
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<Rational>>>, _>>()?;
        BilinOperator::new(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    pub separately_band_preserving: bool,
    pub off_diagonal_entry: Option<(usize, usize, usize)>,
    pub symmetric: bool,
    pub orthosymmetric: bool,
    /// `w(q) = t[q][q][q]`, present when `b(x, y) = w·x·y` on all basis pairs.
    pub multiplier: Option<LatticeVector>,
}

impl BilinearReport {
    /// The conclusions that must follow from separate band preservation.
    pub fn consistent(&self) -> bool {
        !self.separately_band_preserving || (self.symmetric && self.orthosymmetric && self.multiplier.is_some())
    }
}

pub fn bilinear_report(b: &BilinOperator) -> Result<BilinearReport, OperatorError> {
    let n = b.dim();
    let w = LatticeVector::new((0..n).map(|q| b.t[q][q][q].clone()).collect());
    let mut multiplier_form = true;
    'pairs: for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (basis(n, i), basis(n, j));
            if b.apply(&ei, &ej)? != w.f_product(&ei)?.f_product(&ej)? {
                multiplier_form = false;
                break 'pairs;
            }
        }
    }
    let off_diagonal_entry = b.first_off_diagonal();
    Ok(BilinearReport {
        separately_band_preserving: off_diagonal_entry.is_none(),
        off_diagonal_entry,
        symmetric: b.is_symmetric(),
        orthosymmetric: b.is_orthosymmetric(),
        multiplier: multiplier_form.then_some(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> LinOperator {
        LinOperator::new(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(int(re), int(im))
    }

    #[test]
    fn band_preservation_examples() {
        for (t, expected) in [
            (m(&[&[2, 0], &[0, 3]]), true),
            (m(&[&[0, 1], &[0, 0]]), false),
            (m(&[&[0, 0], &[0, 0]]), true),
        ] {
            assert_eq!(t.is_band_preserving(), expected);
            assert_eq!(t.commutes_with_all_projections().unwrap(), expected);
        }
        // the atom-0 projection already separates [[0,1],[0,0]]
        assert!(!m(&[&[0, 1], &[0, 0]]).commutes_with_projection(0b01));
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(multiplier_of(&m(&[&[2, 0], &[0, 3]])).unwrap(), LatticeVector::from_ints(&[2, 3]));
        assert_eq!(multiplier_of(&LinOperator::identity(3)).unwrap(), LatticeVector::from_ints(&[1, 1, 1]));
        assert_eq!(
            multiplier_of(&m(&[&[1, 1], &[0, 1]])),
            Err(OperatorError::NotBandPreserving { row: 0, col: 1 })
        );
    }

    #[test]
    fn derivation_space_is_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 4] {
            let s = derivation_space(n, 4, &mut rng).unwrap();
            assert_eq!(s.dimension, 0);
            assert_eq!(s.rank, n * n);
            assert_eq!(s.equations, n * n * n);
        }
    }

    #[test]
    fn leibniz_defect_detects_non_derivations() {
        let id = LinOperator::identity(2);
        let one = LatticeVector::from_ints(&[1, 1]);
        // I(1·1) − 1 − 1 = −1
        assert_eq!(leibniz_defect(&id, &one, &one).unwrap(), LatticeVector::from_ints(&[-1, -1]));
    }

    #[test]
    fn endomorphism_examples() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        assert_eq!(
            classify_endomorphism(&ComplexOperator::diagonal(&[g(1, 0), g(0, 0)])).unwrap(),
            EndomorphismVerdict::BandProjection { support: a.atom(0).unwrap() }
        );
        let half = ComplexOperator::diagonal(&[Gaussian::real(rat(1, 2)), g(1, 0)]);
        assert!(matches!(
            classify_endomorphism(&half).unwrap(),
            EndomorphismVerdict::NotMultiplicative { atom: 0, .. }
        ));
        let i = ComplexOperator::diagonal(&[g(0, 1), g(0, 0)]);
        assert!(matches!(
            classify_endomorphism(&i).unwrap(),
            EndomorphismVerdict::NotMultiplicative { atom: 0, .. }
        ));
    }

    #[test]
    fn automorphism_examples() {
        let id = ComplexOperator::diagonal(&[g(1, 0), g(1, 0)]);
        assert_eq!(automorphism_check(&id).unwrap(), AutomorphismVerdict::Identity);
        let p = ComplexOperator::diagonal(&[g(1, 0), g(0, 0)]);
        assert_eq!(automorphism_check(&p).unwrap(), AutomorphismVerdict::NotBijective { atom: 1 });
        let swap = ComplexOperator::new(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        assert_eq!(
            automorphism_check(&swap).unwrap(),
            AutomorphismVerdict::NotBandPreserving { row: 0, col: 1 }
        );
        assert!(!swap.commutes_with_all_projections().unwrap());
    }

    #[test]
    fn bilinear_examples() {
        let w = LatticeVector::from_ints(&[2, 3]);
        let b = BilinOperator::from_multiplier(&w);
        assert!(b.is_separately_band_preserving());
        assert!(b.brute_force_separately_band_preserving().unwrap());
        let r = bilinear_report(&b).unwrap();
        assert!(r.symmetric && r.orthosymmetric && r.consistent());
        assert_eq!(r.multiplier, Some(w));

        // b(x, y) = x₀y₁·e₀
        let mut c = BilinOperator::zero(2);
        c.t[0][1][0] = int(1);
        assert!(!c.is_separately_band_preserving());
        assert!(!c.brute_force_separately_band_preserving().unwrap());
        assert_eq!(c.first_off_diagonal(), Some((0, 1, 0)));

        let z = BilinOperator::zero(3);
        let r = bilinear_report(&z).unwrap();
        assert!(r.separately_band_preserving && r.symmetric && r.orthosymmetric);
        assert_eq!(r.multiplier, Some(LatticeVector::from_ints(&[0, 0, 0])));
    }

    #[test]
    fn diagonal_tensors_have_no_antisymmetric_part() {
        let b = BilinOperator::from_multiplier(&LatticeVector::from_ints(&[5, -1, 2]));
        assert!(b.antisymmetric_part().is_zero());
        let mut c = BilinOperator::zero(2);
        c.t[0][1][1] = int(1);
        c.t[1][0][1] = int(-1);
        assert!(!c.antisymmetric_part().is_zero());
        assert!(!c.is_separately_band_preserving());
    }

    #[test]
    fn json_parsing() {
        let t = LinOperator::from_json(&serde_json::json!([["1/2", "0"], [0, "3"]])).unwrap();
        assert_eq!(t.rows()[0][0], rat(1, 2));
        let err = LinOperator::from_json(&serde_json::json!([["1", "x"], ["0", "1"]])).unwrap_err();
        assert!(matches!(err, OperatorError::Entry { ref path, .. } if path == "[0][1]"));
        assert!(matches!(
            LinOperator::from_json(&serde_json::json!([["1", "0"]])),
            Err(OperatorError::Shape(_))
        ));
        let c = ComplexOperator::from_json(&serde_json::json!([[["0", "1"]]])).unwrap();
        assert_eq!(c.rows()[0][0], Gaussian::i());
        let b = BilinOperator::from_json(&serde_json::json!([[["2"]]])).unwrap();
        assert_eq!(b.entry(0, 0, 0), &int(2));
    }
}
