//! Dyadic partition towers over a finite Stone space and the function
//! `g = Σ 3^{-m} χ_m` refined from a list of covers.
//!
//! Level `m` of a tower holds exactly `2^m` blocks, some of which may be `𝟘`
//! padding, and block `j` of level `m` is the join of blocks `2j` and
//! `2j + 1` of level `m + 1` (0-based). Padding never leaves this module.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::boolalg::{common_refinement, BoolAlgError, BoolElem, BoolElemJson, Cover, FiniteBooleanAlgebra, Partition};
use crate::lattice::{level_sets, AtomicLattice, LatticeError, LatticeVector};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error(transparent)]
    Algebra(#[from] BoolAlgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("malformed covers: {0}")]
    Json(String),
    #[error("level bound must be at least 1")]
    ZeroLevel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTower {
    algebra: FiniteBooleanAlgebra,
    /// `levels[m - 1]` is `P_m`, padded to `2^m` blocks.
    levels: Vec<Vec<BoolElem>>,
    /// For each absorbed cover, the first level refined from it.
    absorbed: Vec<usize>,
}

impl PartitionTower {
    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.algebra
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// `P_m` with padding, `1 ≤ m ≤ height`.
    pub fn padded_level(&self, m: usize) -> &[BoolElem] {
        &self.levels[m - 1]
    }

    /// `P_m` without padding.
    pub fn level(&self, m: usize) -> Partition {
        Partition::from_padded(&self.algebra, &self.levels[m - 1]).expect("tower levels partition unity")
    }

    pub fn absorbed_levels(&self) -> &[usize] {
        &self.absorbed
    }

    /// 0-based block index of the atom at level `m`.
    pub fn block_index(&self, m: usize, atom: usize) -> usize {
        self.levels[m - 1]
            .iter()
            .position(|b| b.contains_atom(atom))
            .expect("levels cover every atom")
    }

    /// First level whose blocks violate the sibling rule or fail to
    /// partition unity.
    pub fn sibling_violation(&self) -> Option<usize> {
        for (idx, level) in self.levels.iter().enumerate() {
            let m = idx + 1;
            let nonzero: Vec<BoolElem> = level.iter().copied().filter(|b| !b.is_zero()).collect();
            if level.len() != 1 << m || !self.algebra.is_partition(&nonzero) {
                return Some(m);
            }
            let parent: Vec<BoolElem> = if m == 1 {
                vec![self.algebra.one()]
            } else {
                self.levels[idx - 1].clone()
            };
            if parent.iter().enumerate().any(|(j, u)| *u != (level[2 * j] | level[2 * j + 1])) {
                return Some(m);
            }
        }
        None
    }

    /// `χ_m`: indicator of the union of even-numbered (1-based) blocks.
    pub fn chi(&self, m: usize) -> LatticeVector {
        let n = self.algebra.atom_count() as usize;
        LatticeVector::new(
            (0..n)
                .map(|q| if self.block_index(m, q) % 2 == 1 { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }
}

/// Splits each block `U` into `U∧c₁, U∧(c₂∖c₁), …`, drops `𝟘` pieces, and
/// adds the fewest dyadic levels that fit the largest block.
pub fn build_tower(algebra: &FiniteBooleanAlgebra, covers: &[Cover]) -> Result<PartitionTower, RefineError> {
    let mut levels: Vec<Vec<BoolElem>> = Vec::new();
    let mut absorbed = Vec::with_capacity(covers.len());
    for cover in covers {
        if cover.algebra() != *algebra {
            return Err(BoolAlgError::Mismatch {
                left: algebra.atom_count(),
                right: cover.algebra().atom_count(),
            }
            .into());
        }
        let current = levels.last().cloned().unwrap_or_else(|| vec![algebra.one()]);
        let pieces: Vec<Vec<BoolElem>> = current
            .iter()
            .map(|u| {
                let mut seen = algebra.zero();
                let mut out = Vec::new();
                for c in cover.members() {
                    let piece = *u & (*c - seen);
                    seen = seen | *c;
                    if !piece.is_zero() {
                        out.push(piece);
                    }
                }
                out
            })
            .collect();
        let widest = pieces.iter().map(Vec::len).max().unwrap_or(0);
        let extra = widest.next_power_of_two().trailing_zeros() as usize;
        let zero = algebra.zero();
        let slots: Vec<BoolElem> = pieces
            .iter()
            .flat_map(|p| (0..1usize << extra).map(move |i| p.get(i).copied().unwrap_or(zero)))
            .collect();
        // intermediate levels join runs of consecutive slots
        for l in 1..=extra {
            let run = 1usize << (extra - l);
            levels.push(slots.chunks(run).map(|c| c.iter().fold(zero, |a, b| a | *b)).collect());
        }
        absorbed.push(levels.len());
    }
    if levels.is_empty() {
        levels.push(vec![algebra.one(), algebra.zero()]);
    }
    for a in &mut absorbed {
        *a = (*a).max(1);
    }
    Ok(PartitionTower {
        algebra: *algebra,
        levels,
        absorbed,
    })
}

/// `Σ_{m=1}^{M} 3^{-m} χ_m` over the whole tower.
pub fn tower_function(tower: &PartitionTower) -> LatticeVector {
    let n = tower.algebra.atom_count() as usize;
    let mut g = LatticeVector::constant(n, Rational::zero());
    let mut weight = Rational::one();
    let third = Rational::new(1.into(), 3.into());
    for m in 1..=tower.height() {
        weight *= &third;
        g = g.add(&tower.chi(m).scale(&weight)).expect("same dimension");
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedFunction {
    pub tower: PartitionTower,
    pub g: LatticeVector,
}

pub fn refined_function(algebra: &FiniteBooleanAlgebra, covers: &[Cover]) -> Result<RefinedFunction, RefineError> {
    let tower = build_tower(algebra, covers)?;
    let g = tower_function(&tower);
    Ok(RefinedFunction { tower, g })
}

/// A pair of atoms with equal `g`-values that no member of the cover holds
/// together.
pub fn refinement_violation(g: &LatticeVector, cover: &Cover) -> Option<(usize, usize)> {
    let n = g.dim();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| g.get(a) == g.get(b))
        .find(|&(a, b)| !cover.members().iter().any(|m| m.contains_atom(a) && m.contains_atom(b)))
}

pub fn is_function_refined_from(g: &LatticeVector, cover: &Cover) -> bool {
    refinement_violation(g, cover).is_none()
}

/// Blocks `{q : k/n ≤ g(q) < (k+1)/n}`, in increasing `k`, empty ones omitted.
pub fn level_partitions(algebra: &FiniteBooleanAlgebra, g: &LatticeVector, n: u64) -> Result<Partition, RefineError> {
    if n == 0 {
        return Err(RefineError::ZeroLevel);
    }
    AtomicLattice::over(*algebra).check(g)?;
    let scale = Rational::from_integer(n.into());
    let mut buckets: Vec<(BigInt, Vec<usize>)> = Vec::new();
    for (q, v) in g.coords().iter().enumerate() {
        let k = (v * &scale).floor().to_integer();
        match buckets.iter_mut().find(|(b, _)| *b == k) {
            Some((_, atoms)) => atoms.push(q),
            None => buckets.push((k, vec![q])),
        }
    }
    buckets.sort_by(|a, b| a.0.cmp(&b.0));
    let blocks = buckets
        .into_iter()
        .map(|(_, atoms)| algebra.from_atoms(atoms))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(algebra, blocks)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    /// Blocks of `g`'s value-level sets, in increasing value.
    pub constancy: Vec<BoolElem>,
    /// Largest `n` examined.
    pub bound: u64,
    /// The constancy partition is refined from every `P_n`, `n ≤ bound`.
    pub refined_from_all: bool,
    /// Least `n` at which the common refinement of `P_1 … P_n` equals the
    /// constancy partition.
    pub separated_at: Option<u64>,
}

impl LevelCheck {
    pub fn passed(&self) -> bool {
        self.refined_from_all && self.separated_at.is_some()
    }
}

/// Checks the constancy partition of `g` against the level partitions
/// `P_n` for `n ≤ 2·lcm(denominators of g)`.
pub fn level_refinement_check(algebra: &FiniteBooleanAlgebra, g: &LatticeVector) -> Result<LevelCheck, RefineError> {
    let lattice = AtomicLattice::over(*algebra);
    let mut sets = level_sets(&lattice, g)?;
    sets.sort_by(|a, b| a.1.cmp(&b.1));
    let constancy: Vec<BoolElem> = sets.into_iter().map(|(b, _)| b).collect();
    let lcm = common_denominator(g.coords());
    let bound: u64 = (lcm * 2u32).try_into().unwrap_or(u64::MAX).min(1 << 16);
    let mut refined_from_all = true;
    let mut separated_at = None;
    let mut running = Partition::trivial(algebra);
    let mut sorted_target = constancy.clone();
    sorted_target.sort_by_key(BoolElem::bits);
    for n in 1..=bound {
        let p = level_partitions(algebra, g, n)?;
        refined_from_all &= p.as_cover().refines_family(&constancy);
        running = common_refinement(algebra, &[running, p])?;
        if separated_at.is_none() {
            let mut blocks = running.blocks().to_vec();
            blocks.sort_by_key(BoolElem::bits);
            if blocks == sorted_target {
                separated_at = Some(n);
            }
        }
    }
    Ok(LevelCheck {
        constancy,
        bound,
        refined_from_all,
        separated_at,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationLevel {
    pub level: usize,
    /// Pairs split for the first time at this level.
    pub pairs: usize,
    #[serde(serialize_with = "crate::rational::wire")]
    pub min_gap: Option<Rational>,
    /// `1/(2·3^m)`.
    #[serde(serialize_with = "crate::rational::wire")]
    pub bound: Rational,
    pub holds: bool,
}

/// For each level `m`, the smallest `|g(q′) − g(q″)|` over atom pairs that
/// share a block of `P_{m−1}` but not of `P_m`.
pub fn separation_report(tower: &PartitionTower, g: &LatticeVector) -> Vec<SeparationLevel> {
    let n = tower.algebra.atom_count() as usize;
    let mut out = Vec::with_capacity(tower.height());
    let mut denom = BigInt::one();
    for m in 1..=tower.height() {
        denom *= 3;
        let bound = Rational::new(1.into(), BigInt::from(2) * &denom);
        let chi = tower.chi(m);
        let mut pairs = 0;
        let mut min_gap: Option<Rational> = None;
        for a in 0..n {
            for b in a + 1..n {
                let same_before = m == 1 || tower.block_index(m - 1, a) == tower.block_index(m - 1, b);
                if !same_before || tower.block_index(m, a) == tower.block_index(m, b) || chi.get(a) == chi.get(b) {
                    continue;
                }
                pairs += 1;
                let gap = (g.get(a) - g.get(b)).abs();
                if min_gap.as_ref().is_none_or(|cur| gap < *cur) {
                    min_gap = Some(gap);
                }
            }
        }
        let holds = min_gap.as_ref().is_none_or(|gap| *gap >= bound);
        out.push(SeparationLevel {
            level: m,
            pairs,
            min_gap,
            bound,
            holds,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub cover: usize,
    /// First tower level refined from the cover.
    pub level: usize,
    pub level_refined: bool,
    pub g_refined: bool,
    pub violation: Option<(usize, usize)>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.level_refined && self.g_refined
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefineReport {
    pub g: LatticeVector,
    /// Tower levels with padding removed.
    pub tower: Vec<Partition>,
    pub certificates: Vec<Certificate>,
    pub separation: Vec<SeparationLevel>,
    pub sibling_rule: bool,
}

impl RefineReport {
    pub fn passed(&self) -> bool {
        self.sibling_rule && self.certificates.iter().all(Certificate::passed) && self.separation.iter().all(|s| s.holds)
    }
}

pub fn refine_report(algebra: &FiniteBooleanAlgebra, covers: &[Cover]) -> Result<RefineReport, RefineError> {
    let RefinedFunction { tower, g } = refined_function(algebra, covers)?;
    let certificates = covers
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let level = tower.absorbed_levels()[i];
            let violation = refinement_violation(&g, c);
            Certificate {
                cover: i,
                level,
                level_refined: c.refines_family(tower.level(level).blocks()),
                g_refined: violation.is_none(),
                violation,
            }
        })
        .collect();
    Ok(RefineReport {
        separation: separation_report(&tower, &g),
        tower: (1..=tower.height()).map(|m| tower.level(m)).collect(),
        sibling_rule: tower.sibling_violation().is_none(),
        certificates,
        g,
    })
}

/// Covers as a JSON array of arrays of `{"atoms":[…]}`, or an object
/// `{"atoms": N, "covers": […]}`. Without an explicit size the algebra has
/// one more atom than the largest index mentioned.
pub fn parse_covers(v: &Value, atoms: Option<u32>) -> Result<(FiniteBooleanAlgebra, Vec<Cover>), RefineError> {
    let (declared, list) = match v {
        Value::Object(map) => {
            let declared = match map.get("atoms") {
                Some(n) => Some(
                    n.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| RefineError::Json("\"atoms\" must be a positive integer".into()))?,
                ),
                None => None,
            };
            let list = map.get("covers").ok_or_else(|| RefineError::Json("missing \"covers\"".into()))?;
            (declared, list)
        }
        other => (None, other),
    };
    let raw: Vec<Vec<BoolElemJson>> =
        serde_json::from_value(list.clone()).map_err(|e| RefineError::Json(format!("covers: {e}")))?;
    let inferred = raw.iter().flatten().flat_map(|e| e.atoms.iter()).max().map_or(1, |m| *m as u32 + 1);
    let algebra = FiniteBooleanAlgebra::new(atoms.or(declared).unwrap_or(inferred))?;
    let covers = raw
        .into_iter()
        .enumerate()
        .map(|(i, members)| {
            let members = members
                .into_iter()
                .map(|m| m.into_elem(&algebra))
                .collect::<Result<Vec<_>, _>>()?;
            Cover::new(&algebra, members).map_err(|_| RefineError::Json(format!("cover {i} does not join to unity")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((algebra, covers))
}
