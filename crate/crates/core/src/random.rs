//! Seeded generators for the randomized suites.
//!
//! Every generator draws from a caller-supplied [`ChaCha8Rng`], so a suite
//! run is reproducible from its seed alone.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolalg::{BoolElem, Cover, FiniteBooleanAlgebra, Partition};
use crate::bvu::{BSet, StandardNames};
use crate::lattice::LatticeVector;
use crate::operators::{BilinOperator, ComplexOperator, LinOperator};
use crate::rational::{Gaussian, Rational};

/// Default seed of the command-line suites.
pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn algebra<R: Rng>(rng: &mut R, max_atoms: u32) -> FiniteBooleanAlgebra {
    FiniteBooleanAlgebra::new(rng.gen_range(1..=max_atoms)).expect("atom count in range")
}

pub fn elem<R: Rng>(rng: &mut R, algebra: &FiniteBooleanAlgebra) -> BoolElem {
    let n = algebra.atom_count();
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    algebra.from_bits(rng.gen::<u64>() & mask).expect("masked")
}

/// Labels every atom with one of `k` random blocks, keeping nonempty ones in
/// order of first occurrence.
pub fn partition<R: Rng>(rng: &mut R, algebra: &FiniteBooleanAlgebra) -> Partition {
    let n = algebra.atom_count() as usize;
    let k = rng.gen_range(1..=n);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for q in 0..n {
        blocks[rng.gen_range(0..k)].push(q);
    }
    let mut order: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    order.sort_by_key(|b| b[0]);
    Partition::new(algebra, order.into_iter().map(|b| algebra.from_atoms(b).expect("in range")).collect())
        .expect("labels partition the atoms")
}

/// Up to `max_members` random members; atoms left uncovered are added to
/// randomly chosen members.
pub fn cover<R: Rng>(rng: &mut R, algebra: &FiniteBooleanAlgebra, max_members: usize) -> Cover {
    let k = rng.gen_range(1..=max_members);
    let mut members: Vec<BoolElem> = (0..k).map(|_| elem(rng, algebra)).collect();
    let joined = members.iter().fold(algebra.zero(), |a, b| a | *b);
    for q in (!joined).atoms().collect::<Vec<_>>() {
        let i = rng.gen_range(0..k);
        members[i] = members[i] | algebra.atom(q).expect("in range");
    }
    Cover::new(algebra, members).expect("every atom covered")
}

/// A stock of B-sets of rank at most `max_rank`, grown from standard names
/// so that distinct draws share children and truth values are nontrivial.
pub struct BSetPool {
    algebra: FiniteBooleanAlgebra,
    sets: Vec<BSet>,
}

impl BSetPool {
    pub fn new<R: Rng>(rng: &mut R, algebra: FiniteBooleanAlgebra, max_rank: u32, size: usize) -> Self {
        let mut names = StandardNames::new(algebra);
        let mut sets: Vec<BSet> = (0..3).map(|n| names.nat(n).expect("small standard name")).collect();
        let mut attempts = 0;
        while sets.len() < size && attempts < 20 * size {
            attempts += 1;
            let dom_size = rng.gen_range(0..=3);
            let entries: Vec<(BSet, BoolElem)> = (0..dom_size)
                .map(|_| (sets.choose(rng).expect("nonempty").clone(), elem(rng, &algebra)))
                .collect();
            if entries.iter().any(|(c, _)| c.rank() + 1 > max_rank) {
                continue;
            }
            sets.push(BSet::new(algebra, entries).expect("within limits"));
        }
        BSetPool { algebra, sets }
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.algebra
    }

    pub fn sets(&self) -> &[BSet] {
        &self.sets
    }

    pub fn pick<R: Rng>(&self, rng: &mut R) -> BSet {
        self.sets.choose(rng).expect("nonempty pool").clone()
    }
}

/// `a/b` with `|a| ≤ max_abs`, `1 ≤ b ≤ max_den`.
pub fn rational<R: Rng>(rng: &mut R, max_abs: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(-max_abs..=max_abs).into(), rng.gen_range(1..=max_den).into())
}

/// Coordinates from a small range, so that coincidences are common.
pub fn vector<R: Rng>(rng: &mut R, n: usize) -> LatticeVector {
    LatticeVector::new((0..n).map(|_| rational(rng, 3, 2)).collect())
}

pub fn diagonal_operator<R: Rng>(rng: &mut R, n: usize) -> LinOperator {
    LinOperator::diagonal(&LatticeVector::new((0..n).map(|_| rational(rng, 9, 4)).collect()))
}

/// A random matrix with at least one nonzero entry off the diagonal;
/// requires `n ≥ 2`.
pub fn non_diagonal_operator<R: Rng>(rng: &mut R, n: usize) -> LinOperator {
    assert!(n >= 2, "off-diagonal entries need two atoms");
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.5) { rational(rng, 9, 4) } else { Rational::zero() }).collect())
        .collect();
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    while rows[i][j].is_zero() {
        rows[i][j] = rational(rng, 9, 4);
    }
    LinOperator::new(rows).expect("square")
}

/// A small Gaussian rational, `0` and `1` being frequent.
pub fn gaussian<R: Rng>(rng: &mut R) -> Gaussian {
    match rng.gen_range(0..4) {
        0 => Gaussian::zero(),
        1 => Gaussian::one(),
        _ => Gaussian::new(rational(rng, 2, 2), rational(rng, 2, 2)),
    }
}

pub fn complex_diagonal<R: Rng>(rng: &mut R, n: usize) -> ComplexOperator {
    ComplexOperator::diagonal(&(0..n).map(|_| gaussian(rng)).collect::<Vec<_>>())
}

/// `w·x·y` for a random multiplier `w`.
pub fn diagonal_tensor<R: Rng>(rng: &mut R, n: usize) -> BilinOperator {
    BilinOperator::from_multiplier(&LatticeVector::new((0..n).map(|_| rational(rng, 9, 4)).collect()))
}

/// `t[i][j][k] = −t[j][i][k]`, so `b(x, y) = −b(y, x)`.
pub fn antisymmetric_tensor<R: Rng>(rng: &mut R, n: usize) -> BilinOperator {
    let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, j, k) in (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
        if rng.gen_bool(0.5) {
            let v = rational(rng, 9, 4);
            t[j][i][k] = -v.clone();
            t[i][j][k] = v;
        }
    }
    BilinOperator::new(t).expect("cubic")
}
