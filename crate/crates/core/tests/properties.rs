//! Algebraic invariants under proptest, each checked against a direct
//! recomputation rather than the library's own helpers.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

use bvlattice::boolalg::{common_refinement, law_violation, BoolElem, FiniteBooleanAlgebra, Partition};
use bvlattice::bvu::{ascent, descent, mix, BSet, StandardNames, TruthContext};
use bvlattice::contfrac::{convergent, expand, QuadraticSurd};
use bvlattice::lattice::{
    gordon_check, is_local_hamel_basis, level_sets, local_hamel_expand, truth_vec, AtomicLattice, LatticeVector,
    Relation,
};
use bvlattice::operators::{multiplier_of, LinOperator};
use bvlattice::rational::{format_rational, parse_rational, Gaussian, Rational};
use bvlattice::refinement::{is_function_refined_from, refined_function};

fn algebra(n: u32) -> FiniteBooleanAlgebra {
    FiniteBooleanAlgebra::new(n).unwrap()
}

fn elem(a: &FiniteBooleanAlgebra, bits: u64) -> BoolElem {
    a.from_bits(bits & ((1u64 << a.atom_count()) - 1)).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn lattice_and_vectors(k: usize) -> impl Strategy<Value = (AtomicLattice, Vec<LatticeVector>)> {
    (1u32..=8).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(rational(), n as usize), k)
            .prop_map(move |vs| (AtomicLattice::new(n).unwrap(), vs.into_iter().map(LatticeVector::new).collect()))
    })
}

/// Labels atoms `0..n` into blocks, dropping empty labels.
fn partition_from_labels(a: &FiniteBooleanAlgebra, labels: &[usize]) -> Partition {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let blocks: Vec<BoolElem> = (0..k)
        .map(|b| a.from_atoms(labels.iter().enumerate().filter(|(_, l)| **l == b).map(|(q, _)| q)).unwrap())
        .filter(|e| !e.is_zero())
        .collect();
    Partition::new(a, blocks).unwrap()
}

fn partition() -> impl Strategy<Value = Partition> {
    (1u32..=8).prop_flat_map(|n| {
        proptest::collection::vec(0usize..4, n as usize).prop_map(move |labels| partition_from_labels(&algebra(n), &labels))
    })
}

proptest! {
    #[test]
    fn boolean_identities(n in 1u32..=64, bits in proptest::collection::vec(any::<u64>(), 3)) {
        let a = algebra(n);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let elems: Vec<BoolElem> = bits.iter().map(|b| a.from_bits(b & mask).unwrap()).collect();
        prop_assert_eq!(law_violation(&elems), None);
    }

    #[test]
    fn common_refinement_is_finer(p in partition(), labels in proptest::collection::vec(0usize..3, 8)) {
        let a = p.algebra();
        let q = partition_from_labels(&a, &labels[..a.atom_count() as usize]);
        let r = common_refinement(&a, &[p.clone(), q.clone()]).unwrap();
        for block in r.blocks() {
            prop_assert!(p.blocks().iter().any(|b| block.leq(b)));
            prop_assert!(q.blocks().iter().any(|b| block.leq(b)));
        }
        // two atoms share a block exactly when they share one in both
        for i in 0..a.atom_count() as usize {
            for j in 0..a.atom_count() as usize {
                let together = p.block_of(i) == p.block_of(j) && q.block_of(i) == q.block_of(j);
                prop_assert_eq!(r.block_of(i) == r.block_of(j), together);
            }
        }
    }

    #[test]
    fn rationals_round_trip_on_the_wire(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rational::new(p.into(), q.into());
        let s = format_rational(&r);
        prop_assert!(s.contains('/'));
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn gaussian_field_laws(a in (rational(), rational()), b in (rational(), rational()), c in (rational(), rational())) {
        let (a, b, c) = (Gaussian::new(a.0, a.1), Gaussian::new(b.0, b.1), Gaussian::new(c.0, c.1));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).norm_sq(), a.norm_sq() * b.norm_sq());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn vector_lattice_identities((l, v) in lattice_and_vectors(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let sup = x.sup(y).unwrap();
        let inf = x.inf(y).unwrap();
        prop_assert_eq!(sup.add(&inf).unwrap(), x.add(y).unwrap());
        prop_assert!(x.leq(&sup).unwrap() && inf.leq(y).unwrap());
        prop_assert_eq!(x.add(z).unwrap().sup(&y.add(z).unwrap()).unwrap(), sup.add(z).unwrap());
        let pos = x.sup(&l.zero()).unwrap();
        let neg = x.scale(&-Rational::one()).sup(&l.zero()).unwrap();
        prop_assert_eq!(pos.add(&neg).unwrap(), x.abs());
        prop_assert!(pos.disjoint(&neg).unwrap());
    }

    #[test]
    fn truth_values_of_comparisons((l, v) in lattice_and_vectors(2), bits in any::<u64>()) {
        let a = l.algebra();
        let (x, y) = (&v[0], &v[1]);
        let eq = truth_vec(&a, x, y, Relation::Eq).unwrap();
        let le = truth_vec(&a, x, y, Relation::Le).unwrap();
        let ge = truth_vec(&a, y, x, Relation::Le).unwrap();
        prop_assert_eq!(eq, le & ge);
        prop_assert!((le | ge).is_one());
        for q in 0..l.atom_count() {
            prop_assert_eq!(eq.contains_atom(q), x.get(q) == y.get(q));
        }
        let b = elem(&a, bits);
        prop_assert!(gordon_check(&l, b, x, y).unwrap().passed());
    }

    #[test]
    fn level_sets_partition_and_rebuild((l, v) in lattice_and_vectors(1)) {
        let x = &v[0];
        let sets = level_sets(&l, x).unwrap();
        let blocks: Vec<BoolElem> = sets.iter().map(|(b, _)| *b).collect();
        prop_assert!(l.algebra().is_partition(&blocks));
        let mut rebuilt = l.zero();
        for (b, value) in &sets {
            rebuilt = rebuilt.add(&l.projection(*b).unwrap().as_multiplier().scale(value)).unwrap();
        }
        prop_assert_eq!(&rebuilt, x);
        // distinct values on distinct blocks
        for (i, (_, u)) in sets.iter().enumerate() {
            prop_assert!(sets[i + 1..].iter().all(|(_, w)| w != u));
        }
    }

    #[test]
    fn local_hamel_expansion_rebuilds((l, v) in lattice_and_vectors(2), bits in any::<u64>()) {
        // two vectors with complementary supports form a local Hamel basis
        let b = elem(&l.algebra(), bits);
        let pi = l.projection(b).unwrap().as_multiplier();
        let rest = l.projection(!b).unwrap().as_multiplier();
        let family = vec![pi.scale(&Rational::from_integer(2.into())), rest.scale(&Rational::new(1.into(), 3.into()))];
        let family: Vec<LatticeVector> = family.into_iter().filter(|e| !e.is_zero()).collect();
        prop_assert!(is_local_hamel_basis(&l, &family).unwrap());
        let x = &v[0];
        let h = local_hamel_expand(&l, x, &family).unwrap();
        prop_assert!(h.partition(&l.algebra()).is_ok());
        prop_assert_eq!(&h.reconstruct(&l, &family).unwrap(), x);
        // a repeated member is never locally independent
        let twice = vec![family[0].clone(), family[0].scale(&Rational::from_integer(5.into()))];
        prop_assert!(!is_local_hamel_basis(&l, &twice).unwrap());
    }

    #[test]
    fn diagonal_operators_are_multiplications((_l, v) in lattice_and_vectors(2)) {
        let (g, x) = (&v[0], &v[1]);
        let t = LinOperator::diagonal(g);
        prop_assert_eq!(&multiplier_of(&t).unwrap(), g);
        prop_assert_eq!(t.apply(x).unwrap(), g.f_product(x).unwrap());
        let tt = t.compose(&t).unwrap();
        prop_assert_eq!(multiplier_of(&tt).unwrap(), g.f_product(g).unwrap());
        prop_assert!(t.commutes_with_all_projections().unwrap());
    }

    #[test]
    fn refined_function_is_refined(n in 1u32..=8, members in proptest::collection::vec(proptest::collection::vec(any::<u64>(), 1..4), 1..4)) {
        let a = algebra(n);
        let covers: Vec<_> = members
            .iter()
            .map(|ms| {
                let mut es: Vec<BoolElem> = ms.iter().map(|b| elem(&a, *b)).collect();
                // complete to a cover
                let joined = es.iter().fold(a.zero(), |acc, e| acc | *e);
                es[0] = es[0] | !joined;
                bvlattice::boolalg::Cover::new(&a, es).unwrap()
            })
            .collect();
        let g = refined_function(&a, &covers).unwrap().g;
        for c in &covers {
            prop_assert!(is_function_refined_from(&g, c));
            // direct oracle: every level set of g sits inside a member
            for (i, gi) in g.coords().iter().enumerate() {
                let level = a.from_atoms((0..n as usize).filter(|&j| g.get(j) == gi)).unwrap();
                prop_assert!(c.members().iter().any(|m| level.leq(m)), "atom {} level {}", i, level);
            }
        }
        prop_assert!(g.coords().iter().all(|v| !v.is_negative() && v < &Rational::one()));
    }

    #[test]
    fn rational_continued_fractions(p in 1i64..5000, q in 2i64..5000) {
        prop_assume!(p < q);
        let t = Rational::new(p.into(), q.into());
        let a = expand(&QuadraticSurd::rational(&t)).unwrap();
        let len = a.len().unwrap();
        prop_assert_eq!(convergent(&a, len).unwrap(), t.clone());
        // p_k q_{k-1} - p_{k-1} q_k = ±1 and successive convergents straddle t
        let mut prev = convergent(&a, 0).unwrap();
        for k in 1..=len {
            let c = convergent(&a, k).unwrap();
            let det = c.numer() * prev.denom() - prev.numer() * c.denom();
            prop_assert_eq!(det.abs(), BigInt::one());
            if k < len {
                let side = (c.clone() - t.clone()).signum();
                let expected = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
                prop_assert_eq!(side, expected);
            }
            prev = c;
        }
    }

    #[test]
    fn surd_expansions_are_periodic(d in 2i64..200) {
        // frac(√d) for non-square d
        let root = (d as f64).sqrt() as i64;
        prop_assume!(root * root != d);
        let t = QuadraticSurd::from_ints(-root, 1, 1, d).unwrap();
        let a = expand(&t).unwrap();
        prop_assert!(a.preperiod.is_empty());
        prop_assert!(!a.period.is_empty());
        // the period of √d ends in 2·⌊√d⌋ and is a palindrome before that
        let n = a.period.len();
        prop_assert_eq!(a.period[n - 1], 2 * root as u64);
        let body: Vec<u64> = a.period[..n - 1].to_vec();
        prop_assert_eq!(body.iter().rev().copied().collect::<Vec<_>>(), body);
    }

    #[test]
    fn mixing_then_descending(labels in proptest::collection::vec(0usize..3, 1..=3), picks in proptest::collection::vec(1usize..3, 3)) {
        let n = labels.len() as u32;
        let a = algebra(n);
        let parts = partition_from_labels(&a, &labels);
        let mut names = StandardNames::new(a);
        let xs: Vec<BSet> = picks.iter().take(parts.len()).map(|&k| names.nat(k).unwrap()).collect();
        prop_assume!(xs.len() == parts.len());
        let mut cx = TruthContext::new();
        let m = mix(&mut cx, &parts, &xs).unwrap();
        for (b, x) in parts.blocks().iter().zip(&xs) {
            prop_assert!(b.leq(&cx.truth_eq(&m, x).unwrap()));
        }
        // every name is nonempty, so [[m ≠ ∅]] = 𝟙 and m↓↑ = m
        let up = ascent(a, &descent(&mut cx, &m).unwrap()).unwrap();
        prop_assert!(cx.truth_eq(&up, &m).unwrap().is_one());
    }
}
