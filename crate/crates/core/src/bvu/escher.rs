//! Mixing, ascent and descent over a finite algebra.

use serde::Serialize;

use super::{BSet, BvuError, TruthContext};
use crate::boolalg::{BoolElem, FiniteBooleanAlgebra, Partition};

/// Upper bound on the number of atom-indexed choice functions enumerated by
/// [`descent`] and [`all_atom_mixings`].
pub const MAX_CHOICES: u128 = 1 << 16;

/// `mix_ξ b_ξ x_ξ`: domain is the union of the children of all `x_ξ`, and
/// `value(t) = ⋁_ξ (b_ξ ∧ [[t ∈ x_ξ]])`. Satisfies `[[mix = x_ξ]] ≥ b_ξ`.
pub fn mix(cx: &mut TruthContext, parts: &Partition, xs: &[BSet]) -> Result<BSet, BvuError> {
    if parts.len() != xs.len() {
        return Err(BvuError::LengthMismatch {
            parts: parts.len(),
            sets: xs.len(),
        });
    }
    let algebra = parts.algebra();
    let mut children: Vec<BSet> = Vec::new();
    for x in xs {
        for (t, _) in x.dom() {
            if !children.iter().any(|c| c.same_node(t)) {
                children.push(t.clone());
            }
        }
    }
    let mut entries = Vec::with_capacity(children.len());
    for t in children {
        let mut v = algebra.zero();
        for (b, x) in parts.blocks().iter().zip(xs) {
            v = v | (*b & cx.truth_mem(&t, x)?);
        }
        entries.push((t, v));
    }
    BSet::new(algebra, entries)
}

/// `X↑`: domain `X`, every value `𝟙`.
pub fn ascent(algebra: FiniteBooleanAlgebra, xs: &[BSet]) -> Result<BSet, BvuError> {
    BSet::new(algebra, xs.iter().map(|x| (x.clone(), algebra.one())).collect())
}

fn choice_count(sizes: impl IntoIterator<Item = usize>) -> Result<u128, BvuError> {
    let mut count: u128 = 1;
    for s in sizes {
        count = count.saturating_mul(s as u128);
        if count > MAX_CHOICES {
            return Err(BvuError::CandidateCap {
                count,
                cap: MAX_CHOICES,
            });
        }
    }
    Ok(count)
}

/// Mixes over the atom partition, one chosen set per atom, for every choice
/// function in `candidates[atom]`. No deduplication.
fn atom_choice_mixings(
    cx: &mut TruthContext,
    algebra: FiniteBooleanAlgebra,
    candidates: &[Vec<BSet>],
) -> Result<Vec<BSet>, BvuError> {
    let total = choice_count(candidates.iter().map(Vec::len))?;
    let atoms = Partition::atoms(&algebra);
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut chosen = Vec::with_capacity(candidates.len());
        for cands in candidates {
            let k = cands.len() as u128;
            chosen.push(cands[(code % k) as usize].clone());
            code /= k;
        }
        out.push(mix(cx, &atoms, &chosen)?);
    }
    Ok(out)
}

/// Keeps the first representative of each `[[· = ·]] = 𝟙` class.
fn dedupe(cx: &mut TruthContext, xs: Vec<BSet>) -> Result<Vec<BSet>, BvuError> {
    let mut reps: Vec<BSet> = Vec::new();
    for x in xs {
        let mut fresh = true;
        for r in &reps {
            if cx.truth_eq(&x, r)?.is_one() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(x);
        }
    }
    Ok(reps)
}

/// `x↓ = {y : [[y ∈ x]] = 𝟙}` up to `[[· = ·]] = 𝟙`.
///
/// Over a finite algebra every partition refines to the atoms, so the
/// atom-indexed mixings of `dom(x)` exhaust the candidates. At each atom only
/// children with that atom in `[[t ∈ x]]` can contribute.
pub fn descent(cx: &mut TruthContext, x: &BSet) -> Result<Vec<BSet>, BvuError> {
    let algebra = x.algebra();
    let mut candidates: Vec<Vec<BSet>> = vec![Vec::new(); algebra.atom_count() as usize];
    for (t, _) in x.dom() {
        let m = cx.truth_mem(t, x)?;
        for a in m.atoms() {
            candidates[a].push(t.clone());
        }
    }
    if candidates.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut members = Vec::new();
    for y in atom_choice_mixings(cx, algebra, &candidates)? {
        if cx.truth_mem(&y, x)?.is_one() {
            members.push(y);
        }
    }
    dedupe(cx, members)
}

/// `mix(X)` up to `[[· = ·]] = 𝟙`: all atom-indexed mixings of members of
/// `xs`.
pub fn all_atom_mixings(cx: &mut TruthContext, algebra: FiniteBooleanAlgebra, xs: &[BSet]) -> Result<Vec<BSet>, BvuError> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let candidates = vec![xs.to_vec(); algebra.atom_count() as usize];
    let all = atom_choice_mixings(cx, algebra, &candidates)?;
    dedupe(cx, all)
}

/// Whether two families agree as sets modulo `[[· = ·]] = 𝟙`.
pub fn same_classes(cx: &mut TruthContext, a: &[BSet], b: &[BSet]) -> Result<bool, BvuError> {
    fn covered(cx: &mut TruthContext, from: &[BSet], into: &[BSet]) -> Result<bool, BvuError> {
        for x in from {
            let mut hit = false;
            for y in into {
                if cx.truth_eq(x, y)?.is_one() {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }
    Ok(covered(cx, a, b)? && covered(cx, b, a)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct EscherReport {
    pub inputs: usize,
    /// Classes in `X↑↓`.
    pub up_down_classes: usize,
    /// Classes in `mix(X)`.
    pub mix_classes: usize,
    pub up_down_is_mix: bool,
    /// `[[X↑↓↑ = X↑]]`.
    pub down_up_truth: BoolElem,
    pub down_up_holds: bool,
}

impl EscherReport {
    pub fn passed(&self) -> bool {
        self.up_down_is_mix && self.down_up_holds
    }
}

/// Checks `X↑↓ = mix(X)` and `Y↓↑ = Y` for `Y = X↑`.
pub fn escher_check(cx: &mut TruthContext, algebra: FiniteBooleanAlgebra, xs: &[BSet]) -> Result<EscherReport, BvuError> {
    let up = ascent(algebra, xs)?;
    let up_down = descent(cx, &up)?;
    let mixes = all_atom_mixings(cx, algebra, xs)?;
    let up_down_is_mix = same_classes(cx, &up_down, &mixes)?;
    let down_up = ascent(algebra, &up_down)?;
    let down_up_truth = cx.truth_eq(&down_up, &up)?;
    Ok(EscherReport {
        inputs: xs.len(),
        up_down_classes: up_down.len(),
        mix_classes: mixes.len(),
        up_down_is_mix,
        down_up_truth,
        down_up_holds: down_up_truth.is_one(),
    })
}

/// Separated representative: children canonicalized and deduplicated modulo
/// `[[· = ·]] = 𝟙`, each value replaced by `[[t ∈ x]]`. The result is
/// `[[· = ·]]`-equal to `x`.
pub fn canonicalize(cx: &mut TruthContext, x: &BSet) -> Result<BSet, BvuError> {
    let mut kids = Vec::with_capacity(x.dom().len());
    for (t, _) in x.dom() {
        kids.push(canonicalize(cx, t)?);
    }
    let kids = dedupe(cx, kids)?;
    let mut entries = Vec::with_capacity(kids.len());
    for t in kids {
        let v = cx.truth_mem(&t, x)?;
        if !v.is_zero() {
            entries.push((t, v));
        }
    }
    BSet::new(x.algebra(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvu::{Hf, StandardNames};

    fn alg(n: u32) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(n).unwrap()
    }

    #[test]
    fn mixing_examples() {
        let a = alg(4);
        let mut names = StandardNames::new(a);
        let mut cx = TruthContext::new();
        let zero = names.nat(0).unwrap();
        let one = names.nat(1).unwrap();
        let two = names.nat(2).unwrap();

        let m = mix(&mut cx, &Partition::trivial(&a), std::slice::from_ref(&zero)).unwrap();
        assert_eq!(cx.truth_eq(&m, &zero).unwrap(), a.one());

        let lo = a.from_atoms([0, 1]).unwrap();
        let hi = a.from_atoms([2, 3]).unwrap();
        let parts = Partition::new(&a, vec![lo, hi]).unwrap();
        let m = mix(&mut cx, &parts, &[zero.clone(), one.clone()]).unwrap();
        assert_eq!(cx.truth_eq(&m, &one).unwrap(), hi);
        assert_eq!(cx.truth_eq(&m, &zero).unwrap(), lo);
        assert_eq!(cx.truth_mem(&m, &two).unwrap(), a.one());
    }

    #[test]
    fn mix_length_mismatch() {
        let a = alg(2);
        let mut cx = TruthContext::new();
        let err = mix(&mut cx, &Partition::atoms(&a), &[BSet::empty(a)]).unwrap_err();
        assert_eq!(err, BvuError::LengthMismatch { parts: 2, sets: 1 });
    }

    #[test]
    fn ascent_examples() {
        let a = alg(2);
        let mut names = StandardNames::new(a);
        let mut cx = TruthContext::new();
        let empty = names.name(&Hf::empty()).unwrap();
        let one = names.nat(1).unwrap();
        let two = names.nat(2).unwrap();
        let up = ascent(a, std::slice::from_ref(&empty)).unwrap();
        assert_eq!(cx.truth_eq(&up, &one).unwrap(), a.one());
        let up = ascent(a, &[]).unwrap();
        assert_eq!(cx.truth_eq(&up, &empty).unwrap(), a.one());
        let up = ascent(a, &[names.nat(0).unwrap(), one]).unwrap();
        assert_eq!(cx.truth_eq(&up, &two).unwrap(), a.one());
    }

    #[test]
    fn descent_examples() {
        let a = alg(2);
        let mut names = StandardNames::new(a);
        let mut cx = TruthContext::new();
        let one = names.nat(1).unwrap();
        let d = descent(&mut cx, &one).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(cx.truth_eq(&d[0], &names.nat(0).unwrap()).unwrap(), a.one());

        let two = names.nat(2).unwrap();
        let d = descent(&mut cx, &two).unwrap();
        assert_eq!(d.len(), 4);
        for y in &d {
            assert!(cx.truth_mem(y, &two).unwrap().is_one());
        }
        // exactly two of the classes are standard names
        let std_hits = d
            .iter()
            .filter(|y| {
                let z = names.nat(0).unwrap();
                let o = names.nat(1).unwrap();
                let mut cx = TruthContext::new();
                cx.truth_eq(y, &z).unwrap().is_one() || cx.truth_eq(y, &o).unwrap().is_one()
            })
            .count();
        assert_eq!(std_hits, 2);

        assert!(descent(&mut cx, &BSet::empty(a)).unwrap().is_empty());
    }

    #[test]
    fn descent_of_partially_inhabited_set_is_empty() {
        let a = alg(2);
        let mut cx = TruthContext::new();
        let e = BSet::empty(a);
        // [[∅ ∈ y]] = {0}: no member at atom 1
        let y = BSet::new(a, vec![(e, a.atom(0).unwrap())]).unwrap();
        assert!(descent(&mut cx, &y).unwrap().is_empty());
    }

    #[test]
    fn escher_examples() {
        let a = alg(2);
        let mut names = StandardNames::new(a);
        let mut cx = TruthContext::new();
        let r = escher_check(&mut cx, a, &[names.name(&Hf::empty()).unwrap()]).unwrap();
        assert!(r.passed());
        let xs = [names.nat(0).unwrap(), names.nat(1).unwrap()];
        let r = escher_check(&mut cx, a, &xs).unwrap();
        assert!(r.passed());
        assert_eq!(r.up_down_classes, 4);
        assert_eq!(r.mix_classes, 4);

        let two = names.nat(2).unwrap();
        let back = ascent(a, &descent(&mut cx, &two).unwrap()).unwrap();
        assert_eq!(cx.truth_eq(&back, &two).unwrap(), a.one());
    }

    #[test]
    fn canonical_form_is_equivalent_and_deduplicated() {
        let a = alg(2);
        let mut cx = TruthContext::new();
        let e1 = BSet::empty(a);
        let e2 = BSet::empty(a);
        let x = BSet::new(
            a,
            vec![(e1, a.atom(0).unwrap()), (e2, a.atom(1).unwrap())],
        )
        .unwrap();
        let c = canonicalize(&mut cx, &x).unwrap();
        assert_eq!(c.dom().len(), 1);
        assert!(c.dom()[0].1.is_one());
        assert_eq!(cx.truth_eq(&c, &x).unwrap(), a.one());
    }
}
