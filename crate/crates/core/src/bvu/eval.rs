//! Truth values of formulas, classical evaluation over hereditarily finite
//! sets, and the restricted-transfer battery.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::{parse_formula, BSet, BvuError, Formula, Hf, StandardNames, TruthContext};
use crate::boolalg::{BoolElem, FiniteBooleanAlgebra};

/// Named B-sets; all must live over one algebra.
#[derive(Debug, Clone, Default)]
pub struct Env {
    bindings: BTreeMap<String, BSet>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, set: BSet) -> &mut Self {
        self.bindings.insert(name.into(), set);
        self
    }

    pub fn with(mut self, name: impl Into<String>, set: BSet) -> Self {
        self.bind(name, set);
        self
    }

    pub fn get(&self, name: &str) -> Option<&BSet> {
        self.bindings.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn algebra(&self) -> Option<FiniteBooleanAlgebra> {
        self.bindings.values().next().map(BSet::algebra)
    }

    /// Standard names of a hereditarily finite environment.
    pub fn standard(algebra: FiniteBooleanAlgebra, h_env: &HfEnv) -> Result<Self, BvuError> {
        let mut names = StandardNames::new(algebra);
        let mut env = Env::new();
        for (k, h) in h_env {
            env.bind(k.clone(), names.name(h)?);
        }
        Ok(env)
    }

    /// Parses a JSON object mapping names to B-set literals.
    pub fn from_json(algebra: FiniteBooleanAlgebra, v: &Value) -> Result<Self, BvuError> {
        let obj = v
            .as_object()
            .ok_or_else(|| BvuError::Json("environment must be a JSON object".into()))?;
        let mut env = Env::new();
        for (k, lit) in obj {
            env.bind(k.clone(), BSet::from_json(algebra, lit)?);
        }
        Ok(env)
    }
}

pub type HfEnv = BTreeMap<String, Hf>;

/// A dom element of the outermost existential bound whose contribution
/// alone attains the truth value (finite-candidate maximum principle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub variable: String,
    pub bound: String,
    /// Position in `dom` of the bounding set.
    pub dom_index: usize,
    pub contribution: BoolElem,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub value: BoolElem,
    pub witness: Option<Witness>,
}

struct Evaluator<'a> {
    env: &'a Env,
    scope: Vec<(String, BSet)>,
    cx: TruthContext,
    algebra: FiniteBooleanAlgebra,
}

impl Evaluator<'_> {
    fn resolve(&self, name: &str) -> Result<BSet, BvuError> {
        if let Some((_, s)) = self.scope.iter().rev().find(|(n, _)| n == name) {
            return Ok(s.clone());
        }
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| BvuError::Unbound(name.to_string()))
    }

    fn eval(&mut self, f: &Formula) -> Result<BoolElem, BvuError> {
        Ok(match f {
            Formula::Eq(a, b) => {
                let (x, y) = (self.resolve(a)?, self.resolve(b)?);
                self.cx.truth_eq(&x, &y)?
            }
            Formula::Mem(a, b) => {
                let (x, y) = (self.resolve(a)?, self.resolve(b)?);
                self.cx.truth_mem(&x, &y)?
            }
            Formula::Not(g) => !self.eval(g)?,
            Formula::And(a, b) => self.eval(a)? & self.eval(b)?,
            Formula::Or(a, b) => self.eval(a)? | self.eval(b)?,
            Formula::Implies(a, b) => self.eval(a)?.implies(&self.eval(b)?),
            Formula::Iff(a, b) => self.eval(a)?.iff(&self.eval(b)?),
            Formula::Forall { var, bound, body } => {
                let mut acc = self.algebra.one();
                for (zt, v) in self.instances(var, bound, body)? {
                    acc = acc & zt.implies(&v);
                }
                acc
            }
            Formula::Exists { var, bound, body } => {
                let mut acc = self.algebra.zero();
                for (zt, v) in self.instances(var, bound, body)? {
                    acc = acc | (zt & v);
                }
                acc
            }
        })
    }

    /// `(z(t), [[φ(t)]])` for each `t ∈ dom z`, in dom order.
    fn instances(&mut self, var: &str, bound: &str, body: &Formula) -> Result<Vec<(BoolElem, BoolElem)>, BvuError> {
        let z = self.resolve(bound)?;
        let mut out = Vec::with_capacity(z.dom().len());
        for (t, zt) in z.dom() {
            self.scope.push((var.to_string(), t.clone()));
            let v = self.eval(body);
            self.scope.pop();
            out.push((*zt, v?));
        }
        Ok(out)
    }
}

fn check_algebra(env: &Env) -> Result<FiniteBooleanAlgebra, BvuError> {
    let algebra = env.algebra().ok_or(BvuError::EmptyEnv)?;
    for name in env.names() {
        let s = env.get(name).expect("listed name");
        if s.algebra() != algebra {
            return Err(crate::boolalg::BoolAlgError::Mismatch {
                left: algebra.atom_count(),
                right: s.algebra().atom_count(),
            }
            .into());
        }
    }
    Ok(algebra)
}

/// `[[f]]` under `env`.
pub fn eval(f: &Formula, env: &Env) -> Result<BoolElem, BvuError> {
    Ok(eval_report(f, env)?.value)
}

/// `[[f]]` together with a witness when `f` is an existential.
pub fn eval_report(f: &Formula, env: &Env) -> Result<EvalReport, BvuError> {
    for name in f.free_names() {
        if env.get(&name).is_none() {
            return Err(BvuError::Unbound(name));
        }
    }
    let algebra = check_algebra(env)?;
    let mut ev = Evaluator {
        env,
        scope: Vec::new(),
        cx: TruthContext::new(),
        algebra,
    };
    let value = ev.eval(f)?;
    let witness = match f {
        Formula::Exists { var, bound, body } => {
            let z = ev.resolve(bound)?;
            let mut found = None;
            for (i, (t, zt)) in z.dom().iter().enumerate() {
                ev.scope.push((var.clone(), t.clone()));
                let v = ev.eval(body);
                ev.scope.pop();
                let contribution = *zt & v?;
                if contribution == value {
                    found = Some(Witness {
                        variable: var.clone(),
                        bound: bound.clone(),
                        dom_index: i,
                        contribution,
                    });
                    break;
                }
            }
            found
        }
        _ => None,
    };
    Ok(EvalReport { value, witness })
}

/// Classical truth of `f` over hereditarily finite sets.
pub fn eval_classical(f: &Formula, env: &HfEnv) -> Result<bool, BvuError> {
    fn go(f: &Formula, env: &HfEnv, scope: &mut Vec<(String, Hf)>) -> Result<bool, BvuError> {
        let resolve = |name: &str, scope: &Vec<(String, Hf)>| -> Result<Hf, BvuError> {
            scope
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, h)| h.clone())
                .or_else(|| env.get(name).cloned())
                .ok_or_else(|| BvuError::Unbound(name.to_string()))
        };
        Ok(match f {
            Formula::Eq(a, b) => resolve(a, scope)? == resolve(b, scope)?,
            Formula::Mem(a, b) => resolve(b, scope)?.contains(&resolve(a, scope)?),
            Formula::Not(g) => !go(g, env, scope)?,
            Formula::And(a, b) => go(a, env, scope)? && go(b, env, scope)?,
            Formula::Or(a, b) => go(a, env, scope)? || go(b, env, scope)?,
            Formula::Implies(a, b) => !go(a, env, scope)? || go(b, env, scope)?,
            Formula::Iff(a, b) => go(a, env, scope)? == go(b, env, scope)?,
            Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
                let universal = matches!(f, Formula::Forall { .. });
                let z = resolve(bound, scope)?;
                let mut result = universal;
                for t in z.elements() {
                    scope.push((var.clone(), t.clone()));
                    let v = go(body, env, scope);
                    scope.pop();
                    if v? != universal {
                        result = !universal;
                        break;
                    }
                }
                result
            }
        })
    }
    go(f, env, &mut Vec::new())
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub formula: String,
    pub classical: bool,
    pub truth: BoolElem,
    pub two_valued: bool,
    pub pass: bool,
}

/// Compares the classical truth of a bounded formula with its truth value on
/// standard names: they must agree (`true ⟺ 𝟙`) and the value must be `𝟘`
/// or `𝟙`.
pub fn bounded_transfer_check(
    f: &Formula,
    h_env: &HfEnv,
    algebra: FiniteBooleanAlgebra,
) -> Result<TransferReport, BvuError> {
    let classical = eval_classical(f, h_env)?;
    let env = Env::standard(algebra, h_env)?;
    let truth = eval(f, &env)?;
    let two_valued = truth.is_zero() || truth.is_one();
    Ok(TransferReport {
        formula: f.to_string(),
        classical,
        truth,
        two_valued,
        pass: two_valued && (classical == truth.is_one()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryEntry {
    pub formula: &'static str,
    /// Classical truth, worked out by hand.
    pub expected: bool,
}

const BATTERY: &[(&str, bool)] = &[
    ("empty in one", true),
    ("forall t in two : t in two", true),
    ("one in empty", false),
    ("!(empty = one)", true),
    ("one in two & two in three", true),
    ("forall t in three : forall s in t : s in three", true),
    ("exists t in three : t = two", true),
    ("exists t in two : two in t", false),
    ("forall t in three : !(t in t)", true),
    ("s1 = one", false),
    ("exists t in s1 : t = one", true),
    ("forall t in p : t in three", true),
    ("p = two", false),
    ("exists t in p : exists u in t : u = one", true),
    ("forall t in three : forall u in three : t in u | t = u | u in t", true),
    ("forall t in one : t = empty", true),
    ("exists t in empty : t = t", false),
    ("two in p -> one in p", false),
    ("one in p -> empty in p", true),
    ("forall t in two : exists u in three : t in u", true),
    ("exists t in three : forall u in t : u in one", true),
    ("forall t in p : exists u in s1 : t in u | t = u", false),
    ("(forall t in two : t in three) & !(three in two)", true),
    ("exists t in three : exists u in three : !(t = u) & !(t in u) & !(u in t)", false),
    ("forall t in s1 : forall u in t : u = empty", true),
    ("exists t in p : t = empty & !(t in p -> t = two)", true),
];

/// The shipped bounded formulas with their hereditarily finite environment:
/// `empty = 0`, `one = 1`, `two = 2`, `three = 3`, `s1 = {1}`, `p = {0, 2}`.
pub fn transfer_battery() -> (HfEnv, Vec<BatteryEntry>) {
    let mut env = HfEnv::new();
    env.insert("empty".into(), Hf::empty());
    env.insert("one".into(), Hf::nat(1));
    env.insert("two".into(), Hf::nat(2));
    env.insert("three".into(), Hf::nat(3));
    env.insert("s1".into(), Hf::singleton(Hf::nat(1)));
    env.insert("p".into(), Hf::pair(Hf::nat(0), Hf::nat(2)));
    let entries = BATTERY
        .iter()
        .map(|&(formula, expected)| BatteryEntry { formula, expected })
        .collect();
    (env, entries)
}

/// Parses and checks one battery entry.
pub fn check_battery_entry(
    entry: &BatteryEntry,
    h_env: &HfEnv,
    algebra: FiniteBooleanAlgebra,
) -> Result<TransferReport, BvuError> {
    bounded_transfer_check(&parse_formula(entry.formula)?, h_env, algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvu::Hf;

    fn standard_env(a: FiniteBooleanAlgebra) -> Env {
        let mut names = StandardNames::new(a);
        Env::new()
            .with("empty", names.name(&Hf::empty()).unwrap())
            .with("zero", names.nat(0).unwrap())
            .with("one", names.nat(1).unwrap())
            .with("two", names.nat(2).unwrap())
    }

    #[test]
    fn eval_examples() {
        let a = FiniteBooleanAlgebra::new(3).unwrap();
        let env = standard_env(a);
        let v = |s: &str| eval(&parse_formula(s).unwrap(), &env).unwrap();
        assert_eq!(v("forall t in one : t = empty"), a.one());
        assert_eq!(v("exists t in empty : t = t"), a.zero());
        assert_eq!(v("!(zero = one)"), a.one());
        assert_eq!(v("one in two -> two in one"), a.zero());
    }

    #[test]
    fn quantifiers_weight_by_membership_values() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        let mut names = StandardNames::new(a);
        let b = a.atom(0).unwrap();
        let zero = names.nat(0).unwrap();
        let one = names.nat(1).unwrap();
        // y = {0^ ↦ b, 1^ ↦ b*}
        let y = BSet::new(a, vec![(zero.clone(), b), (one.clone(), !b)]).unwrap();
        let env = Env::new().with("y", y).with("zero", zero).with("one", one);
        let v = |s: &str| eval(&parse_formula(s).unwrap(), &env).unwrap();
        assert_eq!(v("forall t in y : t = zero"), b);
        assert_eq!(v("exists t in y : t = one"), !b);
        assert_eq!(v("exists t in y : t = t"), a.one());
    }

    #[test]
    fn existential_reports_witness() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        let env = standard_env(a);
        let r = eval_report(&parse_formula("exists t in two : t = one").unwrap(), &env).unwrap();
        assert_eq!(r.value, a.one());
        let w = r.witness.unwrap();
        assert_eq!(w.contribution, a.one());
        assert_eq!(w.variable, "t");
        // a split value has no single-candidate witness
        let b = a.atom(0).unwrap();
        let mut names = StandardNames::new(a);
        let y = BSet::new(a, vec![(names.nat(0).unwrap(), b), (names.nat(1).unwrap(), !b)]).unwrap();
        let env = Env::new().with("y", y);
        let r = eval_report(&parse_formula("exists t in y : t = t").unwrap(), &env).unwrap();
        assert_eq!(r.value, a.one());
        assert!(r.witness.is_none());
    }

    #[test]
    fn unbound_names_are_input_errors() {
        let a = FiniteBooleanAlgebra::new(1).unwrap();
        let env = standard_env(a);
        let err = eval(&parse_formula("nope in one").unwrap(), &env).unwrap_err();
        assert_eq!(err, BvuError::Unbound("nope".into()));
        let err = eval(&parse_formula("one in one").unwrap(), &Env::new()).unwrap_err();
        assert_eq!(err, BvuError::Unbound("one".into()));
    }

    #[test]
    fn bound_variable_shadows_environment() {
        let a = FiniteBooleanAlgebra::new(1).unwrap();
        let env = standard_env(a);
        let f = parse_formula("forall one in two : one in two").unwrap();
        assert_eq!(eval(&f, &env).unwrap(), a.one());
    }

    #[test]
    fn classical_battery_expectations() {
        let (env, entries) = transfer_battery();
        assert!(entries.len() >= 20);
        for e in &entries {
            let f = parse_formula(e.formula).unwrap();
            assert_eq!(eval_classical(&f, &env).unwrap(), e.expected, "{}", e.formula);
        }
    }

    #[test]
    fn transfer_examples() {
        let a = FiniteBooleanAlgebra::new(3).unwrap();
        let (env, _) = transfer_battery();
        for (s, classical) in [
            ("empty in one", true),
            ("forall t in two : t in two", true),
            ("one in empty", false),
        ] {
            let r = bounded_transfer_check(&parse_formula(s).unwrap(), &env, a).unwrap();
            assert!(r.pass, "{s}");
            assert_eq!(r.classical, classical);
            assert_eq!(r.truth.is_one(), classical);
        }
    }

    #[test]
    fn env_from_json() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        let v: Value = serde_json::from_str(r#"{"one":{"hf":[[]]},"empty":{"hf":[]}}"#).unwrap();
        let env = Env::from_json(a, &v).unwrap();
        let f = parse_formula("empty in one").unwrap();
        assert_eq!(eval(&f, &env).unwrap(), a.one());
    }
}
