use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use bvlattice::boolalg::{law_violation, sigma_criteria_check, BoolElem, BoolElemJson, FiniteBooleanAlgebra};
use bvlattice::bvu::{check_battery_entry, eval_report, parse_formula, transfer_battery, Env};
use bvlattice::contfrac::{convergent, error_bound, expand, QuadraticSurd};
use bvlattice::lattice::{gordon_check, AtomicLattice};
use bvlattice::operators::{
    automorphism_check, bilinear_report, classify_endomorphism, derivation_space, multiplier_of, BilinOperator,
    ComplexOperator, LinOperator,
};
use bvlattice::pnfin::{pseudo_intersection, ChainSpec, DecreasingChain, DEFAULT_HORIZON};
use bvlattice::random::{self, DEFAULT_SEED};
use bvlattice::refinement::{parse_covers, refine_report};
use bvlattice::report::{RunReport, EXIT_INPUT_ERROR};
use bvlattice::suite::{run_all, SuiteConfig};

/// Largest atom count accepted on the command line.
const MAX_CLI_ATOMS: u32 = 16;

#[derive(Parser)]
#[command(name = "bvlattice", version, about = "Exact checks on finite Boolean algebras and vector lattices")]
struct Cli {
    /// Emit the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boolean algebra identities and σ-distributivity criteria.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Truth values in the Boolean-valued universe.
    #[command(subcommand)]
    Bvu(BvuCmd),
    /// Identities of the descended reals.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Linear operators on the descended reals.
    #[command(subcommand)]
    Ops(OpsCmd),
    /// Bilinear operators on the descended reals.
    #[command(subcommand)]
    Bilinear(BilinearCmd),
    /// The function refined from a list of covers.
    Refine {
        #[arg(long)]
        covers: PathBuf,
        /// Atom count, overriding the file.
        #[arg(long, value_parser = atoms_arg)]
        atoms: Option<u32>,
    },
    /// Continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Pseudo-intersections of decreasing chains.
    #[command(subcommand)]
    Pnfin(PnfinCmd),
    /// Acceptance suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Identities on all triples (sampled above 6 atoms), then the
    /// σ-distributivity forms on a matrix file or on random matrices.
    Check {
        #[arg(long, default_value_t = 3, value_parser = atoms_arg)]
        atoms: u32,
        /// JSON rows of `{"atoms":[…]}` elements.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum BvuCmd {
    /// Truth value of a formula in an environment.
    Eval {
        /// JSON object of named B-set literals, optionally wrapped as
        /// `{"atoms": N, "env": {…}}`.
        #[arg(long)]
        env: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, value_parser = atoms_arg)]
        atoms: Option<u32>,
    },
    /// Restricted transfer on the shipped battery of bounded formulas.
    Transfer {
        #[arg(long, required = true)]
        battery: bool,
        #[arg(long, default_value_t = 3, value_parser = atoms_arg)]
        atoms: u32,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Band projections of equality and order truth values on random triples.
    Gordon {
        #[arg(long, default_value_t = 4, value_parser = atoms_arg)]
        atoms: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum OpsCmd {
    /// Band preservation of a real matrix, or the endomorphism verdicts of a
    /// complex one.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Dimension of the space of derivations.
    Derivations {
        #[arg(long, value_parser = atoms_arg)]
        atoms: u32,
        /// Random Leibniz re-checks per basis element.
        #[arg(long, default_value_t = 8)]
        rechecks: usize,
    },
}

#[derive(Subcommand)]
enum BilinearCmd {
    /// Separate band preservation, symmetry and multiplier form of a tensor.
    Classify {
        #[arg(long)]
        tensor: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CfInput {
    /// A rational `p/q` in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    value: Option<String>,
    /// A quadratic surd `(p + q√d)/r` given as `p,q,r,d`.
    #[arg(long, allow_hyphen_values = true)]
    surd: Option<String>,
}

#[derive(Subcommand)]
enum CfCmd {
    /// Partial quotients under the Gauss map.
    Expand {
        #[command(flatten)]
        input: CfInput,
    },
    /// The k-th convergent and its error bound.
    Convergent {
        #[command(flatten)]
        input: CfInput,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ChainInput {
    /// Built-in family: dyadic, tails or primes-thinned.
    #[arg(long)]
    family: Option<String>,
    /// JSON `{"family": …, "params": {…}}`.
    #[arg(long)]
    chain: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PnfinCmd {
    /// The diagonal pseudo-intersection `m₁ < m₂ < …`.
    Pi {
        #[command(flatten)]
        input: ChainInput,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Every acceptance criterion.
    All {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn atoms_arg(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=MAX_CLI_ATOMS).contains(&n) {
        Ok(n)
    } else {
        Err(format!("atom count must lie in 1..={MAX_CLI_ATOMS}"))
    }
}

/// Collects the bytes that identify a run: the arguments and every file read.
struct Inputs {
    bytes: Vec<u8>,
}

impl Inputs {
    fn new() -> Self {
        let mut bytes = Vec::new();
        for a in std::env::args_os().skip(1) {
            bytes.extend_from_slice(a.to_string_lossy().as_bytes());
            bytes.push(0);
        }
        Inputs { bytes }
    }

    fn read_json(&mut self, path: &Path) -> Result<Value, String> {
        let text = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.bytes.extend_from_slice(&text);
        self.bytes.push(0);
        serde_json::from_slice(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Algebra(AlgebraCmd::Check { .. }) => "algebra check",
        Command::Bvu(BvuCmd::Eval { .. }) => "bvu eval",
        Command::Bvu(BvuCmd::Transfer { .. }) => "bvu transfer",
        Command::Lattice(LatticeCmd::Gordon { .. }) => "lattice gordon",
        Command::Ops(OpsCmd::Classify { .. }) => "ops classify",
        Command::Ops(OpsCmd::Derivations { .. }) => "ops derivations",
        Command::Bilinear(BilinearCmd::Classify { .. }) => "bilinear classify",
        Command::Refine { .. } => "refine",
        Command::Cf(CfCmd::Expand { .. }) => "cf expand",
        Command::Cf(CfCmd::Convergent { .. }) => "cf convergent",
        Command::Pnfin(PnfinCmd::Pi { .. }) => "pnfin pi",
        Command::Suite(SuiteCmd::All { .. }) => "suite all",
    }
}

fn dispatch(cli: &Cli, inputs: &mut Inputs, r: &mut RunReport) -> Result<(), String> {
    let seed = cli.seed;
    match &cli.command {
        Command::Algebra(AlgebraCmd::Check { atoms, matrix, trials }) => {
            let algebra = FiniteBooleanAlgebra::new(*atoms).map_err(err)?;
            algebra_check(algebra, matrix.as_deref(), *trials, seed, inputs, r)
        }
        Command::Bvu(BvuCmd::Eval { env, formula, atoms }) => {
            let v = inputs.read_json(env)?;
            let f = parse_formula(formula).map_err(|e| format!("formula: {e}"))?;
            let (atoms_field, bindings) = match v.get("env") {
                Some(inner) => (v.get("atoms"), inner),
                None => (None, &v),
            };
            let n = match (atoms, atoms_field) {
                (Some(n), _) => *n,
                (None, Some(a)) => a
                    .as_u64()
                    .and_then(|a| u32::try_from(a).ok())
                    .ok_or_else(|| format!("{}: \"atoms\" must be a natural number", env.display()))?,
                (None, None) => inferred_atoms(bindings),
            };
            let algebra = FiniteBooleanAlgebra::new(n).map_err(err)?;
            let env = Env::from_json(algebra, bindings).map_err(err)?;
            let report = eval_report(&f, &env).map_err(err)?;
            r.output(json!({ "formula": f.to_string(), "atoms": n, "truth": report.value, "witness": report.witness }));
            Ok(())
        }
        Command::Bvu(BvuCmd::Transfer { atoms, .. }) => {
            let algebra = FiniteBooleanAlgebra::new(*atoms).map_err(err)?;
            let (h_env, entries) = transfer_battery();
            for entry in &entries {
                let t = check_battery_entry(entry, &h_env, algebra).map_err(err)?;
                let pass = t.pass && t.classical == entry.expected;
                r.verdict(entry.formula, pass, (!pass).then(|| to_value(&t)));
            }
            Ok(())
        }
        Command::Lattice(LatticeCmd::Gordon { atoms, trials }) => {
            let lattice = AtomicLattice::new(*atoms).map_err(err)?;
            let mut rng = random::rng(seed);
            let mut witness = None;
            for trial in 0..*trials {
                let b = random::elem(&mut rng, &lattice.algebra());
                let x = random::vector(&mut rng, lattice.atom_count());
                let y = random::vector(&mut rng, lattice.atom_count());
                let g = gordon_check(&lattice, b, &x, &y).map_err(err)?;
                if !g.passed() {
                    witness = Some(json!({ "trial": trial, "b": b, "x": x, "y": y, "report": g }));
                    break;
                }
            }
            r.verdict(format!("gordon identities on {trials} triples"), witness.is_none(), witness);
            Ok(())
        }
        Command::Ops(OpsCmd::Classify { matrix }) => {
            let v = inputs.read_json(matrix)?;
            let complex = v.as_array().into_iter().flatten().flat_map(|row| row.as_array()).flatten().any(Value::is_array);
            if complex {
                classify_complex(&ComplexOperator::from_json(&v).map_err(err)?, r)
            } else {
                classify_real(&LinOperator::from_json(&v).map_err(err)?, r)
            }
        }
        Command::Ops(OpsCmd::Derivations { atoms, rechecks }) => {
            let mut rng = random::rng(seed);
            let s = derivation_space(*atoms as usize, *rechecks, &mut rng).map_err(err)?;
            r.verdict(format!("dimension={}", s.dimension), s.dimension == 0, None);
            r.verdict("leibniz rechecks", s.rechecks_pass, None);
            r.output(to_value(&s));
            Ok(())
        }
        Command::Bilinear(BilinearCmd::Classify { tensor }) => {
            let b = BilinOperator::from_json(&inputs.read_json(tensor)?).map_err(err)?;
            let report = bilinear_report(&b).map_err(err)?;
            if b.dim() <= 4 {
                let brute = b.brute_force_separately_band_preserving().map_err(err)?;
                r.verdict("projection criterion agrees", brute == report.separately_band_preserving, None);
            }
            r.verdict("symmetric, orthosymmetric, multiplier form", report.consistent(), None);
            r.output(to_value(&report));
            Ok(())
        }
        Command::Refine { covers, atoms } => {
            let v = inputs.read_json(covers)?;
            let (algebra, covers) = parse_covers(&v, *atoms).map_err(err)?;
            let report = refine_report(&algebra, &covers).map_err(err)?;
            for (i, c) in report.certificates.iter().enumerate() {
                r.verdict(format!("cover {i} refined at level {}", c.level), c.level_refined && c.g_refined, None);
            }
            for s in &report.separation {
                r.verdict(format!("separation at level {}", s.level), s.holds, None);
            }
            r.verdict("sibling rule", report.sibling_rule, None);
            r.output(to_value(&report));
            Ok(())
        }
        Command::Cf(CfCmd::Expand { input }) => {
            let t = surd_input(input)?;
            r.output(to_value(&expand(&t).map_err(err)?));
            Ok(())
        }
        Command::Cf(CfCmd::Convergent { input, k }) => {
            let t = surd_input(input)?;
            let a = expand(&t).map_err(err)?;
            let c = convergent(&a, *k).map_err(err)?;
            if *k >= 1 {
                let b = error_bound(&t, &a, *k).map_err(err)?;
                r.verdict(format!("|t − p_{k}/q_{k}| < 1/q_{k}²"), b.holds, None);
            }
            r.output(json!({ "k": k, "convergent": bvlattice::rational::format_rational(&c) }));
            Ok(())
        }
        Command::Pnfin(PnfinCmd::Pi { input, count, horizon }) => {
            let chain = match (&input.family, &input.chain) {
                (Some(name), _) => DecreasingChain::builtin(name).map_err(err)?,
                (None, Some(path)) => {
                    let spec: ChainSpec = serde_json::from_value(inputs.read_json(path)?)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    spec.build().map_err(err)?
                }
                (None, None) => unreachable!("clap requires one chain source"),
            };
            let pi = pseudo_intersection(&chain, *count, *horizon).map_err(err)?;
            let increasing = pi.values.windows(2).all(|w| w[0] < w[1]);
            r.verdict("strictly increasing", increasing, None);
            r.verdict(
                format!("tail pairs checked={}", pi.tail_pairs_checked),
                pi.tail_pairs_checked == count * (count + 1) / 2,
                None,
            );
            // u128 exceeds what JSON numbers carry exactly
            let values: Vec<String> = pi.values.iter().map(u128::to_string).collect();
            r.output(json!({ "chain": chain.name(), "values": values, "horizon": pi.horizon, "decreasing": pi.decreasing }));
            Ok(())
        }
        Command::Suite(SuiteCmd::All { trials }) => {
            let results = run_all(&SuiteConfig { seed, trials: *trials });
            for c in &results {
                r.verdict(format!("criterion {} {}", c.id, c.name), c.pass, Some(Value::String(c.detail.clone())));
            }
            Ok(())
        }
    }
}

/// One more than the largest atom index mentioned, at least one.
fn inferred_atoms(v: &Value) -> u32 {
    fn walk(v: &Value, max: &mut Option<u64>) {
        match v {
            Value::Object(m) => {
                if let Some(Value::Array(atoms)) = m.get("atoms") {
                    for a in atoms.iter().filter_map(Value::as_u64) {
                        *max = Some(max.map_or(a, |m| m.max(a)));
                    }
                }
                m.values().for_each(|c| walk(c, max));
            }
            Value::Array(items) => items.iter().for_each(|c| walk(c, max)),
            _ => {}
        }
    }
    let mut max = None;
    walk(v, &mut max);
    max.map_or(1, |m| u32::try_from(m + 1).unwrap_or(u32::MAX))
}

fn algebra_check(
    algebra: FiniteBooleanAlgebra,
    matrix: Option<&Path>,
    trials: usize,
    seed: u64,
    inputs: &mut Inputs,
    r: &mut RunReport,
) -> Result<(), String> {
    let mut rng = random::rng(seed);
    let elems: Vec<BoolElem> = if algebra.atom_count() <= 6 {
        algebra.elements().collect()
    } else {
        (0..40).map(|_| random::elem(&mut rng, &algebra)).collect()
    };
    let v = law_violation(&elems);
    r.verdict(format!("identities on {} elements", elems.len()), v.is_none(), v.map(|v| to_value(&v)));

    let matrices: Vec<Vec<Vec<BoolElem>>> = match matrix {
        Some(path) => vec![parse_matrix(&algebra, &inputs.read_json(path)?)?],
        None => (0..trials)
            .map(|_| {
                let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                (0..rows).map(|_| (0..cols).map(|_| random::elem(&mut rng, &algebra)).collect()).collect()
            })
            .collect(),
    };
    let mut failure = None;
    for (i, m) in matrices.iter().enumerate() {
        let s = sigma_criteria_check(&algebra, m).map_err(err)?;
        if matrix.is_some() {
            r.output(to_value(&s));
        }
        if !s.all_hold() {
            failure = Some(json!({ "matrix": i, "report": s }));
            break;
        }
    }
    r.verdict(format!("σ-distributivity forms on {} matrices", matrices.len()), failure.is_none(), failure);
    Ok(())
}

fn parse_matrix(algebra: &FiniteBooleanAlgebra, v: &Value) -> Result<Vec<Vec<BoolElem>>, String> {
    let rows = v.as_array().ok_or("matrix: expected an array of rows")?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| format!("matrix[{i}]: expected an array"))?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, e)| {
                serde_json::from_value::<BoolElemJson>(e.clone())
                    .map_err(err)
                    .and_then(|e| e.into_elem(algebra).map_err(err))
                    .map_err(|e| format!("matrix[{i}][{j}]: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    if let Some(i) = out.iter().position(|row| row.len() != out[0].len()) {
        return Err(format!("matrix[{i}]: row length {} differs from {}", out[i].len(), out[0].len()));
    }
    Ok(out)
}

fn classify_real(t: &LinOperator, r: &mut RunReport) -> Result<(), String> {
    let direct = t.is_band_preserving();
    let projections = if t.dim() <= 16 { Some(t.commutes_with_all_projections().map_err(err)?) } else { None };
    if let Some(p) = projections {
        r.verdict("projection criterion agrees", p == direct, None);
    }
    let multiplier = multiplier_of(t).ok();
    r.verdict("band preserving iff multiplication", direct == multiplier.is_some(), None);
    r.output(json!({
        "band_preserving": direct,
        "off_diagonal_entry": t.first_off_diagonal(),
        "multiplier": multiplier,
    }));
    Ok(())
}

fn classify_complex(t: &ComplexOperator, r: &mut RunReport) -> Result<(), String> {
    let endo = classify_endomorphism(t).map_err(err)?;
    let auto = automorphism_check(t).map_err(err)?;
    r.verdict("projection criterion agrees", t.commutes_with_all_projections().map_err(err)? == t.is_band_preserving(), None);
    r.output(json!({ "endomorphism": endo, "automorphism": auto }));
    Ok(())
}

fn surd_input(input: &CfInput) -> Result<QuadraticSurd, String> {
    match (&input.value, &input.surd) {
        (Some(v), _) => QuadraticSurd::parse_rational(v).map_err(err),
        (None, Some(s)) => QuadraticSurd::parse(s).map_err(err),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    let name = command_name(&cli.command);
    let mut inputs = Inputs::new();
    let mut report = RunReport::new(name, b"", cli.seed);
    let outcome = dispatch(&cli, &mut inputs, &mut report);
    let report = match outcome {
        Ok(()) => RunReport {
            inputs: bvlattice::report::digest(&inputs.bytes),
            ..report
        },
        Err(message) => RunReport::input_error(name, &inputs.bytes, cli.seed, message),
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        report.to_text()
    };
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.exit_code as u8)
}
