//! Command-line front end. `run` returns the rendered output and exit code
//! so the binary stays a thin wrapper.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{self, ClassificationReport, Property, Rule, Tri};
use crate::cyclic::{self, AtomDescription, Budget, ExponentCap, SigmaResult};
use crate::exact::rational::format_big;
use crate::exact::{AlgebraicReal, MinimalPair, Rational};
use crate::factorization::{FactorizationSet, LengthSet};
use crate::families::{unit_fraction, FamilyError, IntervalMonoid, UnitFractionScheme};
use crate::fg::FgMonoid;
use crate::par::Exec;
use crate::spec::{parse_vector, MonoidSpec, SpecFile};

#[derive(Debug, Parser)]
#[command(name = "posmon", version, about = "Atoms, factorizations and factorization properties of positive monoids")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BudgetArgs {
    /// Largest quotient degree in the antimatter witness search.
    #[arg(long, default_value_t = 8)]
    pub budget_deg: usize,
    /// Largest quotient coefficient height in the antimatter witness search.
    #[arg(long, default_value_t = 64)]
    pub budget_height: u64,
    /// Largest exponent tried when computing sigma.
    #[arg(long, default_value_t = 10)]
    pub sigma_max: usize,
    /// Node limit of each search.
    #[arg(long, default_value_t = 250_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    /// Run searches on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            witness_degree: self.budget_deg,
            witness_height: self.budget_height,
            sigma_max: self.sigma_max,
            node_limit: self.budget_nodes,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide atomicity, ACCP, BFM, FFM, HFM, UFM and rank.
    Classify {
        spec: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Describe the atoms.
    Atoms {
        spec: PathBuf,
        /// How many atoms to list for infinite atom sets.
        #[arg(long, default_value_t = 8)]
        limit: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate the factorizations of an element.
    Factorize {
        spec: PathBuf,
        /// A rational "a/b", or comma-separated coordinates for fg monoids.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Highest exponent used for cyclic semirings.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// The set of lengths of an element.
    Lengths {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Least exponent n with alpha^n generated by lower powers.
    Sigma {
        spec: PathBuf,
        /// Largest exponent searched.
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Sign split of the minimal polynomial.
    MinimalPair { spec: PathBuf },
    /// Canonical decomposition in a unit-fraction monoid.
    Decompose {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Whether an element lies in the monoid.
    Member {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Spec { path: String, source: crate::spec::SpecError },
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

/// Everything a command prints.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: String,
    /// 0 when everything asked was decided, 2 otherwise.
    pub code: i32,
}

impl Output {
    fn new(text: String, value: &impl Serialize, decided: bool) -> Self {
        let json = serde_json::to_string_pretty(value).expect("results serialize");
        Output { text, json, code: if decided { 0 } else { 2 } }
    }

    pub fn rendered(&self, json: bool) -> &str {
        if json {
            &self.json
        } else {
            &self.text
        }
    }
}

pub fn load(path: &PathBuf) -> Result<MonoidSpec, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: shown.clone(), source })?;
    SpecFile::parse(&text).and_then(|doc| doc.build()).map_err(|source| CliError::Spec { path: shown, source })
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Classify { spec, budget } => {
            let m = load(spec)?;
            let report = classify::classify(&m, &budget.budget()).map_err(|e| CliError::Internal(e.to_string()))?;
            let decided = report.verdicts.values().all(|v| v.value != Tri::Unknown);
            Ok(Output::new(render_report(&report), &report, decided))
        }
        Command::Atoms { spec, limit, budget } => atoms(&load(spec)?, *limit, &budget.budget()),
        Command::Factorize { spec, element, cap } => {
            let set = factorize(&load(spec)?, element, *cap)?;
            let decided = set.complete;
            Ok(Output::new(
                render_factorizations(&set),
                &json!({"command": "factorize", "element": element, "result": set}),
                decided,
            ))
        }
        Command::Lengths { spec, element, cap } => {
            let l = lengths(&load(spec)?, element, *cap)?;
            let text = format!("L({element}) = {}{}\n", braces(&l.lengths), if l.complete { "" } else { " (partial)" });
            let decided = l.complete;
            Ok(Output::new(text, &json!({"command": "lengths", "element": element, "result": l}), decided))
        }
        Command::Sigma { spec, max } => {
            let a = cyclic_alpha(&load(spec)?)?;
            let s = cyclic::sigma(&a, *max, &Budget::default()).map_err(input)?;
            let (text, decided) = match &s {
                SigmaResult::Finite { sigma, coefficients } => {
                    let terms: Vec<String> = coefficients
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                        .map(|(j, c)| match (j, num_traits::One::is_one(c)) {
                            (0, _) => c.to_string(),
                            (_, true) => cyclic::power(j),
                            _ => format!("{c}·{}", cyclic::power(j)),
                        })
                        .collect();
                    (format!("σ = {sigma}: {} = {}\n", cyclic::power(*sigma), terms.join(" + ")), true)
                }
                SigmaResult::AtLeast { checked } => (format!("σ ≥ {} (search exhausted)\n", checked + 1), false),
                SigmaResult::Infinite { reason } => (format!("σ = ∞ ({reason})\n"), true),
            };
            Ok(Output::new(text, &json!({"command": "sigma", "result": s}), decided))
        }
        Command::MinimalPair { spec } => {
            let a = cyclic_alpha(&load(spec)?)?;
            let pair = MinimalPair::of(&a).map_err(input)?;
            let text = format!("ℓ = {}\np(x) = {}\nq(x) = {}\n", pair.scale, pair.plus_part, pair.minus_part);
            Ok(Output::new(text, &json!({"command": "minimal-pair", "result": pair}), true))
        }
        Command::Decompose { spec, element } => {
            let MonoidSpec::UnitFraction(scheme) = load(spec)? else {
                return Err(input("decompose needs a unit_fraction monoid"));
            };
            let q: Rational = element.parse().map_err(input)?;
            let c = unit_fraction::decompose(&scheme, q.as_big()).map_err(input)?;
            let member = !num_traits::Signed::is_negative(&c.integer_part);
            let terms: Vec<String> =
                c.residues.iter().zip(&c.moduli).filter(|(r, _)| **r != 0).map(|(r, d)| format!("{r}/{d}")).collect();
            let mut text = format!("{q} = {}", c.integer_part);
            for t in &terms {
                text.push_str(&format!(" + {t}"));
            }
            text.push('\n');
            if member {
                text.push_str(&format!("N = {}, S = {}\n", c.integer_part, c.digit_sum));
            } else {
                text.push_str("not in the monoid: the integer part is negative\n");
            }
            let v = json!({"command": "decompose", "element": q, "member": member, "result": c});
            Ok(Output::new(text, &v, true))
        }
        Command::Member { spec, element, cap } => member(&load(spec)?, element, *cap),
    }
}

fn braces(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn rule_tag(rule: Rule) -> String {
    serde_json::to_value(rule).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn render_report(r: &ClassificationReport) -> String {
    let mut out = String::new();
    for p in Property::ALL {
        let v = r.verdict(p);
        out.push_str(&format!("{}: {} ({}: {})\n", p, v.value, rule_tag(v.provenance.rule), v.provenance.detail));
    }
    out.push_str(&format!("rank: {}\n", r.rank));
    if r.trust.irreducibility_asserted {
        out.push_str("trust: irreducibility of a minimal polynomial of degree >= 5 was asserted, not verified\n");
    }
    if r.trust.independence_declared {
        out.push_str("trust: basis independence was declared, not verified\n");
    }
    out
}

fn render_factorizations(set: &FactorizationSet) -> String {
    let mut out = String::new();
    for f in &set.factorizations {
        let parts: Vec<String> = f.multiplicities.iter().map(u64::to_string).collect();
        out.push_str(&format!("({})  length {}\n", parts.join(", "), f.length));
    }
    out.push_str(&format!(
        "{} factorization{}{}\n",
        set.len(),
        if set.len() == 1 { "" } else { "s" },
        if set.complete { "" } else { " (truncated: more may exist beyond the cap)" }
    ));
    out
}

fn cyclic_alpha(m: &MonoidSpec) -> Result<AlgebraicReal, CliError> {
    match m {
        MonoidSpec::Cyclic(a) => Ok(a.clone()),
        other => Err(input(format!("this command needs a cyclic monoid, got {}", other.kind()))),
    }
}

fn rational_element(element: &str) -> Result<Rational, CliError> {
    element.trim().parse().map_err(input)
}

fn fg_of(m: &MonoidSpec) -> Option<FgMonoid> {
    match m {
        MonoidSpec::Fg(f) => Some(f.clone()),
        MonoidSpec::UnitFraction(UnitFractionScheme::ExplicitList(v)) => Some(classify::explicit_unit_fractions(v)),
        _ => None,
    }
}

fn exponent_cap(cap: Option<usize>) -> ExponentCap {
    cap.map_or(ExponentCap::Auto, ExponentCap::Fixed)
}

fn factorize(m: &MonoidSpec, element: &str, cap: Option<usize>) -> Result<FactorizationSet, CliError> {
    if let Some(f) = fg_of(m) {
        let x = parse_vector(element).map_err(input)?;
        return f.factorizations(&x, Exec::Parallel).map_err(input);
    }
    match m {
        MonoidSpec::Cyclic(AlgebraicReal::Rational(q)) => {
            let x = rational_element(element)?;
            cyclic::factorizations(q, &x, exponent_cap(cap), Exec::Parallel).map_err(input)
        }
        MonoidSpec::Cyclic(_) => Err(input("factorize supports cyclic semirings of a rational only")),
        other => Err(input(format!("factorize is not available for {}", other.kind()))),
    }
}

fn lengths(m: &MonoidSpec, element: &str, cap: Option<usize>) -> Result<LengthSet, CliError> {
    match m {
        MonoidSpec::Interval(i @ IntervalMonoid::Ms(_)) => i.length_set(&rational_element(element)?).map_err(input),
        _ => Ok(factorize(m, element, cap)?.lengths()),
    }
}

fn member(m: &MonoidSpec, element: &str, cap: Option<usize>) -> Result<Output, CliError> {
    let (answer, witness): (Tri, Value) = if let Some(f) = fg_of(m) {
        let x = parse_vector(element).map_err(input)?;
        match f.member(&x, Exec::Parallel).map_err(input)? {
            Some(w) => (Tri::Yes, json!(w)),
            None => (Tri::No, Value::Null),
        }
    } else {
        match m {
            MonoidSpec::Cyclic(AlgebraicReal::Rational(_)) => {
                let set = factorize(m, element, cap)?;
                match set.factorizations.first() {
                    Some(w) => (Tri::Yes, json!(w)),
                    None if set.complete => (Tri::No, Value::Null),
                    None => (Tri::Unknown, Value::Null),
                }
            }
            MonoidSpec::UnitFraction(scheme) => {
                let q = rational_element(element)?;
                match unit_fraction::canonical(scheme, &q) {
                    Ok(c) => (Tri::Yes, json!(c)),
                    Err(FamilyError::NotInMonoid(_)) | Err(FamilyError::DenominatorOutsideScheme(_)) => {
                        (Tri::No, Value::Null)
                    }
                    Err(e) => return Err(input(e)),
                }
            }
            MonoidSpec::Interval(i) => (Tri::from_bool(i.contains(&rational_element(element)?)), Value::Null),
            other => return Err(input(format!("member is not available for {}", other.kind()))),
        }
    };
    let text = format!(
        "{element}: {}\n",
        match answer {
            Tri::Yes => "member",
            Tri::No => "not a member",
            Tri::Unknown => "undecided (no factorization under the cap)",
        }
    );
    let v = json!({"command": "member", "element": element, "member": answer, "witness": witness});
    Ok(Output::new(text, &v, answer != Tri::Unknown))
}

fn atoms(m: &MonoidSpec, limit: usize, budget: &Budget) -> Result<Output, CliError> {
    let (text, value, decided) = atoms_inner(m, limit, budget)?;
    Ok(Output::new(text, &json!({"command": "atoms", "result": value}), decided))
}

fn show_vector(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(format_big).collect();
    format!("({})", parts.join(", "))
}

fn atoms_inner(m: &MonoidSpec, limit: usize, budget: &Budget) -> Result<(String, Value, bool), CliError> {
    if let Some(f) = fg_of(m) {
        let atoms = f.atoms();
        let mut text = String::new();
        for a in &atoms {
            text.push_str(&show_vector(a));
            text.push('\n');
        }
        let shown: Vec<Vec<String>> = atoms.iter().map(|a| a.iter().map(format_big).collect()).collect();
        return Ok((text, json!({"kind": "finite", "atoms": shown, "generator_indices": f.atom_indices()}), true));
    }
    match m {
        MonoidSpec::Cyclic(a) => {
            let d = cyclic::atoms(a, budget);
            let text = match &d {
                AtomDescription::AllPowers { reason } => format!("atoms: α^j for every j >= 0 ({reason})\n"),
                AtomDescription::PowersBelow { sigma } => format!("atoms: α^j for 0 <= j < {sigma}\n"),
                AtomDescription::None { witness } => format!("no atoms: antimatter, {}\n", witness.render()),
                AtomDescription::AllPowersUpTo { checked } => {
                    format!("atoms include α^j for 0 <= j <= {checked}; larger powers undecided\n")
                }
                AtomDescription::Unknown { reason } => format!("atoms undecided: {reason}\n"),
            };
            let listed = match (&d, a) {
                (
                    AtomDescription::AllPowers { .. } | AtomDescription::AllPowersUpTo { .. },
                    AlgebraicReal::Rational(q),
                ) => {
                    let n = match d {
                        AtomDescription::AllPowersUpTo { checked } => limit.min(checked + 1),
                        _ => limit,
                    };
                    powers(q, n)
                }
                (AtomDescription::PowersBelow { sigma }, AlgebraicReal::Rational(q)) => powers(q, (*sigma).min(limit)),
                _ => Vec::new(),
            };
            let mut text = text;
            if !listed.is_empty() {
                text.push_str(&format!("first atoms: {}\n", listed.join(", ")));
            }
            let decided = d.is_complete();
            Ok((text, json!({"kind": "cyclic", "description": d, "listed": listed}), decided))
        }
        MonoidSpec::UnitFraction(UnitFractionScheme::Primes) => {
            let listed: Vec<String> = unit_fraction::primes(limit).iter().map(|p| format!("1/{p}")).collect();
            let text = format!("atoms: 1/p for every prime p\nfirst atoms: {}\n", listed.join(", "));
            Ok((text, json!({"kind": "unit_fractions", "listed": listed}), true))
        }
        MonoidSpec::Interval(IntervalMonoid::Ms(s)) => {
            let text = format!(
                "atoms: [{s}, {})\n",
                Rational::from_big(s.as_big() * BigRational::from_integer(2.into())).unwrap()
            );
            Ok((text, json!({"kind": "interval_ms", "s": s}), true))
        }
        MonoidSpec::Interval(IntervalMonoid::Sr(r)) => {
            let ceil = r.as_big().ceil();
            let text = format!(
                "atoms: ({{1}} ∪ [{r}, {})) \\ {{{}}}\n",
                Rational::from_big(r.as_big() + BigRational::from_integer(1.into())).unwrap(),
                format_big(&ceil)
            );
            Ok((text, json!({"kind": "interval_sr", "r": r}), true))
        }
        MonoidSpec::DirectSum(parts) => {
            let mut text = String::new();
            let mut values = Vec::new();
            let mut decided = true;
            for (i, p) in parts.iter().enumerate() {
                let (t, v, d) = atoms_inner(p, limit, budget)?;
                text.push_str(&format!("part {i}:\n{t}"));
                values.push(v);
                decided &= d;
            }
            Ok((text, json!({"kind": "direct_sum", "parts": values}), decided))
        }
        MonoidSpec::Fg(_) | MonoidSpec::UnitFraction(_) => unreachable!("handled as fg"),
    }
}

fn powers(q: &Rational, n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n);
    let mut p = Rational::one();
    for _ in 0..n {
        out.push(p.to_string());
        p = &p * q;
    }
    out
}
