//! Cyclic semirings `N0[alpha]`, the monoids generated by the powers of a
//! positive real `alpha`.
//!
//! Searches for identities among powers work in the basis
//! `1, alpha, ..., alpha^(d-1)` of `Q(alpha)`: every power is reduced modulo
//! the minimal polynomial, so an identity holds exactly when the reduced
//! coordinate vectors agree.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{propagate, ClassificationReport, Property, Provenance, Rank, Rule, Tri, Verdict, Witness};
use crate::exact::{AlgebraicReal, ExactError, IntPolynomial, Irreducibility, MinimalPair, Rational};
use crate::factorization::{knapsack, FactorizationSet};
use crate::par::Exec;
use crate::serde_util::int_vec;

/// Limits for the searches that cannot be decided outright.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest quotient degree tried in the antimatter witness search.
    pub witness_degree: usize,
    /// Largest quotient coefficient height tried in the same search.
    pub witness_height: u64,
    /// Largest exponent tried when computing sigma.
    pub sigma_max: usize,
    /// Node limit of one search, shared evenly among its top-level branches.
    pub node_limit: u64,
    pub exec: Exec,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { witness_degree: 8, witness_height: 64, sigma_max: 10, node_limit: 250_000, exec: Exec::default() }
    }
}

impl Budget {
    pub fn describe(&self) -> String {
        format!(
            "witness degree <= {}, height <= {}, sigma <= {}, {} search nodes",
            self.witness_degree, self.witness_height, self.sigma_max, self.node_limit
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CyclicError {
    #[error("invalid budget: {0}")]
    InvalidBudget(&'static str),
    #[error("alpha must lie strictly between 0 and 1")]
    ValueNotInUnitInterval,
    #[error("an exponent cap is required when q < 1")]
    CapRequired,
    #[error("N0[{0}] is antimatter and has no atoms to factor into")]
    Antimatter(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `1 = sum_{i>=1} coefficients[i-1] * alpha^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntimatterWitness {
    #[serde(with = "int_vec")]
    pub coefficients: Vec<BigInt>,
}

impl AntimatterWitness {
    /// Re-checks the identity exactly: the minimal polynomial must divide
    /// `1 - sum c_i x^i`, and the right side must have at least two terms.
    pub fn verify(&self, a: &AlgebraicReal) -> bool {
        if self.coefficients.iter().any(|c| c.is_negative()) {
            return false;
        }
        let total: BigInt = self.coefficients.iter().sum();
        if total < BigInt::from(2) {
            return false;
        }
        let Some(m) = a.minimal_polynomial() else { return false };
        let mut h = vec![BigInt::one()];
        h.extend(self.coefficients.iter().map(|c| -c));
        m.divides(&IntPolynomial::new(h))
    }

    pub fn to_witness(&self) -> Witness {
        Witness::AntimatterIdentity { coefficients: self.coefficients.clone() }
    }

    pub fn render(&self) -> String {
        let mut terms = vec![(0usize, BigInt::zero())];
        terms.extend(self.coefficients.iter().enumerate().map(|(i, c)| (i + 1, c.clone())));
        format!("1 = {}", combination(&terms[1..]))
    }
}

/// `α` raised to `e`, with a superscript exponent.
pub fn power(e: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    match e {
        1 => "α".into(),
        e => std::iter::once('α').chain(e.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize])).collect(),
    }
}

/// `c_1 a^{e_1} + ...` over the nonzero terms.
fn combination(terms: &[(usize, BigInt)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let pow = match e {
                0 => "1".to_string(),
                1 => "α".to_string(),
                e => power(*e),
            };
            match (c.is_one(), *e) {
                (true, _) => pow,
                (false, 0) => c.to_string(),
                (false, _) => format!("{c}·{pow}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Condition (1): `|m(0)| != 1` for the monic minimal polynomial.
pub fn constant_term_condition(m: &IntPolynomial) -> bool {
    match m.leading() {
        Some(lc) => m.coeff(0).abs() != lc.abs(),
        None => false,
    }
}

/// Condition (2): at least two positive roots counted with multiplicity.
pub fn two_positive_roots_condition(m: &IntPolynomial) -> Result<bool, ExactError> {
    Ok(m.positive_root_count_with_multiplicity()? >= 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneIsAtom {
    Atom { rule: Rule, detail: String },
    NotAtom(AntimatterWitness),
    Unknown { detail: String },
}

/// Decides whether 1 is an atom of `N0[alpha]`.
pub fn one_is_atom(a: &AlgebraicReal, budget: &Budget) -> OneIsAtom {
    if a.is_transcendental() {
        return OneIsAtom::Atom { rule: Rule::TranscendentalFree, detail: "alpha is transcendental".into() };
    }
    let below_one = match a.compare(&BigRational::one()) {
        Ok(o) => o == Ordering::Less,
        Err(e) => return OneIsAtom::Unknown { detail: e.to_string() },
    };
    if !below_one {
        return OneIsAtom::Atom {
            rule: Rule::AlphaAtLeastOne,
            detail: "alpha >= 1, so every nonzero element is at least 1".into(),
        };
    }
    match a {
        AlgebraicReal::Rational(q) => {
            if q.num() >= &BigInt::from(2) {
                OneIsAtom::Atom { rule: Rule::NumeratorRule, detail: format!("n(q) = {} >= 2", q.num()) }
            } else {
                OneIsAtom::NotAtom(AntimatterWitness { coefficients: vec![q.den().clone()] })
            }
        }
        AlgebraicReal::Algebraic(al) => {
            let m = al.minpoly();
            if constant_term_condition(m) {
                return OneIsAtom::Atom {
                    rule: Rule::ConstantTermCondition,
                    detail: format!("|m(0)| = {} != 1", format_ratio(&m.coeff(0).abs(), &m.leading().unwrap().abs())),
                };
            }
            match two_positive_roots_condition(m) {
                Ok(true) => {
                    return OneIsAtom::Atom {
                        rule: Rule::TwoPositiveRoots,
                        detail: format!(
                            "{m} has {} positive roots",
                            m.positive_root_count_with_multiplicity().unwrap_or(0)
                        ),
                    }
                }
                Ok(false) => {}
                Err(e) => return OneIsAtom::Unknown { detail: e.to_string() },
            }
            match antimatter_search(a, budget) {
                Outcome::Found(c) => OneIsAtom::NotAtom(AntimatterWitness { coefficients: c[1..].to_vec() }),
                Outcome::NotFound => OneIsAtom::Unknown {
                    detail: format!(
                        "neither sufficient condition holds and no identity 1 = sum c_i alpha^i exists with quotient degree <= {} and height <= {}",
                        budget.witness_degree, budget.witness_height
                    ),
                },
                Outcome::Exhausted => OneIsAtom::Unknown {
                    detail: format!("antimatter witness search hit its node limit ({})", budget.describe()),
                },
            }
        }
        AlgebraicReal::Transcendental(_) => unreachable!(),
    }
}

fn format_ratio(a: &BigInt, b: &BigInt) -> String {
    crate::exact::rational::format_big(&BigRational::new(a.clone(), b.clone()))
}

/// Atomicity of `N0[alpha]`, which holds exactly when 1 is an atom.
pub fn is_atomic(a: &AlgebraicReal, budget: &Budget) -> Verdict {
    match one_is_atom(a, budget) {
        OneIsAtom::Atom { rule, detail } => Verdict { value: Tri::Yes, provenance: Provenance::new(rule, detail) },
        OneIsAtom::NotAtom(w) => Verdict {
            value: Tri::No,
            provenance: Provenance::new(Rule::AntimatterWitness, w.render()).with_witness(w.to_witness()),
        },
        OneIsAtom::Unknown { detail } => {
            Verdict { value: Tri::Unknown, provenance: Provenance::new(Rule::Undetermined, detail) }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SigmaResult {
    /// `alpha^sigma = sum_{j<sigma} coefficients[j] alpha^j`.
    Finite {
        sigma: usize,
        #[serde(with = "int_vec")]
        coefficients: Vec<BigInt>,
    },
    /// No power up to `checked` is a combination of lower powers.
    AtLeast {
        checked: usize,
    },
    Infinite {
        reason: String,
    },
}

impl SigmaResult {
    pub fn verify(&self, a: &AlgebraicReal) -> bool {
        match self {
            SigmaResult::Finite { sigma, coefficients } => {
                let Some(m) = a.minimal_polynomial() else { return false };
                if coefficients.len() != *sigma || coefficients.iter().any(|c| c.is_negative()) {
                    return false;
                }
                let mut f: Vec<BigInt> = coefficients.iter().map(|c| -c).collect();
                f.push(BigInt::one());
                m.divides(&IntPolynomial::new(f))
            }
            _ => true,
        }
    }
}

/// Least `n` with `alpha^n` in the monoid generated by lower powers.
pub fn sigma(a: &AlgebraicReal, n_max: usize, budget: &Budget) -> Result<SigmaResult, CyclicError> {
    if n_max == 0 {
        return Err(CyclicError::InvalidBudget("sigma bound must be positive"));
    }
    if a.is_transcendental() {
        return Ok(SigmaResult::Infinite { reason: "powers of a transcendental number are Q-independent".into() });
    }
    match a.compare(&BigRational::one())? {
        Ordering::Less => {
            return Ok(SigmaResult::Infinite { reason: "alpha < 1: every alpha^j with j < n exceeds alpha^n".into() })
        }
        Ordering::Equal => return Ok(SigmaResult::Finite { sigma: 1, coefficients: vec![BigInt::one()] }),
        Ordering::Greater => {}
    }
    let m = a.minimal_polynomial().expect("not transcendental");
    let red = Reduction::new(&m, n_max);
    let bounds = a.power_bounds(POWER_LEVEL, n_max);
    let grid = Grid::new(bounds.iter().map(|b| &b.0));
    let lower: Vec<BigInt> = bounds.iter().map(|b| grid.down(&b.0)).collect();
    for (n, (target, (_, upper))) in red.vecs.iter().zip(&bounds).enumerate().skip(1) {
        let search = Search {
            red: &red,
            lower: &lower,
            free: (red.dim..n).rev().collect(),
            zero_at: (0..red.dim).map(|k| k >= n).collect(),
            cap: None,
            node_limit: budget.node_limit,
            len: n.max(red.dim),
        };
        match search.run(target, &grid.up(upper), false, budget.exec) {
            Outcome::Found(mut c) => {
                c.truncate(n);
                c.resize(n, BigInt::zero());
                return Ok(SigmaResult::Finite { sigma: n, coefficients: c });
            }
            Outcome::NotFound => {}
            Outcome::Exhausted => return Ok(SigmaResult::AtLeast { checked: n - 1 }),
        }
    }
    Ok(SigmaResult::AtLeast { checked: n_max })
}

const POWER_LEVEL: u32 = 64;

/// Dyadic grid for the pruning bounds. Rounding lower bounds down and upper
/// bounds up only loosens the pruning, and integer arithmetic avoids
/// normalizing huge rationals at every node.
struct Grid {
    unit: BigInt,
}

impl Grid {
    /// Fine enough that every given positive bound stays positive, with 24
    /// further bits of relative precision.
    fn new<'a>(lower: impl Iterator<Item = &'a BigRational>) -> Self {
        let bits = lower.map(|x| (BigRational::one() / x).ceil().to_integer().bits()).max().unwrap_or(0);
        Grid { unit: BigInt::one() << (bits + 24) }
    }

    fn down(&self, x: &BigRational) -> BigInt {
        (x * BigRational::from_integer(self.unit.clone())).floor().to_integer()
    }

    fn up(&self, x: &BigRational) -> BigInt {
        (x * BigRational::from_integer(self.unit.clone())).ceil().to_integer()
    }
}

/// Scaled reductions `scale * (x^j mod m)` for `j = 0..=upto`.
struct Reduction {
    dim: usize,
    scale: BigInt,
    vecs: Vec<Vec<BigInt>>,
}

impl Reduction {
    fn new(m: &IntPolynomial, upto: usize) -> Self {
        let d = m.degree().expect("nonzero minimal polynomial");
        let lc = BigRational::from_integer(m.leading().unwrap().clone());
        let monic: Vec<BigRational> = (0..d).map(|k| BigRational::from_integer(m.coeff(k)) / &lc).collect();
        let mut cur = vec![BigRational::zero(); d];
        cur[0] = BigRational::one();
        let mut rat = Vec::with_capacity(upto + 1);
        for _ in 0..=upto {
            let top = cur[d - 1].clone();
            let mut next = vec![BigRational::zero(); d];
            next[1..d].clone_from_slice(&cur[..d - 1]);
            for k in 0..d {
                next[k] -= &top * &monic[k];
            }
            rat.push(std::mem::replace(&mut cur, next));
        }
        let scale = rat.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let vecs = rat
            .iter()
            .map(|v| v.iter().map(|x| (x * BigRational::from_integer(scale.clone())).to_integer()).collect())
            .collect();
        Reduction { dim: d, scale, vecs }
    }
}

enum Outcome {
    Found(Vec<BigInt>),
    NotFound,
    Exhausted,
}

enum Step {
    Found,
    Continue,
    Exhausted,
}

/// Nonnegative `c` with `sum c_j r_j = target`. Coefficients at the free
/// indices (all `>= dim`, descending) are enumerated; the rest are read off
/// the residual.
struct Search<'a> {
    red: &'a Reduction,
    /// Lower bounds of the powers of alpha on the pruning grid.
    lower: &'a [BigInt],
    free: Vec<usize>,
    zero_at: Vec<bool>,
    cap: Option<u64>,
    node_limit: u64,
    len: usize,
}

impl Search<'_> {
    fn bound(&self, j: usize, hi: &BigInt) -> Option<u64> {
        if hi.is_negative() {
            return None;
        }
        let b = (hi / &self.lower[j]).to_u64().unwrap_or(u64::MAX);
        Some(self.cap.map_or(b, |c| b.min(c)))
    }

    fn run(&self, target: &[BigInt], hi: &BigInt, top_positive: bool, exec: Exec) -> Outcome {
        let mut coeffs = vec![BigInt::zero(); self.len];
        let Some(&t) = self.free.first() else {
            return if self.leaf(target, &mut coeffs) { Outcome::Found(coeffs) } else { Outcome::NotFound };
        };
        let Some(bound) = self.bound(t, hi) else { return Outcome::NotFound };
        let start = u64::from(top_positive);
        if bound < start {
            return Outcome::NotFound;
        }
        let exhausted = AtomicBool::new(false);
        let span = bound - start + 1;
        if span > self.node_limit {
            exhausted.store(true, AtomicOrdering::Relaxed);
        }
        let branches = span.min(self.node_limit.max(1)) as usize;
        // an even share keeps the outcome independent of the executor
        let share = (self.node_limit / branches as u64).max(1);
        let found = exec.find_first(branches, |i| {
            let c = start + i as u64;
            let cb = BigInt::from(c);
            let mut coeffs = vec![BigInt::zero(); self.len];
            coeffs[t] = cb.clone();
            let mut residual: Vec<BigInt> = target.iter().zip(&self.red.vecs[t]).map(|(x, r)| x - &cb * r).collect();
            let rem = hi - &cb * &self.lower[t];
            let mut nodes = 0u64;
            match self.dfs(1, &mut residual, &rem, &mut coeffs, &mut nodes, share) {
                Step::Found => Some(coeffs),
                Step::Continue => None,
                Step::Exhausted => {
                    exhausted.store(true, AtomicOrdering::Relaxed);
                    None
                }
            }
        });
        match found {
            Some(c) => Outcome::Found(c),
            None if exhausted.load(AtomicOrdering::Relaxed) => Outcome::Exhausted,
            None => Outcome::NotFound,
        }
    }

    fn dfs(
        &self,
        pos: usize,
        residual: &mut [BigInt],
        hi: &BigInt,
        coeffs: &mut [BigInt],
        nodes: &mut u64,
        limit: u64,
    ) -> Step {
        *nodes += 1;
        if *nodes > limit {
            return Step::Exhausted;
        }
        if pos == self.free.len() {
            return if self.leaf(residual, coeffs) { Step::Found } else { Step::Continue };
        }
        let j = self.free[pos];
        let Some(bound) = self.bound(j, hi) else { return Step::Continue };
        let rj = &self.red.vecs[j];
        let mut rem = hi.clone();
        let mut c = 0u64;
        loop {
            coeffs[j] = BigInt::from(c);
            match self.dfs(pos + 1, residual, &rem, coeffs, nodes, limit) {
                Step::Found => return Step::Found,
                Step::Exhausted => return Step::Exhausted,
                Step::Continue => {}
            }
            if c == bound {
                break;
            }
            c += 1;
            for (x, r) in residual.iter_mut().zip(rj) {
                *x -= r;
            }
            rem -= &self.lower[j];
        }
        let back = BigInt::from(bound);
        for (x, r) in residual.iter_mut().zip(rj) {
            *x += &back * r;
        }
        coeffs[j] = BigInt::zero();
        Step::Continue
    }

    fn leaf(&self, residual: &[BigInt], coeffs: &mut [BigInt]) -> bool {
        for k in 0..self.red.dim {
            let r = &residual[k];
            if r.is_negative() {
                return false;
            }
            let (q, rest) = r.div_rem(&self.red.scale);
            if !rest.is_zero() || (self.zero_at[k] && !q.is_zero()) {
                return false;
            }
            if k < coeffs.len() {
                coeffs[k] = q;
            } else if !q.is_zero() {
                return false;
            }
        }
        true
    }
}

/// Iterative deepening over `1 = sum_{1<=i<=K} c_i alpha^i` with `c_K >= 1`.
fn antimatter_search(a: &AlgebraicReal, budget: &Budget) -> Outcome {
    let m = a.minimal_polynomial().expect("algebraic");
    let d = m.degree().unwrap();
    let top = d + budget.witness_degree;
    let red = Reduction::new(&m, top);
    let bounds = a.power_bounds(POWER_LEVEL, top);
    let grid = Grid::new(bounds.iter().map(|b| &b.0));
    let lower: Vec<BigInt> = bounds.iter().map(|b| grid.down(&b.0)).collect();
    let one = grid.up(&BigRational::one());
    let norm: BigInt = m.coeffs().iter().map(|c| c.abs()).sum();
    let cap = (norm * BigInt::from(budget.witness_height)).to_u64().unwrap_or(u64::MAX);
    let mut target = vec![BigInt::zero(); d];
    target[0] = red.scale.clone();
    let mut exhausted = false;
    for k in d..=top {
        let search = Search {
            red: &red,
            lower: &lower,
            free: (d..=k).rev().collect(),
            zero_at: (0..d).map(|i| i == 0).collect(),
            cap: Some(cap),
            node_limit: budget.node_limit,
            len: k + 1,
        };
        match search.run(&target, &one, true, budget.exec) {
            Outcome::Found(c) => return Outcome::Found(c),
            Outcome::NotFound => {}
            Outcome::Exhausted => exhausted = true,
        }
    }
    if exhausted {
        Outcome::Exhausted
    } else {
        Outcome::NotFound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomDescription {
    /// Every power of alpha is an atom.
    AllPowers {
        reason: String,
    },
    /// The atoms are `alpha^j` for `j < sigma`.
    PowersBelow {
        sigma: usize,
    },
    /// Antimatter: no atoms at all.
    None {
        witness: AntimatterWitness,
    },
    /// Powers up to `checked` are atoms; the rest were not decided.
    AllPowersUpTo {
        checked: usize,
    },
    Unknown {
        reason: String,
    },
}

impl AtomDescription {
    pub fn is_complete(&self) -> bool {
        !matches!(self, AtomDescription::AllPowersUpTo { .. } | AtomDescription::Unknown { .. })
    }
}

pub fn atoms(a: &AlgebraicReal, budget: &Budget) -> AtomDescription {
    if a.is_transcendental() {
        return AtomDescription::AllPowers { reason: "alpha is transcendental".into() };
    }
    match a.compare(&BigRational::one()) {
        Err(e) => AtomDescription::Unknown { reason: e.to_string() },
        Ok(Ordering::Equal) => AtomDescription::PowersBelow { sigma: 1 },
        Ok(Ordering::Less) => match one_is_atom(a, budget) {
            OneIsAtom::Atom { .. } => AtomDescription::AllPowers {
                reason: "atomic with alpha < 1, and alpha < 1 forces sigma = infinity".into(),
            },
            OneIsAtom::NotAtom(w) => AtomDescription::None { witness: w },
            OneIsAtom::Unknown { detail } => AtomDescription::Unknown { reason: detail },
        },
        Ok(Ordering::Greater) => {
            if let AlgebraicReal::Rational(q) = a {
                if !q.is_integer() {
                    return AtomDescription::AllPowers { reason: denominator_reason(q) };
                }
            }
            match sigma(a, budget.sigma_max.max(1), budget) {
                Ok(SigmaResult::Finite { sigma, .. }) => AtomDescription::PowersBelow { sigma },
                Ok(SigmaResult::AtLeast { checked }) => AtomDescription::AllPowersUpTo { checked },
                Ok(SigmaResult::Infinite { reason }) => AtomDescription::AllPowers { reason },
                Err(e) => AtomDescription::Unknown { reason: e.to_string() },
            }
        }
    }
}

fn denominator_reason(q: &Rational) -> String {
    format!(
        "q = {q}: clearing denominators in q^n = sum c_j q^j leaves {}^n on the left, coprime to {}, while every term on the right is divisible by {}",
        q.num(),
        q.den(),
        q.den()
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub value: Tri,
    pub reason: String,
}

pub fn finitely_generated(a: &AlgebraicReal, budget: &Budget) -> Decision {
    let below_one = !a.is_transcendental() && matches!(a.compare(&BigRational::one()), Ok(Ordering::Less));
    if below_one {
        return Decision {
            value: Tri::No,
            reason: "alpha < 1: nonzero elements accumulate at 0, so no finite set generates".into(),
        };
    }
    match atoms(a, budget) {
        AtomDescription::PowersBelow { sigma } => {
            Decision { value: Tri::Yes, reason: format!("generated by alpha^j, j < {sigma}") }
        }
        AtomDescription::AllPowers { reason } => Decision { value: Tri::No, reason },
        AtomDescription::None { .. } => Decision { value: Tri::No, reason: "antimatter".into() },
        AtomDescription::AllPowersUpTo { checked } => {
            Decision { value: Tri::Unknown, reason: format!("sigma > {checked}; larger exponents not searched") }
        }
        AtomDescription::Unknown { reason } => Decision { value: Tri::Unknown, reason },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AccpObstruction {
    /// `certificate = p(x) - x^shift q(x)` has nonnegative coefficients.
    NotAccp {
        shift: usize,
        certificate: IntPolynomial,
    },
    NoObstructionFound {
        shifts_checked: usize,
    },
}

pub fn accp_obstruction(a: &AlgebraicReal) -> Result<AccpObstruction, CyclicError> {
    let pair = MinimalPair::of(a)?;
    if a.compare(&BigRational::one())? != Ordering::Less {
        return Err(CyclicError::ValueNotInUnitInterval);
    }
    let dp = pair.plus_part.degree().unwrap_or(0);
    let dq = pair.minus_part.degree().unwrap_or(0);
    if dp < dq {
        return Ok(AccpObstruction::NoObstructionFound { shifts_checked: 0 });
    }
    for shift in 0..=dp - dq {
        let f = pair.plus_part.sub(&pair.minus_part.shift(shift));
        if f.is_nonnegative() {
            return Ok(AccpObstruction::NotAccp { shift, certificate: f });
        }
    }
    Ok(AccpObstruction::NoObstructionFound { shifts_checked: dp - dq + 1 })
}

fn pair_witness(pair: &MinimalPair) -> Witness {
    let n = pair.plus_part.coeffs().len().max(pair.minus_part.coeffs().len());
    let pad = |p: &IntPolynomial| (0..n).map(|i| p.coeff(i)).collect();
    Witness::TwoFactorizations { left: pad(&pair.plus_part), right: pad(&pair.minus_part) }
}

fn pair_lengths(pair: &MinimalPair) -> (BigInt, BigInt) {
    (pair.plus_part.coeffs().iter().sum(), pair.minus_part.coeffs().iter().sum())
}

/// Seeds every decidable property of `N0[alpha]` and closes the report.
pub fn classify(a: &AlgebraicReal, budget: &Budget) -> Result<ClassificationReport, crate::classify::ClassifyError> {
    use Property::*;
    let mut r = ClassificationReport::new();
    r.trust.irreducibility_asserted = a.irreducibility() == Irreducibility::Asserted;
    if a.is_transcendental() {
        r.rank = Rank::CountablyInfinite;
        r.set(
            Ufm,
            Tri::Yes,
            Provenance::new(Rule::TranscendentalFree, "the powers of alpha form a basis of a free monoid"),
        )?;
        return propagate(r);
    }
    let d = a.degree().unwrap();
    r.rank = Rank::Finite(d as u64);
    let pair = MinimalPair::of(a).expect("algebraic");
    let (lp, lq) = pair_lengths(&pair);
    let pair_note = format!(
        "{} = {} as elements, with lengths {lp} and {lq}",
        combination(&indexed(&pair.plus_part)),
        combination(&indexed(&pair.minus_part))
    );
    let cmp = a.compare(&BigRational::one()).expect("finite comparison");
    if cmp != Ordering::Less {
        if let AlgebraicReal::Rational(q) = a {
            if q.is_integer() {
                r.set(Ufm, Tri::Yes, Provenance::new(Rule::IntegerCollapse, format!("N0[{q}] is N0")))?;
                return propagate(r);
            }
        }
        r.set(
            Ffm,
            Tri::Yes,
            Provenance::new(Rule::IncreasingGenerators, "alpha > 1, so the generators alpha^n increase"),
        )?;
        let m = &pair.plus_part.sub(&pair.minus_part);
        let lc = BigRational::from_integer(m.leading().unwrap().clone());
        let forced: Vec<BigRational> = (0..d).map(|j| -BigRational::from_integer(m.coeff(j)) / &lc).collect();
        if forced.iter().all(|c| c.is_integer() && !c.is_negative()) {
            let coefficients: Vec<BigInt> = forced.iter().map(|c| c.to_integer()).collect();
            let terms: Vec<(usize, BigInt)> = coefficients.iter().cloned().enumerate().collect();
            r.set(
                Ufm,
                Tri::Yes,
                Provenance::new(
                    Rule::DegreeMembership,
                    format!("{} = {}, so the atoms are the {d} powers below the degree", power(d), combination(&terms)),
                )
                .with_witness(Witness::PowerRelation { exponent: d, coefficients }),
            )?;
        } else {
            let shown: Vec<String> = forced.iter().map(crate::exact::rational::format_big).collect();
            r.set(
                Ufm,
                Tri::No,
                Provenance::new(
                    Rule::DegreeMembership,
                    format!("{} is forced to have coefficients [{}], not all in N0", power(d), shown.join(", ")),
                )
                .with_witness(pair_witness(&pair)),
            )?;
            r.set(
                Hfm,
                Tri::No,
                Provenance::new(Rule::MinimalPairLengths, pair_note).with_witness(pair_witness(&pair)),
            )?;
        }
        return propagate(r);
    }

    let atomic = is_atomic(a, budget);
    match atomic.value {
        Tri::No => {
            r.set(Antimatter, Tri::Yes, atomic.provenance)?;
            return propagate(r);
        }
        Tri::Yes => {
            r.set(Atomic, Tri::Yes, atomic.provenance)?;
            r.set(
                Hfm,
                Tri::No,
                Provenance::new(Rule::MinimalPairLengths, pair_note).with_witness(pair_witness(&pair)),
            )?;
        }
        Tri::Unknown => {
            r.note_unknown(Atomic, atomic.provenance.clone());
            r.note_unknown(Antimatter, atomic.provenance);
        }
    }
    match accp_obstruction(a) {
        Ok(AccpObstruction::NotAccp { shift, certificate }) => {
            r.set(
                Accp,
                Tri::No,
                Provenance::new(
                    Rule::MinimalPairShift,
                    format!("minimal-pair shift m={shift}: p(x) - x^{shift} q(x) = {certificate}"),
                )
                .with_witness(Witness::AccpShift { shift, certificate }),
            )?;
        }
        Ok(AccpObstruction::NoObstructionFound { shifts_checked }) => {
            let p = Provenance::new(
                Rule::NoObstructionFound,
                format!("all {shifts_checked} minimal-pair shifts leave a negative coefficient; this test is only necessary"),
            );
            r.note_unknown(Accp, p.clone());
            r.note_unknown(Bfm, p);
        }
        Err(e) => r.note_unknown(Accp, Provenance::new(Rule::Undetermined, e.to_string())),
    }
    if let AlgebraicReal::Rational(q) = a {
        if atomic.value == Tri::Yes {
            let (n, dd) = (q.num().clone(), q.den().clone());
            let lengths: Vec<BigInt> = (0..4).map(|k| &n + BigInt::from(k) * (&dd - &n)).collect();
            r.set(
                Bfm,
                Tri::No,
                Provenance::new(
                    Rule::UnboundedLengthChain,
                    format!("{n}·q^k = {dd}·q^(k+1), so the element {n} has lengths {n} + k({dd} - {n}) for every k"),
                )
                .with_witness(Witness::LengthChain {
                    element: Rational::from_big(BigRational::from_integer(n)).unwrap(),
                    lengths,
                }),
            )?;
        }
    }
    propagate(r)
}

fn indexed(p: &IntPolynomial) -> Vec<(usize, BigInt)> {
    p.coeffs().iter().cloned().enumerate().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentCap {
    Auto,
    Fixed(usize),
}

/// Z(target) in `N0[q]`, as multiplicity vectors over the powers `q^0..q^cap`.
pub fn factorizations(
    q: &Rational,
    target: &Rational,
    cap: ExponentCap,
    exec: Exec,
) -> Result<FactorizationSet, CyclicError> {
    if q.is_zero() {
        return Err(CyclicError::Exact(ExactError::NonPositiveEnclosure));
    }
    let one = BigRational::one();
    let t = target.as_big();
    if q.is_integer() {
        // atoms are {1}
        return Ok(if t.is_integer() {
            let n = t.to_integer().to_u64().ok_or_else(|| CyclicError::TooLarge(t.to_string()))?;
            FactorizationSet::from_vectors(vec![vec![n]], true)
        } else {
            FactorizationSet { factorizations: Vec::new(), complete: true }
        });
    }
    let below = q.as_big() < &one;
    if below && q.num().is_one() {
        return Err(CyclicError::Antimatter(q.to_string()));
    }
    let (cap, complete) = match (cap, below) {
        (ExponentCap::Auto, true) => return Err(CyclicError::CapRequired),
        (ExponentCap::Fixed(k), true) => (k, t.is_zero()),
        (cap, false) => {
            let mut auto = 0usize;
            let mut p = q.as_big().clone();
            while &p <= t {
                auto += 1;
                p *= q.as_big();
            }
            match cap {
                ExponentCap::Auto => (auto, true),
                ExponentCap::Fixed(k) => (k, k >= auto),
            }
        }
    };
    let (a, b) = (q.num(), q.den());
    let weights: Vec<BigInt> =
        (0..=cap).map(|i| num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), cap - i) * t.denom()).collect();
    let goal = t.numer() * num_traits::pow(b.clone(), cap);
    let sols =
        knapsack(&weights, &goal, exec).ok_or_else(|| CyclicError::TooLarge("multiplicity exceeds u64".into()))?;
    Ok(FactorizationSet::from_vectors(sols, complete))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> AlgebraicReal {
        AlgebraicReal::rational(Rational::new(n, d).unwrap()).unwrap()
    }

    fn alg(c: &[i64], lo: (i64, i64), hi: (i64, i64)) -> AlgebraicReal {
        AlgebraicReal::from_minpoly(
            IntPolynomial::from_i64(c),
            Rational::new(lo.0, lo.1).unwrap(),
            Rational::new(hi.0, hi.1).unwrap(),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_conjugate_is_antimatter() {
        let a = alg(&[-1, 1, 1], (1, 2), (1, 1));
        match one_is_atom(&a, &Budget::default()) {
            OneIsAtom::NotAtom(w) => {
                assert_eq!(w.coefficients, ints(&[1, 1]));
                assert!(w.verify(&a));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_one_is_atom_rules() {
        let b = Budget::default();
        assert!(matches!(one_is_atom(&rat(2, 3), &b), OneIsAtom::Atom { rule: Rule::NumeratorRule, .. }));
        match one_is_atom(&rat(1, 5), &b) {
            OneIsAtom::NotAtom(w) => {
                assert_eq!(w.coefficients, ints(&[5]));
                assert!(w.verify(&rat(1, 5)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(one_is_atom(&rat(3, 2), &b), OneIsAtom::Atom { rule: Rule::AlphaAtLeastOne, .. }));
    }

    #[test]
    fn sufficient_conditions() {
        let b = Budget::default();
        let a = alg(&[-2, 2, 1], (0, 1), (1, 1));
        assert!(matches!(one_is_atom(&a, &b), OneIsAtom::Atom { rule: Rule::ConstantTermCondition, .. }));
        let a = alg(&[1, -4, 1], (0, 1), (1, 1));
        assert!(matches!(one_is_atom(&a, &b), OneIsAtom::Atom { rule: Rule::TwoPositiveRoots, .. }));
    }

    #[test]
    fn sigma_examples() {
        let b = Budget::default();
        assert_eq!(sigma(&rat(2, 1), 3, &b).unwrap(), SigmaResult::Finite { sigma: 1, coefficients: ints(&[2]) });
        let a = alg(&[2, -4, 1], (3, 1), (4, 1));
        assert_eq!(sigma(&a, 2, &b).unwrap(), SigmaResult::AtLeast { checked: 2 });
        assert_eq!(sigma(&rat(3, 2), 6, &b).unwrap(), SigmaResult::AtLeast { checked: 6 });
        assert!(matches!(sigma(&rat(1, 2), 3, &b).unwrap(), SigmaResult::Infinite { .. }));
        assert!(matches!(sigma(&rat(2, 1), 0, &b), Err(CyclicError::InvalidBudget(_))));
    }

    #[test]
    fn sigma_finds_golden_ratio_relation() {
        let a = alg(&[-1, -1, 1], (1, 1), (2, 1));
        let s = sigma(&a, 4, &Budget::default()).unwrap();
        assert_eq!(s, SigmaResult::Finite { sigma: 2, coefficients: ints(&[1, 1]) });
        assert!(s.verify(&a));
    }

    #[test]
    fn atom_descriptions() {
        let b = Budget::default();
        assert_eq!(atoms(&rat(2, 1), &b), AtomDescription::PowersBelow { sigma: 1 });
        assert!(matches!(atoms(&rat(2, 3), &b), AtomDescription::AllPowers { .. }));
        assert!(matches!(atoms(&AlgebraicReal::pi(), &b), AtomDescription::AllPowers { .. }));
        assert_eq!(finitely_generated(&rat(2, 1), &b).value, Tri::Yes);
        assert_eq!(finitely_generated(&rat(2, 3), &b).value, Tri::No);
        assert_eq!(finitely_generated(&AlgebraicReal::pi(), &b).value, Tri::No);
    }

    #[test]
    fn accp_examples() {
        assert_eq!(
            accp_obstruction(&rat(2, 3)).unwrap(),
            AccpObstruction::NotAccp { shift: 1, certificate: IntPolynomial::from_i64(&[0, 1]) }
        );
        let a = alg(&[-1, 1, 1], (1, 2), (1, 1));
        assert_eq!(
            accp_obstruction(&a).unwrap(),
            AccpObstruction::NotAccp { shift: 1, certificate: IntPolynomial::from_i64(&[0, 0, 1]) }
        );
        // p = 5x^2 + 1, q = 5x: the shift m = 1 leaves the constant 1
        let a = alg(&[1, -5, 5], (0, 1), (1, 2));
        assert_eq!(
            accp_obstruction(&a).unwrap(),
            AccpObstruction::NotAccp { shift: 1, certificate: IntPolynomial::from_i64(&[1]) }
        );
        let a = alg(&[1, -4, 1], (0, 1), (1, 1));
        assert_eq!(accp_obstruction(&a).unwrap(), AccpObstruction::NoObstructionFound { shifts_checked: 2 });
        assert!(matches!(accp_obstruction(&rat(3, 2)), Err(CyclicError::ValueNotInUnitInterval)));
    }

    #[test]
    fn classify_examples() {
        let b = Budget::default();
        let r = classify(&rat(2, 3), &b).unwrap();
        assert_eq!(r.get(Property::Atomic), Tri::Yes);
        assert_eq!(r.get(Property::Accp), Tri::No);
        assert_eq!(r.get(Property::Bfm), Tri::No);
        assert_eq!(r.rank, Rank::Finite(1));
        let r = classify(&rat(4, 1), &b).unwrap();
        assert_eq!(r.get(Property::Ufm), Tri::Yes);
        let a = alg(&[2, -4, 0, 1], (1, 1), (4, 1));
        let r = classify(&a, &b).unwrap();
        assert_eq!(r.get(Property::Ffm), Tri::Yes);
        assert_eq!(r.get(Property::Ufm), Tri::No);
        assert_eq!(r.rank, Rank::Finite(3));
        let r = classify(&AlgebraicReal::pi(), &b).unwrap();
        assert_eq!(r.get(Property::Ufm), Tri::Yes);
        assert_eq!(r.rank, Rank::CountablyInfinite);
    }

    #[test]
    fn factorization_examples() {
        let q = Rational::new(3, 2).unwrap();
        let fs = factorizations(&q, &Rational::integer(3), ExponentCap::Auto, Exec::Sequential).unwrap();
        let v: Vec<_> = fs.factorizations.iter().map(|f| f.multiplicities.clone()).collect();
        assert_eq!(v, vec![vec![0, 2, 0], vec![3, 0, 0]]);
        assert!(fs.complete);
        let fs =
            factorizations(&Rational::integer(2), &Rational::integer(5), ExponentCap::Auto, Exec::Sequential).unwrap();
        assert_eq!(fs.factorizations[0].multiplicities, vec![5]);
        let q = Rational::new(2, 3).unwrap();
        let fs = factorizations(&q, &Rational::integer(2), ExponentCap::Fixed(2), Exec::Parallel).unwrap();
        let v: Vec<_> = fs.factorizations.iter().map(|f| f.multiplicities.clone()).collect();
        assert_eq!(v, vec![vec![0, 1, 3], vec![0, 3, 0], vec![2, 0, 0]]);
        assert!(!fs.complete);
        assert!(matches!(
            factorizations(&q, &Rational::one(), ExponentCap::Auto, Exec::Sequential),
            Err(CyclicError::CapRequired)
        ));
    }
}
