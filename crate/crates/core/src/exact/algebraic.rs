use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::constants::{e_enclosure, pi_enclosure};
use super::poly::IntPolynomial;
use super::rational::{format_big, Rational};
use super::ExactError;

/// Refinement levels tried before giving up on a transcendental comparison.
pub const DEFAULT_ENCLOSURE_BUDGET: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Checked exactly (degree at most 4).
    Verified,
    /// Taken on trust from the caller.
    Asserted,
}

/// A real algebraic number of degree at least 2, given by its primitive
/// minimal polynomial and an isolating interval `(lo, hi)` with `0 < lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebraic {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
    irreducibility: Irreducibility,
}

impl Algebraic {
    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// Halves the isolating interval. The minimal polynomial has no rational
    /// roots, so the midpoint is never the root itself.
    fn bisect(&self, lo: &mut BigRational, hi: &mut BigRational) {
        let mid = (&*lo + &*hi) / BigRational::from_integer(2.into());
        if self.minpoly.sign_at(&mid) == self.minpoly.sign_at(lo) {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        for _ in 0..level {
            self.bisect(&mut lo, &mut hi);
        }
        (lo, hi)
    }

    /// Same number, narrower interval.
    pub fn refined(&self, level: u32) -> Algebraic {
        let (lo, hi) = self.enclosure(level);
        Algebraic { lo, hi, ..self.clone() }
    }

    fn compare(&self, q: &BigRational) -> Ordering {
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        // exactly one simple root in (lo, hi), none rational
        if self.minpoly.sign_at(q) == self.minpoly.sign_at(&self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

pub type RefineFn = Arc<dyn Fn(u32) -> (BigRational, BigRational) + Send + Sync>;

/// Source of tighter enclosures for a transcendental constant.
#[derive(Clone)]
pub enum Refiner {
    /// The enclosure never improves.
    Fixed,
    Pi,
    E,
    Custom(RefineFn),
}

impl Refiner {
    fn bounds(&self, level: u32) -> Option<(BigRational, BigRational)> {
        match self {
            Refiner::Fixed => None,
            Refiner::Pi => Some(pi_enclosure(level)),
            Refiner::E => Some(e_enclosure(level)),
            Refiner::Custom(f) => Some(f(level)),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Refiner::Fixed => "fixed",
            Refiner::Pi => "pi",
            Refiner::E => "e",
            Refiner::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for Refiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A caller-declared transcendental number known through rational enclosures.
#[derive(Clone, Debug)]
pub struct Transcendental {
    label: String,
    lo: BigRational,
    hi: BigRational,
    refiner: Refiner,
}

impl PartialEq for Transcendental {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.lo == other.lo
            && self.hi == other.hi
            && self.refiner.name() == other.refiner.name()
    }
}

impl Eq for Transcendental {}

impl Transcendental {
    pub fn new(
        label: impl Into<String>,
        lo: BigRational,
        hi: BigRational,
        refiner: Refiner,
    ) -> Result<Self, ExactError> {
        if !lo.is_positive() {
            return Err(ExactError::NonPositiveEnclosure);
        }
        if lo >= hi {
            return Err(ExactError::EmptyInterval);
        }
        let t = Transcendental { label: label.into(), lo, hi, refiner };
        let (l, h) = t.enclosure(DEFAULT_ENCLOSURE_BUDGET.min(24));
        if l >= h {
            return Err(ExactError::InconsistentEnclosure(t.label.clone()));
        }
        Ok(t)
    }

    /// Built-in refinement rule for a well-known label (`pi`, `e`).
    pub fn known_refiner(label: &str) -> Refiner {
        match label {
            "pi" | "π" => Refiner::Pi,
            "e" => Refiner::E,
            _ => Refiner::Fixed,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        match self.refiner.bounds(level) {
            None => (self.lo.clone(), self.hi.clone()),
            Some((l, h)) => (l.max(self.lo.clone()), h.min(self.hi.clone())),
        }
    }

    fn compare(&self, q: &BigRational, budget: u32) -> Result<Ordering, ExactError> {
        for level in 0..=budget {
            let (lo, hi) = self.enclosure(level);
            // the value never equals a rational, so touching an endpoint decides
            if q <= &lo {
                return Ok(Ordering::Greater);
            }
            if q >= &hi {
                return Ok(Ordering::Less);
            }
            if matches!(self.refiner, Refiner::Fixed) {
                break;
            }
        }
        Err(ExactError::EnclosureBudgetExhausted { label: self.label.clone(), budget })
    }
}

/// A strictly positive real: rational, algebraic with an isolating interval,
/// or declared transcendental with refinable enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicReal {
    Rational(Rational),
    Algebraic(Algebraic),
    Transcendental(Transcendental),
}

impl AlgebraicReal {
    /// Validates a minimal polynomial with an isolating interval.
    ///
    /// Degree one collapses to the rational root. For higher degree the
    /// interval must hold exactly one root and the polynomial must have no
    /// rational roots; degree 2 to 4 is then fully checked for irreducibility.
    pub fn from_minpoly(minpoly: IntPolynomial, lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        let m = minpoly.primitive();
        let (lo, hi) = (lo.into_big(), hi.into_big());
        let deg = match m.degree() {
            None | Some(0) => return Err(ExactError::DegreeZero),
            Some(d) => d,
        };
        if lo >= hi {
            return Err(ExactError::EmptyInterval);
        }
        if deg == 1 {
            let root = BigRational::new(-m.coeff(0), m.coeff(1));
            if !(lo < root && root < hi) {
                return Err(ExactError::NoRootInInterval);
            }
            return Rational::from_big(root)
                .ok()
                .filter(|r| !r.is_zero())
                .map(AlgebraicReal::Rational)
                .ok_or(ExactError::NonPositiveEnclosure);
        }
        if let Some(r) = m.rational_roots().into_iter().next() {
            return Err(ExactError::ReducibleByRationalRoot(format_big(&r)));
        }
        if deg >= 5 && !m.is_squarefree() {
            return Err(ExactError::NotSquarefree);
        }
        match m.roots_in_open_interval(&lo, &hi)? {
            0 => return Err(ExactError::NoRootInInterval),
            1 => {}
            n => return Err(ExactError::MultipleRootsInInterval(n)),
        }
        let irreducibility = if deg <= 4 {
            if let Some(f) = m.find_quadratic_factor() {
                return Err(ExactError::ReducibleByFactor(f.to_string()));
            }
            Irreducibility::Verified
        } else {
            Irreducibility::Asserted
        };
        let mut a = Algebraic { minpoly: m, lo, hi, irreducibility };
        if a.lo.is_negative() {
            // the root must already be known positive from the enclosure
            return Err(ExactError::NonPositiveEnclosure);
        }
        while a.lo.is_zero() {
            let (mut l, mut h) = (a.lo.clone(), a.hi.clone());
            a.bisect(&mut l, &mut h);
            a.lo = l;
            a.hi = h;
        }
        Ok(AlgebraicReal::Algebraic(a))
    }

    pub fn rational(q: Rational) -> Result<Self, ExactError> {
        if q.is_zero() {
            return Err(ExactError::NonPositiveEnclosure);
        }
        Ok(AlgebraicReal::Rational(q))
    }

    pub fn pi() -> Self {
        let (lo, hi) = pi_enclosure(0);
        AlgebraicReal::Transcendental(Transcendental { label: "pi".into(), lo, hi, refiner: Refiner::Pi })
    }

    pub fn e() -> Self {
        let (lo, hi) = e_enclosure(0);
        AlgebraicReal::Transcendental(Transcendental { label: "e".into(), lo, hi, refiner: Refiner::E })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            AlgebraicReal::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(self, AlgebraicReal::Transcendental(_))
    }

    /// Degree of the minimal polynomial; `None` when transcendental.
    pub fn degree(&self) -> Option<usize> {
        match self {
            AlgebraicReal::Rational(_) => Some(1),
            AlgebraicReal::Algebraic(a) => Some(a.degree()),
            AlgebraicReal::Transcendental(_) => None,
        }
    }

    /// Primitive integer minimal polynomial with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> Option<IntPolynomial> {
        match self {
            AlgebraicReal::Rational(q) => Some(IntPolynomial::new(vec![-q.num().clone(), q.den().clone()])),
            AlgebraicReal::Algebraic(a) => Some(a.minpoly.clone()),
            AlgebraicReal::Transcendental(_) => None,
        }
    }

    pub fn irreducibility(&self) -> Irreducibility {
        match self {
            AlgebraicReal::Algebraic(a) => a.irreducibility,
            _ => Irreducibility::Verified,
        }
    }

    /// Closed rational bounds on the value; tighter as `level` grows.
    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        match self {
            AlgebraicReal::Rational(q) => (q.as_big().clone(), q.as_big().clone()),
            AlgebraicReal::Algebraic(a) => a.enclosure(level),
            AlgebraicReal::Transcendental(t) => t.enclosure(level),
        }
    }

    /// A copy with a narrower enclosure.
    pub fn refined(&self, level: u32) -> Self {
        match self {
            AlgebraicReal::Algebraic(a) => AlgebraicReal::Algebraic(a.refined(level)),
            AlgebraicReal::Transcendental(t) => {
                let (lo, hi) = t.enclosure(level);
                AlgebraicReal::Transcendental(Transcendental { lo, hi, ..t.clone() })
            }
            other => other.clone(),
        }
    }

    /// Sign of `self - q`.
    pub fn compare(&self, q: &BigRational) -> Result<Ordering, ExactError> {
        self.compare_with_budget(q, DEFAULT_ENCLOSURE_BUDGET)
    }

    pub fn compare_with_budget(&self, q: &BigRational, budget: u32) -> Result<Ordering, ExactError> {
        match self {
            AlgebraicReal::Rational(r) => Ok(r.as_big().cmp(q)),
            AlgebraicReal::Algebraic(a) => Ok(a.compare(q)),
            AlgebraicReal::Transcendental(t) => t.compare(q, budget),
        }
    }

    /// Bounds on `alpha^j` for `j = 0..=upto` from a level-`level` enclosure.
    pub fn power_bounds(&self, level: u32, upto: usize) -> Vec<(BigRational, BigRational)> {
        let (lo, hi) = self.enclosure(level);
        let mut out = Vec::with_capacity(upto + 1);
        let (mut pl, mut ph) = (BigRational::one(), BigRational::one());
        for _ in 0..=upto {
            out.push((pl.clone(), ph.clone()));
            pl *= &lo;
            ph *= &hi;
        }
        out
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicReal::Rational(q) => write!(f, "{q}"),
            AlgebraicReal::Algebraic(a) => {
                write!(f, "root of {} in ({}, {})", a.minpoly, format_big(&a.lo), format_big(&a.hi))
            }
            AlgebraicReal::Transcendental(t) => write!(f, "{} (transcendental)", t.label),
        }
    }
}
