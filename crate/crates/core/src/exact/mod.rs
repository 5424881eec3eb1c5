//! Exact arithmetic substrate: rationals, integer polynomials with real-root
//! counting, algebraic reals and minimal pairs.

pub mod algebraic;
pub mod constants;
pub mod linalg;
pub mod minimal_pair;
pub mod poly;
pub mod rational;

pub use algebraic::{Algebraic, AlgebraicReal, Irreducibility, Refiner, Transcendental};
pub use minimal_pair::MinimalPair;
pub use poly::IntPolynomial;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative value {0} where a nonnegative rational is required")]
    NegativeValue(String),
    #[error("{0}")]
    Parse(String),
    #[error("the zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("minimal polynomial must have degree at least 1")]
    DegreeZero,
    #[error("empty interval")]
    EmptyInterval,
    #[error("no root of the polynomial in the interval")]
    NoRootInInterval,
    #[error("{0} roots of the polynomial in the interval, expected exactly one")]
    MultipleRootsInInterval(usize),
    #[error("polynomial is reducible: rational root {0}")]
    ReducibleByRationalRoot(String),
    #[error("polynomial is reducible: factor {0}")]
    ReducibleByFactor(String),
    #[error("polynomial has a repeated factor")]
    NotSquarefree,
    #[error("enclosure does not certify a positive value")]
    NonPositiveEnclosure,
    #[error("enclosure for {0} is inconsistent with its refinement rule")]
    InconsistentEnclosure(String),
    #[error("could not separate {label} from a rational after {budget} refinements")]
    EnclosureBudgetExhausted { label: String, budget: u32 },
    #[error("operation needs an algebraic value")]
    TranscendentalInput,
}
