//! Named infinite families: unit-fraction monoids, interval monoids and
//! direct sums.

pub mod interval;
pub mod sum;
pub mod unit_fraction;

pub use interval::IntervalMonoid;
pub use sum::direct_sum_report;
pub use unit_fraction::{CanonicalDecomposition, UnitFractionScheme};

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("denominator {0} is not a product of distinct scheme moduli")]
    DenominatorOutsideScheme(String),
    #[error("{0} is not in the monoid")]
    NotInMonoid(String),
    #[error("{0} is not a member")]
    NotAMember(String),
    #[error("a direct sum needs at least one part")]
    EmptyPartList,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Classify(#[from] crate::classify::ClassifyError),
}
