//! Property lattice, implication closure and classification dispatch.

mod closure;
pub mod report;

pub use closure::propagate;
pub use report::{ClassificationReport, Property, Provenance, Rank, Rule, Tri, Trust, Verdict, Witness};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("contradictory verdicts for {property}: {} ({:?}) vs {} ({:?})", existing.value, existing.provenance.rule, incoming.value, incoming.provenance.rule)]
    ContradictoryVerdicts { property: Property, existing: Box<Verdict>, incoming: Box<Verdict> },
    #[error("{0}")]
    Input(String),
}

use crate::cyclic::{self, Budget};
use crate::families::{direct_sum_report, FamilyError, UnitFractionScheme};
use crate::fg::{BasisContext, FgMonoid};
use crate::spec::MonoidSpec;

/// How many moduli the unit-fraction length witness lists.
pub const CERTIFIED_LENGTHS: usize = 5;

/// Seeds the facts known for the spec's family and closes the result.
pub fn classify(spec: &MonoidSpec, budget: &Budget) -> Result<ClassificationReport, ClassifyError> {
    match spec {
        MonoidSpec::Cyclic(a) => cyclic::classify(a, budget),
        MonoidSpec::Fg(m) => m.classify(),
        MonoidSpec::UnitFraction(UnitFractionScheme::Primes) => {
            crate::families::unit_fraction::classify_infinite(CERTIFIED_LENGTHS)
        }
        MonoidSpec::UnitFraction(UnitFractionScheme::ExplicitList(v)) => explicit_unit_fractions(v).classify(),
        MonoidSpec::Interval(m) => m.classify(),
        MonoidSpec::DirectSum(parts) => {
            let reports = budget.exec.map(parts.len(), |i| classify(&parts[i], budget));
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
            direct_sum_report(&reports).map_err(|e| match e {
                FamilyError::Classify(c) => c,
                other => ClassifyError::Input(other.to_string()),
            })
        }
    }
}

/// `<1/d_1, ..., 1/d_k>` as a finitely generated monoid over the basis `(1)`.
pub fn explicit_unit_fractions(moduli: &[u64]) -> FgMonoid {
    let gens = moduli.iter().map(|&d| vec![num_rational::BigRational::new(1.into(), d.into())]).collect();
    FgMonoid::new(BasisContext::rational(), gens).expect("unit fractions are positive")
}
