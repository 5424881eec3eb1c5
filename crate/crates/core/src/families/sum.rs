//! Direct sums of monoids whose reports are already known.

use crate::classify::{propagate, ClassificationReport, Property, Provenance, Rule, Tri, Witness};

use super::FamilyError;

/// Combines part reports: a property holds in the sum iff it holds in every
/// part, since each part is divisor-closed and lengths add across parts.
pub fn direct_sum_report(parts: &[ClassificationReport]) -> Result<ClassificationReport, FamilyError> {
    if parts.is_empty() {
        return Err(FamilyError::EmptyPartList);
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let mut r = ClassificationReport::new();
    r.rank = parts.iter().map(|p| p.rank).reduce(|a, b| a + b).unwrap();
    r.trust = parts.iter().map(|p| p.trust).reduce(|a, b| a.merge(b)).unwrap();
    for p in Property::ALL {
        let values: Vec<Tri> = parts.iter().map(|x| x.get(p)).collect();
        let value = if values.iter().all(|&v| v == Tri::Yes) {
            Tri::Yes
        } else if values.contains(&Tri::No) {
            Tri::No
        } else {
            Tri::Unknown
        };
        let (rule, detail) = match (p, value) {
            (Property::Hfm, Tri::Yes) => (Rule::DirectSumLengthsAdd, "lengths add across summands (derived rule)"),
            (Property::Hfm, Tri::No) => {
                (Rule::DirectSumLengthsAdd, "a summand is divisor-closed, so its length sets embed (derived rule)")
            }
            (_, Tri::Yes) => (Rule::DirectSum, "holds in every summand"),
            (_, Tri::No) => (Rule::DirectSum, "fails in a divisor-closed summand"),
            (_, Tri::Unknown) => (Rule::Undetermined, "undecided in some summand"),
        };
        let prov = Provenance::new(rule, detail).with_witness(Witness::PartVerdicts { values });
        if value == Tri::Unknown {
            r.note_unknown(p, prov);
        } else {
            r.set(p, value, prov).map_err(FamilyError::Classify)?;
        }
    }
    propagate(r).map_err(FamilyError::Classify)
}
