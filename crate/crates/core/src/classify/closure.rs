use super::report::{ClassificationReport, Property, Provenance, Rule, Tri, Witness};
use super::ClassifyError;

use Property::*;

/// `(p = a) => (q = b)`; each edge is also used in contrapositive form.
const EDGES: [(Property, Tri, Property, Tri); 7] = [
    (Ufm, Tri::Yes, Hfm, Tri::Yes),
    (Ufm, Tri::Yes, Ffm, Tri::Yes),
    (Hfm, Tri::Yes, Bfm, Tri::Yes),
    (Ffm, Tri::Yes, Bfm, Tri::Yes),
    (Bfm, Tri::Yes, Accp, Tri::Yes),
    (Accp, Tri::Yes, Atomic, Tri::Yes),
    (Antimatter, Tri::Yes, Atomic, Tri::No),
];

fn negate(t: Tri) -> Tri {
    match t {
        Tri::Yes => Tri::No,
        Tri::No => Tri::Yes,
        Tri::Unknown => Tri::Unknown,
    }
}

fn implied(from: Property, value: Tri, to: Property, to_value: Tri) -> Provenance {
    Provenance::new(Rule::ImplicationClosure, format!("{from} = {value} implies {to} = {to_value}"))
        .with_witness(Witness::Implication { from, value })
}

/// Closes a report under the implication chain and its contrapositives.
///
/// Decided values are never changed; a clash is reported with both
/// provenances.
pub fn propagate(mut report: ClassificationReport) -> Result<ClassificationReport, ClassifyError> {
    loop {
        let mut changed = false;
        for &(p, a, q, b) in &EDGES {
            if report.get(p) == a {
                changed |= report.set(q, b, implied(p, a, q, b))?;
            }
            let (nq, np) = (negate(b), negate(a));
            if report.get(q) == nq {
                changed |= report.set(p, np, implied(q, nq, p, np))?;
            }
        }
        if !changed {
            return Ok(report);
        }
    }
}
