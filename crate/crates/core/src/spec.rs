//! Monoid spec files: the JSON document and its validated form.
//!
//! ```json
//! {"monoid": {"kind": "cyclic", "alpha": {"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]}}}
//! ```

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exact::{AlgebraicReal, ExactError, IntPolynomial, Rational, Transcendental};
use crate::families::{FamilyError, IntervalMonoid, UnitFractionScheme};
use crate::fg::{BasisContext, FgError, FgMonoid};
use crate::serde_util::rat_vec_vec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub monoid: MonoidDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
#[allow(clippy::large_enum_variant)]
pub enum MonoidDoc {
    Cyclic {
        alpha: ConstantDoc,
    },
    Fg {
        basis: Vec<ConstantDoc>,
        #[serde(with = "rat_vec_vec")]
        generators: Vec<Vec<BigRational>>,
    },
    UnitFraction {
        rule: RuleDoc,
    },
    IntervalMs {
        s: Rational,
    },
    IntervalSr {
        r: Rational,
    },
    DirectSum {
        parts: Vec<MonoidDoc>,
    },
}

/// Exactly one of the three forms must be present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<IntPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[Rational; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcendental: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<[Rational; 2]>,
}

impl ConstantDoc {
    pub fn rational(q: Rational) -> Self {
        ConstantDoc { rational: Some(q), ..Default::default() }
    }

    pub fn minpoly(m: IntPolynomial, lo: Rational, hi: Rational) -> Self {
        ConstantDoc { minpoly: Some(m), interval: Some([lo, hi]), ..Default::default() }
    }

    pub fn transcendental(label: impl Into<String>, lo: Rational, hi: Rational) -> Self {
        ConstantDoc { transcendental: Some(label.into()), enclosure: Some([lo, hi]), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleDoc {
    /// Only `"primes"` is recognised.
    Named(String),
    List(Vec<u64>),
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl ToString) -> SpecError {
    SpecError::Invalid { path: path.to_string(), message: message.to_string() }
}

/// A validated monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidSpec {
    Cyclic(AlgebraicReal),
    Fg(FgMonoid),
    UnitFraction(UnitFractionScheme),
    Interval(IntervalMonoid),
    DirectSum(Vec<MonoidSpec>),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents serialize")
    }

    pub fn build(&self) -> Result<MonoidSpec, SpecError> {
        MonoidSpec::from_doc(&self.monoid, "monoid")
    }
}

impl MonoidSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        SpecFile::parse(text)?.build()
    }

    pub fn from_doc(doc: &MonoidDoc, path: &str) -> Result<Self, SpecError> {
        match doc {
            MonoidDoc::Cyclic { alpha } => Ok(MonoidSpec::Cyclic(constant(alpha, &format!("{path}.alpha"))?)),
            MonoidDoc::Fg { basis, generators } => {
                let constants = basis
                    .iter()
                    .enumerate()
                    .map(|(i, c)| constant(c, &format!("{path}.basis[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let basis = BasisContext::new(constants).map_err(|e| invalid(&format!("{path}.basis"), e))?;
                let m = FgMonoid::new(basis, generators.clone()).map_err(|e| {
                    let at = match &e {
                        FgError::NonPositiveGenerator { index, .. } => format!("{path}.generators[{index}]"),
                        _ => format!("{path}.generators"),
                    };
                    invalid(&at, e)
                })?;
                Ok(MonoidSpec::Fg(m))
            }
            MonoidDoc::UnitFraction { rule } => {
                let at = format!("{path}.rule");
                let scheme = match rule {
                    RuleDoc::Named(n) if n == "primes" => UnitFractionScheme::Primes,
                    RuleDoc::Named(n) => {
                        return Err(invalid(&at, format!("unknown rule {n:?}; expected \"primes\" or a list")))
                    }
                    RuleDoc::List(v) => UnitFractionScheme::explicit(v.clone()).map_err(|e| invalid(&at, e))?,
                };
                Ok(MonoidSpec::UnitFraction(scheme))
            }
            MonoidDoc::IntervalMs { s } => {
                Ok(MonoidSpec::Interval(family(IntervalMonoid::ms(s.clone()), &format!("{path}.s"))?))
            }
            MonoidDoc::IntervalSr { r } => {
                Ok(MonoidSpec::Interval(family(IntervalMonoid::sr(r.clone()), &format!("{path}.r"))?))
            }
            MonoidDoc::DirectSum { parts } => {
                if parts.is_empty() {
                    return Err(invalid(&format!("{path}.parts"), FamilyError::EmptyPartList));
                }
                let parts = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| MonoidSpec::from_doc(p, &format!("{path}.parts[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MonoidSpec::DirectSum(parts))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MonoidSpec::Cyclic(_) => "cyclic",
            MonoidSpec::Fg(_) => "fg",
            MonoidSpec::UnitFraction(_) => "unit_fraction",
            MonoidSpec::Interval(IntervalMonoid::Ms(_)) => "interval_ms",
            MonoidSpec::Interval(IntervalMonoid::Sr(_)) => "interval_sr",
            MonoidSpec::DirectSum(_) => "direct_sum",
        }
    }
}

fn family<T>(r: Result<T, FamilyError>, path: &str) -> Result<T, SpecError> {
    r.map_err(|e| invalid(path, e))
}

fn exact<T>(r: Result<T, ExactError>, path: &str) -> Result<T, SpecError> {
    r.map_err(|e| invalid(path, e))
}

/// Builds one constant from whichever form is present.
pub fn constant(doc: &ConstantDoc, path: &str) -> Result<AlgebraicReal, SpecError> {
    match doc {
        ConstantDoc { rational: Some(q), minpoly: None, interval: None, transcendental: None, enclosure: None } => {
            exact(AlgebraicReal::rational(q.clone()), &format!("{path}.rational"))
        }
        ConstantDoc {
            rational: None,
            minpoly: Some(m),
            interval: Some([lo, hi]),
            transcendental: None,
            enclosure: None,
        } => exact(AlgebraicReal::from_minpoly(m.clone(), lo.clone(), hi.clone()), &format!("{path}.minpoly")),
        ConstantDoc {
            rational: None,
            minpoly: None,
            interval: None,
            transcendental: Some(label),
            enclosure: Some([lo, hi]),
        } => {
            let t = Transcendental::new(
                label.clone(),
                lo.as_big().clone(),
                hi.as_big().clone(),
                Transcendental::known_refiner(label),
            );
            Ok(AlgebraicReal::Transcendental(exact(t, &format!("{path}.enclosure"))?))
        }
        _ => {
            Err(invalid(path, "expected exactly one of {rational}, {minpoly, interval} or {transcendental, enclosure}"))
        }
    }
}

/// Parses `"a/b"` or a comma-separated vector of them.
pub fn parse_vector(text: &str) -> Result<Vec<BigRational>, SpecError> {
    text.split(',').map(|t| crate::exact::rational::parse_big(t.trim()).map_err(|e| invalid("element", e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_round_trip() {
        let text = r#"{"monoid": {"kind": "cyclic", "alpha": {"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]}}}"#;
        let doc = SpecFile::parse(text).unwrap();
        assert_eq!(SpecFile::parse(&doc.render()).unwrap(), doc);
        assert!(matches!(doc.build().unwrap(), MonoidSpec::Cyclic(AlgebraicReal::Algebraic(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"monoid": {"kind": "interval_ms", "s": "1", "t": "2"}}"#;
        assert!(matches!(SpecFile::parse(text), Err(SpecError::Json(_))));
        let text = r#"{"monoid": {"kind": "cyclic", "alpha": {"rational": "2/3", "colour": 1}}}"#;
        assert!(SpecFile::parse(text).is_err());
        let text = r#"{"monoid": {"kind": "interval_ms", "s": "1"}, "extra": true}"#;
        assert!(SpecFile::parse(text).is_err());
    }

    #[test]
    fn json_errors_carry_position() {
        let err = SpecFile::parse("{\n \"monoid\": {\"kind\": \"cyclic\",\n \"alpha\": 3}}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn mixed_constant_forms_are_rejected() {
        let text = r#"{"monoid": {"kind": "cyclic", "alpha": {"rational": "2/3", "transcendental": "pi"}}}"#;
        let err = SpecFile::parse(text).unwrap().build().unwrap_err();
        assert!(err.to_string().starts_with("monoid.alpha:"), "{err}");
    }

    #[test]
    fn fg_and_families_build() {
        let text = r#"{"monoid": {"kind": "direct_sum", "parts": [
            {"kind": "fg", "basis": [{"rational": "1"}, {"transcendental": "pi", "enclosure": ["3", "4"]}],
             "generators": [["0", "1"], ["2", "0"], ["1", "1/2"]]},
            {"kind": "unit_fraction", "rule": "primes"},
            {"kind": "unit_fraction", "rule": [2, 3, 5]},
            {"kind": "interval_sr", "r": "5/2"}]}}"#;
        let spec = MonoidSpec::from_json(text).unwrap();
        let MonoidSpec::DirectSum(parts) = spec else { panic!() };
        assert_eq!(
            parts.iter().map(MonoidSpec::kind).collect::<Vec<_>>(),
            ["fg", "unit_fraction", "unit_fraction", "interval_sr"]
        );
        let bad = r#"{"monoid": {"kind": "fg", "basis": [{"rational": "1"}], "generators": [["1"], ["-1"]]}}"#;
        let err = MonoidSpec::from_json(bad).unwrap_err();
        assert!(err.to_string().starts_with("monoid.generators[1]"), "{err}");
    }
}
