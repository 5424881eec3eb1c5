use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exact::{IntPolynomial, Rational};
use crate::serde_util::{int_vec, rat_vec};

/// The factorization properties tracked by a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Antimatter,
    Atomic,
    Accp,
    Bfm,
    Ffm,
    Hfm,
    Ufm,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Antimatter,
        Property::Atomic,
        Property::Accp,
        Property::Bfm,
        Property::Ffm,
        Property::Hfm,
        Property::Ufm,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::Antimatter => "antimatter",
            Property::Atomic => "atomic",
            Property::Accp => "ACCP",
            Property::Bfm => "BFM",
            Property::Ffm => "FFM",
            Property::Hfm => "HFM",
            Property::Ufm => "UFM",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_decided(self) -> bool {
        self != Tri::Unknown
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// The result or argument a verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Nothing decided this property; the detail names the exhausted budget.
    Undetermined,
    ImplicationClosure,
    /// Powers of a transcendental number are Q-independent, so N0[alpha] is free.
    TranscendentalFree,
    /// alpha >= 1: every nonzero element is at least 1, so 1 is an atom.
    AlphaAtLeastOne,
    /// Rational q < 1 with numerator at least 2.
    NumeratorRule,
    /// alpha irrational and the constant term of its minimal polynomial is not +-1.
    ConstantTermCondition,
    /// The minimal polynomial has at least two positive roots.
    TwoPositiveRoots,
    /// 1 = sum c_i alpha^i with sum c_i >= 2.
    AntimatterWitness,
    /// N0[k] is N0 for a positive integer k.
    IntegerCollapse,
    /// Non-integer rational q > 1: q^n is never a combination of lower powers.
    DenominatorGrowth,
    /// alpha > 1: the generators alpha^n increase.
    IncreasingGenerators,
    /// UFM decided by whether alpha^deg lies in the span of lower powers.
    DegreeMembership,
    /// p(x) - x^m q(x) has nonnegative coefficients for the minimal pair.
    MinimalPairShift,
    /// No shift of the minimal pair is nonnegative; necessary condition only.
    NoObstructionFound,
    /// n(q) q^k = d(q) q^(k+1) gives an element with unbounded lengths.
    UnboundedLengthChain,
    /// p(alpha) = q(alpha) are factorizations with lengths p(1) != q(1).
    MinimalPairLengths,
    /// Infinitely many atoms but finite degree.
    InfinitelyManyAtoms,
    /// Every finitely generated monoid is an FFM.
    FinitelyGenerated,
    /// Atom coordinates are Q-independent.
    TrivialKernel,
    /// A relation among atoms gives two factorizations of one element.
    KernelVector,
    /// A linear functional equal to 1 on every atom measures length.
    LengthFunctional,
    /// The infimum of the nonzero elements is positive.
    PositiveInfimum,
    /// The lexicographic measure (N, S) strictly drops along proper divisor chains.
    UnitFractionMonotones,
    /// Every 1/d_j is an atom and the atoms generate.
    UnitFractionAtoms,
    /// d_n lies in L(1) for every n.
    LengthsOfOne,
    /// The atom set is an explicit interval family that generates the monoid.
    IntervalAtoms,
    /// A one-parameter family of length-2 factorizations of one element.
    IntervalInfiniteFactorizations,
    /// One element with factorizations of two different lengths.
    IntervalTwoLengths,
    /// Verdict combined over divisor-closed direct summands.
    DirectSum,
    /// Lengths add across direct summands.
    DirectSumLengthsAdd,
}

/// Checkable evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `1 = sum_{i>=1} coefficients[i-1] * alpha^i`.
    AntimatterIdentity {
        #[serde(with = "int_vec")]
        coefficients: Vec<BigInt>,
    },
    /// `alpha^exponent = sum_j coefficients[j] * alpha^j`; a negative entry
    /// means the forced representation is not in N0.
    PowerRelation {
        exponent: usize,
        #[serde(with = "int_vec")]
        coefficients: Vec<BigInt>,
    },
    AccpShift {
        shift: usize,
        certificate: IntPolynomial,
    },
    /// Two multiplicity vectors (over exponents or atoms) of the same element.
    TwoFactorizations {
        #[serde(with = "int_vec")]
        left: Vec<BigInt>,
        #[serde(with = "int_vec")]
        right: Vec<BigInt>,
    },
    LengthChain {
        element: Rational,
        #[serde(with = "int_vec")]
        lengths: Vec<BigInt>,
    },
    KernelVector {
        #[serde(with = "int_vec")]
        vector: Vec<BigInt>,
    },
    LengthFunctional {
        #[serde(with = "rat_vec")]
        weights: Vec<BigRational>,
    },
    RankEquality {
        rank: usize,
        atoms: usize,
    },
    LengthsOfOne {
        lengths: Vec<u64>,
    },
    RealFactorizations {
        element: Rational,
        factorizations: Vec<Vec<Rational>>,
    },
    PartVerdicts {
        values: Vec<Tri>,
    },
    Implication {
        from: Property,
        value: Tri,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: Rule,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Provenance {
    pub fn new(rule: Rule, detail: impl Into<String>) -> Self {
        Provenance { rule, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: Tri,
    pub provenance: Provenance,
}

/// Rank of the monoid, i.e. the Q-dimension of its difference group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank {
    Finite(u64),
    CountablyInfinite,
    /// The difference group contains an interval of reals.
    Continuum,
    Unknown,
}

/// Rank of a direct sum.
impl std::ops::Add for Rank {
    type Output = Rank;

    fn add(self, other: Rank) -> Rank {
        use Rank::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Continuum, _) | (_, Continuum) => Continuum,
            (CountablyInfinite, _) | (_, CountablyInfinite) => CountablyInfinite,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::CountablyInfinite => f.write_str("countably infinite"),
            Rank::Continuum => f.write_str("continuum"),
            Rank::Unknown => f.write_str("unknown"),
        }
    }
}

/// Inputs the report relies on without having checked them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trust {
    /// Some minimal polynomial of degree >= 5 was taken as irreducible.
    pub irreducibility_asserted: bool,
    /// Some basis was declared Q-independent without verification.
    pub independence_declared: bool,
}

impl Trust {
    pub fn merge(self, other: Trust) -> Trust {
        Trust {
            irreducibility_asserted: self.irreducibility_asserted || other.irreducibility_asserted,
            independence_declared: self.independence_declared || other.independence_declared,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdicts: BTreeMap<Property, Verdict>,
    pub rank: Rank,
    pub trust: Trust,
}

impl Default for ClassificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl ClassificationReport {
    /// Every property unknown, rank unknown.
    pub fn new() -> Self {
        let verdicts = Property::ALL
            .iter()
            .map(|&p| {
                (
                    p,
                    Verdict {
                        value: Tri::Unknown,
                        provenance: Provenance::new(Rule::Undetermined, "no applicable result"),
                    },
                )
            })
            .collect();
        ClassificationReport { verdicts, rank: Rank::Unknown, trust: Trust::default() }
    }

    pub fn get(&self, p: Property) -> Tri {
        self.verdicts.get(&p).map_or(Tri::Unknown, |v| v.value)
    }

    pub fn verdict(&self, p: Property) -> &Verdict {
        &self.verdicts[&p]
    }

    /// Records a decided value, rejecting a flip of an already decided one.
    pub fn set(&mut self, p: Property, value: Tri, provenance: Provenance) -> Result<bool, super::ClassifyError> {
        let incoming = Verdict { value, provenance };
        let slot = self.verdicts.entry(p).or_insert_with(|| Verdict {
            value: Tri::Unknown,
            provenance: Provenance::new(Rule::Undetermined, "no applicable result"),
        });
        match (slot.value, value) {
            (_, Tri::Unknown) => {
                if slot.value == Tri::Unknown {
                    *slot = incoming;
                }
                Ok(false)
            }
            (Tri::Unknown, _) => {
                *slot = incoming;
                Ok(true)
            }
            (a, b) if a == b => Ok(false),
            _ => Err(super::ClassifyError::ContradictoryVerdicts {
                property: p,
                existing: Box::new(slot.clone()),
                incoming: Box::new(incoming),
            }),
        }
    }

    /// Notes why a property stays unknown.
    pub fn note_unknown(&mut self, p: Property, provenance: Provenance) {
        if let Some(v) = self.verdicts.get_mut(&p) {
            if v.value == Tri::Unknown {
                v.provenance = provenance;
            }
        }
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts.values().any(|v| v.value == Tri::Unknown) || self.rank == Rank::Unknown
    }
}
