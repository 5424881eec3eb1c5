//! The monoids `M_s = {0} ∪ [s, ∞)` and `S_r = N0 ∪ [r, ∞)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classify::{propagate, ClassificationReport, ClassifyError, Property, Provenance, Rank, Rule, Tri, Witness};
use crate::exact::Rational;
use crate::factorization::LengthSet;

use super::FamilyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalMonoid {
    Ms(Rational),
    Sr(Rational),
}

impl IntervalMonoid {
    pub fn ms(s: Rational) -> Result<Self, FamilyError> {
        if s.is_zero() {
            return Err(FamilyError::InvalidParameter("s must be positive".into()));
        }
        Ok(IntervalMonoid::Ms(s))
    }

    pub fn sr(r: Rational) -> Result<Self, FamilyError> {
        if r.as_big() <= &BigRational::one() {
            return Err(FamilyError::InvalidParameter("r must exceed 1".into()));
        }
        Ok(IntervalMonoid::Sr(r))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            IntervalMonoid::Ms(s) => x.is_zero() || x >= s,
            IntervalMonoid::Sr(r) => x.is_integer() || x >= r,
        }
    }

    /// Atoms are `[s, 2s)` for `M_s` and `({1} ∪ [r, r+1)) \ {ceil r}` for `S_r`.
    pub fn is_atom(&self, x: &Rational) -> bool {
        let x = x.as_big();
        match self {
            IntervalMonoid::Ms(s) => {
                let s = s.as_big();
                x >= s && x < &(s + s)
            }
            IntervalMonoid::Sr(r) => {
                let r = r.as_big();
                x.is_one() || (x >= r && x < &(r + BigRational::one()) && x != &r.ceil())
            }
        }
    }

    /// `L(b)` in `M_s`: `n` atoms sum to exactly the values in `[ns, 2ns)`.
    pub fn length_set(&self, b: &Rational) -> Result<LengthSet, FamilyError> {
        let s = self.ms_parameter()?;
        if !self.contains(b) {
            return Err(FamilyError::NotAMember(b.to_string()));
        }
        if b.is_zero() {
            return Ok(LengthSet { lengths: vec![0], complete: true });
        }
        let (b, s) = (b.as_big(), s.as_big());
        let top: u64 = (b / s).floor().to_integer().try_into().map_err(|_| FamilyError::NotAMember(b.to_string()))?;
        let lengths = (1..=top)
            .filter(|&n| {
                let ns = s * BigRational::from_integer(BigInt::from(n));
                &ns <= b && b < &(&ns + &ns)
            })
            .collect();
        Ok(LengthSet { lengths, complete: true })
    }

    /// A factorization of `b` in `M_s` with exactly `n` atoms, if one exists.
    pub fn length_witness(&self, b: &Rational, n: u64) -> Option<Vec<Rational>> {
        let IntervalMonoid::Ms(_) = self else { return None };
        if n == 0 {
            return b.is_zero().then(Vec::new);
        }
        let part = Rational::from_big(b.as_big() / BigRational::from_integer(BigInt::from(n))).ok()?;
        self.is_atom(&part).then(|| vec![part; n as usize])
    }

    /// True exactly when `b > 2s`: then `(s + s/k) + (b - s - s/k)` are
    /// distinct factorizations for all large `k`.
    pub fn has_infinite_factorizations(&self, b: &Rational) -> Result<bool, FamilyError> {
        let s = self.ms_parameter()?;
        if !self.contains(b) {
            return Err(FamilyError::NotAMember(b.to_string()));
        }
        Ok(b.as_big() > &(s.as_big() + s.as_big()))
    }

    fn ms_parameter(&self) -> Result<&Rational, FamilyError> {
        match self {
            IntervalMonoid::Ms(s) => Ok(s),
            IntervalMonoid::Sr(_) => Err(FamilyError::Unsupported("length sets are implemented for M_s only".into())),
        }
    }

    pub fn classify(&self) -> Result<ClassificationReport, ClassifyError> {
        let mut r = ClassificationReport::new();
        r.rank = Rank::Continuum;
        let q = |x: BigRational| Rational::from_big(x).expect("positive");
        let int = |n: i64| BigRational::from_integer(BigInt::from(n));
        match self {
            IntervalMonoid::Ms(s) => {
                let sb = s.as_big().clone();
                r.set(
                    Property::Bfm,
                    Tri::Yes,
                    Provenance::new(Rule::PositiveInfimum, format!("every nonzero element is at least {s}")),
                )?;
                let b = &sb * BigRational::new(5.into(), 2.into());
                let family: Vec<Vec<Rational>> = (2..6)
                    .map(|k| {
                        let a = &sb + &sb / int(k);
                        vec![q(a.clone()), q(&b - a)]
                    })
                    .collect();
                r.set(
                    Property::Ffm,
                    Tri::No,
                    Provenance::new(
                        Rule::IntervalInfiniteFactorizations,
                        format!("{} = (s + s/k) + (3s/2 - s/k) with both atoms for every k >= 2", q(b.clone())),
                    )
                    .with_witness(Witness::RealFactorizations { element: q(b), factorizations: family }),
                )?;
                let three = &sb * int(3);
                let half = &three / int(2);
                r.set(
                    Property::Hfm,
                    Tri::No,
                    Provenance::new(
                        Rule::IntervalTwoLengths,
                        format!("{} = 3·{s} = 2·{}", q(three.clone()), q(half.clone())),
                    )
                    .with_witness(Witness::RealFactorizations {
                        element: q(three),
                        factorizations: vec![vec![s.clone(); 3], vec![q(half); 2]],
                    }),
                )?;
            }
            IntervalMonoid::Sr(rr) => {
                let rb = rr.as_big().clone();
                r.set(
                    Property::Bfm,
                    Tri::Yes,
                    Provenance::new(Rule::PositiveInfimum, "every nonzero element is at least 1"),
                )?;
                // pairs of atoms near r with a common sum
                let (a, shift) = if rb.is_integer() {
                    (&rb + int(1) / int(2), int(1) / int(4))
                } else {
                    (rb.clone(), BigRational::zero())
                };
                let ceil = rb.ceil();
                let room = &rb + int(1) - &a;
                let steps: Vec<BigRational> = (0..8)
                    .map(|k| &shift + &room * BigRational::new(BigInt::from(k), BigInt::from(16)))
                    .filter(|t| &a + t != ceil)
                    .take(4)
                    .collect();
                let total = &a + &a + &room / int(2);
                let family: Vec<Vec<Rational>> = steps
                    .iter()
                    .map(|t| vec![q(&a + t), q(&total - &a - t)])
                    .filter(|pair| pair.iter().all(|x| self.is_atom(x)))
                    .collect();
                r.set(
                    Property::Ffm,
                    Tri::No,
                    Provenance::new(
                        Rule::IntervalInfiniteFactorizations,
                        format!("{} splits into two atoms of [r, r+1) in infinitely many ways", q(total.clone())),
                    )
                    .with_witness(Witness::RealFactorizations { element: q(total), factorizations: family }),
                )?;
                let (x, y, m) = if rb.is_integer() {
                    let x = &rb + int(1) / int(2);
                    (x.clone(), x.clone(), &x + &x)
                } else {
                    let m = (&rb + &rb).ceil();
                    (rb.clone(), &m - &rb, m)
                };
                let mi = m.to_integer().try_into().expect("small parameter");
                r.set(
                    Property::Hfm,
                    Tri::No,
                    Provenance::new(
                        Rule::IntervalTwoLengths,
                        format!("{} = {}·1 = {} + {}", q(m.clone()), q(m.clone()), q(x.clone()), q(y.clone())),
                    )
                    .with_witness(Witness::RealFactorizations {
                        element: q(m),
                        factorizations: vec![vec![Rational::one(); mi], vec![q(x), q(y)]],
                    }),
                )?;
            }
        }
        r.set(
            Property::Atomic,
            Tri::Yes,
            Provenance::new(Rule::IntervalAtoms, "the explicit atom set generates the monoid"),
        )?;
        propagate(r)
    }
}
