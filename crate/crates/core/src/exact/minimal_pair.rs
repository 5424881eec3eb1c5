use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::AlgebraicReal;
use super::poly::IntPolynomial;
use super::ExactError;
use crate::serde_util::int;

/// Sign split `scale * m(x) = plus_part - minus_part` of the monic minimal
/// polynomial `m`, where `scale` makes the left side primitive in Z[x].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPair {
    #[serde(with = "int")]
    pub scale: BigInt,
    pub plus_part: IntPolynomial,
    pub minus_part: IntPolynomial,
}

impl MinimalPair {
    pub fn of(a: &AlgebraicReal) -> Result<Self, ExactError> {
        let m = a.minimal_polynomial().ok_or(ExactError::TranscendentalInput)?;
        Ok(Self::split(&m))
    }

    /// Splits a primitive polynomial with positive leading coefficient.
    pub fn split(m: &IntPolynomial) -> Self {
        let keep = |pos: bool| {
            IntPolynomial::new(
                m.coeffs()
                    .iter()
                    .map(|c| match (pos, c.is_positive(), c.is_negative()) {
                        (true, true, _) => c.clone(),
                        (false, _, true) => -c,
                        _ => BigInt::zero(),
                    })
                    .collect(),
            )
        };
        MinimalPair { scale: m.leading().cloned().unwrap_or_default(), plus_part: keep(true), minus_part: keep(false) }
    }

    /// Checks the defining identity against a primitive minimal polynomial.
    pub fn verify(&self, m: &IntPolynomial) -> bool {
        let supp_p = self.plus_part.support();
        let disjoint = self.minus_part.support().iter().all(|i| !supp_p.contains(i));
        disjoint
            && self.plus_part.is_nonnegative()
            && self.minus_part.is_nonnegative()
            && self.plus_part.sub(&self.minus_part) == *m
            && m.leading() == Some(&self.scale)
    }
}
