//! Monoids generated by reciprocals `1/d_j` of pairwise coprime moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{propagate, ClassificationReport, ClassifyError, Property, Provenance, Rank, Rule, Tri, Witness};
use crate::exact::Rational;
use crate::factorization::LengthSet;
use crate::serde_util::int;

use super::FamilyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitFractionScheme {
    /// Finitely many moduli, strictly increasing, pairwise coprime, all >= 2.
    ExplicitList(Vec<u64>),
    /// `d_n` is the n-th prime.
    Primes,
}

impl UnitFractionScheme {
    pub fn explicit(moduli: Vec<u64>) -> Result<Self, FamilyError> {
        if moduli.is_empty() {
            return Err(FamilyError::InvalidScheme("empty modulus list".into()));
        }
        if moduli[0] < 2 {
            return Err(FamilyError::InvalidScheme(format!("first modulus {} is below 2", moduli[0])));
        }
        for w in moduli.windows(2) {
            if w[0] >= w[1] {
                return Err(FamilyError::InvalidScheme(format!(
                    "moduli not strictly increasing at {} >= {}",
                    w[0], w[1]
                )));
            }
        }
        for (i, a) in moduli.iter().enumerate() {
            for b in &moduli[i + 1..] {
                if a.gcd(b) != 1 {
                    return Err(FamilyError::InvalidScheme(format!("gcd({a}, {b}) = {}", a.gcd(b))));
                }
            }
        }
        Ok(UnitFractionScheme::ExplicitList(moduli))
    }

    /// The first `k` moduli, if the scheme has that many.
    pub fn prefix(&self, k: usize) -> Option<Vec<u64>> {
        match self {
            UnitFractionScheme::ExplicitList(v) => v.get(..k).map(<[u64]>::to_vec),
            UnitFractionScheme::Primes => Some(primes(k)),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, UnitFractionScheme::ExplicitList(_))
    }

    /// Moduli sharing a factor with `den`, with their scheme positions.
    fn involved(&self, den: &BigInt) -> Result<Vec<(usize, u64)>, FamilyError> {
        let outside = || FamilyError::DenominatorOutsideScheme(den.to_string());
        match self {
            UnitFractionScheme::ExplicitList(v) => Ok(v
                .iter()
                .enumerate()
                .filter(|(_, d)| !den.gcd(&BigInt::from(**d)).is_one())
                .map(|(i, d)| (i, *d))
                .collect()),
            UnitFractionScheme::Primes => {
                let mut n = den.to_u64().ok_or_else(outside)?;
                let mut factors = Vec::new();
                let mut p = 2u64;
                while p * p <= n {
                    if n % p == 0 {
                        factors.push(p);
                        while n % p == 0 {
                            n /= p;
                        }
                    }
                    p += 1;
                }
                if n > 1 {
                    factors.push(n);
                }
                Ok(factors.into_iter().map(|f| (prime_index(f), f)).collect())
            }
        }
    }
}

/// First `k` primes.
pub fn primes(k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(k);
    let mut n = 2u64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| !n.is_multiple_of(p)) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Zero-based position of a prime.
fn prime_index(p: u64) -> usize {
    (2..p).filter(|&n| is_prime(n)).count()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// `q = integer_part + sum residues[i] / d_i` with `0 <= residues[i] < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    #[serde(with = "int")]
    pub integer_part: BigInt,
    /// Indexed by scheme position; trailing unused moduli are omitted.
    pub residues: Vec<u64>,
    pub moduli: Vec<u64>,
    pub digit_sum: u64,
}

impl CanonicalDecomposition {
    pub fn value(&self) -> BigRational {
        let mut v = BigRational::from_integer(self.integer_part.clone());
        for (c, d) in self.residues.iter().zip(&self.moduli) {
            v += BigRational::new(BigInt::from(*c), BigInt::from(*d));
        }
        v
    }
}

/// The unique decomposition of `q` over the scheme, whether or not `q` is
/// in the monoid; `q` is a member exactly when the integer part is >= 0.
pub fn decompose(scheme: &UnitFractionScheme, q: &BigRational) -> Result<CanonicalDecomposition, FamilyError> {
    let den = q.denom().clone();
    let involved = scheme.involved(&den)?;
    let product: BigInt = involved.iter().map(|(_, d)| BigInt::from(*d)).product();
    if !(&product % &den).is_zero() {
        return Err(FamilyError::DenominatorOutsideScheme(den.to_string()));
    }
    let a = (q * BigRational::from_integer(product.clone())).to_integer();
    let len = involved.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
    let moduli = scheme.prefix(len).expect("positions come from the scheme");
    let mut residues = vec![0u64; len];
    let mut rest = a.clone();
    for &(i, d) in &involved {
        let db = BigInt::from(d);
        let cofactor = &product / &db;
        let inv = mod_inverse(&cofactor.mod_floor(&db), &db);
        let c = (&a * inv).mod_floor(&db);
        rest -= &c * &cofactor;
        residues[i] = c.to_u64().unwrap();
    }
    debug_assert!((&rest % &product).is_zero());
    let integer_part = rest / product;
    let digit_sum = residues.iter().sum();
    Ok(CanonicalDecomposition { integer_part, residues, moduli, digit_sum })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Canonical form of a member.
pub fn canonical(scheme: &UnitFractionScheme, q: &Rational) -> Result<CanonicalDecomposition, FamilyError> {
    let c = decompose(scheme, q.as_big())?;
    if c.integer_part.is_negative() {
        return Err(FamilyError::NotInMonoid(q.to_string()));
    }
    Ok(c)
}

/// Whether `b - a` lies in the monoid.
pub fn divides(scheme: &UnitFractionScheme, a: &Rational, b: &Rational) -> Result<bool, FamilyError> {
    let diff = b.as_big() - a.as_big();
    if diff.is_negative() {
        return Ok(false);
    }
    Ok(!decompose(scheme, &diff)?.integer_part.is_negative())
}

/// `(N(q), S(q))`: integer part and residue digit sum.
pub fn monotones(scheme: &UnitFractionScheme, q: &Rational) -> Result<(BigInt, u64), FamilyError> {
    let c = canonical(scheme, q)?;
    Ok((c.integer_part, c.digit_sum))
}

/// `{d_1, ..., d_k}`, each in L(1) because `1 = d_n * (1/d_n)`. Only a subset
/// of L(1), so never complete.
pub fn lengths_of_one(scheme: &UnitFractionScheme, k: usize) -> Result<LengthSet, FamilyError> {
    let d = scheme.prefix(k).ok_or_else(|| FamilyError::InvalidScheme(format!("scheme has fewer than {k} moduli")))?;
    let mut lengths = d;
    lengths.sort_unstable();
    Ok(LengthSet { lengths, complete: false })
}

/// Whether `q` is one of the atoms `1/d_j`.
pub fn is_atom(scheme: &UnitFractionScheme, q: &Rational) -> bool {
    if !q.num().is_one() {
        return false;
    }
    match scheme {
        UnitFractionScheme::ExplicitList(v) => v.iter().any(|d| BigInt::from(*d) == *q.den()),
        UnitFractionScheme::Primes => q.den().to_u64().is_some_and(is_prime),
    }
}

/// Report for an infinite scheme; finite lists are finitely generated and
/// are classified as such by the caller.
pub fn classify_infinite(certified: usize) -> Result<ClassificationReport, ClassifyError> {
    let mut r = ClassificationReport::new();
    r.rank = Rank::Finite(1);
    r.set(
        Property::Accp,
        Tri::Yes,
        Provenance::new(
            Rule::UnitFractionMonotones,
            "a proper divisor has smaller (N, S) in lexicographic order, and both are nonnegative integers",
        ),
    )?;
    r.set(
        Property::Atomic,
        Tri::Yes,
        Provenance::new(Rule::UnitFractionAtoms, "the atoms are exactly the 1/d_j, and they generate"),
    )?;
    let lengths = primes(certified);
    r.set(
        Property::Bfm,
        Tri::No,
        Provenance::new(Rule::LengthsOfOne, "1 = d_n·(1/d_n) puts every d_n in L(1), which is unbounded")
            .with_witness(Witness::LengthsOfOne { lengths }),
    )?;
    propagate(r)
}
