//! Rational enclosures for a few transcendental constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Bounds on atan(1/m) from consecutive partial sums of the alternating series.
fn atan_inv_bounds(m: i64, terms: u32) -> (BigRational, BigRational) {
    let m2 = r(m * m);
    let mut pow = r(m); // m^(2i+1)
    let mut sum = BigRational::zero();
    let mut next = BigRational::zero();
    for i in 0..=terms {
        let t = BigRational::one() / (&pow * r(2 * i as i64 + 1));
        let signed = if i % 2 == 0 { t } else { -t };
        if i < terms {
            sum += &signed;
        } else {
            next = &sum + &signed;
        }
        pow *= &m2;
    }
    if sum < next {
        (sum, next)
    } else {
        (next, sum)
    }
}

/// Enclosure of pi, tightening with `level` (Machin's formula).
pub fn pi_enclosure(level: u32) -> (BigRational, BigRational) {
    let terms = level + 1;
    let (a_lo, a_hi) = atan_inv_bounds(5, terms);
    let (b_lo, b_hi) = atan_inv_bounds(239, terms);
    (r(16) * a_lo - r(4) * b_hi, r(16) * a_hi - r(4) * b_lo)
}

/// Enclosure of e from the factorial series with its tail bound.
pub fn e_enclosure(level: u32) -> (BigRational, BigRational) {
    let n = level as i64 + 3;
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for j in 0..=n {
        if j > 0 {
            fact *= j;
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    let tail = BigRational::new(BigInt::one(), fact * n);
    (sum.clone(), sum + tail)
}
