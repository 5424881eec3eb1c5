use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;
use crate::serde_util::int_vec;

/// Integer polynomial, constant term first, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPolynomial {
        let mut g = self.content();
        if g.is_zero() {
            return Self::zero();
        }
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `p(x)` computed with integers only.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // sum a_i u^i v^(n-i) has the sign of p(u/v) since v > 0
        let (u, v) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut pv = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c * &pv;
            pv *= v;
        }
        acc.cmp(&BigInt::zero())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// True when every coefficient is nonnegative, i.e. the polynomial is in N0[x].
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Removes the largest power of `x` dividing the polynomial.
    pub fn strip_zero_roots(&self) -> IntPolynomial {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k..].to_vec())
    }

    /// Number of sign changes between consecutive nonzero coefficients.
    pub fn sign_variations(&self) -> usize {
        count_variations(self.coeffs.iter().map(|c| c.sign()))
    }

    /// Whether `self` divides `other` in Q[x].
    pub fn divides(&self, other: &IntPolynomial) -> bool {
        assert!(!self.is_zero(), "division by the zero polynomial");
        let (_, r) = qdivrem(&to_q(other), &to_q(self));
        r.is_empty()
    }

    /// Exact quotient `other / self` when it has integer coefficients.
    pub fn exact_quotient_of(&self, other: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = qdivrem(&to_q(other), &to_q(self));
        if !r.is_empty() || !q.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Primitive gcd in Z[x] (up to sign, leading coefficient positive).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        from_q_primitive(&qgcd(to_q(self), to_q(other)))
    }

    pub fn squarefree_part(&self) -> IntPolynomial {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        g.exact_quotient_of(&self.primitive())
            .map(|p| p.primitive())
            .unwrap_or_else(|| from_q_primitive(&qdivrem(&to_q(self), &to_q(&g)).0))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Distinct real roots in `(0, inf)`, by a Sturm sequence on the squarefree part.
    pub fn positive_root_count(&self) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let s = self.strip_zero_roots().squarefree_part();
        let seq = sturm_sequence(&s);
        let at_zero = count_variations(seq.iter().map(|p| p.coeff(0).sign()));
        let at_inf =
            count_variations(seq.iter().map(|p| p.leading().map(|c| c.sign()).unwrap_or(num_bigint::Sign::NoSign)));
        Ok(at_zero - at_inf)
    }

    /// Real roots in `(0, inf)` counted with multiplicity.
    pub fn positive_root_count_with_multiplicity(&self) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        // roots of multiplicity >= k are the roots of gcd^(k-1)(p, p')
        let mut p = self.strip_zero_roots().primitive();
        let mut total = 0;
        while p.degree().unwrap_or(0) > 0 {
            total += p.positive_root_count()?;
            p = p.gcd(&p.derivative());
        }
        Ok(total)
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn roots_in_open_interval(&self, lo: &BigRational, hi: &BigRational) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if lo >= hi {
            return Ok(0);
        }
        let s = self.squarefree_part();
        let seq = sturm_sequence(&s);
        let v_lo = count_variations(seq.iter().map(|p| ord_sign(p.sign_at(lo))));
        let v_hi = count_variations(seq.iter().map(|p| ord_sign(p.sign_at(hi))));
        let hi_root = usize::from(s.sign_at(hi) == Ordering::Equal);
        Ok(v_lo - v_hi - hi_root)
    }

    /// Disjoint open intervals, each holding exactly one distinct positive root.
    pub fn isolate_positive_roots(&self) -> Result<Vec<(BigRational, BigRational)>, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let s = self.strip_zero_roots().squarefree_part();
        if s.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let bound = cauchy_bound(&s);
        let mut out = Vec::new();
        let mut stack = vec![(BigRational::zero(), bound)];
        let two = BigRational::from_integer(2.into());
        while let Some((lo, hi)) = stack.pop() {
            match s.roots_in_open_interval(&lo, &hi)? {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / &two;
                    if s.sign_at(&mid) == Ordering::Equal {
                        let mut eps = (&hi - &lo) / BigRational::from_integer(4.into());
                        while s.roots_in_open_interval(&(&mid - &eps), &(&mid + &eps))? != 1 {
                            eps /= &two;
                        }
                        out.push((&mid - &eps, &mid + &eps));
                        stack.push((lo, &mid - &eps));
                        stack.push((&mid + &eps, hi));
                    } else {
                        stack.push((lo, mid.clone()));
                        stack.push((mid, hi));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// All rational roots, by the rational root test.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let p = self.primitive();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        if p.coeff(0).is_zero() {
            roots.push(BigRational::zero());
        }
        let q = p.strip_zero_roots();
        if q.degree().unwrap_or(0) > 0 {
            let lead = q.leading().unwrap().abs();
            let tail = q.coeff(0).abs();
            for u in positive_divisors(&tail) {
                for v in positive_divisors(&lead) {
                    if !u.gcd(&v).is_one() {
                        continue;
                    }
                    for num in [u.clone(), -u.clone()] {
                        let r = BigRational::new(num, v.clone());
                        if q.sign_at(&r) == Ordering::Equal {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// A factor of degree exactly 2 in Z[x], found by Kronecker interpolation.
    ///
    /// Complete for polynomials without rational roots: any quadratic factor
    /// takes values dividing `p` at three integer points.
    pub fn find_quadratic_factor(&self) -> Option<IntPolynomial> {
        let p = self.primitive();
        if p.degree()? < 4 {
            return None;
        }
        let mut pts: Vec<(BigInt, BigInt)> = (-4i64..=4)
            .map(|x| {
                let x = BigInt::from(x);
                let v = p.eval(&BigRational::from_integer(x.clone())).to_integer();
                (x, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        if pts.len() < 3 {
            return None;
        }
        pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
        let pts = &pts[..3];
        let divs: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(k, (_, v))| {
                let pos = positive_divisors(&v.abs());
                if k == 0 {
                    pos
                } else {
                    pos.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
                }
            })
            .collect();
        for d0 in &divs[0] {
            for d1 in &divs[1] {
                for d2 in &divs[2] {
                    let g = interpolate_quadratic(pts, [d0, d1, d2]);
                    let Some(g) = g else { continue };
                    if g.degree() == Some(2) && g.exact_quotient_of(&p).is_some() {
                        return Some(g.primitive());
                    }
                }
            }
        }
        None
    }
}

fn interpolate_quadratic(pts: &[(BigInt, BigInt)], vals: [&BigInt; 3]) -> Option<IntPolynomial> {
    let xs: Vec<BigRational> = pts.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    let mut out = vec![BigRational::zero(); 3];
    for i in 0..3 {
        // Lagrange basis polynomial for node i
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let denom = (&xs[i] - &xs[j]) * (&xs[i] - &xs[k]);
        let scale = BigRational::from_integer(vals[i].clone()) / denom;
        out[0] += &scale * &xs[j] * &xs[k];
        out[1] -= &scale * (&xs[j] + &xs[k]);
        out[2] += scale;
    }
    if !out.iter().all(|c| c.is_integer()) {
        return None;
    }
    Some(IntPolynomial::new(out.into_iter().map(|c| c.to_integer()).collect()))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(IntPolynomial::new(int_vec::deserialize(d)?))
    }
}

fn ord_sign(o: Ordering) -> num_bigint::Sign {
    match o {
        Ordering::Less => num_bigint::Sign::Minus,
        Ordering::Equal => num_bigint::Sign::NoSign,
        Ordering::Greater => num_bigint::Sign::Plus,
    }
}

fn count_variations(signs: impl Iterator<Item = num_bigint::Sign>) -> usize {
    use num_bigint::Sign;
    let mut last = Sign::NoSign;
    let mut n = 0;
    for s in signs {
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Sturm sequence of a squarefree polynomial; every member is scaled by a
/// positive constant to a primitive integer polynomial.
fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(positive_primitive(&p.derivative()));
    loop {
        let n = seq.len();
        let (_, r) = qdivrem(&to_q(&seq[n - 2]), &to_q(&seq[n - 1]));
        if r.is_empty() {
            break;
        }
        let neg: Vec<BigRational> = r.into_iter().map(|c| -c).collect();
        seq.push(positive_scale(&neg));
    }
    seq
}

fn positive_primitive(p: &IntPolynomial) -> IntPolynomial {
    let g = p.content().abs();
    if g.is_zero() {
        return IntPolynomial::zero();
    }
    IntPolynomial::new(p.coeffs.iter().map(|c| c / &g).collect())
}

/// Scales a rational polynomial by a positive constant into a primitive Z[x] element.
fn positive_scale(q: &[BigRational]) -> IntPolynomial {
    let l = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    positive_primitive(&IntPolynomial::new(ints))
}

fn from_q_primitive(q: &[BigRational]) -> IntPolynomial {
    positive_scale(q).primitive()
}

fn to_q(p: &IntPolynomial) -> Vec<BigRational> {
    p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn qtrim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Division with remainder in Q[x].
pub(crate) fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = a.to_vec();
    qtrim(&mut r);
    let mut b = b.to_vec();
    qtrim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r.pop();
        qtrim(&mut r);
    }
    qtrim(&mut q);
    (q, r)
}

fn qgcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    qtrim(&mut a);
    qtrim(&mut b);
    while !b.is_empty() {
        let (_, r) = qdivrem(&a, &b);
        // keep coefficients small
        let r = if r.is_empty() { r } else { to_q(&positive_scale(&r)) };
        a = b;
        b = r;
    }
    a
}

/// 1 + max |a_i / a_n|, an upper bound on the absolute value of every root.
fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().unwrap().abs();
    let m = p.coeffs[..p.coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(m, lead)
}

/// Positive divisors of `|n|` by trial division; empty for zero.
pub(crate) fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if !n.is_one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
