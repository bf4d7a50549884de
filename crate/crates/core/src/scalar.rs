//! Exact coefficient fields.
//!
//! Every real number that appears as a Cartan entry, a symmetrizing weight or
//! a root coordinate lives in a field implementing [`Scalar`]. Two fields are
//! provided: plain rationals ([`BigRational`]) and quadratic fields ℚ(√d)
//! ([`QuadraticNumber`]).

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact ordered field.
///
/// Sign decisions are exact, so the combinatorics built on top (descents,
/// inversions, positivity of roots) never depends on rounding.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Sign of `self` compared with zero.
    fn sign(&self) -> Ordering;

    /// Embeds a rational number.
    fn from_rational(q: BigRational) -> Self;

    /// Builds `a + b√d`, or `None` if the field cannot represent it.
    fn from_quadratic(a: BigRational, b: BigRational, d: u64) -> Option<Self>;

    /// The square-free `d` this value needs (1 for rationals).
    fn field_d(&self) -> u64;

    /// Floating-point approximation, for rendering only.
    fn to_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar for BigRational {
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if Signed::is_positive(self) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn from_quadratic(a: BigRational, b: BigRational, d: u64) -> Option<Self> {
        if b.is_zero() {
            Some(a)
        } else if d == 1 {
            Some(a + b)
        } else {
            None
        }
    }

    fn field_d(&self) -> u64 {
        1
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Returns true if `d` has no repeated prime factor.
pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// An element `a + b√d` of a real quadratic field.
///
/// Values with `b = 0` are plain rationals and carry `d = 1`, so they combine
/// freely with any field. Combining two irrational values over different `d`
/// panics; group construction rejects mixed fields before that can happen.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadraticNumber {
    /// Builds `a + b√d`. `d` must be square-free.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(is_square_free(d), "d = {d} is not square-free");
        if b.is_zero() || d == 1 {
            QuadraticNumber {
                a: a + b,
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            QuadraticNumber { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_ints(a_num: i64, a_den: i64, b_num: i64, b_den: i64, d: u64) -> Self {
        let a = BigRational::new(BigInt::from(a_num), BigInt::from(a_den));
        let b = BigRational::new(BigInt::from(b_num), BigInt::from(b_den));
        Self::new(a, b, d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    fn common_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic fields: √{x} and √{y}"),
        }
    }

    /// The conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// The field norm `a² − d b²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        self.a.clone() * self.a.clone() - d * self.b.clone() * self.b.clone()
    }
}

impl Scalar for QuadraticNumber {
    fn sign(&self) -> Ordering {
        let sa = Scalar::sign(&self.a);
        let sb = Scalar::sign(&self.b);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with d b².
        let a2 = self.a.clone() * self.a.clone();
        let db2 = BigRational::from_integer(BigInt::from(self.d)) * self.b.clone() * self.b.clone();
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn from_rational(q: BigRational) -> Self {
        QuadraticNumber::rational(q)
    }

    fn from_quadratic(a: BigRational, b: BigRational, d: u64) -> Option<Self> {
        if !is_square_free(d) {
            return None;
        }
        Some(QuadraticNumber::new(a, b, d))
    }

    fn field_d(&self) -> u64 {
        self.d
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        QuadraticNumber::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        QuadraticNumber::rational(BigRational::one())
    }
}

impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_d(&rhs);
        QuadraticNumber::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.common_d(&rhs);
        QuadraticNumber::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_d(&rhs);
        let dq = BigRational::from_integer(BigInt::from(d));
        let a = self.a.clone() * rhs.a.clone() + dq * self.b.clone() * rhs.b.clone();
        let b = self.a * rhs.b + self.b * rhs.a;
        QuadraticNumber::new(a, b, d)
    }
}

impl Div for QuadraticNumber {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let norm = rhs.norm();
        let num = self * rhs.conjugate();
        QuadraticNumber::new(num.a / norm.clone(), num.b / norm, num.d)
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticNumber {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if Signed::is_positive(&self.b) {
                write!(f, "+")?;
            }
        }
        if self.b == BigRational::one() {
            write!(f, "√{}", self.d)
        } else if self.b == -BigRational::one() {
            write!(f, "-√{}", self.d)
        } else {
            write!(f, "{}√{}", self.b, self.d)
        }
    }
}

impl Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// The rational number `num/den` in any field.
pub fn ratio<F: Scalar>(num: i64, den: i64) -> F {
    F::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadraticNumber {
        QuadraticNumber::from_ints(a, 1, b, 1, d)
    }

    #[test]
    fn golden_identity() {
        // ((1+√5)/2)² = (3+√5)/2
        let phi = QuadraticNumber::from_ints(1, 2, 1, 2, 5);
        assert_eq!(phi.clone() * phi, QuadraticNumber::from_ints(3, 2, 1, 2, 5));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = q(3, -2, 2);
        let y = q(-1, 5, 2);
        assert_eq!((x.clone() * y.clone()) / y, x);
    }

    #[test]
    fn sign_near_zero() {
        // 3 - 2√2 ≈ 0.17 > 0, 2 - √5 < 0
        assert_eq!(q(3, -2, 2).sign(), Ordering::Greater);
        assert_eq!(q(2, -1, 5).sign(), Ordering::Less);
        assert_eq!(q(-3, 2, 2).sign(), Ordering::Less);
        assert_eq!(q(0, 0, 5).sign(), Ordering::Equal);
    }

    #[test]
    fn rationals_collapse_d() {
        assert_eq!(q(2, 0, 5), q(2, 0, 7));
        assert_eq!(q(2, 0, 5).field_d(), 1);
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_fields_panic() {
        let _ = q(0, 1, 2) + q(0, 1, 3);
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(5));
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
    }
}
