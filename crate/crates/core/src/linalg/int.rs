//! Exact integers with an inline `i64` fast path.
//!
//! Every value that fits in an `i64` is stored inline; arithmetic that
//! overflows promotes to a heap `BigInt`, and results that fit again are
//! demoted. The representation is therefore canonical and `Eq`/`Hash` can be
//! derived structurally.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Floor division (rounds toward negative infinity).
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div_euclid(*b) {
                Some(_) => Int::Small(Integer::div_floor(a, b)),
                None => Int::from_big(Integer::div_floor(&self.to_big(), &d.to_big())),
            },
            _ => Int::from_big(Integer::div_floor(&self.to_big(), &d.to_big())),
        }
    }

    /// Quotient rounded to the nearest integer, so that the remainder has
    /// absolute value at most `|d| / 2`.
    pub fn div_round(&self, d: &Int) -> Int {
        let q = self.div_floor(d);
        let rem = self - &(&q * d);
        // rem has the sign of d; move one step if |2 rem| > |d|
        let twice = &rem + &rem;
        if twice.cmp_abs(d) == Ordering::Greater {
            if rem.is_negative() == d.is_negative() {
                &q + &Int::ONE
            } else {
                &q - &Int::ONE
            }
        } else {
            q
        }
    }

    /// Exact quotient if `d` divides `self`.
    pub fn checked_exact_div(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return if self.is_zero() { Some(Int::ZERO) } else { None };
        }
        let q = self.div_floor(d);
        if &(&q * d) == self {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.checked_exact_div(self).is_some()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => Int::Small(Integer::gcd(a, b)),
            _ => Int::from_big(Integer::gcd(&self.to_big(), &other.to_big())),
        }
    }

    /// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
    pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let e = Integer::extended_gcd(&a.to_big(), &b.to_big());
        let (mut g, mut s, mut t) = (Int::from_big(e.gcd), Int::from_big(e.x), Int::from_big(e.y));
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        (g, s, t)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(v) => Int::Small(v),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                (&self).$method(rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add, +);
checked_binop!(Sub, sub, checked_sub, -);
checked_binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Int::Small(v)),
            Raw::Str(s) => s.parse::<BigInt>().map(Int::from_big).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX);
        let sum = &big + &Int::ONE;
        assert!(matches!(sum, Int::Big(_)));
        let back = &sum - &Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = &big * &big;
        assert_eq!(sq.checked_exact_div(&big), Some(big.clone()));
    }

    #[test]
    fn floor_and_round_division() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(7).div_round(&Int::from(2)), Int::from(3));
        assert_eq!(Int::from(5).div_round(&Int::from(3)), Int::from(2));
        assert_eq!(Int::from(-5).div_round(&Int::from(3)), Int::from(-2));
        assert_eq!(Int::from(4).div_round(&Int::from(-3)), Int::from(-1));
    }

    #[test]
    fn extended_gcd_is_bezout() {
        for (a, b) in [(12i64, 18i64), (-4, 6), (0, 5), (7, 0), (-9, -6)] {
            let (a, b) = (Int::from(a), Int::from(b));
            let (g, s, t) = Int::extended_gcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&(&s * &a) + &(&t * &b), g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn min_value_edge_cases() {
        let m = Int::from(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
        assert_eq!(m.abs().to_string(), "9223372036854775808");
        assert_eq!(m.gcd(&Int::from(2)), Int::from(2));
    }
}
