//! Exact integers that stay on `i128` until an operation would overflow.
//!
//! Every geometric predicate in this crate is a polynomial in the input
//! coordinates. For inputs on a modest lattice the values fit comfortably in
//! 128 bits, so [`Int`] runs on native arithmetic and only falls back to
//! [`BigInt`] when a checked operation overflows. Results are identical on
//! both paths.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i128(v: i128) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match self.as_i8() * other.as_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Exact integer with an `i128` fast path.
#[derive(Clone)]
pub enum Int {
    Small(i128),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_bigint(v: BigInt) -> Int {
        match v.to_i128() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(v) => v.clone(),
        }
    }

    pub fn sign(&self) -> Sign {
        match self {
            Int::Small(v) => Sign::of_i128(*v),
            Int::Big(v) => {
                if v.is_zero() {
                    Sign::Zero
                } else if v.is_positive() {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(v) => Int::Big(v.abs()),
        }
    }

    /// Number of bits in the magnitude.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 128 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(v) => v.bits(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v as i128)
    }
}

impl From<i128> for Int {
    fn from(v: i128) -> Int {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int::from_bigint(v)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Int> for &'a Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_bigint(self.to_bigint().$method(rhs.to_bigint()))
            }
        }

        impl $trait<Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &'a Int) -> Int {
                (&self).$method(rhs)
            }
        }

        impl<'a> $trait<Int> for &'a Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: Int) -> Int {
                self.$method(&rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(v) => Int::from_bigint(-v.clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

/// Sign of `a*d - b*c`, the 2x2 determinant used by every planar predicate.
#[inline]
pub fn det2_sign(a: &Int, b: &Int, c: &Int, d: &Int) -> Sign {
    if let (Int::Small(a), Int::Small(b), Int::Small(c), Int::Small(d)) = (a, b, c, d) {
        if let (Some(ad), Some(bc)) = (a.checked_mul(*d), b.checked_mul(*c)) {
            // ad and bc share the i128 range, so comparing avoids a subtraction overflow
            return Sign::of_i128(match ad.cmp(&bc) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            });
        }
    }
    (a * d - b * c).sign()
}

/// `a*d - b*c` exactly.
#[inline]
pub fn det2(a: &Int, b: &Int, c: &Int, d: &Int) -> Int {
    a * d - b * c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Int::from(i128::MAX);
        let sum = &big + &Int::ONE;
        assert!(matches!(sum, Int::Big(_)));
        let back = &sum - &Int::ONE;
        assert!(matches!(back, Int::Small(v) if v == i128::MAX));
    }

    #[test]
    fn det_sign_agrees_with_bigint() {
        let a = Int::from(i128::MAX / 3);
        let b = Int::from(7i64);
        let c = Int::from(-5i64);
        let d = Int::from(i128::MAX / 5);
        let exact = a.to_bigint() * d.to_bigint() - b.to_bigint() * c.to_bigint();
        assert_eq!(det2_sign(&a, &b, &c, &d), Int::from_bigint(exact).sign());
    }

    #[test]
    fn ordering_mixes_representations() {
        let small = Int::from(5i64);
        let big = Int::Big(BigInt::from(i128::MAX) * BigInt::from(4));
        assert!(small < big);
        assert!(-&big < small);
        assert_eq!(Int::Big(BigInt::from(5)), small);
    }

    #[test]
    fn bits_counts_magnitude() {
        assert_eq!(Int::from(0i64).bits(), 0);
        assert_eq!(Int::from(1i64).bits(), 1);
        assert_eq!(Int::from(-8i64).bits(), 4);
    }
}
