//! Exact signed rationals over 64-bit integers.
//!
//! All color ranks are rationals. Values are kept normalized
//! (`gcd(|num|, den) = 1`, `den >= 1`), comparisons cross-multiply in
//! 128-bit arithmetic so they are always exact, and every arithmetic
//! operation detects overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("rational value does not fit in 64 bits")]
    Overflow,
    #[error("malformed rational {input:?}: expected `int` or `num/den`")]
    Malformed { input: String },
}

/// An exact rational `num/den` with `den >= 1` and `gcd(|num|, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in normalized form.
    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let negative = (num < 0) != (den < 0);
        let n = num.unsigned_abs();
        let d = den.unsigned_abs();
        let g = gcd(n, d);
        let (n, d) = (n / g, d / g);
        if d > i64::MAX as u64 {
            return Err(RationalError::Overflow);
        }
        let num = if negative {
            if n > 1u64 << 63 {
                return Err(RationalError::Overflow);
            }
            (n as i128).wrapping_neg() as i64
        } else {
            if n > i64::MAX as u64 {
                return Err(RationalError::Overflow);
            }
            n as i64
        };
        Ok(Rational { num, den: d as i64 })
    }

    pub fn from_int(value: i64) -> Self {
        Rational { num: value, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    fn from_i128(num: i128, den: i128) -> Result<Self, RationalError> {
        debug_assert!(den > 0);
        let negative = num < 0;
        let n = num.unsigned_abs();
        let d = den.unsigned_abs();
        let g = gcd128(n, d);
        let (n, d) = (n / g, d / g);
        if d > i64::MAX as u128 || n > if negative { 1u128 << 63 } else { i64::MAX as u128 } {
            return Err(RationalError::Overflow);
        }
        let num = if negative {
            (n as i128).wrapping_neg() as i64
        } else {
            n as i64
        };
        Ok(Rational { num, den: d as i64 })
    }

    pub fn checked_add(&self, other: &Rational) -> Result<Self, RationalError> {
        let num =
            self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        Self::from_i128(num, self.den as i128 * other.den as i128)
    }

    pub fn checked_sub(&self, other: &Rational) -> Result<Self, RationalError> {
        let num =
            self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128;
        Self::from_i128(num, self.den as i128 * other.den as i128)
    }

    pub fn checked_mul(&self, other: &Rational) -> Result<Self, RationalError> {
        Self::from_i128(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    /// Subtracts an integer. The denominator is unchanged, so the result
    /// stays normalized without a gcd pass.
    pub fn checked_sub_int(&self, value: i64) -> Result<Self, RationalError> {
        let num = self.num as i128 - value as i128 * self.den as i128;
        if num < i64::MIN as i128 || num > i64::MAX as i128 {
            return Err(RationalError::Overflow);
        }
        Ok(Rational {
            num: num as i64,
            den: self.den,
        })
    }

    pub fn checked_mul_int(&self, value: i64) -> Result<Self, RationalError> {
        Self::from_i128(self.num as i128 * value as i128, self.den as i128)
    }

    /// Exact comparison against an integer.
    pub fn cmp_int(&self, value: i64) -> Ordering {
        (self.num as i128).cmp(&(value as i128 * self.den as i128))
    }

    /// Sums an iterator of rationals, reporting overflow.
    pub fn checked_sum<'a, I: IntoIterator<Item = &'a Rational>>(
        iter: I,
    ) -> Result<Self, RationalError> {
        let mut acc = Rational::ZERO;
        for r in iter {
            acc = acc.checked_add(r)?;
        }
        Ok(acc)
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // den > 0 on both sides, so cross-multiplication preserves order.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_int(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `int` or `num/den` with a positive denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RationalError::Malformed {
            input: s.to_string(),
        };
        match s.split_once('/') {
            None => {
                let num: i64 = s.trim().parse().map_err(|_| malformed())?;
                Ok(Rational::from_int(num))
            }
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| malformed())?;
                let den: i64 = den.trim().parse().map_err(|_| malformed())?;
                if den <= 0 {
                    return Err(malformed());
                }
                Rational::new(num, den)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(num: i64, den: i64) -> Rational {
        Rational::new(num, den).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(rat(4, 2), rat(2, 1));
        assert_eq!(rat(-4, 2), rat(2, -1));
        assert_eq!(rat(0, 7), Rational::ZERO);
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rat(6, -4).denominator(), 2);
        assert_eq!(rat(6, -4).numerator(), -3);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn extreme_values_roundtrip() {
        assert_eq!(rat(i64::MIN, 1).numerator(), i64::MIN);
        assert_eq!(rat(i64::MIN, 2).numerator(), i64::MIN / 2);
        // |i64::MIN| / den with odd den cannot be re-signed into i64.
        assert_eq!(Rational::new(i64::MIN, -1), Err(RationalError::Overflow));
    }

    #[test]
    fn ordering_is_exact_at_large_magnitudes() {
        let a = rat(i64::MAX, i64::MAX - 1);
        let b = rat(i64::MAX - 1, i64::MAX - 2);
        // (MAX)/(MAX-1) < (MAX-1)/(MAX-2) since cross products differ by 1.
        assert!(a < b);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn sub_int_keeps_denominator() {
        let half = rat(1, 2);
        let r = half.checked_sub_int(1).unwrap();
        assert_eq!(r, rat(-1, 2));
        assert_eq!(r.denominator(), 2);
        let r = r.checked_sub_int(2).unwrap();
        assert_eq!(r, rat(-5, 2));
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let big = rat(i64::MAX, 1);
        assert_eq!(big.checked_add(&Rational::ONE), Err(RationalError::Overflow));
        assert_eq!(
            rat(i64::MIN, 1).checked_sub_int(1),
            Err(RationalError::Overflow)
        );
        assert_eq!(big.checked_mul(&big), Err(RationalError::Overflow));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), rat(3, 2));
        assert_eq!("-3/4".parse::<Rational>().unwrap(), rat(-3, 4));
        assert_eq!("7".parse::<Rational>().unwrap(), rat(7, 1));
        assert_eq!("-12".parse::<Rational>().unwrap(), rat(-12, 1));
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert_eq!(rat(5, 1).to_string(), "5");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("3/-4".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn cmp_int_matches_cmp() {
        assert_eq!(rat(3, 2).cmp_int(1), Ordering::Greater);
        assert_eq!(rat(3, 2).cmp_int(2), Ordering::Less);
        assert_eq!(rat(4, 2).cmp_int(2), Ordering::Equal);
        assert_eq!(rat(-1, 2).cmp_int(0), Ordering::Less);
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in -10_000i64..10_000, b in 1i64..500,
                             c in -10_000i64..10_000, d in 1i64..500) {
            let x = rat(a, b);
            let y = rat(c, d);
            let sum = x.checked_add(&y).unwrap();
            prop_assert_eq!(sum.checked_sub(&y).unwrap(), x);
        }

        #[test]
        fn ordering_agrees_with_cross_multiplication(
            a in -10_000i64..10_000, b in 1i64..500,
            c in -10_000i64..10_000, d in 1i64..500) {
            let x = rat(a, b);
            let y = rat(c, d);
            let expected = (a as i128 * d as i128).cmp(&(c as i128 * b as i128));
            prop_assert_eq!(x.cmp(&y), expected);
        }

        #[test]
        fn normalized_form_is_unique(a in -10_000i64..10_000, b in 1i64..500, k in 1i64..50) {
            prop_assert_eq!(rat(a, b), rat(a * k, b * k));
        }
    }
}
