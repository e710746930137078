//! Exact rationals and the group Q/Z.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `q` as `"p/q"`, or as a bare integer when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// `serde(with = ...)` adapter storing rationals as `"p/q"` strings.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// An element of Q/Z, represented by its unique representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rational);

pub fn frac_part(q: &Rational) -> QmodZ {
    QmodZ(q - q.floor())
}

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn new(num: i64, den: i64) -> Self {
        frac_part(&rat(num, den))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Smallest k > 0 with k * self in Z. This is the reduced denominator.
    pub fn ord_plus(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn scale(&self, k: &BigInt) -> QmodZ {
        frac_part(&(&self.0 * Rational::from_integer(k.clone())))
    }
}

pub fn ord_plus(q: &QmodZ) -> BigInt {
    q.ord_plus()
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl Add for &QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        frac_part(&(&self.0 + &rhs.0))
    }
}

impl Sub for &QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        frac_part(&(&self.0 - &rhs.0))
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        frac_part(&-&self.0)
    }
}

impl Mul<i64> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        self.scale(&BigInt::from(k))
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let q = parse_rational(&s).map_err(serde::de::Error::custom)?;
        Ok(frac_part(&q))
    }
}

/// `base^exp` for a possibly negative integer exponent.
pub fn pow_signed(base: &BigInt, exp: &BigInt) -> Result<Rational> {
    let e: u32 = exp
        .abs()
        .try_into()
        .map_err(|_| Error::Internal("exponent too large".into()))?;
    let p = Rational::from_integer(num_traits::pow(base.clone(), e as usize));
    if exp.is_negative() {
        if p.is_zero() {
            return Err(Error::Internal("zero to a negative power".into()));
        }
        Ok(p.recip())
    } else {
        Ok(p)
    }
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frac_part_examples() {
        assert_eq!(frac_part(&rat(7, 4)).value(), &rat(3, 4));
        assert_eq!(frac_part(&rat(-1, 3)).value(), &rat(2, 3));
        assert!(frac_part(&int(2)).is_zero());
    }

    #[test]
    fn ord_plus_examples() {
        assert_eq!(QmodZ::new(1, 2).ord_plus(), BigInt::from(2));
        assert_eq!(QmodZ::new(3, 7).ord_plus(), BigInt::from(7));
        assert_eq!(QmodZ::zero().ord_plus(), BigInt::from(1));
    }

    #[test]
    fn string_round_trip() {
        for s in ["-4/27", "1/4", "0", "12", "-3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
    }

    #[test]
    fn signed_powers() {
        let c = pow_signed(&BigInt::from(2), &BigInt::from(2)).unwrap()
            * pow_signed(&BigInt::from(-3), &BigInt::from(-3)).unwrap();
        assert_eq!(c, rat(-4, 27));
    }

    // Naive representation: unreduced (n, d) pairs compared by cross-multiplication.
    fn naive_add(a: (i64, i64), b: (i64, i64)) -> (i128, i128) {
        (a.0 as i128 * b.1 as i128 + b.0 as i128 * a.1 as i128, a.1 as i128 * b.1 as i128)
    }

    fn naive_mul(a: (i64, i64), b: (i64, i64)) -> (i128, i128) {
        (a.0 as i128 * b.0 as i128, a.1 as i128 * b.1 as i128)
    }

    fn agrees(q: &Rational, n: (i128, i128)) -> bool {
        BigInt::from(n.0) * q.denom() == BigInt::from(n.1) * q.numer()
    }

    fn reduced(q: &Rational) -> bool {
        q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
    }

    proptest! {
        #[test]
        fn arithmetic_matches_unreduced(an in -1000i64..1000, ad in 1i64..1000, bn in -1000i64..1000, bd in 1i64..1000) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let s = &a + &b;
            let p = &a * &b;
            prop_assert!(reduced(&s) && reduced(&p));
            prop_assert!(agrees(&s, naive_add((an, ad), (bn, bd))));
            prop_assert!(agrees(&p, naive_mul((an, ad), (bn, bd))));
        }

        #[test]
        fn ord_plus_is_reduced_denominator(a in -500i64..500, b in 1i64..500) {
            let g = num_integer::gcd(a, b).max(1);
            prop_assert_eq!(frac_part(&rat(a, b)).ord_plus(), BigInt::from(b / g));
        }

        #[test]
        fn frac_part_in_unit_interval(a in -10_000i64..10_000, b in 1i64..300) {
            let q = rat(a, b);
            let f = frac_part(&q);
            prop_assert!(!f.value().is_negative() && f.value() < &int(1));
            prop_assert!((&q - f.value()).is_integer());
        }

        #[test]
        fn qmodz_group_laws(a in -200i64..200, b in 1i64..50, c in -200i64..200, d in 1i64..50) {
            let x = QmodZ::new(a, b);
            let y = QmodZ::new(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert!((&x + &(-&x)).is_zero());
        }
    }
}
