use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field of the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    /// `0` for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix('F').map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(Error::Parse(format!("unknown field `{s}`"))),
        }
    }
}

/// An element of `Q` or `F_p`.
///
/// Rationals are always reduced with a positive denominator, so derived
/// equality is mathematical equality. Prime-field values live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { value: u64, prime: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldElem {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field {
            FieldSpec::Rationals => FieldElem::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => FieldElem::Modular {
                value: (n as i128).rem_euclid(p as i128) as u64,
                prime: p,
            },
        }
    }

    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::NotInvertible);
        }
        let num = Self::from_i64(field, num);
        let den = Self::from_i64(field, den).inverse()?;
        Ok(&num * &den)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Rational(_) => FieldSpec::Rationals,
            FieldElem::Modular { prime, .. } => FieldSpec::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(match self {
            FieldElem::Rational(r) => FieldElem::Rational(r.recip()),
            FieldElem::Modular { value, prime } => FieldElem::Modular {
                value: pow_mod(*value, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.field());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Pivot cost used by elimination: smaller numerators first.
    pub(crate) fn pivot_weight(&self) -> (u64, u64) {
        match self {
            FieldElem::Rational(r) => {
                let num = r.numer().abs().to_u64().unwrap_or(u64::MAX);
                let den = r.denom().to_u64().unwrap_or(u64::MAX);
                (num, den)
            }
            FieldElem::Modular { .. } => (0, 0),
        }
    }

    /// Parse `"-3"`, `"5/7"` in the given field.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad number `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match field {
            FieldSpec::Rationals => Ok(FieldElem::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let reduce = |n: &BigInt| {
                    let m = BigInt::from(p);
                    let r = ((n % &m) + &m) % &m;
                    FieldElem::Modular {
                        value: r.to_u64().expect("reduced value fits"),
                        prime: p,
                    }
                };
                let d = reduce(&den).inverse()?;
                Ok(&reduce(&num) * &d)
            }
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(
            self.field(),
            other.field(),
            "mixing elements of different fields"
        );
    }

    /// The sign used by the renderer: positive, negative or zero.
    pub(crate) fn sign_for_display(&self) -> Ordering {
        match self {
            FieldElem::Rational(r) => r.cmp(&BigRational::zero()),
            FieldElem::Modular { value, .. } => value.cmp(&0),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{r}"),
            FieldElem::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Modular { value: a, prime }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: ((*a as u128 + *b as u128) % *prime as u128) as u64,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Modular { value, prime } => FieldElem::Modular {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Modular { value: a, prime }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: mul_mod(*a, *b, *prime),
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("F4".parse::<FieldSpec>(), Err(Error::InvalidPrime(4)));
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "F5");
    }

    #[test]
    fn modular_arithmetic() {
        let f3 = FieldSpec::Prime(3);
        let two = FieldElem::from_i64(f3, 2);
        assert_eq!(&two * &two, FieldElem::one(f3));
        assert_eq!(two.inverse().unwrap(), two);
        assert_eq!(FieldElem::from_i64(f3, -1), two);
        assert_eq!(FieldElem::from_i64(f3, 3), FieldElem::zero(f3));
        assert_eq!(FieldElem::zero(f3).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let a = FieldElem::parse(q, "2/4").unwrap();
        let b = FieldElem::parse(q, "-1/-2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(FieldElem::parse(q, "3/-6").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn parse_in_prime_field_inverts_denominator() {
        let f5 = FieldSpec::Prime(5);
        // 1/2 = 3 mod 5
        assert_eq!(
            FieldElem::parse(f5, "1/2").unwrap(),
            FieldElem::from_i64(f5, 3)
        );
        assert!(FieldElem::parse(f5, "1/5").is_err());
    }
}
