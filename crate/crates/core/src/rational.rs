//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Rationals cross every wire boundary as canonical `"p/q"` strings with
//! `q > 0` and `gcd(p, q) = 1`; the denominator is always written, even when
//! it is `1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` text form.
pub fn format_rational(r: &Rational) -> String {
    // BigRational is kept reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`. Non-canonical inputs such as
/// `"2/4"` are accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("numerator is not an integer"))?;
    let d: BigInt = d.parse().map_err(|_| err("denominator is not an integer"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Least common multiple of the denominators, `1` for an empty slice.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        num_integer::Integer::lcm(&acc, v.denom())
    })
}

/// Wire form of values that contain rationals; used through
/// `#[serde(serialize_with = "crate::rational::wire")]`.
pub trait Wire {
    type Out: serde::Serialize;
    fn wire(&self) -> Self::Out;
}

pub fn wire<T: Wire, S: serde::Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&value.wire(), s)
}

impl Wire for Rational {
    type Out = String;
    fn wire(&self) -> String {
        format_rational(self)
    }
}

impl Wire for usize {
    type Out = usize;
    fn wire(&self) -> usize {
        *self
    }
}

impl<T: Wire> Wire for Vec<T> {
    type Out = Vec<T::Out>;
    fn wire(&self) -> Self::Out {
        self.iter().map(Wire::wire).collect()
    }
}

impl<T: Wire> Wire for Option<T> {
    type Out = Option<T::Out>;
    fn wire(&self) -> Self::Out {
        self.as_ref().map(Wire::wire)
    }
}

impl<A: Wire, B: Wire> Wire for (A, B) {
    type Out = (A::Out, B::Out);
    fn wire(&self) -> Self::Out {
        (self.0.wire(), self.1.wire())
    }
}

impl Wire for Gaussian {
    type Out = [String; 2];
    fn wire(&self) -> Self::Out {
        [format_rational(&self.re), format_rational(&self.im)]
    }
}

/// `a + b·i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Gaussian::default()
    }

    pub fn one() -> Self {
        Gaussian::real(Rational::one())
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn parse_pair(re: &str, im: &str) -> Result<Self, ParseRationalError> {
        Ok(Gaussian::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.im.is_negative() {
            write!(
                f,
                "{}-{}i",
                format_rational(&self.re),
                format_rational(&-self.im.clone())
            )
        } else {
            write!(
                f,
                "{}+{}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
}
