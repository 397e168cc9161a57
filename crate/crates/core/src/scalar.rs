//! Scalar traits the rest of the crate is generic over.
//!
//! Everything that only needs ring operations (tensor contraction, group
//! algebra products) is written against [`Ring`]; anything that divides
//! (polynomial gcd, row reduction) needs a [`Field`]. Exact work uses
//! [`Rat`]; `f64`/`f32` are supported for quick numerical experiments.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary precision rational number, always stored in lowest terms.
pub type Rat = BigRational;

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;

    fn from_rat(r: &Rat) -> Self;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Ring for Rat {
    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Field for Rat {}

macro_rules! float_scalar {
    ($($t:ty)*) => ($(
        impl Ring for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn from_rat(r: &Rat) -> Self {
                use num_traits::ToPrimitive;
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }

        impl Field for $t {}
    )*)
}

float_scalar!(f32 f64);

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| acc * int(k))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rat::new(n, d)
        }
        None => Rat::from_integer(body.parse().ok()?),
    };
    Some(if neg { -value } else { value })
}

/// True when `r` is a whole number.
pub fn is_integral(r: &Rat) -> bool {
    r.is_integer()
}
