//! Univariate polynomials in the loop parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_rat, Field, Rat, Ring};

/// Dense polynomial; `coeffs[k]` is the coefficient of `t^k`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = F::one();
        Poly { coeffs }
    }

    /// `t + c`, the linear factor attached to a box on diagonal `c`.
    pub fn t_plus(c: i64) -> Self {
        Self::new(vec![F::from_int(c), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// True iff `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> Result<bool> {
        Ok(self.div_rem(d)?.1.is_zero())
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd by Euclid's algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `gcd` that treats `gcd(0, 0) = 0`, convenient for folding.
    pub fn gcd_or_zero(&self, other: &Self) -> Self {
        self.gcd(other).unwrap_or_else(|_| Self::zero())
    }

    /// Extended Euclid: `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let u = u0 - q * u1.clone();
            u0 = std::mem::replace(&mut u1, u);
        }
        let inv = r0.leading().unwrap().inv();
        Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Field> Ring for Poly<F> {
    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
}

impl Poly<Rat> {
    /// Parses the ASCII form `t^3 - 3*t^2 + 2*t`, also accepting `3t`,
    /// `1/2*t` and bare constants.
    pub fn parse(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push((start, &s[start..i]));
                start = i;
            }
        }
        terms.push((start, &s[start..]));
        let mut acc = Self::zero();
        for (pos, term) in terms {
            acc = acc + parse_poly_term(term).ok_or_else(|| Error::parse(pos, format!("bad polynomial term `{term}`")))?;
        }
        Ok(acc)
    }
}

fn parse_poly_term(term: &str) -> Option<Poly<Rat>> {
    let (neg, body) = match term.as_bytes().first()? {
        b'-' => (true, &term[1..]),
        b'+' => (false, &term[1..]),
        _ => (false, term),
    };
    let (coef, var) = match body.find('t') {
        None => (parse_rat(body)?, None),
        Some(idx) => {
            let c = body[..idx].trim_end_matches('*');
            let coef = if c.is_empty() { Rat::one() } else { parse_rat(c)? };
            (coef, Some(&body[idx + 1..]))
        }
    };
    let degree = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
    };
    let coef = if neg { -coef } else { coef };
    Some(Poly::monomial(degree).scale(&coef))
}

impl<F: Field + Signed + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial in `t`, the coefficient ring of the initial wheeled PROP.
pub type PolyT = Poly<Rat>;

/// `t(t-1)...(t-d)`.
pub fn falling_factorial(d: usize) -> PolyT {
    (0..=d as i64).fold(PolyT::one(), |acc, k| acc * PolyT::t_plus(-k))
}
