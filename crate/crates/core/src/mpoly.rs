//! Sparse multivariate polynomials over a field, used as entries of generic
//! tensors.
//!
//! Variables are interned in a process-wide registry so the same name always
//! maps to the same index and printing is reproducible.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Rat, Ring};

/// Index into the variable registry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

#[derive(Default)]
struct Registry {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

impl Var {
    /// Interns `name`, returning the existing index if already known.
    pub fn named(name: &str) -> Var {
        if let Some(&i) = registry().read().unwrap().index.get(name) {
            return Var(i);
        }
        let mut reg = registry().write().unwrap();
        if let Some(&i) = reg.index.get(name) {
            return Var(i);
        }
        let i = reg.names.len() as u32;
        reg.names.push(name.to_string());
        reg.index.insert(name.to_string(), i);
        Var(i)
    }

    pub fn name(self) -> String {
        registry().read().unwrap().names[self.0 as usize].clone()
    }
}

/// Exponent vector stored sparsely as sorted `(var, exponent > 0)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Evaluates at a point; variables missing from `point` count as zero.
    pub fn eval(&self, point: &dyn Fn(Var) -> F) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(x, e) in m.powers() {
                let xv = point(x);
                for _ in 0..e {
                    v = v * xv.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;

    fn neg(self) -> Self {
        MPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Ring for MPoly<F> {
    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
}

impl<F: Field + Signed + fmt::Display> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .powers()
                .iter()
                .map(|&(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
                .collect();
            match (vars.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Rational multivariate polynomial.
pub type MPolyQ = MPoly<Rat>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn registry_is_stable() {
        let a = Var::named("reg_test_a");
        let b = Var::named("reg_test_b");
        assert_ne!(a, b);
        assert_eq!(Var::named("reg_test_a"), a);
        assert_eq!(a.name(), "reg_test_a");
    }

    #[test]
    fn arithmetic_and_display() {
        let x = MPolyQ::var(Var::named("mp_x"));
        let y = MPolyQ::var(Var::named("mp_y"));
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(p, x.clone() * x.clone() - y.clone() * y.clone());
        assert_eq!((x.clone() - x).to_string(), "0");
        assert!(p.to_string().contains("mp_x^2"));
    }

    fn arb_poly(vars: [Var; 3]) -> impl Strategy<Value = MPolyQ> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..5), 0..5).prop_map(move |ts| {
            ts.into_iter().fold(MPolyQ::zero(), |acc, (a, b, c, k)| {
                let mut m = Vec::new();
                for (v, e) in vars.iter().zip([a, b, c]) {
                    if e > 0 {
                        m.push((*v, e));
                    }
                }
                acc + MPolyQ::term(Monomial(m), int(k))
            })
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(
            p in arb_poly([Var::named("pe_a"), Var::named("pe_b"), Var::named("pe_c")]),
            q in arb_poly([Var::named("pe_a"), Var::named("pe_b"), Var::named("pe_c")]),
            xs in prop::collection::vec((-4i64..4, 1i64..4), 3),
        ) {
            let names = [Var::named("pe_a"), Var::named("pe_b"), Var::named("pe_c")];
            let point = |v: Var| {
                let k = names.iter().position(|&n| n == v).unwrap();
                rat(xs[k].0, xs[k].1)
            };
            prop_assert_eq!((p.clone() * q.clone()).eval(&point), p.eval(&point) * q.eval(&point));
            prop_assert_eq!((p.clone() + q.clone()).eval(&point), p.eval(&point) + q.eval(&point));
        }
    }
}
