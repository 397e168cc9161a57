use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::PolyT;
use crate::scalar::{factorial, int, Rat, Ring};
use crate::symgroup::character::{char_int, dimension};
use crate::symgroup::{Partition, Perm, Tableau};

/// Element of the group algebra `R Σ_n`.
///
/// Products follow [`Perm::compose`]: `[a]·[b] = [a ∘ b]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupAlgebra<R> {
    n: usize,
    coeffs: BTreeMap<Perm, R>,
}

/// `Q[t] Σ_n`, which is the `(n,n)` part of the initial wheeled PROP.
pub type GAElt = GroupAlgebra<PolyT>;

impl<R: Ring> GroupAlgebra<R> {
    pub fn zero(n: usize) -> Self {
        GroupAlgebra { n, coeffs: BTreeMap::new() }
    }

    /// `[e]`
    pub fn one(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    /// `[σ]`
    pub fn basis(s: Perm) -> Self {
        Self::term(s, R::one())
    }

    pub fn term(s: Perm, c: R) -> Self {
        let mut out = Self::zero(s.degree());
        out.add_term(s, c);
        out
    }

    /// Builds from `(σ, c)` pairs, summing repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Perm, R)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (s, c) in terms {
            if s.degree() != n {
                return Err(Error::SizeMismatch(s.degree(), n));
            }
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, s: Perm, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &R)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, s: &Perm) -> R {
        self.coeffs.get(s).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n);
        for (s, v) in &self.coeffs {
            out.add_term(s.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> GroupAlgebra<S> {
        let mut out = GroupAlgebra::zero(self.n);
        for (s, v) in &self.coeffs {
            out.add_term(s.clone(), f(v));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, v) in &other.coeffs {
            out.add_term(s.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: HashMap<Perm, R> = HashMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let p = a.mul(b);
                let v = x.clone() * y.clone();
                match acc.get_mut(&p) {
                    Some(slot) => *slot = slot.clone() + v,
                    None => {
                        acc.insert(p, v);
                    }
                }
            }
        }
        Ok(GroupAlgebra { n: self.n, coeffs: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `[σ]·self`
    pub fn left_perm(&self, s: &Perm) -> Self {
        GroupAlgebra { n: self.n, coeffs: self.coeffs.iter().map(|(p, v)| (s.mul(p), v.clone())).collect() }
    }

    /// `self·[σ]`
    pub fn right_perm(&self, s: &Perm) -> Self {
        GroupAlgebra { n: self.n, coeffs: self.coeffs.iter().map(|(p, v)| (p.mul(s), v.clone())).collect() }
    }

    /// `self ⊗ [e]`, adding one strand on the right.
    pub fn embed(&self) -> Self {
        GroupAlgebra { n: self.n + 1, coeffs: self.coeffs.iter().map(|(p, v)| (p.extend(), v.clone())).collect() }
    }

    /// The anti-involution `[σ] ↦ [σ⁻¹]`.
    pub fn antipode(&self) -> Self {
        GroupAlgebra { n: self.n, coeffs: self.coeffs.iter().map(|(p, v)| (p.inverse(), v.clone())).collect() }
    }
}

impl GAElt {
    /// Closes the last strand: feeds output `n` back into input `n`.
    ///
    /// A fixed strand becomes a loop and contributes `t`; otherwise the
    /// strand arriving at `n` is routed on to where `n` was going.
    pub fn contract_last(&self) -> Result<GAElt> {
        let n = self.n;
        if n == 0 {
            return Err(Error::IndexOutOfRange("cannot contract a degree 0 element".into()));
        }
        let mut out = GAElt::zero(n - 1);
        for (s, v) in &self.coeffs {
            let img = s.images();
            if img[n - 1] == n - 1 {
                out.add_term(Perm::from_images(img[..n - 1].to_vec())?, v.clone() * PolyT::t());
            } else {
                let mut next: Vec<usize> = img[..n - 1].to_vec();
                let a = next.iter().position(|&x| x == n - 1).expect("some strand reaches n");
                next[a] = img[n - 1];
                out.add_term(Perm::from_images(next)?, v.clone());
            }
        }
        Ok(out)
    }

    /// Sets `t = c`.
    pub fn specialize(&self, c: &Rat) -> GroupAlgebra<Rat> {
        self.map_coeffs(|p| p.eval(c))
    }

    pub fn from_rational(g: &GroupAlgebra<Rat>) -> GAElt {
        g.map_coeffs(|c| PolyT::constant(c.clone()))
    }

    /// Monic gcd of all coefficients; zero for the zero element.
    pub fn content(&self) -> PolyT {
        self.coeffs.values().fold(PolyT::zero(), |g, c| g.gcd_or_zero(c))
    }
}

impl<R: Ring> Add for GroupAlgebra<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("group algebra degrees differ")
    }
}

impl<R: Ring> Neg for GroupAlgebra<R> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<R: Ring> Sub for GroupAlgebra<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for GroupAlgebra<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("group algebra degrees differ")
    }
}

impl<R: Ring> Mul for &GroupAlgebra<R> {
    type Output = GroupAlgebra<R>;

    fn mul(self, rhs: Self) -> GroupAlgebra<R> {
        self.try_mul(rhs).expect("group algebra degrees differ")
    }
}

impl fmt::Display for GAElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.coeffs.iter().enumerate() {
            let perm = format!("[{}]", s.cycle_string());
            let (neg, c) = if c.leading().is_some_and(|l| l < &Rat::zero()) && c.coeffs().len() == 1 {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.is_one() {
                write!(f, "{perm}")?;
            } else if c.coeffs().len() == 1 {
                write!(f, "{c}*{perm}")?;
            } else {
                write!(f, "({c})*{perm}")?;
            }
        }
        Ok(())
    }
}

/// `e_λ = (χ_λ(e)/n!) Σ_σ χ_λ(σ⁻¹) [σ]`.
pub fn central_idempotent<R: Ring>(lambda: &Partition) -> GroupAlgebra<R> {
    let n = lambda.size();
    let scale = int(dimension(lambda)) / factorial(n);
    let mut out = GroupAlgebra::zero(n);
    for s in Perm::all(n) {
        let chi = char_int(lambda, &s.cycle_type());
        if chi != 0 {
            out.add_term(s, R::from_rat(&(scale.clone() * int(chi))));
        }
    }
    out
}

type IdemCache = RwLock<HashMap<Partition, Arc<GAElt>>>;

/// Memoized `e_λ` over `Q[t]`.
pub(crate) fn idempotent(lambda: &Partition) -> Arc<GAElt> {
    static CACHE: OnceLock<IdemCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.read().unwrap().get(lambda) {
        return e.clone();
    }
    let e = Arc::new(central_idempotent::<PolyT>(lambda));
    cache.write().unwrap().insert(lambda.clone(), e.clone());
    e
}

/// `y_T = Σ_{σ ∈ R(T), μ ∈ C(T)} sgn(μ) [μσ]`.
pub fn young_symmetrizer<R: Ring>(t: &Tableau) -> GroupAlgebra<R> {
    let rows = t.row_group();
    let cols = t.column_group();
    let mut out = GroupAlgebra::zero(t.size());
    for mu in &cols {
        let sign = R::from_int(mu.sign());
        for sigma in &rows {
            out.add_term(mu.mul(sigma), sign.clone());
        }
    }
    out
}

/// The `λ`-isotypic part `e_λ · z` of a two-sided module element.
pub fn bimodule_component(z: &GAElt, lambda: &Partition) -> Result<GAElt> {
    if lambda.size() != z.degree() {
        return Err(Error::SizeMismatch(lambda.size(), z.degree()));
    }
    idempotent(lambda).try_mul(z)
}

/// Generator of the `Q[t]`-ideal `h` with `K[t]Σ_n · z_λ · K[t]Σ_n = (h) ⊗ J_λ`.
pub fn component_content(z: &GAElt, lambda: &Partition) -> Result<PolyT> {
    Ok(bimodule_component(z, lambda)?.content())
}

/// Sum of the idempotents `e_λ` over all `λ ⊢ n`, kept for checks.
pub fn idempotent_sum(n: usize) -> GAElt {
    Partition::all(n)
        .iter()
        .fold(GAElt::zero(n), |acc, l| acc + (*idempotent(l)).clone())
}
