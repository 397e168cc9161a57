use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::diagram::{
    canonicalize, parse_expr, Atom, AtomKind, CanonMonomial, FreshNames, Molecule,
    Signature,
};
use crate::error::{Error, Result};
use crate::poly::PolyT;
use crate::scalar::{int, Rat};
use crate::symgroup::{GAElt, Perm};

/// A finite rational combination of monomials of one type `(p,q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropElt {
    sig: Arc<Signature>,
    p: usize,
    q: usize,
    terms: BTreeMap<CanonMonomial, Rat>,
}

impl PropElt {
    pub fn zero(sig: Arc<Signature>, p: usize, q: usize) -> Self {
        PropElt { sig, p, q, terms: BTreeMap::new() }
    }

    pub fn monomial(sig: Arc<Signature>, m: CanonMonomial) -> Self {
        Self::term(sig, m, Rat::one())
    }

    pub fn term(sig: Arc<Signature>, m: CanonMonomial, c: Rat) -> Self {
        let mut out = Self::zero(sig, m.p(), m.q());
        out.add_term(m, c);
        out
    }

    /// `1`, the empty diagram.
    pub fn unit(sig: Arc<Signature>) -> Self {
        Self::monomial(sig, CanonMonomial::unit())
    }

    /// `↓`
    pub fn identity(sig: Arc<Signature>) -> Self {
        Self::monomial(sig, CanonMonomial::identity())
    }

    /// The exceptional loop `∂^1_1(↓)`.
    pub fn loop_(sig: Arc<Signature>) -> Self {
        Self::monomial(sig, CanonMonomial::loop_())
    }

    pub fn perm(sig: Arc<Signature>, s: &Perm) -> Self {
        Self::monomial(sig, CanonMonomial::perm(s))
    }

    pub fn generator(sig: Arc<Signature>, name: &str) -> Result<Self> {
        let (p, q) = sig.arity(name)?;
        Ok(Self::monomial(sig, CanonMonomial::generator(name, p, q)))
    }

    /// `Alt_k = Σ_{σ ∈ Σ_k} sgn(σ)[σ]` over the empty signature.
    pub fn alt(k: usize) -> Self {
        Self::alt_in(Arc::new(Signature::empty()), k)
    }

    pub fn alt_in(sig: Arc<Signature>, k: usize) -> Self {
        let mut out = Self::zero(sig, k, k);
        for s in Perm::all(k) {
            let sign = int(s.sign());
            out.add_term(CanonMonomial::perm(&s), sign);
        }
        out
    }

    /// Parses an expression; all terms must have the same type.
    pub fn parse(src: &str, sig: Arc<Signature>) -> Result<Self> {
        let parsed = parse_expr(src, &sig)?;
        let mut out: Option<PropElt> = None;
        for t in parsed {
            let (ins, outs) = t.ordering();
            let m = canonicalize(&t.molecule, &ins, &outs).map_err(|e| e.at(t.pos))?;
            let loops = m.loops() + t.t_power;
            let m = m.with_loops(loops);
            let acc = out.get_or_insert_with(|| Self::zero(sig.clone(), m.p(), m.q()));
            if (acc.p, acc.q) != (m.p(), m.q()) {
                return Err(Error::TypeMismatch(acc.p, acc.q, m.p(), m.q()).at(t.pos));
            }
            acc.add_term(m, t.coeff);
        }
        Ok(out.expect("parse_expr returns at least one term"))
    }

    pub(crate) fn add_term(&mut self, m: CanonMonomial, c: Rat) {
        debug_assert_eq!((m.p(), m.q()), (self.p, self.q));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn sig(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &CanonMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same element viewed over another signature containing every
    /// generator it uses.
    pub fn with_signature(&self, sig: Arc<Signature>) -> Result<Self> {
        for m in self.terms.keys() {
            for b in m.boxes() {
                if sig.get(&b.gen) != self.sig.get(&b.gen) {
                    return Err(Error::SignatureMismatch);
                }
            }
        }
        Ok(PropElt { sig, ..self.clone() })
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::TypeMismatch(self.p, self.q, other.p, other.q));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.sig.clone(), self.p, self.q);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Multiplies by `t^k`, that is, adds `k` loops to every monomial.
    pub fn mul_t(&self, k: usize) -> Self {
        self.map_monomials(|m| Ok(m.clone().with_loops(m.loops() + k))).expect("adding loops cannot fail")
    }

    /// Multiplies by a polynomial in `t`.
    pub fn mul_poly(&self, f: &PolyT) -> Self {
        let mut out = Self::zero(self.sig.clone(), self.p, self.q);
        for (k, c) in f.coeffs().iter().enumerate() {
            for (m, v) in &self.terms {
                out.add_term(m.clone().with_loops(m.loops() + k), v * c);
            }
        }
        out
    }

    fn map_monomials(&self, f: impl Fn(&CanonMonomial) -> Result<CanonMonomial>) -> Result<Self> {
        let mut out: Option<PropElt> = None;
        for (m, c) in &self.terms {
            let image = f(m)?;
            out.get_or_insert_with(|| Self::zero(self.sig.clone(), image.p(), image.q())).add_term(image, c.clone());
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.sig.clone(), self.p, self.q)))
    }

    /// `self ⊗ other`, bilinear.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig.clone(), self.p + other.p, self.q + other.q);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.tensor(b), x * y);
            }
        }
        Ok(out)
    }

    /// `∂^i_j` (1-based): output `j` fed into input `i`.
    pub fn contract(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > self.p || j == 0 || j > self.q {
            return Err(Error::IndexOutOfRange(format!("∂^{i}_{j} on type ({},{})", self.p, self.q)));
        }
        let mut out = Self::zero(self.sig.clone(), self.p - 1, self.q - 1);
        for (m, c) in &self.terms {
            out.add_term(m.contract(i, j)?, c.clone());
        }
        Ok(out)
    }

    /// Input `i` moves to position `σ(i)`, output `j` to `τ(j)`.
    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<Self> {
        if sigma.degree() != self.p {
            return Err(Error::SizeMismatch(sigma.degree(), self.p));
        }
        if tau.degree() != self.q {
            return Err(Error::SizeMismatch(tau.degree(), self.q));
        }
        let mut out = Self::zero(self.sig.clone(), self.p, self.q);
        for (m, c) in &self.terms {
            out.add_term(m.act(sigma, tau)?, c.clone());
        }
        Ok(out)
    }

    /// Feeds the outputs of `self` into the inputs of `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.q != next.p {
            return Err(Error::TypeMismatch(self.q, 0, next.p, 0));
        }
        let mut acc = self.tensor(next)?;
        for _ in 0..self.q {
            acc = acc.contract(self.p + 1, 1)?;
        }
        Ok(acc)
    }

    /// `⟨self, other⟩`: outputs of `self` to inputs of `other` and outputs
    /// of `other` to inputs of `self`.
    pub fn pairing(&self, other: &Self) -> Result<Self> {
        if (self.p, self.q) != (other.q, other.p) {
            return Err(Error::TypeMismatch(other.q, other.p, self.p, self.q));
        }
        let (p, q) = (self.p, self.q);
        // move every input next to the output it will be joined with
        let images: Vec<usize> = (0..p).map(|i| q + i).chain(0..q).collect();
        let sigma = Perm::from_images(images).expect("block swap");
        let mut acc = self.tensor(other)?.act(&sigma, &Perm::identity(p + q))?;
        for _ in 0..p + q {
            acc = acc.contract(1, 1)?;
        }
        Ok(acc)
    }

    /// Applies the homomorphism determined by `psi` on generators.
    pub fn substitute(&self, psi: &BTreeMap<String, PropElt>, target: Arc<Signature>) -> Result<Self> {
        for (name, image) in psi {
            if let Some((p, q)) = self.sig.get(name) {
                if (image.p, image.q) != (p, q) {
                    return Err(Error::TypeMismatch(p, q, image.p, image.q));
                }
            }
            if *image.sig != *target {
                return Err(Error::SignatureMismatch);
            }
        }
        let mut out = Self::zero(target.clone(), self.p, self.q);
        let mut cache: HashMap<&CanonMonomial, Vec<(CanonMonomial, Rat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let expansion = match cache.get(m) {
                Some(e) => e.clone(),
                None => {
                    let e = substitute_monomial(m, psi)?;
                    cache.insert(m, e.clone());
                    e
                }
            };
            for (mm, cc) in expansion {
                out.add_term(mm, cc * c);
            }
        }
        Ok(out)
    }

    /// Reads a closed element of the empty signature as a polynomial in `t`.
    pub fn to_poly(&self) -> Result<PolyT> {
        if (self.p, self.q) != (0, 0) {
            return Err(Error::TypeMismatch(0, 0, self.p, self.q));
        }
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if !m.boxes().is_empty() {
                return Err(Error::NonemptySignature);
            }
            if coeffs.len() <= m.loops() {
                coeffs.resize(m.loops() + 1, Rat::zero());
            }
            coeffs[m.loops()] += c;
        }
        Ok(PolyT::new(coeffs))
    }

    /// `𝒵^n_n → Q[t]Σ_n`.
    pub fn z_to_group_algebra(&self) -> Result<GAElt> {
        if !self.sig.is_empty() {
            return Err(Error::NonemptySignature);
        }
        if self.p != self.q {
            return Err(Error::TypeMismatch(self.p, self.p, self.p, self.q));
        }
        let mut out = GAElt::zero(self.p);
        for (m, c) in &self.terms {
            let s = m.as_perm().ok_or(Error::NonemptySignature)?;
            out = out + GAElt::term(s, PolyT::monomial(m.loops()).scale(c));
        }
        Ok(out)
    }

    /// `Q[t]Σ_n → 𝒵^n_n`.
    pub fn group_algebra_to_z(g: &GAElt) -> PropElt {
        let n = g.degree();
        let mut out = Self::zero(Arc::new(Signature::empty()), n, n);
        for (s, f) in g.terms() {
            let m = CanonMonomial::perm(s);
            for (k, c) in f.coeffs().iter().enumerate() {
                out.add_term(m.clone().with_loops(k), c.clone());
            }
        }
        out
    }
}

/// Expands `ψ` on one monomial.
fn substitute_monomial(m: &CanonMonomial, psi: &BTreeMap<String, PropElt>) -> Result<Vec<(CanonMonomial, Rat)>> {
    let (mol, ins, outs) = m.to_molecule();
    let mut fresh = FreshNames::avoiding(mol.vars());
    // each generator atom with the list of its replacements
    let mut fixed: Vec<Atom> = Vec::new();
    // loops of `m` and of the images come along as `id^z_z` atoms
    let mut choices: Vec<Vec<(Vec<Atom>, Rat)>> = Vec::new();
    for atom in mol.atoms() {
        let AtomKind::Gen(name) = &atom.kind else {
            fixed.push(atom.clone());
            continue;
        };
        let image = psi.get(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        let mut options = Vec::new();
        for (tm, tc) in &image.terms {
            // free and bound variables are renamed in one pass so the two
            // name spaces cannot collide
            let (tmol, tins, touts) = tm.to_molecule();
            let mut map: HashMap<String, String> = tins
                .into_iter()
                .zip(atom.inputs.iter().cloned())
                .chain(touts.into_iter().zip(atom.outputs.iter().cloned()))
                .collect();
            for v in tmol.bound_vars() {
                map.insert(v, fresh.next());
            }
            let renamed = tmol.rename(|v| map[v].clone());
            options.push((renamed.atoms().to_vec(), tc.clone()));
        }
        choices.push(options);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut atoms = fixed.clone();
        let mut coeff = Rat::one();
        for (opts, &k) in choices.iter().zip(&idx) {
            let (a, c) = &opts[k];
            atoms.extend(a.iter().cloned());
            coeff *= c;
        }
        out.push((canonicalize(&Molecule::from_atoms_unchecked(atoms), &ins, &outs)?, coeff));
        // next index tuple
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

impl Add for PropElt {
    type Output = PropElt;

    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("adding elements of different type or signature")
    }
}

impl Neg for PropElt {
    type Output = PropElt;

    fn neg(self) -> Self {
        self.scale(&-Rat::one())
    }
}

impl Sub for PropElt {
    type Output = PropElt;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for PropElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = m.to_string();
            if a.is_one() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::falling_factorial;

    fn empty() -> Arc<Signature> {
        Arc::new(Signature::empty())
    }

    fn poly(e: &PropElt) -> PolyT {
        e.to_poly().unwrap()
    }

    #[test]
    fn loops_and_pairings() {
        let s = empty();
        let down = PropElt::identity(s.clone());
        assert_eq!(down.contract(1, 1).unwrap(), PropElt::loop_(s.clone()));
        assert_eq!(poly(&down.pairing(&down).unwrap()), PolyT::t());
        let e3 = PropElt::perm(s.clone(), &Perm::identity(3));
        let mut x = e3.clone();
        for _ in 0..3 {
            x = x.contract(1, 1).unwrap();
        }
        assert_eq!(poly(&x), PolyT::monomial(3));
        assert_eq!(poly(&PropElt::alt(3).pairing(&e3).unwrap()), falling_factorial(2));
    }

    #[test]
    fn alternating_sum_in_degree_two() {
        let s = empty();
        let expected = PropElt::perm(s.clone(), &Perm::identity(2))
            - PropElt::perm(s.clone(), &Perm::transposition(2, 1, 2));
        assert_eq!(PropElt::alt(2), expected);
    }

    #[test]
    fn bridge_round_trip_and_products() {
        let s = empty();
        for a in Perm::all(3) {
            for b in Perm::all(3) {
                let ga = GAElt::basis(a.clone()) * GAElt::basis(b.clone());
                let diagram = PropElt::perm(s.clone(), &b).then(&PropElt::perm(s.clone(), &a)).unwrap();
                assert_eq!(PropElt::group_algebra_to_z(&ga), diagram);
                assert_eq!(diagram.z_to_group_algebra().unwrap(), ga);
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let s = empty();
        let x = PropElt::parse("2 t id^x_y - id^a_b [a;b] + 3 id^c_d", s.clone()).unwrap();
        assert_eq!(x.to_string(), "2*id^v0_v1 [v0;v1] + 2*t*id^v0_v1 [v0;v1]");
        assert_eq!(PropElt::parse(&x.to_string(), s.clone()).unwrap(), x);
        let err = PropElt::parse("id^x_y + t", s).unwrap_err();
        assert!(matches!(err, Error::Located { pos: 9, .. }));
        assert!(matches!(err.kind(), Error::TypeMismatch(..)));
    }

    #[test]
    fn substitution_into_generators() {
        let sig = Arc::new(Signature::empty().with("A", 2, 2).unwrap());
        let target = Arc::new(Signature::empty().with("B", 1, 1).unwrap());
        let psi = BTreeMap::from([(
            "A".to_string(),
            PropElt::parse("id^x_w B^y_z [x,y;z,w]", target.clone()).unwrap(),
        )]);
        let x = PropElt::parse("A^{x,y}_{x,z} A^{v,w}_{y,v} [w;z]", sig.clone()).unwrap();
        let got = x.substitute(&psi, target.clone()).unwrap();
        assert_eq!(got, PropElt::parse("t*B^y_z B^w_y [w;z]", target).unwrap());

        let empty = empty();
        let psi = BTreeMap::from([(
            "A".to_string(),
            PropElt::parse("2 id^x_z id^y_w [x,y;z,w] - id^x_w id^y_z [x,y;z,w]", empty.clone()).unwrap(),
        )]);
        let x = PropElt::parse("A^{x,y}_{z,w} A^{w,t}_{u,v} [x,y,t;z,u,v]", sig).unwrap();
        let expected = PropElt::parse(
            "4 id^x_z id^y_u id^t_v [x,y,t;z,u,v] - 2 id^x_z id^y_v id^t_u [x,y,t;z,u,v] \
             - 2 id^x_u id^y_z id^t_v [x,y,t;z,u,v] + id^x_v id^y_z id^t_u [x,y,t;z,u,v]",
            empty.clone(),
        )
        .unwrap();
        assert_eq!(x.substitute(&psi, empty).unwrap(), expected);
    }
}
