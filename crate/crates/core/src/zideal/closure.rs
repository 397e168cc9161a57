//! Brute-force ideal generation in `Q[t]Σ_0 ⊕ … ⊕ Q[t]Σ_N`: close a set of
//! elements under adding a strand, contracting the last strand, both
//! permutation actions and multiplication by `t`, within degree `N`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::PolyModule;
use crate::poly::PolyT;
use crate::scalar::Rat;
use crate::symgroup::{GAElt, Perm};

/// Positions of the permutations of `Σ_n` in coordinate vectors.
#[derive(Clone, Debug)]
pub struct PermIndex {
    perms: Vec<Perm>,
    pos: HashMap<Perm, usize>,
}

impl PermIndex {
    pub fn new(n: usize) -> Self {
        let perms = Perm::all(n);
        let pos = perms.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        PermIndex { perms, pos }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }
}

pub fn to_vector(z: &GAElt, index: &PermIndex) -> Vec<PolyT> {
    let mut v = vec![PolyT::zero(); index.len()];
    for (s, c) in z.terms() {
        v[index.pos[s]] = c.clone();
    }
    v
}

pub fn from_vector(v: &[PolyT], n: usize, index: &PermIndex) -> GAElt {
    let mut out = GAElt::zero(n);
    for (s, c) in index.perms.iter().zip(v) {
        if !c.is_zero() {
            out = out + GAElt::term(s.clone(), c.clone());
        }
    }
    out
}

/// The graded pieces of a generated ideal, up to a degree bound.
#[derive(Clone, Debug)]
pub struct Closure {
    indices: Vec<PermIndex>,
    modules: Vec<PolyModule<Rat>>,
}

impl Closure {
    pub fn bound(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, n: usize) -> &PolyModule<Rat> {
        &self.modules[n]
    }

    pub fn contains(&self, z: &GAElt) -> bool {
        let n = z.degree();
        assert!(n <= self.bound(), "degree {n} beyond the closure bound");
        self.modules[n].contains(&to_vector(z, &self.indices[n]))
    }

    /// Generators of the degree `n` piece as group algebra elements.
    pub fn generators(&self, n: usize) -> Vec<GAElt> {
        self.modules[n].rows().iter().map(|r| from_vector(r, n, &self.indices[n])).collect()
    }
}

/// Closes `gens` within degrees `0..=bound`. Fails with
/// [`Error::LimitExceeded`] if `bound > 5`.
pub fn ideal_closure(gens: &[GAElt], bound: usize) -> Result<Closure> {
    if bound > 5 {
        return Err(Error::LimitExceeded(format!("closure up to degree {bound}")));
    }
    let indices: Vec<PermIndex> = (0..=bound).map(PermIndex::new).collect();
    let mut modules: Vec<PolyModule<Rat>> = indices.iter().map(|ix| PolyModule::new(ix.len())).collect();
    let adjacent: Vec<Vec<Perm>> =
        (0..=bound).map(|n| (1..n).map(|i| Perm::transposition(n, i, i + 1)).collect()).collect();
    let mut work: Vec<GAElt> = gens.iter().filter(|g| g.degree() <= bound).cloned().collect();
    while let Some(z) = work.pop() {
        let n = z.degree();
        if z.is_zero() || !modules[n].insert(to_vector(&z, &indices[n])) {
            continue;
        }
        for s in &adjacent[n] {
            work.push(z.left_perm(s));
            work.push(z.right_perm(s));
        }
        if n < bound {
            work.push(z.embed());
        }
        if n > 0 {
            work.push(z.contract_last()?);
        }
    }
    Ok(Closure { indices, modules })
}
