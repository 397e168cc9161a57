//! Slow reference constructions that follow the definitions literally,
//! used to cross-check the direct implementations.

use crate::diagram::{canonicalize, product_classes, CanonMonomial};
use crate::error::Result;
use crate::symgroup::Perm;
use crate::wprop::PropElt;

/// `a ⊗ b` by renaming `b` apart and taking the class product.
pub fn tensor_via_molecules(a: &CanonMonomial, b: &CanonMonomial) -> Result<CanonMonomial> {
    let (ma, ia, oa) = a.to_molecule();
    let (mb, ib, ob) = b.to_molecule();
    let mb = mb.rename(|v| format!("{v}_r"));
    let prod = product_classes(&[ma, mb])?;
    let ins: Vec<String> = ia.into_iter().chain(ib.into_iter().map(|v| format!("{v}_r"))).collect();
    let outs: Vec<String> = oa.into_iter().chain(ob.into_iter().map(|v| format!("{v}_r"))).collect();
    canonicalize(&prod, &ins, &outs)
}

/// `∂^i_j` by replacing the `j`-th output variable by the `i`-th input
/// variable.
pub fn contract_via_renaming(a: &CanonMonomial, i: usize, j: usize) -> Result<CanonMonomial> {
    let (m, mut ins, mut outs) = a.to_molecule();
    let x = ins.remove(i - 1);
    let y = outs.remove(j - 1);
    let m = m.rename(|v| if v == y { x.clone() } else { v.to_string() });
    canonicalize(&m, &ins, &outs)
}

/// The port permutation built from copies of `↓` and contractions:
/// `[σ⁻¹]` is composed before `a` and `[τ]` after it.
pub fn act_via_composition(a: &PropElt, sigma: &Perm, tau: &Perm) -> Result<PropElt> {
    let before = PropElt::perm(a.sig().clone(), &sigma.inverse());
    let after = PropElt::perm(a.sig().clone(), tau);
    before.then(a)?.then(&after)
}
