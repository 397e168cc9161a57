//! Contracting Young symmetrizers and isotypic blocks by one strand.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::PolyModule;
use crate::poly::PolyT;
use crate::scalar::Rat;
use crate::symgroup::{
    bimodule_component, central_idempotent, component_content, young_symmetrizer, Branch, Cell, GAElt, Partition, Perm,
    Tableau,
};
use crate::wprop::PropElt;
use crate::zideal::closure::{to_vector, PermIndex};

/// `∂^n_n(y_T) = (t + j − i) · y_{T'}` where `(i,j)` holds `n` and `T'` is
/// `T` without it. The contraction is done on diagrams; returns the factor
/// and `y_{T'}` after checking their product.
pub fn contract_symmetrizer(t: &Tableau) -> Result<(PolyT, GAElt)> {
    let n = t.size();
    let (smaller, cell) = t
        .remove_largest()
        .ok_or_else(|| Error::FactorizationFailed("the empty tableau has nothing to contract".into()))?;
    let y = young_symmetrizer::<PolyT>(t);
    let z = PropElt::group_algebra_to_z(&y).contract(n, n)?;
    let contracted = z.z_to_group_algebra()?;
    let factor = PolyT::t_plus(cell.diagonal());
    let y_small = young_symmetrizer::<PolyT>(&smaller);
    if contracted != y_small.scale(&factor) {
        return Err(Error::FactorizationFailed(format!("∂ y_{t} = {contracted}, expected ({factor})·y_{smaller}")));
    }
    Ok((factor, y_small))
}

/// Result of contracting the block `J_λ ⊗ Q[t]` by its last strand.
#[derive(Clone, Debug)]
pub struct Div2Report {
    pub lambda: Partition,
    /// For each removable box: the partition left, the box, the expected
    /// factor `t + j − i`, and the content found in that component.
    pub components: Vec<(Partition, Cell, PolyT, PolyT)>,
    /// No component outside the removable boxes appears.
    pub others_vanish: bool,
    /// The image equals `⊕ (t + j − i) J_ν` as a `Q[t]`-module.
    pub modules_equal: bool,
}

impl Div2Report {
    pub fn holds(&self) -> bool {
        self.others_vanish && self.modules_equal && self.components.iter().all(|(_, _, want, got)| want == got)
    }
}

/// Computes `∂^n_n(J_λ)` from the spanning set `y_T · [σ]` (all standard
/// `T` of shape `λ`, all `σ`) and compares it with `⊕_ν (t + j − i) J_ν`.
pub fn div2_check(lambda: &Partition) -> Result<Div2Report> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::IndexOutOfRange("nothing to contract in degree 0".into()));
    }
    let index = PermIndex::new(n - 1);
    let mut image = PolyModule::<Rat>::new(index.len());
    let mut image_elts = Vec::new();
    for t in Tableau::all_standard(lambda) {
        let y = young_symmetrizer::<PolyT>(&t);
        for s in Perm::all(n) {
            let c = y.right_perm(&s).contract_last()?;
            if image.insert(to_vector(&c, &index)) {
                image_elts.push(c);
            }
        }
    }
    let removals = lambda.branch(Branch::Remove);
    let mut target = PolyModule::<Rat>::new(index.len());
    let mut components = Vec::new();
    for (nu, cell) in &removals {
        let factor = PolyT::t_plus(cell.diagonal());
        let e = GAElt::from_rational(&central_idempotent::<Rat>(nu)).scale(&factor);
        for s in Perm::all(n - 1) {
            target.insert(to_vector(&e.right_perm(&s), &index));
        }
        let found = image_elts.iter().fold(PolyT::zero(), |acc, z| {
            acc.gcd_or_zero(&component_content(z, nu).expect("degrees agree"))
        });
        components.push((nu.clone(), *cell, factor, found));
    }
    let others_vanish = Partition::all(n - 1)
        .iter()
        .filter(|nu| !removals.iter().any(|(r, _)| r == *nu))
        .all(|nu| image_elts.iter().all(|z| bimodule_component(z, nu).map(|c| c.is_zero()).unwrap_or(false)));
    let contains_all = |m: &PolyModule<Rat>, other: &PolyModule<Rat>| other.rows().iter().all(|r| m.contains(r));
    let modules_equal = contains_all(&image, &target) && contains_all(&target, &image);
    Ok(Div2Report { lambda: lambda.clone(), components, others_vanish, modules_equal })
}

/// The partitions `ν ⊢ n+1` whose block meets the two-sided ideal generated
/// by `y_T ⊗ [e]`, found by projecting with every `e_ν`. The claim is that
/// these are exactly the `ν` obtained by adding a box to the shape of `T`.
pub fn div1_blocks(t: &Tableau) -> Result<Vec<Partition>> {
    let y = young_symmetrizer::<PolyT>(t).embed();
    let mut out = Vec::new();
    for nu in Partition::all(t.size() + 1) {
        if !bimodule_component(&y, &nu)?.is_zero() {
            out.push(nu);
        }
    }
    Ok(out)
}

pub fn div1_check(t: &Tableau) -> Result<bool> {
    let mut want: Vec<Partition> = t.shape().branch(Branch::Add).into_iter().map(|(p, _)| p).collect();
    want.sort();
    let mut got = div1_blocks(t)?;
    got.sort();
    Ok(want == got)
}

/// `∂^n_n` on `Q[t]Σ_n` through the diagram calculus.
pub fn contract_via_diagrams(z: &GAElt) -> Result<GAElt> {
    let n = z.degree();
    PropElt::group_algebra_to_z(z).contract(n, n)?.z_to_group_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let t = Tableau::parse("12/3").unwrap();
        let (factor, y) = contract_symmetrizer(&t).unwrap();
        assert_eq!(factor, PolyT::t_plus(-1));
        let e = Perm::identity(2);
        let s = Perm::transposition(2, 1, 2);
        assert_eq!(y, GAElt::basis(e) + GAElt::basis(s));
    }

    #[test]
    fn rows_and_columns() {
        for n in 1..=4 {
            let (f, y) = contract_symmetrizer(&Tableau::row(n)).unwrap();
            assert_eq!(f, PolyT::t_plus(n as i64 - 1));
            assert_eq!(y, young_symmetrizer(&Tableau::row(n - 1)));
            let (f, y) = contract_symmetrizer(&Tableau::column(n)).unwrap();
            assert_eq!(f, PolyT::t_plus(1 - n as i64));
            assert_eq!(y, young_symmetrizer(&Tableau::column(n - 1)));
        }
    }

    #[test]
    fn diagram_contraction_agrees_with_strand_rerouting() {
        let t = Tableau::parse("13/2").unwrap();
        let y = young_symmetrizer::<PolyT>(&t);
        assert_eq!(contract_via_diagrams(&y).unwrap(), y.contract_last().unwrap());
    }

    #[test]
    fn block_contraction_small() {
        for lambda in [Partition::new(vec![2, 1]), Partition::new(vec![2]), Partition::new(vec![1])] {
            let r = div2_check(&lambda).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn blocks_reached_by_adding_a_strand() {
        assert!(div1_check(&Tableau::parse("12/3").unwrap()).unwrap());
        assert_eq!(div1_blocks(&Tableau::row(1)).unwrap().len(), 2);
    }
}
