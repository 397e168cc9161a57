//! Enumeration and random sampling of monomials.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{CanonBox, CanonMonomial, Endpoint, Signature, Sink};
use crate::error::{Error, Result};
use crate::scalar::rat;
use crate::symgroup::Perm;
use crate::wprop::PropElt;

/// Boxes for a choice of generator multiplicities, with their sinks and
/// sources listed in a fixed order.
struct Skeleton {
    gens: Vec<(String, usize, usize)>,
    sinks: Vec<Sink>,
    sources: Vec<Endpoint>,
}

impl Skeleton {
    fn new(sig: &Signature, p: usize, q: usize, counts: &BTreeMap<String, usize>) -> Result<Option<Self>> {
        let mut gens = Vec::new();
        for (name, &c) in counts {
            let (gp, gq) = sig.arity(name)?;
            gens.extend(std::iter::repeat_n((name.clone(), gp, gq), c));
        }
        let mut sinks = Vec::new();
        let mut sources: Vec<Endpoint> = (0..p).map(Endpoint::FreeIn).collect();
        for (node, (_, gp, gq)) in gens.iter().enumerate() {
            sinks.extend((0..*gp).map(|port| Sink::In { node, port }));
            sources.extend((0..*gq).map(|port| Endpoint::Out { node, port }));
        }
        sinks.extend((0..q).map(Sink::FreeOut));
        Ok((sinks.len() == sources.len()).then_some(Skeleton { gens, sinks, sources }))
    }

    /// The monomial in which sink `k` is fed by `sources[wiring[k]]`.
    fn build(&self, p: usize, q: usize, wiring: &[usize]) -> CanonMonomial {
        let mut boxes: Vec<CanonBox> = self
            .gens
            .iter()
            .map(|(name, gp, _)| CanonBox { gen: name.clone(), inputs: vec![Endpoint::FreeIn(0); *gp] })
            .collect();
        let mut outputs = vec![Endpoint::FreeIn(0); q];
        for (k, sink) in self.sinks.iter().enumerate() {
            let src = self.sources[wiring[k]];
            match *sink {
                Sink::In { node, port } => boxes[node].inputs[port] = src,
                Sink::FreeOut(j) => outputs[j] = src,
            }
        }
        let arity: Vec<usize> = self.gens.iter().map(|g| g.2).collect();
        CanonMonomial::from_wiring(p, q, 0, boxes, &arity, outputs).expect("a bijective wiring")
    }
}

/// All multiplicity vectors bounded by `bound`.
fn count_vectors(bound: &BTreeMap<String, usize>) -> Vec<BTreeMap<String, usize>> {
    let mut out = vec![BTreeMap::new()];
    for (name, &b) in bound {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=b).map(move |c| {
                    let mut m = m.clone();
                    if c > 0 {
                        m.insert(name.clone(), c);
                    }
                    m
                })
            })
            .collect();
    }
    out
}

/// Every monomial of type `(p,q)` without loops that uses each generator at
/// most `bound[g]` times (generators missing from `bound` are not used).
///
/// Fails with [`Error::LimitExceeded`] if more than `limit` wirings would
/// have to be examined.
pub fn enumerate_monomials(
    sig: &Signature,
    p: usize,
    q: usize,
    bound: &BTreeMap<String, usize>,
    limit: usize,
) -> Result<Vec<CanonMonomial>> {
    let mut skeletons = Vec::new();
    let mut work: usize = 0;
    for counts in count_vectors(bound) {
        if let Some(sk) = Skeleton::new(sig, p, q, &counts)? {
            let n = sk.sinks.len();
            let wirings = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX);
            work = work.saturating_add(wirings);
            if work > limit {
                return Err(Error::LimitExceeded(format!("more than {limit} wirings for type ({p},{q})")));
            }
            skeletons.push(sk);
        }
    }
    let mut seen = BTreeSet::new();
    for sk in &skeletons {
        for w in Perm::all(sk.sinks.len()) {
            seen.insert(sk.build(p, q, w.images()));
        }
    }
    Ok(seen.into_iter().collect())
}

/// A uniformly wired monomial with random generator multiplicities up to
/// `max_each`, or `None` if no balanced choice was found.
pub fn random_monomial<R: Rng + ?Sized>(
    sig: &Signature,
    p: usize,
    q: usize,
    max_each: usize,
    max_loops: usize,
    rng: &mut R,
) -> Option<CanonMonomial> {
    for _ in 0..200 {
        let counts: BTreeMap<String, usize> =
            sig.iter().map(|(name, _)| (name.to_string(), rng.gen_range(0..=max_each))).collect();
        let Ok(Some(sk)) = Skeleton::new(sig, p, q, &counts) else {
            continue;
        };
        let mut wiring: Vec<usize> = (0..sk.sinks.len()).collect();
        wiring.shuffle(rng);
        let m = sk.build(p, q, &wiring);
        let loops = rng.gen_range(0..=max_loops);
        return Some(m.clone().with_loops(loops));
    }
    None
}

/// A random combination of up to `terms` monomials with small rational
/// coefficients.
pub fn random_element<R: Rng + ?Sized>(
    sig: &Arc<Signature>,
    p: usize,
    q: usize,
    terms: usize,
    max_each: usize,
    rng: &mut R,
) -> PropElt {
    let mut out = PropElt::zero(sig.clone(), p, q);
    for _ in 0..terms {
        if let Some(m) = random_monomial(sig, p, q, max_each, 1, rng) {
            let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            out = out + PropElt::term(sig.clone(), m, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn permutations_over_the_empty_signature() {
        let sig = Signature::empty();
        let ms = enumerate_monomials(&sig, 3, 3, &BTreeMap::new(), 1000).unwrap();
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.as_perm().is_some()));
        assert!(enumerate_monomials(&sig, 2, 3, &BTreeMap::new(), 1000).unwrap().is_empty());
        assert!(matches!(
            enumerate_monomials(&sig, 9, 9, &BTreeMap::new(), 1000),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn closed_diagrams_with_one_matrix() {
        // tr(L), tr(L)^2, tr(L^2) with at most two copies of L, plus the empty diagram
        let sig = Signature::empty().with("L", 1, 1).unwrap();
        let bound = BTreeMap::from([("L".to_string(), 2)]);
        let ms = enumerate_monomials(&sig, 0, 0, &bound, 1000).unwrap();
        assert_eq!(ms.len(), 4);
    }

    #[test]
    fn random_monomials_have_requested_type() {
        let sig = Signature::empty().with("A", 2, 1).unwrap().with("B", 1, 2).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_monomial(&sig, 1, 1, 2, 1, &mut rng).unwrap();
            assert_eq!((m.p(), m.q()), (1, 1));
        }
    }
}
