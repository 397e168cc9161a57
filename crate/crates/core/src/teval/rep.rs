use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::diagram::{CanonMonomial, Endpoint, Signature};
use crate::error::{Error, Result};
use crate::mpoly::{MPolyQ, Var};
use crate::scalar::{rat, Rat, Ring};
use crate::teval::einsum::{contract_network, Factor};
use crate::teval::tensor::{tuples, Tensor};
use crate::wprop::PropElt;

/// An assignment of a tensor of matching type to every generator.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    sig: Arc<Signature>,
    dim: usize,
    assign: BTreeMap<String, Tensor<S>>,
}

impl<S: Ring> Representation<S> {
    pub fn new(sig: Arc<Signature>, dim: usize, assign: BTreeMap<String, Tensor<S>>) -> Result<Self> {
        for (name, (p, q)) in sig.iter() {
            let t = assign.get(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            if (t.p(), t.q()) != (p, q) {
                return Err(Error::TypeMismatch(p, q, t.p(), t.q()));
            }
            if t.dim() != dim {
                return Err(Error::SizeMismatch(dim, t.dim()));
            }
        }
        if let Some(extra) = assign.keys().find(|k| sig.get(k).is_none()) {
            return Err(Error::UnknownGenerator(extra.clone()));
        }
        Ok(Representation { sig, dim, assign })
    }

    /// The representation of the empty signature.
    pub fn trivial(dim: usize) -> Self {
        Representation { sig: Arc::new(Signature::empty()), dim, assign: BTreeMap::new() }
    }

    pub fn sig(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor_of(&self, name: &str) -> Option<&Tensor<S>> {
        self.assign.get(name)
    }

    /// The value of a linear combination of diagrams.
    pub fn eval(&self, a: &PropElt) -> Result<Tensor<S>> {
        if **a.sig() != *self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Tensor::zero(self.dim, a.p(), a.q());
        for (m, c) in a.terms() {
            let t = self.eval_monomial(m)?.scale(&S::from_rat(c));
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// One diagram: every wire carries an index, boxes contribute their
    /// tensors, and each loop a factor `n`.
    pub fn eval_monomial(&self, m: &CanonMonomial) -> Result<Tensor<S>> {
        // wire labels: free input i is i, box outputs follow
        let mut offsets = Vec::with_capacity(m.boxes().len());
        let mut next = m.p();
        for b in m.boxes() {
            offsets.push(next);
            next += self.sig.arity(&b.gen)?.1;
        }
        let label = |e: &Endpoint| match *e {
            Endpoint::FreeIn(i) => i,
            Endpoint::Out { node, port } => offsets[node] + port,
        };
        let mut factors = Vec::with_capacity(m.boxes().len());
        for (node, b) in m.boxes().iter().enumerate() {
            let t = self.assign.get(&b.gen).ok_or_else(|| Error::UnknownGenerator(b.gen.clone()))?;
            let mut labels: Vec<usize> = b.inputs.iter().map(label).collect();
            labels.extend((0..t.q()).map(|port| offsets[node] + port));
            factors.push(Factor::new(&labels, t.entries().map(|(k, v)| (k.clone(), v.clone()))));
        }
        let mut out: Vec<usize> = (0..m.p()).collect();
        out.extend(m.outputs().iter().map(label));
        let loop_factor = (0..m.loops()).fold(S::one(), |acc, _| acc * S::from_int(self.dim as i64));
        let entries = contract_network(factors, &out, self.dim);
        let mut t = Tensor::from_entries(self.dim, m.p(), m.q(), entries)?;
        if !loop_factor.is_one() {
            t = t.scale(&loop_factor);
        }
        Ok(t)
    }
}

impl Representation<Rat> {
    /// Random small integer entries in `-3..=3`, a few of them zero.
    pub fn random<R: Rng + ?Sized>(sig: Arc<Signature>, dim: usize, rng: &mut R) -> Self {
        let assign = sig
            .iter()
            .map(|(name, (p, q))| {
                let entries: Vec<(Vec<usize>, Rat)> =
                    tuples(dim, p + q).into_iter().map(|k| (k, rat(rng.gen_range(-3..=3), 1))).collect();
                (name.to_string(), Tensor::from_entries(dim, p, q, entries).expect("indices in range"))
            })
            .collect();
        Representation { sig, dim, assign }
    }

    /// `B ↦ value of B` on closed diagrams, the trace function of the
    /// representation.
    pub fn trace_function(&self) -> impl Fn(&CanonMonomial) -> Rat + '_ {
        move |m| self.eval_monomial(m).and_then(|t| t.as_scalar()).expect("closed diagram over the signature")
    }
}

/// Name of the generic entry of `G` at the given upper and lower indices
/// (both 0-based here, printed 1-based): `a[G][k1,…,kq][i1,…,ip]`.
pub fn generic_var_name(gen: &str, up: &[usize], down: &[usize]) -> String {
    let list = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    format!("a[{gen}][{}][{}]", list(down), list(up))
}

/// Every generator gets a tensor whose entries are distinct indeterminates.
pub fn generic_rep(sig: Arc<Signature>, dim: usize) -> Representation<MPolyQ> {
    let assign = sig
        .iter()
        .map(|(name, (p, q))| {
            let entries: Vec<(Vec<usize>, MPolyQ)> = tuples(dim, p + q)
                .into_iter()
                .map(|k| {
                    let v = Var::named(&generic_var_name(name, &k[..p], &k[p..]));
                    (k, MPolyQ::var(v))
                })
                .collect();
            (name.to_string(), Tensor::from_entries(dim, p, q, entries).expect("indices in range"))
        })
        .collect();
    Representation { sig, dim, assign }
}
