use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, parse_rat, Rat, Ring};
use crate::symgroup::Perm;

/// A sparse tensor of type `(p,q)` over an `n`-dimensional space: `p` upper
/// indices (inputs) followed by `q` lower indices (outputs). Indices are
/// 0-based here and 1-based in JSON.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<S> {
    dim: usize,
    p: usize,
    q: usize,
    entries: BTreeMap<Vec<usize>, S>,
}

impl<S: Ring> Tensor<S> {
    pub fn zero(dim: usize, p: usize, q: usize) -> Self {
        Tensor { dim, p, q, entries: BTreeMap::new() }
    }

    /// A tensor of type `(0,0)`.
    pub fn scalar(dim: usize, s: S) -> Self {
        let mut t = Self::zero(dim, 0, 0);
        t.add_entry(Vec::new(), s);
        t
    }

    /// `δ^i_j`, the identity wire.
    pub fn delta(dim: usize) -> Self {
        Self::perm(dim, &Perm::identity(1))
    }

    /// The tensor of `[σ]`: upper index `i` equals lower index `σ(i)`.
    pub fn perm(dim: usize, s: &Perm) -> Self {
        let k = s.degree();
        let mut t = Self::zero(dim, k, k);
        for up in tuples(dim, k) {
            let mut key = up.clone();
            let mut down = vec![0; k];
            for (i, &x) in up.iter().enumerate() {
                down[s.apply(i)] = x;
            }
            key.extend(down);
            t.add_entry(key, S::one());
        }
        t
    }

    /// A `(1,1)` tensor from a square matrix, `m[row][col]` at upper `col`
    /// and lower `row`, so that the tensor maps `e_col` to column `col`.
    pub fn from_matrix(m: &[Vec<S>]) -> Self {
        let n = m.len();
        let mut t = Self::zero(n, 1, 1);
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                t.add_entry(vec![c, r], v.clone());
            }
        }
        t
    }

    pub fn from_entries(
        dim: usize,
        p: usize,
        q: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, S)>,
    ) -> Result<Self> {
        let mut t = Self::zero(dim, p, q);
        for (key, v) in entries {
            if key.len() != p + q || key.iter().any(|&k| k >= dim) {
                return Err(Error::IndexOutOfRange(format!("{key:?} in a tensor of type ({p},{q}), dim {dim}")));
            }
            t.add_entry(key, v);
        }
        Ok(t)
    }

    pub(crate) fn add_entry(&mut self, key: Vec<usize>, v: S) {
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(old) => {
                *old = old.clone() + v;
                if old.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, v);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, key: &[usize]) -> S {
        self.entries.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The value of a `(0,0)` tensor.
    pub fn as_scalar(&self) -> Result<S> {
        if (self.p, self.q) != (0, 0) {
            return Err(Error::TypeMismatch(0, 0, self.p, self.q));
        }
        Ok(self.get(&[]))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.p, self.q);
        for (k, v) in &self.entries {
            out.add_entry(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        let mut out = Tensor::zero(self.dim, self.p, self.q);
        for (k, v) in &self.entries {
            out.add_entry(k.clone(), f(v));
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::SizeMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::TypeMismatch(self.p, self.q, other.p, other.q));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-S::one()))
    }

    /// Upper indices of `self` then of `other`, likewise for lower ones.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.p + other.p, self.q + other.q);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                let mut key = Vec::with_capacity(a.len() + b.len());
                key.extend_from_slice(&a[..self.p]);
                key.extend_from_slice(&b[..other.p]);
                key.extend_from_slice(&a[self.p..]);
                key.extend_from_slice(&b[other.p..]);
                out.add_entry(key, x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// Trace over upper index `i` and lower index `j` (1-based).
    pub fn contract(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > self.p || j == 0 || j > self.q {
            return Err(Error::IndexOutOfRange(format!("∂^{i}_{j} on type ({},{})", self.p, self.q)));
        }
        let (ui, dj) = (i - 1, self.p + j - 1);
        let mut out = Self::zero(self.dim, self.p - 1, self.q - 1);
        for (k, v) in &self.entries {
            if k[ui] == k[dj] {
                let key: Vec<usize> =
                    k.iter().enumerate().filter(|&(pos, _)| pos != ui && pos != dj).map(|(_, &x)| x).collect();
                out.add_entry(key, v.clone());
            }
        }
        Ok(out)
    }

    /// Moves upper index `i` to position `σ(i)` and lower index `j` to `τ(j)`.
    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<Self> {
        if sigma.degree() != self.p {
            return Err(Error::SizeMismatch(sigma.degree(), self.p));
        }
        if tau.degree() != self.q {
            return Err(Error::SizeMismatch(tau.degree(), self.q));
        }
        let mut out = Self::zero(self.dim, self.p, self.q);
        for (k, v) in &self.entries {
            let mut key = vec![0; k.len()];
            for i in 0..self.p {
                key[sigma.apply(i)] = k[i];
            }
            for j in 0..self.q {
                key[self.p + tau.apply(j)] = k[self.p + j];
            }
            out.add_entry(key, v.clone());
        }
        Ok(out)
    }

    /// Full contraction with a tensor of the dual type.
    pub fn pair(&self, other: &Self) -> Result<S> {
        self.check_dim(other)?;
        if (self.p, self.q) != (other.q, other.p) {
            return Err(Error::TypeMismatch(other.q, other.p, self.p, self.q));
        }
        let mut acc = S::zero();
        for (k, v) in &self.entries {
            let mut dual = k[self.p..].to_vec();
            dual.extend_from_slice(&k[..self.p]);
            if let Some(w) = other.entries.get(&dual) {
                acc = acc + v.clone() * w.clone();
            }
        }
        Ok(acc)
    }

    /// For a `(1,1)` tensor, the matrix with `m[row][col]` as in
    /// [`Tensor::from_matrix`].
    pub fn to_matrix(&self) -> Result<Vec<Vec<S>>> {
        if (self.p, self.q) != (1, 1) {
            return Err(Error::TypeMismatch(1, 1, self.p, self.q));
        }
        let mut m = vec![vec![S::zero(); self.dim]; self.dim];
        for (k, v) in &self.entries {
            m[k[1]][k[0]] = v.clone();
        }
        Ok(m)
    }
}

/// All `k`-tuples over `0..dim` in lexicographic order.
pub(crate) fn tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    up: Vec<usize>,
    down: Vec<usize>,
    val: String,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    dim: usize,
    #[serde(rename = "type")]
    ty: [usize; 2],
    entries: Vec<EntryJson>,
}

impl Tensor<Rat> {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: TensorJson = serde_json::from_str(src).map_err(|e| Error::Invalid(format!("tensor JSON: {e}")))?;
        Self::from_json_value(raw)
    }

    /// Reads a tensor from an already parsed JSON value.
    pub fn from_value(v: serde_json::Value) -> Result<Self> {
        let raw: TensorJson = serde_json::from_value(v).map_err(|e| Error::Invalid(format!("tensor JSON: {e}")))?;
        Self::from_json_value(raw)
    }

    fn from_json_value(raw: TensorJson) -> Result<Self> {
        let [p, q] = raw.ty;
        let mut entries = Vec::new();
        for e in raw.entries {
            if e.up.len() != p || e.down.len() != q {
                return Err(Error::Invalid(format!("entry {:?}/{:?} does not have type ({p},{q})", e.up, e.down)));
            }
            if e.up.iter().chain(&e.down).any(|&i| i == 0 || i > raw.dim) {
                return Err(Error::IndexOutOfRange(format!("index outside 1..={}", raw.dim)));
            }
            let val = parse_rat(&e.val).ok_or_else(|| Error::Invalid(format!("bad value `{}`", e.val)))?;
            let key = e.up.iter().chain(&e.down).map(|i| i - 1).collect();
            entries.push((key, val));
        }
        Self::from_entries(raw.dim, p, q, entries)
    }

    pub fn to_json(&self) -> String {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| EntryJson {
                up: k[..self.p].iter().map(|i| i + 1).collect(),
                down: k[self.p..].iter().map(|i| i + 1).collect(),
                val: fmt_rat(v),
            })
            .collect();
        serde_json::to_string(&TensorJson { dim: self.dim, ty: [self.p, self.q], entries }).expect("plain data")
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Tensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.p + self.q == 0 {
            return write!(f, "{}", self.entries.values().next().expect("nonzero"));
        }
        for (n, (k, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            let up: Vec<String> = k[..self.p].iter().map(|i| (i + 1).to_string()).collect();
            let down: Vec<String> = k[self.p..].iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "[{}|{}] {v}", up.join(","), down.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn delta_traces_to_dimension() {
        let d = Tensor::<Rat>::delta(3);
        assert_eq!(d.contract(1, 1).unwrap().as_scalar().unwrap(), int(3));
        assert_eq!(d.pair(&d).unwrap(), int(3));
    }

    #[test]
    fn permutation_tensors_close_to_powers() {
        let s = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let t = Tensor::<Rat>::perm(2, &s);
        let e = Tensor::<Rat>::perm(2, &Perm::identity(3));
        // two cycles: n^2
        assert_eq!(t.pair(&e).unwrap(), int(4));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"dim":2,"type":[2,1],"entries":[{"up":[1,2],"down":[1],"val":"3/2"}]}"#;
        let t = Tensor::from_json(src).unwrap();
        assert_eq!(t.get(&[0, 1, 0]), rat(3, 2));
        assert_eq!(Tensor::from_json(&t.to_json()).unwrap(), t);
        assert!(Tensor::from_json(r#"{"dim":2,"type":[1,0],"entries":[{"up":[3],"down":[],"val":"1"}]}"#).is_err());
    }

    #[test]
    fn matrices() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        let t = Tensor::from_matrix(&m);
        assert_eq!(t.to_matrix().unwrap(), m);
        assert_eq!(t.contract(1, 1).unwrap().as_scalar().unwrap(), int(5));
    }
}
