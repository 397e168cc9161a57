use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::diagram::{CanonMonomial, Signature};
use crate::error::{Error, Result};
use crate::linalg::{inverse, nullspace, rank};
use crate::mpoly::Monomial;
use crate::scalar::{int, Rat};
use crate::symgroup::Perm;
use crate::teval::rep::{generic_rep, Representation};
use crate::teval::tensor::Tensor;
use crate::wprop::{enumerate_monomials, PropElt};

/// Which of the diagram identities of a semisimple Lie algebra hold.
#[derive(Clone, Debug, PartialEq)]
pub struct LieReport {
    pub antisymmetry: bool,
    pub jacobi: bool,
    /// `κ^{a,b} = L^{a,c}_d L^{b,d}_c` as a matrix.
    pub killing: Vec<Vec<Rat>>,
    pub nondegenerate: bool,
    /// The inverse of `κ`, when it exists.
    pub casimir: Option<Vec<Vec<Rat>>>,
    /// `κ^{a,b} C_{b,e} = ↓^a_e` checked through diagrams.
    pub casimir_inverse: Option<bool>,
    /// `L` with its output lowered by `κ` is alternating in all three slots.
    pub lowered_alternating: Option<bool>,
}

impl LieReport {
    pub fn is_lie_algebra(&self) -> bool {
        self.antisymmetry && self.jacobi
    }

    pub fn is_semisimple(&self) -> bool {
        self.is_lie_algebra()
            && self.nondegenerate
            && self.casimir_inverse == Some(true)
            && self.lowered_alternating == Some(true)
    }
}

impl fmt::Display for LieReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "antisymmetry: {}", yn(self.antisymmetry))?;
        writeln!(f, "jacobi: {}", yn(self.jacobi))?;
        writeln!(f, "killing form:")?;
        for row in &self.killing {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        if !self.nondegenerate {
            return write!(f, "killing form singular: not semisimple");
        }
        writeln!(f, "casimir inverse: {}", yn(self.casimir_inverse == Some(true)))?;
        write!(f, "lowered bracket alternating: {}", yn(self.lowered_alternating == Some(true)))
    }
}

fn lie_sig() -> Arc<Signature> {
    Arc::new(Signature::empty().with("L", 2, 1).unwrap().with("C", 0, 2).unwrap())
}

fn expr(src: &str, sig: &Arc<Signature>) -> PropElt {
    PropElt::parse(src, sig.clone()).expect("built-in expression")
}

/// Evaluates the Lie algebra identities for a `(2,1)` structure tensor.
pub fn check_lie(l: &Tensor<Rat>) -> Result<LieReport> {
    if (l.p(), l.q()) != (2, 1) {
        return Err(Error::TypeMismatch(2, 1, l.p(), l.q()));
    }
    let n = l.dim();
    let sig = lie_sig();
    let zero_c = Tensor::zero(n, 0, 2);
    let rep = Representation::new(sig.clone(), n, BTreeMap::from([("L".into(), l.clone()), ("C".into(), zero_c)]))?;
    let antisymmetry = rep.eval(&expr("L^{a,b}_c [a,b;c] + L^{b,a}_c [a,b;c]", &sig))?.is_zero();
    let jacobi = rep
        .eval(&expr(
            "L^{a,d}_e L^{b,c}_d [a,b,c;e] + L^{b,d}_e L^{c,a}_d [a,b,c;e] + L^{c,d}_e L^{a,b}_d [a,b,c;e]",
            &sig,
        ))?
        .is_zero();
    let kappa_t = rep.eval(&expr("L^{a,c}_d L^{b,d}_c [a,b;]", &sig))?;
    let killing: Vec<Vec<Rat>> = (0..n).map(|a| (0..n).map(|b| kappa_t.get(&[a, b])).collect()).collect();
    let Ok(c) = inverse(&killing) else {
        return Ok(LieReport {
            antisymmetry,
            jacobi,
            killing,
            nondegenerate: false,
            casimir: None,
            casimir_inverse: None,
            lowered_alternating: None,
        });
    };
    let c_t = Tensor::from_entries(
        n,
        0,
        2,
        (0..n).flat_map(|b| (0..n).map(move |e| (b, e))).map(|(b, e)| (vec![b, e], c[b][e].clone())),
    )?;
    let rep = Representation::new(sig.clone(), n, BTreeMap::from([("L".into(), l.clone()), ("C".into(), c_t)]))?;
    let casimir_inverse = rep.eval(&expr("L^{a,c}_d L^{b,d}_c C_{b,e} [a;e]", &sig))? == Tensor::delta(n);
    let lowered = rep.eval(&expr("L^{a,b}_c L^{c,x}_y L^{d,y}_x [a,b,d;]", &sig))?;
    let swaps = [Perm::transposition(3, 1, 2), Perm::transposition(3, 2, 3)];
    let lowered_alternating = swaps
        .iter()
        .all(|s| lowered.act(s, &Perm::identity(0)).map(|x| x == lowered.scale(&-Rat::one())).unwrap_or(false));
    Ok(LieReport {
        antisymmetry,
        jacobi,
        killing,
        nondegenerate: true,
        casimir: Some(c),
        casimir_inverse: Some(casimir_inverse),
        lowered_alternating: Some(lowered_alternating),
    })
}

/// Structure constants `[x_a, x_b] = Σ_c L^{a,b}_c x_c` from a bracket table
/// of 1-based `(a, b, c, value)`.
pub fn structure_tensor(dim: usize, table: &[(usize, usize, usize, i64)]) -> Tensor<Rat> {
    let mut t = Tensor::zero(dim, 2, 1);
    for &(a, b, c, v) in table {
        t.add_entry(vec![a - 1, b - 1, c - 1], int(v));
        t.add_entry(vec![b - 1, a - 1, c - 1], int(-v));
    }
    t
}

/// `sl₂` in the basis `(e, h, f)`.
pub fn sl2() -> Tensor<Rat> {
    structure_tensor(3, &[(2, 1, 1, 2), (2, 3, 3, -2), (1, 3, 2, 1)])
}

/// `so(3)`: the cross product on `Q³`.
pub fn so3() -> Tensor<Rat> {
    structure_tensor(3, &[(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)])
}

/// The two-dimensional nonabelian Lie algebra `[x, y] = y`.
pub fn nonabelian2() -> Tensor<Rat> {
    structure_tensor(2, &[(1, 2, 2, 1)])
}

/// `Alt_{n+1}` with `n` copies of `A` closed onto strands `2..n+1`, leaving
/// strand 1 open; a `(1,1)` element over `{A:(1,1)}`.
pub fn cayley_hamilton_element(n: usize) -> PropElt {
    let sig = Arc::new(Signature::empty().with("A", 1, 1).unwrap());
    let a = PropElt::generator(sig.clone(), "A").unwrap();
    let mut copies = PropElt::identity(sig.clone());
    for _ in 0..n {
        copies = copies.tensor(&a).unwrap();
    }
    let mut x = PropElt::alt_in(sig, n + 1).then(&copies).unwrap();
    for _ in 0..n {
        x = x.contract(2, 2).unwrap();
    }
    x
}

/// Whether `Alt_{n+1}` closed against `n` copies of `A` vanishes in the
/// dimension of `A`.
pub fn check_cayley_hamilton(n: usize, a: &Tensor<Rat>) -> Result<bool> {
    if (a.p(), a.q()) != (1, 1) {
        return Err(Error::TypeMismatch(1, 1, a.p(), a.q()));
    }
    let x = cayley_hamilton_element(n);
    let rep = Representation::new(x.sig().clone(), a.dim(), BTreeMap::from([("A".into(), a.clone())]))?;
    Ok(rep.eval(&x)?.is_zero())
}

/// The permutation tensors spanning the `GL(V)`-invariants of type `(p,q)`.
pub fn invariant_span_gl(p: usize, q: usize, n: usize) -> Vec<Tensor<Rat>> {
    if p != q {
        return Vec::new();
    }
    Perm::all(p).iter().map(|s| Tensor::perm(n, s)).collect()
}

/// Rank of the matrix of pairings `⟨a_i, b_j⟩`.
pub fn gram_rank(a_list: &[Tensor<Rat>], b_list: &[Tensor<Rat>]) -> Result<usize> {
    let mut rows = Vec::with_capacity(a_list.len());
    for a in a_list {
        let row: Result<Vec<Rat>> = b_list.iter().map(|b| a.pair(b)).collect();
        rows.push(row?);
    }
    Ok(rank(&rows))
}

/// Rank of a list of tensors as vectors.
pub fn tensor_rank(ts: &[Tensor<Rat>]) -> usize {
    let mut coords: HashMap<Vec<usize>, usize> = HashMap::new();
    for t in ts {
        for (k, _) in t.entries() {
            let next = coords.len();
            coords.entry(k.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<Rat>> = ts
        .iter()
        .map(|t| {
            let mut row = vec![Rat::zero(); coords.len()];
            for (k, v) in t.entries() {
                row[coords[k]] = v.clone();
            }
            row
        })
        .collect();
    rank(&rows)
}

/// Options for [`relation_kernel`].
#[derive(Clone, Debug)]
pub struct KernelSpec {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    /// Maximum number of copies of each generator.
    pub degree_bound: BTreeMap<String, usize>,
    /// Loops allowed per monomial (each loop evaluates to `dim`).
    pub max_loops: usize,
    /// Cap on the number of wirings examined during enumeration.
    pub limit: usize,
}

impl KernelSpec {
    pub fn new(p: usize, q: usize, dim: usize) -> Self {
        KernelSpec { p, q, dim, degree_bound: BTreeMap::new(), max_loops: 0, limit: 2_000_000 }
    }
}

/// The monomials of a [`KernelSpec`] and a basis of the linear relations
/// among their generic evaluations.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub monomials: Vec<CanonMonomial>,
    pub basis: Vec<PropElt>,
}

impl Kernel {
    /// Whether `x` (over the same monomials) lies in the span of the basis.
    pub fn contains(&self, x: &PropElt) -> bool {
        let coords = |e: &PropElt| -> Option<Vec<Rat>> {
            let mut v = vec![Rat::zero(); self.monomials.len()];
            for (m, c) in e.terms() {
                let k = self.monomials.iter().position(|mm| mm == m)?;
                v[k] = c.clone();
            }
            Some(v)
        };
        let Some(target) = coords(x) else { return false };
        let mut rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| coords(b).unwrap()).collect();
        let before = rank(&rows);
        rows.push(target);
        rank(&rows) == before
    }
}

/// Linear relations among all monomials of type `(p,q)` within the degree
/// bound, under generic tensors in dimension `dim`.
pub fn relation_kernel(sig: &Arc<Signature>, spec: &KernelSpec) -> Result<Kernel> {
    let base = enumerate_monomials(sig, spec.p, spec.q, &spec.degree_bound, spec.limit)?;
    let monomials: Vec<CanonMonomial> =
        base.iter().flat_map(|m| (0..=spec.max_loops).map(move |k| m.clone().with_loops(k))).collect();
    let rep = generic_rep(sig.clone(), spec.dim);
    // one coordinate per (tensor entry, monomial in the indeterminates)
    let mut coords: HashMap<(Vec<usize>, Monomial), usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let t = rep.eval_monomial(m)?;
        let mut col = Vec::new();
        for (k, poly) in t.entries() {
            for (mono, c) in poly.terms() {
                let next = coords.len();
                let idx = *coords.entry((k.clone(), mono.clone())).or_insert(next);
                col.push((idx, c.clone()));
            }
        }
        columns.push(col);
    }
    let mut rows = vec![vec![Rat::zero(); monomials.len()]; coords.len()];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            rows[*i][j] = c.clone();
        }
    }
    let null = nullspace(&rows, monomials.len());
    let basis = null
        .into_iter()
        .map(|v| {
            let mut e = PropElt::zero(sig.clone(), spec.p, spec.q);
            for (m, c) in monomials.iter().zip(v) {
                e = e + PropElt::term(sig.clone(), m.clone(), c);
            }
            e
        })
        .collect();
    Ok(Kernel { monomials, basis })
}

/// Outcome of [`annihilation_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub unit_is_one: bool,
    pub multiplicative: bool,
    /// Number of probes `⟨Alt_{d+1}, B⟩` tried, and the first that did not vanish.
    pub probes: usize,
    pub failing_probe: Option<String>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.unit_is_one && self.multiplicative && self.failing_probe.is_none()
    }
}

/// Necessary conditions for `f` to be the trace function of a `d`-dimensional
/// representation: `f(1) = 1`, `f(a ⊗ b) = f(a) f(b)` on closed diagrams
/// within the probe bound, and `f(⟨Alt_{d+1}, B⟩) = 0` for every monomial
/// `B` of type `(d+1, d+1)` within the probe bound.
pub fn annihilation_test(
    sig: &Arc<Signature>,
    f: &dyn Fn(&CanonMonomial) -> Rat,
    d: usize,
    probe_bound: &BTreeMap<String, usize>,
    max_loops: usize,
) -> Result<AnnihilationReport> {
    let linear = |x: &PropElt| x.terms().fold(Rat::zero(), |acc, (m, c)| acc + c.clone() * f(m));
    let unit_is_one = f(&CanonMonomial::unit()).is_one();
    let closed: Vec<CanonMonomial> = enumerate_monomials(sig, 0, 0, probe_bound, 100_000)?
        .into_iter()
        .flat_map(|m| (0..=max_loops).map(move |k| m.clone().with_loops(k)))
        .collect();
    let mut multiplicative = unit_is_one;
    'outer: for a in &closed {
        for b in &closed {
            if f(&a.tensor(b)) != f(a) * f(b) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let alt = PropElt::alt_in(sig.clone(), d + 1);
    let mut probes = 0;
    let mut failing_probe = None;
    for b in enumerate_monomials(sig, d + 1, d + 1, probe_bound, 1_000_000)? {
        probes += 1;
        let x = alt.pairing(&PropElt::monomial(sig.clone(), b.clone()))?;
        if !linear(&x).is_zero() {
            failing_probe = Some(b.to_string());
            break;
        }
    }
    Ok(AnnihilationReport { unit_is_one, multiplicative, probes, failing_probe })
}
