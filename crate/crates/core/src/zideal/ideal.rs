use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PolyT;
use crate::scalar::is_integral;
use crate::symgroup::{component_content, Cell, GAElt, Partition};
use crate::wprop::PropElt;

/// Normal form of an ideal of the initial wheeled PROP: the zero ideal, or
/// `I(f, C)` with `f` monic and `C` a finite set of boxes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealData {
    zero: bool,
    f: PolyT,
    cells: BTreeSet<Cell>,
}

impl IdealData {
    pub fn new(f: PolyT, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if !f.is_monic() {
            return Err(Error::NotMonic(f.to_string()));
        }
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|c| c.row == 0 || c.col == 0) {
            return Err(Error::Invalid(format!("box {c} is not in the positive quadrant")));
        }
        Ok(IdealData { zero: false, f, cells })
    }

    pub fn zero() -> Self {
        IdealData { zero: true, f: PolyT::zero(), cells: BTreeSet::new() }
    }

    /// The whole of `𝒵`.
    pub fn unit() -> Self {
        IdealData { zero: false, f: PolyT::one(), cells: BTreeSet::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn f(&self) -> &PolyT {
        &self.f
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: IdealJson = serde_json::from_str(src).map_err(|e| Error::Invalid(format!("ideal JSON: {e}")))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&IdealJson::from(self)).expect("plain data")
    }

    /// `g_λ = f · ∏ (t + j − i)` over the boxes `(i,j)` of `C` outside `λ`.
    pub fn g_lambda(&self, lambda: &Partition) -> Result<PolyT> {
        if self.zero {
            return Err(Error::ZeroIdeal);
        }
        Ok(self
            .cells
            .iter()
            .filter(|c| !lambda.contains(**c))
            .fold(self.f.clone(), |acc, c| acc * PolyT::t_plus(c.diagonal())))
    }

    /// The compatible family of this ideal; zero everywhere for the zero ideal.
    pub fn family(&self) -> CompatFamily {
        let me = self.clone();
        CompatFamily::new(move |l| if me.zero { PolyT::zero() } else { me.g_lambda(l).unwrap() })
    }

    /// Membership of `z ∈ 𝒵^p_q`. Components with `p ≠ q` lie in an ideal
    /// only when they vanish.
    pub fn member(&self, z: &PropElt) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        if z.p() != z.q() {
            return Ok(false);
        }
        self.member_ga(&z.z_to_group_algebra()?)
    }

    /// Membership for an element of `Q[t]Σ_n`: `g_λ` divides the content of
    /// every isotypic component.
    pub fn member_ga(&self, z: &GAElt) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        if self.zero {
            return Ok(false);
        }
        for lambda in Partition::all(z.degree()) {
            let h = component_content(z, &lambda)?;
            if !h.is_zero() && !h.divisible_by(&self.g_lambda(&lambda)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn classify(&self) -> Classification {
        if self.zero {
            return Classification::PrimeNotMaximal;
        }
        match (self.f.degree(), self.cells.len()) {
            (Some(1), 0) => {
                // f = t − a
                let a = -self.f.coeff(0);
                if is_integral(&a) {
                    Classification::PrimeNotMaximal
                } else {
                    Classification::Maximal
                }
            }
            (Some(0), 1) => Classification::Maximal,
            _ => Classification::NotPrime,
        }
    }

    /// The boxes of `C` as shaded squares in their bounding rectangle.
    pub fn picture(&self) -> String {
        let rows = self.cells.iter().map(|c| c.row).max().unwrap_or(0);
        let cols = self.cells.iter().map(|c| c.col).max().unwrap_or(0);
        let mut out = String::new();
        for i in 1..=rows {
            for j in 1..=cols {
                out.push(if self.cells.contains(&Cell::new(i, j)) { '■' } else { '□' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for IdealData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let cells: Vec<String> = self.cells.iter().map(ToString::to_string).collect();
        write!(f, "I({}, {{{}}})", self.f, cells.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    #[serde(default)]
    zero: bool,
    #[serde(default = "one_string")]
    f: String,
    #[serde(rename = "C", default)]
    cells: Vec<[usize; 2]>,
}

fn one_string() -> String {
    "1".into()
}

impl TryFrom<IdealJson> for IdealData {
    type Error = Error;

    fn try_from(raw: IdealJson) -> Result<Self> {
        if raw.zero {
            return Ok(IdealData::zero());
        }
        let f = PolyT::parse(&raw.f)?;
        IdealData::new(f, raw.cells.iter().map(|&[i, j]| Cell::new(i, j)))
    }
}

impl From<&IdealData> for IdealJson {
    fn from(d: &IdealData) -> Self {
        IdealJson {
            zero: d.zero,
            f: if d.zero { "0".into() } else { d.f.to_string().replace(' ', "") },
            cells: d.cells.iter().map(|c| [c.row, c.col]).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    NotPrime,
    PrimeNotMaximal,
    Maximal,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NotPrime => "not_prime",
            Classification::PrimeNotMaximal => "prime_not_maximal",
            Classification::Maximal => "maximal",
        })
    }
}

type Rule = dyn Fn(&Partition) -> PolyT + Send + Sync;

/// A partition-indexed family of monic polynomials (zero allowed), given by
/// a rule and memoized.
#[derive(Clone)]
pub struct CompatFamily {
    rule: Arc<Rule>,
    memo: Arc<Mutex<HashMap<Partition, PolyT>>>,
}

impl CompatFamily {
    pub fn new(rule: impl Fn(&Partition) -> PolyT + Send + Sync + 'static) -> Self {
        CompatFamily { rule: Arc::new(rule), memo: Arc::default() }
    }

    pub fn g(&self, lambda: &Partition) -> PolyT {
        if let Some(v) = self.memo.lock().unwrap().get(lambda) {
            return v.clone();
        }
        let v = (self.rule)(lambda).monic();
        self.memo.lock().unwrap().insert(lambda.clone(), v.clone());
        v
    }

    /// Checks compatibility for every removal `μ = λ − box` with `|λ| ≤ n`.
    pub fn check_compatible(&self, n: usize) -> Result<()> {
        for size in 1..=n {
            for lambda in Partition::all(size) {
                let g = self.g(&lambda);
                for (mu, cell) in lambda.branch(crate::symgroup::Branch::Remove) {
                    let gm = self.g(&mu);
                    if gm != g && gm != g.clone() * PolyT::t_plus(cell.diagonal()) {
                        return Err(Error::Incompatible(format!(
                            "g at {lambda} is {g} but at {mu} it is {gm}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CompatFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompatFamily(g_∅ = {})", self.g(&Partition::empty()))
    }
}

/// The smallest compatible family with `g_λ | h`: the ideal generated by
/// `h · J_λ`, equal to `I(h, λ)`.
pub fn principal_ideal(lambda: &Partition, h: &PolyT) -> Result<CompatFamily> {
    if h.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(IdealData::new(h.monic(), lambda.cells())?.family())
}

/// Pointwise gcd; checked for compatibility up to size `bound`.
pub fn ideal_sum(a: &CompatFamily, b: &CompatFamily, bound: usize) -> Result<CompatFamily> {
    let (a, b) = (a.clone(), b.clone());
    let out = CompatFamily::new(move |l| a.g(l).gcd_or_zero(&b.g(l)));
    out.check_compatible(bound)?;
    Ok(out)
}

/// The ideal generated by elements of `Q[t]Σ_n`, as a family: the sum of
/// the principal ideals of the contents of their isotypic components.
pub fn generate(elements: &[GAElt], bound: usize) -> Result<CompatFamily> {
    let mut parts = Vec::new();
    for z in elements {
        for lambda in Partition::all(z.degree()) {
            let h = component_content(z, &lambda)?;
            if !h.is_zero() {
                parts.push(principal_ideal(&lambda, &h)?);
            }
        }
    }
    let out = CompatFamily::new(move |l| parts.iter().fold(PolyT::zero(), |acc, p| acc.gcd_or_zero(&p.g(l))));
    out.check_compatible(bound)?;
    Ok(out)
}

/// Reads off `(f, C)` from the values of `F` on partitions inside the
/// `n × n` square.
///
/// `f` is `g` at the square, and `(i,j) ∈ C` iff the rectangle with corner
/// `(i,j)` changes value when that corner is removed. Fails if the degrees
/// of `g_∅` and `f · ∏ (t + d)` disagree or if `g` still changes one step
/// outside the square, both signs that a jump lies outside the bound.
pub fn normal_form(family: &CompatFamily, n: usize) -> Result<IdealData> {
    let g_empty = family.g(&Partition::empty());
    if g_empty.is_zero() {
        return Ok(IdealData::zero());
    }
    let square = Partition::rectangle(n, n);
    let f = family.g(&square);
    if family.g(&Partition::rectangle(n + 1, n + 1)) != f {
        return Err(Error::JumpsEscapeBound(n));
    }
    let mut cells = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let rect = Partition::rectangle(i, j);
            let corner = Cell::new(i, j);
            if family.g(&rect) != family.g(&rect.without(corner)?) {
                cells.push(corner);
            }
        }
    }
    if g_empty.degree() != Some(f.degree().unwrap_or(0) + cells.len()) {
        return Err(Error::JumpsEscapeBound(n));
    }
    IdealData::new(f, cells)
}
