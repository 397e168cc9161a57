use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use propcalc::diagram::Signature;
use propcalc::teval::{check_lie, relation_kernel, KernelSpec, LieReport, Representation};
use propcalc::zideal::{contract_symmetrizer, div2_check};
use propcalc::{Partition, Perm, PolyT, PropElt, Rat, Tableau};

use crate::{Algebra, Failure, Opts, Suite};

const MAX_SYMMETRIZER_N: usize = 7;
const MAX_DIV2_N: usize = 5;
const MAX_KERNEL_DIM: usize = 3;

/// One checked identity.
pub(crate) struct Item {
    name: String,
    pass: bool,
    detail: Vec<String>,
}

pub(crate) struct Report {
    items: Vec<Item>,
}

impl Report {
    pub(crate) fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub(crate) fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|i| json!({ "name": i.name, "pass": i.pass, "detail": i.detail }))
            .collect();
        json!({ "pass": self.passed(), "items": items })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            writeln!(f, "[{}] {}", if i.pass { "pass" } else { "FAIL" }, i.name)?;
            for line in &i.detail {
                writeln!(f, "    {line}")?;
            }
        }
        writeln!(f, "{}", if self.passed() { "all checks passed" } else { "some checks failed" })
    }
}

fn item(name: impl Into<String>, pass: bool, detail: Vec<String>) -> Item {
    Item { name: name.into(), pass, detail }
}

pub(crate) fn lie_json(r: &LieReport) -> Value {
    let table = |m: &[Vec<Rat>]| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect() };
    json!({
        "antisymmetry": r.antisymmetry,
        "jacobi": r.jacobi,
        "killing": table(&r.killing),
        "nondegenerate": r.nondegenerate,
        "casimir": r.casimir.as_deref().map(table),
        "casimir_inverse": r.casimir_inverse,
        "lowered_alternating": r.lowered_alternating,
    })
}

fn symmetrizer(max_n: usize) -> Result<Vec<Item>, Failure> {
    if max_n > MAX_SYMMETRIZER_N {
        return Err(Failure::Limit(format!("--max-n {max_n} exceeds {MAX_SYMMETRIZER_N} for the symmetrizer suite")));
    }
    let mut items = Vec::new();
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            for t in Tableau::all_standard(&lambda) {
                let cell = t.position(n).expect("n is in T");
                let want = PolyT::t_plus(cell.diagonal());
                let (pass, got) = match contract_symmetrizer(&t) {
                    Ok((f, _)) => (f == want, f.to_string()),
                    Err(e) => (false, e.to_string()),
                };
                items.push(item(format!("∂ y_{t} = ({got}) y_{{T'}}"), pass, Vec::new()));
            }
        }
    }
    Ok(items)
}

fn div2(max_n: usize) -> Result<Vec<Item>, Failure> {
    if max_n > MAX_DIV2_N {
        return Err(Failure::Limit(format!("--max-n {max_n} exceeds {MAX_DIV2_N} for the block suite")));
    }
    let mut items = Vec::new();
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            let r = div2_check(&lambda)?;
            let detail = r
                .components
                .iter()
                .map(|(nu, cell, want, got)| format!("{nu} (box {cell}): want {want}, got {got}"))
                .collect();
            items.push(item(format!("∂ J_{lambda} = ⊕ (t+d) J_ν"), r.holds(), detail));
        }
    }
    Ok(items)
}

fn lie(algebra: Algebra) -> Result<Vec<Item>, Failure> {
    let r = check_lie(&algebra.tensor())?;
    let name = match algebra {
        Algebra::Sl2 => "sl2",
        Algebra::So3 => "so3",
        Algebra::Nonabelian2 => "nonabelian2",
    };
    let killing = r
        .killing
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    Ok(vec![
        item(format!("{name}: antisymmetry"), r.antisymmetry, Vec::new()),
        item(format!("{name}: Jacobi"), r.jacobi, Vec::new()),
        item(format!("{name}: Killing form nondegenerate"), r.nondegenerate, killing),
        item(format!("{name}: Casimir inverts the Killing form"), r.casimir_inverse == Some(true), Vec::new()),
        item(format!("{name}: lowered bracket alternating"), r.lowered_alternating == Some(true), Vec::new()),
    ])
}

fn alt(dim: usize) -> Result<Vec<Item>, Failure> {
    let rep = Representation::<Rat>::trivial(dim);
    let above = rep.eval(&PropElt::alt(dim + 1))?;
    let at = rep.eval(&PropElt::alt(dim))?;
    let lp = rep.eval(&PropElt::loop_(rep.sig().clone()))?.as_scalar()?;
    Ok(vec![
        item(format!("alt({}) ↦ 0 in dimension {dim}", dim + 1), above.is_zero(), Vec::new()),
        item(format!("alt({dim}) ↦ nonzero in dimension {dim}"), !at.is_zero(), vec![format!("{} nonzero entries", at.nnz())]),
        item(format!("loop ↦ {dim}"), lp == Rat::from_integer(dim.into()), Vec::new()),
    ])
}

fn kernel(dim: usize, limit: usize) -> Result<Vec<Item>, Failure> {
    if dim > MAX_KERNEL_DIM {
        return Err(Failure::Limit(format!("--dim {dim} exceeds {MAX_KERNEL_DIM} for the kernel suite")));
    }
    let empty = Arc::new(Signature::empty());
    let mut items = Vec::new();
    for p in 1..=dim {
        let mut spec = KernelSpec::new(p, p, dim);
        spec.limit = limit;
        let k = relation_kernel(&empty, &spec)?;
        items.push(item(format!("no relations among permutations of {p} strands in dimension {dim}"), k.basis.is_empty(), Vec::new()));
    }
    let mut spec = KernelSpec::new(dim + 1, dim + 1, dim);
    spec.limit = limit;
    let k = relation_kernel(&empty, &spec)?;
    let a = PropElt::alt(dim + 1);
    let orbit = Perm::all(dim + 1)
        .iter()
        .all(|s| Perm::all(dim + 1).iter().all(|t| a.act(s, t).map(|x| k.contains(&x)).unwrap_or(false)));
    items.push(item(
        format!("kernel in type ({0},{0}) contains the orbit of alt({0})", dim + 1),
        orbit,
        vec![format!("kernel dimension {}", k.basis.len())],
    ));
    Ok(items)
}

pub(crate) fn run(suite: Suite, algebra: Algebra, max_n: Option<usize>, opts: &Opts) -> Result<Report, Failure> {
    let n = max_n.or(opts.bound);
    let items = match suite {
        Suite::Symmetrizer => symmetrizer(n.unwrap_or(4))?,
        Suite::Div2 => div2(n.unwrap_or(4))?,
        Suite::Lie => lie(algebra)?,
        Suite::Alt => alt(opts.dim)?,
        Suite::Kernel => kernel(opts.dim, opts.limit)?,
        Suite::All => {
            let mut all = symmetrizer(n.unwrap_or(4))?;
            all.extend(div2(n.unwrap_or(4).min(MAX_DIV2_N))?);
            all.extend(lie(Algebra::Sl2)?);
            all.extend(lie(Algebra::So3)?);
            for d in 1..=3 {
                all.extend(alt(d)?);
                all.extend(kernel(d, opts.limit)?);
            }
            all
        }
    };
    Ok(Report { items })
}
