//! Reduced, canonically labelled monomials.
//!
//! After identity atoms are absorbed, a monomial is a set of generator boxes
//! whose ports are all wired: every source (a free input or a box output
//! port) feeds exactly one sink (a box input port or a free output). We store
//! the source of each sink. Because ports are ordered, fixing the label of a
//! single box in a connected component fixes the labels of the whole
//! component, so canonical labels come from a breadth-first walk started at
//! the free ports, and for closed components from the start box giving the
//! smallest encoding.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::diagram::molecule::{Atom, AtomKind, Molecule};
use crate::error::{Error, Result};
use crate::symgroup::Perm;

/// Where a wire starts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Endpoint {
    /// The `i`-th free input (0-based).
    FreeIn(usize),
    /// Output `port` of box `node` (both 0-based).
    Out { node: usize, port: usize },
}

/// Where a wire ends.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sink {
    In { node: usize, port: usize },
    FreeOut(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonBox {
    pub gen: String,
    /// Source feeding each input port, in port order.
    pub inputs: Vec<Endpoint>,
}

/// Canonical form of a monomial: an equivalence class of molecules together
/// with orderings of its free inputs and outputs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonMonomial {
    p: usize,
    q: usize,
    loops: usize,
    boxes: Vec<CanonBox>,
    outputs: Vec<Endpoint>,
}

impl CanonMonomial {
    /// The empty diagram `1`.
    pub fn unit() -> Self {
        CanonMonomial { p: 0, q: 0, loops: 0, boxes: Vec::new(), outputs: Vec::new() }
    }

    /// The wire `↓` of type `(1,1)`.
    pub fn identity() -> Self {
        Self::perm(&Perm::identity(1))
    }

    /// The closed loop, `t` in the initial wheeled PROP.
    pub fn loop_() -> Self {
        Self::unit().with_loops(1)
    }

    /// `[σ]`: input `i` wired to output `σ(i)`.
    pub fn perm(s: &Perm) -> Self {
        let n = s.degree();
        let mut outputs = vec![Endpoint::FreeIn(0); n];
        for i in 0..n {
            outputs[s.apply(i)] = Endpoint::FreeIn(i);
        }
        CanonMonomial { p: n, q: n, loops: 0, boxes: Vec::new(), outputs }
    }

    /// A single generator box with its ports in order.
    pub fn generator(name: &str, p: usize, q: usize) -> Self {
        CanonMonomial {
            p,
            q,
            loops: 0,
            boxes: vec![CanonBox { gen: name.to_string(), inputs: (0..p).map(Endpoint::FreeIn).collect() }],
            outputs: (0..q).map(|port| Endpoint::Out { node: 0, port }).collect(),
        }
    }

    /// Builds a monomial from raw wiring: `boxes[k].inputs` and `outputs`
    /// give the source of every sink, and every source must be used exactly
    /// once. `out_arity[k]` is the number of output ports of box `k`.
    pub fn from_wiring(
        p: usize,
        q: usize,
        loops: usize,
        boxes: Vec<CanonBox>,
        out_arity: &[usize],
        outputs: Vec<Endpoint>,
    ) -> Result<Self> {
        if outputs.len() != q || out_arity.len() != boxes.len() {
            return Err(Error::Invalid("wiring does not match the declared ports".into()));
        }
        let mut free_used = vec![false; p];
        let mut out_used: Vec<Vec<bool>> = out_arity.iter().map(|&k| vec![false; k]).collect();
        for &e in boxes.iter().flat_map(|b| &b.inputs).chain(&outputs) {
            let slot = match e {
                Endpoint::FreeIn(i) => free_used.get_mut(i),
                Endpoint::Out { node, port } => out_used.get_mut(node).and_then(|v| v.get_mut(port)),
            };
            match slot {
                Some(u) if !*u => *u = true,
                _ => return Err(Error::Invalid(format!("source {e:?} missing or used twice"))),
            }
        }
        if free_used.iter().chain(out_used.iter().flatten()).any(|u| !u) {
            return Err(Error::Invalid("a source is left unconnected".into()));
        }
        Ok(CanonMonomial { p, q, loops, boxes, outputs }.normalize())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn boxes(&self) -> &[CanonBox] {
        &self.boxes
    }

    /// Source of each free output.
    pub fn outputs(&self) -> &[Endpoint] {
        &self.outputs
    }

    pub fn with_loops(mut self, k: usize) -> Self {
        self.loops = k;
        self
    }

    /// The same diagram with its loops removed.
    pub fn without_loops(&self) -> Self {
        self.clone().with_loops(0)
    }

    /// Number of boxes per generator.
    pub fn gen_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for b in &self.boxes {
            *out.entry(b.gen.clone()).or_insert(0) += 1;
        }
        out
    }

    /// For a diagram with no boxes, the permutation it represents.
    pub fn as_perm(&self) -> Option<Perm> {
        if !self.boxes.is_empty() || self.p != self.q {
            return None;
        }
        let mut images = vec![0; self.p];
        for (j, e) in self.outputs.iter().enumerate() {
            let Endpoint::FreeIn(i) = e else { return None };
            images[*i] = j;
        }
        Perm::from_images(images).ok()
    }

    /// Number of output ports of each box, read off the wiring.
    pub fn out_arities(&self) -> Vec<usize> {
        let mut ar = vec![0; self.boxes.len()];
        for e in self.boxes.iter().flat_map(|b| &b.inputs).chain(&self.outputs) {
            if let Endpoint::Out { node, port } = *e {
                ar[node] = ar[node].max(port + 1);
            }
        }
        ar
    }

    /// Sink of every free input, and of every output port of every box.
    pub fn sinks(&self) -> (Vec<Sink>, Vec<Vec<Sink>>) {
        let mut free = vec![Sink::FreeOut(usize::MAX); self.p];
        let mut outs: Vec<Vec<Sink>> =
            self.out_arities().into_iter().map(|k| vec![Sink::FreeOut(usize::MAX); k]).collect();
        let mut set = |e: Endpoint, s: Sink| match e {
            Endpoint::FreeIn(i) => free[i] = s,
            Endpoint::Out { node, port } => outs[node][port] = s,
        };
        for (node, b) in self.boxes.iter().enumerate() {
            for (port, &e) in b.inputs.iter().enumerate() {
                set(e, Sink::In { node, port });
            }
        }
        for (j, &e) in self.outputs.iter().enumerate() {
            set(e, Sink::FreeOut(j));
        }
        (free, outs)
    }

    /// Relabels boxes canonically.
    fn normalize(self) -> Self {
        let n = self.boxes.len();
        let (free_sinks, out_sinks) = self.sinks();
        let walk = |order: &mut Vec<usize>, label: &mut Vec<usize>, from: usize| {
            let mut k = from;
            while k < order.len() {
                let m = order[k];
                let next = self.boxes[m]
                    .inputs
                    .iter()
                    .filter_map(|e| match e {
                        Endpoint::Out { node, .. } => Some(*node),
                        Endpoint::FreeIn(_) => None,
                    })
                    .chain(out_sinks[m].iter().filter_map(|s| match s {
                        Sink::In { node, .. } => Some(*node),
                        Sink::FreeOut(_) => None,
                    }));
                for x in next {
                    if label[x] == usize::MAX {
                        label[x] = order.len();
                        order.push(x);
                    }
                }
                k += 1;
            }
        };

        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let anchors = free_sinks
            .iter()
            .filter_map(|s| match s {
                Sink::In { node, .. } => Some(*node),
                Sink::FreeOut(_) => None,
            })
            .chain(self.outputs.iter().filter_map(|e| match e {
                Endpoint::Out { node, .. } => Some(*node),
                Endpoint::FreeIn(_) => None,
            }));
        for x in anchors {
            if label[x] == usize::MAX {
                label[x] = order.len();
                order.push(x);
            }
        }
        walk(&mut order, &mut label, 0);

        // closed components: pick the start box with the smallest encoding
        let mut claimed: Vec<bool> = label.iter().map(|&l| l != usize::MAX).collect();
        let mut comps: Vec<(Vec<CanonBox>, Vec<usize>)> = Vec::new();
        for s in 0..n {
            if claimed[s] {
                continue;
            }
            let mut local = vec![usize::MAX; n];
            let mut members = vec![s];
            local[s] = 0;
            walk(&mut members, &mut local, 0);
            for &m in &members {
                claimed[m] = true;
            }
            let best = members
                .iter()
                .map(|&start| {
                    let mut lab = vec![usize::MAX; n];
                    let mut ord = vec![start];
                    lab[start] = 0;
                    walk(&mut ord, &mut lab, 0);
                    let code: Vec<CanonBox> = ord.iter().map(|&m| self.relabel_box(m, &lab)).collect();
                    (code, ord)
                })
                .min()
                .expect("component is nonempty");
            comps.push(best);
        }
        comps.sort();
        for (_, ord) in comps {
            for m in ord {
                label[m] = order.len();
                order.push(m);
            }
        }

        let boxes = order.iter().map(|&m| self.relabel_box(m, &label)).collect();
        let outputs = self.outputs.iter().map(|&e| relabel(e, &label)).collect();
        CanonMonomial { p: self.p, q: self.q, loops: self.loops, boxes, outputs }
    }

    fn relabel_box(&self, m: usize, label: &[usize]) -> CanonBox {
        let b = &self.boxes[m];
        CanonBox { gen: b.gen.clone(), inputs: b.inputs.iter().map(|&e| relabel(e, label)).collect() }
    }

    /// `self ⊗ other`: `other` drawn to the right.
    pub fn tensor(&self, other: &Self) -> Self {
        let off = self.boxes.len();
        let shift = |e: Endpoint| match e {
            Endpoint::FreeIn(i) => Endpoint::FreeIn(i + self.p),
            Endpoint::Out { node, port } => Endpoint::Out { node: node + off, port },
        };
        let mut boxes = self.boxes.clone();
        boxes.extend(
            other.boxes.iter().map(|b| CanonBox { gen: b.gen.clone(), inputs: b.inputs.iter().map(|&e| shift(e)).collect() }),
        );
        let mut outputs = self.outputs.clone();
        outputs.extend(other.outputs.iter().map(|&e| shift(e)));
        CanonMonomial { p: self.p + other.p, q: self.q + other.q, loops: self.loops + other.loops, boxes, outputs }
        .normalize()
    }

    /// `∂^i_j`: connects output `j` to input `i` (both 1-based).
    pub fn contract(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > self.p {
            return Err(Error::IndexOutOfRange(format!("input {i} of a diagram with {} inputs", self.p)));
        }
        if j == 0 || j > self.q {
            return Err(Error::IndexOutOfRange(format!("output {j} of a diagram with {} outputs", self.q)));
        }
        let (i, j) = (i - 1, j - 1);
        let mut g = self.clone();
        let src = g.outputs.remove(j);
        if src == Endpoint::FreeIn(i) {
            g.loops += 1;
        } else {
            // whatever consumed input i is now fed by `src`
            for e in g.boxes.iter_mut().flat_map(|b| b.inputs.iter_mut()).chain(g.outputs.iter_mut()) {
                if *e == Endpoint::FreeIn(i) {
                    *e = src;
                }
            }
        }
        for e in g.boxes.iter_mut().flat_map(|b| b.inputs.iter_mut()).chain(g.outputs.iter_mut()) {
            if let Endpoint::FreeIn(k) = e {
                if *k > i {
                    *k -= 1;
                }
            }
        }
        g.p -= 1;
        g.q -= 1;
        Ok(g.normalize())
    }

    /// Moves input `i` to position `σ(i)` and output `j` to position `τ(j)`.
    ///
    /// In the initial wheeled PROP this is `[π] ↦ [τ π σ⁻¹]`.
    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<Self> {
        if sigma.degree() != self.p {
            return Err(Error::SizeMismatch(sigma.degree(), self.p));
        }
        if tau.degree() != self.q {
            return Err(Error::SizeMismatch(tau.degree(), self.q));
        }
        let mv = |e: Endpoint| match e {
            Endpoint::FreeIn(i) => Endpoint::FreeIn(sigma.apply(i)),
            other => other,
        };
        let boxes = self
            .boxes
            .iter()
            .map(|b| CanonBox { gen: b.gen.clone(), inputs: b.inputs.iter().map(|&e| mv(e)).collect() })
            .collect();
        let mut outputs = vec![Endpoint::FreeIn(0); self.q];
        for (j, &e) in self.outputs.iter().enumerate() {
            outputs[tau.apply(j)] = mv(e);
        }
        Ok(CanonMonomial { boxes, outputs, ..self.clone() }.normalize())
    }

    /// A molecule representing this monomial, with the orderings of its
    /// free inputs and outputs. Free inputs are named `v0..`, free outputs
    /// next, then bound wires in order of first use.
    pub fn to_molecule(&self) -> (Molecule, Vec<String>, Vec<String>) {
        let ins: Vec<String> = (0..self.p).map(|i| format!("v{i}")).collect();
        let outs: Vec<String> = (0..self.q).map(|j| format!("v{}", self.p + j)).collect();
        let mut next = self.p + self.q;
        let mut fresh = || {
            next += 1;
            format!("v{}", next - 1)
        };
        let arities = self.out_arities();
        let mut out_names: Vec<Vec<Option<String>>> = arities.iter().map(|&k| vec![None; k]).collect();
        for (j, e) in self.outputs.iter().enumerate() {
            if let Endpoint::Out { node, port } = *e {
                out_names[node][port] = Some(outs[j].clone());
            }
        }
        let mut in_names: Vec<Vec<String>> = Vec::with_capacity(self.boxes.len());
        for b in &self.boxes {
            let mut names = Vec::with_capacity(b.inputs.len());
            for &e in &b.inputs {
                names.push(match e {
                    Endpoint::FreeIn(i) => ins[i].clone(),
                    Endpoint::Out { node, port } => out_names[node][port].get_or_insert_with(&mut fresh).clone(),
                });
            }
            in_names.push(names);
        }
        let mut atoms: Vec<Atom> = self
            .boxes
            .iter()
            .zip(in_names)
            .zip(out_names)
            .map(|((b, inputs), outputs)| Atom {
                kind: AtomKind::Gen(b.gen.clone()),
                inputs,
                outputs: outputs.into_iter().map(|o| o.expect("every output port is wired")).collect(),
            })
            .collect();
        for (j, e) in self.outputs.iter().enumerate() {
            if let Endpoint::FreeIn(i) = *e {
                atoms.push(Atom::id(&ins[i], &outs[j]));
            }
        }
        for _ in 0..self.loops {
            let z = fresh();
            atoms.push(Atom::id(&z, &z));
        }
        (Molecule::from_atoms_unchecked(atoms), ins, outs)
    }

    /// Atoms and ordering without the loop factor, e.g. `id^v0_v1 [v0;v1]`;
    /// empty for a diagram with no atoms and no free ports.
    pub fn body_string(&self) -> String {
        let (m, ins, outs) = self.without_loops().to_molecule();
        let mut s = m.to_string();
        if self.p + self.q > 0 {
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(&format!("[{};{}]", ins.join(","), outs.join(",")));
        }
        s
    }
}

fn relabel(e: Endpoint, label: &[usize]) -> Endpoint {
    match e {
        Endpoint::Out { node, port } => Endpoint::Out { node: label[node], port },
        other => other,
    }
}

impl fmt::Display for CanonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.body_string();
        let t = match self.loops {
            0 => String::new(),
            1 => "t".into(),
            k => format!("t^{k}"),
        };
        match (t.is_empty(), body.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{body}"),
            (false, true) => write!(f, "{t}"),
            (false, false) => write!(f, "{t}*{body}"),
        }
    }
}

/// Reduces a molecule and labels it canonically.
///
/// `input_order` and `output_order` must list the free input and output
/// variables of `m`, each exactly once.
pub fn canonicalize(m: &Molecule, input_order: &[String], output_order: &[String]) -> Result<CanonMonomial> {
    check_order(&m.input_vars(), input_order, "inputs")?;
    check_order(&m.output_vars(), output_order, "outputs")?;
    let atoms = m.atoms();
    let mut producer: HashMap<&str, (usize, usize)> = HashMap::new();
    let mut consumer: HashMap<&str, usize> = HashMap::new();
    for (a, atom) in atoms.iter().enumerate() {
        for (port, v) in atom.outputs.iter().enumerate() {
            producer.insert(v, (a, port));
        }
        for v in &atom.inputs {
            consumer.insert(v, a);
        }
    }
    let mut node_of = vec![usize::MAX; atoms.len()];
    let mut n = 0;
    for (a, atom) in atoms.iter().enumerate() {
        if !atom.is_id() {
            node_of[a] = n;
            n += 1;
        }
    }
    let in_pos: HashMap<&str, usize> = input_order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut used = vec![false; atoms.len()];
    let mut resolve = |start: &str| -> Endpoint {
        let mut v = start.to_string();
        loop {
            match producer.get(v.as_str()) {
                None => return Endpoint::FreeIn(in_pos[v.as_str()]),
                Some(&(a, port)) if !atoms[a].is_id() => return Endpoint::Out { node: node_of[a], port },
                Some(&(a, _)) => {
                    used[a] = true;
                    v.clone_from(&atoms[a].inputs[0]);
                }
            }
        }
    };
    let mut boxes = Vec::with_capacity(n);
    for atom in atoms {
        if let AtomKind::Gen(name) = &atom.kind {
            boxes.push(CanonBox { gen: name.clone(), inputs: atom.inputs.iter().map(|v| resolve(v)).collect() });
        }
    }
    let outputs: Vec<Endpoint> = output_order.iter().map(|v| resolve(v)).collect();

    // identity atoms never reached form closed cycles of wire
    let mut loops = 0;
    for a in 0..atoms.len() {
        if !atoms[a].is_id() || used[a] {
            continue;
        }
        loops += 1;
        let mut cur = a;
        loop {
            used[cur] = true;
            let next = consumer[atoms[cur].outputs[0].as_str()];
            if next == a {
                break;
            }
            cur = next;
        }
    }
    Ok(CanonMonomial { p: input_order.len(), q: output_order.len(), loops, boxes, outputs }.normalize())
}

fn check_order(free: &[String], order: &[String], what: &str) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != free {
        return Err(Error::OrderMismatch(format!("{what} are {{{}}} but the ordering lists [{}]", free.join(","), order.join(","))));
    }
    Ok(())
}

/// Canonical form with free variables in lexicographic order.
pub fn canonicalize_default(m: &Molecule) -> Result<CanonMonomial> {
    canonicalize(m, &m.input_vars(), &m.output_vars())
}
