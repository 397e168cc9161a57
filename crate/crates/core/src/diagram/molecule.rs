use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::diagram::Signature;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum AtomKind {
    Gen(String),
    Id,
}

/// `A^{x1..xp}_{y1..yq}` or `id^x_y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    pub kind: AtomKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl Atom {
    pub fn gen(name: &str, inputs: &[&str], outputs: &[&str]) -> Self {
        Atom {
            kind: AtomKind::Gen(name.to_string()),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn id(x: &str, y: &str) -> Self {
        Atom { kind: AtomKind::Id, inputs: vec![x.to_string()], outputs: vec![y.to_string()] }
    }

    pub fn is_id(&self) -> bool {
        self.kind == AtomKind::Id
    }

    /// Checks the atom on its own: arity and no repeated port variable.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match &self.kind {
            AtomKind::Id => {
                if self.inputs.len() != 1 || self.outputs.len() != 1 {
                    return Err(Error::Invalid("an identity atom has one input and one output".into()));
                }
            }
            AtomKind::Gen(name) => {
                let (p, q) = sig.arity(name)?;
                if (p, q) != (self.inputs.len(), self.outputs.len()) {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        p,
                        q,
                        got_p: self.inputs.len(),
                        got_q: self.outputs.len(),
                    });
                }
            }
        }
        if let Some(v) = repeated(&self.inputs) {
            return Err(Error::RepeatedInput(v.to_string()));
        }
        if let Some(v) = repeated(&self.outputs) {
            return Err(Error::RepeatedOutput(v.to_string()));
        }
        Ok(())
    }

    fn rename(&self, f: &impl Fn(&str) -> String) -> Atom {
        Atom {
            kind: self.kind.clone(),
            inputs: self.inputs.iter().map(|v| f(v)).collect(),
            outputs: self.outputs.iter().map(|v| f(v)).collect(),
        }
    }
}

fn repeated(vars: &[String]) -> Option<&str> {
    let mut seen = HashSet::new();
    vars.iter().find(|v| !seen.insert(v.as_str())).map(String::as_str)
}

fn write_vars(f: &mut fmt::Formatter<'_>, mark: char, vars: &[String]) -> fmt::Result {
    if vars.is_empty() {
        return Ok(());
    }
    write!(f, "{mark}{{{}}}", vars.join(","))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AtomKind::Id => write!(f, "id^{}_{}", self.inputs[0], self.outputs[0]),
            AtomKind::Gen(name) => {
                write!(f, "{name}")?;
                write_vars(f, '^', &self.inputs)?;
                write_vars(f, '_', &self.outputs)
            }
        }
    }
}

/// An unordered collection of atoms in which every variable is an input at
/// most once and an output at most once.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Molecule {
    atoms: Vec<Atom>,
}

impl Molecule {
    pub fn new(atoms: Vec<Atom>, sig: &Signature) -> Result<Self> {
        let mut ins = HashSet::new();
        let mut outs = HashSet::new();
        for a in &atoms {
            a.check(sig)?;
            for v in &a.inputs {
                if !ins.insert(v.as_str()) {
                    return Err(Error::InputUsedTwice(v.clone()));
                }
            }
            for v in &a.outputs {
                if !outs.insert(v.as_str()) {
                    return Err(Error::OutputUsedTwice(v.clone()));
                }
            }
        }
        Ok(Molecule { atoms })
    }

    /// Skips validation; callers guarantee the molecule conditions.
    pub(crate) fn from_atoms_unchecked(atoms: Vec<Atom>) -> Self {
        Molecule { atoms }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn used_as_input(&self) -> BTreeSet<&str> {
        self.atoms.iter().flat_map(|a| a.inputs.iter().map(String::as_str)).collect()
    }

    fn used_as_output(&self) -> BTreeSet<&str> {
        self.atoms.iter().flat_map(|a| a.outputs.iter().map(String::as_str)).collect()
    }

    /// Free input variables, smallest first.
    pub fn input_vars(&self) -> Vec<String> {
        let outs = self.used_as_output();
        self.used_as_input().into_iter().filter(|v| !outs.contains(v)).map(str::to_string).collect()
    }

    /// Free output variables, smallest first.
    pub fn output_vars(&self) -> Vec<String> {
        let ins = self.used_as_input();
        self.used_as_output().into_iter().filter(|v| !ins.contains(v)).map(str::to_string).collect()
    }

    pub fn bound_vars(&self) -> Vec<String> {
        let outs = self.used_as_output();
        self.used_as_input().into_iter().filter(|v| outs.contains(v)).map(str::to_string).collect()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.atoms.iter().flat_map(|a| a.inputs.iter().chain(&a.outputs)).cloned().collect()
    }

    /// Applies `f` to every variable occurrence. Only safe for injective `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Molecule {
        Molecule { atoms: self.atoms.iter().map(|a| a.rename(&f)).collect() }
    }

    /// Renames bound variables to fresh names drawn from `fresh`.
    pub fn rename_bound(&self, fresh: &mut FreshNames) -> Molecule {
        let map: BTreeMap<String, String> = self.bound_vars().into_iter().map(|v| (v, fresh.next())).collect();
        self.rename(|v| map.get(v).cloned().unwrap_or_else(|| v.to_string()))
    }
}

/// The class product `[M1][M2]...[Mr]`: bound variables are renamed apart
/// and the atoms pooled.
pub fn product_classes(ms: &[Molecule]) -> Result<Molecule> {
    let mut fresh = FreshNames::avoiding(ms.iter().flat_map(Molecule::vars));
    let mut atoms = Vec::new();
    let mut ins = HashSet::new();
    let mut outs = HashSet::new();
    for m in ms {
        for v in m.input_vars() {
            if !ins.insert(v.clone()) {
                return Err(Error::FreeVariableClash(v));
            }
        }
        for v in m.output_vars() {
            if !outs.insert(v.clone()) {
                return Err(Error::FreeVariableClash(v));
            }
        }
        atoms.extend(m.rename_bound(&mut fresh).atoms);
    }
    Ok(Molecule { atoms })
}

impl fmt::Display for Molecule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Supplies `v0, v1, ...`, skipping any name already in use.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    next: usize,
    used: HashSet<String>,
}

impl FreshNames {
    pub fn avoiding(used: impl IntoIterator<Item = String>) -> Self {
        FreshNames { next: 0, used: used.into_iter().collect() }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> String {
        loop {
            let name = format!("v{}", self.next);
            self.next += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::empty().with("A", 2, 1).unwrap().with("B", 0, 1).unwrap()
    }

    #[test]
    fn free_and_bound_variables() {
        let m = Molecule::new(
            vec![Atom::gen("A", &["x", "z"], &["y"]), Atom::id("y", "w"), Atom::gen("B", &[], &["x"])],
            &sig(),
        )
        .unwrap();
        assert_eq!(m.bound_vars(), ["x", "y"]);
        assert_eq!(m.input_vars(), ["z"]);
        assert_eq!(m.output_vars(), ["w"]);
    }

    #[test]
    fn validation_errors() {
        let s = sig();
        assert_eq!(
            Molecule::new(vec![Atom::gen("A", &["x", "x"], &["y"])], &s),
            Err(Error::RepeatedInput("x".into()))
        );
        assert_eq!(
            Molecule::new(vec![Atom::id("x", "y"), Atom::id("x", "z")], &s),
            Err(Error::InputUsedTwice("x".into()))
        );
        assert!(matches!(
            Molecule::new(vec![Atom::gen("A", &["x"], &["y"])], &s),
            Err(Error::ArityMismatch { .. })
        ));
        assert_eq!(
            Molecule::new(vec![Atom::gen("C", &[], &[])], &s),
            Err(Error::UnknownGenerator("C".into()))
        );
        // an exceptional loop is a valid atom
        assert!(Molecule::new(vec![Atom::id("z", "z")], &s).is_ok());
    }

    #[test]
    fn products_rename_apart() {
        let s = sig();
        let m = Molecule::new(vec![Atom::gen("B", &[], &["x"]), Atom::id("x", "y")], &s).unwrap();
        let n = Molecule::new(vec![Atom::gen("B", &[], &["x"]), Atom::id("x", "w")], &s).unwrap();
        let prod = product_classes(&[m.clone(), n]).unwrap();
        assert_eq!(prod.atoms().len(), 4);
        assert_eq!(prod.output_vars(), ["w", "y"]);
        assert_eq!(prod.bound_vars().len(), 2);
        assert_eq!(product_classes(&[m.clone(), m.clone()]), Err(Error::FreeVariableClash("y".into())));
        assert_eq!(product_classes(&[m.clone(), Molecule::empty()]).unwrap().atoms().len(), 2);
    }
}
