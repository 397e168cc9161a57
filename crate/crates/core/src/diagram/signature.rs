use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Generator names with their types `(inputs, outputs)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Signature {
    gens: BTreeMap<String, (usize, usize)>,
}

/// Generator names are plain alphanumerics; `id` and `t` are reserved.
pub fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
        && name != "id"
        && name != "t"
}

impl Signature {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, p: usize, q: usize) -> Result<()> {
        if !valid_generator_name(name) {
            return Err(Error::Invalid(format!("`{name}` is not a usable generator name")));
        }
        if self.gens.insert(name.to_string(), (p, q)).is_some() {
            return Err(Error::Invalid(format!("generator `{name}` declared twice")));
        }
        Ok(())
    }

    /// Builder form of [`Signature::insert`].
    pub fn with(mut self, name: &str, p: usize, q: usize) -> Result<Self> {
        self.insert(name, p, q)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<(usize, usize)> {
        self.gens.get(name).copied()
    }

    pub fn arity(&self, name: &str) -> Result<(usize, usize)> {
        self.get(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (usize, usize))> {
        self.gens.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reads lines of the form `gen A : 2 -> 1`; blank lines and `#`
    /// comments are skipped.
    pub fn parse(src: &str) -> Result<Self> {
        let mut sig = Signature::empty();
        let mut offset = 0;
        for line in src.lines() {
            let pos = offset;
            offset += line.len() + 1;
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let bad = || Error::parse(pos, format!("expected `gen NAME : P -> Q`, got `{body}`"));
            let rest = body.strip_prefix("gen").ok_or_else(bad)?;
            let (name, ty) = rest.split_once(':').ok_or_else(bad)?;
            let (p, q) = ty.split_once("->").ok_or_else(bad)?;
            let p: usize = p.trim().parse().map_err(|_| bad())?;
            let q: usize = q.trim().parse().map_err(|_| bad())?;
            sig.insert(name.trim(), p, q).map_err(|e| e.at(pos))?;
        }
        Ok(sig)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, (p, q)) in &self.gens {
            writeln!(f, "gen {name} : {p} -> {q}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_signature_file() {
        let sig = Signature::parse("# two generators\ngen A : 2 -> 1\n\ngen B : 0 -> 1\n").unwrap();
        assert_eq!(sig.get("A"), Some((2, 1)));
        assert_eq!(sig.get("B"), Some((0, 1)));
        assert_eq!(Signature::parse(&sig.to_string()).unwrap(), sig);
        assert!(Signature::parse("gen A : 2 -> 1\ngen A : 1 -> 1").is_err());
        assert!(Signature::parse("gen id : 1 -> 1").is_err());
        assert!(Signature::parse("A : 1").is_err());
    }
}
