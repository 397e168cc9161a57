use std::fmt;

use crate::error::{Error, Result};
use crate::symgroup::Partition;

/// A permutation of `{1..n}`, stored 0-based as the list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// From 0-based images; fails unless `images` is a bijection on `0..n`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// From 1-based one-line notation, e.g. `[3, 1, 2, 4]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Invalid("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::IndexOutOfRange(format!("{a} in a permutation of {n}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// The transposition of the 1-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Perm { images }
    }

    /// Parses one-line notation (`3124`, or `3 1 2 4` for n ≥ 10) or cycle
    /// notation (`(1 3)(2 4)`, `e`) on `n` points.
    pub fn parse(src: &str, n: Option<usize>) -> Result<Self> {
        let s = src.trim();
        if s == "e" || s == "()" {
            return Ok(Self::identity(n.unwrap_or(0)));
        }
        if s.starts_with('(') {
            let n = n.ok_or_else(|| Error::Invalid("cycle notation needs the degree n".into()))?;
            let mut cycles = Vec::new();
            for part in s.split(')').filter(|p| !p.trim().is_empty()) {
                let body = part.trim().strip_prefix('(').ok_or_else(|| Error::parse(0, "expected `(`"))?;
                let pts: Result<Vec<usize>> = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad point `{x}`"))))
                    .collect();
                cycles.push(pts?);
            }
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            return Self::from_cycles(n, &refs);
        }
        let pts: Vec<usize> = if s.contains(char::is_whitespace) || s.contains(',') {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad point `{x}`"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::parse(0, format!("bad digit `{c}`"))))
                .collect::<Result<_>>()?
        };
        let p = Self::from_one_line(&pts)?;
        if let Some(n) = n {
            if p.degree() != n {
                return Err(Error::SizeMismatch(p.degree(), n));
            }
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    ///
    /// As diagrams, the product `[a][b]` feeds the outputs of `[b]` into the
    /// inputs of `[a]`; strand `i` of the result ends at `a(b(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// Cycles as lists of 0-based points, each starting at its smallest
    /// element, including fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect())
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self ⊗ id`: the same permutation with a fixed point appended.
    pub fn extend(&self) -> Perm {
        let mut images = self.images.clone();
        images.push(self.degree());
        Perm { images }
    }

    /// All permutations of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Cycle notation with 1-based points, omitting fixed points; `e` for the
    /// identity.
    pub fn cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.concat()
        }
    }

    pub fn one_line(&self) -> String {
        let sep = if self.degree() >= 10 { " " } else { "" };
        self.images.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}
