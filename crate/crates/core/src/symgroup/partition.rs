use std::fmt;

use crate::error::{Error, Result};

/// A box of a Young diagram in matrix coordinates, both 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// `j - i` for the box `(i, j)`.
    pub fn diagonal(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Which way [`Partition::branch`] moves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    Remove,
    Add,
}

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Accepts only already weakly decreasing positive parts.
    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(c, c, ..., c)` with `r` rows.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    /// Parses `2,1`, `(2,1)`, `2 1` or `∅`/`()` for the empty partition.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "∅" || s == "0" {
            return Ok(Self::empty());
        }
        let parts: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad part `{x}`"))))
            .collect::<Result<_>>()?;
        Self::from_parts(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based), zero beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && self.row(c.row) >= c.col
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect() }
    }

    /// Boxes that can be deleted leaving a partition.
    pub fn removable(&self) -> Vec<Cell> {
        (1..=self.len())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .map(|i| Cell::new(i, self.row(i)))
            .collect()
    }

    /// Boxes that can be added leaving a partition.
    pub fn addable(&self) -> Vec<Cell> {
        (1..=self.len() + 1)
            .filter(|&i| i == 1 || self.row(i - 1) > self.row(i))
            .map(|i| Cell::new(i, self.row(i) + 1))
            .collect()
    }

    pub fn without(&self, c: Cell) -> Result<Partition> {
        if !self.removable().contains(&c) {
            return Err(Error::Invalid(format!("{c} is not removable from {self}")));
        }
        let mut parts = self.parts.clone();
        parts[c.row - 1] -= 1;
        Ok(Partition::new(parts))
    }

    pub fn with(&self, c: Cell) -> Result<Partition> {
        if !self.addable().contains(&c) {
            return Err(Error::Invalid(format!("{c} is not addable to {self}")));
        }
        let mut parts = self.parts.clone();
        if c.row > parts.len() {
            parts.push(1);
        } else {
            parts[c.row - 1] += 1;
        }
        Ok(Partition { parts })
    }

    /// Partitions one box smaller (or larger), together with the box.
    pub fn branch(&self, dir: Branch) -> Vec<(Partition, Cell)> {
        match dir {
            Branch::Remove => self.removable().into_iter().map(|c| (self.without(c).unwrap(), c)).collect(),
            Branch::Add => self.addable().into_iter().map(|c| (self.with(c).unwrap(), c)).collect(),
        }
    }

    /// Whether every box of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Partition) -> bool {
        (1..=self.len()).all(|i| self.row(i) <= other.row(i))
    }

    /// Box-wise intersection.
    pub fn intersect(&self, other: &Partition) -> Partition {
        Partition::new((1..=self.len().min(other.len())).map(|i| self.row(i).min(other.row(i))).collect())
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.size() as u128).product();
        let mut den: u128 = 1;
        for c in self.cells() {
            let arm = self.row(c.row) - c.col;
            let leg = conj.row(c.col) - c.row;
            den *= (arm + leg + 1) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                go(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions fitting inside `bound` (including empty and `bound`).
    pub fn all_inside(bound: &Partition) -> Vec<Partition> {
        fn go(i: usize, max: usize, bound: &Partition, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if i > bound.len() {
                return;
            }
            for k in 1..=max.min(bound.row(i)) {
                cur.push(k);
                go(i + 1, k, bound, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(1, usize::MAX, bound, &mut Vec::new(), &mut out);
        out
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn branching_examples() {
        assert_eq!(
            p("2,1").branch(Branch::Remove),
            vec![(p("1,1"), Cell::new(1, 2)), (p("2"), Cell::new(2, 1))]
        );
        assert_eq!(Partition::empty().branch(Branch::Add), vec![(p("1"), Cell::new(1, 1))]);
        assert_eq!(
            p("2,1").branch(Branch::Add),
            vec![(p("3,1"), Cell::new(1, 3)), (p("2,2"), Cell::new(2, 2)), (p("2,1,1"), Cell::new(3, 1))]
        );
    }

    #[test]
    fn counts() {
        let sizes: Vec<usize> = (0..8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(sizes, [1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(p("2,1").num_standard_tableaux(), 2);
        assert_eq!(p("4,3,3,1").num_standard_tableaux(), 1188);
        assert_eq!(Partition::all_inside(&Partition::rectangle(2, 2)).len(), 6);
    }

    #[test]
    fn geometry() {
        let l = p("4,3,3,1");
        assert!(l.contains(Cell::new(2, 3)));
        assert!(!l.contains(Cell::new(4, 2)));
        assert_eq!(Cell::new(2, 3).diagonal(), 1);
        assert_eq!(l.conjugate(), p("4,3,3,1"));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert!(p("2,1").is_subset_of(&p("3,1")));
        assert_eq!(p("3,1").intersect(&p("2,2")), p("2,1"));
        assert!(Partition::from_parts(vec![1, 2]).is_err());
    }
}
