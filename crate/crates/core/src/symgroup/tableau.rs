use std::fmt;

use crate::error::{Error, Result};
use crate::symgroup::{Cell, Partition, Perm};

/// Standard Young tableau with entries `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Validates that the filling is standard.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::Invalid("row lengths must weakly decrease".into()));
        }
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Invalid(format!("entries must be 1..={n} without repeats")));
            }
            seen[x] = true;
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!("row {} is not increasing", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(below, above)| below <= above) {
                return Err(Error::Invalid(format!("a column is not increasing at row {}", i + 1)));
            }
        }
        Ok(Tableau { rows })
    }

    /// Parses rows separated by `/`, e.g. `12/3` or `1 2/3`.
    pub fn parse(src: &str) -> Result<Self> {
        let spaced = src.contains([' ', ',']);
        let rows: Vec<Vec<usize>> = src
            .split('/')
            .map(|r| {
                let r = r.trim();
                if spaced {
                    r.split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|x| !x.is_empty())
                        .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad entry `{x}`"))))
                        .collect()
                } else {
                    r.chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::parse(0, format!("bad entry `{c}`"))))
                        .collect()
                }
            })
            .collect::<Result<_>>()?;
        Self::new(rows)
    }

    /// The single-row tableau `1 2 ... n`.
    pub fn row(n: usize) -> Self {
        Tableau { rows: if n == 0 { vec![] } else { vec![(1..=n).collect()] } }
    }

    /// The single-column tableau.
    pub fn column(n: usize) -> Self {
        Tableau { rows: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect())
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }

    /// Box holding `entry`.
    pub fn position(&self, entry: usize) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(i, r)| {
            r.iter().position(|&x| x == entry).map(|j| Cell::new(i + 1, j + 1))
        })
    }

    /// Removes the box holding the largest entry; returns the smaller tableau
    /// and the removed box.
    pub fn remove_largest(&self) -> Option<(Tableau, Cell)> {
        let n = self.size();
        let cell = self.position(n)?;
        let mut rows = self.rows.clone();
        rows[cell.row - 1].pop();
        rows.retain(|r| !r.is_empty());
        Some((Tableau { rows }, cell))
    }

    /// All standard tableaux of the given shape.
    pub fn all_standard(shape: &Partition) -> Vec<Tableau> {
        // place n, n-1, ... into removable corners
        fn go(shape: &Partition, filling: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
            let n = shape.size();
            if n == 0 {
                out.push(Tableau { rows: filling.iter().filter(|r| !r.is_empty()).cloned().collect() });
                return;
            }
            for c in shape.removable() {
                filling[c.row - 1][c.col - 1] = n;
                go(&shape.without(c).unwrap(), filling, out);
            }
        }
        let mut filling: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
        let mut out = Vec::new();
        go(shape, &mut filling, &mut out);
        out.sort_by(|a, b| a.rows.cmp(&b.rows));
        out
    }

    /// Permutations preserving every row.
    pub fn row_group(&self) -> Vec<Perm> {
        block_group(self.size(), &self.rows)
    }

    /// Permutations preserving every column.
    pub fn column_group(&self) -> Vec<Perm> {
        block_group(self.size(), &self.columns())
    }
}

/// The direct product of the symmetric groups on the given disjoint blocks.
fn block_group(n: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
    let mut out = vec![Perm::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Perm::all(block.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for g in &out {
            for l in &local {
                let mut images = g.images().to_vec();
                for (k, &x) in block.iter().enumerate() {
                    images[x - 1] = block[l.apply(k)] - 1;
                }
                next.push(Perm::from_images(images).expect("block permutation"));
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.size() >= 10 { " " } else { "" };
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Tableau::parse("12/3").is_ok());
        assert!(Tableau::parse("13/2").is_ok());
        assert!(Tableau::parse("21/3").is_err());
        assert!(Tableau::parse("1/23").is_err());
        assert!(Tableau::parse("12/12").is_err());
        assert_eq!(Tableau::parse("1 3 4 9/2 6 7/5 8 10/11").unwrap().position(7), Some(Cell::new(2, 3)));
    }

    #[test]
    fn enumeration_matches_hook_length_formula() {
        for n in 0..=6 {
            for shape in Partition::all(n) {
                let all = Tableau::all_standard(&shape);
                assert_eq!(all.len() as u128, shape.num_standard_tableaux(), "{shape}");
                assert!(all.iter().all(|t| Tableau::new(t.rows.clone()).is_ok()));
            }
        }
    }

    #[test]
    fn stabilizers() {
        let t = Tableau::parse("12/3").unwrap();
        assert_eq!(t.row_group().len(), 2);
        assert_eq!(t.column_group().len(), 2);
        assert!(t.column_group().contains(&Perm::transposition(3, 1, 3)));
        let big = Tableau::parse("123/45").unwrap();
        assert_eq!(big.row_group().len(), 12);
        assert_eq!(big.column_group().len(), 4);
        let (smaller, cell) = big.remove_largest().unwrap();
        assert_eq!(smaller.to_string(), "123/4");
        assert_eq!(cell, Cell::new(2, 2));
    }
}
