//! Dense exact linear algebra over a field, plus row reduction of modules
//! over the polynomial ring `F[t]`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let v = rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for k in c..n {
                let v = a[c][k].clone();
                a[i][k] = a[i][k].clone() - f.clone() * v;
            }
        }
    }
    det
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A submodule of `F[t]^n` kept in row echelon form.
///
/// Rows are ordered by strictly increasing pivot column and every entry
/// below a pivot is zero, so membership is decided by successive exact
/// division at the pivots.
#[derive(Clone, Debug)]
pub struct PolyModule<F> {
    width: usize,
    rows: Vec<Vec<Poly<F>>>,
}

impl<F: Field> PolyModule<F> {
    pub fn new(width: usize) -> Self {
        PolyModule { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<Poly<F>>] {
        &self.rows
    }

    fn pivot(row: &[Poly<F>]) -> Option<usize> {
        row.iter().position(|p| !p.is_zero())
    }

    /// Reduces `v` against the pivots; the result is zero iff `v` is a member.
    pub fn reduce(&self, v: &[Poly<F>]) -> Vec<Poly<F>> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = Self::pivot(row).unwrap();
            if v[c].is_zero() {
                continue;
            }
            let (q, _) = v[c].div_rem(&row[c]).expect("pivot is nonzero");
            if q.is_zero() {
                continue;
            }
            for k in c..self.width {
                if !row[k].is_zero() {
                    v[k] = v[k].clone() - q.clone() * row[k].clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Poly<F>]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the generating set; returns true if the module grew.
    pub fn insert(&mut self, v: Vec<Poly<F>>) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = self.reduce(&v);
        if v.iter().all(Zero::is_zero) {
            return false;
        }
        while let Some(c) = Self::pivot(&v) {
            let Some(idx) = self.rows.iter().position(|r| Self::pivot(r) == Some(c)) else {
                let at = self
                    .rows
                    .iter()
                    .position(|r| Self::pivot(r).unwrap() > c)
                    .unwrap_or(self.rows.len());
                self.rows.insert(at, v);
                break;
            };
            // unimodular combination making the pivot the gcd of both entries
            let row = &self.rows[idx];
            let (g, s, u) = row[c].xgcd(&v[c]).expect("nonzero pivots");
            let a = row[c].exact_div(&g).unwrap().unwrap();
            let b = v[c].exact_div(&g).unwrap().unwrap();
            let merged: Vec<Poly<F>> = (0..self.width)
                .map(|k| s.clone() * row[k].clone() + u.clone() * v[k].clone())
                .collect();
            let rest: Vec<Poly<F>> = (0..self.width)
                .map(|k| a.clone() * v[k].clone() - b.clone() * row[k].clone())
                .collect();
            self.rows[idx] = merged;
            v = self.reduce(&rest);
        }
        self.normalize();
        true
    }

    fn normalize(&mut self) {
        for row in &mut self.rows {
            let c = row.iter().position(|p| !p.is_zero()).unwrap();
            let inv = row[c].leading().unwrap().inv();
            for p in row.iter_mut() {
                *p = p.scale(&inv);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
}
