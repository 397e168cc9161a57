//! Sparse exact contraction of a network of tensors with labelled legs.

use std::collections::{HashMap, HashSet};

use crate::scalar::Ring;
use crate::teval::tensor::tuples;

/// A sparse tensor whose legs carry distinct wire labels.
#[derive(Clone, Debug)]
pub(crate) struct Factor<S> {
    pub labels: Vec<usize>,
    pub entries: Vec<(Vec<usize>, S)>,
}

impl<S: Ring> Factor<S> {
    /// Builds a factor whose legs may repeat a label; entries that disagree
    /// on a repeated label are dropped (a wire from a box back into itself).
    pub fn new(labels: &[usize], entries: impl IntoIterator<Item = (Vec<usize>, S)>) -> Self {
        let mut distinct: Vec<usize> = Vec::new();
        let mut first: Vec<usize> = Vec::new();
        for (pos, &l) in labels.iter().enumerate() {
            if !distinct.contains(&l) {
                distinct.push(l);
                first.push(pos);
            }
        }
        let mut acc: HashMap<Vec<usize>, S> = HashMap::new();
        for (key, v) in entries {
            let consistent = labels.iter().enumerate().all(|(pos, l)| {
                let f = first[distinct.iter().position(|d| d == l).unwrap()];
                key[pos] == key[f]
            });
            if consistent {
                let k: Vec<usize> = first.iter().map(|&f| key[f]).collect();
                accumulate(&mut acc, k, v);
            }
        }
        Factor { labels: distinct, entries: collect(acc) }
    }

    /// Sums out the labels for which `keep` is false.
    fn sum_out(self, keep: impl Fn(usize) -> bool) -> Self {
        let kept: Vec<usize> = (0..self.labels.len()).filter(|&i| keep(self.labels[i])).collect();
        if kept.len() == self.labels.len() {
            return self;
        }
        let mut acc: HashMap<Vec<usize>, S> = HashMap::new();
        for (key, v) in self.entries {
            accumulate(&mut acc, kept.iter().map(|&i| key[i]).collect(), v);
        }
        Factor { labels: kept.iter().map(|&i| self.labels[i]).collect(), entries: collect(acc) }
    }

    /// Product over the shared labels (a hash join).
    fn join(&self, other: &Self) -> Self {
        let shared: Vec<(usize, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other.labels.iter().position(|m| m == l).map(|j| (i, j)))
            .collect();
        let other_rest: Vec<usize> = (0..other.labels.len()).filter(|j| !shared.iter().any(|s| s.1 == *j)).collect();
        let mut index: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (n, (key, _)) in other.entries.iter().enumerate() {
            index.entry(shared.iter().map(|&(_, j)| key[j]).collect()).or_default().push(n);
        }
        let mut acc: HashMap<Vec<usize>, S> = HashMap::new();
        for (key, v) in &self.entries {
            let probe: Vec<usize> = shared.iter().map(|&(i, _)| key[i]).collect();
            if let Some(matches) = index.get(&probe) {
                for &n in matches {
                    let (okey, w) = &other.entries[n];
                    let mut k = key.clone();
                    k.extend(other_rest.iter().map(|&j| okey[j]));
                    accumulate(&mut acc, k, v.clone() * w.clone());
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other_rest.iter().map(|&j| other.labels[j]));
        Factor { labels, entries: collect(acc) }
    }
}

fn accumulate<S: Ring>(acc: &mut HashMap<Vec<usize>, S>, k: Vec<usize>, v: S) {
    match acc.get_mut(&k) {
        Some(old) => *old = old.clone() + v,
        None => {
            acc.insert(k, v);
        }
    }
}

fn collect<S: Ring>(acc: HashMap<Vec<usize>, S>) -> Vec<(Vec<usize>, S)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Contracts `factors` over every label not in `out`, returning entries keyed
/// by the values of `out` (labels may repeat in `out`; a label carried by no
/// factor ranges freely over `0..dim`).
///
/// Pairs are merged greedily, cheapest estimated result first.
pub(crate) fn contract_network<S: Ring>(
    mut factors: Vec<Factor<S>>,
    out: &[usize],
    dim: usize,
) -> Vec<(Vec<usize>, S)> {
    let out_set: HashSet<usize> = out.iter().copied().collect();
    let needed = |factors: &[Factor<S>], skip: &[usize], l: usize| {
        out_set.contains(&l)
            || factors.iter().enumerate().any(|(k, f)| !skip.contains(&k) && f.labels.contains(&l))
    };
    for k in 0..factors.len() {
        let f = std::mem::replace(&mut factors[k], Factor { labels: Vec::new(), entries: Vec::new() });
        let reduced = f.sum_out(|l| needed(&factors, &[k], l));
        factors[k] = reduced;
    }
    while factors.len() > 1 {
        let mut best = (f64::INFINITY, 0, 1);
        for a in 0..factors.len() {
            for b in a + 1..factors.len() {
                let shared = factors[a].labels.iter().filter(|l| factors[b].labels.contains(l)).count();
                let cost = factors[a].entries.len() as f64 * factors[b].entries.len() as f64
                    / (dim.max(1) as f64).powi(shared as i32);
                if cost < best.0 {
                    best = (cost, a, b);
                }
            }
        }
        let (_, a, b) = best;
        let fb = factors.remove(b);
        let fa = factors.remove(a);
        let joined = fa.join(&fb);
        let reduced = joined.sum_out(|l| needed(&factors, &[], l));
        factors.push(reduced);
    }
    let last = factors.pop().unwrap_or(Factor { labels: Vec::new(), entries: vec![(Vec::new(), S::one())] });
    let mut free: Vec<usize> = Vec::new();
    for &l in out {
        if !last.labels.contains(&l) && !free.contains(&l) {
            free.push(l);
        }
    }
    let fills = tuples(dim, free.len());
    let mut result = Vec::new();
    for (key, v) in &last.entries {
        for fill in &fills {
            let value_of = |l: usize| match last.labels.iter().position(|&m| m == l) {
                Some(i) => key[i],
                None => fill[free.iter().position(|&m| m == l).unwrap()],
            };
            result.push((out.iter().map(|&l| value_of(l)).collect(), v.clone()));
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    #[test]
    fn matrix_product_and_trace() {
        // labels: A^{0}_{1}, B^{1}_{2}
        let a = Factor::new(&[0, 1], vec![(vec![0, 0], int(1)), (vec![0, 1], int(2)), (vec![1, 1], int(3))]);
        let b = Factor::new(&[1, 2], vec![(vec![0, 1], int(5)), (vec![1, 0], int(7))]);
        let prod = contract_network(vec![a.clone(), b], &[0, 2], 2);
        let get = |k: &[usize]| prod.iter().find(|(kk, _)| kk == k).map(|(_, v)| v.clone()).unwrap_or(int(0));
        assert_eq!(get(&[0, 1]), int(5));
        assert_eq!(get(&[0, 0]), int(14));
        assert_eq!(get(&[1, 0]), int(21));
        // a box wired into itself keeps the diagonal
        let tr = contract_network(vec![Factor::new(&[4, 4], a.entries.clone())], &[], 2);
        assert_eq!(tr, vec![(vec![], int(4))]);
    }

    #[test]
    fn free_wires_range_over_the_dimension() {
        let r: Vec<(Vec<usize>, Rat)> = contract_network(Vec::new(), &[3, 3], 3);
        assert_eq!(r.len(), 3);
    }
}
