//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, using beta-sets: removing a rim hook of length `k` moves one bead
//! down by `k`, with sign given by the number of beads jumped over.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::scalar::{int, Rat};
use crate::symgroup::Partition;

type Memo = RwLock<HashMap<(Partition, Partition), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `χ_λ(μ)` where `μ` is the cycle type.
pub fn char_value(lambda: &Partition, mu: &Partition) -> Result<Rat> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(int(char_int(lambda, mu)))
}

pub(crate) fn char_int(lambda: &Partition, mu: &Partition) -> i64 {
    if let Some(&v) = memo().read().unwrap().get(&(lambda.clone(), mu.clone())) {
        return v;
    }
    let v = mn(lambda.parts(), mu.parts());
    memo().write().unwrap().insert((lambda.clone(), mu.clone()), v);
    v
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * char_int(&Partition::new(parts), &Partition::new(rest.to_vec()));
    }
    total
}

/// Dimension of the irreducible representation: `χ_λ(1^n)`.
pub fn dimension(lambda: &Partition) -> i64 {
    char_int(lambda, &Partition::new(vec![1; lambda.size()]))
}
