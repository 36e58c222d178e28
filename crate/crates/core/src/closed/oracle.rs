//! Genus-zero check by stratifying `M̄_0^n` over labelled stable trees.
//!
//! Each stratum is a product of `M_0^{m}` with `e(M_0^m) = (−1)^{m−3}(m−3)!`,
//! and in genus zero every stratum has trivial automorphisms. Rooting the
//! tree at leg `n`, the legs `1..n−1` are split recursively into set
//! partitions with at least two blocks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::factorial;

fn e_open_genus0(m: usize) -> BigInt {
    let f = factorial(m - 3);
    if (m - 3).is_multiple_of(2) {
        f
    } else {
        -f
    }
}

/// All set partitions of `items`.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

/// Weighted count of rooted trees on the labelled leaf set `legs`.
fn rooted(legs: &[usize], memo: &mut HashMap<Vec<usize>, BigInt>) -> BigInt {
    if legs.len() == 1 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(legs) {
        return v.clone();
    }
    let mut acc = BigInt::zero();
    for p in set_partitions(legs) {
        if p.len() < 2 {
            continue;
        }
        let mut t = e_open_genus0(p.len() + 1);
        for block in &p {
            t *= rooted(block, memo);
        }
        acc += t;
    }
    memo.insert(legs.to_vec(), acc.clone());
    acc
}

/// `e(M̄_0^n)` for `n ≥ 3` by the labelled-tree sum.
pub fn genus0_tree_oracle(n: usize) -> BigInt {
    assert!(n >= 3, "M̄_0^n needs n ≥ 3");
    let legs: Vec<usize> = (1..n).collect();
    rooted(&legs, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        let v: Vec<BigInt> = (3..=5).map(genus0_tree_oracle).collect();
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(2), BigInt::from(7)]);
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, b) in bell.iter().enumerate() {
            let items: Vec<usize> = (0..n).collect();
            assert_eq!(set_partitions(&items).len(), *b);
        }
    }
}
