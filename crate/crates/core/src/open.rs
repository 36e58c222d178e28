//! Ordinary Euler characteristic of `M_g^{n+1}` from cyclic branch data.
//!
//! A finite-order mapping class fixing the marked points is a cyclic cover
//! of order `k` of a genus-`h` orbifold with `n + 1` marked points and `d`
//! further branch points of orders `k/M_r`. Riemann–Hurwitz reads
//! `2g − 1 + n = k(2h − 1 + n + d) − Σ M_r`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{c_int, divisors, euler_phi, int, inv_factorial, moebius, pow_i, rat, Rational};
use crate::error::{Error, Result};
use crate::orbifold::{chi_open, chi_open_or_zero, is_integer};

/// Cyclic branch datum: quotient genus `h`, order `k`, and the multiset `m`
/// (sorted) of the `d = m.len()` extra branch points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchDatum {
    pub h: u32,
    pub k: u64,
    pub m: Vec<u64>,
}

impl BranchDatum {
    pub fn d(&self) -> usize {
        self.m.len()
    }
}

/// Independent check of the constraints on a datum for `M_g^{n+1}`.
pub fn branch_datum_valid(g: u32, n: u32, b: &BranchDatum) -> bool {
    let d = b.m.len() as i64;
    let lhs = 2 * g as i64 - 1 + n as i64;
    let rhs = b.k as i64 * (2 * b.h as i64 - 1 + n as i64 + d) - b.m.iter().sum::<u64>() as i64;
    lhs == rhs
        && b.m.iter().all(|&x| x >= 1 && x < b.k && b.k.is_multiple_of(x))
        && b.m.windows(2).all(|w| w[0] <= w[1])
        && 2 * b.h as i64 + d + 1 + n as i64 > 2
        && b.h <= g
}

/// Sorted multisets of elements of `props` (ascending) with `d` entries and
/// the given sum.
pub(crate) fn multisets_with_sum(props: &[u64], d: usize, sum: u64) -> Vec<Vec<u64>> {
    fn rec(props: &[u64], start: usize, d: usize, sum: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if d == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let Some(&largest) = props.last() else { return };
        if largest * (d as u64) < sum {
            return;
        }
        for i in start..props.len() {
            let m = props[i];
            if m * d as u64 > sum {
                break;
            }
            cur.push(m);
            rec(props, i, d - 1, sum - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(props, 0, d, sum, &mut Vec::new(), &mut out);
    out
}

/// Branch data for `M_g^{n+1}` with `k ≤ kmax`.
pub fn branch_data_with_bound(g: u32, n: u32, kmax: u64) -> Vec<BranchDatum> {
    let lhs = 2 * g as u64 - 1 + n as u64;
    let mut out = Vec::new();
    for k in 1..=kmax {
        let props: Vec<u64> = divisors(k).into_iter().filter(|&m| m < k).collect();
        for h in 0..=g {
            // k − M_r ≥ k/2 bounds d through the Riemann–Hurwitz balance.
            let dmax = if k == 1 { 0 } else { (2 * lhs / k + 2) as usize };
            for d in 0..=dmax {
                let total = k as i64 * (2 * h as i64 - 1 + n as i64 + d as i64) - lhs as i64;
                if total < 0 || 2 * h as usize + d + 1 + n as usize <= 2 {
                    continue;
                }
                for m in multisets_with_sum(&props, d, total as u64) {
                    out.push(BranchDatum { h, k, m });
                }
            }
        }
    }
    out
}

/// Complete list of branch data for `M_g^{n+1}`.
///
/// Because at least one marked point is fixed, `k ≤ 6(2g − 1 + n)`.
pub fn branch_data_enumerate(g: u32, n: u32) -> Result<Vec<BranchDatum>> {
    if 2 * g + n < 2 {
        return Err(Error::InvalidArgument(format!("M_{g}^{} has no stable range", n + 1)));
    }
    let w = 2 * g as u64 - 1 + n as u64;
    let data = branch_data_with_bound(g, n, 6 * w);
    debug_assert!(data.iter().all(|b| branch_datum_valid(g, n, b)));
    Ok(data)
}

/// Contribution of one branch datum:
/// `(φ(k)/k) χ(M_h^{d+1+n}) k^{2h−1} Σ_{δ|k} μ(δ) c(k,1,δ)^n Π_r c(k,M_r,δ)`,
/// with ordered tuples over `d!` replaced by `1/Π mult!` over multisets.
pub fn branch_contribution(n: u32, b: &BranchDatum) -> Rational {
    let k = b.k;
    let chi = chi_open_or_zero(b.h, b.d() as u32 + 1 + n);
    if chi.is_zero() {
        return Rational::zero();
    }
    let mut s = 0i128;
    for delta in divisors(k) {
        let mu = moebius(delta);
        if mu == 0 {
            continue;
        }
        let mut t = mu as i128 * (c_int(k, 1, delta).unwrap() as i128).pow(n);
        for &m in &b.m {
            t *= c_int(k, m, delta).unwrap() as i128;
        }
        s += t;
    }
    if s == 0 {
        return Rational::zero();
    }
    let mut mult = Rational::from_integer(1.into());
    let mut i = 0;
    while i < b.m.len() {
        let mut j = i;
        while j < b.m.len() && b.m[j] == b.m[i] {
            j += 1;
        }
        mult *= inv_factorial(j - i);
        i = j;
    }
    rat(euler_phi(k) as i64, k as i64)
        * chi
        * pow_i(&int(k as i64), 2 * b.h as i64 - 1)
        * Rational::from_integer(s.into())
        * mult
}

/// `e(M_g^{n_plus_1})`; always an integer.
pub fn e_open(g: u32, n_plus_1: u32) -> Result<Rational> {
    if n_plus_1 == 0 {
        return Err(Error::InvalidArgument("need at least one marked point".into()));
    }
    let n = n_plus_1 - 1;
    let data = branch_data_enumerate(g, n)?;
    for b in &data {
        if !branch_datum_valid(g, n, b) {
            return Err(Error::Consistency(format!("invalid branch datum {b:?}")));
        }
    }
    let total: Rational = data.par_iter().map(|b| branch_contribution(n, b)).sum();
    if !is_integer(&total) {
        return Err(Error::NonIntegral(format!("e(M_{g}^{n_plus_1}) = {total}")));
    }
    Ok(total)
}

/// `e − χ`, which comes only from data with `k ≥ 2`.
pub fn e_open_minus_chi(g: u32, n_plus_1: u32) -> Result<Rational> {
    let n = n_plus_1 - 1;
    Ok(branch_data_enumerate(g, n)?.iter().filter(|b| b.k >= 2).map(|b| branch_contribution(n, b)).sum())
}

/// `e(M_g^{n+1})` for `g = 3..=10`, `n = 1..=8`, as `(g, n, value)` rows.
pub fn table1() -> Result<Vec<(u32, u32, Rational)>> {
    let cells: Vec<(u32, u32)> = (3..=10).flat_map(|g| (1..=8).map(move |n| (g, n))).collect();
    cells.par_iter().map(|&(g, n)| e_open(g, n + 1).map(|v| (g, n, v))).collect()
}

/// `χ(M_g^{n+1})` alongside, for the stable-range comparison.
pub fn stable_range_pairs() -> Result<Vec<(u32, u32, Rational, Rational)>> {
    let mut out = Vec::new();
    for (g, n, e) in table1()? {
        if n >= 2 * g + 2 {
            out.push((g, n, e, chi_open(g, n + 1)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn elliptic_orders() {
        let ks: BTreeSet<u64> = branch_data_enumerate(1, 0).unwrap().iter().map(|b| b.k).collect();
        assert_eq!(ks.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 6]);
        let data = branch_data_enumerate(1, 0).unwrap();
        for (k, m) in [(2, vec![1, 1, 1]), (3, vec![1, 1]), (4, vec![1, 2]), (6, vec![2, 3])] {
            assert!(data.contains(&BranchDatum { h: 0, k, m }));
        }
    }

    #[test]
    fn identity_and_hyperelliptic() {
        for (g, n) in [(1u32, 0u32), (2, 0), (3, 4)] {
            let d = branch_data_enumerate(g, n).unwrap();
            assert!(d.contains(&BranchDatum { h: g, k: 1, m: vec![] }));
        }
        let d = branch_data_enumerate(2, 0).unwrap();
        assert!(d.contains(&BranchDatum { h: 0, k: 2, m: vec![1; 5] }));
    }

    #[test]
    fn small_values() {
        assert_eq!(e_open(1, 1).unwrap(), int(1));
        assert_eq!(e_open(3, 2).unwrap(), int(8));
        assert_eq!(e_open(4, 2).unwrap(), int(-2));
        assert_eq!(e_open(3, 9).unwrap(), int(-79200));
        assert_eq!(e_open(3, 9).unwrap(), chi_open(3, 9).unwrap());
    }

    #[test]
    fn identity_datum_gives_chi() {
        let g = 3;
        let n = 2;
        let id = BranchDatum { h: g, k: 1, m: vec![] };
        assert_eq!(branch_contribution(n, &id), chi_open(g, n + 1).unwrap());
        let diff = e_open_minus_chi(g, n + 1).unwrap();
        assert_eq!(diff + chi_open(g, n + 1).unwrap(), e_open(g, n + 1).unwrap());
    }

    #[test]
    fn widened_bound_adds_nothing() {
        for g in 1..=6u32 {
            for n in 0..=3u32 {
                let w = 2 * g as u64 - 1 + n as u64;
                let a = branch_data_with_bound(g, n, 6 * w);
                let b = branch_data_with_bound(g, n, 9 * w);
                assert_eq!(a, b, "({g},{n})");
            }
        }
    }
}
