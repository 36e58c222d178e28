//! Cyclic-cover data over a single vertex of a decorated stable graph.
//!
//! A vertex of the quotient graph is a genus-`h` orbifold covered by a
//! cyclic cover of order `k`. Its special points are `a` legs, `b`
//! half-edges, `c` points with monodromy of order two swapping the branches
//! of a node, and `d` extra branch points of orders `k/M_r`. The cover has
//! weight `w = k(2h − 2 + a + b + c + d) − Σ M_r`, minus its Euler
//! characteristic, and is stable exactly when `w ≥ 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{c_int, divisors, gamma_int, int, inv_factorial, pow_i, Rational};
use crate::open::multisets_with_sum;
use crate::orbifold::chi_open_or_zero;

/// Cover datum over one vertex. `n` lists the orders attached to the
/// half-edges and is empty when the datum is enumerated without edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbiVertexDatum {
    pub h: u32,
    pub k: u64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub n: Vec<u64>,
    pub m: Vec<u64>,
}

impl OrbiVertexDatum {
    pub fn d(&self) -> u32 {
        self.m.len() as u32
    }

    pub fn special_points(&self) -> u32 {
        self.a + self.b + self.c + self.d()
    }

    pub fn weight(&self) -> i64 {
        self.k as i64 * (2 * self.h as i64 - 2 + self.special_points() as i64)
            - self.m.iter().sum::<u64>() as i64
    }

    /// Stability of the quotient vertex and positivity of the weight.
    pub fn is_valid(&self) -> bool {
        2 * self.h + self.special_points() >= 3
            && self.weight() >= 1
            && self.m.iter().all(|&x| x < self.k && self.k.is_multiple_of(x))
            && self.n.iter().all(|&x| self.k.is_multiple_of(x))
            && (self.c == 0 || self.k.is_multiple_of(2))
    }
}

/// Upper bound on the order of a cyclic cover of weight `w`. A cover with
/// a leg, a node branch or a swapping point has `k ≤ 6w`; otherwise the
/// Hurwitz-type bound `k ≤ 42w` applies.
pub fn k_bound(w: u32, has_special: bool) -> u64 {
    if has_special {
        6 * w as u64
    } else {
        42 * w as u64
    }
}

/// All vertex data of weight `w` with `a` legs, `b` half-edges and order `k`.
pub fn vertex_data(w: u32, a: u32, b: u32, k: u64) -> Vec<OrbiVertexDatum> {
    let mut out = Vec::new();
    let props: Vec<u64> = divisors(k).into_iter().filter(|&m| m < k).collect();
    let w = w as i64;
    let ki = k as i64;
    // Each extra branch point adds k − M_r ∈ [⌈k/2⌉, k − 1] to the weight.
    let min_gain = ki - props.last().copied().unwrap_or(0) as i64;
    let cmax = if k.is_multiple_of(2) { (w / ki + 2).max(0) as u32 } else { 0 };
    for h in 0.. {
        if ki * (2 * h as i64 - 2) > w {
            break;
        }
        for c in 0..=cmax {
            let base = ki * (2 * h as i64 - 2 + (a + b + c) as i64);
            let rest = w - base;
            if rest < 0 {
                break;
            }
            if props.is_empty() {
                if rest == 0 && 2 * h + a + b + c >= 3 {
                    out.push(OrbiVertexDatum { h, k, a, b, c, n: vec![], m: vec![] });
                }
                continue;
            }
            let dmax = rest / min_gain;
            for d in 0..=dmax {
                if 2 * h + a + b + c + (d as u32) < 3 {
                    continue;
                }
                let msum = ki * d - rest;
                if msum < 0 {
                    continue;
                }
                for m in multisets_with_sum(&props, d as usize, msum as u64) {
                    out.push(OrbiVertexDatum { h, k, a, b, c, n: vec![], m });
                }
            }
        }
    }
    out
}

pub(crate) fn mult_factor(xs: &[u64]) -> Rational {
    let mut acc = Rational::one();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        acc *= inv_factorial(j - i);
        i = j;
    }
    acc
}

/// Weight of a vertex datum at a fixed `δ | k`, without the half-edge
/// factors: `χ(M_h^{a+b+c+d}) / (c! Π mult(M)!) · k^{2h−2} · c(k,1,δ)^a ·
/// γ(k,δ,c) · Π_r c(k,M_r,δ)`.
pub fn datum_weight(v: &OrbiVertexDatum, delta: u64) -> Rational {
    let k = v.k;
    let chi = chi_open_or_zero(v.h, v.special_points());
    if chi.is_zero() {
        return chi;
    }
    let mut s = gamma_int(k, delta, v.c);
    if s.is_zero() {
        return Rational::zero();
    }
    s *= num_traits::pow(BigInt::from(c_int(k, 1, delta).unwrap()), v.a as usize);
    for &m in &v.m {
        s *= c_int(k, m, delta).unwrap();
    }
    if s.is_zero() {
        return Rational::zero();
    }
    chi * inv_factorial(v.c as usize)
        * mult_factor(&v.m)
        * pow_i(&int(k as i64), 2 * v.h as i64 - 2)
        * Rational::from_integer(s)
}

type FactorKey = (u32, u32, u32, u64, u64);

fn factor_memo() -> &'static RwLock<HashMap<FactorKey, Rational>> {
    static M: OnceLock<RwLock<HashMap<FactorKey, Rational>>> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Vertex factor `A(w, a, b, k, δ)`: the sum of [`datum_weight`] over every
/// datum of the given shape. Memoized; concurrent inserts are idempotent.
pub fn vertex_factor(w: u32, a: u32, b: u32, k: u64, delta: u64) -> Rational {
    let key = (w, a, b, k, delta);
    if let Some(v) = factor_memo().read().unwrap().get(&key) {
        return v.clone();
    }
    let v: Rational = vertex_data(w, a, b, k).iter().map(|d| datum_weight(d, delta)).sum();
    factor_memo().write().unwrap().insert(key, v.clone());
    v
}

/// Nonzero vertex factors for a vertex of weight `w`, `a` legs and `b`
/// half-edges, over the common denominator `denom`.
#[derive(Clone, Debug)]
pub struct VertexTable {
    pub denom: BigInt,
    /// `(k, δ, numerator)` with `A(w,a,b,k,δ) = numerator / denom`.
    pub entries: Vec<(u64, u64, BigInt)>,
}

fn table_memo() -> &'static RwLock<HashMap<(u32, u32, u32), Arc<VertexTable>>> {
    static M: OnceLock<RwLock<HashMap<(u32, u32, u32), Arc<VertexTable>>>> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached [`VertexTable`] for `(w, a, b)`.
pub fn vertex_table(w: u32, a: u32, b: u32) -> Arc<VertexTable> {
    if let Some(t) = table_memo().read().unwrap().get(&(w, a, b)) {
        return t.clone();
    }
    let mut raw = Vec::new();
    for k in 1..=k_bound(w, a + b > 0) {
        for delta in divisors(k) {
            let f = vertex_factor(w, a, b, k, delta);
            if !f.is_zero() {
                raw.push((k, delta, f));
            }
        }
    }
    let denom = raw.iter().fold(BigInt::one(), |acc, (_, _, f)| acc.lcm(f.denom()));
    let entries = raw.into_iter().map(|(k, d, f)| (k, d, f.numer() * (&denom / f.denom()))).collect();
    let t = Arc::new(VertexTable { denom, entries });
    table_memo().write().unwrap().insert((w, a, b), t.clone());
    t
}

/// Edge kernel `Σ_{N | (k_u, k_v)} N · c(k_u,N,δ_u) · c(k_v,N,δ_v)`.
pub fn edge_kernel(ku: u64, du: u64, kv: u64, dv: u64) -> i64 {
    let g = num_integer::gcd(ku, kv);
    divisors(g)
        .into_iter()
        .map(|nn| nn as i64 * c_int(ku, nn, du).unwrap() * c_int(kv, nn, dv).unwrap())
        .sum()
}

/// Dense table of [`edge_kernel`] over every `(k, δ)` with `k ≤ kmax`.
#[derive(Debug)]
pub struct KernelTable {
    pub kmax: u64,
    offset: Vec<usize>,
    divs: Vec<Vec<u64>>,
    values: Vec<i64>,
    size: usize,
}

impl KernelTable {
    pub fn new(kmax: u64) -> Self {
        let mut offset = vec![0; kmax as usize + 2];
        let mut divs = vec![Vec::new()];
        let mut ids = Vec::new();
        for k in 1..=kmax {
            offset[k as usize] = ids.len();
            let d = divisors(k);
            ids.extend(d.iter().map(|&x| (k, x)));
            divs.push(d);
        }
        offset[kmax as usize + 1] = ids.len();
        let size = ids.len();
        let mut values = vec![0i64; size * size];
        for (i, &(ku, du)) in ids.iter().enumerate() {
            for (j, &(kv, dv)) in ids.iter().enumerate().skip(i) {
                let e = edge_kernel(ku, du, kv, dv);
                values[i * size + j] = e;
                values[j * size + i] = e;
            }
        }
        KernelTable { kmax, offset, divs, values, size }
    }

    /// Index of `(k, δ)`.
    pub fn id(&self, k: u64, delta: u64) -> usize {
        let pos = self.divs[k as usize].binary_search(&delta).expect("δ divides k");
        self.offset[k as usize] + pos
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.values[i * self.size + j]
    }
}

/// Shared kernel table covering every order up to `kmax`.
pub fn kernel_table(kmax: u64) -> Arc<KernelTable> {
    static T: OnceLock<RwLock<Option<Arc<KernelTable>>>> = OnceLock::new();
    let cell = T.get_or_init(|| RwLock::new(None));
    if let Some(t) = cell.read().unwrap().as_ref() {
        if t.kmax >= kmax {
            return t.clone();
        }
    }
    let t = Arc::new(KernelTable::new(kmax));
    *cell.write().unwrap() = Some(t.clone());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_are_valid_and_have_the_right_weight() {
        for w in 1..=6 {
            for a in 0..=3 {
                for b in 0..=3 {
                    for k in 1..=k_bound(w, true) {
                        for v in vertex_data(w, a, b, k) {
                            assert!(v.is_valid(), "{v:?}");
                            assert_eq!(v.weight(), w as i64);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn widened_order_bound_adds_nothing() {
        for w in 1..=4 {
            for a in 0..=2 {
                for b in 0..=2 {
                    let lo = k_bound(w, a + b > 0);
                    for k in lo + 1..=lo + lo / 2 {
                        for delta in divisors(k) {
                            assert!(vertex_factor(w, a, b, k, delta).is_zero(), "w={w} a={a} b={b} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_cover_gives_chi() {
        // k = 1, δ = 1: only the smooth vertex of genus (w − a − b + 2)/2.
        assert_eq!(vertex_factor(1, 3, 0, 1, 1), int(1));
        assert_eq!(vertex_factor(1, 1, 0, 1, 1), chi_open_or_zero(1, 1));
        assert!(vertex_factor(2, 1, 0, 1, 1).is_zero());
    }

    #[test]
    fn elliptic_involution_datum() {
        // M̄_1^1: the elliptic involution is k = 2 over a sphere with one leg
        // and three extra branch points of order 2.
        let d = vertex_data(1, 1, 0, 2);
        assert!(d.contains(&OrbiVertexDatum { h: 0, k: 2, a: 1, b: 0, c: 0, n: vec![], m: vec![1, 1, 1] }));
    }

    #[test]
    fn kernel_of_trivial_covers() {
        assert_eq!(edge_kernel(1, 1, 1, 1), 1);
        // N ∈ {1, 2}: c(2,1,1)² + 2·c(2,2,1)² = 1 + 2.
        assert_eq!(edge_kernel(2, 1, 2, 1), 3);
        let t = KernelTable::new(12);
        assert_eq!(t.get(t.id(12, 4), t.id(6, 3)), edge_kernel(12, 4, 6, 3));
    }
}
