//! Direct evaluation of `e(M̄_g^n)` as a sum over decorated graphs.
//!
//! Summing over ordered vertices, ordered half-edges and pairings with the
//! weights `1/p!` and `1/b_i!` is the same as summing over isomorphism
//! classes of the underlying multigraph with weight `1/|Aut|`. Legs are
//! labelled, which turns the unlabelled automorphism count into `n!/|Aut|`.
//! Each vertex then carries an independent choice of `(k, δ)` and a vertex
//! factor, and each edge the kernel `Σ_N N c(k_u,N,δ_u) c(k_v,N,δ_v)`.
//!
//! The underlying multigraph, the skeleton, has vertex weights `w_v ≥ 1`
//! adding up to `2g − 2 + n` and valence at most `w_v + 2`, with no parity
//! condition since the vertex genus is not determined by the skeleton.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use std::sync::Arc;

use super::vertex::{kernel_table, vertex_table, KernelTable, VertexTable};
use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::graph::{enumerate_shapes, Shape, ShapeClass};
use crate::orbifold::is_integer;

/// Contribution of one skeleton, kept for the audit dump.
#[derive(Clone, Debug, Serialize)]
pub struct SkeletonContribution {
    pub weights: Vec<u32>,
    pub legs: Vec<u32>,
    pub multiplicities: Vec<Vec<u32>>,
    pub aut: String,
    pub value: String,
}

/// Skeletons for `(g, n)`: parity-free shapes of total weight `2g − 2 + n`.
pub fn skeletons(g: u32, n: u32) -> Result<Vec<ShapeClass>> {
    if 2 * g + n < 3 {
        return Err(Error::InvalidArgument(format!("(g, n) = ({g}, {n}) is not stable")));
    }
    Ok(enumerate_shapes(2 * g + n - 2, n, false))
}

/// `Σ_{(k_v, δ_v)} Π_v A_v Π_e E_e` for a fixed skeleton.
pub fn skeleton_sum(s: &Shape) -> Rational {
    let p = s.vertex_count();
    let tables: Vec<Arc<VertexTable>> =
        (0..p).map(|v| vertex_table(s.w[v], s.a[v], s.half_edges(v))).collect();
    if tables.iter().any(|t| t.entries.is_empty()) {
        return Rational::zero();
    }
    let kmax = tables.iter().flat_map(|t| t.entries.iter().map(|e| e.0)).max().unwrap_or(1);
    let kern = kernel_table(kmax);
    let choices: Vec<Vec<(usize, &BigInt)>> =
        tables.iter().map(|t| t.entries.iter().map(|(k, d, a)| (kern.id(*k, *d), a)).collect()).collect();
    let mut walk = Walk { s, kern: &kern, choices: &choices, pick: vec![0; p], acc: BigInt::zero() };
    walk.descend(0, BigInt::one());
    let denom = tables.iter().fold(BigInt::one(), |acc, t| acc * &t.denom);
    Rational::new(walk.acc, denom)
}

struct Walk<'a> {
    s: &'a Shape,
    kern: &'a KernelTable,
    choices: &'a [Vec<(usize, &'a BigInt)>],
    pick: Vec<usize>,
    acc: BigInt,
}

impl Walk<'_> {
    fn descend(&mut self, v: usize, weight: BigInt) {
        if v == self.choices.len() {
            self.acc += weight;
            return;
        }
        for &(id, a) in &self.choices[v] {
            // Loops at v and edges back to earlier vertices.
            let mut e = BigInt::one();
            for _ in 0..self.s.m[v][v] {
                e *= self.kern.get(id, id);
            }
            for u in 0..v {
                for _ in 0..self.s.m[v][u] {
                    e *= self.kern.get(self.pick[u], id);
                }
                if e.is_zero() {
                    break;
                }
            }
            if e.is_zero() {
                continue;
            }
            self.pick[v] = id;
            self.descend(v + 1, &weight * a * e);
        }
    }
}

/// `e(M̄_g^n)` by the direct route, with the contribution of each skeleton.
///
/// For `n = 0` the same sum counts a closed cover also through each of its
/// free cyclic quotients; see [`super::ledger`] for the correction.
pub fn e_bar_direct_detailed(g: u32, n: u32) -> Result<(Rational, Vec<SkeletonContribution>)> {
    let nf = Rational::from_integer(factorial(n as usize));
    let sk = skeletons(g, n)?;
    let values: Vec<Rational> = sk
        .par_iter()
        .map(|c| &nf * skeleton_sum(&c.shape) / Rational::from_integer(BigInt::from(c.aut)))
        .collect();
    let total: Rational = values.iter().sum();
    if n > 0 && !is_integer(&total) {
        return Err(Error::NonIntegral(format!("direct sum for ({g}, {n}) is {total}")));
    }
    let parts = sk
        .iter()
        .zip(&values)
        .map(|(c, v)| SkeletonContribution {
            weights: c.shape.w.clone(),
            legs: c.shape.a.clone(),
            multiplicities: c.shape.m.clone(),
            aut: c.aut.to_string(),
            value: v.to_string(),
        })
        .collect();
    Ok((total, parts))
}

/// Raw direct sum; equals `e(M̄_g^n)` for `n ≥ 1` and is checked to be an
/// integer there.
pub fn e_bar_direct_raw(g: u32, n: u32) -> Result<Rational> {
    e_bar_direct_detailed(g, n).map(|(t, _)| t)
}
