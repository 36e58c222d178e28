//! Ordinary Euler characteristic of the compactification `M̄_g^n`.
//!
//! Two independent routes: a direct sum over graphs decorated with cyclic
//! covers ([`direct`]) and a generating function whose Gaussian contraction
//! produces the same graphs ([`genfun`]). Closed surfaces go through
//! [`ledger`].

pub mod direct;
pub mod genfun;
pub mod ledger;
pub mod oracle;
pub mod vertex;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use direct::{e_bar_direct_detailed, e_bar_direct_raw, skeleton_sum, skeletons, SkeletonContribution};
pub use genfun::{build_q, e_bar_genfun, GenfunResult};
pub use ledger::{resolve_from_raw, u_g_resolve, UgLedger};
pub use oracle::genus0_tree_oracle;
pub use vertex::{
    edge_kernel, vertex_data, vertex_factor, vertex_table, KernelTable, OrbiVertexDatum, VertexTable,
};

use crate::arith::Rational;
use crate::config::Windows;
use crate::error::{Error, Result};

/// Largest weight `2g − 2 + n` handled by the direct route by default.
pub const DIRECT_WEIGHT_LIMIT: u32 = 8;

/// `e(M̄_g^n)` by the direct route, `n = 0` included through the ledger.
pub fn e_bar_direct(g: u32, n: u32) -> Result<Rational> {
    if n > 0 {
        return e_bar_direct_raw(g, n);
    }
    let mut raw = BTreeMap::new();
    for h in 2..=g {
        if (g - 1).is_multiple_of(h - 1) {
            raw.insert(h, e_bar_direct_raw(h, 0)?);
        }
    }
    // Only genera h with (h − 1) | (g − 1) enter, and the set is closed
    // under the same relation.
    Ok(resolve_from_raw(&raw)?.e[&g].clone())
}

/// `e(M̄_g^n)` from a generating-function result, `n = 0` included.
pub fn e_bar_from_genfun(res: &GenfunResult, g: u32, n: u32) -> Result<Rational> {
    if n > 0 {
        return res.e_bar(g, n);
    }
    Ok(u_g_resolve(res, g)?.e[&g].clone())
}

/// Windows needed by the generating function to reach `(g, n)`.
pub fn genfun_windows_for(g: u32, n: u32) -> (u32, u32) {
    (2 * g + n - 2, n.max(1))
}

/// `e(M̄_g^n)` by the generating function, sized to the request.
pub fn e_bar_genfun_single(g: u32, n: u32, win: &Windows) -> Result<Rational> {
    if 2 * g + n < 3 {
        return Err(Error::InvalidArgument(format!("(g, n) = ({g}, {n}) is not stable")));
    }
    let (l, y) = genfun_windows_for(g, n);
    if l as usize > win.lmax || n as usize > win.ymax {
        return Err(Error::WindowExceeded(format!(
            "(g, n) = ({g}, {n}) needs lmax ≥ {l}, ymax ≥ {n}; have {}, {}",
            win.lmax, win.ymax
        )));
    }
    let res = e_bar_genfun(l, y)?;
    e_bar_from_genfun(&res, g, n)
}

/// One cell of the closed table with both routes.
#[derive(Clone, Debug)]
pub struct ClosedCell {
    pub g: u32,
    pub n: u32,
    pub genfun: Rational,
    pub direct: Option<Rational>,
}

impl ClosedCell {
    pub fn agree(&self) -> bool {
        self.direct.as_ref().is_none_or(|d| *d == self.genfun)
    }
}

/// Every `e(M̄_g^n)` for `g` in `gs` and `n` in `ns`. The direct route runs
/// where `2g − 2 + n ≤ direct_limit`; any disagreement is an error.
pub fn closed_table(gs: &[u32], ns: &[u32], direct_limit: u32) -> Result<Vec<ClosedCell>> {
    let gmax = *gs.iter().max().unwrap_or(&2);
    let nmax = *ns.iter().max().unwrap_or(&0);
    let lmax = (2 * gmax + nmax).saturating_sub(2).max(2 * gmax - 2);
    let res = e_bar_genfun(lmax, nmax.max(1))?;
    let led = u_g_resolve(&res, gmax)?;
    let cells: Vec<(u32, u32)> =
        gs.iter().flat_map(|&g| ns.iter().map(move |&n| (g, n))).filter(|&(g, n)| 2 * g + n >= 3).collect();
    let out: Vec<ClosedCell> = cells
        .par_iter()
        .map(|&(g, n)| -> Result<ClosedCell> {
            let genfun = if n == 0 { led.e[&g].clone() } else { res.e_bar(g, n)? };
            let direct = if 2 * g + n - 2 <= direct_limit { Some(e_bar_direct(g, n)?) } else { None };
            Ok(ClosedCell { g, n, genfun, direct })
        })
        .collect::<Result<_>>()?;
    if let Some(c) = out.iter().find(|c| !c.agree()) {
        return Err(Error::Consistency(format!(
            "routes disagree at ({}, {}): genfun {} direct {}",
            c.g,
            c.n,
            c.genfun,
            c.direct.as_ref().unwrap()
        )));
    }
    Ok(out)
}

/// `e(M̄_g^n)` for `g = 2..=4`, `n = 0..=6`.
pub fn table2(direct_limit: u32) -> Result<Vec<ClosedCell>> {
    closed_table(&[2, 3, 4], &[0, 1, 2, 3, 4, 5, 6], direct_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn direct_small_values() {
        assert_eq!(e_bar_direct(0, 3).unwrap(), int(1));
        assert_eq!(e_bar_direct(0, 5).unwrap(), int(7));
        assert_eq!(e_bar_direct(1, 1).unwrap(), int(2));
        assert_eq!(e_bar_direct(2, 0).unwrap(), int(6));
        assert_eq!(e_bar_direct(2, 1).unwrap(), int(13));
    }
}
