//! Closed-surface (`n = 0`) values and the `u_g` bookkeeping.
//!
//! Without marked points the cover sums also count, for every `m | (g − 1)`
//! with `m > 1`, the genus-`g` surfaces that are free `Z/m` covers of a
//! surface of genus `h + 1 = (g − 1)/m + 1`, each family with weight `1/m`.
//! The raw `y^0` coefficient at `λ^{2g−2}` is therefore
//! `raw_g = Σ_{m | (g−1)} e(M̄_{(g−1)/m + 1}) / m`, which is solved for
//! `e(M̄_g)` genus by genus. The unweighted sum
//! `u_g = Σ_{h | (g−1)} e(M̄_{h+1})` is kept alongside; it differs from
//! `raw_g` as soon as `g − 1` has a divisor other than 1, and the ledger
//! reports both.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::genfun::GenfunResult;
use crate::arith::{divisors, fmt_exact, int, Rational};
use crate::error::{Error, Result};
use crate::orbifold::is_integer;

#[derive(Clone, Debug, Default)]
pub struct UgLedger {
    /// Raw `y^0` coefficient of the free energy at `λ^{2g−2}`.
    pub raw: BTreeMap<u32, Rational>,
    /// Resolved `e(M̄_g)`.
    pub e: BTreeMap<u32, Rational>,
    /// `u_g = Σ_{h | (g−1)} e(M̄_{h+1})`.
    pub u: BTreeMap<u32, Rational>,
}

impl UgLedger {
    /// Genera where `raw_g ≠ u_g`, with both values.
    pub fn mismatches(&self) -> Vec<(u32, Rational, Rational)> {
        self.raw
            .iter()
            .filter_map(|(g, r)| {
                let u = self.u.get(g)?;
                (u != r).then(|| (*g, r.clone(), u.clone()))
            })
            .collect()
    }

    pub fn summary(&self) -> String {
        self.raw
            .keys()
            .map(|g| {
                format!(
                    "g={g}: raw={} e={} u={}",
                    fmt_exact(&self.raw[g]),
                    fmt_exact(&self.e[g]),
                    fmt_exact(&self.u[g])
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Solves the closed-surface values from raw coefficients `raw[g]`, `g ≥ 2`.
pub fn resolve_from_raw(raw: &BTreeMap<u32, Rational>) -> Result<UgLedger> {
    let mut led = UgLedger { raw: raw.clone(), ..Default::default() };
    for (&g, r) in raw {
        if g < 2 {
            return Err(Error::InvalidArgument(format!("closed genus {g} < 2")));
        }
        let mut e = r.clone();
        for m in divisors((g - 1) as u64).into_iter().filter(|&m| m > 1) {
            let lower = (g - 1) / m as u32 + 1;
            let el = led
                .e
                .get(&lower)
                .ok_or_else(|| Error::Consistency(format!("e(M̄_{lower}) needed before genus {g}")))?;
            e -= el / int(m as i64);
        }
        if !is_integer(&e) {
            return Err(Error::NonIntegral(format!("e(M̄_{g}) resolved to {e}")));
        }
        led.e.insert(g, e);
        let mut u = Rational::zero();
        for h in divisors((g - 1) as u64) {
            u += &led.e[&(h as u32 + 1)];
        }
        led.u.insert(g, u);
    }
    Ok(led)
}

/// Ledger for `g = 2..=upto_g` from a generating-function result.
pub fn u_g_resolve(res: &GenfunResult, upto_g: u32) -> Result<UgLedger> {
    let mut raw = BTreeMap::new();
    for g in 2..=upto_g {
        raw.insert(g, res.closed_raw(g)?);
    }
    resolve_from_raw(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_arithmetic() {
        let raw: BTreeMap<u32, Rational> = [(2, int(6)), (3, int(35)), (4, int(202))].into_iter().collect();
        let led = resolve_from_raw(&raw).unwrap();
        assert_eq!(led.e[&3], int(32));
        assert_eq!(led.e[&4], int(200));
        assert_eq!(led.u[&2], int(6));
        assert_eq!(led.u[&3], int(38));
        assert_eq!(led.u[&4], int(206));
        assert_eq!(led.mismatches().len(), 2);
    }

    #[test]
    fn missing_lower_genus_is_reported() {
        let raw: BTreeMap<u32, Rational> = [(3, int(35))].into_iter().collect();
        assert!(resolve_from_raw(&raw).is_err());
    }
}
