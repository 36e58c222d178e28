//! Generating-function route for `e(M̄_g^n)`.
//!
//! With
//! `V(k,δ) = c(k,1,δ)λ^k y + Σ_{m|k, m<k} c(k,m,δ)λ^{k−m} + T(k,δ)λ^k
//!          + Σ_{r|k} c(k,r,δ) x_r λ^k`
//! and
//! `Q = Σ_k Σ_{δ|k} φ(δ) Σ_{2h+s≥3} χ(M_h^s) (kλ^k)^{2h−2} V(k,δ)^s / s!`,
//! the Gaussian expectation of `exp(Q)` with `⟨x_r x_r⟩ = r` is `exp(f)`,
//! where `f = Σ e(M̄_g^n) λ^{2g−2+n} y^n / n!` for `n ≥ 1`. The `y^0` part
//! of `f` needs the correction in [`super::ledger`].
//!
//! Only terms of `Q` with positive `λ` weight describe stable covers; the
//! rest are dropped. The expansion of `V^s` is done on its own here so that
//! this route shares no vertex code with the direct one.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{c_coeff, divisors, euler_phi, factorial_q, int, pow_i, t_coeff, Rational};
use crate::error::{Error, Result};
use crate::orbifold::{chi_open_or_zero, is_integer};
use crate::series::{SlotMono, WeightedSeries};

/// Largest cover order that can produce a term of weight `≤ lmax`.
fn k_max(lmax: u32) -> u64 {
    42 * lmax as u64
}

/// `V(k,δ)` as a series in `λ`, `y` and the slots, windowed at `lmax`.
pub fn v_poly(k: u64, delta: u64, lmax: i32, ymax: u32) -> WeightedSeries {
    let ki = k as i32;
    let mut v = WeightedSeries::zero(0, lmax, ymax);
    v.add_term(ki, SlotMono::y_pow(1), c_coeff(k, 1, delta).unwrap());
    for m in divisors(k).into_iter().filter(|&m| m < k) {
        v.add_term(ki - m as i32, SlotMono::default(), c_coeff(k, m, delta).unwrap());
    }
    v.add_term(ki, SlotMono::default(), t_coeff(k, delta).unwrap());
    for r in divisors(k) {
        v.add_term(ki, SlotMono { y: 0, slots: vec![(r as u32, 1)] }, c_coeff(k, r, delta).unwrap());
    }
    v
}

/// Lowest `λ` power in `V(k, δ)`.
fn v_min_degree(k: u64) -> u64 {
    let largest_proper = divisors(k).into_iter().filter(|&m| m < k).max().unwrap_or(0);
    if largest_proper == 0 {
        k
    } else {
        k - largest_proper
    }
}

/// The exponent `Q`, restricted to weights `1..=lmax`.
pub fn build_q(lmax: u32, ymax: u32) -> WeightedSeries {
    build_q_with_bound(lmax, ymax, k_max(lmax))
}

/// [`build_q`] with an explicit bound on the cover order.
pub fn build_q_with_bound(lmax: u32, ymax: u32, kmax: u64) -> WeightedSeries {
    let l = lmax as i64;
    let mut q = WeightedSeries::zero(1, lmax as i32, ymax);
    for k in 1..=kmax {
        let ki = k as i64;
        let mind = v_min_degree(k) as i64;
        for delta in divisors(k) {
            let phi = int(euler_phi(delta) as i64);
            for h in 0u32.. {
                let shift = ki * (2 * h as i64 - 2);
                if shift > l {
                    break;
                }
                // Window of V^s needed for final weight ≤ lmax.
                let top = (l - shift) as i32;
                let v = v_poly(k, delta, top, ymax);
                let mut vs = WeightedSeries::one(top, ymax);
                for s in 0u32.. {
                    if shift + s as i64 * mind > l {
                        break;
                    }
                    if s > 0 {
                        vs = vs.mul(&v);
                    }
                    if 2 * h + s < 3 {
                        continue;
                    }
                    let chi = chi_open_or_zero(h, s);
                    if chi.is_zero() {
                        continue;
                    }
                    let coef = &phi * chi * pow_i(&int(ki), 2 * h as i64 - 2) / factorial_q(s as usize);
                    for (deg, mono, c) in vs.terms() {
                        let w = shift + deg as i64;
                        if w >= 1 && w <= l {
                            q.add_term(w as i32, mono.clone(), &coef * c);
                        }
                    }
                }
            }
        }
    }
    q
}

/// The free energy `f(λ, y) = log ⟨exp Q⟩`.
#[derive(Clone, Debug)]
pub struct GenfunResult {
    pub lmax: u32,
    pub ymax: u32,
    /// `coeffs[(L, n)]` is the coefficient of `λ^L y^n`.
    pub coeffs: BTreeMap<(u32, u32), Rational>,
}

impl GenfunResult {
    /// Coefficient of `λ^l y^n`.
    pub fn coeff(&self, l: u32, n: u32) -> Rational {
        self.coeffs.get(&(l, n)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `e(M̄_g^n) = n! · [λ^{2g−2+n} y^n] f` for `n ≥ 1`.
    pub fn e_bar(&self, g: u32, n: u32) -> Result<Rational> {
        if n == 0 {
            return Err(Error::InvalidArgument("n = 0 is read through the closed-surface ledger".into()));
        }
        if 2 * g + n < 3 {
            return Err(Error::InvalidArgument(format!("(g, n) = ({g}, {n}) is not stable")));
        }
        let l = 2 * g + n - 2;
        if l > self.lmax || n > self.ymax {
            return Err(Error::WindowExceeded(format!(
                "(g, n) = ({g}, {n}) needs lmax ≥ {l} and ymax ≥ {n}"
            )));
        }
        let v = factorial_q(n as usize) * self.coeff(l, n);
        if !is_integer(&v) {
            return Err(Error::NonIntegral(format!("generating function gives {v} at ({g}, {n})")));
        }
        Ok(v)
    }

    /// Raw `y^0` coefficient at `λ^{2g−2}`.
    pub fn closed_raw(&self, g: u32) -> Result<Rational> {
        if g < 2 || 2 * g - 2 > self.lmax {
            return Err(Error::WindowExceeded(format!("closed genus {g} outside lmax {}", self.lmax)));
        }
        Ok(self.coeff(2 * g - 2, 0))
    }
}

/// Builds `Q`, exponentiates, contracts the slots and takes the logarithm.
pub fn e_bar_genfun(lmax: u32, ymax: u32) -> Result<GenfunResult> {
    let q = build_q(lmax, ymax);
    let z = q.exp()?.wick_multi();
    let f = z.log()?;
    let mut coeffs = BTreeMap::new();
    for (l, mono, c) in f.terms() {
        if !mono.slots.is_empty() || l < 0 {
            return Err(Error::Consistency(format!("stray term at λ^{l} {mono:?}")));
        }
        if (l as u32 + mono.y) % 2 == 1 {
            return Err(Error::Consistency(format!(
                "odd total degree λ^{l} y^{} has coefficient {c}",
                mono.y
            )));
        }
        coeffs.insert((l as u32, mono.y), c.clone());
    }
    Ok(GenfunResult { lmax, ymax, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_for_trivial_cover() {
        // V(1,1) = λy + λx_1.
        let v = v_poly(1, 1, 4, 4);
        assert_eq!(v.term_count(), 2);
        assert_eq!(v.coeff(1, &SlotMono::y_pow(1)), int(1));
    }

    #[test]
    fn widened_order_bound_adds_nothing() {
        let l = 5;
        assert_eq!(build_q(l, 3), build_q_with_bound(l, 3, 63 * l as u64));
    }

    #[test]
    fn low_order_values() {
        let r = e_bar_genfun(4, 4).unwrap();
        assert_eq!(r.e_bar(0, 3).unwrap(), int(1));
        assert_eq!(r.e_bar(0, 4).unwrap(), int(2));
        assert_eq!(r.e_bar(1, 1).unwrap(), int(2));
        assert_eq!(r.e_bar(2, 1).unwrap(), int(13));
        assert_eq!(r.closed_raw(2).unwrap(), int(6));
    }
}
