//! Solution of `ȳ = x + Σ_g Ω_g'(ȳ)·ħ^g` as a series in `x` and `ħ`.

use num_traits::Zero;

use super::bi::{BiSeries, BiWindow};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Solves the fixed-point equation inside `0 ≤ x-degree ≤ xmax`,
/// `0 ≤ ħ-degree ≤ hmax`.
///
/// `omega_prime[g]` lists the coefficients of `Ω_g'(y)` in powers of `y`;
/// `Ω_0'` must start at `y²`. `y_0` is found degree by degree and each
/// `y_g` from `y_g = y_0'·[ħ^g] Σ_s ħ^s Ω_s'(ȳ_{<g})`. The residual is
/// checked before returning.
pub fn solve_fixed_point(omega_prime: &[Vec<Rational>], xmax: usize, hmax: usize) -> Result<BiSeries> {
    let p0 = &omega_prime[0];
    if p0.iter().take(2).any(|c| !c.is_zero()) {
        return Err(Error::InvalidArgument("Ω_0' must start at y²".into()));
    }
    // y_0 one degree further than needed so that y_0' is exact up to xmax.
    let w0 = BiWindow::new(xmax + 1, 0, 0);
    let x0 = BiSeries::x(w0);
    let mut y0 = x0.clone();
    for _ in 0..=xmax + 1 {
        y0 = &x0 + &y0.compose_into(p0);
    }
    let y0p = y0.d_dx();

    let win = BiWindow::new(xmax, 0, hmax as i32);
    let mut ybar = BiSeries::from_x_poly(win, 0, &y0.hbar_row(0));
    let y0p = BiSeries::from_x_poly(win, 0, &y0p.hbar_row(0));
    for g in 1..=hmax {
        let r = rhs(omega_prime, &ybar, g.min(omega_prime.len() - 1));
        let rg = BiSeries::from_x_poly(win, 0, &r.hbar_row(g as i32));
        let yg = &y0p * &rg;
        ybar = &ybar + &yg.shift_hbar(g as i32);
    }

    let res = residual(omega_prime, &ybar);
    if !res.is_zero() {
        return Err(Error::NoConvergence(format!("nonzero residual {res:?}")));
    }
    Ok(ybar)
}

fn rhs(omega_prime: &[Vec<Rational>], ybar: &BiSeries, smax: usize) -> BiSeries {
    let win = ybar.window();
    let mut acc = BiSeries::zero(win);
    for (s, p) in omega_prime.iter().enumerate().take(smax + 1) {
        if s as i32 > win.hmax {
            break;
        }
        acc = &acc + &ybar.compose_into(p).shift_hbar(s as i32);
    }
    acc
}

/// `x + Σ_g Ω_g'(ȳ)ħ^g − ȳ` inside the window of `ybar`.
pub fn residual(omega_prime: &[Vec<Rational>], ybar: &BiSeries) -> BiSeries {
    let win = ybar.window();
    let x = BiSeries::x(win);
    let r = rhs(omega_prime, ybar, omega_prime.len() - 1);
    &(&x + &r) - ybar
}
