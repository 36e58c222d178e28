//! Orbifold Euler characteristics of `M_g^n` and of its compactification.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    bernoulli, big, factorial, factorial_q, int, inv_factorial, odd_double_factorial, rat, sign, Rational,
};
use crate::config::Windows;
use crate::error::{Error, Result};
use crate::graph::stable_shapes;
use crate::series::{graded_exp, graded_log, solve_fixed_point, BiSeries, BiWindow, GradedCoeff, TruncPoly};

fn check_stable(g: u32, n: u32) -> Result<()> {
    if 2 * g + n <= 2 {
        return Err(Error::InvalidArgument(format!("(g, n) = ({g}, {n}) is not stable")));
    }
    Ok(())
}

fn open_memo() -> &'static Mutex<HashMap<(u32, u32), Rational>> {
    static M: OnceLock<Mutex<HashMap<(u32, u32), Rational>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ(M_g^n) = (−1)^n (2g−1) B_{2g} (2g+n−3)! / (2g)!`.
pub fn chi_open(g: u32, n: u32) -> Result<Rational> {
    check_stable(g, n)?;
    if let Some(v) = open_memo().lock().unwrap().get(&(g, n)) {
        return Ok(v.clone());
    }
    let (g2, nn) = (2 * g as usize, n as usize);
    let v = sign(nn) * int(2 * g as i64 - 1) * bernoulli(g2) * factorial_q(g2 + nn - 3) / factorial_q(g2);
    open_memo().lock().unwrap().insert((g, n), v.clone());
    Ok(v)
}

/// `χ(M_g^n)` or zero when `(g, n)` is unstable; convenient inside sums.
pub fn chi_open_or_zero(g: u32, n: u32) -> Rational {
    chi_open(g, n).unwrap_or_else(|_| Rational::zero())
}

/// `χ(M̄_g^n)` restricted to stable graphs with first Betti number in `betti`
/// (all graphs when `None`).
fn graph_sum(g: u32, n: u32, betti: Option<u32>) -> Result<Rational> {
    let nf = factorial(n as usize);
    let mut acc = Rational::zero();
    for sc in stable_shapes(g, n)? {
        let s = &sc.shape;
        if betti.is_some_and(|b| s.betti() != b) {
            continue;
        }
        let mut term = Rational::new(nf.clone(), BigInt::from(sc.aut));
        for v in 0..s.vertex_count() {
            term *= chi_open(s.genus(v).expect("stable shape"), s.valence(v))?;
        }
        acc += term;
    }
    Ok(acc)
}

/// `χ(M̄_g^n) = Σ_G Π_v χ(M_{γ(v)}^{l(v)}) / |Aut G|` over stable graphs.
pub fn chi_bar_graphsum(g: u32, n: u32) -> Result<Rational> {
    graph_sum(g, n, None)
}

/// Contribution of the stable graphs with `h¹(G) = l`.
pub fn chi_bar_by_betti(g: u32, n: u32, l: u32) -> Result<Rational> {
    graph_sum(g, n, Some(l))
}

/// Orbifold Euler characteristic of the compact-type locus (tree graphs).
pub fn chi_compact_type(g: u32, n: u32) -> Result<Rational> {
    graph_sum(g, n, Some(0))
}

/// Dense polynomial in `x` and `w`, truncated in each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
struct XwPoly {
    xcap: usize,
    wcap: usize,
    c: Vec<Rational>,
}

impl XwPoly {
    fn new(xcap: usize, wcap: usize) -> Self {
        XwPoly { xcap, wcap, c: vec![Rational::zero(); (xcap + 1) * (wcap + 1)] }
    }
    fn at(&mut self, i: usize, t: usize) -> &mut Rational {
        &mut self.c[i * (self.wcap + 1) + t]
    }
    fn get(&self, i: usize, t: usize) -> &Rational {
        &self.c[i * (self.wcap + 1) + t]
    }
}

impl GradedCoeff for XwPoly {
    fn zero_like(&self) -> Self {
        XwPoly::new(self.xcap, self.wcap)
    }
    fn one_like(&self) -> Self {
        let mut p = self.zero_like();
        *p.at(0, 0) = Rational::one();
        p
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = self.zero_like();
        for i1 in 0..=self.xcap {
            for t1 in 0..=self.wcap {
                let a = self.get(i1, t1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(self.xcap - i1) {
                    for t2 in 0..=(self.wcap - t1) {
                        let b = o.get(i2, t2);
                        if !b.is_zero() {
                            *out.at(i1 + i2, t1 + t2) += a * b;
                        }
                    }
                }
            }
        }
        out
    }
    fn scale(&self, r: &Rational) -> Self {
        XwPoly { xcap: self.xcap, wcap: self.wcap, c: self.c.iter().map(|v| v * r).collect() }
    }
}

fn wick_memo() -> &'static Mutex<Option<(u32, usize, Vec<TruncPoly>)>> {
    static M: OnceLock<Mutex<Option<(u32, usize, Vec<TruncPoly>)>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(None))
}

/// Weight-graded components of `F(x, ħ)` through weight `wmax`.
///
/// The monomial `x^n ħ^{g−1}` has weight `2g − 2 + n`, so `ħ` can be dropped
/// and recovered from the weight. `exp F = ⟨exp Ω(x + w, ħ)⟩_w` with
/// `⟨w^t⟩ = (t−1)!! ħ^{t/2}`: the integrand is expanded, the Gaussian
/// expectation taken, and the logarithm extracted, all graded by weight.
/// Component `L` is returned as a polynomial in `x` of degree `≤ xcap`.
pub fn wick_components(wmax: u32, xcap: usize) -> Vec<TruncPoly> {
    {
        let memo = wick_memo().lock().unwrap();
        if let Some((w, x, v)) = memo.as_ref() {
            if *w >= wmax && *x >= xcap {
                return v
                    .iter()
                    .take(wmax as usize + 1)
                    .map(|p| TruncPoly { c: p.c[..=xcap].to_vec() })
                    .collect();
            }
        }
    }
    let wcap = 3 * wmax as usize;
    let mut t = vec![XwPoly::new(xcap, wcap); wmax as usize + 1];
    // Ω(x + w): χ(M_g^s) (x + w)^s / s! with weight 2g − 2 + s.
    for (l, comp) in t.iter_mut().enumerate().skip(1) {
        for g in 0..=(l as u32 + 2) / 2 {
            let s = l as i64 + 2 - 2 * g as i64;
            if s < 0 {
                continue;
            }
            let s = s as usize;
            let chi = chi_open_or_zero(g, s as u32);
            if chi.is_zero() {
                continue;
            }
            for m in 0..=s.min(xcap) {
                let tt = s - m;
                if tt > wcap {
                    continue;
                }
                *comp.at(m, tt) += &chi * inv_factorial(m) * inv_factorial(tt);
            }
        }
    }
    let p = graded_exp(&t);
    let z: Vec<TruncPoly> = p
        .iter()
        .map(|comp| {
            let mut out = TruncPoly::zero(xcap);
            for i in 0..=xcap {
                for tt in (0..=wcap).step_by(2) {
                    let v = comp.get(i, tt);
                    if !v.is_zero() {
                        out.c[i] += v * big(odd_double_factorial(tt).unwrap());
                    }
                }
            }
            out
        })
        .collect();
    let f = graded_log(&z);
    *wick_memo().lock().unwrap() = Some((wmax, xcap, f.clone()));
    f
}

/// `χ(M̄_g^n)` from the formal Gaussian integral over the one-vertex
/// generating function.
pub fn chi_bar_wick(g: u32, n: u32, win: &Windows) -> Result<Rational> {
    check_stable(g, n)?;
    if n as usize > win.xmax || g > win.hmax as u32 + 1 {
        return Err(Error::WindowExceeded(format!(
            "(g, n) = ({g}, {n}) needs xmax ≥ {n} and hmax ≥ {}",
            g as i64 - 1
        )));
    }
    let w = 2 * g + n - 2;
    let f = wick_components(w, w as usize + 2);
    Ok(&f[w as usize].c[n as usize] * factorial_q(n as usize))
}

/// Coefficient lists of `Ω_g(y) = Σ_s χ(M_g^s) y^s/s!` through degree `deg`.
pub fn omega_poly(g: u32, deg: usize) -> Vec<Rational> {
    (0..=deg).map(|s| chi_open_or_zero(g, s as u32) * inv_factorial(s)).collect()
}

fn poly_deriv(p: &[Rational], k: usize) -> Vec<Rational> {
    let mut q = p.to_vec();
    for _ in 0..k {
        q = q.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
    }
    q
}

/// The critical point `ȳ = Σ_g y_g(x) ħ^g` through `x^xmax`, `ħ^hmax`.
pub fn critical_point(xmax: usize, hmax: usize) -> Result<BiSeries> {
    solve_fixed_point(&critical_point_rhs(xmax, hmax), xmax, hmax)
}

/// The derivatives `Ω_g'` entering [`critical_point`], long enough for its
/// window.
pub fn critical_point_rhs(xmax: usize, hmax: usize) -> Vec<Vec<Rational>> {
    let deg = xmax + hmax + 4;
    (0..=hmax as u32 + 1).map(|g| poly_deriv(&omega_poly(g, deg), 1)).collect()
}

/// The three parts of the semiclassical expansion of `F(x, ħ)` and their sum.
#[derive(Clone, Debug)]
pub struct SemiclassicalF {
    /// `−(ȳ − x)²/(2ħ) + Σ_g Ω_g(ȳ) ħ^{g−1}`: tree graphs.
    pub tree: BiSeries,
    /// `−½ log(1 − G)`: graphs with one loop.
    pub one_loop: BiSeries,
    /// `log(1 + A)`: graphs with two or more loops.
    pub higher: BiSeries,
    pub total: BiSeries,
    /// The critical point `ȳ(x, ħ)`.
    pub ybar: BiSeries,
}

/// Multisets `k_1 ≤ … ≤ k_r` with `k_i ≥ 3`, even sum and `Σ(k_i/2 − 1) ≤ hmax`.
fn k_multisets(hmax: usize) -> Vec<Vec<usize>> {
    fn rec(min: usize, budget2: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() && cur.iter().sum::<usize>() % 2 == 0 {
            out.push(cur.clone());
        }
        // Twice the ħ-cost of adding k is k − 2.
        let mut k = min;
        while k >= 3 && k - 2 <= budget2 {
            cur.push(k);
            rec(k, budget2 - (k - 2), cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(3, 2 * hmax, &mut Vec::new(), &mut out);
    out
}

/// Semiclassical expansion of `F` about the critical point `ȳ`.
///
/// Window: `x^i` for `i ≤ xmax`, `ħ^j` for `−1 ≤ j ≤ hmax`.
pub fn semiclassical_f(xmax: usize, hmax: usize) -> Result<SemiclassicalF> {
    let hm = hmax as i32;
    let kmax = 2 * (2 * hmax);
    let deg = xmax + hmax + kmax + 4;
    let omega: Vec<Vec<Rational>> = (0..=hmax as u32 + 1).map(|g| omega_poly(g, deg)).collect();
    let omega_p: Vec<Vec<Rational>> = omega.iter().map(|p| poly_deriv(p, 1)).collect();

    // ȳ one ħ-order further for the tree part, which is divided by ħ.
    let ybar1 = solve_fixed_point(&omega_p, xmax, hmax + 1)?;
    let w1 = ybar1.window();
    let x1 = BiSeries::x(w1);
    let d = &ybar1 - &x1;
    let mut tree0 = (&d * &d).scale(&rat(-1, 2));
    for (g, p) in omega.iter().enumerate() {
        if g as i32 > w1.hmax {
            break;
        }
        tree0 = &tree0 + &ybar1.compose_into(p).shift_hbar(g as i32);
    }
    let outw = BiWindow::new(xmax, -1, hm);
    let mut tree = BiSeries::zero(outw);
    for i in 0..=xmax {
        for j in -1..=hm {
            tree.set(i, j, tree0.coeff(i, j + 1));
        }
    }

    let ybar = ybar1.truncate(BiWindow::new(xmax, 0, hm));
    let win = ybar.window();
    let sum_g = |k: usize| -> BiSeries {
        let mut acc = BiSeries::zero(win);
        for (g, p) in omega.iter().enumerate() {
            if g as i32 > hm {
                break;
            }
            acc = &acc + &ybar.compose_into(&poly_deriv(p, k)).shift_hbar(g as i32);
        }
        acc
    };
    let gser = sum_g(2);
    let one_minus_g = &BiSeries::one(win) - &gser;
    let one_loop0 = one_minus_g.log()?.scale(&rat(-1, 2));

    // S̃_k = ħ·S_k = Σ_g Ω_g^{(k)}(ȳ) ħ^g.
    let mut st: HashMap<usize, BiSeries> = HashMap::new();
    let inv = one_minus_g.inverse()?;
    let mut inv_pows: Vec<BiSeries> = vec![BiSeries::one(win)];
    let mut a = BiSeries::zero(win);
    for ks in k_multisets(hmax) {
        let r = ks.len();
        let kk: usize = ks.iter().sum();
        let hpow = kk / 2 - r;
        debug_assert!(hpow <= hmax);
        let mut term = BiSeries::one(win);
        let mut coef = big(odd_double_factorial(kk).unwrap());
        for &k in &ks {
            let s = st.entry(k).or_insert_with(|| sum_g(k));
            term = &term * s;
            coef *= inv_factorial(k);
        }
        // 1/r! over orderings collapses to 1/Π mult! over multisets.
        let mut i = 0;
        while i < r {
            let mut j = i;
            while j < r && ks[j] == ks[i] {
                j += 1;
            }
            coef *= inv_factorial(j - i);
            i = j;
        }
        while inv_pows.len() <= kk / 2 {
            let next = inv_pows.last().unwrap() * &inv;
            inv_pows.push(next);
        }
        term = &term * &inv_pows[kk / 2];
        a = &a + &term.scale(&coef).shift_hbar(hpow as i32);
    }
    let higher0 = (&BiSeries::one(win) + &a).log()?;

    let one_loop = lift(&one_loop0, outw);
    let higher = lift(&higher0, outw);
    let total = &(&tree + &one_loop) + &higher;
    Ok(SemiclassicalF { tree, one_loop, higher, total, ybar })
}

fn lift(s: &BiSeries, win: BiWindow) -> BiSeries {
    let mut out = BiSeries::zero(win);
    let sw = s.window();
    for i in 0..=win.xmax.min(sw.xmax) {
        for j in win.hmin..=win.hmax {
            out.set(i, j, s.coeff(i, j));
        }
    }
    out
}

/// Closed forms of `F_0`, `F_1` and `F_2` as power series in `x`.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    pub f0: Vec<Rational>,
    pub f1: Vec<Rational>,
    /// The genus-2 expression as printed.
    pub f2: Vec<Rational>,
    /// The genus-2 term re-derived from the semiclassical expansion:
    /// `Ω_2 + (Ω_1'² + Ω_1'')/(2D) + Ω_0'''Ω_1'/(2D²) + Ω_0''''/(8D²)
    /// + 5Ω_0'''²/(24D³)` at `y_0`, with `D = 1 − Ω_0''(y_0)`.
    pub f2_derived: Vec<Rational>,
}

/// Evaluates the genus 0, 1 and 2 closed forms in `y_0`, `y_1`.
///
/// `F_0 = Ω_0(y_0) − ½ Ω_0'(y_0)²`,
/// `F_1 = Ω_1(y_0) − ½ log(1 − Ω_0''(y_0))`, and `F_2` is the rational
/// expression in `y_0, y_1, y_0'` and `1 − Ω_0''(y_0)`.
pub fn closed_form_f012(xmax: usize) -> Result<ClosedForms> {
    let deg = xmax + 8;
    let omega: Vec<Vec<Rational>> = (0..=3).map(|g| omega_poly(g, deg)).collect();
    let omega_p: Vec<Vec<Rational>> = omega.iter().map(|p| poly_deriv(p, 1)).collect();
    let yb = solve_fixed_point(&omega_p, xmax + 1, 1)?;
    let w = BiWindow::new(xmax + 1, 0, 0);
    let y0 = BiSeries::from_x_poly(w, 0, &yb.hbar_row(0));
    let y1 = BiSeries::from_x_poly(w, 0, &yb.hbar_row(1));
    let y0p = y0.d_dx();
    let wx = y0p.window();
    let y0 = y0.truncate(wx);
    let y1 = y1.truncate(wx);
    let one = BiSeries::one(wx);
    let c = |p: &[Rational]| y0.compose_into(p);

    let o0p = c(&omega_p[0]);
    let f0 = &c(&omega[0]) - &(&o0p * &o0p).scale(&rat(1, 2));

    let d2 = &one - &c(&poly_deriv(&omega[0], 2));
    let f1 = &c(&omega[1]) - &d2.log()?.scale(&rat(1, 2));

    let inv_d = d2.inverse()?;
    let inv_1y = (&one + &y0).inverse()?;
    let inv_1y2 = &inv_1y * &inv_1y;
    let y1sq = &y1 * &y1;
    let mut f2 = &c(&omega[2]) - &(&y1sq * &y0p);
    f2 = &f2 - &y1sq.scale(&rat(1, 2));
    f2 = &f2 + &(&c(&poly_deriv(&omega[1], 2)) * &inv_d).scale(&rat(1, 2));
    f2 = &f2 - &(&(&inv_d * &inv_d) * &inv_1y2).scale(&rat(1, 8));
    f2 = &f2 + &(&inv_1y2 * &inv_d).scale(&rat(1, 12));
    f2 = &f2 + &(&(&(&inv_d * &inv_d) * &inv_d) * &inv_1y2).scale(&rat(1, 8));

    let o1p = c(&omega_p[1]);
    let o1pp = c(&poly_deriv(&omega[1], 2));
    let o03 = c(&poly_deriv(&omega[0], 3));
    let o04 = c(&poly_deriv(&omega[0], 4));
    let inv_d2 = &inv_d * &inv_d;
    let inv_d3 = &inv_d2 * &inv_d;
    let mut f2d = c(&omega[2]);
    f2d = &f2d + &(&(&(&o1p * &o1p) + &o1pp) * &inv_d).scale(&rat(1, 2));
    f2d = &f2d + &(&(&o03 * &o1p) * &inv_d2).scale(&rat(1, 2));
    f2d = &f2d + &(&o04 * &inv_d2).scale(&rat(1, 8));
    f2d = &f2d + &(&(&o03 * &o03) * &inv_d3).scale(&rat(5, 24));

    let take = |s: &BiSeries| s.hbar_row(0).into_iter().take(xmax + 1).collect::<Vec<_>>();
    Ok(ClosedForms { f0: take(&f0), f1: take(&f1), f2: take(&f2), f2_derived: take(&f2d) })
}

/// `Σ_n χ^c(g, n+1) x^n / n!` built from tree graphs (the unstable terms are
/// absent), to be compared with `y_g` (and with `y_0 − x` for `g = 0`).
pub fn xi_series(g: u32, xmax: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); xmax + 1];
    for (n, slot) in out.iter_mut().enumerate() {
        if 2 * g + n as u32 + 1 > 2 {
            *slot = chi_compact_type(g, n as u32 + 1)? * inv_factorial(n);
        }
    }
    Ok(out)
}

/// Exact integer check used by the ordinary routes.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one() || r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_values() {
        assert_eq!(chi_open(0, 3).unwrap(), int(1));
        assert_eq!(chi_open(1, 1).unwrap(), rat(-1, 12));
        assert_eq!(chi_open(2, 1).unwrap(), rat(1, 120));
        assert!(chi_open(0, 2).is_err());
    }

    #[test]
    fn string_equation() {
        // Independent recursion seeded at the base cases.
        for g in 0..=10u32 {
            for n in 0..=10u32 {
                if 2 * g + n > 2 {
                    let lhs = chi_open(g, n + 1).unwrap();
                    let rhs = int(2 - 2 * g as i64 - n as i64) * chi_open(g, n).unwrap();
                    assert_eq!(lhs, rhs, "({g},{n})");
                }
            }
        }
    }

    #[test]
    fn graphsum_anchors() {
        assert_eq!(chi_bar_graphsum(0, 3).unwrap(), int(1));
        assert_eq!(chi_bar_graphsum(1, 1).unwrap(), rat(5, 12));
        assert_eq!(chi_bar_graphsum(2, 0).unwrap(), rat(119, 1440));
        assert_eq!(chi_compact_type(1, 1).unwrap(), rat(-1, 12));
        assert_eq!(chi_bar_by_betti(1, 1, 1).unwrap(), rat(1, 2));
        let total: Rational = (0..=2).map(|l| chi_bar_by_betti(2, 0, l).unwrap()).sum();
        assert_eq!(total, rat(119, 1440));
    }

    #[test]
    fn wick_small() {
        let w = Windows::default();
        assert_eq!(chi_bar_wick(1, 1, &w).unwrap(), rat(5, 12));
        assert_eq!(chi_bar_wick(2, 0, &w).unwrap(), rat(119, 1440));
        assert_eq!(chi_bar_wick(0, 5, &w).unwrap(), chi_bar_graphsum(0, 5).unwrap());
        assert!(matches!(chi_bar_wick(0, 11, &w), Err(Error::WindowExceeded(_))));
    }

    #[test]
    fn fixed_point_y0() {
        let yb = critical_point(7, 1).unwrap();
        let expect =
            [int(0), int(1), rat(1, 2), rat(1, 3), rat(7, 24), rat(17, 60), rat(71, 240), rat(163, 504)];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(&yb.coeff(i, 0), e, "x^{i}");
        }
    }

    #[test]
    fn semiclassical_parts_split_by_loops() {
        let (xm, hm) = (5usize, 2usize);
        let f = semiclassical_f(xm, hm).unwrap();
        let win = Windows::default();
        for g in 0..=3u32 {
            for n in 0..=xm as u32 {
                if 2 * g + n < 3 {
                    continue;
                }
                let (i, j) = (n as usize, g as i32 - 1);
                let nf = factorial_q(i);
                let all = chi_bar_wick(g, n, &win).unwrap();
                let b0 = chi_compact_type(g, n).unwrap();
                let b1 = chi_bar_by_betti(g, n, 1).unwrap();
                assert_eq!(&nf * f.total.coeff(i, j), all, "({g},{n}) total");
                assert_eq!(&nf * f.tree.coeff(i, j), b0, "({g},{n}) tree");
                assert_eq!(&nf * f.one_loop.coeff(i, j), b1, "({g},{n}) one loop");
                assert_eq!(&nf * f.higher.coeff(i, j), &all - &b0 - &b1, "({g},{n}) higher");
            }
        }
    }

    #[test]
    fn closed_forms_against_series() {
        let f = semiclassical_f(6, 2).unwrap();
        let cf = closed_form_f012(6).unwrap();
        for i in 0..=6 {
            assert_eq!(cf.f0[i], f.total.coeff(i, -1), "F0 x^{i}");
            assert_eq!(cf.f1[i], f.total.coeff(i, 0), "F1 x^{i}");
            assert_eq!(cf.f2_derived[i], f.total.coeff(i, 1), "F2 x^{i}");
        }
        // The printed genus-2 expression already differs at x^0.
        assert_ne!(cf.f2[0], f.total.coeff(0, 1));
        assert_eq!(f.total.coeff(0, 1), rat(119, 1440));
    }

    #[test]
    fn rooted_trees_give_y_g() {
        let f = semiclassical_f(7, 2).unwrap();
        for g in 0..=2u32 {
            let xi = xi_series(g, 7).unwrap();
            let mut y = f.ybar.hbar_row(g as i32);
            if g == 0 {
                y[1] -= int(1);
            }
            assert_eq!(&xi[..], &y[..8], "genus {g}");
        }
    }
}
