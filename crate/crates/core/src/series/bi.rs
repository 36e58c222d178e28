//! Dense truncated series in `x` and `ħ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};

/// Truncation box: `0 ≤ i ≤ xmax` for powers of `x`, `hmin ≤ j ≤ hmax`
/// for powers of `ħ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiWindow {
    pub xmax: usize,
    pub hmin: i32,
    pub hmax: i32,
}

impl BiWindow {
    pub fn new(xmax: usize, hmin: i32, hmax: i32) -> Self {
        assert!(hmin <= 0 && hmax >= 0, "ħ window must contain 0");
        BiWindow { xmax, hmin, hmax }
    }

    fn intersect(self, o: BiWindow) -> BiWindow {
        BiWindow { xmax: self.xmax.min(o.xmax), hmin: self.hmin.max(o.hmin), hmax: self.hmax.min(o.hmax) }
    }

    fn width(&self) -> usize {
        (self.hmax - self.hmin + 1) as usize
    }
}

/// Truncated series `Σ c(i,j) x^i ħ^j` stored densely.
///
/// Terms below `hmin` are treated as absent; terms above `hmax` or `xmax`
/// are unknown. Binary operations return the window on which their result
/// is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    win: BiWindow,
    c: Vec<Rational>,
}

impl BiSeries {
    pub fn zero(win: BiWindow) -> Self {
        let n = (win.xmax + 1) * win.width();
        BiSeries { win, c: vec![Rational::zero(); n] }
    }

    pub fn one(win: BiWindow) -> Self {
        Self::constant(win, int(1))
    }

    pub fn constant(win: BiWindow, v: Rational) -> Self {
        let mut s = Self::zero(win);
        s.set(0, 0, v);
        s
    }

    /// The series `x`.
    pub fn x(win: BiWindow) -> Self {
        let mut s = Self::zero(win);
        if win.xmax >= 1 {
            s.set(1, 0, int(1));
        }
        s
    }

    /// Builds `Σ_i p[i] x^i ħ^j` from a univariate coefficient list.
    pub fn from_x_poly(win: BiWindow, j: i32, p: &[Rational]) -> Self {
        let mut s = Self::zero(win);
        for (i, v) in p.iter().enumerate().take(win.xmax + 1) {
            s.set(i, j, v.clone());
        }
        s
    }

    pub fn window(&self) -> BiWindow {
        self.win
    }

    fn idx(&self, i: usize, j: i32) -> Option<usize> {
        if i > self.win.xmax || j < self.win.hmin || j > self.win.hmax {
            None
        } else {
            Some(i * self.win.width() + (j - self.win.hmin) as usize)
        }
    }

    /// Coefficient of `x^i ħ^j`; zero outside the window.
    pub fn coeff(&self, i: usize, j: i32) -> Rational {
        self.idx(i, j).map(|k| self.c[k].clone()).unwrap_or_else(Rational::zero)
    }

    fn get(&self, i: usize, j: i32) -> &Rational {
        let k = self.idx(i, j).expect("index inside window");
        &self.c[k]
    }

    /// Sets a coefficient; silently ignored outside the window.
    pub fn set(&mut self, i: usize, j: i32, v: Rational) {
        if let Some(k) = self.idx(i, j) {
            self.c[k] = v;
        }
    }

    fn add_at(&mut self, i: usize, j: i32, v: &Rational) {
        if let Some(k) = self.idx(i, j) {
            self.c[k] += v;
        }
    }

    /// Coefficient of `ħ^j` as a list indexed by the power of `x`.
    pub fn hbar_row(&self, j: i32) -> Vec<Rational> {
        (0..=self.win.xmax).map(|i| self.coeff(i, j)).collect()
    }

    /// Restricts to a smaller window.
    pub fn truncate(&self, win: BiWindow) -> Self {
        let w = self.win.intersect(win);
        let mut s = Self::zero(w);
        for i in 0..=w.xmax {
            for j in w.hmin..=w.hmax {
                s.set(i, j, self.get(i, j).clone());
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        BiSeries { win: self.win, c: self.c.iter().map(|v| v * k).collect() }
    }

    /// Multiplies by `ħ^s`, keeping the window.
    pub fn shift_hbar(&self, s: i32) -> Self {
        let mut out = Self::zero(self.win);
        for i in 0..=self.win.xmax {
            for j in self.win.hmin..=self.win.hmax {
                out.set(i, j + s, self.get(i, j).clone());
            }
        }
        // Dividing by ħ leaves the top rows unknown.
        if s < 0 {
            out.win.hmax = (self.win.hmax + s).max(0);
            out = out.truncate(out.win);
        }
        out
    }

    fn binary(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let w = self.win.intersect(o.win);
        let mut s = Self::zero(w);
        for i in 0..=w.xmax {
            for j in w.hmin..=w.hmax {
                s.set(i, j, f(self.get(i, j), o.get(i, j)));
            }
        }
        s
    }

    fn product(&self, o: &Self) -> Self {
        let a = self.win;
        let b = o.win;
        // The top rows of the product need ħ-terms beyond hmax when a floor
        // is negative, so the valid ceiling drops by the floor.
        let w = BiWindow {
            xmax: a.xmax.min(b.xmax),
            hmin: a.hmin.max(b.hmin),
            hmax: (a.hmax + b.hmin.min(0)).min(b.hmax + a.hmin.min(0)).max(0),
        };
        let mut s = Self::zero(w);
        for i1 in 0..=w.xmax {
            for j1 in a.hmin..=a.hmax {
                let u = self.get(i1, j1);
                if u.is_zero() {
                    continue;
                }
                for i2 in 0..=(w.xmax - i1) {
                    for j2 in b.hmin..=b.hmax {
                        let j = j1 + j2;
                        if j < w.hmin || j > w.hmax {
                            continue;
                        }
                        let v = o.get(i2, j2);
                        if !v.is_zero() {
                            s.add_at(i1 + i2, j, &(u * v));
                        }
                    }
                }
            }
        }
        s
    }

    /// `self^e` for `e ≥ 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.win);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_nonneg(&self, op: &str) -> Result<()> {
        for i in 0..=self.win.xmax {
            for j in self.win.hmin..0 {
                if !self.get(i, j).is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "{op} needs a series without negative ħ powers"
                    )));
                }
            }
        }
        Ok(())
    }

    fn nonneg_window(&self) -> BiWindow {
        BiWindow { hmin: 0, ..self.win }
    }

    /// `exp(s)` for a series with zero constant term and no negative ħ powers.
    pub fn exp(&self) -> Result<Self> {
        self.check_nonneg("exp")?;
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::InvalidArgument("exp needs a zero constant term".into()));
        }
        let w = self.nonneg_window();
        // With D the total-degree Euler operator, D(E) = D(S)·E.
        let mut e = Self::zero(w);
        e.set(0, 0, int(1));
        for n in 1..=(w.xmax + w.hmax as usize) {
            for i in 0..=w.xmax.min(n) {
                let j = (n - i) as i32;
                if j > w.hmax {
                    continue;
                }
                let mut acc = Rational::zero();
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        let d = i1 + j1 as usize;
                        if d == 0 {
                            continue;
                        }
                        let sv = self.get(i1, j1);
                        if sv.is_zero() {
                            continue;
                        }
                        acc += sv * int(d as i64) * e.get(i - i1, j - j1);
                    }
                }
                e.set(i, j, acc / int(n as i64));
            }
        }
        Ok(e)
    }

    /// `log(s)` for a series with constant term 1 and no negative ħ powers.
    pub fn log(&self) -> Result<Self> {
        self.check_nonneg("log")?;
        if !self.coeff(0, 0).is_one() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        let w = self.nonneg_window();
        // D(S) = S·D(L), solved for D(L) degree by degree.
        let mut dl = Self::zero(w);
        let mut l = Self::zero(w);
        for n in 1..=(w.xmax + w.hmax as usize) {
            for i in 0..=w.xmax.min(n) {
                let j = (n - i) as i32;
                if j > w.hmax {
                    continue;
                }
                let mut acc = self.get(i, j) * int(n as i64);
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 == i && j1 == j {
                            continue;
                        }
                        if i1 + j1 as usize == 0 {
                            continue;
                        }
                        let v = dl.get(i1, j1);
                        if !v.is_zero() {
                            acc -= self.get(i - i1, j - j1) * v;
                        }
                    }
                }
                l.set(i, j, &acc / int(n as i64));
                dl.set(i, j, acc);
            }
        }
        Ok(l)
    }

    /// `d/dx`; the top x-row becomes unknown and is dropped.
    pub fn d_dx(&self) -> Self {
        let w = BiWindow { xmax: self.win.xmax.saturating_sub(1), ..self.win };
        let mut s = Self::zero(w);
        for i in 0..self.win.xmax {
            for j in w.hmin..=w.hmax {
                s.set(i, j, self.get(i + 1, j) * int(i as i64 + 1));
            }
        }
        s
    }

    /// Evaluates the polynomial `Σ p[k] y^k` at `y = self` by Horner's rule.
    ///
    /// `self` must have zero constant term and no negative ħ powers, so that
    /// truncating `p` at the total degree of the window is harmless.
    pub fn compose_into(&self, p: &[Rational]) -> Self {
        let mut acc = Self::zero(self.win);
        let top = self.win.xmax + self.win.hmax.max(0) as usize;
        for v in p.iter().take(top + 1).rev() {
            acc = &acc * self;
            acc.add_at(0, 0, v);
        }
        acc
    }

    /// Multiplicative inverse for a series with constant term nonzero and no
    /// negative ħ powers.
    pub fn inverse(&self) -> Result<Self> {
        self.check_nonneg("inverse")?;
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::NotInvertible("zero constant term".into()));
        }
        let w = self.nonneg_window();
        let inv0 = c0.recip();
        let mut r = Self::zero(w);
        for i in 0..=w.xmax {
            for j in 0..=w.hmax {
                let mut acc = if i == 0 && j == 0 { int(1) } else { Rational::zero() };
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 == 0 && j1 == 0 {
                            continue;
                        }
                        let sv = self.get(i1, j1);
                        if !sv.is_zero() {
                            acc -= sv * r.get(i - i1, j - j1);
                        }
                    }
                }
                r.set(i, j, acc * &inv0);
            }
        }
        Ok(r)
    }

    /// `self^a` for a rational exponent, constant term 1, no negative ħ powers.
    pub fn pow_rational(&self, a: &Rational) -> Result<Self> {
        let l = self.log()?;
        l.scale(a).exp()
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "BiSeries[")?;
        for i in 0..=self.win.xmax {
            for j in self.win.hmin..=self.win.hmax {
                let v = self.get(i, j);
                if !v.is_zero() {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({v})x^{i}h^{j}")?;
                }
            }
        }
        write!(f, "]")
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, o: &BiSeries) -> BiSeries {
        self.binary(o, |a, b| a + b)
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, o: &BiSeries) -> BiSeries {
        self.binary(o, |a, b| a - b)
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, o: &BiSeries) -> BiSeries {
        self.product(o)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        self.scale(&int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{inv_factorial, rat};

    fn w(x: usize, h: i32) -> BiWindow {
        BiWindow::new(x, 0, h)
    }

    #[test]
    fn difference_of_squares() {
        let win = w(6, 2);
        let one = BiSeries::one(win);
        let x = BiSeries::x(win);
        let p = &(&one + &x) * &(&one - &x);
        let mut expect = BiSeries::one(win);
        expect.set(2, 0, int(-1));
        assert_eq!(p, expect);
    }

    #[test]
    fn below_floor_is_dropped() {
        let win = BiWindow::new(4, -1, 3);
        let mut s = BiSeries::zero(win);
        s.set(1, -1, int(1));
        let sq = &s * &s;
        assert!(sq.is_zero());
        assert_eq!(sq.window().hmax, 2);
    }

    #[test]
    fn exp_of_x() {
        let e = BiSeries::x(w(10, 1)).exp().unwrap();
        for i in 0..=10 {
            assert_eq!(e.coeff(i, 0), inv_factorial(i));
        }
        assert!(BiSeries::zero(w(3, 3)).exp().unwrap() == BiSeries::one(w(3, 3)));
        assert!(BiSeries::one(w(3, 3)).log().unwrap().is_zero());
    }

    #[test]
    fn log_rejects_bad_constant() {
        let s = BiSeries::constant(w(3, 3), int(2));
        assert!(s.log().is_err());
    }

    #[test]
    fn inverse_and_power() {
        let win = w(6, 3);
        let mut s = BiSeries::one(win);
        s.set(1, 0, rat(1, 3));
        s.set(0, 1, rat(-2, 5));
        s.set(2, 1, rat(7, 2));
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, BiSeries::one(win));
        let half = s.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(&half * &half, s);
        assert_eq!(s.pow_rational(&int(3)).unwrap(), s.pow(3));
    }

    #[test]
    fn derivative_and_compose() {
        let win = w(6, 0);
        let x = BiSeries::x(win);
        let e = x.exp().unwrap();
        let d = e.d_dx();
        for i in 0..=5 {
            assert_eq!(d.coeff(i, 0), inv_factorial(i));
        }
        // exp(x) as a polynomial composed with x is itself.
        let p: Vec<Rational> = (0..=6).map(inv_factorial).collect();
        assert_eq!(x.compose_into(&p), e);
    }
}
