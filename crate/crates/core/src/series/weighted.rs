//! Sparse series in `λ`, `y` and auxiliary Gaussian slots `x_1, x_2, …`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::graded::{graded_exp, graded_log, GradedCoeff};
use crate::arith::{big, odd_double_factorial, Rational};
use crate::error::{Error, Result};

/// Monomial `y^y · Π x_r^{e_r}` with slots kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SlotMono {
    pub y: u32,
    pub slots: Vec<(u32, u32)>,
}

impl SlotMono {
    pub fn y_pow(y: u32) -> Self {
        SlotMono { y, slots: Vec::new() }
    }

    fn times(&self, o: &SlotMono) -> SlotMono {
        let mut slots = Vec::with_capacity(self.slots.len() + o.slots.len());
        let (mut i, mut j) = (0, 0);
        while i < self.slots.len() && j < o.slots.len() {
            let (a, b) = (self.slots[i], o.slots[j]);
            if a.0 == b.0 {
                slots.push((a.0, a.1 + b.1));
                i += 1;
                j += 1;
            } else if a.0 < b.0 {
                slots.push(a);
                i += 1;
            } else {
                slots.push(b);
                j += 1;
            }
        }
        slots.extend_from_slice(&self.slots[i..]);
        slots.extend_from_slice(&o.slots[j..]);
        SlotMono { y: self.y + o.y, slots }
    }
}

/// Coefficient of one power of `λ`: a polynomial in `y` and the slots,
/// truncated at `y ≤ ymax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPoly {
    pub ymax: u32,
    pub terms: HashMap<SlotMono, Rational>,
}

impl SlotPoly {
    pub fn new(ymax: u32) -> Self {
        SlotPoly { ymax, terms: HashMap::new() }
    }

    pub fn add_term(&mut self, m: SlotMono, c: Rational) {
        if m.y > self.ymax || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn coeff(&self, m: &SlotMono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }
}

impl GradedCoeff for SlotPoly {
    fn zero_like(&self) -> Self {
        SlotPoly::new(self.ymax)
    }
    fn one_like(&self) -> Self {
        let mut p = SlotPoly::new(self.ymax);
        p.add_term(SlotMono::default(), Rational::one());
        p
    }
    fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }
    fn add_assign(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
        self.prune();
    }
    fn mul(&self, o: &Self) -> Self {
        let ymax = self.ymax.min(o.ymax);
        let mut out = SlotPoly::new(ymax);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1.y + m2.y > ymax {
                    continue;
                }
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out.prune();
        out
    }
    fn scale(&self, r: &Rational) -> Self {
        let mut out = SlotPoly::new(self.ymax);
        if r.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * r);
        }
        out
    }
}

/// Truncated series `Σ_L λ^L · P_L(y, x_1, …)` with `lmin ≤ L ≤ lmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSeries {
    pub lmin: i32,
    pub lmax: i32,
    pub ymax: u32,
    comps: BTreeMap<i32, SlotPoly>,
}

impl WeightedSeries {
    pub fn zero(lmin: i32, lmax: i32, ymax: u32) -> Self {
        WeightedSeries { lmin, lmax, ymax, comps: BTreeMap::new() }
    }

    pub fn one(lmax: i32, ymax: u32) -> Self {
        let mut s = Self::zero(0, lmax, ymax);
        s.add_term(0, SlotMono::default(), Rational::one());
        s
    }

    /// Adds `c·λ^l·m`; discarded outside the window.
    pub fn add_term(&mut self, l: i32, m: SlotMono, c: Rational) {
        if l < self.lmin || l > self.lmax || m.y > self.ymax {
            return;
        }
        let p = self.comps.entry(l).or_insert_with(|| SlotPoly::new(self.ymax));
        p.add_term(m, c);
        if p.terms.is_empty() {
            self.comps.remove(&l);
        }
    }

    /// Component of `λ^l`.
    pub fn component(&self, l: i32) -> SlotPoly {
        self.comps.get(&l).cloned().unwrap_or_else(|| SlotPoly::new(self.ymax))
    }

    pub fn coeff(&self, l: i32, m: &SlotMono) -> Rational {
        self.comps.get(&l).map(|p| p.coeff(m)).unwrap_or_else(Rational::zero)
    }

    /// Every nonzero term as `(l, monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &SlotMono, &Rational)> {
        self.comps.iter().flat_map(|(l, p)| p.terms.iter().map(move |(m, c)| (*l, m, c)))
    }

    pub fn term_count(&self) -> usize {
        self.comps.values().map(|p| p.terms.len()).sum()
    }

    /// Largest slot index present.
    pub fn max_slot(&self) -> u32 {
        self.comps
            .values()
            .flat_map(|p| p.terms.keys())
            .flat_map(|m| m.slots.iter().map(|s| s.0))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.lmin.max(o.lmin), self.lmax.min(o.lmax), self.ymax.min(o.ymax));
        for s in [self, o] {
            for (l, p) in &s.comps {
                for (m, c) in &p.terms {
                    out.add_term(*l, m.clone(), c.clone());
                }
            }
        }
        out.prune();
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.lmin, self.lmax, self.ymax);
        for (l, p) in &self.comps {
            out.comps.insert(*l, p.scale(r));
        }
        out.prune();
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let lmax = (self.lmax + o.lmin.min(0)).min(o.lmax + self.lmin.min(0));
        let mut out = Self::zero(self.lmin.max(o.lmin), lmax, self.ymax.min(o.ymax));
        for (l1, p1) in &self.comps {
            for (l2, p2) in &o.comps {
                let l = l1 + l2;
                if l < out.lmin || l > out.lmax {
                    continue;
                }
                let prod = p1.mul(p2);
                out.comps.entry(l).or_insert_with(|| SlotPoly::new(out.ymax)).add_assign(&prod);
            }
        }
        out.prune();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.lmax, self.ymax);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn prune(&mut self) {
        for p in self.comps.values_mut() {
            p.prune();
        }
        self.comps.retain(|_, p| !p.terms.is_empty());
    }

    fn dense(&self) -> Result<Vec<SlotPoly>> {
        if self.comps.keys().any(|&l| l < 0) {
            return Err(Error::InvalidArgument(
                "series has negative λ powers; exp/log need a nonnegative grading".into(),
            ));
        }
        Ok((0..=self.lmax).map(|l| self.component(l)).collect())
    }

    fn from_dense(v: Vec<SlotPoly>, lmax: i32, ymax: u32) -> Self {
        let mut out = Self::zero(0, lmax, ymax);
        for (l, p) in v.into_iter().enumerate() {
            if !p.terms.is_empty() {
                out.comps.insert(l as i32, p);
            }
        }
        out.prune();
        out
    }

    /// `exp(self)`; every term must carry a positive power of `λ`.
    pub fn exp(&self) -> Result<Self> {
        let d = self.dense()?;
        if !d[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs every term of positive λ weight".into()));
        }
        Ok(Self::from_dense(graded_exp(&d), self.lmax, self.ymax))
    }

    /// `log(self)`; the `λ^0` component must be exactly 1.
    pub fn log(&self) -> Result<Self> {
        let d = self.dense()?;
        if d[0] != d[0].one_like() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        Ok(Self::from_dense(graded_log(&d), self.lmax, self.ymax))
    }

    /// Gaussian expectation over every slot, with `⟨x_r x_r⟩ = r`.
    ///
    /// `Π_r x_r^{e_r}` becomes `Π_r (e_r−1)!!·r^{e_r/2}`, zero for odd `e_r`.
    pub fn wick_multi(&self) -> Self {
        let mut out = Self::zero(self.lmin, self.lmax, self.ymax);
        for (l, p) in &self.comps {
            for (m, c) in &p.terms {
                if let Some(w) = slot_moment(&m.slots) {
                    out.add_term(*l, SlotMono::y_pow(m.y), c * w);
                }
            }
        }
        out.prune();
        out
    }
}

/// `Π_r (e_r−1)!!·r^{e_r/2}`, or `None` when some exponent is odd.
pub fn slot_moment(slots: &[(u32, u32)]) -> Option<Rational> {
    let mut acc = Rational::one();
    for &(r, e) in slots {
        if e % 2 == 1 {
            return None;
        }
        let df = odd_double_factorial(e as usize).expect("even exponent");
        acc *= big(df * num_traits::pow(num_bigint::BigInt::from(r), (e / 2) as usize));
    }
    Some(acc)
}
