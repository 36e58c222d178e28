//! Exponential and logarithm of series graded by a positive weight.
//!
//! A series is given by its homogeneous components `s[0], s[1], …, s[L]`,
//! each living in some commutative coefficient ring. Both operations use the
//! Euler-operator recurrences, which only ever divide by the weight.

use crate::arith::{int, Rational};

/// Commutative ring used as the coefficient of one graded component.
pub trait GradedCoeff: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
}

/// `exp` of a series with vanishing weight-0 component.
///
/// Uses `L·P_L = Σ_{w=1}^{L} w·Q_w·P_{L−w}`.
pub fn graded_exp<C: GradedCoeff>(q: &[C]) -> Vec<C> {
    assert!(!q.is_empty());
    assert!(q[0].is_zero(), "graded_exp needs a zero weight-0 component");
    let mut p = vec![q[0].one_like()];
    for l in 1..q.len() {
        let mut acc = q[0].zero_like();
        for w in 1..=l {
            if q[w].is_zero() || p[l - w].is_zero() {
                continue;
            }
            acc.add_assign(&q[w].mul(&p[l - w]).scale(&int(w as i64)));
        }
        p.push(acc.scale(&Rational::new(1.into(), (l as i64).into())));
    }
    p
}

/// `log` of a series whose weight-0 component is the unit.
///
/// Uses `L·F_L = L·P_L − Σ_{w=1}^{L−1} w·F_w·P_{L−w}`.
pub fn graded_log<C: GradedCoeff>(p: &[C]) -> Vec<C> {
    assert!(!p.is_empty());
    let mut f = vec![p[0].zero_like()];
    for l in 1..p.len() {
        let mut acc = p[l].scale(&int(l as i64));
        for w in 1..l {
            if f[w].is_zero() || p[l - w].is_zero() {
                continue;
            }
            acc.add_assign(&f[w].mul(&p[l - w]).scale(&int(-(w as i64))));
        }
        f.push(acc.scale(&Rational::new(1.into(), (l as i64).into())));
    }
    f
}

/// Dense univariate polynomial truncated at a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    pub c: Vec<Rational>,
}

impl TruncPoly {
    pub fn zero(deg: usize) -> Self {
        TruncPoly { c: vec![int(0); deg + 1] }
    }
}

impl GradedCoeff for TruncPoly {
    fn zero_like(&self) -> Self {
        TruncPoly::zero(self.c.len() - 1)
    }
    fn one_like(&self) -> Self {
        let mut z = self.zero_like();
        z.c[0] = int(1);
        z
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(num_traits::Zero::is_zero)
    }
    fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let n = self.c.len().min(o.c.len());
        let mut out = TruncPoly::zero(n - 1);
        for (i, a) in self.c.iter().enumerate().take(n) {
            if num_traits::Zero::is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                out.c[i + j] += a * b;
            }
        }
        out
    }
    fn scale(&self, r: &Rational) -> Self {
        TruncPoly { c: self.c.iter().map(|v| v * r).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{inv_factorial, rat};

    #[test]
    fn exp_log_scalar_grading() {
        // exp(t) with t of weight 1 and scalar coefficients.
        let mut q = vec![TruncPoly::zero(0); 8];
        q[1].c[0] = int(1);
        let p = graded_exp(&q);
        for (l, c) in p.iter().enumerate() {
            assert_eq!(c.c[0], inv_factorial(l));
        }
        assert_eq!(graded_log(&p), q);
    }

    #[test]
    fn roundtrip_with_poly_coefficients() {
        let mut q = vec![TruncPoly::zero(4); 6];
        q[1].c = vec![rat(1, 2), int(0), rat(-3, 7), int(1), int(0)];
        q[3].c = vec![int(0), int(5), int(0), int(0), rat(2, 9)];
        q[5].c = vec![int(-1), int(0), int(0), rat(1, 11), int(0)];
        assert_eq!(graded_log(&graded_exp(&q)), q);
    }
}
