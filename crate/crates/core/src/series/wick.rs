//! Formal Gaussian expectation in one variable.

use num_bigint::BigInt;

use super::bi::BiSeries;
use crate::arith::{big, odd_double_factorial};

/// `⟨w^t⟩` with variance 1: `(t−1)!!` for even `t`, `None` for odd `t`.
pub fn gaussian_moment(t: usize) -> Option<BigInt> {
    odd_double_factorial(t).ok()
}

/// Expectation of `Σ_t c_t·w^t` under a Gaussian of variance `ħ`.
///
/// Each `w^t` becomes `(t−1)!!·ħ^{t/2}`; odd powers vanish.
pub fn wick_single(terms: &[(usize, BiSeries)]) -> BiSeries {
    let win = terms.first().map(|t| t.1.window()).expect("at least one term");
    let mut acc = BiSeries::zero(win);
    for (t, c) in terms {
        if let Some(m) = gaussian_moment(*t) {
            acc = &acc + &c.shift_hbar((*t / 2) as i32).scale(&big(m));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::series::BiWindow;

    #[test]
    fn low_moments() {
        let win = BiWindow::new(2, 0, 4);
        let one = BiSeries::one(win);
        let m4 = wick_single(&[(4, one.clone())]);
        assert_eq!(m4.coeff(0, 2), int(3));
        assert!(wick_single(&[(3, one.clone())]).is_zero());
        assert_eq!(wick_single(&[(6, one)]).coeff(0, 3), int(15));
    }
}
