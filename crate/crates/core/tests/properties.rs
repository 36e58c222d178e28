//! Arithmetic and series properties, with independent reference
//! implementations where the engine's own code would be circular.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use mgn_euler::arith::{
    bernoulli, binomial, c_coeff, divisors, euler_phi, fmt_exact, fmt_sci4, gamma_coeff, int, moebius,
    odd_double_factorial, parse_exact, rat, t_coeff, Rational,
};
use mgn_euler::orbifold::{chi_open, critical_point, critical_point_rhs};
use mgn_euler::series::{residual, BiSeries, BiWindow, SlotMono, WeightedSeries};
use mgn_euler::Windows;

fn zeta(j: u64, m: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64)
}

#[test]
fn bernoulli_against_recurrence() {
    let mut b = vec![int(1)];
    for m in 1..=30usize {
        let s: Rational = (0..m).map(|j| Rational::from_integer(binomial(m + 1, j)) * &b[j]).sum();
        b.push(-s / int(m as i64 + 1));
    }
    for (m, want) in b.iter().enumerate() {
        assert_eq!(&bernoulli(m), want, "B_{m}");
    }
    assert_eq!(bernoulli(12), rat(-691, 2730));
    assert_eq!(chi_open(1, 1).unwrap(), rat(-1, 12));
}

#[test]
fn totient_and_moebius_brute_force() {
    for n in 1..=300u64 {
        let coprime = (1..=n).filter(|r| r.gcd(&n) == 1).count() as u64;
        assert_eq!(euler_phi(n), coprime, "φ({n})");
        let mut sq_free = true;
        let mut primes = 0;
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                primes += 1;
                m /= p;
                if m % p == 0 {
                    sq_free = false;
                }
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        let want = if !sq_free {
            0
        } else if primes % 2 == 0 {
            1
        } else {
            -1
        };
        assert_eq!(moebius(n), want, "μ({n})");
    }
}

#[test]
fn c_coefficients_are_root_of_unity_sums() {
    for k in 1..=60u64 {
        for delta in divisors(k) {
            for l in divisors(k) {
                let want = c_coeff(k, l, delta).unwrap().to_f64().unwrap();
                let mut first: Option<Complex64> = None;
                for j in (1..=delta).filter(|j| j.gcd(&delta) == 1) {
                    let z = zeta(j, delta);
                    let s: Complex64 = (0..k).filter(|r| r.gcd(&k) == l).map(|r| z.powu(r as u32)).sum();
                    assert!((s - want).norm() < 1e-6, "c({k},{l},{delta}) = {want}, sum {s}");
                    // Same value at every primitive root.
                    let f = *first.get_or_insert(s);
                    assert!((s - f).norm() < 1e-6);
                }
            }
        }
    }
}

#[test]
fn t_and_gamma_are_root_of_unity_sums() {
    for k in (2..=60u64).step_by(2) {
        for j in 0..k {
            let z = zeta(j, k);
            let s: Complex64 = (0..k).filter(|r| r.gcd(&k) % 2 == 0).map(|r| z.powu(r as u32)).sum();
            let order = k / j.gcd(&k);
            if order <= 2 {
                assert!((s - (k / 2) as f64).norm() < 1e-6);
            } else {
                assert!(s.norm() < 1e-6, "k = {k}, j = {j}: {s}");
            }
            assert!((s.re - t_coeff(k, order).unwrap().to_f64().unwrap()).abs() < 1e-6);
        }
    }
    for k in 1..=60u64 {
        for delta in divisors(k) {
            for c in 0..4u32 {
                // Σ over primitive δ-th roots of T(ζ)^c.
                let mut acc = 0.0;
                for j in (1..=delta).filter(|j| j.gcd(&delta) == 1) {
                    let z = zeta(j, delta);
                    let s: Complex64 = if k % 2 == 0 {
                        (0..k).filter(|r| r % 2 == 0).map(|r| z.powu(r as u32)).sum()
                    } else {
                        Complex64::zero()
                    };
                    acc += s.powu(c).re;
                }
                let want = gamma_coeff(k, delta, c).unwrap().to_f64().unwrap();
                assert!((acc - want).abs() < 1e-6 * want.abs().max(1.0), "γ({k},{delta},{c})");
            }
        }
    }
}

#[test]
fn double_factorials() {
    assert_eq!(odd_double_factorial(0).unwrap(), BigInt::from(1));
    assert_eq!(odd_double_factorial(4).unwrap(), BigInt::from(3));
    assert_eq!(odd_double_factorial(8).unwrap(), BigInt::from(105));
    assert!(odd_double_factorial(3).is_err());
}

#[test]
fn fixed_point_residual_vanishes_on_default_window() {
    let w = Windows::default();
    let yb = critical_point(w.xmax, w.hmax).unwrap();
    assert!(residual(&critical_point_rhs(w.xmax, w.hmax), &yb).is_zero());
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_strings_roundtrip(p in any::<i64>(), q in 1i64..i64::MAX) {
        let r = rat(p, q);
        prop_assert_eq!(parse_exact(&fmt_exact(&r)), Some(r));
    }

    #[test]
    fn scientific_rendering_has_four_decimals(v in 1i64..i64::MAX) {
        let s = fmt_sci4(&int(v));
        prop_assert_eq!(s.find('.'), Some(1));
        prop_assert_eq!(s.find('E'), Some(6));
    }

    #[test]
    fn bi_exp_log_roundtrip(cs in proptest::collection::vec(small_rational(), 12)) {
        // Zero constant term so that exp is defined.
        let win = BiWindow::new(3, 0, 2);
        let mut s = BiSeries::zero(win);
        let mut it = cs.into_iter();
        for i in 0..=3usize {
            for j in 0..=2i32 {
                let c = it.next().unwrap();
                if i + j as usize > 0 {
                    s.set(i, j, c);
                }
            }
        }
        let back = s.exp().unwrap().log().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn weighted_exp_log_roundtrip(cs in proptest::collection::vec(small_rational(), 5)) {
        let mut q = WeightedSeries::zero(0, 5, 3);
        q.add_term(1, SlotMono::y_pow(1), cs[0].clone());
        q.add_term(1, SlotMono { y: 0, slots: vec![(1, 1)] }, cs[1].clone());
        q.add_term(2, SlotMono { y: 0, slots: vec![(2, 2)] }, cs[2].clone());
        q.add_term(3, SlotMono { y: 2, slots: vec![(1, 1), (3, 1)] }, cs[3].clone());
        q.add_term(4, SlotMono::default(), cs[4].clone());
        let back = q.exp().unwrap().log().unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn multiplication_distributes(a in proptest::collection::vec(small_rational(), 4),
                                  b in proptest::collection::vec(small_rational(), 4),
                                  c in proptest::collection::vec(small_rational(), 4)) {
        let win = BiWindow::new(3, 0, 0);
        let mk = |v: &[Rational]| BiSeries::from_x_poly(win, 0, v);
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}
