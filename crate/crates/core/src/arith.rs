//! Exact rational arithmetic and the number-theoretic coefficient functions.
//!
//! Every value is exact. Shared tables (factorials, Bernoulli numbers,
//! `c(k,l,δ)`) are memoized behind read-write locks and are safe to use
//! from many threads at once.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the engine.
pub type Rational = BigRational;

/// Builds `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lifts a big integer into a [`Rational`].
pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Converts an exact integer value to `i128`, failing on fractions or overflow.
pub fn to_i128(r: &Rational) -> Option<i128> {
    if r.is_integer() {
        r.to_integer().to_i128()
    } else {
        None
    }
}

/// Lossy conversion used only for human-facing scientific formatting.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static T: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    {
        let t = factorial_table().read().unwrap();
        if n < t.len() {
            return t[n].clone();
        }
    }
    let mut t = factorial_table().write().unwrap();
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[n].clone()
}

/// `n!` as a [`Rational`].
pub fn factorial_q(n: usize) -> Rational {
    big(factorial(n))
}

/// `1/n!` as a [`Rational`].
pub fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(t−1)!!` for even `t ≥ 0`: the number of perfect pairings of `t` items.
pub fn odd_double_factorial(t: usize) -> Result<BigInt> {
    if t % 2 == 1 {
        return Err(Error::InvalidArgument(format!("odd_double_factorial needs an even argument, got {t}")));
    }
    let mut acc = BigInt::one();
    let mut j = 1usize;
    while j < t {
        acc *= BigInt::from(j);
        j += 2;
    }
    Ok(acc)
}

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static T: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(Vec::new()))
}

// Akiyama–Tanigawa; yields B_1 = +1/2, which is flipped below.
fn bernoulli_compute(upto: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(upto + 1);
    for m in 0..=upto {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * int(j as i64);
        }
        out.push(a[0].clone());
    }
    if upto >= 1 {
        out[1] = rat(-1, 2);
    }
    out
}

/// Bernoulli number `B_m` with `B_1 = −1/2` and `B_2 = 1/6`.
pub fn bernoulli(m: usize) -> Rational {
    {
        let t = bernoulli_table().read().unwrap();
        if m < t.len() {
            return t[m].clone();
        }
    }
    let mut t = bernoulli_table().write().unwrap();
    if m >= t.len() {
        let fresh = bernoulli_compute(m.max(32));
        // Keep any entries already present so that concurrent writers agree.
        let keep = t.len();
        t.extend(fresh.into_iter().skip(keep));
    }
    t[m].clone()
}

/// Overwrites one memoized Bernoulli value.
///
/// Used by the fault-injection path of `verify`: a corrupted memo must be
/// caught by the Bernoulli invariant.
#[doc(hidden)]
pub fn corrupt_bernoulli_memo(m: usize, value: Rational) {
    let _ = bernoulli(m);
    bernoulli_table().write().unwrap()[m] = value;
}

/// Restores the Bernoulli memo after [`corrupt_bernoulli_memo`].
#[doc(hidden)]
pub fn reset_bernoulli_memo() {
    bernoulli_table().write().unwrap().clear();
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius needs n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn c_table() -> &'static RwLock<HashMap<(u64, u64, u64), i64>> {
    static T: OnceLock<RwLock<HashMap<(u64, u64, u64), i64>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer form of [`c_coeff`]; the value is always an integer.
pub fn c_int(k: u64, l: u64, delta: u64) -> Result<i64> {
    if k == 0 || l == 0 || delta == 0 || !k.is_multiple_of(l) || !k.is_multiple_of(delta) {
        return Err(Error::InvalidArgument(format!("c({k},{l},{delta}) needs l | k and delta | k")));
    }
    if let Some(v) = c_table().read().unwrap().get(&(k, l, delta)) {
        return Ok(*v);
    }
    let q = delta / delta.gcd(&l);
    let v = (euler_phi(k / l) / euler_phi(q)) as i64 * moebius(q);
    c_table().write().unwrap().insert((k, l, delta), v);
    Ok(v)
}

/// `c(k,l,δ) = φ(k/l)/φ(δ/(δ,l)) · μ(δ/(δ,l))`: the sum of `ζ^r` over
/// `0 ≤ r < k` with `(r,k) = l`, at a primitive δ-th root of unity ζ.
pub fn c_coeff(k: u64, l: u64, delta: u64) -> Result<Rational> {
    c_int(k, l, delta).map(int)
}

/// `T(k,δ)`: `k/2` when `k` is even and `δ ∈ {1,2}`, otherwise `0`.
pub fn t_coeff(k: u64, delta: u64) -> Result<Rational> {
    check_div(k, delta)?;
    Ok(int(t_int(k, delta)))
}

pub(crate) fn t_int(k: u64, delta: u64) -> i64 {
    if k.is_multiple_of(2) && (delta == 1 || delta == 2) {
        (k / 2) as i64
    } else {
        0
    }
}

/// `γ(k,δ,c)`: `φ(δ)` for `c = 0`, `(k/2)^c` for even `k` and `δ ∈ {1,2}`,
/// and `0` otherwise.
pub fn gamma_coeff(k: u64, delta: u64, c: u32) -> Result<Rational> {
    check_div(k, delta)?;
    Ok(big(gamma_int(k, delta, c)))
}

pub(crate) fn gamma_int(k: u64, delta: u64, c: u32) -> BigInt {
    if c == 0 {
        BigInt::from(euler_phi(delta))
    } else if k % 2 == 1 || delta > 2 {
        BigInt::zero()
    } else {
        num_traits::pow(BigInt::from(k / 2), c as usize)
    }
}

fn check_div(k: u64, delta: u64) -> Result<()> {
    if k == 0 || delta == 0 || !k.is_multiple_of(delta) {
        return Err(Error::InvalidArgument(format!("delta = {delta} does not divide k = {k}")));
    }
    Ok(())
}

/// Sign `(−1)^n` as a rational.
pub fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Integer power of a rational with a possibly negative exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Exact decimal string: an integer, or `p/q` in lowest terms.
pub fn fmt_exact(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`fmt_exact`].
pub fn parse_exact(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(big),
    }
}

/// Scientific rendering with four decimals in the style `1.6663E+12`.
///
/// Rounds half away from zero on the exact value, so it never depends on
/// binary floating point.
pub fn fmt_sci4(r: &Rational) -> String {
    if r.is_zero() {
        return "0.0000E+00".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = int(10);
    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10;
    loop {
        if pow_i(&ten, e) > a {
            e -= 1;
        } else if pow_i(&ten, e + 1) <= a {
            e += 1;
        } else {
            break;
        }
    }
    let scaled = &a * pow_i(&ten, 4 - e);
    let mut digits = (scaled + rat(1, 2)).floor().to_integer();
    if digits >= BigInt::from(100_000) {
        digits /= 10;
        e += 1;
    }
    let d = digits.to_string();
    format!(
        "{}{}.{}E{}{:02}",
        if neg { "-" } else { "" },
        &d[..1],
        &d[1..],
        if e < 0 { '-' } else { '+' },
        e.abs()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern_oracle(n: usize) -> Vec<Rational> {
        // Σ_{j=0}^{m} C(m+1,j) B_j = 0 solved for B_m.
        let mut b = vec![int(1)];
        for m in 1..=n {
            let mut s = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                s += big(binomial(m + 1, j)) * bj;
            }
            b.push(-s / big(binomial(m + 1, m)));
        }
        b
    }

    #[test]
    fn bernoulli_matches_recurrence() {
        let o = bern_oracle(40);
        for (m, v) in o.iter().enumerate() {
            assert_eq!(&bernoulli(m), v, "B_{m}");
        }
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(2), rat(1, 6));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for m in (3..60).step_by(2) {
            assert!(bernoulli(m).is_zero());
        }
    }

    #[test]
    fn totient_and_moebius() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(moebius(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        for n in 1..=2000u64 {
            let brute = (1..=n).filter(|r| r.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute);
        }
    }

    #[test]
    fn divisor_sums() {
        for n in 1..=10_000u64 {
            let ds = divisors(n);
            assert_eq!(ds.iter().map(|&d| euler_phi(d)).sum::<u64>(), n);
            let m: i64 = ds.iter().map(|&d| moebius(d)).sum();
            assert_eq!(m, i64::from(n == 1));
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(c_int(6, 2, 1).unwrap(), 2);
        assert_eq!(c_int(4, 1, 4).unwrap(), 0);
        for d in divisors(12) {
            assert_eq!(c_int(12, 12, d).unwrap(), 1);
        }
        assert!(c_int(6, 4, 1).is_err());
        assert!(c_int(6, 1, 4).is_err());
        assert_eq!(t_coeff(4, 2).unwrap(), int(2));
        assert_eq!(t_coeff(4, 4).unwrap(), int(0));
        assert_eq!(t_coeff(3, 1).unwrap(), int(0));
        assert_eq!(gamma_coeff(5, 5, 0).unwrap(), int(4));
        assert_eq!(gamma_coeff(3, 1, 2).unwrap(), int(0));
        assert_eq!(gamma_coeff(4, 1, 2).unwrap(), int(4));
    }

    #[test]
    fn double_factorial() {
        assert_eq!(odd_double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(odd_double_factorial(4).unwrap(), BigInt::from(3));
        assert_eq!(odd_double_factorial(8).unwrap(), BigInt::from(105));
        assert!(odd_double_factorial(3).is_err());
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(fmt_sci4(&big(BigInt::from(1666295400720i64))), "1.6663E+12");
        assert_eq!(fmt_sci4(&rat(199999, 2)), "1.0000E+05");
        assert_eq!(fmt_sci4(&int(-12345)), "-1.2345E+04");
        assert_eq!(fmt_sci4(&rat(1, 8)), "1.2500E-01");
    }

    #[test]
    fn exact_roundtrip() {
        for r in [rat(5, 12), int(-7), rat(-119, 1440)] {
            assert_eq!(parse_exact(&fmt_exact(&r)).unwrap(), r);
        }
    }
}
