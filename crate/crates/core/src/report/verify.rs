//! The verification suite behind `verify quick` and `verify full`.
//!
//! Every check is independent, runs even when an earlier one failed, and is
//! reported by name. A panic inside a check counts as its failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::Engine;
use crate::arith::{
    bernoulli, big, binomial, c_coeff, corrupt_bernoulli_memo, divisors, euler_phi, gamma_coeff, int,
    moebius, odd_double_factorial, rat, t_coeff, Rational,
};
use crate::closed::{e_bar_direct, e_bar_from_genfun, e_bar_genfun, genus0_tree_oracle, u_g_resolve};
use crate::config::Windows;
use crate::error::{Error, Result};
use crate::graph::{enumerate_pairings, enumerate_stable_graphs};
use crate::open::stable_range_pairs;
use crate::orbifold::{
    chi_bar_by_betti, chi_bar_graphsum, chi_bar_wick, chi_compact_type, chi_open, closed_form_f012,
    critical_point, critical_point_rhs, semiclassical_f,
};
use crate::series::{residual, SlotMono, WeightedSeries};

/// Environment variable naming a fault to inject before verification.
pub const FAULT_ENV: &str = "MGN_EULER_FAULT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::InvalidArgument(format!("unknown verify level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub ok: bool,
    /// Empty on success; otherwise what went wrong.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

/// Deliberately corrupts engine state so that the suite can be shown to
/// catch it. Only `bernoulli` is known.
pub fn inject_fault(name: &str) -> Result<()> {
    match name {
        "bernoulli" => {
            corrupt_bernoulli_memo(12, rat(1, 2));
            Ok(())
        }
        _ => Err(Error::InvalidArgument(format!("unknown fault {name:?}"))),
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(name: &str, f: impl FnOnce() -> Check) -> CheckOutcome {
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    CheckOutcome { name: name.into(), ok: r.is_ok(), detail: r.err().unwrap_or_default() }
}

/// Runs the suite. Quick covers the arithmetic, series and graph properties
/// and route equality up to weight 5; full adds both tables, the
/// stable-range law, the closed-surface ledger, the semiclassical checks and
/// route equality up to weight 8.
pub fn run_verify(level: Level, win: &Windows) -> VerifyReport {
    let wmax = if level == Level::Full { 8 } else { 5 };
    let mut checks = vec![
        run("bernoulli", check_bernoulli),
        run("totient-moebius", check_totient_moebius),
        run("roots-of-unity", check_roots_of_unity),
        run("pairings", check_pairings),
        run("graph-counts", check_graph_counts),
        run("series-exp-log", check_exp_log),
        run("fixed-point", || check_fixed_point(win)),
        run("orbifold-routes", || check_orbifold_routes(wmax, win)),
        run("closed-routes", || check_closed_routes(wmax)),
        run("genus0-oracle", || check_genus0(if level == Level::Full { 7 } else { 6 })),
    ];
    if level == Level::Full {
        let engine = Engine::new(*win);
        checks.push(run("table1", || check_table(engine.table1())));
        checks.push(run("table2", || check_table(engine.table2())));
        checks.push(run("stable-range", check_stable_range));
        checks.push(run("closed-surface-ledger", check_ledger));
        checks.push(run("semiclassical", check_semiclassical));
    }
    VerifyReport { level, checks }
}

/// `B_m` against `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, computed here from scratch.
fn check_bernoulli() -> Check {
    let mut b: Vec<Rational> = vec![int(1)];
    for m in 1..=30usize {
        let s: Rational = (0..m).map(|j| big(binomial(m + 1, j)) * &b[j]).sum();
        b.push(-s / int(m as i64 + 1));
    }
    for (m, want) in b.iter().enumerate() {
        let got = bernoulli(m);
        ensure(&got == want, || format!("B_{m} is {got}, recurrence gives {want}"))?;
        if m >= 3 && m % 2 == 1 {
            ensure(got.is_zero(), || format!("B_{m} = {got} should vanish"))?;
        }
    }
    let chi = chi_open(1, 1).map_err(err)?;
    ensure(chi == rat(-1, 12), || format!("χ(M_1^1) = {chi}, expected -1/12"))
}

fn check_totient_moebius() -> Check {
    for n in 1..=10_000u64 {
        let d = divisors(n);
        let phi: u64 = d.iter().map(|&x| euler_phi(x)).sum();
        ensure(phi == n, || format!("Σ φ(d) over d | {n} is {phi}"))?;
        let mu: i64 = d.iter().map(|&x| moebius(x)).sum();
        ensure(mu == i64::from(n == 1), || format!("Σ μ(d) over d | {n} is {mu}"))?;
    }
    Ok(())
}

fn root(j: u64, m: u64) -> (f64, f64) {
    let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
    (t.cos(), t.sin())
}

/// Sum of `ζ^r` over the residues selected by `keep`.
fn power_sum(z: (f64, f64), k: u64, keep: impl Fn(u64) -> bool) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    let (mut pr, mut pi) = (1.0, 0.0);
    for r in 0..k {
        if keep(r) {
            re += pr;
            im += pi;
        }
        (pr, pi) = (pr * z.0 - pi * z.1, pr * z.1 + pi * z.0);
    }
    (re, im)
}

fn close(a: (f64, f64), b: f64) -> bool {
    (a.0 - b).abs() < 1e-6 && a.1.abs() < 1e-6
}

/// The coefficient functions against root-of-unity sums in floating point.
fn check_roots_of_unity() -> Check {
    for k in 1..=60u64 {
        let ds = divisors(k);
        for &delta in &ds {
            let prim: Vec<u64> = (0..delta).filter(|j| j.gcd(&delta) == 1).collect();
            for &l in &ds {
                let want = c_coeff(k, l, delta).map_err(err)?.to_f64().unwrap_or(f64::NAN);
                for &j in &prim {
                    let s = power_sum(root(j, delta), k, |r| r.gcd(&k) == l);
                    ensure(close(s, want), || format!("c({k},{l},{delta}) = {want}, sum gives {s:?}"))?;
                }
            }
            // T and γ: the sum over residues with even gcd, i.e. even r.
            let t = t_coeff(k, delta).map_err(err)?.to_f64().unwrap_or(f64::NAN);
            let mut gamma_sums = [0.0f64; 4];
            for &j in &prim {
                let s = if k % 2 == 0 { power_sum(root(j, delta), k, |r| r % 2 == 0) } else { (0.0, 0.0) };
                ensure(close(s, t), || format!("T({k},{delta}) = {t}, sum gives {s:?}"))?;
                for (c, acc) in gamma_sums.iter_mut().enumerate() {
                    *acc += s.0.powi(c as i32);
                }
            }
            for (c, acc) in gamma_sums.iter().enumerate() {
                let want = gamma_coeff(k, delta, c as u32).map_err(err)?.to_f64().unwrap_or(f64::NAN);
                ensure((acc - want).abs() < 1e-6 * want.abs().max(1.0), || {
                    format!("γ({k},{delta},{c}) = {want}, sum gives {acc}")
                })?;
            }
        }
    }
    Ok(())
}

fn check_pairings() -> Check {
    for m in 0..=6usize {
        let slots: Vec<usize> = (0..2 * m).collect();
        let count = enumerate_pairings(&slots, false).map_err(err)?.len();
        let want = odd_double_factorial(2 * m).map_err(err)?;
        ensure(BigInt::from(count) == want, || {
            format!("{count} pairings of {} slots, expected {want}", 2 * m)
        })?;
    }
    Ok(())
}

fn check_graph_counts() -> Check {
    for (g, n, want) in [(0u32, 3u32, 1usize), (1, 1, 2), (2, 0, 7)] {
        let got = enumerate_stable_graphs(g, n, None).map_err(err)?.len();
        ensure(got == want, || format!("({g}, {n}) has {got} stable graphs, expected {want}"))?;
    }
    Ok(())
}

fn check_exp_log() -> Check {
    let mut q = WeightedSeries::zero(0, 6, 4);
    q.add_term(1, SlotMono::y_pow(1), rat(1, 2));
    q.add_term(1, SlotMono { y: 0, slots: vec![(1, 1)] }, int(1));
    q.add_term(2, SlotMono { y: 0, slots: vec![(2, 2)] }, rat(-1, 3));
    q.add_term(3, SlotMono { y: 2, slots: vec![(1, 1), (3, 1)] }, int(4));
    let back = q.exp().and_then(|e| e.log()).map_err(err)?;
    ensure(back == q, || "log(exp q) differs from q".into())
}

fn check_fixed_point(win: &Windows) -> Check {
    let yb = critical_point(win.xmax, win.hmax).map_err(err)?;
    let res = residual(&critical_point_rhs(win.xmax, win.hmax), &yb);
    ensure(res.is_zero(), || "nonzero fixed-point residual".into())?;
    let expect = [int(0), int(1), rat(1, 2), rat(1, 3), rat(7, 24), rat(17, 60), rat(71, 240), rat(163, 504)];
    for (i, e) in expect.iter().enumerate().take(win.xmax + 1) {
        let got = yb.coeff(i, 0);
        ensure(&got == e, || format!("y_0 coefficient of x^{i} is {got}, expected {e}"))?;
    }
    Ok(())
}

fn stable_pairs(wmax: u32) -> Vec<(u32, u32)> {
    (0..=wmax / 2 + 1)
        .flat_map(|g| (0..=wmax + 2).map(move |n| (g, n)))
        .filter(|&(g, n)| 2 * g + n >= 3 && 2 * g + n - 2 <= wmax)
        .collect()
}

fn check_orbifold_routes(wmax: u32, win: &Windows) -> Check {
    for (g, n) in stable_pairs(wmax) {
        let a = chi_bar_graphsum(g, n).map_err(err)?;
        let b = chi_bar_wick(g, n, win).map_err(err)?;
        ensure(a == b, || format!("χ̄({g}, {n}): graph sum {a}, Gaussian {b}"))?;
    }
    let w = Windows::default();
    for (g, n, want) in [(1, 1, rat(5, 12)), (2, 0, rat(119, 1440))] {
        let got = chi_bar_wick(g, n, &w).map_err(err)?;
        ensure(got == want, || format!("χ̄({g}, {n}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn check_closed_routes(wmax: u32) -> Check {
    let res = e_bar_genfun(wmax, wmax + 2).map_err(err)?;
    for (g, n) in stable_pairs(wmax) {
        let a = e_bar_direct(g, n).map_err(err)?;
        let b = e_bar_from_genfun(&res, g, n).map_err(err)?;
        ensure(a == b, || format!("ē({g}, {n}): direct {a}, generating function {b}"))?;
    }
    Ok(())
}

fn check_genus0(nmax: u32) -> Check {
    let res = e_bar_genfun(nmax - 2, nmax).map_err(err)?;
    for n in 3..=nmax {
        let a = res.e_bar(0, n).map_err(err)?;
        let b = big(genus0_tree_oracle(n as usize));
        ensure(a == b, || format!("ē(0, {n}) = {a}, tree oracle {b}"))?;
    }
    Ok(())
}

fn check_table(t: Result<super::TableReport>) -> Check {
    let t = t.map_err(err)?;
    ensure(t.diffs.is_empty(), || {
        let d: Vec<String> = t
            .diffs
            .iter()
            .map(|d| format!("({}, {}) expected {} got {}", d.g, d.n, d.expected, d.got))
            .collect();
        format!("{} differs from its fixture: {}", t.fixture, d.join("; "))
    })
}

fn check_stable_range() -> Check {
    for (g, n, e, chi) in stable_range_pairs().map_err(err)? {
        ensure(e == chi, || format!("e(M_{g}^{}) = {e} but χ = {chi}", n + 1))?;
    }
    Ok(())
}

fn check_ledger() -> Check {
    let res = e_bar_genfun(6, 1).map_err(err)?;
    let led = u_g_resolve(&res, 4).map_err(err)?;
    for (g, e, u) in [(2u32, 6i64, 6i64), (3, 32, 38), (4, 200, 206)] {
        ensure(led.e[&g] == int(e), || format!("e(M̄_{g}) = {}, expected {e}", led.e[&g]))?;
        ensure(led.u[&g] == int(u), || format!("u_{g} = {}, expected {u}", led.u[&g]))?;
    }
    Ok(())
}

fn check_semiclassical() -> Check {
    let (xm, hm) = (5usize, 2usize);
    let f = semiclassical_f(xm, hm).map_err(err)?;
    let cf = closed_form_f012(xm).map_err(err)?;
    let win = Windows::default();
    for g in 0..=3u32 {
        for n in 0..=xm as u32 {
            if 2 * g + n < 3 {
                continue;
            }
            let (i, j) = (n as usize, g as i32 - 1);
            let nf = big(crate::arith::factorial(i));
            let all = chi_bar_wick(g, n, &win).map_err(err)?;
            let b0 = chi_compact_type(g, n).map_err(err)?;
            let b1 = chi_bar_by_betti(g, n, 1).map_err(err)?;
            let parts = [
                ("total", &f.total, all.clone()),
                ("tree", &f.tree, b0.clone()),
                ("one loop", &f.one_loop, b1.clone()),
                ("higher", &f.higher, &all - &b0 - &b1),
            ];
            for (name, s, want) in parts {
                let got = &nf * s.coeff(i, j);
                ensure(got == want, || format!("{name} part at ({g}, {n}) is {got}, expected {want}"))?;
            }
        }
    }
    for i in 0..=xm {
        for (name, cfv, j) in [("F0", &cf.f0, -1), ("F1", &cf.f1, 0), ("F2", &cf.f2_derived, 1)] {
            let got = f.total.coeff(i, j);
            ensure(cfv[i] == got, || format!("{name} closed form at x^{i} is {}, series {got}", cfv[i]))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn individual_checks_pass() {
        assert_eq!(check_bernoulli(), Ok(()));
        assert_eq!(check_pairings(), Ok(()));
        assert_eq!(check_graph_counts(), Ok(()));
        assert_eq!(check_exp_log(), Ok(()));
        assert_eq!(check_genus0(6), Ok(()));
    }

    #[test]
    fn stable_pair_counts() {
        assert_eq!(stable_pairs(1).len(), 2);
        assert!(stable_pairs(8).contains(&(0, 10)));
        assert!(stable_pairs(8).contains(&(5, 0)));
    }

    #[test]
    fn panics_become_failures() {
        let o = run("boom", || panic!("exploded"));
        assert!(!o.ok);
        assert!(o.detail.contains("exploded"));
    }
}
