//! Single values, the two reference tables, report rendering and the
//! verification suite, shared by the command-line tool and the C ABI.

mod cache;
mod fixtures;
mod render;
mod verify;

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{Cache, CACHE_ENV};
pub use fixtures::{
    parse_fixture, sha256_hex, table1_fixture, table2_fixture, Fixture, FixtureDiff, FixtureRow, Source,
};
pub use render::{render, Format};
pub use verify::{inject_fault, run_verify, CheckOutcome, Level, VerifyReport, FAULT_ENV};

use crate::arith::{fmt_exact, Rational};
use crate::closed::{closed_table, e_bar_direct, e_bar_genfun_single, DIRECT_WEIGHT_LIMIT};
use crate::config::Windows;
use crate::error::{Error, Result};
use crate::open::e_open;
use crate::orbifold::{chi_bar_graphsum, chi_bar_wick, chi_open};
use crate::ENGINE_VERSION;

/// The four quantities the engine reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// `χ(M_g^n)`.
    ChiOpen,
    /// `χ(M̄_g^n)`.
    ChiBar,
    /// `e(M_g^n)`.
    EOpen,
    /// `e(M̄_g^n)`.
    EBar,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::ChiOpen, Kind::ChiBar, Kind::EOpen, Kind::EBar];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::ChiOpen => "chi-open",
            Kind::ChiBar => "chi-bar",
            Kind::EOpen => "e-open",
            Kind::EBar => "e-bar",
        }
    }

    /// Every route able to compute this quantity, default first.
    pub fn routes(self) -> &'static [Route] {
        match self {
            Kind::ChiOpen => &[Route::Formula],
            Kind::ChiBar => &[Route::Graphsum, Route::Wick],
            Kind::EOpen => &[Route::BranchData],
            Kind::EBar => &[Route::Genfun, Route::Direct],
        }
    }

    pub fn default_route(self) -> Route {
        self.routes()[0]
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quantity {s:?}")))
    }
}

/// How a value was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Closed formula in Bernoulli numbers.
    Formula,
    /// Sum over stable graphs.
    Graphsum,
    /// Formal Gaussian integral.
    Wick,
    /// Sum over branch data of cyclic covers.
    BranchData,
    /// Sum over graphs decorated with cyclic covers.
    Direct,
    /// Generating function with slot contraction.
    Genfun,
}

impl Route {
    pub const ALL: [Route; 6] =
        [Route::Formula, Route::Graphsum, Route::Wick, Route::BranchData, Route::Direct, Route::Genfun];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Formula => "formula",
            Route::Graphsum => "graphsum",
            Route::Wick => "wick",
            Route::BranchData => "branch-data",
            Route::Direct => "direct",
            Route::Genfun => "genfun",
        }
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown route {s:?}")))
    }
}

/// Process exit code for an error: 2 for bad requests, 3 for failed
/// consistency or fixture checks and internal errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::WindowExceeded(_) => 2,
        _ => 3,
    }
}

/// One reported value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub g: u32,
    /// Number of marked points of the space, for every kind.
    pub n: u32,
    pub kind: Kind,
    /// Exact decimal integer or `p/q`.
    pub value: String,
    /// Routes that produced the value, joined by `+`.
    pub route: String,
    /// Wall time in milliseconds; only present when timings are requested,
    /// so that default reports are byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

/// Configuration echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub windows: Windows,
    pub direct_weight_limit: u32,
    pub open_order_bound: String,
    pub closed_order_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub title: String,
    pub config: ConfigEcho,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub meta: Meta,
    pub cells: Vec<Cell>,
}

/// A reference table together with its comparison against the fixture.
#[derive(Clone, Debug)]
pub struct TableReport {
    pub doc: ReportDocument,
    pub fixture: &'static str,
    pub diffs: Vec<FixtureDiff>,
}

/// Computation context: windows, optional cache and reporting options.
#[derive(Clone, Debug)]
pub struct Engine {
    pub windows: Windows,
    pub cache: Option<Cache>,
    pub timings: bool,
    /// Largest `2g − 2 + n` at which tables also run the direct closed route.
    pub direct_limit: u32,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Windows::default())
    }
}

impl Engine {
    pub fn new(windows: Windows) -> Self {
        Engine { windows, cache: None, timings: false, direct_limit: DIRECT_WEIGHT_LIMIT }
    }

    pub fn with_cache(mut self, cache: Option<Cache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn config_echo(&self) -> ConfigEcho {
        ConfigEcho {
            windows: self.windows,
            direct_weight_limit: self.direct_limit,
            open_order_bound: "k <= 6(2g-2+n)".into(),
            closed_order_bound: "k <= 6w at vertices with special points, 42w otherwise".into(),
        }
    }

    fn document(&self, title: &str, cells: Vec<Cell>) -> ReportDocument {
        ReportDocument {
            meta: Meta { version: ENGINE_VERSION.into(), title: title.into(), config: self.config_echo() },
            cells,
        }
    }

    fn cached(&self, kind: Kind, g: u32, n: u32, route: Route) -> Option<Rational> {
        self.cache.as_ref()?.get(kind, g, n, route)
    }

    fn store(&self, kind: Kind, g: u32, n: u32, route: Route, v: &Rational) -> Result<()> {
        match &self.cache {
            Some(c) => c.put(kind, g, n, route, v),
            None => Ok(()),
        }
    }

    /// One value by one route, through the cache.
    pub fn compute(&self, kind: Kind, g: u32, n: u32, route: Route) -> Result<Rational> {
        if !kind.routes().contains(&route) {
            return Err(Error::InvalidArgument(format!(
                "route {} does not compute {}",
                route.as_str(),
                kind.as_str()
            )));
        }
        if let Some(v) = self.cached(kind, g, n, route) {
            return Ok(v);
        }
        let v = match route {
            Route::Formula => chi_open(g, n)?,
            Route::Graphsum => chi_bar_graphsum(g, n)?,
            Route::Wick => chi_bar_wick(g, n, &self.windows)?,
            Route::BranchData => e_open(g, n)?,
            Route::Direct => e_bar_direct(g, n)?,
            Route::Genfun => e_bar_genfun_single(g, n, &self.windows)?,
        };
        self.store(kind, g, n, route, &v)?;
        Ok(v)
    }

    /// A report cell for one value by one route.
    pub fn cell(&self, kind: Kind, g: u32, n: u32, route: Route) -> Result<Cell> {
        let t = Instant::now();
        let v = self.compute(kind, g, n, route)?;
        Ok(Cell {
            g,
            n,
            kind,
            value: fmt_exact(&v),
            route: route.as_str().into(),
            ms: self.timings.then(|| t.elapsed().as_millis() as u64),
        })
    }

    /// The value by every route; a disagreement is a consistency error.
    pub fn all_routes(&self, kind: Kind, g: u32, n: u32) -> Result<Vec<Cell>> {
        let cells: Vec<Cell> =
            kind.routes().iter().map(|&r| self.cell(kind, g, n, r)).collect::<Result<_>>()?;
        if let Some(c) = cells.iter().find(|c| c.value != cells[0].value) {
            return Err(Error::Consistency(format!(
                "{} ({g}, {n}): {} gives {}, {} gives {}",
                kind.as_str(),
                cells[0].route,
                cells[0].value,
                c.route,
                c.value
            )));
        }
        Ok(cells)
    }

    /// Single-value report.
    pub fn value_report(&self, kind: Kind, g: u32, n: u32, routes: &[Route]) -> Result<ReportDocument> {
        let cells = if routes.len() > 1 {
            let all = self.all_routes(kind, g, n)?;
            all.into_iter().filter(|c| routes.iter().any(|r| r.as_str() == c.route)).collect()
        } else {
            vec![self.cell(kind, g, n, routes[0])?]
        };
        Ok(self.document(&format!("{} g={g} n={n}", kind.as_str()), cells))
    }

    /// `e(M_g^{n+1})` for `g = 3..=10`, `n = 1..=8`, compared with the fixture.
    pub fn table1(&self) -> Result<TableReport> {
        let fx = table1_fixture()?;
        let coords = fx.cells();
        let cells: Vec<Cell> = coords
            .par_iter()
            .map(|&(g, n)| self.cell(Kind::EOpen, g, n + 1, Route::BranchData))
            .collect::<Result<_>>()?;
        let mut computed = BTreeMap::new();
        for c in &cells {
            computed.insert((c.g, c.n - 1), crate::arith::parse_exact(&c.value).expect("own output"));
        }
        Ok(TableReport {
            doc: self.document("e(M_g^n), open moduli spaces", cells),
            fixture: fx.name,
            diffs: fx.diff(&computed),
        })
    }

    /// `e(M̄_g^n)` for `g = 2..=4`, `n = 0..=6`, compared with the fixture.
    /// The generating function covers every cell; the direct route is run
    /// as well up to the direct weight limit and must agree.
    pub fn table2(&self) -> Result<TableReport> {
        let fx = table2_fixture()?;
        let coords = fx.cells();
        let t = Instant::now();
        let with_direct = |g: u32, n: u32| 2 * g + n - 2 <= self.direct_limit;
        let lookup = |g: u32, n: u32| -> Option<(Rational, Option<Rational>)> {
            let gf = self.cached(Kind::EBar, g, n, Route::Genfun)?;
            let d =
                if with_direct(g, n) { Some(self.cached(Kind::EBar, g, n, Route::Direct)?) } else { None };
            Some((gf, d))
        };
        let mut values: BTreeMap<(u32, u32), (Rational, Option<Rational>)> = BTreeMap::new();
        for &(g, n) in &coords {
            if let Some(v) = lookup(g, n) {
                values.insert((g, n), v);
            }
        }
        if values.len() < coords.len() {
            let need_l = coords.iter().map(|&(g, n)| 2 * g + n - 2).max().unwrap_or(0);
            let need_y = coords.iter().map(|&(_, n)| n).max().unwrap_or(0);
            if (need_l as usize) > self.windows.lmax || (need_y as usize) > self.windows.ymax {
                return Err(Error::WindowExceeded(format!(
                    "table needs lmax ≥ {need_l} and ymax ≥ {need_y}"
                )));
            }
            let mut gs: Vec<u32> = coords.iter().map(|c| c.0).collect();
            let mut ns: Vec<u32> = coords.iter().map(|c| c.1).collect();
            gs.dedup();
            ns.sort_unstable();
            ns.dedup();
            for c in closed_table(&gs, &ns, self.direct_limit)? {
                self.store(Kind::EBar, c.g, c.n, Route::Genfun, &c.genfun)?;
                if let Some(d) = &c.direct {
                    self.store(Kind::EBar, c.g, c.n, Route::Direct, d)?;
                }
                values.insert((c.g, c.n), (c.genfun, c.direct));
            }
        }
        let ms = self.timings.then(|| t.elapsed().as_millis() as u64);
        let mut cells = Vec::new();
        let mut computed = BTreeMap::new();
        for (&(g, n), (gf, d)) in &values {
            if d.as_ref().is_some_and(|d| d != gf) {
                return Err(Error::Consistency(format!(
                    "e-bar ({g}, {n}): genfun {gf}, direct {}",
                    d.as_ref().unwrap()
                )));
            }
            cells.push(Cell {
                g,
                n,
                kind: Kind::EBar,
                value: fmt_exact(gf),
                route: if d.is_some() { "direct+genfun".into() } else { "genfun".into() },
                ms,
            });
            computed.insert((g, n), gf.clone());
        }
        Ok(TableReport {
            doc: self.document("e(M̄_g^n), compactified moduli spaces", cells),
            fixture: fx.name,
            diffs: fx.diff(&computed),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), 2);
        assert_eq!(exit_code(&Error::WindowExceeded("x".into())), 2);
        assert_eq!(exit_code(&Error::Consistency("x".into())), 3);
        assert_eq!(exit_code(&Error::Fixture("x".into())), 3);
    }

    #[test]
    fn names_roundtrip() {
        for k in Kind::ALL {
            assert_eq!(k.as_str().parse::<Kind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.as_str()));
        }
        for r in Route::ALL {
            assert_eq!(r.as_str().parse::<Route>().unwrap(), r);
        }
        assert!("e-closed".parse::<Kind>().is_err());
    }

    #[test]
    fn single_values() {
        let e = Engine::default();
        assert_eq!(e.compute(Kind::ChiBar, 1, 1, Route::Wick).unwrap(), rat(5, 12));
        assert_eq!(e.compute(Kind::ChiOpen, 0, 3, Route::Formula).unwrap(), rat(1, 1));
        assert_eq!(e.compute(Kind::EBar, 2, 0, Route::Direct).unwrap(), rat(6, 1));
        assert_eq!(e.all_routes(Kind::EBar, 1, 2).unwrap().len(), 2);
        let err = e.compute(Kind::ChiOpen, 0, 3, Route::Wick).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert_eq!(exit_code(&e.compute(Kind::EBar, 0, 2, Route::Genfun).unwrap_err()), 2);
    }
}
