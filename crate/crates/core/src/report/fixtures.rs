//! Embedded reference tables and the comparison against computed values.
//!
//! Each fixture is a CSV file `g,n,value,source` checked against a SHA-256
//! digest before use. Rows with source `printed` are the published values;
//! a printed value in scientific notation is compared through
//! [`fmt_sci4`]. Rows with source `computed` lock an exact value that the
//! printed table only shows rounded.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::{fmt_exact, fmt_sci4, parse_exact, Rational};
use crate::error::{Error, Result};

const TABLE1_CSV: &str = include_str!("../../fixtures/table1.csv");
const TABLE1_SHA256: &str = "62048f17ad83bfd6dd99ea148b2a4e412430dd6f5d3111c906193b5ef448840e";
const TABLE2_CSV: &str = include_str!("../../fixtures/table2.csv");
const TABLE2_SHA256: &str = "9b4d224fdccfba3bf8a65e677a92bb40cd0daa99a7e40a4d06ba22c4ecbd4585";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Printed,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub g: u32,
    pub n: u32,
    /// Value exactly as stored, either an exact number or a `d.ddddE+xx`
    /// rendering.
    pub value: String,
    pub source: Source,
}

/// A reference table keyed by the table's own `(g, n)` coordinates.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub rows: Vec<FixtureRow>,
}

/// One disagreement between a fixture and the computed table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureDiff {
    pub g: u32,
    pub n: u32,
    pub expected: String,
    pub got: String,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses fixture text after checking its digest.
pub fn parse_fixture(name: &'static str, text: &str, sha256: &str) -> Result<Fixture> {
    let got = sha256_hex(text.as_bytes());
    if got != sha256 {
        return Err(Error::Fixture(format!("{name}: checksum {got} does not match {sha256}")));
    }
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Fixture(format!("{name}: {e}")))?;
        let field = |i: usize| rec.get(i).unwrap_or("").trim().to_string();
        let num = |i: usize| field(i).parse::<u32>().map_err(|e| Error::Fixture(format!("{name}: {e}")));
        let source = match field(3).as_str() {
            "printed" => Source::Printed,
            "computed" => Source::Computed,
            s => return Err(Error::Fixture(format!("{name}: unknown source {s:?}"))),
        };
        rows.push(FixtureRow { g: num(0)?, n: num(1)?, value: field(2), source });
    }
    Ok(Fixture { name, rows })
}

/// Values of `e(M_g^{n+1})` for `g = 3..=10`, `n = 1..=8`.
pub fn table1_fixture() -> Result<Fixture> {
    parse_fixture("table1", TABLE1_CSV, TABLE1_SHA256)
}

/// Values of `e(M̄_g^n)` for `g = 2..=4`, `n = 0..=6`.
pub fn table2_fixture() -> Result<Fixture> {
    parse_fixture("table2", TABLE2_CSV, TABLE2_SHA256)
}

fn is_scientific(s: &str) -> bool {
    s.contains('E')
}

impl Fixture {
    /// Compares against computed values in table coordinates. Missing cells
    /// are reported as diffs; nothing is ever written back.
    pub fn diff(&self, computed: &BTreeMap<(u32, u32), Rational>) -> Vec<FixtureDiff> {
        let mut out = Vec::new();
        for row in &self.rows {
            let got = computed.get(&(row.g, row.n));
            let ok = match (got, is_scientific(&row.value)) {
                (None, _) => false,
                (Some(v), true) => fmt_sci4(v) == row.value,
                (Some(v), false) => parse_exact(&row.value).as_ref() == Some(v),
            };
            if !ok {
                out.push(FixtureDiff {
                    g: row.g,
                    n: row.n,
                    expected: row.value.clone(),
                    got: got.map(fmt_exact).unwrap_or_else(|| "missing".into()),
                });
            }
        }
        out
    }

    /// Distinct cells covered by the fixture.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut c: Vec<(u32, u32)> = self.rows.iter().map(|r| (r.g, r.n)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}
