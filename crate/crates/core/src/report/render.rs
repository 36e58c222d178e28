//! CSV, JSON and Markdown renderings of a [`ReportDocument`].

use std::collections::BTreeSet;
use std::str::FromStr;

use super::ReportDocument;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(doc: &ReportDocument, fmt: Format) -> Result<String> {
    match fmt {
        Format::Csv => csv_text(doc),
        Format::Json => Ok(serde_json::to_string_pretty(doc)? + "\n"),
        Format::Md => Ok(markdown(doc)),
    }
}

fn csv_text(doc: &ReportDocument) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["g", "n", "kind", "value", "route"]).map_err(io)?;
    for c in &doc.cells {
        w.write_record([&c.g.to_string(), &c.n.to_string(), c.kind.as_str(), &c.value, &c.route])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

/// A grid with one row per genus and one column per number of marked
/// points when the cells form a table, a plain list otherwise.
fn markdown(doc: &ReportDocument) -> String {
    let mut out = format!("# {}\n\n", doc.meta.title);
    out.push_str(&format!("Engine `{}`.\n\n", doc.meta.version));
    let gs: BTreeSet<u32> = doc.cells.iter().map(|c| c.g).collect();
    let ns: BTreeSet<u32> = doc.cells.iter().map(|c| c.n).collect();
    let kinds: BTreeSet<_> = doc.cells.iter().map(|c| c.kind).collect();
    let grid = kinds.len() == 1 && gs.len() * ns.len() == doc.cells.len() && doc.cells.len() > 1;
    if grid {
        out.push_str("| g \\ n |");
        for n in &ns {
            out.push_str(&format!(" {n} |"));
        }
        out.push_str("\n|---|");
        for _ in &ns {
            out.push_str("---:|");
        }
        out.push('\n');
        for g in &gs {
            out.push_str(&format!("| {g} |"));
            for n in &ns {
                let c = doc.cells.iter().find(|c| c.g == *g && c.n == *n).expect("full grid");
                out.push_str(&format!(" {} |", c.value));
            }
            out.push('\n');
        }
    } else {
        out.push_str("| kind | g | n | value | route |\n|---|---:|---:|---:|---|\n");
        for c in &doc.cells {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                c.kind.as_str(),
                c.g,
                c.n,
                c.value,
                c.route
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{Cell, Engine, Kind};
    use super::*;

    fn doc(values: &[(u32, u32, &str)]) -> ReportDocument {
        let cells = values
            .iter()
            .map(|&(g, n, v)| Cell {
                g,
                n,
                kind: Kind::EBar,
                value: v.into(),
                route: "genfun".into(),
                ms: None,
            })
            .collect();
        Engine::default().document("t", cells)
    }

    #[test]
    fn csv_header_and_rows() {
        let s = render(&doc(&[(1, 1, "2")]), Format::Csv).unwrap();
        assert_eq!(s, "g,n,kind,value,route\n1,1,e-bar,2,genfun\n");
    }

    #[test]
    fn markdown_grid() {
        let s = render(&doc(&[(1, 1, "2"), (1, 2, "5"), (2, 1, "13"), (2, 2, "42")]), Format::Md).unwrap();
        assert!(s.contains("| 2 | 13 | 42 |"));
    }

    #[test]
    fn json_has_string_values_and_no_timings() {
        let s = render(&doc(&[(1, 1, "2")]), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["cells"][0]["value"], "2");
        assert!(v["cells"][0].get("ms").is_none());
        assert!(v["meta"]["version"].is_string());
    }
}
