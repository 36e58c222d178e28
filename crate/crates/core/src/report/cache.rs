//! Persisted result cache.
//!
//! One JSON file per `(kind, g, n, route)`. Every entry records the engine
//! version; entries written by another version are ignored and replaced.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Kind, Route};
use crate::arith::{fmt_exact, parse_exact, Rational};
use crate::error::{Error, Result};
use crate::ENGINE_VERSION;

/// Environment variable that overrides any configured cache directory.
pub const CACHE_ENV: &str = "MGN_EULER_CACHE";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Entry {
    engine_version: String,
    kind: Kind,
    g: u32,
    n: u32,
    route: Route,
    value: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    /// The directory from [`CACHE_ENV`] if set, otherwise `fallback`.
    pub fn from_env_or(fallback: Option<&Path>) -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
            Some(d) => Cache::new(PathBuf::from(d)).map(Some),
            None => fallback.map(Cache::new).transpose(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: Kind, g: u32, n: u32, route: Route) -> PathBuf {
        self.dir.join(format!("{}_{g}_{n}_{}.json", kind.as_str(), route.as_str()))
    }

    /// Cached value, or `None` when absent, unreadable or stale.
    pub fn get(&self, kind: Kind, g: u32, n: u32, route: Route) -> Option<Rational> {
        let text = fs::read_to_string(self.path(kind, g, n, route)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        if e.engine_version != ENGINE_VERSION || e.kind != kind || e.g != g || e.n != n || e.route != route {
            return None;
        }
        parse_exact(&e.value)
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn put(&self, kind: Kind, g: u32, n: u32, route: Route, value: &Rational) -> Result<()> {
        let e =
            Entry { engine_version: ENGINE_VERSION.to_string(), kind, g, n, route, value: fmt_exact(value) };
        let path = self.path(kind, g, n, route);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&e)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn scratch_dir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("mgn-euler-cache-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn roundtrip_and_stale_entries() {
        let dir = scratch_dir("rt");
        let c = Cache::new(&dir).unwrap();
        assert_eq!(c.get(Kind::ChiBar, 1, 1, Route::Wick), None);
        c.put(Kind::ChiBar, 1, 1, Route::Wick, &rat(5, 12)).unwrap();
        assert_eq!(c.get(Kind::ChiBar, 1, 1, Route::Wick), Some(rat(5, 12)));

        let p = c.path(Kind::ChiBar, 1, 1, Route::Wick);
        let stale = fs::read_to_string(&p).unwrap().replace(ENGINE_VERSION, "older");
        fs::write(&p, stale).unwrap();
        assert_eq!(c.get(Kind::ChiBar, 1, 1, Route::Wick), None);
        fs::remove_dir_all(&dir).unwrap();
    }
}
