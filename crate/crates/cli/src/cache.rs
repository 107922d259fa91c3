//! On-disk persistence of verified isolation cells.
//!
//! The file is one JSON document:
//! `{"schema": "magicfiber-root-cache/v1", "cells": {"<poly>": {"lo_mantissa": "...",
//! "hi_mantissa": "...", "exponent_of_two": -40}}}`. Every cell is re-verified on
//! load; a file with any unreadable or failing cell is ignored as a whole.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use magicfiber::polyroot::{CacheCell, IntPolynomial, RootCache};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "magicfiber-root-cache/v1";
pub const ENV_VAR: &str = "MAGICFIBER_CACHE";

/// `$MAGICFIBER_CACHE`, else `$XDG_CACHE_HOME/magicfiber/roots.json`, else
/// `~/.cache/magicfiber/roots.json`.
pub fn default_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(ENV_VAR) {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("magicfiber").join("roots.json"))
}

/// Loads the cache at `path`. A missing file gives an empty cache; a corrupt
/// one gives an empty cache and a warning on stderr.
pub fn load(path: &Path) -> RootCache {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return RootCache::new(),
        Err(e) => {
            eprintln!("warning: ignoring root cache {}: {e}", path.display());
            return RootCache::new();
        }
    };
    match parse(&text) {
        Ok(cache) => cache,
        Err(e) => {
            eprintln!("warning: ignoring root cache {}: {e:#}", path.display());
            RootCache::new()
        }
    }
}

fn parse(text: &str) -> Result<RootCache> {
    let doc: Value = serde_json::from_str(text).context("not valid JSON")?;
    match doc.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => {}
        Some(other) => bail!("unsupported schema `{other}`"),
        None => bail!("missing schema tag"),
    }
    let cells = doc
        .get("cells")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("missing `cells` object"))?;
    let cache = RootCache::new();
    for (key, cell) in cells {
        let poly: IntPolynomial = key.parse().with_context(|| format!("bad polynomial key `{key}`"))?;
        if poly.canonical_string() != *key {
            bail!("non-canonical polynomial key `{key}`");
        }
        let cell = parse_cell(cell).with_context(|| format!("bad cell for `{key}`"))?;
        if !cache.insert_cell(&poly, &cell) {
            bail!("cell for `{key}` failed verification");
        }
    }
    Ok(cache)
}

fn parse_cell(v: &Value) -> Result<CacheCell> {
    let mantissa = |name: &str| -> Result<num_bigint::BigInt> {
        v.get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("missing `{name}`"))?
            .parse()
            .map_err(|_| anyhow!("`{name}` is not an integer"))
    };
    Ok(CacheCell {
        lo_mantissa: mantissa("lo_mantissa")?,
        hi_mantissa: mantissa("hi_mantissa")?,
        exponent_of_two: v
            .get("exponent_of_two")
            .and_then(Value::as_i64)
            .ok_or_else(|| anyhow!("missing `exponent_of_two`"))?,
    })
}

pub fn to_json(cache: &RootCache) -> Value {
    let mut cells = Map::new();
    for (key, cell) in cache.cells() {
        cells.insert(
            key,
            json!({
                "lo_mantissa": cell.lo_mantissa.to_string(),
                "hi_mantissa": cell.hi_mantissa.to_string(),
                "exponent_of_two": cell.exponent_of_two,
            }),
        );
    }
    json!({ "schema": SCHEMA, "cells": cells })
}

/// Writes the cache through a temporary file and a rename.
pub fn save(cache: &RootCache, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string(&to_json(cache))?;
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use magicfiber::polyroot::{pair_poly, Width};

    #[test]
    fn round_trip_and_rejection() {
        let cache = RootCache::new();
        let p = pair_poly(5, 2).unwrap();
        let before = cache.interval(&p, Width::default()).unwrap();
        let text = serde_json::to_string(&to_json(&cache)).unwrap();
        let loaded = parse(&text).unwrap();
        assert_eq!(loaded.len(), 1);
        assert_eq!(loaded.interval(&p, Width::default()).unwrap(), before);

        assert!(parse(&text.replace(SCHEMA, "magicfiber-root-cache/v0")).is_err());
        assert!(parse("{").is_err());
        let mut doc = to_json(&cache);
        let cell = doc["cells"].as_object_mut().unwrap().values_mut().next().unwrap();
        cell["exponent_of_two"] = json!(cell["exponent_of_two"].as_i64().unwrap() + 3);
        assert!(parse(&doc.to_string()).is_err());
    }
}
