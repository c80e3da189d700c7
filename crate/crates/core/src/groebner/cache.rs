//! Content-addressed on-disk cache of reduced Gröbner bases.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{buchberger, GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::poly::{MonomialOrder, Poly};

pub const CACHE_ENV: &str = "CHEVALLEY_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    degree_cap: Option<u32>,
    truncated: bool,
    reductions: u64,
    basis: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GbCache { dir: dir.into() }
    }

    /// Cache rooted at `$CHEVALLEY_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(ideal: &Ideal, order: MonomialOrder, opts: &GbOptions) -> String {
        let base = ideal.fingerprint(&order);
        match opts.degree_cap {
            Some(d) if ideal.is_homogeneous() => format!("{base}-d{d}"),
            _ => base,
        }
    }

    fn load(&self, key: &str, ideal: &Ideal) -> Option<GroebnerBasis> {
        let text = fs::read_to_string(self.dir.join(format!("{key}.json"))).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        let ring = ideal.ring();
        if e.key != key || e.names != ring.names() || e.weights != ring.weights() {
            return None;
        }
        let basis = e
            .basis
            .iter()
            .map(|t| Poly::parse(t, ring))
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        Some(GroebnerBasis::from_parts(
            ring,
            e.order,
            basis,
            ideal.fingerprint(&e.order),
            e.truncated,
            e.reductions,
        ))
    }

    fn store(&self, key: &str, gb: &GroebnerBasis, opts: &GbOptions) -> Result<(), GroebnerError> {
        let e = Entry {
            key: key.to_string(),
            names: gb.ring().names().to_vec(),
            weights: gb.ring().weights().to_vec(),
            order: gb.order(),
            degree_cap: opts.degree_cap,
            truncated: gb.is_truncated(),
            reductions: gb.reductions(),
            basis: gb.basis().iter().map(Poly::to_text).collect(),
        };
        let err = |x: std::io::Error| GroebnerError::Cache(x.to_string());
        fs::create_dir_all(&self.dir).map_err(err)?;
        let tmp = self.dir.join(format!("{key}.json.tmp"));
        let json = serde_json::to_string_pretty(&e).map_err(|x| GroebnerError::Cache(x.to_string()))?;
        fs::write(&tmp, json).map_err(err)?;
        fs::rename(&tmp, self.dir.join(format!("{key}.json"))).map_err(err)?;
        Ok(())
    }

    /// Cached basis, computing and storing it on a miss.
    pub fn buchberger(&self, ideal: &Ideal, order: MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
        let key = Self::key(ideal, order, opts);
        if let Some(gb) = self.load(&key, ideal) {
            return Ok(gb);
        }
        let gb = buchberger(ideal, order, opts)?;
        self.store(&key, &gb, opts)?;
        Ok(gb)
    }
}

/// Compute through the cache when one is configured.
pub fn cached_buchberger(
    cache: Option<&GbCache>,
    ideal: &Ideal,
    order: MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis, GroebnerError> {
    match cache {
        Some(c) => c.buchberger(ideal, order, opts),
        None => buchberger(ideal, order, opts),
    }
}
