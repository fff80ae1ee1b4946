//! On-disk cache of multiplicity tables.
//!
//! Files are written to a temporary name and renamed into place, so readers
//! never observe a partial table.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::lie::{RootSystem, Weight};
use crate::reps::{weight_multiplicities, MultiplicityTable, TableDocument};

pub const CACHE_ENV: &str = "TKINV_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct MultiplicityCache {
    dir: PathBuf,
}

impl MultiplicityCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(MultiplicityCache { dir })
    }

    /// Cache rooted at `$TKINV_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Ok(Some(Self::new(PathBuf::from(d))?)),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, rs: &RootSystem, lambda: &Weight) -> PathBuf {
        let coords: Vec<String> = lambda.0.iter().map(|c| c.to_string()).collect();
        self.dir.join(format!("{}_{}.json", rs.label, coords.join("_")))
    }

    pub fn load(&self, rs: &RootSystem, lambda: &Weight) -> Result<Option<MultiplicityTable>> {
        let path = self.path_for(rs, lambda);
        if !path.exists() {
            return Ok(None);
        }
        let doc: TableDocument = serde_json::from_slice(&fs::read(&path)?)?;
        if doc.algebra != rs.label.to_string() || doc.lambda != lambda.0 {
            return Ok(None);
        }
        Ok(Some(doc.into_table(rs)))
    }

    pub fn store(&self, rs: &RootSystem, table: &MultiplicityTable) -> Result<()> {
        let path = self.path_for(rs, &table.lambda);
        let doc = TableDocument::from_table(rs, table);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec(&doc)?)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute(&self, rs: &RootSystem, lambda: &Weight) -> Result<MultiplicityTable> {
        if let Some(t) = self.load(rs, lambda)? {
            return Ok(t);
        }
        let t = weight_multiplicities(rs, lambda)?;
        self.store(rs, &t)?;
        Ok(t)
    }
}

/// Table lookup through an optional cache.
pub fn multiplicities(
    rs: &RootSystem,
    lambda: &Weight,
    cache: Option<&MultiplicityCache>,
) -> Result<MultiplicityTable> {
    match cache {
        Some(c) => c.get_or_compute(rs, lambda),
        None => weight_multiplicities(rs, lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_hit_is_identical_to_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MultiplicityCache::new(dir.path()).unwrap();
        let rs = RootSystem::new("B2".parse().unwrap()).unwrap();
        let lam = Weight(vec![1, 2]);
        let first = cache.get_or_compute(&rs, &lam).unwrap();
        assert!(cache.path_for(&rs, &lam).exists());
        let bytes = fs::read(cache.path_for(&rs, &lam)).unwrap();
        let second = cache.get_or_compute(&rs, &lam).unwrap();
        assert_eq!(first, second);
        assert_eq!(second, weight_multiplicities(&rs, &lam).unwrap());
        cache.store(&rs, &second).unwrap();
        assert_eq!(bytes, fs::read(cache.path_for(&rs, &lam)).unwrap());
    }
}
