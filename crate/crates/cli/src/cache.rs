//! Persistent factorization cache.
//!
//! Entries are replayed on load (the prime powers must multiply back to the
//! key and every base must pass the primality test); anything else is
//! dropped. Saving takes an exclusive lock on a sidecar `.lock` file,
//! merges with whatever another process wrote meanwhile and replaces the
//! file atomically.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use orbitobs::{FactorOracle, Factorer, Factorization, Result};
use serde::{Deserialize, Serialize};

const CACHE_VERSION: u32 = 1;

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Vec<(String, u32)>>,
}

fn replay(key: &str, factors: &[(String, u32)]) -> Option<Factorization> {
    let value: BigUint = key.parse().ok()?;
    let factors = factors
        .iter()
        .map(|(p, e)| Some((p.parse::<BigUint>().ok()?, *e)))
        .collect::<Option<Vec<_>>>()?;
    let f = Factorization { value, factors };
    f.is_valid().then_some(f)
}

fn read_entries(path: &Path) -> BTreeMap<String, Factorization> {
    let Ok(text) = fs::read_to_string(path) else { return BTreeMap::new() };
    let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
        eprintln!("warning: ignoring unreadable cache {}", path.display());
        return BTreeMap::new();
    };
    if file.version != CACHE_VERSION {
        return BTreeMap::new();
    }
    file.entries
        .iter()
        .filter_map(|(k, v)| Some((k.clone(), replay(k, v)?)))
        .collect()
}

pub struct FactorCache {
    inner: Factorer,
    path: Option<PathBuf>,
    entries: Mutex<BTreeMap<String, Factorization>>,
    fresh: Mutex<Vec<String>>,
}

impl FactorCache {
    pub fn open(inner: Factorer, path: Option<PathBuf>) -> Self {
        let entries = path.as_deref().map(read_entries).unwrap_or_default();
        FactorCache {
            inner,
            path,
            entries: Mutex::new(entries),
            fresh: Mutex::new(Vec::new()),
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    /// Writes new entries back, merging with the file's current contents.
    pub fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let fresh = std::mem::take(&mut *self.fresh.lock().unwrap());
        if fresh.is_empty() {
            return Ok(());
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let lock_path = path.with_extension("lock");
        let lock = OpenOptions::new().create(true).truncate(false).write(true).open(&lock_path)?;
        lock.lock()?;
        let mut merged = read_entries(path);
        {
            let ours = self.entries.lock().unwrap();
            for key in fresh {
                if let Some(f) = ours.get(&key) {
                    merged.insert(key, f.clone());
                }
            }
        }
        let file = CacheFile {
            version: CACHE_VERSION,
            entries: merged
                .into_iter()
                .map(|(k, f)| (k, f.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect()))
                .collect(),
        };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        serde_json::to_writer(File::create(&tmp)?, &file)?;
        fs::rename(&tmp, path)?;
        lock.unlock()
    }
}

impl FactorOracle for FactorCache {
    fn factor(&self, n: &BigUint) -> Result<Factorization> {
        let key = n.to_string();
        if let Some(f) = self.entries.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = self.inner.factor(n)?;
        self.entries.lock().unwrap().insert(key.clone(), f.clone());
        self.fresh.lock().unwrap().push(key);
        Ok(f)
    }
}
