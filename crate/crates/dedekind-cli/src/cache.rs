//! On-disk cache of prime tables and `8d` families.
//!
//! A file holds a header `count first last hash` followed by one value per
//! line. A hit is accepted only if the header matches the body; anything else
//! is rebuilt. Writes go through a temporary file and a rename.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use dedekind::arith::{enumerate_8d_family, sieve_primes};

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_ENV: &str = "DEDEKIND_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheKind {
    /// Primes up to the parameter.
    Primes,
    /// `enumerate_8d_family` at the parameter.
    Fd8,
}

impl CacheKind {
    fn prefix(self) -> &'static str {
        match self {
            CacheKind::Primes => "primes",
            CacheKind::Fd8 => "fd8",
        }
    }

    fn build(self, param: u64) -> anyhow::Result<Vec<u64>> {
        Ok(match self {
            CacheKind::Primes => sieve_primes(param)?.primes,
            CacheKind::Fd8 => enumerate_8d_family(param as f64)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub values: Vec<u64>,
    /// Set when an existing file failed validation and was rebuilt.
    pub warning: Option<String>,
}

/// The directory from the environment, falling back to the flag.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| flag.map(Path::to_path_buf))
}

fn checksum(values: &[u64]) -> u64 {
    let mut h = DefaultHasher::new();
    values.hash(&mut h);
    h.finish()
}

fn header(values: &[u64]) -> String {
    let first = values.first().copied().unwrap_or(0);
    let last = values.last().copied().unwrap_or(0);
    format!("{} {} {} {:016x}", values.len(), first, last, checksum(values))
}

fn read_valid(path: &Path) -> Option<Vec<u64>> {
    let text = std::fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    let head = lines.next()?;
    let values: Vec<u64> = lines.map(|l| l.trim().parse().ok()).collect::<Option<_>>()?;
    (head == header(&values)).then_some(values)
}

/// Returns the cached list for `(kind, param)`, building it on a miss or when
/// the file fails validation.
pub fn cache_roundtrip(dir: &Path, kind: CacheKind, param: u64) -> anyhow::Result<CacheEntry> {
    let path = dir.join(format!("{}_{}.txt", kind.prefix(), param));
    let mut warning = None;
    if path.exists() {
        if let Some(values) = read_valid(&path) {
            return Ok(CacheEntry { path, values, warning });
        }
        warning = Some(format!("cache file {} failed validation; rebuilt", path.display()));
    }
    let values = kind.build(param)?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    writeln!(tmp, "{}", header(&values))?;
    for v in &values {
        writeln!(tmp, "{v}")?;
    }
    tmp.flush()?;
    tmp.persist(&path).with_context(|| format!("writing {}", path.display()))?;
    Ok(CacheEntry { path, values, warning })
}
