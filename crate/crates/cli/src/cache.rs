//! On-disk fingerprint cache, one compact JSON file per key.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use mipkit::canonical::{fingerprint, Fingerprint};
use mipkit::group::FiniteGroup;
use sha2::{Digest, Sha256};

use crate::failure::Failure;

pub const CACHE_ENV: &str = "MIPKIT_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

/// Content address of a fingerprint.
pub fn key(presentation: &[u8], depth: usize, t_max: Option<u32>, version: &str) -> String {
    let mut h = Sha256::new();
    h.update(b"mipkit-fingerprint\0");
    h.update(version.as_bytes());
    h.update(b"\0");
    h.update(depth.to_le_bytes());
    match t_max {
        Some(t) => {
            h.update([1]);
            h.update(t.to_le_bytes());
        }
        None => h.update([0]),
    }
    h.update(presentation);
    hex::encode(h.finalize())
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `$MIPKIT_CACHE_DIR`, else `$XDG_CACHE_HOME/mipkit`, else `~/.cache/mipkit`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("mipkit")))
            .or_else(|| {
                std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache").join("mipkit"))
            });
        Cache { dir }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// A stored entry is accepted only if it parses and re-serializes to the
    /// same bytes.
    fn load(&self, path: &PathBuf, depth: usize) -> Option<Fingerprint> {
        let text = fs::read_to_string(path).ok()?;
        match serde_json::from_str::<Fingerprint>(&text) {
            Ok(fp) if fp.to_json() == text && fp.depth == depth => Some(fp),
            _ => {
                eprintln!(
                    "mipkit: warning: corrupt cache entry {}, recomputing",
                    path.display()
                );
                None
            }
        }
    }

    fn store(&self, path: &PathBuf, fp: &Fingerprint) {
        let dir = path.parent().expect("cache entries live in a directory");
        let result = fs::create_dir_all(dir).and_then(|_| {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            let mut f = fs::File::create(&tmp)?;
            f.write_all(fp.to_json().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        });
        if let Err(e) = result {
            eprintln!(
                "mipkit: warning: cannot write cache entry {}: {e}",
                path.display()
            );
        }
    }

    pub fn fingerprint(
        &self,
        presentation: &[u8],
        g: &FiniteGroup,
        depth: usize,
        t_max: Option<u32>,
    ) -> Result<Fingerprint, Failure> {
        let path = self.path(&key(presentation, depth, t_max, mipkit::VERSION));
        if let Some(fp) = path.as_ref().and_then(|p| self.load(p, depth)) {
            return Ok(fp);
        }
        let fp = fingerprint(g, depth, t_max)?;
        if let Some(p) = &path {
            self.store(p, &fp);
        }
        Ok(fp)
    }
}
