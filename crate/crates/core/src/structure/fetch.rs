//! Local cache of PDB files with optional download from RCSB.

use std::path::{Path, PathBuf};
use std::time::Duration;

use log::info;

use crate::error::{MascotError, Result};
use crate::structure::id::StructureId;
use crate::structure::pdb::write_atomic;

pub const RCSB_DOWNLOAD_URL: &str = "https://files.rcsb.org/download";
pub const CACHE_DIR_ENV: &str = "MASCOT_CACHE_DIR";

const MAX_PDB_BYTES: u64 = 512 * 1024 * 1024;

/// `$MASCOT_CACHE_DIR`, else `$XDG_CACHE_HOME/mascot`, else `~/.cache/mascot`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(xdg).join("mascot");
    }
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("mascot"),
        None => PathBuf::from(".mascot-cache"),
    }
}

/// Cache file for an entry; the chain does not matter, one file per entry.
pub fn cache_path(id: &StructureId, cache_dir: &Path) -> PathBuf {
    cache_dir.join(format!("{}.pdb", id.code()))
}

#[derive(Debug, Clone)]
pub struct Fetcher {
    base_url: String,
    timeout: Duration,
}

impl Default for Fetcher {
    fn default() -> Self {
        Fetcher {
            base_url: RCSB_DOWNLOAD_URL.to_string(),
            timeout: Duration::from_secs(60),
        }
    }
}

impl Fetcher {
    pub fn with_base_url(base_url: impl Into<String>) -> Self {
        Fetcher {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            ..Default::default()
        }
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn url_for(&self, id: &StructureId) -> String {
        format!("{}/{}.pdb", self.base_url, id.code())
    }

    /// Returns the cached file for `id`, downloading it first when allowed.
    /// A cached file is never downloaded again.
    pub fn fetch(&self, id: &StructureId, cache_dir: &Path, allow_remote: bool) -> Result<PathBuf> {
        let path = cache_path(id, cache_dir);
        if path.is_file() {
            return Ok(path);
        }
        if !allow_remote {
            return Err(MascotError::MissingInput {
                id: id.to_string(),
                searched: path.display().to_string(),
            });
        }
        std::fs::create_dir_all(cache_dir).map_err(|e| MascotError::io(cache_dir, e))?;

        let url = self.url_for(id);
        info!("downloading {url}");
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .new_agent();
        let fetch_err = |status: Option<u16>, message: String| MascotError::Fetch {
            id: id.to_string(),
            status,
            message,
        };
        let mut response = agent.get(&url).call().map_err(|e| match e {
            ureq::Error::StatusCode(code) => fetch_err(Some(code), format!("GET {url} failed")),
            other => fetch_err(None, format!("GET {url}: {other}")),
        })?;
        let body = response
            .body_mut()
            .with_config()
            .limit(MAX_PDB_BYTES)
            .read_to_vec()
            .map_err(|e| fetch_err(None, format!("reading body of {url}: {e}")))?;
        if body.is_empty() {
            return Err(fetch_err(None, format!("empty response from {url}")));
        }
        // Concurrent fetches of the same entry race on the rename; either copy is complete.
        write_atomic(&path, &body)?;
        Ok(path)
    }
}

/// [`Fetcher::fetch`] against the RCSB download endpoint.
pub fn fetch_structure(id: &StructureId, cache_dir: &Path, allow_remote: bool) -> Result<PathBuf> {
    Fetcher::default().fetch(id, cache_dir, allow_remote)
}
