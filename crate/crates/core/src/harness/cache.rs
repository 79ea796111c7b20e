use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::CODE_VERSION;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "MDL_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".mdl-cache";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub kind: String,
    pub weight: u32,
    pub depth: usize,
    pub version: String,
}

impl CacheKey {
    pub fn new(kind: impl Into<String>, weight: u32, depth: usize) -> Self {
        CacheKey {
            kind: kind.into(),
            weight,
            depth,
            version: CODE_VERSION.to_string(),
        }
    }

    pub fn id(&self) -> String {
        format!(
            "{}/{}/{}/{}",
            self.kind, self.weight, self.depth, self.version
        )
    }

    fn file_name(&self) -> String {
        format!("{}.json", sha256_hex(self.id().as_bytes()))
    }
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: String,
    sha256: String,
    payload: String,
}

/// Directory of content-addressed entries. Each file is named by the hash of
/// its key and stores the payload with its own digest; writers replace
/// complete files atomically.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `$MDL_CACHE_DIR` if set, else `./.mdl-cache`.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// `Ok(None)` on a miss; a damaged entry is an error.
    pub fn get(&self, key: &CacheKey) -> Result<Option<String>> {
        let path = self.path(key);
        let raw = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: &str| Error::CacheCorrupt {
            path: path.clone(),
            reason: reason.to_string(),
        };
        let env: Envelope = serde_json::from_str(&raw).map_err(|e| corrupt(&e.to_string()))?;
        if env.key != key.id() {
            return Err(corrupt(&format!(
                "key {} does not match {}",
                env.key,
                key.id()
            )));
        }
        if sha256_hex(env.payload.as_bytes()) != env.sha256 {
            return Err(corrupt("payload digest mismatch"));
        }
        Ok(Some(env.payload))
    }

    pub fn put(&self, key: &CacheKey, payload: &str) -> Result<()> {
        let env = Envelope {
            key: key.id(),
            sha256: sha256_hex(payload.as_bytes()),
            payload: payload.to_string(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&env)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key))
            .map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}
