//! On-disk cache of boundary matrices in the triplet text format.
//!
//! Files are named by a SHA-256 of `(format version, model, w, m)` and
//! written through a temporary file plus rename, so concurrent writers of
//! the same cell never expose a partial file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::complex::Model;
use crate::error::Result;
use crate::linalg::SparseRationalMatrix;

const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "HAMTORUS_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".hamtorus-cache";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        MatrixCache { dir: dir.into() }
    }

    /// Directory from `HAMTORUS_CACHE`, else `./.hamtorus-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        MatrixCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(model: &Model, w: i64, m: usize) -> String {
        let model_json = serde_json::to_string(model).expect("model serializes");
        let mut h = Sha256::new();
        h.update(format!("hamtorus-matrix v{FORMAT_VERSION}\n{model_json}\nw={w}\nm={m}\n").as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path(&self, model: &Model, w: i64, m: usize) -> PathBuf {
        self.dir.join(format!("{}.txt", Self::key(model, w, m)))
    }

    /// Cached matrix, if present and well formed.
    pub fn load(&self, model: &Model, w: i64, m: usize) -> Option<SparseRationalMatrix> {
        let text = fs::read_to_string(self.path(model, w, m)).ok()?;
        text.parse().ok()
    }

    pub fn store(&self, model: &Model, w: i64, m: usize, matrix: &SparseRationalMatrix) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(model, w, m);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            Self::key(model, w, m),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, matrix.to_triplet_string())?;
        fs::rename(&tmp, &target)?;
        Ok(())
    }

    /// Loads the cell, or builds and stores it. A cached matrix whose shape
    /// disagrees with `expect_shape` is treated as a miss.
    pub fn get_or_build(
        &self,
        model: &Model,
        w: i64,
        m: usize,
        expect_shape: (usize, usize),
        build: impl FnOnce() -> Result<SparseRationalMatrix>,
    ) -> Result<SparseRationalMatrix> {
        if let Some(hit) = self.load(model, w, m) {
            if (hit.rows(), hit.cols()) == expect_shape {
                return Ok(hit);
            }
        }
        let built = build()?;
        self.store(model, w, m, &built)?;
        Ok(built)
    }
}
