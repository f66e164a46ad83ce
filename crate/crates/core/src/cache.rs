//! Versioned binary cache of computed angle sequences.
//!
//! Layout, all little-endian:
//!
//! ```text
//!   magic "STLB" | version u32 | a1..a6 as 5 x i64 | count u64
//!   | count x (prime u64, angle f64) | sha-256 of everything above
//! ```
//!
//! The cache key is (curve coefficients, limit, format version); a stale
//! version is a miss, a digest mismatch is a corruption error so the
//! caller recomputes. Writes go through a temp file and an atomic rename.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::angles::{AngleSequence, Provenance};
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::ingest::hex;

pub const CACHE_MAGIC: [u8; 4] = *b"STLB";
pub const CACHE_VERSION: u32 = 1;

/// Hex key naming the cache file for (curve, limit) under the current
/// format version.
pub fn cache_key(curve: &CurveModel, limit: u64) -> String {
    let mut h = Sha256::new();
    h.update(CACHE_MAGIC);
    h.update(CACHE_VERSION.to_le_bytes());
    for c in curve.coefficients() {
        h.update(c.to_le_bytes());
    }
    h.update(limit.to_le_bytes());
    hex(&h.finalize())[..16].to_string()
}

pub fn cache_path(dir: &Path, curve: &CurveModel, limit: u64) -> PathBuf {
    dir.join(format!("stlb-{}.angles", cache_key(curve, limit)))
}

pub fn cache_store(
    dir: &Path,
    curve: &CurveModel,
    limit: u64,
    seq: &AngleSequence,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut body = Vec::with_capacity(32 + seq.len() * 16);
    body.extend_from_slice(&CACHE_MAGIC);
    body.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    for c in curve.coefficients() {
        body.extend_from_slice(&c.to_le_bytes());
    }
    body.extend_from_slice(&(seq.len() as u64).to_le_bytes());
    for &(p, theta) in seq.entries() {
        body.extend_from_slice(&p.to_le_bytes());
        body.extend_from_slice(&theta.to_le_bytes());
    }
    let digest = Sha256::digest(&body);
    body.extend_from_slice(&digest);

    let path = cache_path(dir, curve, limit);
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id()
    ));
    std::fs::write(&tmp, &body)?;
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

/// `Ok(None)` is a miss (absent file or stale version); corruption is an
/// error so callers can recompute and overwrite.
pub fn cache_load(dir: &Path, curve: &CurveModel, limit: u64) -> Result<Option<AngleSequence>> {
    let path = cache_path(dir, curve, limit);
    let raw = match std::fs::read(&path) {
        Ok(raw) => raw,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    const HEADER: usize = 4 + 4 + 40 + 8;
    if raw.len() < HEADER + 32 {
        return Err(Error::CacheCorrupt(format!("file too short: {} bytes", raw.len())));
    }
    if raw[..4] != CACHE_MAGIC {
        return Err(Error::CacheCorrupt("bad magic".into()));
    }
    let version = u32::from_le_bytes(raw[4..8].try_into().unwrap());
    if version != CACHE_VERSION {
        return Ok(None);
    }
    let (body, digest) = raw.split_at(raw.len() - 32);
    let expect = Sha256::digest(body);
    if digest != expect.as_slice() {
        return Err(Error::CacheCorrupt("digest mismatch".into()));
    }
    let mut off = 8;
    let mut coeffs = [0i64; 5];
    for c in &mut coeffs {
        *c = i64::from_le_bytes(body[off..off + 8].try_into().unwrap());
        off += 8;
    }
    if coeffs != curve.coefficients() {
        return Err(Error::CacheCorrupt("coefficients do not match the cache key".into()));
    }
    let count = u64::from_le_bytes(body[off..off + 8].try_into().unwrap()) as usize;
    off += 8;
    if body.len() != off + count * 16 {
        return Err(Error::CacheCorrupt(format!(
            "length {} inconsistent with count {count}",
            body.len()
        )));
    }
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let p = u64::from_le_bytes(body[off..off + 8].try_into().unwrap());
        let theta = f64::from_le_bytes(body[off + 8..off + 16].try_into().unwrap());
        entries.push((p, theta));
        off += 16;
    }
    let seq = AngleSequence::new(
        entries,
        curve.excluded_primes(),
        Provenance {
            label: curve.label.clone(),
            covered_to: limit,
            digest: hex(&expect),
        },
    )
    .map_err(|e| Error::CacheCorrupt(format!("invalid payload: {e}")))?;
    Ok(Some(seq))
}
