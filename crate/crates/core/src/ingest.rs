//! External eigenvalue ingestion.
//!
//! CSV contract (UTF-8, LF): a header line `prime,normalized_trace`, then
//! rows `<prime>,<float in [-1,1]>`. Lines starting with `#` are comments.
//! An optional JSON sidecar `<name>.meta.json` carries `label`,
//! `field_degree`, `conductor_norm`, and `y_param`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::angles::{AngleSequence, Provenance};
use crate::error::{Error, Result};
use crate::sieve::is_prime_u64;

pub const CSV_HEADER: &str = "prime,normalized_trace";

/// Tolerated float spill outside [-1, 1] before a row is rejected.
pub const TRACE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IngestMeta {
    pub label: String,
    pub field_degree: u32,
    pub conductor_norm: u64,
    pub y_param: u8,
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("meta.json")
}

/// Load the sidecar if present. A missing sidecar is not an error; a
/// malformed one is.
pub fn read_meta_sidecar(csv_path: &Path) -> Result<Option<IngestMeta>> {
    let path = sidecar_path(csv_path);
    if !path.exists() {
        return Ok(None);
    }
    let raw = std::fs::read_to_string(&path)?;
    let meta: IngestMeta = serde_json::from_str(&raw)?;
    if meta.y_param != 0 && meta.y_param != 2 {
        return Err(Error::Validation(format!(
            "sidecar y_param {} must be 0 or 2",
            meta.y_param
        )));
    }
    Ok(Some(meta))
}

/// Parse and validate an eigenvalue CSV into an angle sequence.
pub fn ingest_eigenvalues(path: &Path) -> Result<AngleSequence> {
    let raw = std::fs::read(path)?;
    let digest = hex(&Sha256::digest(&raw));
    let text = String::from_utf8(raw)
        .map_err(|e| Error::Parse { line: 0, msg: format!("not UTF-8: {e}") })?;

    let mut entries: Vec<(u64, f64)> = Vec::new();
    let mut header_seen = false;
    let mut last_prime = 0u64;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != CSV_HEADER {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected header `{CSV_HEADER}`, found `{line}`"),
                });
            }
            header_seen = true;
            continue;
        }
        let (p_str, t_str) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "expected two comma-separated fields".into(),
        })?;
        let prime: u64 = p_str.trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            msg: format!("bad prime field `{p_str}`: {e}"),
        })?;
        if !is_prime_u64(prime) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("{prime} is not prime"),
            });
        }
        let trace: f64 = t_str.trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            msg: format!("bad trace field `{t_str}`: {e}"),
        })?;
        if prime <= last_prime {
            return Err(Error::ValidationAt {
                line: lineno,
                msg: format!("primes must be strictly increasing ({prime} after {last_prime})"),
            });
        }
        if !trace.is_finite() || trace.abs() > 1.0 + TRACE_SLACK {
            return Err(Error::ValidationAt {
                line: lineno,
                msg: format!("normalized trace {trace} outside [-1, 1]"),
            });
        }
        last_prime = prime;
        entries.push((prime, trace.clamp(-1.0, 1.0).acos()));
    }
    if !header_seen {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: "missing header line".into(),
        });
    }

    let label = read_meta_sidecar(path)?
        .map(|m| m.label)
        .unwrap_or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "ingested".into())
        });
    AngleSequence::new(
        entries,
        BTreeSet::new(),
        Provenance {
            label,
            covered_to: last_prime,
            digest,
        },
    )
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_a_simple_file() {
        let f = write_tmp("# comment\nprime,normalized_trace\n5,0.2236\n7,-0.5\n");
        let seq = ingest_eigenvalues(f.path()).unwrap();
        assert_eq!(seq.len(), 2);
        assert!((seq.entries()[0].1 - 0.2236f64.acos()).abs() < 1e-15);
        assert_eq!(seq.covered_to(), 7);
        assert!(!seq.provenance().digest.is_empty());
    }

    #[test]
    fn empty_data_section_is_valid() {
        let f = write_tmp("prime,normalized_trace\n");
        let seq = ingest_eigenvalues(f.path()).unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn rejects_composite_prime_with_line_number() {
        let f = write_tmp("prime,normalized_trace\n4,0.1\n");
        match ingest_eigenvalues(f.path()).unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("not prime"));
            }
            other => panic!("wrong error {other}"),
        }
    }

    #[test]
    fn rejects_non_monotone_primes() {
        let f = write_tmp("prime,normalized_trace\n7,0.1\n5,0.1\n");
        assert!(matches!(
            ingest_eigenvalues(f.path()).unwrap_err(),
            Error::ValidationAt { line: 3, .. }
        ));
    }

    #[test]
    fn rejects_out_of_range_trace() {
        let f = write_tmp("prime,normalized_trace\n5,1.001\n");
        assert!(matches!(
            ingest_eigenvalues(f.path()).unwrap_err(),
            Error::ValidationAt { line: 2, .. }
        ));
        // just inside the slack is fine, and clamps
        let f = write_tmp("prime,normalized_trace\n5,1.0000000001\n");
        let seq = ingest_eigenvalues(f.path()).unwrap();
        assert_eq!(seq.entries()[0].1, 0.0);
    }

    #[test]
    fn rejects_bad_header_and_missing_header() {
        let f = write_tmp("p,t\n5,0.1\n");
        assert!(matches!(
            ingest_eigenvalues(f.path()).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        let f = write_tmp("# only comments\n");
        assert!(ingest_eigenvalues(f.path()).is_err());
    }

    #[test]
    fn sidecar_roundtrip() {
        let f = write_tmp("prime,normalized_trace\n5,0.0\n");
        let meta = IngestMeta {
            label: "hilbert-q5".into(),
            field_degree: 2,
            conductor_norm: 31,
            y_param: 0,
        };
        std::fs::write(
            sidecar_path(f.path()),
            serde_json::to_string(&meta).unwrap(),
        )
        .unwrap();
        let loaded = read_meta_sidecar(f.path()).unwrap().unwrap();
        assert_eq!(loaded.label, "hilbert-q5");
        assert_eq!(loaded.field_degree, 2);
        let seq = ingest_eigenvalues(f.path()).unwrap();
        assert_eq!(seq.provenance().label, "hilbert-q5");
        std::fs::remove_file(sidecar_path(f.path())).unwrap();
    }

    #[test]
    fn bad_y_param_rejected() {
        let f = write_tmp("prime,normalized_trace\n5,0.0\n");
        std::fs::write(
            sidecar_path(f.path()),
            r#"{"label":"x","field_degree":1,"conductor_norm":11,"y_param":1}"#,
        )
        .unwrap();
        assert!(read_meta_sidecar(f.path()).is_err());
        std::fs::remove_file(sidecar_path(f.path())).unwrap();
    }
}
