//! Versioned JSON certificates and on-disk bundles.
//!
//! Every certificate is a [`CertificateFile`] envelope holding a schema
//! version, a kind and a kind-specific payload. Covers are stored as a
//! [`CoverRecord`] whose pieces are facet-list files referenced by path
//! relative to the bundle root, so a bundle directory is self-contained.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Cover, CoverCertificate, CoverMode, PieceWitness};
use crate::complex::{ComplexError, SimplicialComplex};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("io error on {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("expected a {expected:?} certificate, found {found:?}")]
    Kind { expected: CertificateKind, found: CertificateKind },
    #[error("in {path}")]
    Complex { path: String, source: ComplexError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Collapse,
    Cover,
    Impossibility,
    ContiguityChain,
    PaperReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub kind: CertificateKind,
    pub payload: serde_json::Value,
}

impl CertificateFile {
    pub fn new<T: Serialize>(kind: CertificateKind, payload: &T) -> Self {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            kind,
            payload: serde_json::to_value(payload).expect("certificate payloads serialize"),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CertificateError::Version(file.schema_version));
        }
        Ok(file)
    }

    pub fn payload_as<T: DeserializeOwned>(&self, expected: CertificateKind) -> Result<T, CertificateError> {
        if self.kind != expected {
            return Err(CertificateError::Kind { expected, found: self.kind });
        }
        Ok(serde_json::from_value(self.payload.clone())?)
    }

    pub fn read(path: &Path) -> Result<Self, CertificateError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CertificateError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }
}

/// A cover whose complexes live in separate facet-list files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    pub ambient: String,
    pub mode: CoverMode,
    pub pieces: Vec<String>,
    pub witnesses: Vec<PieceWitness>,
}

/// Relative path to file contents, written out together.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bundle {
    pub files: BTreeMap<String, String>,
}

impl Bundle {
    pub fn add_complex(&mut self, path: &str, k: &SimplicialComplex) {
        self.files.insert(path.to_string(), k.to_facet_text());
    }

    pub fn add_certificate(&mut self, path: &str, c: &CertificateFile) {
        self.files.insert(path.to_string(), c.to_json());
    }

    /// Stores a cover certificate as piece files plus a [`CoverRecord`].
    /// `ambient` must already be, or later be, added under that path.
    pub fn add_cover(&mut self, path: &str, ambient: &str, prefix: &str, cert: &CoverCertificate) {
        let pieces: Vec<String> = (0..cert.cover.pieces.len()).map(|i| format!("{prefix}-{}.cplx", i + 1)).collect();
        for (p, k) in pieces.iter().zip(&cert.cover.pieces) {
            self.add_complex(p, k);
        }
        let record = CoverRecord {
            ambient: ambient.to_string(),
            mode: cert.cover.mode,
            pieces,
            witnesses: cert.witnesses.clone(),
        };
        self.add_certificate(path, &CertificateFile::new(CertificateKind::Cover, &record));
    }

    pub fn write_to(&self, root: &Path) -> Result<(), CertificateError> {
        for (rel, text) in &self.files {
            let path = root.join(rel);
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir).map_err(|source| CertificateError::Io { path: dir.to_path_buf(), source })?;
            }
            std::fs::write(&path, text).map_err(|source| CertificateError::Io { path, source })?;
        }
        Ok(())
    }
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex, CertificateError> {
    let text = std::fs::read_to_string(path).map_err(|source| CertificateError::Io { path: path.to_path_buf(), source })?;
    SimplicialComplex::from_facet_text(&text)
        .map_err(|source| CertificateError::Complex { path: path.display().to_string(), source })
}

/// Rebuilds a cover certificate from a record, reading pieces relative to `root`.
pub fn load_cover(root: &Path, file: &CertificateFile) -> Result<CoverCertificate, CertificateError> {
    let record: CoverRecord = file.payload_as(CertificateKind::Cover)?;
    let ambient = read_complex(&root.join(&record.ambient))?;
    let pieces =
        record.pieces.iter().map(|p| read_complex(&root.join(p))).collect::<Result<Vec<_>, _>>()?;
    Ok(CoverCertificate { cover: Cover { ambient, pieces, mode: record.mode }, witnesses: record.witnesses })
}
