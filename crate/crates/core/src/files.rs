//! JSON file formats: code definitions, certificates, words, and messages.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bound::BoundCertificate;
use crate::code::{validate, GroebnerMatrix, QcCode, Word};
use crate::field::{FieldError, FieldSpec};
use crate::poly::Poly;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("field configuration: {0}")]
    Field(#[from] FieldError),
    #[error("generator grid must be ell x ell = {ell} x {ell}")]
    GeneratorShape { ell: usize },
    #[error(transparent)]
    Validation(#[from] crate::code::ValidationReport),
    #[error("word: {0}")]
    Word(#[from] crate::code::WordError),
    #[error("message must have ell = {expected} components, got {got}")]
    MessageShape { expected: usize, got: usize },
    #[error("witness must have ell = {expected} coordinates of length r = {r}")]
    WitnessShape { expected: usize, r: usize },
}

fn read_file(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|source| FileError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Code definition: field configuration plus the generator grid as ascending
/// coefficient lists. Lower-triangle entries must be empty or all-zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDefinitionFile {
    pub p: u64,
    pub r: usize,
    pub m: u64,
    /// Ascending coefficients of the degree-r field modulus.
    pub modulus: Vec<u64>,
    pub ell: usize,
    /// ell x ell grid of ascending coefficient lists.
    pub generators: Vec<Vec<Vec<u64>>>,
}

impl CodeDefinitionFile {
    pub fn from_path(path: &Path) -> Result<CodeDefinitionFile, FileError> {
        parse(&read_file(path)?, path)
    }

    pub fn from_json_str(text: &str) -> Result<CodeDefinitionFile, FileError> {
        parse(text, Path::new("<string>"))
    }

    pub fn to_code(&self) -> Result<QcCode, FileError> {
        let spec = FieldSpec::new(self.p, self.r, self.modulus.clone(), self.m)?;
        if self.generators.len() != self.ell
            || self.generators.iter().any(|row| row.len() != self.ell)
        {
            return Err(FileError::GeneratorShape { ell: self.ell });
        }
        let pf = spec.prime_field();
        let entries: Vec<Vec<Poly>> = self
            .generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coeffs| Poly::from_coeffs(coeffs.clone(), &pf))
                    .collect()
            })
            .collect();
        let basis = GroebnerMatrix::new(self.m, entries);
        Ok(validate(basis, spec)?)
    }

    pub fn from_code(code: &QcCode) -> CodeDefinitionFile {
        let ell = code.ell();
        CodeDefinitionFile {
            p: code.spec().p(),
            r: code.spec().r(),
            m: code.m(),
            modulus: code.spec().modulus().to_vec(),
            ell,
            generators: (0..ell)
                .map(|i| {
                    (0..ell)
                        .map(|j| code.basis().entry(i, j).coeffs().to_vec())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Certificate parameters; the witness is optional and overrides the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub f: u64,
    pub z: u64,
    pub delta: usize,
    pub nu: usize,
    /// Optional witness eigenvector as ell coordinate lists of length r.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u64>>>,
}

impl CertificateFile {
    pub fn from_path(path: &Path) -> Result<CertificateFile, FileError> {
        parse(&read_file(path)?, path)
    }

    /// Verify against the code; an explicit witness replaces the searched one.
    pub fn to_certificate(
        &self,
        code: &QcCode,
    ) -> Result<BoundCertificate, Box<dyn std::error::Error>> {
        let mut cert = crate::bound::verify_certificate(code, self.f, self.z, self.delta, self.nu)?;
        if let Some(w) = &self.witness {
            let spec = code.spec();
            if w.len() != code.ell() {
                return Err(Box::new(FileError::WitnessShape {
                    expected: code.ell(),
                    r: spec.r(),
                }));
            }
            let witness: Result<Vec<_>, _> = w
                .iter()
                .map(|coords| spec.element(coords.clone()))
                .collect();
            cert.witness = Some(witness.map_err(FileError::Field)?);
        }
        Ok(cert)
    }

    pub fn from_certificate(cert: &BoundCertificate) -> CertificateFile {
        CertificateFile {
            f: cert.f,
            z: cert.z,
            delta: cert.delta,
            nu: cert.nu,
            witness: cert
                .witness
                .as_ref()
                .map(|w| w.iter().map(|e| e.coordinates().to_vec()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// A word (codeword or received word) as the flat interleaved symbol vector
/// (c_{0,0} ... c_{ell-1,0}, c_{0,1} ... c_{ell-1,1}, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub symbols: Vec<u64>,
}

impl WordFile {
    pub fn from_path(path: &Path) -> Result<WordFile, FileError> {
        parse(&read_file(path)?, path)
    }

    pub fn to_word(&self, code: &QcCode) -> Result<Word, FileError> {
        Ok(code.word_from_flat(&self.symbols)?)
    }

    pub fn from_word(code: &QcCode, word: &Word) -> WordFile {
        WordFile {
            symbols: code.word_to_flat(word),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// A message: ell ascending coefficient lists, reduced mod X^m - 1 on encode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageFile {
    pub components: Vec<Vec<u64>>,
}

impl MessageFile {
    pub fn from_path(path: &Path) -> Result<MessageFile, FileError> {
        parse(&read_file(path)?, path)
    }

    pub fn to_polys(&self, code: &QcCode) -> Result<Vec<Poly>, FileError> {
        if self.components.len() != code.ell() {
            return Err(FileError::MessageShape {
                expected: code.ell(),
                got: self.components.len(),
            });
        }
        let pf = code.spec().prime_field();
        Ok(self
            .components
            .iter()
            .map(|c| Poly::from_coeffs(c.clone(), &pf))
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::example_code;

    #[test]
    fn code_definition_roundtrip() {
        let code = example_code();
        let file = CodeDefinitionFile::from_code(&code);
        let json = file.to_json();
        let parsed: CodeDefinitionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, file);
        let rebuilt = parsed.to_code().unwrap();
        assert_eq!(rebuilt.k(), 100);
        assert_eq!(rebuilt.n(), 126);
    }

    #[test]
    fn unknown_keys_rejected() {
        let json =
            r#"{"p":2,"r":3,"m":7,"modulus":[1,1,0,1],"ell":1,"generators":[[[1,1]]],"extra":1}"#;
        let err = serde_json::from_str::<CodeDefinitionFile>(json).unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn parse_error_carries_location() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\n  \"p\": 2,\n  oops\n}").unwrap();
        let err = CodeDefinitionFile::from_path(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "got: {msg}");
    }

    #[test]
    fn certificate_file_with_explicit_witness() {
        let code = example_code();
        let file = CertificateFile {
            f: 0,
            z: 4,
            delta: 4,
            nu: 1,
            witness: Some(vec![vec![1, 0, 0, 0, 0, 0], vec![1, 0, 0, 0, 1, 0]]),
        };
        let cert = file.to_certificate(&code).unwrap();
        let spec = code.spec();
        assert_eq!(
            cert.witness.as_ref().unwrap(),
            &vec![spec.one(), &spec.alpha_pow(4) + &spec.one()]
        );
        assert_eq!(cert.dstar, 5);
    }

    #[test]
    fn word_file_roundtrip() {
        let code = example_code();
        let mut symbols = vec![0u64; code.n()];
        symbols[0] = 1;
        symbols[64] = 1;
        symbols[65] = 1;
        let wf = WordFile { symbols };
        let word = wf.to_word(&code).unwrap();
        assert_eq!(WordFile::from_word(&code, &word), wf);
    }
}
