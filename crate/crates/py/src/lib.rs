//! Python bindings: load codes, search and verify distance certificates,
//! encode, and decode received words.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qcc::bound::{self, BoundCertificate};
use qcc::code::QcCode;
use qcc::decoder::{self, DecodeOutcome};
use qcc::files::{CertificateFile, CodeDefinitionFile};
use qcc::oracle;
use qcc::poly::Poly;
use qcc::report;
use qcc::spectral::{self, EigencodeDistance};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated quasi-cyclic code.
#[pyclass(frozen, name = "Code")]
struct PyCode {
    inner: QcCode,
}

/// A verified distance certificate (f, z, delta, nu) with d*.
#[pyclass(frozen, name = "Certificate")]
struct PyCertificate {
    inner: BoundCertificate,
}

/// Decoding outcome: either a codeword with the error description, or a
/// declared failure with its reason code.
#[pyclass(frozen, name = "DecodeResult")]
struct PyDecodeResult {
    #[pyo3(get)]
    ok: bool,
    #[pyo3(get)]
    reason: Option<String>,
    #[pyo3(get)]
    codeword: Option<Vec<u64>>,
    #[pyo3(get)]
    positions: Vec<u64>,
    #[pyo3(get)]
    symbols: Vec<Vec<u64>>,
    #[pyo3(get)]
    error_values: Vec<String>,
    #[pyo3(get)]
    locator: Vec<String>,
    #[pyo3(get)]
    epsilon: usize,
    #[pyo3(get)]
    epsilon_tilde: usize,
}

#[pymethods]
impl PyCode {
    /// Load and validate a code definition from a JSON file.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<PyCode> {
        let file = CodeDefinitionFile::from_path(std::path::Path::new(path)).map_err(value_err)?;
        Ok(PyCode {
            inner: file.to_code().map_err(value_err)?,
        })
    }

    /// Parse and validate a code definition from a JSON string.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyCode> {
        let file = CodeDefinitionFile::from_json_str(text).map_err(value_err)?;
        Ok(PyCode {
            inner: file.to_code().map_err(value_err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.spec().p()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.spec().r()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m()
    }

    #[getter]
    fn ell(&self) -> usize {
        self.inner.ell()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// (exponent, algebraic multiplicity, geometric multiplicity) triples.
    fn eigenvalues(&self) -> Vec<(u64, usize, usize)> {
        spectral::eigenvalues(&self.inner)
            .into_iter()
            .map(|e| (e.exponent, e.algebraic, e.geometric))
            .collect()
    }

    /// Encode ell message coefficient lists into a flat interleaved codeword.
    fn encode(&self, message: Vec<Vec<u64>>) -> PyResult<Vec<u64>> {
        if message.len() != self.inner.ell() {
            return Err(value_err(format!(
                "message must have ell = {} components",
                self.inner.ell()
            )));
        }
        let pf = self.inner.spec().prime_field();
        let polys: Vec<Poly> = message
            .into_iter()
            .map(|c| Poly::from_coeffs(c, &pf))
            .collect();
        let word = self.inner.encode(&polys);
        Ok(self.inner.word_to_flat(&word))
    }

    /// Membership test on a flat interleaved symbol vector.
    fn is_codeword(&self, flat: Vec<u64>) -> PyResult<bool> {
        let word = self.inner.word_from_flat(&flat).map_err(value_err)?;
        Ok(self.inner.is_codeword(&word))
    }

    /// Best certificate over nu in [0, max_nu].
    #[pyo3(signature = (max_nu = 1))]
    fn best_bound(&self, max_nu: usize) -> PyResult<PyCertificate> {
        let cert = bound::best_bound(&self.inner, max_nu).map_err(value_err)?;
        Ok(PyCertificate { inner: cert })
    }

    /// Best certificate with nu fixed.
    fn best_bound_for_nu(&self, nu: usize) -> PyResult<PyCertificate> {
        let cert = bound::best_bound_for_nu(&self.inner, nu).map_err(value_err)?;
        Ok(PyCertificate { inner: cert })
    }

    /// Verify an explicit certificate; an optional witness (ell coordinate
    /// lists of length r) overrides the searched one.
    #[pyo3(signature = (f, z, delta, nu, witness = None))]
    fn certificate(
        &self,
        f: u64,
        z: u64,
        delta: usize,
        nu: usize,
        witness: Option<Vec<Vec<u64>>>,
    ) -> PyResult<PyCertificate> {
        let file = CertificateFile {
            f,
            z,
            delta,
            nu,
            witness,
        };
        let cert = file
            .to_certificate(&self.inner)
            .map_err(|e| value_err(e.to_string()))?;
        Ok(PyCertificate { inner: cert })
    }

    /// Decode a flat interleaved received word under a certificate.
    fn decode(&self, cert: &PyCertificate, rx: Vec<u64>) -> PyResult<PyDecodeResult> {
        let word = self.inner.word_from_flat(&rx).map_err(value_err)?;
        let outcome = decoder::decode(&self.inner, &cert.inner, &word).map_err(value_err)?;
        Ok(match outcome {
            DecodeOutcome::Decoded {
                codeword,
                error,
                locator,
            } => PyDecodeResult {
                ok: true,
                reason: None,
                codeword: Some(self.inner.word_to_flat(&codeword)),
                positions: error.positions.clone(),
                symbols: error.symbols.clone(),
                error_values: error.big_values.iter().map(report::fmt_element).collect(),
                locator: locator.coeffs().iter().map(report::fmt_element).collect(),
                epsilon: error.epsilon,
                epsilon_tilde: error.epsilon_tilde,
            },
            DecodeOutcome::Failure { reason, locator } => PyDecodeResult {
                ok: false,
                reason: Some(reason.to_string()),
                codeword: None,
                positions: Vec::new(),
                symbols: Vec::new(),
                error_values: Vec::new(),
                locator: locator
                    .map(|l| l.coeffs().iter().map(report::fmt_element).collect())
                    .unwrap_or_default(),
                epsilon: 0,
                epsilon_tilde: 0,
            },
        })
    }

    /// Exact minimum distance by exhaustive enumeration (guarded at p^k <= 2^18).
    fn min_distance(&self) -> PyResult<usize> {
        oracle::min_distance_exhaustive(&self.inner)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Non-guaranteed upper bound on the minimum weight from random samples.
    #[pyo3(signature = (samples = 100_000, seed = 0))]
    fn sampled_weight_upper_bound(&self, samples: u64, seed: u64) -> usize {
        oracle::sampled_weight_upper_bound(&self.inner, samples, seed)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(n={}, k={}, ell={}, m={}, GF({}^{}))",
            self.inner.n(),
            self.inner.k(),
            self.inner.ell(),
            self.inner.m(),
            self.inner.spec().p(),
            self.inner.spec().r()
        )
    }
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn f(&self) -> u64 {
        self.inner.f
    }

    #[getter]
    fn z(&self) -> u64 {
        self.inner.z
    }

    #[getter]
    fn delta(&self) -> usize {
        self.inner.delta
    }

    #[getter]
    fn nu(&self) -> usize {
        self.inner.nu
    }

    #[getter]
    fn dstar(&self) -> usize {
        self.inner.dstar
    }

    /// Guaranteed burst decoding radius floor((dstar-1)/2).
    #[getter]
    fn tau(&self) -> usize {
        self.inner.tau()
    }

    /// Sorted eigenvalue exponents of the set D.
    #[getter]
    fn d_set(&self) -> Vec<u64> {
        self.inner.d_set.clone()
    }

    /// Eigencode distance; None when the eigencode is trivial (infinite).
    #[getter]
    fn dec(&self) -> Option<usize> {
        match self.inner.dec() {
            EigencodeDistance::Exact(d) => Some(d),
            EigencodeDistance::Infinite | EigencodeDistance::NotComputed => None,
        }
    }

    #[getter]
    fn dec_is_infinite(&self) -> bool {
        self.inner.dec() == EigencodeDistance::Infinite
    }

    /// Witness coordinates (ell lists of length r), when one was found.
    #[getter]
    fn witness(&self) -> Option<Vec<Vec<u64>>> {
        self.inner
            .witness
            .as_ref()
            .map(|w| w.iter().map(|e| e.coordinates().to_vec()).collect())
    }

    /// Witness in alpha-power notation, when one was found.
    #[getter]
    fn witness_str(&self) -> Option<Vec<String>> {
        self.inner
            .witness
            .as_ref()
            .map(|w| w.iter().map(report::fmt_element).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(f={}, z={}, delta={}, nu={}, dstar={})",
            self.inner.f, self.inner.z, self.inner.delta, self.inner.nu, self.inner.dstar
        )
    }
}

#[pymethods]
impl PyDecodeResult {
    fn __repr__(&self) -> String {
        if self.ok {
            format!(
                "DecodeResult(ok=True, epsilon={}, epsilon_tilde={})",
                self.epsilon, self.epsilon_tilde
            )
        } else {
            format!(
                "DecodeResult(ok=False, reason={:?})",
                self.reason.as_deref().unwrap_or("")
            )
        }
    }
}

#[pymodule]
fn qcc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyDecodeResult>()?;
    Ok(())
}
