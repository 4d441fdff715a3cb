//! Syndrome decoding up to the certified bound: syndrome grid, joint Key
//! Equations, locator roots, error values, and GF(p)-symbol recovery.

use thiserror::Error;

use crate::bound::BoundCertificate;
use crate::code::{QcCode, Word};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg;
use crate::poly::{ExtPoly, Poly};
use crate::spectral::EigencodeDistance;

/// Reason codes for a declared decoding failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    #[error("LOCATOR_NOT_FOUND: no consistent error locator up to the decoding radius")]
    LocatorNotFound,
    #[error("ROOT_DEFICIT: the locator has fewer roots of the form alpha^(-iz) than its degree")]
    RootDeficit,
    #[error("VALUES_INCONSISTENT: error values contradict the remaining syndrome coefficients")]
    ValuesInconsistent,
    #[error("VALUE_NOT_REPRESENTABLE: an error value is outside the GF(p)-span of the witness")]
    ValueNotRepresentable,
    #[error("NOT_A_CODEWORD: the corrected word fails the membership check")]
    NotACodeword,
}

/// Violations of the decoder's preconditions (distinct from runtime failures).
#[derive(Debug, Error)]
pub enum DecoderError {
    #[error("certificate carries no independent witness; decoding needs one")]
    MissingWitness,
    #[error("eigencode distance must exceed delta + nu = {need}; certificate has {have}")]
    EigencodeTooSmall { need: usize, have: usize },
    #[error("received word has {got} components, code has ell = {expected}")]
    ComponentCount { expected: usize, got: usize },
}

/// The nu+1 syndrome sequences S_t, each of length delta-1, together with the
/// certificate data they were computed under.
#[derive(Clone, Debug)]
pub struct SyndromeSet {
    /// grid[t][i] = sum_j r_j(alpha^{f + i z + t}) v_j
    grid: Vec<Vec<FieldElement>>,
    f: u64,
    z: u64,
    delta: usize,
    nu: usize,
    tau: usize,
    witness: Vec<FieldElement>,
    field: FieldSpec,
}

impl SyndromeSet {
    pub fn polys(&self) -> Vec<ExtPoly> {
        self.grid
            .iter()
            .map(|row| ExtPoly::from_coeffs(self.field.clone(), row.clone()))
            .collect()
    }

    pub fn coefficient(&self, t: usize, i: usize) -> &FieldElement {
        &self.grid[t][i]
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(FieldElement::is_zero)
    }

    pub fn witness(&self) -> &[FieldElement] {
        &self.witness
    }

    /// The certificate parameters (f, z, delta, nu) the grid was computed under.
    pub fn params(&self) -> (u64, u64, usize, usize) {
        (self.f, self.z, self.delta, self.nu)
    }

    /// Key-Equation axes. The rank argument behind the solver needs
    /// delta - 1 > nu; otherwise the roles of the run direction and the
    /// sequence direction are interchanged (spacing 1 along X, spacing z
    /// across sequences).
    fn axes(&self) -> Axes {
        if self.delta - 1 > self.nu {
            Axes {
                swapped: false,
                zx: self.z,
                zt: 1,
                delta_eff: self.delta,
                nu_eff: self.nu,
            }
        } else {
            Axes {
                swapped: true,
                zx: 1,
                zt: self.z,
                delta_eff: self.nu + 2,
                nu_eff: self.delta - 2,
            }
        }
    }

    /// Grid entry under the effective axes.
    fn at(&self, axes: &Axes, t: usize, i: usize) -> &FieldElement {
        if axes.swapped {
            &self.grid[i][t]
        } else {
            &self.grid[t][i]
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Axes {
    swapped: bool,
    zx: u64,
    zt: u64,
    delta_eff: usize,
    nu_eff: usize,
}

/// Syndrome grid per the certificate. Requires a witness and an eigencode
/// distance above delta + nu.
pub fn syndromes(
    code: &QcCode,
    cert: &BoundCertificate,
    rx: &Word,
) -> Result<SyndromeSet, DecoderError> {
    let witness = cert.witness.clone().ok_or(DecoderError::MissingWitness)?;
    match cert.dec() {
        EigencodeDistance::Infinite => {}
        EigencodeDistance::Exact(d) if d > cert.delta + cert.nu => {}
        EigencodeDistance::Exact(d) => {
            return Err(DecoderError::EigencodeTooSmall {
                need: cert.delta + cert.nu,
                have: d,
            })
        }
        EigencodeDistance::NotComputed => {
            return Err(DecoderError::EigencodeTooSmall {
                need: cert.delta + cert.nu,
                have: 1,
            })
        }
    }
    if rx.components().len() != code.ell() {
        return Err(DecoderError::ComponentCount {
            expected: code.ell(),
            got: rx.components().len(),
        });
    }
    let spec = code.spec();
    let m = code.m() as i64;
    let mut grid = Vec::with_capacity(cert.nu + 1);
    for t in 0..=cert.nu as i64 {
        let mut row = Vec::with_capacity(cert.delta - 1);
        for i in 0..cert.delta as i64 - 1 {
            let e = (cert.f as i64 + i * cert.z as i64 + t).rem_euclid(m);
            let mut acc = spec.zero();
            for (j, comp) in rx.components().iter().enumerate() {
                acc = &acc + &(&comp.eval_alpha_pow(e, spec) * &witness[j]);
            }
            row.push(acc);
        }
        grid.push(row);
    }
    Ok(SyndromeSet {
        grid,
        f: cert.f,
        z: cert.z,
        delta: cert.delta,
        nu: cert.nu,
        tau: cert.tau(),
        witness,
        field: spec.clone(),
    })
}

/// Solve the nu+1 Key Equations jointly: the smallest trial degree eps whose
/// stacked Hankel system is consistent with a unique solution gives the
/// locator Lambda(X) with Lambda_0 = 1.
pub fn solve_key_equations(synd: &SyndromeSet) -> Result<ExtPoly, DecodeFailure> {
    let spec = &synd.field;
    if synd.is_zero() {
        return Ok(ExtPoly::constant(spec.one()));
    }
    let axes = synd.axes();
    for eps in 1..=synd.tau {
        if eps >= axes.delta_eff - 1 {
            break; // no equations left at this degree
        }
        let mut mat = Vec::new();
        let mut rhs = Vec::new();
        for t in 0..=axes.nu_eff {
            for i in 0..axes.delta_eff - 1 - eps {
                // columns j correspond to Lambda_{eps-j}
                let row: Vec<FieldElement> =
                    (0..eps).map(|j| synd.at(&axes, t, i + j).clone()).collect();
                mat.push(row);
                rhs.push(-synd.at(&axes, t, i + eps));
            }
        }
        match linalg::ext::solve_unique(&mat, &rhs, eps) {
            Ok(sol) => {
                // sol[j] = Lambda_{eps-j}; assemble ascending with Lambda_0 = 1
                let mut coeffs = vec![spec.one()];
                for h in 1..=eps {
                    coeffs.push(sol[eps - h].clone());
                }
                let lambda = ExtPoly::from_coeffs(spec.clone(), coeffs);
                // a locator of true degree eps has Lambda_eps != 0; a vanishing
                // top coefficient means the trial degree was wrong
                if lambda.deg() == Some(eps) {
                    return Ok(lambda);
                }
            }
            Err(_) => continue,
        }
    }
    Err(DecodeFailure::LocatorNotFound)
}

/// Burst positions: all i in [0, m) with Lambda(alpha^{-i zx}) = 0. Fails when
/// the locator has fewer such roots than its degree (including repeated roots
/// or roots outside the group generated by alpha).
pub fn find_positions(
    code: &QcCode,
    cert: &BoundCertificate,
    locator: &ExtPoly,
) -> Result<Vec<u64>, DecodeFailure> {
    let spec = code.spec();
    let zx = effective_axes(cert).zx as i64;
    let deg = locator.deg().unwrap_or(0);
    let mut positions = Vec::new();
    for i in 0..code.m() as i64 {
        let x = spec.alpha_pow(-i * zx);
        if locator.eval(&x).is_zero() {
            positions.push(i as u64);
        }
    }
    if positions.len() < deg {
        return Err(DecodeFailure::RootDeficit);
    }
    Ok(positions)
}

fn effective_axes(cert: &BoundCertificate) -> Axes {
    if cert.delta - 1 > cert.nu {
        Axes {
            swapped: false,
            zx: cert.z,
            zt: 1,
            delta_eff: cert.delta,
            nu_eff: cert.nu,
        }
    } else {
        Axes {
            swapped: true,
            zx: 1,
            zt: cert.z,
            delta_eff: cert.nu + 2,
            nu_eff: cert.delta - 2,
        }
    }
}

/// Whether the Key-Equation axes are interchanged for this certificate
/// (happens when delta - 1 <= nu).
pub fn axes_swapped(cert: &BoundCertificate) -> bool {
    effective_axes(cert).swapped
}

/// Error values E_j from the Vandermonde system on the t = 0 sequence,
/// cross-checked against every remaining syndrome coefficient.
pub fn error_values(
    code: &QcCode,
    cert: &BoundCertificate,
    synd: &SyndromeSet,
    positions: &[u64],
) -> Result<Vec<FieldElement>, DecodeFailure> {
    let spec = code.spec();
    let axes = effective_axes(cert);
    let eps = positions.len();
    if eps == 0 {
        return Ok(Vec::new());
    }
    let m = code.m() as i64;
    let power = |e: i64| spec.alpha_pow(e.rem_euclid(m));
    let mat: Vec<Vec<FieldElement>> = (0..eps as i64)
        .map(|i| {
            positions
                .iter()
                .map(|&s| power((cert.f as i64 + i * axes.zx as i64) * s as i64))
                .collect()
        })
        .collect();
    let rhs: Vec<FieldElement> = (0..eps).map(|i| synd.at(&axes, 0, i).clone()).collect();
    let values = linalg::ext::solve_unique(&mat, &rhs, eps)
        .map_err(|_| DecodeFailure::ValuesInconsistent)?;
    // consistency across every sequence and coefficient
    for t in 0..=axes.nu_eff {
        for i in 0..axes.delta_eff - 1 {
            let mut acc = spec.zero();
            for (j, &s) in positions.iter().enumerate() {
                let e = (cert.f as i64 + i as i64 * axes.zx as i64 + t as i64 * axes.zt as i64)
                    * s as i64;
                acc = &acc + &(&values[j] * &power(e));
            }
            if &acc != synd.at(&axes, t, i) {
                return Err(DecodeFailure::ValuesInconsistent);
            }
        }
    }
    Ok(values)
}

/// Per burst position, the unique GF(p) symbols with sum_t e_t v_t = E_j.
pub fn recover_symbols(
    spec: &FieldSpec,
    witness: &[FieldElement],
    big_values: &[FieldElement],
) -> Result<Vec<Vec<u64>>, DecodeFailure> {
    let pf = spec.prime_field();
    let ell = witness.len();
    // r equations (coordinates), ell unknowns; full column rank by witness independence
    let mat: Vec<Vec<u64>> = (0..spec.r())
        .map(|h| witness.iter().map(|v| v.coordinates()[h]).collect())
        .collect();
    big_values
        .iter()
        .map(|value| {
            let rhs: Vec<u64> = value.coordinates().to_vec();
            linalg::prime::solve_unique(&mat, &rhs, ell, &pf)
                .map_err(|_| DecodeFailure::ValueNotRepresentable)
        })
        .collect()
}

/// Description of the recovered error.
#[derive(Clone, Debug)]
pub struct ErrorDescription {
    /// Burst positions, ascending.
    pub positions: Vec<u64>,
    /// E_j = sum_t e_{j,t} v_t per position.
    pub big_values: Vec<FieldElement>,
    /// GF(p) symbols per position, one row of length ell each.
    pub symbols: Vec<Vec<u64>>,
    /// Number of burst positions.
    pub epsilon: usize,
    /// Total number of nonzero GF(p) symbols.
    pub epsilon_tilde: usize,
}

impl ErrorDescription {
    /// The error as a word of ell polynomials.
    pub fn to_word(&self, code: &QcCode) -> Word {
        let pf = code.spec().prime_field();
        let m = code.m() as usize;
        let components: Vec<Poly> = (0..code.ell())
            .map(|t| {
                let mut coeffs = vec![0u64; m];
                for (&pos, symbols) in self.positions.iter().zip(&self.symbols) {
                    coeffs[pos as usize] = symbols[t];
                }
                Poly::from_coeffs(coeffs, &pf)
            })
            .collect();
        code.word(components).expect("degrees below m")
    }
}

/// Estimated codeword with the recovered error, or a declared failure.
#[derive(Clone, Debug)]
pub enum DecodeOutcome {
    Decoded {
        codeword: Word,
        error: ErrorDescription,
        locator: ExtPoly,
    },
    Failure {
        reason: DecodeFailure,
        /// The locator, for stages that got past the Key Equations.
        locator: Option<ExtPoly>,
    },
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&Word> {
        match self {
            DecodeOutcome::Decoded { codeword, .. } => Some(codeword),
            DecodeOutcome::Failure { .. } => None,
        }
    }

    pub fn failure(&self) -> Option<DecodeFailure> {
        match self {
            DecodeOutcome::Decoded { .. } => None,
            DecodeOutcome::Failure { reason, .. } => Some(*reason),
        }
    }
}

/// The whole pipeline: syndromes, joint Key Equations, locator roots, error
/// values, symbol recovery, correction, membership check.
pub fn decode(
    code: &QcCode,
    cert: &BoundCertificate,
    rx: &Word,
) -> Result<DecodeOutcome, DecoderError> {
    let synd = syndromes(code, cert, rx)?;
    let pf = code.spec().prime_field();

    let locator = match solve_key_equations(&synd) {
        Ok(l) => l,
        Err(reason) => {
            return Ok(DecodeOutcome::Failure {
                reason,
                locator: None,
            })
        }
    };
    let run = || -> Result<(Word, ErrorDescription), DecodeFailure> {
        let positions = find_positions(code, cert, &locator)?;
        let big_values = error_values(code, cert, &synd, &positions)?;
        let symbols = recover_symbols(code.spec(), &synd.witness, &big_values)?;
        let epsilon = positions.len();
        let epsilon_tilde = symbols.iter().flatten().filter(|&&s| s != 0).count();
        let error = ErrorDescription {
            positions,
            big_values,
            symbols,
            epsilon,
            epsilon_tilde,
        };
        let error_word = error.to_word(code);
        let corrected: Vec<Poly> = rx
            .components()
            .iter()
            .zip(error_word.components())
            .map(|(r, e)| r.sub(e, &pf))
            .collect();
        let codeword = code.word(corrected).expect("degrees below m");
        if !code.is_codeword(&codeword) {
            return Err(DecodeFailure::NotACodeword);
        }
        Ok((codeword, error))
    };

    Ok(match run() {
        Ok((codeword, error)) => DecodeOutcome::Decoded {
            codeword,
            error,
            locator,
        },
        Err(reason) => DecodeOutcome::Failure {
            reason,
            locator: Some(locator),
        },
    })
}
