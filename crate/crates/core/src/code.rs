//! Quasi-cyclic codes given by an upper-triangular reduced Gröbner-basis
//! generator matrix: validation, encoding, shifts, membership.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{gcd, FieldSpec, PrimeField};
use crate::poly::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("entry ({row},{col}) below the diagonal is nonzero (condition 1)")]
    LowerTriangleNonzero { row: usize, col: usize },
    #[error("deg g[{row}][{col}] = {got} is not below deg g[{col}][{col}] = {diag} (condition 2)")]
    DegreeBound {
        row: usize,
        col: usize,
        got: usize,
        diag: usize,
    },
    #[error("g[{idx}][{idx}] does not divide X^m - 1 (condition 3)")]
    DiagonalDoesNotDivide { idx: usize },
    #[error("g[{idx}][{idx}] is zero; diagonal entries must divide X^m - 1 (condition 3)")]
    ZeroDiagonal { idx: usize },
    #[error("row {row} has nonzero entries after a diagonal equal to X^m - 1 (condition 4)")]
    FullDiagonalRowNotZero { row: usize },
    #[error("rows do not generate a shift-closed module: X^m - 1 times unit vector {row} does not reduce to zero")]
    NotShiftClosed { row: usize },
    #[error("entry ({row},{col}) has coefficients outside GF(p)")]
    CoefficientRange { row: usize, col: usize },
    #[error("matrix co-index m = {basis_m} does not match the field's root order m = {field_m}")]
    CoIndexMismatch { basis_m: u64, field_m: u64 },
    #[error("gcd(m, p) must be 1 for the single-root case, got m = {m}, p = {p}")]
    RepeatedRoots { m: u64, p: u64 },
}

/// All violations found, not just the first.
#[derive(Debug)]
pub struct ValidationReport {
    pub violations: Vec<ValidationError>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// The ell x ell upper-triangular generator matrix over GF(p)[X].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerMatrix {
    m: u64,
    ell: usize,
    entries: Vec<Vec<Poly>>,
}

impl GroebnerMatrix {
    pub fn new(m: u64, entries: Vec<Vec<Poly>>) -> GroebnerMatrix {
        let ell = entries.len();
        assert!(ell > 0, "generator matrix must have at least one row");
        assert!(
            entries.iter().all(|r| r.len() == ell),
            "generator matrix must be square"
        );
        GroebnerMatrix { m, ell, entries }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn diagonal(&self, i: usize) -> &Poly {
        &self.entries[i][i]
    }
}

/// A word of ell polynomial components, each of degree below m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    components: Vec<Poly>,
}

impl Word {
    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Hamming weight over all m*ell symbol positions.
    pub fn weight(&self) -> usize {
        self.components.iter().map(Poly::weight).sum()
    }

    /// Burst positions: union of the component supports.
    pub fn burst_positions(&self) -> Vec<u64> {
        let mut pos: Vec<u64> = self
            .components
            .iter()
            .flat_map(|c| c.support().map(|(s, _)| s as u64))
            .collect();
        pos.sort_unstable();
        pos.dedup();
        pos
    }
}

#[derive(Debug, Error)]
pub enum WordError {
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {idx} has degree >= m = {m}")]
    DegreeTooLarge { idx: usize, m: u64 },
    #[error("flat vector length {got} is not m*ell = {expected}")]
    FlatLength { got: usize, expected: usize },
    #[error("symbol {value} at flat index {idx} is not in [0, p)")]
    SymbolRange { idx: usize, value: u64 },
}

/// A validated quasi-cyclic code with derived dimension.
#[derive(Clone, Debug)]
pub struct QcCode {
    spec: FieldSpec,
    basis: GroebnerMatrix,
    k: usize,
}

/// Check the four Gröbner-form conditions plus shift closure of the row module,
/// and derive the dimension k = m*ell - sum of diagonal degrees.
pub fn validate(basis: GroebnerMatrix, spec: FieldSpec) -> Result<QcCode, ValidationReport> {
    let mut violations = Vec::new();
    let ell = basis.ell;
    let m = basis.m;
    let pf = spec.prime_field();

    if m != spec.m() {
        violations.push(ValidationError::CoIndexMismatch {
            basis_m: m,
            field_m: spec.m(),
        });
    }
    if gcd(m, spec.p()) != 1 {
        violations.push(ValidationError::RepeatedRoots { m, p: spec.p() });
    }
    for (i, row) in basis.entries.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            if g.coeffs().iter().any(|&c| c >= spec.p()) {
                violations.push(ValidationError::CoefficientRange { row: i, col: j });
            }
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }

    let xm1 = Poly::xm_minus_one(m, &pf);

    // condition 1: zero below the diagonal
    for i in 0..ell {
        for j in 0..i {
            if !basis.entries[i][j].is_zero() {
                violations.push(ValidationError::LowerTriangleNonzero { row: i, col: j });
            }
        }
    }
    // condition 3: diagonals are nonzero divisors of X^m - 1
    for i in 0..ell {
        let d = basis.diagonal(i);
        if d.is_zero() {
            violations.push(ValidationError::ZeroDiagonal { idx: i });
        } else if !d.divides(&xm1, &pf) {
            violations.push(ValidationError::DiagonalDoesNotDivide { idx: i });
        }
    }
    // condition 2: within each column, entries above the diagonal have smaller
    // degree than the diagonal of that column
    for i in 0..ell {
        let Some(diag_deg) = basis.diagonal(i).deg() else {
            continue;
        };
        for j in 0..i {
            if let Some(d) = basis.entries[j][i].deg() {
                if d >= diag_deg {
                    violations.push(ValidationError::DegreeBound {
                        row: j,
                        col: i,
                        got: d,
                        diag: diag_deg,
                    });
                }
            }
        }
    }
    // condition 4: a row whose diagonal is X^m - 1 is otherwise zero
    for i in 0..ell {
        if basis.diagonal(i) == &xm1 && basis.entries[i][i + 1..].iter().any(|g| !g.is_zero()) {
            violations.push(ValidationError::FullDiagonalRowNotZero { row: i });
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }

    // shift closure: (X^m - 1) e_i must reduce to zero against the rows.
    // The four printed conditions alone do not force this; without it the row
    // module is not X-invariant and the dimension formula is wrong.
    for i in 0..ell {
        let mut probe = vec![Poly::zero(); ell];
        probe[i] = xm1.clone();
        let rem = reduce_components(&basis, &spec, &probe);
        if rem.iter().any(|r| !r.is_zero()) {
            violations.push(ValidationError::NotShiftClosed { row: i });
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }

    let degree_sum: usize = (0..ell)
        .map(|i| basis.diagonal(i).deg().expect("diagonal nonzero"))
        .sum();
    let k = (m as usize) * ell - degree_sum;
    Ok(QcCode { spec, basis, k })
}

/// Divide a component vector by the basis rows under the position-over-term
/// order: only row j can cancel position j, so the remainder is canonical.
fn reduce_components(basis: &GroebnerMatrix, spec: &FieldSpec, word: &[Poly]) -> Vec<Poly> {
    let pf = spec.prime_field();
    let ell = basis.ell;
    let mut rem: Vec<Poly> = word.to_vec();
    for j in 0..ell {
        let diag = basis.diagonal(j);
        if diag.is_zero() {
            continue;
        }
        let (q, r) = rem[j].divmod(diag, &pf).expect("diagonal nonzero");
        rem[j] = r;
        if q.is_zero() {
            continue;
        }
        for t in j + 1..ell {
            let prod = q.mul(&basis.entries[j][t], &pf);
            rem[t] = rem[t].sub(&prod, &pf);
        }
    }
    rem
}

impl QcCode {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn basis(&self) -> &GroebnerMatrix {
        &self.basis
    }

    pub fn m(&self) -> u64 {
        self.basis.m
    }

    pub fn ell(&self) -> usize {
        self.basis.ell
    }

    /// Code length m*ell.
    pub fn n(&self) -> usize {
        self.basis.m as usize * self.basis.ell
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn prime(&self) -> PrimeField {
        self.spec.prime_field()
    }

    pub fn word(&self, components: Vec<Poly>) -> Result<Word, WordError> {
        if components.len() != self.ell() {
            return Err(WordError::ComponentCount {
                expected: self.ell(),
                got: components.len(),
            });
        }
        for (idx, c) in components.iter().enumerate() {
            if c.deg().is_some_and(|d| d as u64 >= self.m()) {
                return Err(WordError::DegreeTooLarge { idx, m: self.m() });
            }
        }
        Ok(Word { components })
    }

    pub fn zero_word(&self) -> Word {
        Word {
            components: vec![Poly::zero(); self.ell()],
        }
    }

    /// c = a * G, message polynomials reduced mod X^m - 1 first.
    pub fn encode(&self, message: &[Poly]) -> Word {
        assert_eq!(
            message.len(),
            self.ell(),
            "message must have ell components"
        );
        let pf = self.prime();
        let m = self.m();
        let reduced: Vec<Poly> = message.iter().map(|a| a.rem_xm_minus_one(m, &pf)).collect();
        let mut components = vec![Poly::zero(); self.ell()];
        for (i, a) in reduced.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, out) in components.iter_mut().enumerate() {
                let g = &self.basis.entries[i][j];
                if !g.is_zero() {
                    *out = out.add(&a.mul_mod_xm(g, m, &pf), &pf);
                }
            }
        }
        Word { components }
    }

    /// One quasi-cyclic shift: every component times X mod X^m - 1.
    pub fn shift(&self, w: &Word) -> Word {
        let pf = self.prime();
        Word {
            components: w
                .components
                .iter()
                .map(|c| c.shift_mod_xm(self.m(), &pf))
                .collect(),
        }
    }

    /// Remainder of division by the basis rows; zero iff the word is in the code.
    pub fn reduce(&self, w: &Word) -> Vec<Poly> {
        reduce_components(&self.basis, &self.spec, &w.components)
    }

    pub fn is_codeword(&self, w: &Word) -> bool {
        self.reduce(w).iter().all(Poly::is_zero)
    }

    /// Flat symbol vector in the interleaved coordinate order
    /// (c_{0,0} ... c_{ell-1,0}, c_{0,1} ... c_{ell-1,1}, ...).
    pub fn word_to_flat(&self, w: &Word) -> Vec<u64> {
        let m = self.m() as usize;
        let ell = self.ell();
        let mut flat = vec![0u64; m * ell];
        for (j, c) in w.components.iter().enumerate() {
            for (s, v) in c.support() {
                flat[s * ell + j] = v;
            }
        }
        flat
    }

    pub fn word_from_flat(&self, flat: &[u64]) -> Result<Word, WordError> {
        let m = self.m() as usize;
        let ell = self.ell();
        if flat.len() != m * ell {
            return Err(WordError::FlatLength {
                got: flat.len(),
                expected: m * ell,
            });
        }
        if let Some((idx, &value)) = flat.iter().enumerate().find(|(_, &v)| v >= self.spec.p()) {
            return Err(WordError::SymbolRange { idx, value });
        }
        let pf = self.prime();
        let components = (0..ell)
            .map(|j| {
                let coeffs: Vec<u64> = (0..m).map(|s| flat[s * ell + j]).collect();
                Poly::from_coeffs(coeffs, &pf)
            })
            .collect();
        Ok(Word { components })
    }

    /// A GF(p)-basis of the code as flat vectors: X^t * row_i for
    /// t in [0, m - deg g_{i,i}). Exactly k rows.
    pub fn shift_generator_rows(&self) -> Vec<Vec<u64>> {
        let pf = self.prime();
        let m = self.m();
        let mut rows = Vec::with_capacity(self.k);
        for i in 0..self.ell() {
            let d = self.basis.diagonal(i).deg().expect("diagonal nonzero") as u64;
            let mut current: Vec<Poly> = self.basis.entries[i].clone();
            for _ in 0..m.saturating_sub(d) {
                let w = Word {
                    components: current.clone(),
                };
                rows.push(self.word_to_flat(&w));
                current = current.iter().map(|c| c.shift_mod_xm(m, &pf)).collect();
            }
        }
        debug_assert_eq!(rows.len(), self.k);
        rows
    }

    /// Uniform random codeword as a random GF(p)-combination of the basis rows.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let pf = self.prime();
        let rows = self.shift_generator_rows();
        let mut flat = vec![0u64; self.n()];
        for row in &rows {
            let c = rng.random_range(0..self.spec.p());
            if c == 0 {
                continue;
            }
            for (acc, &v) in flat.iter_mut().zip(row) {
                *acc = pf.add(*acc, pf.mul(c, v));
            }
        }
        self.word_from_flat(&flat).expect("constructed in range")
    }
}
