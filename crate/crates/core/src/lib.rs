//! Quasi-cyclic codes over GF(p): reduced Gröbner-basis generator matrices,
//! spectral lower bounds on the minimum distance, and syndrome decoding up to
//! the bound.

pub mod bound;
pub mod code;
pub mod decoder;
pub mod field;
pub mod files;
mod linalg;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod spectral;

pub use bound::{best_bound, best_bound_for_nu, verify_certificate, BoundCertificate};
pub use code::{validate, GroebnerMatrix, QcCode, Word};
pub use decoder::{decode, DecodeFailure, DecodeOutcome};
pub use field::{FieldElement, FieldSpec};
pub use poly::Poly;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::code::{validate, GroebnerMatrix, QcCode};
    use crate::field::FieldSpec;
    use crate::poly::{minimal_polynomial, Poly};

    /// The worked [126,100] binary 2-quasi-cyclic code over GF(2^6), m = 63:
    /// g00 = m0 m1 m9, g01 = g00 (X^4+X^3+X^2+X+1), g11 = g00 m5.
    pub fn example_code() -> QcCode {
        let spec = FieldSpec::new(2, 6, vec![1, 1, 0, 1, 1, 0, 1], 63).unwrap();
        let pf = spec.prime_field();
        let m0 = minimal_polynomial(0, &spec).unwrap();
        let m1 = minimal_polynomial(1, &spec).unwrap();
        let m9 = minimal_polynomial(9, &spec).unwrap();
        let m5 = minimal_polynomial(5, &spec).unwrap();
        let g00 = m0.mul(&m1, &pf).mul(&m9, &pf);
        let a01 = Poly::from_coeffs(vec![1, 1, 1, 1, 1], &pf);
        let g01 = g00.mul(&a01, &pf);
        let g11 = g00.mul(&m5, &pf);
        let basis = GroebnerMatrix::new(63, vec![vec![g00, g01], vec![Poly::zero(), g11]]);
        validate(basis, spec).unwrap()
    }

    /// A small decodable 2-quasi-cyclic code over GF(2^4), m = 15, built the
    /// same way: g00 = m0 m1 m3, g01 = g00 (X+1), g11 = g00 m5. k = 10.
    pub fn small_code() -> QcCode {
        let spec = FieldSpec::minimal(2, 15).unwrap();
        let pf = spec.prime_field();
        let m0 = minimal_polynomial(0, &spec).unwrap();
        let m1 = minimal_polynomial(1, &spec).unwrap();
        let m3 = minimal_polynomial(3, &spec).unwrap();
        let m5 = minimal_polynomial(5, &spec).unwrap();
        let g00 = m0.mul(&m1, &pf).mul(&m3, &pf);
        let g01 = g00.mul(&Poly::from_coeffs(vec![1, 1], &pf), &pf);
        let g11 = g00.mul(&m5, &pf);
        let basis = GroebnerMatrix::new(15, vec![vec![g00, g01], vec![Poly::zero(), g11]]);
        validate(basis, spec).unwrap()
    }
}
